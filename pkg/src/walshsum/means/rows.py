"""Weight schemes and the triangular rows they generate.

A scheme is an immutable, picklable description (it crosses process
boundaries in sweeps); rows are produced on demand for a single n. Nörlund
sequences are indexed from 0 (q_0, q_1, ...) and weighted-mean sequences
from 1 (p_1, p_2, ...).
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Literal

import numpy as np

from walshsum.backends import EXACT, Scalar, ScalarBackend
from walshsum.backends.utils import format_rational, parse_scalar, to_fraction
from walshsum.errors import SchemeError

SchemeKind = Literal["norlund", "weighted", "cesaro", "logarithmic", "explicit"]

NAMED_SEQUENCES: dict[str, Callable[[int], Fraction]] = {
    "1": lambda _k: Fraction(1),
    "k": lambda k: Fraction(k),
    "k+1": lambda k: Fraction(k + 1),
    "1/k": lambda k: Fraction(1, k),
    "1/(k+1)": lambda k: Fraction(1, k + 1),
}


def _sequence_label(sequence: str | tuple[Fraction, ...]) -> str:
    if isinstance(sequence, str):
        return sequence
    return ",".join(format_rational(v) for v in sequence)


def _sequence_values(sequence: str | tuple[Fraction, ...], indices: range) -> list[Fraction]:
    if isinstance(sequence, str):
        term = NAMED_SEQUENCES[sequence]
        try:
            return [term(k) for k in indices]
        except ZeroDivisionError as exc:
            msg = f"Sequence {sequence!r} is undefined at k={indices.start}"
            raise SchemeError(msg) from exc
    # finite sequences continue with zeros
    offset = indices.start
    return [sequence[k - offset] if k - offset < len(sequence) else Fraction(0) for k in indices]


@dataclass(frozen=True)
class WeightScheme:
    """A summation method generating one triangular row per n.

    Attributes:
        kind: ``norlund`` (weights q_{n-k}/Q_n), ``weighted`` (p_k/P_n),
            ``cesaro`` (Nörlund with binomial weights of order alpha),
            ``logarithmic`` (Nörlund with q_k = 1/(k+1)) or ``explicit``.
        sequence: Name of a closed form in ``NAMED_SEQUENCES`` or a finite tuple
            of values (q_0, q_1, ... or p_1, p_2, ...), padded with zeros.
        alpha: Cesàro order, alpha > 0.
        rows: Explicit rows; the row of length n is used for n.

    Examples:
        >>> WeightScheme.parse("norlund:k+1").q_values(3)
        [Fraction(1, 1), Fraction(2, 1), Fraction(3, 1)]
        >>> str(WeightScheme.fejer())
        'fejer'
    """

    kind: SchemeKind
    sequence: str | tuple[Fraction, ...] = "1"
    alpha: Fraction | None = None
    rows: tuple[tuple[Fraction, ...], ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.kind not in {"norlund", "weighted", "cesaro", "logarithmic", "explicit"}:
            msg = f"Unknown scheme kind {self.kind!r}"
            raise SchemeError(msg)
        if isinstance(self.sequence, str) and self.sequence not in NAMED_SEQUENCES:
            msg = f"Unknown sequence {self.sequence!r}; expected one of {sorted(NAMED_SEQUENCES)} or a list of values"
            raise SchemeError(msg)
        if self.kind == "cesaro" and (self.alpha is None or self.alpha <= 0):
            msg = f"Cesàro order must be positive, got {self.alpha}"
            raise SchemeError(msg)
        if self.kind == "norlund":
            first = _sequence_values(self.sequence, range(1))[0]
            self._check_sequence(first, "q_0")
        if self.kind == "weighted":
            first = _sequence_values(self.sequence, range(1, 2))[0]
            self._check_sequence(first, "p_1")
        if self.kind == "explicit" and not self.rows:
            msg = "An explicit scheme needs at least one row"
            raise SchemeError(msg)
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _check_sequence(self, first: Fraction, name: str) -> None:
        if first <= 0:
            msg = f"{self.kind} schemes require {name} > 0, got {format_rational(first)}"
            raise SchemeError(msg)
        if not isinstance(self.sequence, str) and any(v < 0 for v in self.sequence):
            msg = f"{self.kind} weights must be non-negative"
            raise SchemeError(msg)

    def _default_label(self) -> str:
        if self.kind == "norlund" and self.sequence == "1":
            return "fejer"
        if self.kind == "logarithmic":
            return "log"
        if self.kind == "cesaro":
            return f"cesaro:{format_rational(self.alpha or Fraction(0))}"
        if self.kind == "explicit":
            return "explicit:" + ";".join(_sequence_label(r) for r in self.rows)
        return f"{self.kind}:{_sequence_label(self.sequence)}"

    def __str__(self) -> str:
        return self.label

    @property
    def is_norlund(self) -> bool:
        """True for schemes defined through a Nörlund sequence q."""
        return self.kind in {"norlund", "cesaro", "logarithmic"}

    @classmethod
    def fejer(cls) -> WeightScheme:
        """Nörlund with q_k = 1, i.e. the Fejér (C,1) means."""
        return cls("norlund", "1")

    @classmethod
    def norlund(cls, sequence: str | Iterable[Any]) -> WeightScheme:
        """Nörlund scheme from a named closed form or explicit q_0, q_1, ..."""
        return cls("norlund", sequence if isinstance(sequence, str) else tuple(to_fraction(v) for v in sequence))

    @classmethod
    def weighted(cls, sequence: str | Iterable[Any]) -> WeightScheme:
        """Weighted (T) scheme from a named closed form or explicit p_1, p_2, ..."""
        return cls("weighted", sequence if isinstance(sequence, str) else tuple(to_fraction(v) for v in sequence))

    @classmethod
    def cesaro(cls, alpha: Any) -> WeightScheme:
        """(C, alpha) means for alpha > 0."""
        return cls("cesaro", alpha=to_fraction(alpha))

    @classmethod
    def logarithmic(cls) -> WeightScheme:
        """Nörlund logarithmic means, q_k = 1/(k+1)."""
        return cls("logarithmic", "1/(k+1)")

    @classmethod
    def explicit(cls, rows: Iterable[Iterable[Any]]) -> WeightScheme:
        """Scheme given by explicit rows t_{1,n}..t_{n,n}."""
        return cls("explicit", rows=tuple(tuple(to_fraction(v) for v in r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> WeightScheme:
        """Parse a scheme string.

        Accepted forms: ``fejer``, ``log``, ``norlund:k+1``, ``norlund:1,2,3``,
        ``cesaro:1/2``, ``weighted:k``, ``weighted:1/k``,
        ``explicit:1/6,2/6,3/6`` (several rows separated by ``;``).

        Raises:
            SchemeError: If the string does not name a valid scheme.
        """
        kind, _, arg = text.strip().partition(":")
        kind = kind.strip().lower()
        arg = arg.strip().replace(" ", "")
        try:
            if kind == "fejer" and not arg:
                return cls.fejer()
            if kind in {"log", "logarithmic"} and not arg:
                return cls.logarithmic()
            if kind == "cesaro" and arg:
                return cls.cesaro(parse_scalar(arg))
            if kind in {"norlund", "weighted"} and arg:
                sequence: str | tuple[Fraction, ...] = arg if arg in NAMED_SEQUENCES else tuple(parse_scalar(v) for v in arg.split(","))
                return cls(kind, sequence)  # type: ignore[arg-type]
            if kind == "explicit" and arg:
                return cls.explicit([parse_scalar(v) for v in r.split(",")] for r in arg.split(";"))
        except SchemeError:
            raise
        except (ValueError, ZeroDivisionError) as exc:
            msg = f"Cannot parse scheme {text!r}: {exc}"
            raise SchemeError(msg) from exc
        msg = f"Cannot parse scheme {text!r}"
        raise SchemeError(msg)

    def q_values(self, count: int) -> list[Fraction]:
        """Nörlund weights q_0..q_{count-1}."""
        if self.kind == "cesaro":
            alpha = self.alpha or Fraction(0)
            values = [Fraction(1)]
            for k in range(1, count):
                values.append(values[-1] * (k + alpha - 1) / k)
            return values[:count]
        if not self.is_norlund:
            msg = f"{self.label} is not a Nörlund scheme"
            raise SchemeError(msg)
        return _sequence_values(self.sequence, range(count))

    def p_values(self, count: int) -> list[Fraction]:
        """Weighted-mean weights p_1..p_count."""
        if self.kind != "weighted":
            msg = f"{self.label} is not a weighted scheme"
            raise SchemeError(msg)
        return _sequence_values(self.sequence, range(1, count + 1))

    def defines(self, n: int) -> bool:
        """Whether the scheme has an n-th row; explicit schemes only have their listed lengths."""
        if n < 1:
            return False
        return self.kind != "explicit" or any(len(r) == n for r in self.rows)


@dataclass(frozen=True)
class TriangularRow:
    """Weights t_{1,n}..t_{n,n} of one row of a triangular matrix.

    Monotonicity flags and the row sum are derived from the weights on every
    access. Negative weights are accepted only with ``signed=True``.
    """

    weights: tuple[Scalar, ...]
    signed: bool = False
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.weights:
            msg = "A triangular row needs n >= 1 weights"
            raise SchemeError(msg)
        if not self.signed and any(w < 0 for w in self.weights):
            msg = f"Row {self.label or self.weights} has negative weights; pass signed=True for sign-unrestricted rows"
            raise SchemeError(msg)

    @classmethod
    def uniform(cls, n: int, *, backend: ScalarBackend = EXACT) -> TriangularRow:
        """t_{k,n} = 1/n (the Fejér row)."""
        if n < 1:
            msg = f"Rows need n >= 1, got {n}"
            raise SchemeError(msg)
        return cls(tuple(backend.scalar(Fraction(1, n)) for _ in range(n)), label=f"fejer[n={n}]")

    @classmethod
    def spike(cls, n: int, *, backend: ScalarBackend = EXACT) -> TriangularRow:
        """t_{n,n} = 1 and all other weights 0, so the mean is S_n."""
        if n < 1:
            msg = f"Rows need n >= 1, got {n}"
            raise SchemeError(msg)
        zero, one = backend.scalar(0), backend.scalar(1)
        return cls((zero,) * (n - 1) + (one,), label=f"spike[n={n}]")

    @property
    def n(self) -> int:
        """Row index n (number of weights)."""
        return len(self.weights)

    def t(self, k: int) -> Scalar:
        """t_{k,n} for 1 <= k, with t_{k,n} = 0 for k > n."""
        if k < 1:
            msg = f"Row weights are indexed from 1, got {k}"
            raise SchemeError(msg)
        return self.weights[k - 1] if k <= self.n else self.weights[0] * 0

    def delta(self, k: int) -> Scalar:
        """Delta t_{k,n} = t_{k,n} - t_{k+1,n}."""
        return self.t(k) - self.t(k + 1)

    @property
    def total(self) -> Scalar:
        """Row sum."""
        return sum(self.weights[1:], self.weights[0])

    @property
    def is_non_increasing(self) -> bool:
        """t_{1,n} >= t_{2,n} >= ... >= t_{n,n}."""
        return all(a >= b for a, b in zip(self.weights, self.weights[1:], strict=False))

    @property
    def is_non_decreasing(self) -> bool:
        """t_{1,n} <= t_{2,n} <= ... <= t_{n,n}."""
        return all(a <= b for a, b in zip(self.weights, self.weights[1:], strict=False))


@dataclass(frozen=True)
class RowClass:
    """Monotonicity and normalization of a row."""

    non_increasing: bool
    non_decreasing: bool
    normalized: bool

    @property
    def neither(self) -> bool:
        """Neither monotone direction holds."""
        return not (self.non_increasing or self.non_decreasing)


def classify_row(row: TriangularRow, *, backend: ScalarBackend = EXACT) -> RowClass:
    """Exact monotonicity flags; normalization under the backend's equality."""
    return RowClass(
        non_increasing=row.is_non_increasing,
        non_decreasing=row.is_non_decreasing,
        normalized=backend.equal(row.total, 1),
    )


def build_row(scheme: WeightScheme, n: int, *, backend: ScalarBackend = EXACT) -> TriangularRow:
    """The n-th row of ``scheme``.

    Nörlund kinds give t_{k,n} = q_{n-k} / Q_n with Q_n = q_0 + ... + q_{n-1};
    weighted schemes give t_{k,n} = p_k / P_n with P_n = p_1 + ... + p_n.

    Raises:
        SchemeError: If n < 1, Q_n or P_n is zero, or an explicit scheme has no
            row of length n.
    """
    if n < 1:
        msg = f"Rows need n >= 1, got {n}"
        raise SchemeError(msg)
    label = f"{scheme.label}[n={n}]"
    if scheme.kind == "explicit":
        for r in scheme.rows:
            if len(r) == n:
                return TriangularRow(tuple(backend.scalar(v) for v in r), label=label)
        msg = f"Explicit scheme {scheme.label} has no row of length {n}"
        raise SchemeError(msg)
    if scheme.is_norlund:
        q = scheme.q_values(n)
        total = sum(q, Fraction(0))
        if total == 0:
            msg = f"Q_{n} = 0 for scheme {scheme.label}"
            raise SchemeError(msg)
        weights = [q[n - k] / total for k in range(1, n + 1)]
    else:
        p = scheme.p_values(n)
        total = sum(p, Fraction(0))
        if total == 0:
            msg = f"P_{n} = 0 for scheme {scheme.label}"
            raise SchemeError(msg)
        weights = [v / total for v in p]
    return TriangularRow(tuple(backend.scalar(w) for w in weights), label=label)


def random_row(
    n: int,
    rng: np.random.Generator,
    *,
    signed: bool = False,
    max_denominator: int = 9,
    backend: ScalarBackend = EXACT,
) -> TriangularRow:
    """Row of seeded random rationals a/b with |a| < 10 and 1 <= b <= max_denominator."""
    low = -9 if signed else 0
    numerators = rng.integers(low, 10, size=n)
    denominators = rng.integers(1, max_denominator + 1, size=n)
    weights = tuple(backend.scalar(Fraction(int(a), int(b))) for a, b in zip(numerators, denominators, strict=True))
    return TriangularRow(weights, signed=signed, label=f"random[n={n}]")

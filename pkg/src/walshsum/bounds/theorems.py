"""Right-hand sides of the approximation theorems for matrix-transform means.

Every bound has the shape

    ||sigma^T_n(f) - f||_p <= sum_j a_j omega_p(f, 2^-j)

with some coefficients a_j either stated explicitly or multiplied by an
unspecified constant c. ``evaluate_rhs`` checks the theorem's hypotheses on
the concrete row and returns the per-scale breakdown; it never decides a
verdict.

Rows are given directly or through their scheme. Nörlund quantities are read
off the row: q_{n-i} / Q_n = t_{i,n}, and Q_m / Q_n = t_{n-m+1,n} + ... + t_{n,n}
for 1 <= m <= n, with Q_m = 0 for m <= 0.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from typing import Any

from walshsum.backends import RootTerm, Scalar, ScalarBackend
from walshsum.dyadic import LpExponent, StepFunction, modulus_power_profile, order
from walshsum.errors import RankError
from walshsum.means.rows import TriangularRow, WeightScheme, build_row, classify_row

logger = logging.getLogger(__name__)

TNN_CONSTANT = Fraction(2)


class TheoremId(StrEnum):
    """The approximation inequalities the bounds module evaluates."""

    MS_NONDEC = "MS_NONDEC"
    MS_NONINC = "MS_NONINC"
    BN_A = "BN_A"
    BN_B = "BN_B"
    AT_MAIN = "AT_MAIN"
    BD4_1 = "BD4_1"
    BD4_2 = "BD4_2"
    BD4_3 = "BD4_3"
    FEJER_3TS = "FEJER_3TS"


SPECIFIED = frozenset({TheoremId.BD4_1, TheoremId.BD4_2, TheoremId.AT_MAIN, TheoremId.FEJER_3TS})
"""Theorems whose constants are all explicit."""

NORLUND_ONLY = frozenset({TheoremId.MS_NONDEC, TheoremId.MS_NONINC, TheoremId.AT_MAIN})
FINITE_P_ONLY = frozenset({TheoremId.AT_MAIN, TheoremId.BD4_2, TheoremId.BD4_3, TheoremId.FEJER_3TS})
TNN_BOUNDED = frozenset({TheoremId.BN_A, TheoremId.BD4_3})
"""Theorems that need t_(n,n) = O(1/n), checked as n * t_(n,n) <= C."""


@dataclass(frozen=True)
class BoundTerm:
    """coefficient * omega_p(f, 2^-scale); ``free`` terms are also multiplied by c."""

    label: str
    scale: int
    coefficient: Scalar
    radicand: Scalar
    omega: Scalar
    free: bool = False

    @property
    def value(self) -> Scalar:
        """coefficient * omega."""
        return self.coefficient * self.omega


@dataclass(frozen=True)
class RhsBreakdown:
    """Evaluated right-hand side of one theorem for one (f, row, n, p).

    Attributes:
        theorem: Which inequality.
        n: Row index.
        p: Exponent.
        terms: Summands, empty when a hypothesis fails.
        violations: Failed hypotheses, in words.
        diagnostics: Informational quantities such as n * t_{n,n}.
    """

    theorem: TheoremId
    n: int
    p: LpExponent
    terms: tuple[BoundTerm, ...] = ()
    violations: tuple[str, ...] = ()
    diagnostics: Mapping[str, Scalar] = field(default_factory=dict)

    @property
    def admissible(self) -> bool:
        """All hypotheses hold."""
        return not self.violations

    @property
    def has_free_constant(self) -> bool:
        """The theorem leaves a constant c unspecified."""
        return self.theorem not in SPECIFIED

    @property
    def specified(self) -> Scalar:
        """Sum of the terms with explicit coefficients."""
        return _sum(t.value for t in self.terms if not t.free)

    @property
    def free_sum(self) -> Scalar:
        """Sum of the terms multiplied by the unspecified constant."""
        return _sum(t.value for t in self.terms if t.free)

    def root_terms(self, free_constant: Scalar | None = None) -> list[RootTerm]:
        """The right-hand side as roots for certified comparison.

        Free terms are included only when ``free_constant`` is given.
        """
        out = [RootTerm(t.coefficient, t.radicand) for t in self.terms if not t.free]
        if free_constant is not None:
            out += [RootTerm(t.coefficient * free_constant, t.radicand) for t in self.terms if t.free]
        return out


def _sum(values: Any) -> Scalar:
    total: Scalar = Fraction(0)
    for v in values:
        total = total + v
    return total


RowSource = WeightScheme | TriangularRow


def resolve_row(source: RowSource, n: int, backend: ScalarBackend) -> tuple[TriangularRow, WeightScheme | None]:
    """Row n of a scheme, or the row itself (which must have length n)."""
    if isinstance(source, WeightScheme):
        return build_row(source, n, backend=backend), source
    if source.n != n:
        msg = f"Row {source.label} has length {source.n}, expected n={n}"
        raise RankError(msg)
    return source, None


def hypothesis_violations(
    theorem: TheoremId,
    row: TriangularRow,
    scheme: WeightScheme | None,
    p: LpExponent,
    backend: ScalarBackend,
    *,
    tnn_constant: Scalar = TNN_CONSTANT,
) -> list[str]:
    """Hypotheses of ``theorem`` that ``row`` (and p) fail, in words."""
    n = row.n
    shape = classify_row(row, backend=backend)
    problems: list[str] = []
    if theorem in NORLUND_ONLY and (scheme is None or not scheme.is_norlund):
        problems.append("needs a Nörlund scheme")
    if theorem in FINITE_P_ONLY and p.is_infinite:
        problems.append("needs p < infinity")
    if not shape.normalized:
        problems.append("row does not sum to 1")
    if theorem in {TheoremId.MS_NONDEC, TheoremId.BN_B, TheoremId.AT_MAIN, TheoremId.BD4_1} and not shape.non_increasing:
        problems.append("row is not non-increasing")
    if theorem in {TheoremId.MS_NONINC, TheoremId.BN_A, TheoremId.BD4_2, TheoremId.BD4_3} and not shape.non_decreasing:
        problems.append("row is not non-decreasing")
    if theorem is TheoremId.BD4_2 and n & (n - 1):
        problems.append("n is not a power of two")
    if theorem in TNN_BOUNDED and not backend.less_equal(row.t(n) * n, tnn_constant):
        problems.append(f"n * t_(n,n) exceeds {backend.format(tnn_constant)}")
    if theorem is TheoremId.FEJER_3TS and any(not backend.equal(w, Fraction(1, n)) for w in row.weights):
        problems.append("row is not the Fejér row")
    return problems


def _q_ratio(row: TriangularRow, m: int) -> Scalar:
    """Q_m / Q_n for a Nörlund row; zero for m <= 0."""
    if m <= 0:
        return row.t(1) * 0
    return _sum(row.t(k) for k in range(row.n - m + 1, row.n + 1))


TermBuilder = Callable[[TriangularRow, int, Callable[[Any], Scalar]], list[tuple[str, int, Scalar, bool]]]


def _ms_nondec(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    terms = [(f"5/2 2^{j} q_(n-2^{j})/Q_n", j, c(Fraction(5, 2)) * (1 << j) * row.t(1 << j), False) for j in range(k)]
    return [*terms, ("c", k, c(1), True)]


def _ms_noninc(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    n = row.n
    terms = [
        (f"5/2 (Q_(n-2^{j}-1) - Q_(n-2^{j + 1}-1))/Q_n", j, c(Fraction(5, 2)) * (_q_ratio(row, n - (1 << j) - 1) - _q_ratio(row, n - (2 << j) - 1)), False)
        for j in range(k)
    ]
    return [*terms, ("c", k, c(1), True)]


def _bn_a(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    terms = [(f"5 2^{j} t_(2^{j + 1}-1)", j, c(5) * (1 << j) * row.t((2 << j) - 1), False) for j in range(k)]
    return [*terms, ("c", k, c(1), True)]


def _bn_b(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    terms = [(f"5 2^{j} t_(2^{j})", j, c(5) * (1 << j) * row.t(1 << j), False) for j in range(k)]
    return [*terms, ("c", k, c(1), True)]


def _at_main(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    terms = [(f"18 2^{j} q_(n-2^{j})/Q_n", j, c(18) * (1 << j) * row.t(1 << j), False) for j in range(k)]
    return [*terms, ("12", k, c(12), False)]


def _bd4_1(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    terms = [(f"31/15 2^{j} t_(2^{j})", j, c(Fraction(31, 15)) * (1 << j) * row.t(1 << j), False) for j in range(k)]
    return [*terms, ("47/30", k, c(Fraction(47, 30)), False)]


def _bd4_2(row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    # n = 2^k; the weights are read from the row of length 2^k
    size = 1 << k
    terms: list[tuple[str, int, Scalar, bool]] = []
    for s in range(k):
        terms.append((f"2^{s}/2^{k}", s, c(Fraction(1 << s, size)), False))
        terms.append((f"3 ({k}-{s}) 2^{s} t_(2^{k}-2^{s}+1)", s, c(3 * (k - s) * (1 << s)) * row.t(size - (1 << s) + 1), False))
    return [*terms, (f"2 + 1/2^{k}", k, c(2 + Fraction(1, size)), False)]


def _bd4_3(_row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    return [(f"c 2^{s}/2^{k}", s, c(Fraction(1 << s, 1 << k)), True) for s in range(k + 1)]


def _fejer_3ts(_row: TriangularRow, k: int, c: Callable[[Any], Scalar]) -> list[tuple[str, int, Scalar, bool]]:
    return [(f"3 2^{s}/2^{k}", s, c(Fraction(3 << s, 1 << k)), False) for s in range(k + 1)]


_BUILDERS: dict[TheoremId, TermBuilder] = {
    TheoremId.MS_NONDEC: _ms_nondec,
    TheoremId.MS_NONINC: _ms_noninc,
    TheoremId.BN_A: _bn_a,
    TheoremId.BN_B: _bn_b,
    TheoremId.AT_MAIN: _at_main,
    TheoremId.BD4_1: _bd4_1,
    TheoremId.BD4_2: _bd4_2,
    TheoremId.BD4_3: _bd4_3,
    TheoremId.FEJER_3TS: _fejer_3ts,
}


def evaluate_rhs(
    theorem: TheoremId | str,
    f: StepFunction,
    source: RowSource,
    n: int,
    p: LpExponent | str,
    *,
    profile: Sequence[Scalar] | None = None,
    tnn_constant: Scalar = TNN_CONSTANT,
) -> RhsBreakdown:
    """Evaluate the right-hand side of ``theorem`` term by term.

    Args:
        theorem: Which inequality.
        f: Function whose moduli of continuity enter the bound.
        source: A weight scheme (row n is built from it) or the row itself.
        n: Row index.
        p: Exponent of the norm.
        profile: Precomputed ``modulus_power_profile(f, p)``; sweeps pass it to
            avoid recomputing the moduli for every row.
        tnn_constant: C in the hypothesis n * t_{n,n} <= C of BD4_3.

    Returns:
        The breakdown; hypothesis failures are listed in ``violations``
        and leave ``terms`` empty.

    Raises:
        RankError: If ``f`` does not resolve omega_p(f, 2^-|n|).

    Examples:
        >>> from walshsum.kernels import walsh_function
        >>> rhs = evaluate_rhs("BD4_1", walsh_function(1, 3), WeightScheme.fejer(), 8, "1")
        >>> rhs.specified
        Fraction(31, 60)
    """
    theorem = TheoremId(theorem)
    p = LpExponent.parse(p)
    backend = f.backend
    if n < 1:
        msg = f"Bounds are stated for n >= 1, got {n}"
        raise RankError(msg)
    k = order(n)
    if f.rank < k:
        msg = f"omega_p(f, 2^-{k}) needs rank >= {k}, function has rank {f.rank}"
        raise RankError(msg)
    row, scheme = resolve_row(source, n, backend)
    diagnostics: dict[str, Scalar] = {"n*t_(n,n)": row.t(n) * n}
    if scheme is not None and scheme.is_norlund:
        diagnostics["q_(n-1)/Q_n"] = row.t(1)
    violations = hypothesis_violations(theorem, row, scheme, p, backend, tnn_constant=tnn_constant)
    if violations:
        logger.debug("%s at n=%d: %s", theorem, n, "; ".join(violations))
        return RhsBreakdown(theorem, n, p, violations=tuple(violations), diagnostics=diagnostics)
    radicands = list(profile) if profile is not None else modulus_power_profile(f, p)
    omegas = [backend.root(r, p.degree) for r in radicands]
    terms = tuple(
        BoundTerm(label=label, scale=scale, coefficient=coefficient, radicand=radicands[scale], omega=omegas[scale], free=free)
        for label, scale, coefficient, free in _BUILDERS[theorem](row, k, backend.scalar)
    )
    return RhsBreakdown(theorem, n, p, terms=terms, diagnostics=diagnostics)

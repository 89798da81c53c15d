"""Seeded test functions for bound sweeps.

Every generator is deterministic under ``(kind, rank, seed)`` and labels its
functions with the parameters that produced them, so a sweep row can be
reproduced from its label alone.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from typing import Any

import numpy as np

from walshsum.backends import EXACT, ScalarBackend
from walshsum.backends.utils import approximate_root, exact_root, format_rational, to_fraction
from walshsum.dyadic import DyadicPoint, StepFunction, dyadic_abs, from_walsh_coefficients, interval_indicator
from walshsum.errors import CorpusError

MAX_NUMERATOR = 9
MAX_DENOMINATOR = 9
HOELDER_BITS = 64


class CorpusKind(StrEnum):
    """Families of generated functions."""

    WALSH_POLYNOMIAL = "walsh-polynomial"
    RANDOM_STEP = "random-step"
    DYADIC_HOELDER = "dyadic-hoelder"
    INTERVAL_INDICATOR = "interval-indicator"


@dataclass(frozen=True)
class LabeledFunction:
    """A generated step function and the parameters behind it."""

    label: str
    kind: CorpusKind
    function: StepFunction
    params: dict[str, Any] = field(default_factory=dict)


def _kind(kind: CorpusKind | str) -> CorpusKind:
    try:
        return CorpusKind(kind)
    except ValueError as exc:
        known = ", ".join(CorpusKind)
        msg = f"Unknown corpus kind {kind!r}; expected one of {known}"
        raise CorpusError(msg) from exc


def _rng(kind: CorpusKind, rank: int, seed: int) -> np.random.Generator:
    return np.random.default_rng([seed, rank, list(CorpusKind).index(kind)])


def _rationals(rng: np.random.Generator, size: int) -> list[Fraction]:
    numerators = rng.integers(-MAX_NUMERATOR, MAX_NUMERATOR + 1, size=size)
    denominators = rng.integers(1, MAX_DENOMINATOR + 1, size=size)
    return [Fraction(int(a), int(b)) for a, b in zip(numerators, denominators, strict=True)]


def _hoelder(rank: int, beta: Fraction, backend: ScalarBackend) -> StepFunction:
    # |x|**beta at the minimal point of each cell
    powers = [dyadic_abs(DyadicPoint(rank, i)) ** beta.numerator for i in range(1 << rank)]
    values = [exact_root(x, beta.denominator) for x in powers]
    return StepFunction(
        [approximate_root(x, beta.denominator, HOELDER_BITS) if v is None else v for x, v in zip(powers, values, strict=True)],
        backend=backend,
    )


def corpus(
    kind: CorpusKind | str,
    rank: int,
    seed: int = 0,
    *,
    count: int = 1,
    degree: int | None = None,
    beta: Any = 1,
    m: int = 1,
    y: DyadicPoint | None = None,
    backend: ScalarBackend = EXACT,
) -> list[LabeledFunction]:
    """Generate labeled functions of one kind at one rank.

    Args:
        kind: Function family.
        rank: Rank of the generated step functions.
        seed: Generator seed; the same arguments always give the same functions.
        count: How many functions the random kinds draw.
        degree: Walsh polynomials use w_0..w_{degree-1}; defaults to all 2**rank.
        beta: Exponent of ``dyadic-hoelder``; must be positive. Values are
            exact when |x|**beta is rational and otherwise rounded to 64 bits
            by mpmath, so they do not depend on the platform's libm.
        m: Depth of the interval for ``interval-indicator``.
        y: Center of the interval; defaults to 0.
        backend: Scalar mode of the generated functions.

    Returns:
        The functions in generation order.

    Raises:
        CorpusError: On a negative rank, a non-positive beta, a count below 1 or
            a degree outside 1..2**rank.
        RankError: If ``m > rank`` for ``interval-indicator``.

    Examples:
        >>> corpus("interval-indicator", 1)[0].function.to_list()
        [Fraction(1, 1), Fraction(0, 1)]
    """
    kind = _kind(kind)
    if rank < 0:
        msg = f"Corpus rank must be >= 0, got {rank}"
        raise CorpusError(msg)
    if count < 1:
        msg = f"Corpus count must be >= 1, got {count}"
        raise CorpusError(msg)
    size = 1 << rank
    rng = _rng(kind, rank, seed)

    if kind is CorpusKind.WALSH_POLYNOMIAL:
        degree = size if degree is None else degree
        if not 1 <= degree <= size:
            msg = f"Walsh polynomial degree must be in 1..{size}, got {degree}"
            raise CorpusError(msg)
        functions = []
        for i in range(count):
            coefficients = _rationals(rng, degree) + [Fraction(0)] * (size - degree)
            f = from_walsh_coefficients(coefficients, backend=backend)
            label = f"walsh-polynomial[rank={rank},degree={degree},seed={seed},i={i}]"
            functions.append(LabeledFunction(label, kind, f, {"rank": rank, "degree": degree, "seed": seed, "i": i}))
        return functions

    if kind is CorpusKind.RANDOM_STEP:
        return [
            LabeledFunction(
                f"random-step[rank={rank},seed={seed},i={i}]",
                kind,
                StepFunction(_rationals(rng, size), backend=backend),
                {"rank": rank, "seed": seed, "i": i},
            )
            for i in range(count)
        ]

    if kind is CorpusKind.DYADIC_HOELDER:
        try:
            b = to_fraction(beta)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            msg = f"Cannot parse beta {beta!r}"
            raise CorpusError(msg) from exc
        if b <= 0:
            msg = f"dyadic-hoelder needs beta > 0, got {format_rational(b)}"
            raise CorpusError(msg)
        label = f"dyadic-hoelder[rank={rank},beta={format_rational(b)}]"
        return [LabeledFunction(label, kind, _hoelder(rank, b, backend), {"rank": rank, "beta": b})]

    center = y if y is not None else DyadicPoint(0, 0)
    label = f"interval-indicator[rank={rank},m={m},y={''.join(map(str, center.coordinates)) or '0'}]"
    f = interval_indicator(m, center, rank, backend=backend)
    return [LabeledFunction(label, kind, f, {"rank": rank, "m": m, "y": center.index})]


def full_corpus(
    ranks: Iterable[int] = (3, 4, 5, 6),
    seed: int = 0,
    *,
    count: int = 2,
    betas: Sequence[Any] = (1, 2),
    kinds: Iterable[CorpusKind | str] = tuple(CorpusKind),
    backend: ScalarBackend = EXACT,
) -> list[LabeledFunction]:
    """All requested kinds at every rank.

    Indicators come in two depths per rank: I_1(0) and a full-depth cell I_rank(y)
    around a seeded point y. A corpus with a larger ``count`` contains every
    function of one with a smaller count.
    """
    wanted = [_kind(k) for k in kinds]
    functions: list[LabeledFunction] = []
    for rank in ranks:
        for kind in wanted:
            if kind is CorpusKind.DYADIC_HOELDER:
                for beta in betas:
                    functions.extend(corpus(kind, rank, seed, beta=beta, backend=backend))
            elif kind is CorpusKind.INTERVAL_INDICATOR:
                functions.extend(corpus(kind, rank, seed, m=min(1, rank), backend=backend))
                if rank > 1:
                    y = DyadicPoint(rank, int(_rng(kind, rank, seed).integers(0, 1 << rank)))
                    functions.extend(corpus(kind, rank, seed, m=rank, y=y, backend=backend))
            else:
                functions.extend(corpus(kind, rank, seed, count=count, backend=backend))
    return functions

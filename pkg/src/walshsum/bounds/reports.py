"""Verdicts for the approximation theorems.

``verify_bound`` composes the true approximation error with the evaluated
right-hand side. Theorems with explicit constants get ``holds`` or ``fails``;
theorems with an unspecified constant c get the smallest c* that makes the
inequality true for the case at hand (``holds-with-min-constant``).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Literal

import numpy as np

from walshsum.backends import RootTerm, Scalar
from walshsum.bounds.theorems import TNN_CONSTANT, RhsBreakdown, RowSource, TheoremId, evaluate_rhs, resolve_row
from walshsum.dyadic import LpExponent, StepFunction, lp_norm, lp_power, modulus_power_profile, shift_power_means
from walshsum.kernels.construct import coefficient_multipliers, fejer_kernel
from walshsum.kernels.report import KernelIdentityReport
from walshsum.means.rows import TriangularRow
from walshsum.means.summation import matrix_mean, mean_from_coefficients

logger = logging.getLogger(__name__)

BoundVerdict = Literal["holds", "fails", "holds-with-min-constant", "hypothesis-violated"]
UNDECIDED_NOTE = "comparison undecided at the finest precision"


@dataclass(frozen=True)
class BoundReport:
    """One row of a bound sweep.

    Attributes:
        theorem: Which inequality.
        n: Row index.
        p: Exponent, as text (``1``, ``2``, ``inf``).
        function: Label of the tested function.
        scheme: Label of the scheme or row.
        mode: Scalar mode.
        verdict: ``holds``, ``fails``, ``holds-with-min-constant`` or
            ``hypothesis-violated``.
        lhs: ||sigma^T_n(f) - f||_p, None when hypotheses fail.
        rhs: Right-hand side value (with c = c* for free-constant theorems).
        ratio: lhs / rhs, None when undefined.
        min_constant: c*, only for theorems with an unspecified constant.
        breakdown: Per-term right-hand side.
        certified: False when exact mode could not separate lhs from the
            right-hand side at its finest precision; the verdict then treats
            the two sides as equal.
    """

    theorem: TheoremId
    n: int
    p: str
    function: str
    scheme: str
    mode: str
    verdict: BoundVerdict
    lhs: Scalar | None = None
    rhs: Scalar | None = None
    ratio: Scalar | None = None
    min_constant: Scalar | None = None
    breakdown: RhsBreakdown | None = None
    certified: bool = True

    @property
    def failed(self) -> bool:
        """A bound with explicit or solvable constant did not hold."""
        return self.verdict == "fails"

    @property
    def detail(self) -> str:
        """Failed hypotheses, an uncertified comparison, or an empty string."""
        notes = [] if self.breakdown is None else list(self.breakdown.violations)
        if not self.certified:
            notes.append(UNDECIDED_NOTE)
        return "; ".join(notes)


def approximation_error(f: StepFunction, row: TriangularRow, p: LpExponent | str) -> Scalar:
    """||sigma^T_n(f) - f||_p."""
    return lp_norm(matrix_mean(f, row) - f, LpExponent.parse(p))


def _error_radicand(f: StepFunction, row: TriangularRow, p: LpExponent, coefficients: np.ndarray | None) -> Scalar:
    if coefficients is None or row.n > f.size:
        mean = matrix_mean(f, row)
    else:
        mean = mean_from_coefficients(coefficients, coefficient_multipliers(row), f.backend)
    return lp_power(mean - f, p)


def _ratio(lhs: Scalar, rhs: Scalar) -> Scalar | None:
    if rhs > 0:
        return lhs / rhs
    return lhs * 0 if lhs == 0 else None


def verify_bound(
    theorem: TheoremId | str,
    f: StepFunction,
    source: RowSource,
    n: int,
    p: LpExponent | str,
    *,
    label: str = "f",
    profile: Sequence[Scalar] | None = None,
    coefficients: np.ndarray | None = None,
    tnn_constant: Scalar = TNN_CONSTANT,
) -> BoundReport:
    """Check one theorem for one (f, row, n, p).

    Explicit-constant theorems compare lhs with the right-hand side through
    ``certify_le``, so in exact mode the verdict is exact even when the norms
    are irrational. Free-constant theorems report
    c* = max(0, (lhs - specified) / free), where ``free`` is the sum the constant
    multiplies; c* is computed from the backend roots, so for p not in {1, inf}
    it carries the root precision of the backend.

    Examples:
        >>> from walshsum.kernels import walsh_function
        >>> from walshsum.means import WeightScheme
        >>> verify_bound("BD4_1", walsh_function(1, 3), WeightScheme.fejer(), 8, "1").ratio
        Fraction(15, 62)
    """
    theorem = TheoremId(theorem)
    p = LpExponent.parse(p)
    backend = f.backend
    row, scheme = resolve_row(source, n, backend)
    breakdown = evaluate_rhs(theorem, f, row if scheme is None else scheme, n, p, profile=profile, tnn_constant=tnn_constant)
    report = BoundReport(
        theorem=theorem,
        n=n,
        p=str(p),
        function=label,
        scheme=scheme.label if scheme is not None else row.label,
        mode=backend.name,
        verdict="hypothesis-violated",
        breakdown=breakdown,
    )
    if not breakdown.admissible:
        return report
    lhs_radicand = _error_radicand(f, row, p, coefficients)
    lhs = backend.root(lhs_radicand, p.degree)
    lhs_terms = [RootTerm(1, lhs_radicand)]
    if not breakdown.has_free_constant:
        rhs = breakdown.specified
        decided = backend.certify_le(lhs_terms, breakdown.root_terms(), p.degree)
        verdict: BoundVerdict = "fails" if decided is False else "holds"
        return replace(report, verdict=verdict, lhs=lhs, rhs=rhs, ratio=_ratio(lhs, rhs), certified=decided is not None)
    specified, free = breakdown.specified, breakdown.free_sum
    decided: bool | None = True
    if free > 0:
        c_star = max(backend.scalar(0), (lhs - specified) / free)
    elif (decided := backend.certify_le(lhs_terms, breakdown.root_terms(), p.degree)) is not False:
        c_star = backend.scalar(0)
    else:
        logger.info("%s n=%d p=%s %s: no constant c works (free terms vanish)", theorem, n, p, label)
        return replace(report, verdict="fails", lhs=lhs, rhs=specified, ratio=_ratio(lhs, specified))
    rhs = specified + c_star * free
    return replace(
        report,
        verdict="holds-with-min-constant",
        lhs=lhs,
        rhs=rhs,
        ratio=_ratio(lhs, rhs),
        min_constant=c_star,
        certified=decided is not None,
    )


def translation_average_check(f: StepFunction, n: int, p: LpExponent | str) -> KernelIdentityReport:
    """2^n * integral of ||f(. + u) - f||_p K_{2^n}(u) du <= sum_{s<=n} 2^s omega_p(f, 2^-s).

    The integral is a finite sum over the cells of rank max(rank(f), n). Both
    sides are sums of p-th roots with non-negative coefficients (K_{2^n} >= 0)
    and are compared with ``certify_le``.
    """
    p = LpExponent.parse(p)
    backend = f.backend
    rank = max(f.rank, n)
    g = f.refine(rank)
    kernel = fejer_kernel(1 << n, rank, backend=backend).values
    shifts = shift_power_means(g, p)
    weight = backend.scalar(Fraction(1 << n, 1 << rank))
    lhs_terms = [RootTerm(weight * k, r) for k, r in zip(kernel, shifts, strict=True) if k != 0]
    profile = modulus_power_profile(g, p)
    rhs_terms = [RootTerm(backend.scalar(1 << s), profile[s]) for s in range(n + 1)]
    lhs = sum((t.coefficient * backend.root(t.radicand, p.degree) for t in lhs_terms), backend.scalar(0))
    rhs = sum((t.coefficient * backend.root(t.radicand, p.degree) for t in rhs_terms), backend.scalar(0))
    decided = backend.certify_le(lhs_terms, rhs_terms, p.degree)
    passed = decided is not False
    detail = f"lhs {backend.format(lhs)}, rhs {backend.format(rhs)}"
    return KernelIdentityReport(
        identity="TRANSLATION_AVERAGE",
        params={"n": n, "p": str(p), "rank": rank},
        mode=backend.name,
        passed=passed,
        max_deviation=lhs - rhs,
        witness=None if passed else n,
        detail=detail if decided is not None else f"{detail}; {UNDECIDED_NOTE}",
    )


@dataclass(frozen=True)
class SharpeningComparison:
    """BD4_1's right-hand side against BN_B's with c = 47/30, for one case.

    ``improves`` is None when the comparison does not apply or exact mode could
    not separate the two bounds.
    """

    n: int
    p: str
    applicable: bool
    sharper_rhs: Scalar | None = None
    reference_rhs: Scalar | None = None
    improves: bool | None = None


def sharpening_comparison(f: StepFunction, row: TriangularRow, p: LpExponent | str) -> SharpeningComparison:
    """Whether BD4_1's bound is at most BN_B's bound with its constant c set to 47/30.

    Only meaningful where both theorems apply (non-increasing normalized rows).
    """
    p = LpExponent.parse(p)
    sharp = evaluate_rhs(TheoremId.BD4_1, f, row, row.n, p)
    reference = evaluate_rhs(TheoremId.BN_B, f, row, row.n, p)
    if not (sharp.admissible and reference.admissible):
        return SharpeningComparison(n=row.n, p=str(p), applicable=False)
    c = f.backend.scalar(Fraction(47, 30))
    improves = f.backend.certify_le(sharp.root_terms(), reference.root_terms(free_constant=c), p.degree)
    return SharpeningComparison(
        n=row.n,
        p=str(p),
        applicable=True,
        sharper_rhs=sharp.specified,
        reference_rhs=reference.specified + c * reference.free_sum,
        improves=improves,
    )

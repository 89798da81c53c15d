"""Bound sweeps over a corpus, schemes, row indices and exponents.

A sweep is planned up front as a list of ``BoundCase`` values. Cases that share
a function and an exponent form one work unit: the function's Walsh
coefficients and modulus profile are computed once per unit and reused by
every row. Units run in a process pool; results are put back in case order, so
the output does not depend on completion order or on the number of workers.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from walshsum.backends import Scalar
from walshsum.bounds.corpus import LabeledFunction
from walshsum.bounds.reports import BoundReport, verify_bound
from walshsum.bounds.theorems import FINITE_P_ONLY, TNN_CONSTANT, TheoremId
from walshsum.dyadic import LpExponent, StepFunction, modulus_power_profile, order, walsh_coefficients
from walshsum.means.rows import WeightScheme

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundCase:
    """One (theorem, function, scheme, n, p) tuple of a sweep."""

    index: int
    theorem: TheoremId
    function: int
    scheme: WeightScheme
    n: int
    p: LpExponent


@dataclass(frozen=True)
class SweepPlan:
    """Functions and the cases that refer to them by position."""

    functions: tuple[LabeledFunction, ...]
    cases: tuple[BoundCase, ...]
    tnn_constant: Scalar = TNN_CONSTANT

    def __len__(self) -> int:
        return len(self.cases)


def sweep_rank(f: StepFunction, n_max: int) -> int:
    """Rank at which ``f`` is swept: fine enough for omega_p(f, 2^-|n|) and for S_n."""
    return max(f.rank, order(n_max) + 1)


def plan_cases(
    theorems: Iterable[TheoremId | str],
    functions: Sequence[LabeledFunction],
    schemes: Sequence[WeightScheme],
    n_values: Iterable[int],
    exponents: Iterable[LpExponent | str],
    *,
    tnn_constant: Scalar = TNN_CONSTANT,
) -> SweepPlan:
    """Enumerate the sweep in (theorem, scheme, function, n, p) order.

    Combinations a theorem is never stated for are not planned: p = infinity for
    the finite-p theorems and non-dyadic n for BD4_2. Neither are row indices a
    scheme has no row for (explicit schemes list their rows). Every other
    combination is planned, including those whose rows break a hypothesis; those
    come back as ``hypothesis-violated``.
    """
    ns = sorted(set(n_values))
    ps = [LpExponent.parse(p) for p in exponents]
    cases: list[BoundCase] = []
    for theorem, scheme in product([TheoremId(t) for t in theorems], schemes):
        for function, n, p in product(range(len(functions)), ns, ps):
            if theorem in FINITE_P_ONLY and p.is_infinite:
                continue
            if theorem is TheoremId.BD4_2 and n & (n - 1):
                continue
            if not scheme.defines(n):
                continue
            cases.append(BoundCase(len(cases), theorem, function, scheme, n, p))
    logger.info("Planned %d bound cases over %d functions", len(cases), len(functions))
    return SweepPlan(tuple(functions), tuple(cases), tnn_constant)


@dataclass(frozen=True)
class _Unit:
    function: LabeledFunction
    p: LpExponent
    cases: tuple[BoundCase, ...]
    tnn_constant: Scalar


def _run_unit(unit: _Unit) -> list[tuple[int, BoundReport]]:
    n_max = max(case.n for case in unit.cases)
    f = unit.function.function
    f = f.refine(sweep_rank(f, n_max))
    profile = modulus_power_profile(f, unit.p)
    coefficients = walsh_coefficients(f)
    return [
        (
            case.index,
            verify_bound(
                case.theorem,
                f,
                case.scheme,
                case.n,
                case.p,
                label=unit.function.label,
                profile=profile,
                coefficients=coefficients,
                tnn_constant=unit.tnn_constant,
            ),
        )
        for case in unit.cases
    ]


def _units(plan: SweepPlan) -> list[_Unit]:
    grouped: dict[tuple[int, str], list[BoundCase]] = defaultdict(list)
    exponents: dict[str, LpExponent] = {}
    for case in plan.cases:
        grouped[case.function, str(case.p)].append(case)
        exponents[str(case.p)] = case.p
    return [
        _Unit(plan.functions[function], exponents[p], tuple(cases), plan.tnn_constant)
        for (function, p), cases in grouped.items()
    ]


def run_sweep(plan: SweepPlan, *, workers: int = 1) -> list[BoundReport]:
    """Evaluate every case of ``plan``; reports come back in case order.

    Args:
        plan: The planned cases.
        workers: Process pool size; 1 runs in the calling process.
    """
    units = _units(plan)
    if workers > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(_run_unit, units))
    else:
        batches = [_run_unit(unit) for unit in units]
    indexed = sorted((pair for batch in batches for pair in batch), key=lambda pair: pair[0])
    reports = [report for _, report in indexed]
    counts = Counter(report.verdict for report in reports)
    logger.info("Sweep finished: %s", ", ".join(f"{v}={c}" for v, c in sorted(counts.items())) or "no cases")
    return reports


@dataclass(frozen=True)
class EmpiricalConstant:
    """Largest c* observed for one theorem and the case that attained it."""

    theorem: TheoremId
    value: Scalar
    cases: int
    function: str
    n: int
    p: str


def empirical_constants(reports: Iterable[BoundReport]) -> dict[TheoremId, EmpiricalConstant]:
    """Maximum c* per theorem over the ``holds-with-min-constant`` reports.

    Ties keep the earliest report as the witness. The maximum over a superset
    of reports is never smaller than over a subset.
    """
    best: dict[TheoremId, EmpiricalConstant] = {}
    seen: Counter[TheoremId] = Counter()
    for report in reports:
        if report.min_constant is None:
            continue
        seen[report.theorem] += 1
        current = best.get(report.theorem)
        if current is None or report.min_constant > current.value:
            best[report.theorem] = EmpiricalConstant(
                report.theorem, report.min_constant, 0, report.function, report.n, report.p
            )
    return {
        theorem: EmpiricalConstant(c.theorem, c.value, seen[theorem], c.function, c.n, c.p)
        for theorem, c in sorted(best.items())
    }

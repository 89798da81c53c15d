"""Full-size verification grids. Deselect with ``-m "not slow"``."""

from fractions import Fraction

import numpy as np
import pytest

from walshsum.bounds import TheoremId, empirical_constants, full_corpus, plan_cases, run_sweep
from walshsum.dyadic import StepFunction, integrate, walsh_coefficients
from walshsum.kernels import TOLEDO_BOUND, KernelIdentityId, LemmaGrid, kernel_l1_scan, verify_all, walsh_function
from walshsum.means import WeightScheme, abel_decomposition_check, matrix_mean, matrix_mean_by_convolution, random_row

pytestmark = pytest.mark.slow

F = Fraction
RANKS = (3, 4, 5, 6)
NON_INCREASING = [WeightScheme.parse(s) for s in ("fejer", "weighted:1/k", "norlund:1", "norlund:k+1", "cesaro:1")]
NORLUND_NON_INCREASING = [WeightScheme.parse(s) for s in ("fejer", "norlund:k+1", "cesaro:1")]
NON_DECREASING = [WeightScheme.parse(s) for s in ("fejer", "weighted:k", "norlund:1/(k+1)")]


def _random_function(rank, rng):
    numerators = rng.integers(-9, 10, 1 << rank)
    denominators = rng.integers(1, 10, 1 << rank)
    return StepFunction([F(int(a), int(b)) for a, b in zip(numerators, denominators, strict=True)])


@pytest.fixture(scope="module")
def functions():
    return full_corpus(ranks=RANKS, count=1)


def test_toledo_scan_to_4096():
    scan = kernel_l1_scan(1 << 12)
    assert len(scan.entries) == 1 << 12
    assert scan.maximum <= TOLEDO_BOUND
    assert all(value <= 2 for _, value in scan.entries)


def test_nkn_bound_at_rank_nine():
    reports = verify_all(LemmaGrid(n_max=256, rank=9, identities=(KernelIdentityId.NKN_BOUND,)))
    assert len(reports) == 256
    assert all(r.verdict == "exact-pass" for r in reports)


def test_matrix_means_match_convolution_on_200_pairs():
    rng = np.random.default_rng(2024)
    for i in range(200):
        rank = RANKS[i % len(RANKS)]
        f = _random_function(rank, rng)
        row = random_row(int(rng.integers(1, (1 << rank) + 1)), rng, signed=i % 2 == 1)
        assert matrix_mean(f, row).equals(matrix_mean_by_convolution(f, row)), (i, rank, row.n)


def test_coefficients_match_defining_integrals():
    rng = np.random.default_rng(7)
    for rank in range(7):
        f = _random_function(rank, rng)
        coefficients = walsh_coefficients(f)
        assert [integrate(f * walsh_function(k, rank)) for k in range(1 << rank)] == list(coefficients)


def test_bd4_1_over_full_corpus(functions):
    plan = plan_cases(["BD4_1"], functions, NON_INCREASING, range(2, 65), ["1", "2", "inf"])
    reports = run_sweep(plan)
    assert len(reports) == len(functions) * len(NON_INCREASING) * 63 * 3
    assert all(r.verdict == "holds" for r in reports), [r for r in reports if r.verdict != "holds"][:3]


def test_bd4_2_at_dyadic_indices(functions):
    plan = plan_cases(["BD4_2"], functions, NON_DECREASING, [1 << m for m in range(7)], ["1", "2"])
    reports = run_sweep(plan)
    assert len(reports) == len(functions) * len(NON_DECREASING) * 7 * 2
    assert all(r.verdict == "holds" for r in reports)


def test_at_main_and_three_times_fejer(functions):
    plan = plan_cases(["AT_MAIN"], functions, NORLUND_NON_INCREASING, range(1, 65), ["1", "2"])
    plan_fejer = plan_cases(["FEJER_3TS"], functions, [WeightScheme.fejer()], range(1, 65), ["1", "2"])
    reports = [*run_sweep(plan), *run_sweep(plan_fejer)]
    assert all(r.verdict == "holds" for r in reports)


def test_abel_identities_on_100_rows_per_n():
    rng = np.random.default_rng(11)
    f = _random_function(6, rng)
    for n in range(1, 65):
        for i in range(100):
            row = random_row(n, rng, signed=i % 2 == 1)
            assert abel_decomposition_check(f, row).verdict == "exact-pass", (n, i)


def test_unspecified_constants_are_finite_and_grow_with_the_corpus():
    small = full_corpus(ranks=(3, 4), count=1)
    large = full_corpus(ranks=(3, 4), count=2)
    sweeps = [
        (["BD4_3", "BN_A"], [WeightScheme.fejer(), WeightScheme.parse("weighted:k")]),
        (["BN_B"], NON_INCREASING),
        (["MS_NONDEC"], NORLUND_NON_INCREASING),
        (["MS_NONINC"], [WeightScheme.fejer(), WeightScheme.parse("norlund:1/(k+1)")]),
    ]
    for theorems, schemes in sweeps:
        small_reports = run_sweep(plan_cases(theorems, small, schemes, range(1, 33), ["1", "2"]))
        large_reports = run_sweep(plan_cases(theorems, large, schemes, range(1, 33), ["1", "2"]))
        assert all(r.verdict == "holds-with-min-constant" for r in large_reports), theorems
        assert all(r.min_constant is not None and r.min_constant >= 0 for r in large_reports)
        small_constants = empirical_constants(small_reports)
        large_constants = empirical_constants(large_reports)
        assert set(small_constants) == {TheoremId(t) for t in theorems}
        for theorem, constant in small_constants.items():
            assert constant.value <= large_constants[theorem].value

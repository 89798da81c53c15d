from fractions import Fraction

import pytest

from walshsum.backends import FLOAT
from walshsum.bounds import (
    BoundReport,
    CorpusKind,
    TheoremId,
    approximation_error,
    corpus,
    empirical_constants,
    evaluate_rhs,
    full_corpus,
    plan_cases,
    run_sweep,
    sharpening_comparison,
    sweep_rank,
    translation_average_check,
    verify_bound,
)
from walshsum.dyadic import INF, DyadicPoint, StepFunction, walsh_coefficients
from walshsum.errors import CorpusError, RankError
from walshsum.kernels import walsh_function
from walshsum.means import TriangularRow, WeightScheme, build_row

F = Fraction
FEJER = WeightScheme.fejer()


@pytest.fixture
def w1():
    return walsh_function(1, 3)


class TestEvaluateRhs:
    def test_bd4_1_for_first_walsh_function(self, w1):
        rhs = evaluate_rhs("BD4_1", w1, FEJER, 8, "1")
        assert rhs.admissible
        assert not rhs.has_free_constant
        assert len(rhs.terms) == 4
        assert rhs.specified == F(31, 60)
        assert rhs.free_sum == 0
        assert rhs.diagnostics["n*t_(n,n)"] == 1
        assert rhs.diagnostics["q_(n-1)/Q_n"] == F(1, 8)

    def test_fejer_three_term_bound(self):
        rhs = evaluate_rhs("FEJER_3TS", walsh_function(1, 1), FEJER, 2, "1")
        assert rhs.specified == 3

    def test_bd4_2_reads_the_dyadic_row(self, w1):
        rhs = evaluate_rhs("BD4_2", w1, WeightScheme.parse("weighted:k"), 8, "1")
        assert rhs.specified == F(17, 4)

    def test_free_constant_terms(self, w1):
        rhs = evaluate_rhs("BD4_3", w1, FEJER, 8, "1")
        assert rhs.has_free_constant
        assert rhs.specified == 0
        assert rhs.free_sum == F(1, 4)
        assert len(rhs.root_terms()) == 0
        assert len(rhs.root_terms(free_constant=F(1))) == 4

    @pytest.mark.parametrize(
        ("theorem", "scheme", "n", "p", "expected"),
        [
            ("BD4_1", "log", 4, "1", "row is not non-increasing"),
            ("MS_NONDEC", "weighted:1/k", 4, "1", "needs a Nörlund scheme"),
            ("AT_MAIN", "fejer", 4, "inf", "needs p < infinity"),
            ("BD4_2", "fejer", 6, "1", "n is not a power of two"),
            ("FEJER_3TS", "norlund:k+1", 4, "1", "row is not the Fejér row"),
            ("BN_A", "norlund:k+1", 4, "2", "row is not non-decreasing"),
        ],
    )
    def test_hypothesis_violations(self, w1, theorem, scheme, n, p, expected):
        rhs = evaluate_rhs(theorem, w1, WeightScheme.parse(scheme), n, p)
        assert not rhs.admissible
        assert expected in rhs.violations
        assert rhs.terms == ()

    def test_bd4_3_row_tail_condition(self, w1):
        # n * t_(n,n) = 8 * 8/36 = 16/9 passes C = 2 and fails C = 3/2
        scheme = WeightScheme.parse("weighted:k")
        assert evaluate_rhs("BD4_3", w1, scheme, 8, "1").admissible
        assert not evaluate_rhs("BD4_3", w1, scheme, 8, "1", tnn_constant=F(3, 2)).admissible

    def test_bn_a_needs_bounded_last_weight(self, w1):
        # the spike row has n * t_(n,n) = n
        for n in (4, 8):
            report = verify_bound("BN_A", w1, TriangularRow.spike(n), n, "1")
            assert report.verdict == "hypothesis-violated"
            assert "n * t_(n,n) exceeds 2" in report.detail
            assert report.min_constant is None
        assert evaluate_rhs("BN_A", w1, WeightScheme.parse("weighted:k"), 8, "1").admissible
        assert not evaluate_rhs("BN_A", w1, WeightScheme.parse("weighted:k"), 8, "1", tnn_constant=F(3, 2)).admissible

    def test_unnormalised_row(self, w1):
        row = TriangularRow((F(1, 2), F(1, 4)))
        assert "row does not sum to 1" in evaluate_rhs("BN_B", w1, row, 2, "1").violations

    def test_rank_and_index_errors(self, w1):
        with pytest.raises(RankError):
            evaluate_rhs("BD4_1", walsh_function(1, 1), FEJER, 8, "1")
        with pytest.raises(RankError):
            evaluate_rhs("BD4_1", w1, FEJER, 0, "1")
        with pytest.raises(RankError):
            evaluate_rhs("BD4_1", w1, TriangularRow.uniform(3), 4, "1")


class TestVerifyBound:
    def test_uncertified_comparison_is_noted(self):
        report = BoundReport(TheoremId.BD4_1, 4, "2", "f", "fejer", "exact", "holds", certified=False)
        assert not report.failed
        assert "undecided" in report.detail
        assert BoundReport(TheoremId.BD4_1, 4, "2", "f", "fejer", "exact", "holds").detail == ""

    def test_bd4_1_holds_with_exact_ratio(self, w1):
        report = verify_bound("BD4_1", w1, FEJER, 8, "1", label="w1")
        assert report.verdict == "holds"
        assert report.lhs == F(1, 8)
        assert report.rhs == F(31, 60)
        assert report.ratio == F(15, 62)
        assert report.min_constant is None
        assert report.function == "w1"
        assert report.scheme == "fejer"
        assert not report.failed

    def test_bd4_1_in_l2(self, w1):
        report = verify_bound("BD4_1", w1, FEJER, 8, "2")
        assert report.verdict == "holds"
        assert report.lhs == F(1, 8)
        assert report.ratio == F(15, 62)

    def test_float_mode(self, w1):
        report = verify_bound("BD4_1", w1.astype(FLOAT), FEJER, 8, "1")
        assert report.verdict == "holds"
        assert report.mode == "float"
        assert report.ratio == pytest.approx(15 / 62)

    def test_fejer_three_term_bound(self):
        report = verify_bound("FEJER_3TS", walsh_function(1, 1), FEJER, 2, "1")
        assert report.verdict == "holds"
        assert report.lhs == F(1, 2)
        assert report.rhs == 3

    def test_bd4_2(self, w1):
        report = verify_bound("BD4_2", w1, WeightScheme.parse("weighted:k"), 8, "1")
        assert report.verdict == "holds"
        assert report.lhs == F(1, 36)

    def test_constant_function_has_zero_error(self):
        f = StepFunction.constant(3, 3)
        report = verify_bound("AT_MAIN", f, FEJER, 4, "2")
        assert report.verdict == "holds"
        assert report.lhs == 0
        assert report.ratio == 0
        free = verify_bound("BD4_3", f, FEJER, 4, "1")
        assert free.verdict == "holds-with-min-constant"
        assert free.min_constant == 0

    def test_min_constant(self, w1):
        report = verify_bound("BD4_3", w1, FEJER, 8, "1")
        assert report.verdict == "holds-with-min-constant"
        assert report.min_constant == F(1, 2)
        assert report.rhs == report.lhs
        assert report.ratio == 1

    def test_min_constant_is_zero_when_specified_terms_suffice(self, w1):
        report = verify_bound("BN_B", w1, FEJER, 8, "1")
        assert report.verdict == "holds-with-min-constant"
        assert report.min_constant == 0
        assert report.rhs == F(5, 4)

    def test_min_constant_makes_bound_tight(self):
        f = corpus("random-step", 3, seed=4)[0].function
        for theorem in ("MS_NONDEC", "BN_B", "BD4_3"):
            report = verify_bound(theorem, f, FEJER, 2, "1")
            assert report.verdict == "holds-with-min-constant"
            assert report.min_constant >= 0
            assert report.rhs >= report.lhs

    def test_hypothesis_violation_is_a_verdict(self, w1):
        report = verify_bound("BD4_1", w1, WeightScheme.logarithmic(), 4, "1")
        assert report.verdict == "hypothesis-violated"
        assert report.lhs is None
        assert "non-increasing" in report.detail
        assert not report.failed

    def test_explicit_row(self, w1):
        row = build_row(FEJER, 8)
        assert verify_bound("BD4_1", w1, row, 8, "1").ratio == F(15, 62)

    def test_precomputed_coefficients_agree(self):
        f = corpus("random-step", 4, seed=1)[0].function
        plain = verify_bound("BD4_1", f, FEJER, 5, "1")
        reused = verify_bound("BD4_1", f, FEJER, 5, "1", coefficients=walsh_coefficients(f))
        assert plain == reused


def test_approximation_error(w1):
    assert approximation_error(w1, build_row(FEJER, 8), "1") == F(1, 8)
    assert approximation_error(w1, TriangularRow.spike(2), INF) == 0


def test_translation_average_check():
    for f in (walsh_function(1, 3), corpus("random-step", 3, seed=2)[0].function):
        for p in ("1", "2"):
            for n in range(4):
                report = translation_average_check(f, n, p)
                assert report.passed, report
                assert report.identity == "TRANSLATION_AVERAGE"


class TestSharpening:
    def test_fejer_row(self, w1):
        result = sharpening_comparison(w1, build_row(FEJER, 8), "1")
        assert result.applicable
        assert result.sharper_rhs == F(31, 60)
        assert result.reference_rhs == F(5, 4)
        assert result.improves

    def test_not_applicable_to_increasing_rows(self, w1):
        result = sharpening_comparison(w1, build_row(WeightScheme.logarithmic(), 4), "1")
        assert not result.applicable
        assert result.improves is None


class TestCorpus:
    def test_interval_indicator(self):
        assert corpus("interval-indicator", 1)[0].function.to_list() == [1, 0]
        item = corpus("interval-indicator", 3, m=2, y=DyadicPoint.from_coordinates([1, 0]))[0]
        assert item.label == "interval-indicator[rank=3,m=2,y=10]"
        assert item.function.to_list() == [0, 0, 0, 0, 1, 1, 0, 0]
        with pytest.raises(RankError):
            corpus("interval-indicator", 1, m=2)

    def test_hoelder(self):
        item = corpus(CorpusKind.DYADIC_HOELDER, 2)[0]
        assert item.function.to_list() == [0, F(1, 4), F(1, 2), F(3, 4)]
        assert item.label == "dyadic-hoelder[rank=2,beta=1]"
        assert corpus("dyadic-hoelder", 2, beta=2)[0].function.to_list() == [0, F(1, 16), F(1, 4), F(9, 16)]
        assert corpus("dyadic-hoelder", 2, beta="1/2")[0].label == "dyadic-hoelder[rank=2,beta=1/2]"

    def test_fractional_hoelder_is_exact_where_rational(self):
        values = corpus("dyadic-hoelder", 2, beta="1/2")[0].function.to_list()
        assert values[:2] == [0, F(1, 2)]
        assert abs(values[2] ** 2 - F(1, 2)) < F(1, 1 << 60)
        assert abs(values[3] ** 2 - F(3, 4)) < F(1, 1 << 60)
        assert values == corpus("dyadic-hoelder", 2, beta="1/2")[0].function.to_list()

    def test_random_kinds_are_deterministic(self):
        a = corpus("random-step", 3, 5, count=2)
        b = corpus("random-step", 3, 5, count=2)
        assert [x.label for x in a] == ["random-step[rank=3,seed=5,i=0]", "random-step[rank=3,seed=5,i=1]"]
        assert all(x.function.equals(y.function) for x, y in zip(a, b, strict=True))
        assert not a[0].function.equals(corpus("random-step", 3, 6)[0].function)

    def test_larger_count_extends_smaller(self):
        small = corpus("walsh-polynomial", 3, count=2)
        large = corpus("walsh-polynomial", 3, count=4)
        assert all(x.function.equals(y.function) for x, y in zip(small, large[:2], strict=True))

    def test_walsh_polynomial_degree(self):
        item = corpus("walsh-polynomial", 3, degree=2)[0]
        assert item.label == "walsh-polynomial[rank=3,degree=2,seed=0,i=0]"
        assert all(c == 0 for c in walsh_coefficients(item.function)[2:])

    def test_float_corpus(self):
        assert corpus("random-step", 2, backend=FLOAT)[0].function.mode == "float"

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"kind": "bogus", "rank": 2},
            {"kind": "random-step", "rank": -1},
            {"kind": "random-step", "rank": 2, "count": 0},
            {"kind": "walsh-polynomial", "rank": 2, "degree": 5},
            {"kind": "dyadic-hoelder", "rank": 2, "beta": 0},
            {"kind": "dyadic-hoelder", "rank": 2, "beta": "abc"},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(CorpusError):
            corpus(**kwargs)

    def test_full_corpus(self):
        functions = full_corpus(ranks=(3,), count=2, betas=(1, 2))
        assert len(functions) == 8
        assert len({f.label for f in functions}) == 8
        assert {f.kind for f in functions} == set(CorpusKind)
        assert len(full_corpus(ranks=(1,), kinds=["interval-indicator"])) == 1
        assert full_corpus(ranks=(0,), kinds=["interval-indicator"])[0].function.to_list() == [1]


class TestSweep:
    @pytest.fixture
    def plan(self):
        functions = [*corpus("random-step", 3, count=1), *corpus("dyadic-hoelder", 2)]
        return plan_cases(["BD4_1", "AT_MAIN", "BD4_2"], functions, [FEJER], range(1, 9), ["1", "inf"])

    def test_sweep_rank(self):
        assert sweep_rank(StepFunction.zero(2), 8) == 4
        assert sweep_rank(StepFunction.zero(6), 8) == 6

    def test_plan_skips_unstated_combinations(self, plan):
        # BD4_1: 2 functions x 8 n x 2 p; AT_MAIN drops p = inf; BD4_2 keeps n in {1, 2, 4, 8}
        assert len(plan) == 32 + 16 + 8
        assert [case.index for case in plan.cases] == list(range(len(plan)))
        assert not any(c.theorem is TheoremId.AT_MAIN and c.p.is_infinite for c in plan.cases)

    def test_run_sweep_keeps_case_order(self, plan):
        reports = run_sweep(plan)
        assert len(reports) == len(plan)
        for case, report in zip(plan.cases, reports, strict=True):
            assert report.theorem is case.theorem
            assert report.n == case.n
            assert report.p == str(case.p)
            assert report.function == plan.functions[case.function].label
        assert not any(r.failed for r in reports)
        assert {r.verdict for r in reports} <= {"holds", "hypothesis-violated"}

    @pytest.mark.slow
    def test_workers_do_not_change_results(self, plan):
        assert run_sweep(plan, workers=2) == run_sweep(plan)

    def test_empirical_constants(self):
        functions = corpus("random-step", 3, count=2)
        plan = plan_cases(["BD4_3", "BN_B"], functions, [FEJER, WeightScheme.parse("weighted:1/k")], range(1, 9), ["1"])
        reports = run_sweep(plan)
        constants = empirical_constants(reports)
        assert set(constants) <= {TheoremId.BD4_3, TheoremId.BN_B}
        for theorem, constant in constants.items():
            values = [r.min_constant for r in reports if r.theorem is theorem and r.min_constant is not None]
            assert constant.value == max(values)
            assert constant.cases == len(values)
        subset = empirical_constants(reports[: len(reports) // 2])
        for theorem, constant in subset.items():
            assert constant.value <= constants[theorem].value

    def test_explicit_scheme_plans_only_listed_rows(self):
        functions = corpus("random-step", 3, count=1)
        scheme = WeightScheme.parse("explicit:3,1,2")
        plan = plan_cases(["AT_MAIN"], functions, [scheme], range(1, 9), ["1"])
        assert [case.n for case in plan.cases] == [3]
        assert [r.verdict for r in run_sweep(plan)] == ["hypothesis-violated"]
        uniform = WeightScheme.parse("explicit:1/2,1/2;1/4,1/4,1/4,1/4")
        reports = run_sweep(plan_cases(["BD4_1"], functions, [uniform], range(1, 9), ["1"]))
        assert [r.n for r in reports] == [2, 4]
        assert {r.verdict for r in reports} == {"holds"}

    def test_empirical_constants_ties_keep_first(self):
        def report(function, value):
            return BoundReport(TheoremId.BD4_3, 4, "1", function, "fejer", "exact", "holds-with-min-constant", min_constant=value)

        constants = empirical_constants([report("a", F(1, 2)), report("b", F(1, 2)), report("c", F(1, 3))])
        assert constants[TheoremId.BD4_3].function == "a"
        assert constants[TheoremId.BD4_3].cases == 3
        assert empirical_constants([]) == {}


def test_corpus_functions_satisfy_explicit_bounds():
    functions = full_corpus(ranks=(3,), count=1)
    plan = plan_cases(["BD4_1", "FEJER_3TS", "AT_MAIN"], functions, [FEJER], [1, 2, 3, 5, 8], ["1", "2"])
    reports = run_sweep(plan)
    assert all(r.verdict == "holds" for r in reports)
    assert all(r.ratio is None or r.ratio <= 1 for r in reports)

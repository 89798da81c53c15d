from fractions import Fraction

import numpy as np
import pytest

from walshsum.backends import EXACT, FLOAT
from walshsum.dyadic import (
    INF,
    DyadicPoint,
    LpExponent,
    StepFunction,
    bit_reversal,
    dyadic_abs,
    dyadic_convolve,
    from_walsh_coefficients,
    integrate,
    interval_indicator,
    lp_norm,
    lp_power,
    modulus_of_continuity,
    modulus_power_profile,
    modulus_profile,
    order,
    rank_for,
    translate,
    unit_point,
    walsh_coefficients,
)
from walshsum.errors import ParameterError, RankError, ScalarModeError
from walshsum.kernels import dirichlet_kernel, walsh_function

F = Fraction


def test_order_and_rank_for():
    assert [order(n) for n in (1, 2, 3, 4, 7, 8)] == [0, 1, 1, 2, 2, 3]
    assert [rank_for(n) for n in (0, 1, 2, 3, 4, 5, 8)] == [0, 0, 1, 2, 2, 3, 3]
    with pytest.raises(RankError):
        order(0)


def test_dyadic_point_coordinates_and_addition():
    y = DyadicPoint.from_coordinates([1, 0, 1])
    assert y == DyadicPoint(3, 5)
    assert y.coordinates == (1, 0, 1)
    assert y.embed(4) == DyadicPoint(4, 10)
    assert y + DyadicPoint.from_coordinates([1, 1]) == DyadicPoint.from_coordinates([0, 1, 1])
    assert unit_point(0, 3) == DyadicPoint(3, 4)
    with pytest.raises(RankError):
        DyadicPoint(2, 4)
    with pytest.raises(RankError):
        y.embed(2)
    with pytest.raises(RankError):
        unit_point(3, 3)


def test_dyadic_abs():
    assert dyadic_abs(unit_point(0, 3)) == F(1, 2)
    assert dyadic_abs(unit_point(2, 3)) == F(1, 8)
    assert dyadic_abs(DyadicPoint(2, 3)) == F(3, 4)
    assert dyadic_abs(DyadicPoint(0, 0)) == 0


def test_lp_exponent_parsing():
    assert LpExponent.parse("3/2").degree == 1.5
    assert LpExponent.parse("4/2").degree == 2
    assert str(LpExponent.parse("4/2")) == "2"
    assert LpExponent.parse("inf") == INF
    assert INF.is_infinite
    assert str(INF) == "inf"
    assert LpExponent.parse(float("inf")) == INF
    with pytest.raises(ParameterError):
        LpExponent.parse("1/2")
    with pytest.raises(ParameterError):
        LpExponent.parse("two")


def test_step_function_shape_and_refine():
    f = StepFunction([1, 2])
    assert f.rank == 1
    assert f.refine(2).to_list() == [1, 1, 2, 2]
    assert f.refine(1) is f
    with pytest.raises(RankError):
        StepFunction([1, 2, 3])
    with pytest.raises(RankError):
        StepFunction([1, 2, 3, 4]).refine(1)


def test_step_function_arithmetic_refines_coarser_operand():
    f = StepFunction([1, 2])
    g = StepFunction([1, 0, 0, 1])
    assert (f + g).to_list() == [2, 1, 2, 3]
    assert (f - g).to_list() == [0, 1, 2, 1]
    assert (f * g).to_list() == [1, 0, 0, 2]
    assert (2 * f).to_list() == [2, 4]
    assert (f / 4).to_list() == [F(1, 4), F(1, 2)]
    assert abs(-f).to_list() == [1, 2]
    assert StepFunction([1, 1]).equals(StepFunction.constant(1, 3))


def test_mixed_modes_do_not_combine():
    with pytest.raises(ScalarModeError):
        _ = StepFunction([1, 2]) + StepFunction([1, 2], backend=FLOAT)


def test_max_deviation_reports_first_worst_cell():
    f = StepFunction([0, 3, 1, 3])
    value, cell = f.max_deviation(StepFunction.zero(2))
    assert value == 3
    assert cell == 1


def test_translate_is_xor_of_cells():
    f = StepFunction([1, 2, 3, 4])
    assert translate(f, DyadicPoint(2, 1)).to_list() == [2, 1, 4, 3]
    assert translate(f, DyadicPoint(1, 1)).to_list() == [3, 4, 1, 2]
    assert translate(f, DyadicPoint(3, 1)).to_list() == [1, 1, 2, 2, 3, 3, 4, 4]


def test_integrate_is_cell_mean():
    assert integrate(StepFunction([1, 2, 3, 4])) == F(5, 2)
    assert integrate(StepFunction([1, 2, 3, 4], backend=FLOAT)) == 2.5


def test_lp_norms():
    f = StepFunction([1, -2, 3, -4])
    assert lp_norm(f, LpExponent.parse("1")) == F(5, 2)
    assert lp_norm(f, INF) == 4
    assert lp_power(f, LpExponent.parse("2")) == F(30, 4)
    assert lp_norm(StepFunction([1, 1, -1, -1]), LpExponent.parse("2")) == 1
    assert lp_norm(StepFunction([2, 0]), LpExponent.parse("3")) == 2 * lp_norm(StepFunction([1, 0]), LpExponent.parse("3"))
    with pytest.raises(ScalarModeError):
        lp_norm(f, LpExponent.parse("3/2"))
    assert abs(lp_norm(f.astype(FLOAT), LpExponent.parse("3/2")) - ((1 + 2**1.5 + 3**1.5 + 8) / 4) ** (2 / 3)) < 1e-12


def test_bit_reversal():
    assert bit_reversal(3).tolist() == [0, 4, 2, 6, 1, 5, 3, 7]
    assert bit_reversal(0).tolist() == [0]


def test_walsh_coefficients_of_small_function():
    # cells in x_0-major order: w_1 = r_0 = (1, 1, -1, -1), w_2 = r_1 = (1, -1, 1, -1)
    coefficients = walsh_coefficients(StepFunction([1, 2, 3, 4]))
    assert list(coefficients) == [F(5, 2), F(-1), F(-1, 2), F(0)]
    assert from_walsh_coefficients(coefficients).to_list() == [1, 2, 3, 4]


def test_walsh_coefficients_match_defining_integrals():
    rng = np.random.default_rng(7)
    for rank in range(5):
        f = StepFunction([F(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, 1 << rank), rng.integers(1, 10, 1 << rank), strict=True)])
        coefficients = walsh_coefficients(f)
        for j in range(1 << rank):
            assert coefficients[j] == integrate(f * walsh_function(j, rank))


def test_from_walsh_coefficients_needs_power_of_two():
    with pytest.raises(RankError):
        from_walsh_coefficients([1, 2, 3])


def test_convolution_with_dirichlet_kernel_is_partial_sum():
    f = StepFunction([1, 2, 3, 4])
    assert dyadic_convolve(f, dirichlet_kernel(2, 2)).to_list() == [F(3, 2), F(3, 2), F(7, 2), F(7, 2)]
    assert dyadic_convolve(f, dirichlet_kernel(4, 2)).to_list() == [1, 2, 3, 4]


def test_modulus_of_first_walsh_function():
    w1 = walsh_function(1, 3)
    one = LpExponent.parse("1")
    assert modulus_profile(w1, one) == [2, 0, 0, 0]
    assert modulus_power_profile(w1, LpExponent.parse("2")) == [4, 0, 0, 0]
    assert modulus_profile(w1, INF) == [2, 0, 0, 0]
    assert modulus_of_continuity(w1, 0, one) == 2
    assert modulus_of_continuity(w1, 3, one) == 0
    with pytest.raises(RankError):
        modulus_of_continuity(w1, 4, one)


def test_modulus_of_finest_walsh_function():
    # w_4 at rank 3 is r_2: shifts with t_2 = 1 flip its sign
    r2 = walsh_function(4, 3)
    assert modulus_profile(r2, LpExponent.parse("1")) == [2, 2, 2, 0]


def test_modulus_is_non_increasing_in_j():
    f = StepFunction([F(k * k, 7) for k in range(16)])
    profile = modulus_power_profile(f, LpExponent.parse("2"))
    assert all(a >= b for a, b in zip(profile, profile[1:], strict=False))
    assert profile[-1] == 0


def test_interval_indicator():
    assert interval_indicator(1, DyadicPoint(0, 0), 1).to_list() == [1, 0]
    assert interval_indicator(2, DyadicPoint.from_coordinates([1, 0]), 3).to_list() == [0, 0, 0, 0, 1, 1, 0, 0]
    assert interval_indicator(0, DyadicPoint(0, 0), 2).to_list() == [1, 1, 1, 1]
    with pytest.raises(RankError):
        interval_indicator(3, DyadicPoint(0, 0), 2)


def test_float_mode_round_trip():
    f = StepFunction([1, 2, 3, 4], backend=FLOAT)
    assert f.mode == "float"
    assert np.allclose(from_walsh_coefficients(walsh_coefficients(f), backend=FLOAT).values, [1, 2, 3, 4])
    assert f.astype(EXACT).to_list() == [1, 2, 3, 4]

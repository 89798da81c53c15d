"""Algebraic properties of the dyadic toolkit, checked on generated step functions."""

import hypothesis.strategies as st
import numpy as np
from hypothesis import given, settings

from walshsum.dyadic import (
    INF,
    DyadicPoint,
    LpExponent,
    StepFunction,
    dyadic_convolve,
    integrate,
    lp_norm,
    modulus_power_profile,
    translate,
    walsh_coefficients,
)
from walshsum.kernels import fejer_kernel, matrix_kernel, walsh_function
from walshsum.means import matrix_mean, matrix_mean_by_convolution, partial_sum, random_row

MAX_RANK = 4
EXPONENTS = [LpExponent.parse("1"), LpExponent.parse("2"), LpExponent.parse("3"), INF]

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@st.composite
def step_functions(draw, rank=None):
    rank = draw(st.integers(0, MAX_RANK)) if rank is None else rank
    return StepFunction(draw(st.lists(rationals, min_size=1 << rank, max_size=1 << rank)))


@st.composite
def function_pairs(draw):
    rank = draw(st.integers(0, MAX_RANK))
    return draw(step_functions(rank)), draw(step_functions(rank))


@st.composite
def points(draw, rank):
    return DyadicPoint(rank, draw(st.integers(0, (1 << rank) - 1)))


@given(step_functions())
def test_parseval(f):
    coefficients = walsh_coefficients(f)
    assert integrate(f * f) == sum(coefficients * coefficients)


@given(function_pairs())
def test_convolution_multiplies_coefficients(pair):
    f, g = pair
    lhs = walsh_coefficients(dyadic_convolve(f, g))
    rhs = walsh_coefficients(f) * walsh_coefficients(g)
    assert list(lhs) == list(rhs)


@given(step_functions(), st.integers(1, 2))
def test_refinement_preserves_coefficients_and_norms(f, extra):
    fine = f.refine(f.rank + extra)
    coefficients = walsh_coefficients(fine)
    assert list(coefficients[: f.size]) == list(walsh_coefficients(f))
    assert all(c == 0 for c in coefficients[f.size :])
    assert integrate(fine) == integrate(f)
    for p in EXPONENTS[:1] + EXPONENTS[3:]:
        assert lp_norm(fine, p) == lp_norm(f, p)


@given(st.data())
def test_translation_is_an_isometry_and_an_involution(data):
    f = data.draw(step_functions())
    y = data.draw(points(f.rank))
    shifted = translate(f, y)
    assert translate(shifted, y).equals(f)
    assert integrate(shifted) == integrate(f)
    assert lp_norm(shifted, INF) == lp_norm(f, INF)
    assert lp_norm(shifted, EXPONENTS[0]) == lp_norm(f, EXPONENTS[0])


@given(step_functions(), st.sampled_from(EXPONENTS))
def test_modulus_is_monotone_and_vanishes_at_cell_scale(f, p):
    profile = modulus_power_profile(f, p)
    assert len(profile) == f.rank + 1
    assert all(a >= b for a, b in zip(profile, profile[1:], strict=False))
    assert profile[-1] == 0
    assert all(v >= 0 for v in profile)


@given(st.integers(0, MAX_RANK), st.data())
def test_dyadic_fejer_kernels_are_non_negative(rank, data):
    m = data.draw(st.integers(0, rank))
    kernel = fejer_kernel(1 << m, rank)
    assert all(v >= 0 for v in kernel.values)
    assert integrate(kernel) == 1


@given(st.integers(0, MAX_RANK), st.data())
def test_walsh_characters_multiply_by_xor(rank, data):
    j = data.draw(st.integers(0, (1 << rank) - 1))
    k = data.draw(st.integers(0, (1 << rank) - 1))
    assert (walsh_function(j, rank) * walsh_function(k, rank)).equals(walsh_function(j ^ k, rank))


@given(step_functions())
def test_full_partial_sum_reproduces_function(f):
    assert partial_sum(f, f.size).equals(f)


@given(function_pairs(), st.integers(0, 2**32 - 1))
@settings(max_examples=50)
def test_matrix_means_are_linear_and_agree_with_convolution(pair, seed):
    f, g = pair
    rng = np.random.default_rng(seed)
    row = random_row(int(rng.integers(1, f.size + 1)), rng, signed=True)
    assert matrix_mean(f + g, row).equals(matrix_mean(f, row) + matrix_mean(g, row))
    assert matrix_mean(f, row).equals(matrix_mean_by_convolution(f, row))
    assert integrate(matrix_kernel(row, f.rank)) == row.total


@given(step_functions(), rationals)
def test_norms_are_homogeneous(f, scale):
    assert lp_norm(f * scale, EXPONENTS[0]) == abs(scale) * lp_norm(f, EXPONENTS[0])
    assert lp_norm(f * scale, INF) == abs(scale) * lp_norm(f, INF)

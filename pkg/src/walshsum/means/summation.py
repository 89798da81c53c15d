"""Partial sums and matrix-transform means of Walsh-Fourier series.

Means are evaluated in coefficient space: sigma^T_n(f) has Walsh coefficients
m_j f^(j) with m_j = t_{j+1,n} + ... + t_{n,n}. The convolution path through
K^T_n is available as ``matrix_mean_by_convolution`` and the two must agree
exactly.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from walshsum.backends import EXACT, FLOAT, Scalar, ScalarBackend
from walshsum.backends.utils import format_rational, to_fraction
from walshsum.dyadic import StepFunction, dyadic_convolve, from_walsh_coefficients, walsh_coefficients
from walshsum.errors import RankError, SchemeError
from walshsum.kernels.construct import coefficient_multipliers, matrix_kernel
from walshsum.kernels.report import KernelIdentityReport, compare_equal
from walshsum.means.rows import TriangularRow, WeightScheme, build_row

logger = logging.getLogger(__name__)


def _check_n(n: int, f: StepFunction, what: str) -> None:
    if n > f.size:
        msg = f"{what} with n={n} needs rank >= {(n - 1).bit_length()}, function has rank {f.rank}"
        raise RankError(msg)


def _apply_multipliers(f: StepFunction, multipliers: Sequence[Any]) -> StepFunction:
    return mean_from_coefficients(walsh_coefficients(f), multipliers, f.backend)


def mean_from_coefficients(coefficients: np.ndarray, multipliers: Sequence[Any], backend: ScalarBackend) -> StepFunction:
    """Synthesize sum_j multipliers[j] c_j w_j; multipliers beyond their length are 0.

    Sweeps transform a function once and reuse its coefficients for every row.
    """
    mult = backend.asarray(list(multipliers) + [0] * (len(coefficients) - len(multipliers)))
    return from_walsh_coefficients(coefficients * mult, backend=backend)


def partial_sum(f: StepFunction, k: int) -> StepFunction:
    """S_k(f) = sum_{j<k} f^(j) w_j.

    Raises:
        RankError: If ``k > 2**rank``.
    """
    if k < 0:
        msg = f"S_k needs k >= 0, got {k}"
        raise RankError(msg)
    _check_n(k, f, "S_k")
    return _apply_multipliers(f, [1] * k)


def matrix_mean(f: StepFunction, row: TriangularRow) -> StepFunction:
    """sigma^T_n(f) = sum_k t_{k,n} S_k(f).

    Raises:
        RankError: If ``row.n > 2**rank``.
    """
    _check_n(row.n, f, "sigma^T_n")
    return _apply_multipliers(f, coefficient_multipliers(row))


def matrix_mean_by_convolution(f: StepFunction, row: TriangularRow) -> StepFunction:
    """sigma^T_n(f) as the dyadic convolution f * K^T_n."""
    _check_n(row.n, f, "sigma^T_n")
    return dyadic_convolve(f, matrix_kernel(row, f.rank, backend=f.backend))


def fejer_mean(f: StepFunction, n: int) -> StepFunction:
    """sigma_n(f), the arithmetic mean of S_1(f)..S_n(f)."""
    return matrix_mean(f, TriangularRow.uniform(n, backend=f.backend))


def norlund_mean(f: StepFunction, q: WeightScheme | Sequence[Any], n: int) -> StepFunction:
    """t_n(f) for a Nörlund scheme or an explicit sequence q_0, q_1, ..."""
    scheme = q if isinstance(q, WeightScheme) else WeightScheme.norlund(q)
    if not scheme.is_norlund:
        msg = f"{scheme.label} is not a Nörlund scheme"
        raise SchemeError(msg)
    return matrix_mean(f, build_row(scheme, n, backend=f.backend))


def weighted_mean(f: StepFunction, p: WeightScheme | Sequence[Any], n: int) -> StepFunction:
    """T_n(f) for a weighted scheme or an explicit sequence p_1, p_2, ..."""
    scheme = p if isinstance(p, WeightScheme) else WeightScheme.weighted(p)
    if scheme.kind != "weighted":
        msg = f"{scheme.label} is not a weighted scheme"
        raise SchemeError(msg)
    return matrix_mean(f, build_row(scheme, n, backend=f.backend))


def abel_weights(row: TriangularRow) -> list[Scalar]:
    """Abel weights: Delta t_{k,n} for k < n, then t_{n,n}.

    With these a_k, sum_k t_k S_k = sum_{k<n} a_k k sigma_k + a_n n sigma_n.
    """
    return [row.delta(k) for k in range(1, row.n)] + [row.t(row.n)]


def abel_decomposition_check(f: StepFunction, row: TriangularRow) -> KernelIdentityReport:
    """Both Abel summation identities behind the T-mean bound.

    Scalar part: sum_k t_{k,n} = sum_{k<n} Delta t_{k,n} k + t_{n,n} n.
    Function part: sigma^T_n(f) = sum_{k<n} Delta t_{k,n} k sigma_k(f) + t_{n,n} n sigma_n(f),
    compared cellwise. The right-hand side multiplies f^(j) by
    sum_k a_k (k - j)_+, the left-hand side by t_{j+1} + ... + t_n.
    """
    backend = f.backend
    _check_n(row.n, f, "sigma^T_n")
    a = abel_weights(row)
    row_sum = row.total
    abel_sum = sum((w * k for k, w in enumerate(a, start=1)), backend.scalar(0))
    scalar_ok = backend.equal(row_sum, abel_sum)
    multipliers = [sum((w * (k - j) for k, w in enumerate(a, start=1) if k > j), backend.scalar(0)) for j in range(row.n)]
    lhs = matrix_mean(f, row).values
    rhs = _apply_multipliers(f, multipliers).values
    report = compare_equal(
        "ABEL",
        {"n": row.n, "rank": f.rank, "row": row.label},
        lhs,
        rhs,
        backend,
        detail=f"row sum {backend.format(row_sum)}, Abel sum {backend.format(abel_sum)}",
    )
    if scalar_ok:
        return report
    return KernelIdentityReport(
        identity=report.identity,
        params=report.params,
        mode=report.mode,
        passed=False,
        max_deviation=abs(row_sum - abel_sum),
        witness=report.witness,
        detail=report.detail,
    )


@dataclass(frozen=True)
class RegularityEntry:
    """Nörlund diagnostics at one n.

    Attributes:
        n: Row index.
        q_ratio: q_{n-1} / Q_n (regularity needs this to tend to 0).
        ms_quantity: n^(gamma-1) / Q_n^gamma * sum_{k<n} q_k^gamma.
        big_q: Q_n = q_0 + ... + q_{n-1}.
    """

    n: int
    q_ratio: Scalar
    ms_quantity: Scalar
    big_q: Scalar


def regularity_diagnostics(scheme: WeightScheme, n_max: int, *, gamma: Any = 2) -> list[RegularityEntry]:
    """Tabulate the Nörlund regularity ratio and the growth quantity for n <= n_max.

    Values are exact for integer gamma and floats otherwise. Purely
    diagnostic: there is no pass/fail.

    Raises:
        SchemeError: If the scheme is not a Nörlund scheme.
    """
    if not scheme.is_norlund:
        msg = f"Regularity diagnostics need a Nörlund scheme, got {scheme.label}"
        raise SchemeError(msg)
    g = to_fraction(gamma)
    backend = EXACT if g.denominator == 1 else FLOAT
    power: Any = g.numerator if g.denominator == 1 else float(g)
    q = scheme.q_values(n_max)
    entries: list[RegularityEntry] = []
    big_q = Fraction(0)
    power_sum = backend.scalar(0)
    for n in range(1, n_max + 1):
        big_q += q[n - 1]
        power_sum += backend.scalar(q[n - 1]) ** power
        if big_q == 0:
            msg = f"Q_{n} = 0 for scheme {scheme.label}"
            raise SchemeError(msg)
        growth = backend.scalar(n) ** (power - 1) / backend.scalar(big_q) ** power * power_sum
        entries.append(RegularityEntry(n=n, q_ratio=backend.scalar(q[n - 1] / big_q), ms_quantity=growth, big_q=backend.scalar(big_q)))
    logger.debug("Regularity diagnostics for %s up to n=%d (gamma=%s)", scheme.label, n_max, format_rational(g))
    return entries

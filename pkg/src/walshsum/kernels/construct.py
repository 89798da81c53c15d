"""Walsh, Rademacher, Dirichlet, Fejér and matrix-transform kernels.

Every kernel here is an integer combination of Walsh functions divided by an
integer, so constructions run on integer numpy tables and convert to backend
scalars once at the end:

- ``walsh_table(rank)`` holds w_0..w_{2**rank - 1} as rows of +-1,
- ``dirichlet_table`` holds D_0..D_count (cumulative sums of Walsh rows),
- ``fejer_table`` holds k * K_k (cumulative sums of Dirichlet rows).

Kernel values are computed from their defining sums only; the piecewise forms
of the lemmas appear on the other side of the identity checks.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate
from typing import TYPE_CHECKING, Any

import numpy as np

from walshsum.backends import EXACT, ScalarBackend
from walshsum.backends.utils import to_fraction
from walshsum.dyadic import StepFunction
from walshsum.errors import RankError

if TYPE_CHECKING:
    from walshsum.means.rows import TriangularRow

logger = logging.getLogger(__name__)

INT64_SAFE = 1 << 62
WALSH_TABLE_MAX_RANK = 12


@lru_cache(maxsize=16)
def rademacher_signs(rank: int) -> np.ndarray:
    """int8 array of shape (rank, 2**rank); row j is r_j on the rank cells."""
    idx = np.arange(1 << rank)
    signs = np.array([1 - 2 * ((idx >> (rank - 1 - j)) & 1) for j in range(rank)], dtype=np.int8).reshape(rank, 1 << rank)
    signs.flags.writeable = False
    return signs


@lru_cache(maxsize=4)
def walsh_table(rank: int) -> np.ndarray:
    """int8 array of shape (2**rank, 2**rank); row k is w_k.

    Built by doubling: going up one rank repeats every cell (w_k for small k
    does not see the new coordinate) and appends r_rank * w_m as w_{2**rank + m}.
    """
    if rank > WALSH_TABLE_MAX_RANK:
        msg = f"Walsh tables are built up to rank {WALSH_TABLE_MAX_RANK}, got {rank}"
        raise RankError(msg)
    table = np.ones((1, 1), dtype=np.int8)
    for _ in range(rank):
        low = np.repeat(table, 2, axis=1)
        high = low * np.tile(np.array([1, -1], dtype=np.int8), low.shape[0])
        table = np.vstack((low, high))
    table.flags.writeable = False
    return table


def walsh_row(k: int, rank: int) -> np.ndarray:
    """w_k as an int64 array of length 2**rank (product of Rademacher rows)."""
    _check_index(k, 1 << rank, "w", rank, strict=True)
    signs = rademacher_signs(rank)
    row = np.ones(1 << rank, dtype=np.int64)
    for j in range(k.bit_length()):
        if (k >> j) & 1:
            row *= signs[j]
    return row


def _walsh_rows(count: int, rank: int) -> np.ndarray:
    if rank <= WALSH_TABLE_MAX_RANK:
        return walsh_table(rank)[:count]
    return np.array([walsh_row(k, rank) for k in range(count)], dtype=np.int64).reshape(count, 1 << rank)


@lru_cache(maxsize=8)
def dirichlet_table(count: int, rank: int) -> np.ndarray:
    """int64 array of shape (count + 1, 2**rank); row n is D_n, row 0 is D_0 = 0."""
    _check_index(count, 1 << rank, "D", rank)
    table = np.zeros((count + 1, 1 << rank), dtype=np.int64)
    np.cumsum(_walsh_rows(count, rank), axis=0, dtype=np.int64, out=table[1:])
    table.flags.writeable = False
    return table


@lru_cache(maxsize=8)
def fejer_table(count: int, rank: int) -> np.ndarray:
    """int64 array of shape (count + 1, 2**rank); row k is k * K_k = D_1 + ... + D_k."""
    table = np.cumsum(dirichlet_table(count, rank), axis=0, dtype=np.int64)
    table.flags.writeable = False
    return table


def _check_index(n: int, limit: int, name: str, rank: int, *, strict: bool = False) -> None:
    if n < 0 or n > limit or (strict and n == limit):
        bound = f"< {limit}" if strict else f"<= {limit}"
        msg = f"{name}_{n} is not constant on rank-{rank} cells (need index {bound})"
        raise RankError(msg)


def scaled(values: np.ndarray, denominator: int, backend: ScalarBackend) -> np.ndarray:
    """Integer array divided by a positive integer, in backend scalars."""
    if backend.name == "float":
        return np.asarray(values, dtype=np.float64) / denominator
    return np.array([Fraction(int(v), denominator) for v in values], dtype=object)


def combine(weights: Sequence[Any], rows: np.ndarray, backend: ScalarBackend = EXACT) -> np.ndarray:
    """sum_i weights[i] * rows[i] for an integer table ``rows``.

    In exact mode the weights are brought to a common denominator so the sum
    runs on integers (int64 when it provably fits, Python ints otherwise).

    Returns:
        Backend array of length ``rows.shape[1]``.
    """
    if len(weights) == 0:
        return backend.zeros(rows.shape[1])
    if backend.name == "float":
        return np.asarray([float(w) for w in weights], dtype=np.float64) @ rows.astype(np.float64)
    fracs = [to_fraction(w) for w in weights]
    den = math.lcm(*(w.denominator for w in fracs))
    ints = [w.numerator * (den // w.denominator) for w in fracs]
    bound = max(abs(i) for i in ints) * len(ints) * max(int(np.abs(rows).max()), 1)
    if bound < INT64_SAFE:
        total = np.asarray(ints, dtype=np.int64) @ rows.astype(np.int64)
    else:
        total = np.asarray(ints, dtype=object) @ rows.astype(object)
    return scaled(total, den, backend)


def walsh_function(k: int, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """w_k at ``rank``: cell x holds (-1)**popcount(bitrev(k) & x).

    Raises:
        RankError: If ``k >= 2**rank``.
    """
    return StepFunction(walsh_row(k, rank), backend=backend)


def rademacher_function(k: int, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """r_k = (-1)**x_k, which is w_{2**k}."""
    if not 0 <= k < rank:
        msg = f"r_{k} needs rank > {k}, got rank {rank}"
        raise RankError(msg)
    return StepFunction(rademacher_signs(rank)[k], backend=backend)


def dirichlet_kernel(n: int, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """D_n = w_0 + ... + w_{n-1}, with D_0 = 0."""
    _check_index(n, 1 << rank, "D", rank)
    return StepFunction(_walsh_rows(n, rank).sum(axis=0, dtype=np.int64), backend=backend)


def fejer_kernel(n: int, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """K_n = (D_1 + ... + D_n) / n, computed as sum_j (n - j) w_j / n."""
    if n < 1:
        msg = f"K_n is defined for n >= 1, got {n}"
        raise RankError(msg)
    _check_index(n, 1 << rank, "K", rank)
    multiples = np.arange(n, 0, -1, dtype=np.int64) @ _walsh_rows(n, rank).astype(np.int64)
    return StepFunction._wrap(scaled(multiples, n, backend), backend)


def coefficient_multipliers(row: TriangularRow) -> list[Any]:
    """m_j = t_{j+1} + ... + t_n for j < n: the Walsh coefficients of K^T_n."""
    return list(accumulate(reversed(row.weights)))[::-1]


def matrix_kernel(row: TriangularRow, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """K^T_n = sum_k t_{k,n} D_k, evaluated as sum_j m_j w_j."""
    _check_index(row.n, 1 << rank, "K^T", rank)
    values = combine(coefficient_multipliers(row), _walsh_rows(row.n, rank), backend)
    return StepFunction._wrap(values, backend)

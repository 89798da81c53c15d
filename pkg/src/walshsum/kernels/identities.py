"""Exhaustive checks of the Walsh kernel lemmas.

Each check evaluates both sides of one identity or inequality on every cell
of the rank it runs at and returns a KernelIdentityReport. Left-hand sides come
from the defining sums in ``construct`` (sums of Walsh functions), right-hand
sides from the integer Dirichlet/Fejér tables or from piecewise closed forms,
so the two sides never share a code path.

Default rank is |N| + 1 for the largest kernel index N involved: the smallest
rank on which every term is a step function.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, replace
from enum import StrEnum
from fractions import Fraction
from typing import Any

import numpy as np

from walshsum.backends import EXACT, Scalar, ScalarBackend
from walshsum.dyadic import DyadicPoint, interval_indicator, order, rank_for
from walshsum.errors import ParameterError, RankError
from walshsum.kernels.construct import (
    combine,
    dirichlet_kernel,
    dirichlet_table,
    fejer_kernel,
    fejer_table,
    matrix_kernel,
    rademacher_signs,
    scaled,
    walsh_row,
    walsh_table,
)
from walshsum.kernels.report import KernelIdentityReport, compare_equal, compare_less_equal
from walshsum.means.rows import TriangularRow, random_row

logger = logging.getLogger(__name__)

YANO_BOUND = Fraction(2)
TOLEDO_BOUND = Fraction(17, 15)


class KernelIdentityId(StrEnum):
    """The kernel lemmas the suite checks."""

    PALEY = "PALEY"
    DIRICHLET_COMPLEMENT = "DIRICHLET_COMPLEMENT"
    GAT_K2N = "GAT_K2N"
    FINE = "FINE"
    FEJER_SHIFT = "FEJER_SHIFT"
    YANO = "YANO"
    TOLEDO = "TOLEDO"
    NKN_BOUND = "NKN_BOUND"
    BLAHOTA = "BLAHOTA"
    BLAHOTA_DYADIC = "BLAHOTA_DYADIC"


def default_rank(max_index: int) -> int:
    """|N| + 1 for the largest kernel index N (rank 1 for N = 0)."""
    return order(max_index) + 1 if max_index >= 1 else 1


def _rank(params: Mapping[str, Any], required: int) -> int:
    rank = params.get("rank")
    if rank is None:
        return required
    if rank < required:
        msg = f"rank {rank} is too small for {dict(params)}; need at least {required}"
        raise RankError(msg)
    return int(rank)


def _ints(values: np.ndarray, backend: ScalarBackend) -> np.ndarray:
    # Python ints in exact mode: Fraction * numpy int64 is not exact-safe
    if backend.name == "float":
        return np.asarray(values, dtype=np.float64)
    return np.asarray(values, dtype=np.int64).astype(object)


def _require(condition: bool, message: str) -> None:  # noqa: FBT001
    if not condition:
        raise ParameterError(message)


def _check_paley(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    """D_{2^n} = 2^n on I_n and 0 elsewhere."""
    n = int(params["n"])
    _require(n >= 0, f"PALEY needs n >= 0, got {n}")
    rank = _rank(params, default_rank(1 << n))
    lhs = dirichlet_kernel(1 << n, rank, backend=backend).values
    rhs = (interval_indicator(n, DyadicPoint(0, 0), rank, backend=backend) * (1 << n)).values
    return compare_equal(KernelIdentityId.PALEY, {"n": n, "rank": rank}, lhs, rhs, backend, fault=fault)


def _check_dirichlet_complement(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    """D_{2^n - k} = D_{2^n} - w_{2^n - 1} D_k for 0 <= k < 2^n."""
    n, k = int(params["n"]), int(params["k"])
    _require(n >= 0, f"DIRICHLET_COMPLEMENT needs n >= 0, got {n}")
    _require(0 <= k < 1 << n, f"DIRICHLET_COMPLEMENT needs 0 <= k < 2^{n}, got k={k}")
    size = 1 << n
    rank = _rank(params, default_rank(size))
    lhs = dirichlet_kernel(size - k, rank, backend=backend).values
    table = dirichlet_table(size, rank)
    rhs = table[size] - walsh_row(size - 1, rank) * table[k]
    return compare_equal(KernelIdentityId.DIRICHLET_COMPLEMENT, {"n": n, "k": k, "rank": rank}, lhs, _ints(rhs, backend), backend, fault=fault)


def gat_piecewise(n: int, rank: int) -> np.ndarray:
    """2 * K_{2^n} by the piecewise form, as integers.

    (2^n + 1)/2 on I_n; 2^(t-1) where x_t is the only nonzero coordinate among
    the first n (that is, x in I_t minus I_{t+1} and x + e_t in I_n); 0 elsewhere.
    The I_n branch takes precedence where the conditions overlap.
    """
    top = np.arange(1 << rank) >> (rank - n)
    out = np.zeros(1 << rank, dtype=np.int64)
    for t in range(n):
        out[top == 1 << (n - 1 - t)] = 1 << t
    out[top == 0] = (1 << n) + 1
    return out


def _check_gat(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    n = int(params["n"])
    _require(n >= 0, f"GAT_K2N needs n >= 0, got {n}")
    rank = _rank(params, default_rank(1 << n))
    lhs = fejer_kernel(1 << n, rank, backend=backend).values
    rhs = scaled(gat_piecewise(n, rank), 2, backend)
    return compare_equal(KernelIdentityId.GAT_K2N, {"n": n, "rank": rank}, lhs, rhs, backend, fault=fault)


def fine_decompositions(n: int) -> list[tuple[int, int]]:
    """All (k, m) with n = 2^k + m and 0 <= m <= 2^k."""
    if n < 1:
        return []
    k = order(n)
    pairs = [(k, n - (1 << k))]
    if n >= 2 and n == 1 << k:  # noqa: PLR2004
        pairs.append((k - 1, 1 << (k - 1)))
    return pairs


def _check_fine(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    """n K_n = 2^k K_{2^k} + m D_{2^k} + r_k m K_m for n = 2^k + m, m <= 2^k."""
    n = int(params["n"])
    k = int(params.get("k", order(n) if n >= 1 else 0))
    _require(n >= 1 and k >= 0, f"FINE needs n >= 1 and k >= 0, got n={n}, k={k}")
    m = n - (1 << k)
    _require(0 <= m <= 1 << k, f"FINE needs n = 2^k + m with 0 <= m <= 2^k, got n={n}, k={k}")
    rank = _rank(params, max(default_rank(n), k + 1))
    lhs = fejer_kernel(n, rank, backend=backend).values * n
    fejer = fejer_table(n, rank)
    rhs = fejer[1 << k] + m * dirichlet_table(n, rank)[1 << k] + rademacher_signs(rank)[k] * fejer[m]
    return compare_equal(KernelIdentityId.FINE, {"n": n, "k": k, "m": m, "rank": rank}, lhs, _ints(rhs, backend), backend, fault=fault)


def _check_fejer_shift(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    """(2^n - 1) K_{2^n - 1} = 2^n K_{2^n} - D_{2^n}; the n = 0 case reads 0 = 0."""
    n = int(params["n"])
    _require(n >= 0, f"FEJER_SHIFT needs n >= 0, got {n}")
    size = 1 << n
    rank = _rank(params, default_rank(size))
    lhs = fejer_kernel(size - 1, rank, backend=backend).values * (size - 1) if size > 1 else backend.zeros(1 << rank)
    rhs = fejer_table(size, rank)[size] - dirichlet_table(size, rank)[size]
    return compare_equal(KernelIdentityId.FEJER_SHIFT, {"n": n, "rank": rank}, lhs, _ints(rhs, backend), backend, fault=fault)


def _check_norm_bound(identity: KernelIdentityId, bound: Fraction) -> Callable[..., KernelIdentityReport]:
    def check(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
        n = int(params["n"])
        _require(n >= 1, f"{identity} needs n >= 1, got {n}")
        rank = _rank(params, rank_for(n))
        multiples = fejer_table(n, rank)[n]
        norm = backend.scalar(Fraction(int(np.abs(multiples).sum()), n << rank))
        lhs = backend.asarray([norm])
        report = compare_less_equal(identity, {"n": n, "rank": rank}, lhs, backend.asarray([bound]), backend, fault=fault)
        return report if report.passed else replace(report, witness=n)

    check.__doc__ = f"||K_n||_1 <= {bound}."
    return check


def _check_nkn(params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool) -> KernelIdentityReport:
    """n |K_n| <= 3 sum_{l <= |n|} 2^l K_{2^l} cellwise."""
    n = int(params["n"])
    _require(n >= 1, f"NKN_BOUND needs n >= 1, got {n}")
    rank = _rank(params, default_rank(n))
    lhs = np.abs(fejer_kernel(n, rank, backend=backend).values * n)
    fejer = fejer_table(n, rank)
    rhs = 3 * sum(fejer[1 << j] for j in range(order(n) + 1))
    return compare_less_equal(KernelIdentityId.NKN_BOUND, {"n": n, "rank": rank}, lhs, _ints(rhs, backend), backend, fault=fault)


def blahota_decomposition(row: TriangularRow, rank: int, backend: ScalarBackend = EXACT, *, with_tail: bool = True) -> np.ndarray:
    """Right-hand side of the kernel decomposition of K^T_n, with M = 2^|n|.

    D_M sum(t) - w_{M-1} t_1 (M-1) K_{M-1}
    + w_{M-1} sum_{k=1}^{M-2} Delta t_{M-k-1} k K_k
    + r_|n| sum_{k=1}^{n-M} t_{M+k} D_k

    Empty sums are zero; ``with_tail=False`` drops the last sum (zero for n = M).
    """
    n = row.n
    big = 1 << order(n)
    dirichlet = dirichlet_table(n, rank)
    fejer = fejer_table(n, rank)
    head = combine([row.total], dirichlet[big : big + 1], backend)
    inner_weights = [-row.t(1)] + [row.delta(big - k - 1) for k in range(1, big - 1)]
    inner = combine(inner_weights, fejer[[big - 1, *range(1, big - 1)]], backend)
    out = head + _ints(walsh_row(big - 1, rank), backend) * inner
    if with_tail and n > big:
        tail = combine([row.t(big + k) for k in range(1, n - big + 1)], dirichlet[1 : n - big + 1], backend)
        out = out + _ints(rademacher_signs(rank)[order(n)], backend) * tail
    return out


def _blahota_row(params: Mapping[str, Any], n: int, row: TriangularRow | None) -> TriangularRow:
    if row is not None:
        _require(row.n == n, f"row has length {row.n}, expected {n}")
        return row
    rng = np.random.default_rng([int(params.get("seed", 0)), n, int(params.get("sample", 0))])
    return random_row(n, rng, signed=True)


def _check_blahota(
    params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool, row: TriangularRow | None = None
) -> KernelIdentityReport:
    n = int(params["n"])
    _require(n >= 1, f"BLAHOTA needs n >= 1, got {n}")
    rank = _rank(params, default_rank(n))
    trow = _blahota_row(params, n, row)
    lhs = matrix_kernel(trow, rank, backend=backend).values
    rhs = blahota_decomposition(trow, rank, backend)
    keys = {"n": n, "rank": rank, "seed": params.get("seed", 0), "sample": params.get("sample", 0)}
    return compare_equal(KernelIdentityId.BLAHOTA, keys, lhs, rhs, backend, fault=fault)


def _check_blahota_dyadic(
    params: Mapping[str, Any], backend: ScalarBackend, *, fault: bool, row: TriangularRow | None = None
) -> KernelIdentityReport:
    """The three-term form for n = 2^m."""
    m = int(params["n"])
    _require(m >= 0, f"BLAHOTA_DYADIC needs n >= 0, got {m}")
    size = 1 << m
    rank = _rank(params, default_rank(size))
    trow = _blahota_row(params, size, row)
    lhs = matrix_kernel(trow, rank, backend=backend).values
    rhs = blahota_decomposition(trow, rank, backend, with_tail=False)
    keys = {"n": m, "rank": rank, "seed": params.get("seed", 0), "sample": params.get("sample", 0)}
    return compare_equal(KernelIdentityId.BLAHOTA_DYADIC, keys, lhs, rhs, backend, fault=fault)


_CHECKS: dict[KernelIdentityId, Callable[..., KernelIdentityReport]] = {
    KernelIdentityId.PALEY: _check_paley,
    KernelIdentityId.DIRICHLET_COMPLEMENT: _check_dirichlet_complement,
    KernelIdentityId.GAT_K2N: _check_gat,
    KernelIdentityId.FINE: _check_fine,
    KernelIdentityId.FEJER_SHIFT: _check_fejer_shift,
    KernelIdentityId.YANO: _check_norm_bound(KernelIdentityId.YANO, YANO_BOUND),
    KernelIdentityId.TOLEDO: _check_norm_bound(KernelIdentityId.TOLEDO, TOLEDO_BOUND),
    KernelIdentityId.NKN_BOUND: _check_nkn,
    KernelIdentityId.BLAHOTA: _check_blahota,
    KernelIdentityId.BLAHOTA_DYADIC: _check_blahota_dyadic,
}


def verify_kernel_identity(
    identity: KernelIdentityId | str,
    params: Mapping[str, Any],
    *,
    backend: ScalarBackend = EXACT,
    fault: bool = False,
    row: TriangularRow | None = None,
) -> KernelIdentityReport:
    """Check one kernel lemma for one parameter set.

    Args:
        identity: Which lemma to check.
        params: ``n`` (the exponent for PALEY, DIRICHLET_COMPLEMENT, GAT_K2N,
            FEJER_SHIFT and BLAHOTA_DYADIC, the kernel index otherwise), plus
            ``k`` for DIRICHLET_COMPLEMENT and FINE, optional ``rank``, and
            ``seed``/``sample`` selecting the random row of the Blahota checks.
        backend: Scalar mode; exact mode demands exact equality.
        fault: Perturb one left-hand-side cell before comparing (test-only).
        row: Explicit row for BLAHOTA and BLAHOTA_DYADIC instead of a random one.

    Returns:
        The report, with a witness cell when the check fails.

    Raises:
        ParameterError: If params do not have the shape the lemma quantifies over.
        RankError: If an explicit rank cannot represent every term.

    Examples:
        >>> verify_kernel_identity("FINE", {"n": 3, "rank": 2}).verdict
        'exact-pass'
    """
    key = KernelIdentityId(identity)
    check = _CHECKS[key]
    if key in {KernelIdentityId.BLAHOTA, KernelIdentityId.BLAHOTA_DYADIC}:
        return check(params, backend, fault=fault, row=row)
    return check(params, backend, fault=fault)


@dataclass(frozen=True)
class KernelNormScan:
    """||K_n||_1 for n = 1..n_max, with the maximum and where it occurs."""

    entries: tuple[tuple[int, Scalar], ...]
    rank: int

    @property
    def maximum(self) -> Scalar | None:
        """Largest norm in the scan, or None for an empty scan."""
        return max((v for _, v in self.entries), default=None)

    @property
    def argmax(self) -> int | None:
        """Smallest n attaining the maximum."""
        best = self.maximum
        return next((n for n, v in self.entries if v == best), None)


def kernel_l1_scan(n_max: int, *, backend: ScalarBackend = EXACT) -> KernelNormScan:
    """||K_n||_1 for every 1 <= n <= n_max on integer arithmetic.

    n K_n is integer-valued; the scan keeps D_n and n K_n as int64 rows at rank
    rank_for(n_max) and divides once per entry.
    """
    rank = rank_for(max(n_max, 1))
    size = 1 << rank
    table = walsh_table(rank) if rank <= 12 else None  # noqa: PLR2004
    dirichlet = np.zeros(size, dtype=np.int64)
    multiples = np.zeros(size, dtype=np.int64)
    entries: list[tuple[int, Scalar]] = []
    for k in range(n_max):
        dirichlet += table[k] if table is not None else walsh_row(k, rank)
        multiples += dirichlet
        n = k + 1
        entries.append((n, backend.scalar(Fraction(int(np.abs(multiples).sum()), n * size))))
    logger.debug("Scanned ||K_n||_1 for n <= %d at rank %d", n_max, rank)
    return KernelNormScan(entries=tuple(entries), rank=rank)


@dataclass(frozen=True)
class LemmaGrid:
    """Parameter grid for the whole suite.

    Attributes:
        n_min: Smallest kernel index (exponent-type lemmas use 2^n >= n_min).
        n_max: Largest kernel index (exponent-type lemmas use 2^n <= n_max).
        rank: Rank override; a case needing more keeps its own default.
        blahota_rows: Random sign-unrestricted rows per n for the Blahota checks.
        blahota_stride: Above n = 16, only every stride-th n gets Blahota rows.
        seed: Seed for the Blahota rows.
        identities: Which lemmas to run.
    """

    n_min: int = 1
    n_max: int = 256
    rank: int | None = None
    blahota_rows: int = 50
    blahota_stride: int = 8
    seed: int = 0
    identities: tuple[KernelIdentityId, ...] = tuple(KernelIdentityId)

    def exponents(self) -> list[int]:
        """Exponents n with n_min <= 2^n <= n_max."""
        return [m for m in range(max(self.n_max, 1).bit_length()) if self.n_min <= 1 << m <= self.n_max]

    def indices(self) -> range:
        """Kernel indices n_min..n_max."""
        return range(max(self.n_min, 1), self.n_max + 1)

    def blahota_indices(self) -> list[int]:
        """Thinned kernel indices for the Blahota decomposition."""
        return [n for n in self.indices() if n <= 16 or n % self.blahota_stride == 0 or n == self.n_max]  # noqa: PLR2004


def iter_cases(grid: LemmaGrid) -> Iterator[tuple[KernelIdentityId, dict[str, Any]]]:
    """Parameter sets of the grid, identity by identity, in a fixed order.

    YANO and TOLEDO are not listed; ``iter_reports`` serves them from one scan.
    """
    for identity in grid.identities:
        if identity in {KernelIdentityId.PALEY, KernelIdentityId.GAT_K2N, KernelIdentityId.FEJER_SHIFT}:
            cases: list[dict[str, Any]] = [{"n": m} for m in grid.exponents()]
        elif identity is KernelIdentityId.DIRICHLET_COMPLEMENT:
            cases = [{"n": m, "k": k} for m in grid.exponents() for k in range(1 << m)]
        elif identity is KernelIdentityId.FINE:
            cases = [{"n": n, "k": k} for n in grid.indices() for k, _ in fine_decompositions(n)]
        elif identity is KernelIdentityId.NKN_BOUND:
            cases = [{"n": n} for n in grid.indices()]
        elif identity is KernelIdentityId.BLAHOTA:
            cases = [{"n": n, "seed": grid.seed, "sample": s} for n in grid.blahota_indices() for s in range(grid.blahota_rows)]
        elif identity is KernelIdentityId.BLAHOTA_DYADIC:
            cases = [{"n": m, "seed": grid.seed, "sample": s} for m in grid.exponents() for s in range(grid.blahota_rows)]
        else:
            continue
        for case in cases:
            yield identity, case


def _with_rank(identity: KernelIdentityId, case: dict[str, Any], rank: int | None) -> dict[str, Any]:
    if rank is None:
        return case
    n = case["n"]
    exponent_type = identity in {
        KernelIdentityId.PALEY,
        KernelIdentityId.DIRICHLET_COMPLEMENT,
        KernelIdentityId.GAT_K2N,
        KernelIdentityId.FEJER_SHIFT,
        KernelIdentityId.BLAHOTA_DYADIC,
    }
    required = default_rank(1 << n if exponent_type else n)
    return {**case, "rank": max(rank, required)}


def iter_reports(grid: LemmaGrid, *, backend: ScalarBackend = EXACT, fault: bool = False) -> Iterator[KernelIdentityReport]:
    """Run the grid, yielding reports in grid order.

    With ``fault`` the first case checked gets one perturbed cell.
    """
    pending_fault = fault
    scan: KernelNormScan | None = None
    for identity in grid.identities:
        if identity in {KernelIdentityId.YANO, KernelIdentityId.TOLEDO}:
            bound = YANO_BOUND if identity is KernelIdentityId.YANO else TOLEDO_BOUND
            scan = scan or kernel_l1_scan(grid.n_max, backend=backend)
            for n, value in scan.entries:
                if n < grid.n_min:
                    continue
                lhs = backend.asarray([value])
                report = compare_less_equal(identity, {"n": n, "rank": scan.rank}, lhs, backend.asarray([bound]), backend, fault=pending_fault)
                pending_fault = False
                yield report if report.passed else replace(report, witness=n)
            continue
        for _, case in iter_cases(replace(grid, identities=(identity,))):
            yield verify_kernel_identity(identity, _with_rank(identity, case, grid.rank), backend=backend, fault=pending_fault)
            pending_fault = False
        logger.debug("Finished %s", identity)


def verify_all(grid: LemmaGrid | None = None, *, backend: ScalarBackend = EXACT, fault: bool = False) -> list[KernelIdentityReport]:
    """Every report of the grid (default grid: n <= 2^8)."""
    return list(iter_reports(grid or LemmaGrid(), backend=backend, fault=fault))

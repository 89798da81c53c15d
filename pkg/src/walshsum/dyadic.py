"""Step functions on the dyadic group.

A rank-N step function is constant on the 2**N cells I_N(x). Cell ``i`` holds the
points whose first N coordinates, read with x_0 as the most significant bit,
spell ``i``. With that encoding:

- group addition of points is XOR of cell indices,
- the Walsh-Paley coefficients come out of one Walsh-Hadamard butterfly
  followed by a bit-reversal permutation,
- refining to a higher rank repeats every value in place.

Everything below is a pure function of its inputs; StepFunction values are
read-only arrays owned by a scalar backend.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from walshsum.backends import EXACT, Scalar, ScalarBackend
from walshsum.backends.utils import format_rational, parse_scalar
from walshsum.errors import ParameterError, RankError, ScalarModeError

logger = logging.getLogger(__name__)


def order(n: int) -> int:
    """Return |n|, the position of the highest set bit, so 2**|n| <= n < 2**(|n|+1)."""
    if n < 1:
        msg = f"order is defined for positive integers, got {n}"
        raise RankError(msg)
    return n.bit_length() - 1


def rank_for(n: int) -> int:
    """Smallest rank N with n <= 2**N."""
    return max(0, (n - 1).bit_length())


@dataclass(frozen=True)
class DyadicPoint:
    """A point of G known through its first ``rank`` coordinates.

    Attributes:
        rank: Number of stored coordinates.
        index: Coordinates x_0..x_{rank-1} as a binary integer, x_0 most significant.
    """

    rank: int
    index: int

    def __post_init__(self) -> None:
        if self.rank < 0 or not 0 <= self.index < 1 << self.rank:
            msg = f"Point index {self.index} is not a rank-{self.rank} cell"
            raise RankError(msg)

    @classmethod
    def from_coordinates(cls, coordinates: Sequence[int]) -> DyadicPoint:
        """Build a point from its 0/1 coordinates x_0, x_1, ..."""
        index = 0
        for c in coordinates:
            if c not in (0, 1):
                msg = f"Coordinates must be 0 or 1, got {c}"
                raise RankError(msg)
            index = (index << 1) | c
        return cls(len(coordinates), index)

    @property
    def coordinates(self) -> tuple[int, ...]:
        """Stored coordinates x_0..x_{rank-1}."""
        return tuple((self.index >> (self.rank - 1 - i)) & 1 for i in range(self.rank))

    def embed(self, rank: int) -> DyadicPoint:
        """Zero-pad the low coordinates up to ``rank``."""
        if rank < self.rank:
            msg = f"Cannot embed a rank-{self.rank} point at rank {rank}"
            raise RankError(msg)
        return DyadicPoint(rank, self.index << (rank - self.rank))

    def __add__(self, other: DyadicPoint) -> DyadicPoint:
        rank = max(self.rank, other.rank)
        return DyadicPoint(rank, self.embed(rank).index ^ other.embed(rank).index)


def unit_point(t: int, rank: int) -> DyadicPoint:
    """e_t: coordinate ``t`` equal to 1, all others 0."""
    if not 0 <= t < rank:
        msg = f"e_{t} needs rank > {t}, got rank {rank}"
        raise RankError(msg)
    return DyadicPoint(rank, 1 << (rank - 1 - t))


def dyadic_abs(t: DyadicPoint) -> Fraction:
    """|t| = sum of t_i / 2**(i+1) over the stored coordinates."""
    return Fraction(t.index, 1 << t.rank)


@dataclass(frozen=True)
class LpExponent:
    """Exponent p of an L_p norm; ``p=None`` stands for infinity (max over cells)."""

    p: Fraction | None = Fraction(1)

    def __post_init__(self) -> None:
        if self.p is not None and self.p < 1:
            msg = f"L_p exponents must satisfy p >= 1, got {self.p}"
            raise ParameterError(msg)

    @classmethod
    def parse(cls, value: LpExponent | str | float | Fraction) -> LpExponent:
        """Parse ``"inf"``, ``"2"``, ``"3/2"`` or a number."""
        if isinstance(value, LpExponent):
            return value
        if isinstance(value, str):
            text = value.strip().lower()
            if text in {"inf", "infinity", "oo", "∞"}:
                return cls(None)
            try:
                parsed = parse_scalar(text)
            except (ValueError, ZeroDivisionError) as exc:
                msg = f"Cannot parse exponent {value!r}"
                raise ParameterError(msg) from exc
            return cls(parsed)
        if isinstance(value, float) and value == float("inf"):
            return cls(None)
        return cls(Fraction(value))

    @property
    def is_infinite(self) -> bool:
        """True for the supremum norm."""
        return self.p is None

    @property
    def degree(self) -> int | float:
        """Root degree used for the norm: p itself, or 1 for the supremum norm."""
        if self.p is None:
            return 1
        if self.p.denominator == 1:
            return self.p.numerator
        return float(self.p)

    def __str__(self) -> str:
        return "inf" if self.p is None else format_rational(self.p)


INF = LpExponent(None)


class StepFunction:
    """A function on G constant on the rank-N cells.

    Values are stored as a read-only one-dimensional array of length 2**N in the
    representation of ``backend``. Arithmetic between step functions of
    different ranks refines the coarser one first.
    """

    __slots__ = ("_values", "backend")

    def __init__(self, values: Iterable[Any], *, backend: ScalarBackend = EXACT) -> None:
        """Create a step function from its 2**N cell values."""
        arr = backend.asarray(values)
        size = arr.shape[0]
        if size == 0 or size & (size - 1):
            msg = f"A step function needs 2**N values, got {size}"
            raise RankError(msg)
        arr.flags.writeable = False
        self._values = arr
        self.backend = backend

    @classmethod
    def _wrap(cls, arr: np.ndarray, backend: ScalarBackend) -> StepFunction:
        obj = cls.__new__(cls)
        arr.flags.writeable = False
        obj._values = arr
        obj.backend = backend
        return obj

    @classmethod
    def constant(cls, value: Any, rank: int = 0, *, backend: ScalarBackend = EXACT) -> StepFunction:
        """The constant function ``value`` at ``rank``."""
        return cls([backend.scalar(value)] * (1 << rank), backend=backend)

    @classmethod
    def zero(cls, rank: int = 0, *, backend: ScalarBackend = EXACT) -> StepFunction:
        """The zero function (also D_0)."""
        return cls.constant(0, rank, backend=backend)

    @property
    def values(self) -> np.ndarray:
        """Read-only cell values."""
        return self._values

    @property
    def size(self) -> int:
        """Number of cells, 2**rank."""
        return int(self._values.shape[0])

    @property
    def rank(self) -> int:
        """N such that the function is constant on rank-N cells."""
        return self.size.bit_length() - 1

    @property
    def mode(self) -> str:
        """Scalar mode of the backend."""
        return self.backend.name

    def to_list(self) -> list[Scalar]:
        """Cell values as a list."""
        return list(self._values)

    def astype(self, backend: ScalarBackend) -> StepFunction:
        """The same function in another scalar mode."""
        if backend is self.backend:
            return self
        return StepFunction(self._values, backend=backend)

    def refine(self, rank: int) -> StepFunction:
        """Duplicate every value so the function is expressed at a larger rank."""
        if rank < self.rank:
            msg = f"Cannot refine a rank-{self.rank} function down to rank {rank}"
            raise RankError(msg)
        if rank == self.rank:
            return self
        return StepFunction._wrap(np.repeat(self._values, 1 << (rank - self.rank)), self.backend)

    def _align(self, other: StepFunction) -> tuple[np.ndarray, np.ndarray]:
        if other.backend.name != self.backend.name:
            msg = f"Cannot combine {self.backend.name} and {other.backend.name} step functions"
            raise ScalarModeError(msg)
        rank = max(self.rank, other.rank)
        return self.refine(rank)._values, other.refine(rank)._values

    def _new(self, arr: np.ndarray) -> StepFunction:
        return StepFunction._wrap(arr, self.backend)

    def __add__(self, other: StepFunction) -> StepFunction:
        a, b = self._align(other)
        return self._new(a + b)

    def __sub__(self, other: StepFunction) -> StepFunction:
        a, b = self._align(other)
        return self._new(a - b)

    def __neg__(self) -> StepFunction:
        return self._new(-self._values)

    def __abs__(self) -> StepFunction:
        return self._new(np.abs(self._values))

    def __mul__(self, other: StepFunction | Any) -> StepFunction:
        if isinstance(other, StepFunction):
            a, b = self._align(other)
            return self._new(a * b)
        return self._new(self._values * self.backend.scalar(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> StepFunction:
        return self._new(self._values / self.backend.scalar(other))

    def equals(self, other: StepFunction) -> bool:
        """Cellwise equality under the backend's comparison rule."""
        a, b = self._align(other)
        return all(self.backend.equal(x, y) for x, y in zip(a, b, strict=True))

    def max_deviation(self, other: StepFunction) -> tuple[Scalar, int]:
        """Largest cellwise |self - other| and the first cell where it occurs."""
        a, b = self._align(other)
        diff = np.abs(a - b)
        cell = int(np.argmax(diff)) if diff.dtype != object else max(range(len(diff)), key=lambda i: diff[i])
        return self.backend.scalar(diff[cell]), cell

    def __repr__(self) -> str:
        shown = ", ".join(self.backend.format(v) for v in self._values[:8])
        more = ", ..." if self.size > 8 else ""  # noqa: PLR2004
        return f"StepFunction(rank={self.rank}, mode={self.mode}, values=[{shown}{more}])"


def translate(f: StepFunction, t: DyadicPoint) -> StepFunction:
    """g(x) = f(x + t).

    A point of higher rank than ``f`` refines ``f``; a point of lower rank is
    embedded by zero-padding its low coordinates.
    """
    rank = max(f.rank, t.rank)
    g = f.refine(rank)
    shift = t.embed(rank).index
    return g._new(g.values[np.arange(g.size) ^ shift])


def integrate(f: StepFunction) -> Scalar:
    """Haar integral: the mean of the cell values."""
    return f.backend.scalar(f.values.sum()) / f.size


def _check_exponent(backend: ScalarBackend, p: LpExponent) -> None:
    if backend.name == "exact" and not p.is_infinite and isinstance(p.degree, float):
        msg = f"Exact mode supports integer p or infinity, got p={p}; use float mode"
        raise ScalarModeError(msg)


def _power_mean(values: np.ndarray, p: LpExponent, backend: ScalarBackend) -> Scalar:
    magnitudes = np.abs(values)
    if p.is_infinite:
        return backend.scalar(magnitudes.max())
    return backend.scalar((magnitudes**p.degree).sum()) / len(magnitudes)


def lp_power(f: StepFunction, p: LpExponent) -> Scalar:
    """The radicand of the L_p norm: mean of |f|**p, or max |f| for p = infinity."""
    _check_exponent(f.backend, p)
    return _power_mean(f.values, p, f.backend)


def lp_norm(f: StepFunction, p: LpExponent) -> Scalar:
    """||f||_p with respect to the normalized Haar measure."""
    return f.backend.root(lp_power(f, p), p.degree)


@lru_cache(maxsize=None)
def bit_reversal(rank: int) -> np.ndarray:
    """Permutation that reverses the ``rank`` low bits of every cell index."""
    idx = np.arange(1 << rank)
    rev = np.zeros_like(idx)
    for b in range(rank):
        rev |= ((idx >> b) & 1) << (rank - 1 - b)
    rev.flags.writeable = False
    return rev


def fwht(values: np.ndarray) -> np.ndarray:
    """Un-normalized Walsh-Hadamard butterfly in natural (Hadamard) order.

    Runs N stages of 2**N additions, keeps the dtype of ``values`` (so object
    arrays of Fractions stay exact), and is self-inverse up to a factor 2**N.
    """
    a = np.array(values, copy=True)
    n = a.shape[0]
    h = 1
    while h < n:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1)
        h *= 2
    return a.reshape(n)


def walsh_coefficients(f: StepFunction) -> np.ndarray:
    """f^(j) = integral of f * w_j for j < 2**N, in Walsh-Paley order."""
    return fwht(f.values)[bit_reversal(f.rank)] / f.size


def from_walsh_coefficients(coefficients: Iterable[Any], *, backend: ScalarBackend = EXACT) -> StepFunction:
    """Synthesize sum_j c_j w_j from Walsh-Paley coefficients (length 2**N)."""
    coeffs = backend.asarray(coefficients)
    size = coeffs.shape[0]
    if size == 0 or size & (size - 1):
        msg = f"Need 2**N coefficients, got {size}"
        raise RankError(msg)
    rank = size.bit_length() - 1
    return StepFunction._wrap(fwht(coeffs[bit_reversal(rank)]), backend)


def dyadic_convolve(f: StepFunction, g: StepFunction) -> StepFunction:
    """(f * g)(x) = integral of f(x + u) g(u), via coefficient products."""
    a, b = f._align(g)
    rank = a.shape[0].bit_length() - 1
    fa = StepFunction._wrap(a, f.backend)
    gb = StepFunction._wrap(b, f.backend)
    product = walsh_coefficients(fa) * walsh_coefficients(gb)
    return from_walsh_coefficients(product, backend=f.backend).refine(rank)


def shift_power_means(f: StepFunction, p: LpExponent, count: int | None = None) -> list[Scalar]:
    """Radicands of ||f(. + t) - f||_p for the shifts t = 0..count-1 (default: all cells)."""
    _check_exponent(f.backend, p)
    count = f.size if count is None else count
    idx = np.arange(f.size)
    values = f.values
    return [_power_mean(values[idx ^ t] - values, p, f.backend) for t in range(count)]


def modulus_power_profile(f: StepFunction, p: LpExponent) -> list[Scalar]:
    """Radicands of omega_p(f, 2**-j) for j = 0..N.

    Shifts with their first j coordinates zero are exactly the cell indices
    below 2**(N-j), so every scale is a prefix maximum over one pass of shifts.
    """
    _check_exponent(f.backend, p)
    powers = shift_power_means(f, p, f.size)
    running: list[Scalar] = []
    best = powers[0]
    for value in powers:
        best = max(best, value)
        running.append(best)
    return [running[(1 << (f.rank - j)) - 1] for j in range(f.rank + 1)]


def modulus_profile(f: StepFunction, p: LpExponent) -> list[Scalar]:
    """omega_p(f, 2**-j) for j = 0..N."""
    return [f.backend.root(v, p.degree) for v in modulus_power_profile(f, p)]


def modulus_of_continuity(f: StepFunction, j: int, p: LpExponent) -> Scalar:
    """omega_p(f, 2**-j): the largest ||f(. + t) - f||_p over t in I_j."""
    if not 0 <= j <= f.rank:
        msg = f"omega_p(f, 2**-{j}) is not resolved by a rank-{f.rank} step function"
        raise RankError(msg)
    _check_exponent(f.backend, p)
    return f.backend.root(max(shift_power_means(f, p, 1 << (f.rank - j))), p.degree)


def interval_indicator(m: int, y: DyadicPoint, rank: int, *, backend: ScalarBackend = EXACT) -> StepFunction:
    """Indicator of I_m(y) at ``rank``; coordinates of ``y`` beyond its rank count as 0."""
    if not 0 <= m <= rank:
        msg = f"I_{m} is not a union of rank-{rank} cells"
        raise RankError(msg)
    coords = (y.coordinates + (0,) * m)[:m]
    prefix = 0
    for c in coords:
        prefix = (prefix << 1) | c
    idx = np.arange(1 << rank)
    return StepFunction(((idx >> (rank - m)) == prefix).astype(np.int64), backend=backend)

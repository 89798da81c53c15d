"""FloatBackend: binary64 arithmetic with relative-tolerance comparisons."""

import math
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np

from walshsum.backends.protocol import RootTerm, ScalarMode
from walshsum.backends.utils import format_float

REL_TOL = 1e-9
ABS_TOL = 1e-12


class FloatBackend:
    """Backend for large scans in binary64.

    Equality holds within relative tolerance ``rel_tol`` (default 1e-9), with an
    absolute floor ``abs_tol`` for comparisons against zero.
    """

    name: ScalarMode = "float"

    def __init__(self, rel_tol: float = REL_TOL, abs_tol: float = ABS_TOL) -> None:
        """Initialize with comparison tolerances."""
        self.rel_tol = rel_tol
        self.abs_tol = abs_tol

    def asarray(self, values: Iterable[Any]) -> np.ndarray:
        """Convert values to a float64 array."""
        if not isinstance(values, np.ndarray):
            values = list(values)
        flat = np.asarray(values, dtype=object).ravel()
        return np.array([float(v) for v in flat], dtype=np.float64)

    def scalar(self, value: Any) -> float:
        """Convert one value to a float."""
        return float(value)

    def zeros(self, size: int) -> np.ndarray:
        """Float zeros."""
        return np.zeros(size, dtype=np.float64)

    def equal(self, a: Any, b: Any) -> bool:
        """Equality within the configured tolerances."""
        return math.isclose(float(a), float(b), rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def less_equal(self, a: Any, b: Any) -> bool:
        """``a <= b`` or equal within tolerance."""
        return float(a) <= float(b) or self.equal(a, b)

    def root(self, value: Any, degree: float) -> float:
        """Floating ``degree``-th root."""
        if degree == 1:
            return float(value)
        return float(value) ** (1.0 / float(degree))

    def certify_le(self, lhs: Sequence[RootTerm], rhs: Sequence[RootTerm], degree: float) -> bool:
        """Sum both sides in floating point and compare with tolerance."""
        left = math.fsum(float(t.coefficient) * self.root(t.radicand, degree) for t in lhs)
        right = math.fsum(float(t.coefficient) * self.root(t.radicand, degree) for t in rhs)
        return self.less_equal(left, right)

    def format(self, value: Any) -> str:
        """Serialize with 17 significant digits."""
        return format_float(float(value))

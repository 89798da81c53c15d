"""Protocol definition for pluggable scalar backends.

This module defines the ScalarBackend protocol that both scalar modes implement.
A backend decides how step-function values are stored (exact rationals in numpy
object arrays, or binary64 floats), how they are compared, and how p-th roots
of L_p power means are taken.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Protocol, TypeAlias, runtime_checkable

import numpy as np

Scalar: TypeAlias = Fraction | float
"""A real constant or cell value: a Fraction in exact mode, a float in float mode."""

ScalarMode: TypeAlias = Literal["exact", "float"]


@dataclass(frozen=True)
class RootTerm:
    """One summand ``coefficient * radicand ** (1 / degree)`` of a certified comparison.

    L_p norms and moduli of continuity are p-th roots of rational power means.
    Bounds are linear combinations of such roots, so both sides of an inequality
    are handed to the backend as lists of terms and compared there.

    Attributes:
        coefficient: Real multiplier of the root.
        radicand: Non-negative power mean whose root is taken.

    Examples:
        >>> # (31/15) * omega, where omega ** 2 == 4
        >>> RootTerm(coefficient=Fraction(31, 15), radicand=Fraction(4))
    """

    coefficient: Scalar
    radicand: Scalar


@runtime_checkable
class ScalarBackend(Protocol):
    """Protocol for scalar backends (exact rational or binary64).

    All arrays handed out by a backend are one-dimensional numpy arrays; exact
    backends use ``dtype=object`` with Fraction entries so numpy broadcasting
    and fancy indexing keep working without rounding.
    """

    name: ScalarMode

    def asarray(self, values: Iterable[Any]) -> np.ndarray:
        """Convert values to a backend array."""
        ...

    def scalar(self, value: Any) -> Scalar:
        """Convert one value to a backend scalar."""
        ...

    def zeros(self, size: int) -> np.ndarray:
        """Array of ``size`` zeros."""
        ...

    def equal(self, a: Scalar, b: Scalar) -> bool:
        """Equality under the backend's comparison rule."""
        ...

    def less_equal(self, a: Scalar, b: Scalar) -> bool:
        """``a <= b`` under the backend's comparison rule."""
        ...

    def root(self, value: Scalar, degree: float) -> Scalar:
        """The ``degree``-th root of a non-negative value."""
        ...

    def certify_le(self, lhs: Sequence[RootTerm], rhs: Sequence[RootTerm], degree: float) -> bool | None:
        """Decide ``sum(lhs) <= sum(rhs)`` where every term is a ``degree``-th root.

        Returns None when the backend cannot separate the two sides.
        """
        ...

    def format(self, value: Scalar) -> str:
        """Serialize a scalar for machine-readable output."""
        ...

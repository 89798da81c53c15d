"""ExactBackend: rational arithmetic with no rounding."""

import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from typing import Any

import numpy as np
from mpmath import iv, mp
from mpmath.ctx_mp import MPContext

from walshsum.backends.protocol import RootTerm, Scalar, ScalarMode
from walshsum.backends.utils import approximate_root, exact_root, format_rational, interval, root_interval, to_fraction
from walshsum.errors import ScalarModeError

logger = logging.getLogger(__name__)

ROOT_BITS = 128
CERTIFY_BITS = (64, 256, 1024)


def _degree(degree: float) -> int:
    if float(degree) != int(degree) or degree < 1:
        msg = f"Exact mode supports integer exponents p >= 1 only, got {degree}"
        raise ScalarModeError(msg)
    return int(degree)


class ExactBackend:
    """Backend that keeps every value as a Fraction.

    Arrays are numpy object arrays of Fractions. Additions, products and
    comparisons are exact. Roots are exact when the radicand is a perfect power;
    otherwise ``root`` returns a 128-bit rational approximation, and certified
    comparisons go through ``certify_le``, which encloses each side in an
    mpmath interval at growing precision until the comparison is decided.
    """

    name: ScalarMode = "exact"

    def asarray(self, values: Iterable[Any]) -> np.ndarray:
        """Convert values to an object array of Fractions."""
        if not isinstance(values, np.ndarray):
            values = list(values)
        flat = np.asarray(values, dtype=object).ravel()
        out = np.empty(flat.shape[0], dtype=object)
        for i, v in enumerate(flat):
            out[i] = to_fraction(v)
        return out

    def scalar(self, value: Any) -> Fraction:
        """Convert one value to a Fraction."""
        return to_fraction(value)

    def zeros(self, size: int) -> np.ndarray:
        """Object array of Fraction zeros."""
        return self.asarray([0] * size)

    def equal(self, a: Scalar, b: Scalar) -> bool:
        """Exact equality."""
        return to_fraction(a) == to_fraction(b)

    def less_equal(self, a: Scalar, b: Scalar) -> bool:
        """Exact comparison."""
        return to_fraction(a) <= to_fraction(b)

    def root(self, value: Scalar, degree: float) -> Fraction:
        """Exact root when rational, else a 128-bit rational approximation."""
        d = _degree(degree)
        x = to_fraction(value)
        exact = exact_root(x, d)
        if exact is not None:
            return exact
        return approximate_root(x, d, ROOT_BITS)

    def certify_le(self, lhs: Sequence[RootTerm], rhs: Sequence[RootTerm], degree: float) -> bool | None:
        """Decide ``sum(lhs) <= sum(rhs)`` with interval enclosures of the roots.

        Precision grows through 64, 256 and 1024 bits. Returns None when the
        enclosures of the two sides still overlap at 1024 bits: the sides then
        agree to within about ``2**-1024`` but the order is not certified.
        """
        d = _degree(degree)
        if d == 1:
            left = sum((to_fraction(t.coefficient) * to_fraction(t.radicand) for t in lhs), Fraction(0))
            right = sum((to_fraction(t.coefficient) * to_fraction(t.radicand) for t in rhs), Fraction(0))
            return left <= right
        for bits in CERTIFY_BITS:
            with MPContext.workprec(iv, bits), mp.workprec(bits):
                left_lo, left_hi = _enclose(lhs, d)
                right_lo, right_hi = _enclose(rhs, d)
            if left_hi <= right_lo:
                return True
            if left_lo > right_hi:
                return False
        logger.warning("Comparison undecided at %d bits", CERTIFY_BITS[-1])
        return None

    def format(self, value: Scalar) -> str:
        """Serialize as ``p/q`` in lowest terms."""
        return format_rational(to_fraction(value))


def _enclose(terms: Sequence[RootTerm], degree: int) -> tuple[Fraction, Fraction]:
    # endpoints carry at most the working precision, so converting them through mp is exact
    total = iv.mpf(0)
    for term in terms:
        total += interval(to_fraction(term.coefficient)) * root_interval(to_fraction(term.radicand), degree)
    return to_fraction(mp.mpf(total.a)), to_fraction(mp.mpf(total.b))

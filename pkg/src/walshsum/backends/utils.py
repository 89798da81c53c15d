"""Shared helpers for scalar backends.

Conversion to Fraction, mpmath enclosures of p-th roots, and the serialization
rules used by every table the CLI emits: rationals as ``p/q`` in lowest terms,
floats with 17 significant digits.
"""

from fractions import Fraction
from typing import Any

import mpmath
import numpy as np
from mpmath import iv, mp

FLOAT_DIGITS = 17
GUARD_BITS = 32


def to_fraction(value: Any) -> Fraction:
    """Convert a value to a Fraction without rounding.

    Integers (Python or numpy) and Fractions convert exactly, strings are parsed
    (``"3/4"``, ``"0.25"``), floats and mpmath reals convert to their exact
    binary value.

    Raises:
        TypeError: If the value is not a real number or numeric string.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        return Fraction(float(value))
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return Fraction(man) * Fraction(2) ** exp
    msg = f"Cannot convert {value!r} to an exact rational"
    raise TypeError(msg)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer or a decimal literal as a Fraction."""
    return Fraction(text.strip())


def _perfect_root(n: int, degree: int) -> int | None:
    # mp.root is accurate to well under 1/2 at this precision, so nint is the only candidate
    with mp.workprec(n.bit_length() // degree + GUARD_BITS):
        r = int(mp.nint(mp.root(n, degree)))
    return r if r**degree == n else None


def exact_root(value: Fraction, degree: int) -> Fraction | None:
    """Return the rational ``degree``-th root of a non-negative ``value`` if there is one."""
    if degree == 1:
        return value
    num = _perfect_root(value.numerator, degree)
    if num is None:
        return None
    den = _perfect_root(value.denominator, degree)
    return None if den is None else Fraction(num, den)


def approximate_root(value: Fraction, degree: int, bits: int) -> Fraction:
    """``value ** (1/degree)`` rounded to ``bits`` bits of precision, as a Fraction."""
    with mp.workprec(bits):
        return to_fraction(mp.root(mp.mpf(value.numerator) / value.denominator, degree))


def interval(value: Fraction) -> Any:
    """Outward-rounded mpmath interval holding ``value`` at the current ``iv`` precision."""
    return iv.mpf(value.numerator) / value.denominator


def root_interval(value: Fraction, degree: int) -> Any:
    """Interval enclosure of ``value ** (1/degree)`` at the current ``iv`` precision.

    Rational roots come back as point intervals.
    """
    exact = exact_root(value, degree)
    if exact is not None:
        return interval(exact)
    x = interval(value)
    if degree == 2:  # noqa: PLR2004
        return iv.sqrt(x)
    return x ** (iv.mpf(1) / degree)


def format_rational(value: Fraction) -> str:
    """Serialize a Fraction as ``p/q`` in lowest terms, or ``p`` for integers."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_float(value: float) -> str:
    """Serialize a float with 17 significant digits."""
    return format(float(value), f".{FLOAT_DIGITS}g")

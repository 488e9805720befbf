"""Exact rational scalars and binomial coefficients.

The constant field is the rationals. `fractions.Fraction` already provides
the exact, canonically reduced representation we need (positive denominator,
gcd-reduced, equality by value == equality by representation), so it is used
directly rather than wrapped.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

ZERO = Rational(0)
ONE = Rational(1)


def rational(numerator: int, denominator: int = 1) -> Rational:
    """Build a Rational; the result is always in canonical reduced form."""
    return Rational(numerator, denominator)


def binom(n: int, k: int) -> Rational:
    """Binomial coefficient as a Rational; 0 when k > n.

    Both arguments must be nonnegative integers.
    """
    if n < 0 or k < 0:
        raise ValueError(f"binom requires nonnegative arguments, got ({n}, {k})")
    return Rational(math.comb(n, k))

"""Exact scalar arithmetic: rationals and the combinatorial coefficients.

The coefficient field everywhere in this package is the rationals,
represented by the standard-library :class:`fractions.Fraction`, which is
always stored in lowest terms with a positive denominator.  Nothing in this
package ever rounds.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def _check_natural(n: int, name: str) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    return n


def binom(n: int, k: int) -> int:
    """Binomial coefficient, by the multiplicative formula in exact integers.

    Returns 0 when k > n.  Every intermediate product is divisible by the
    running factorial, so the division below is always exact.
    """
    _check_natural(n, "n")
    _check_natural(k, "k")
    if k > n:
        return 0
    k = min(k, n - k)
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def factorial(n: int) -> int:
    """n! by repeated multiplication."""
    _check_natural(n, "n")
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out

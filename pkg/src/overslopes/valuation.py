"""p-adic valuations of integers, rationals and factorials, and the closed
slope formulas for U in weight 0 (p = 2) and the conjectural p = 11 formula.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from numbers import Rational

import gmpy2

__all__ = [
    "INFINITY",
    "Infinity",
    "vp",
    "vp_factorial",
    "vp_factorial_ratio",
    "slope_weight0",
    "slope_p11",
]


@total_ordering
class Infinity:
    """The valuation of zero.

    Compares greater than every integer and equal only to itself. It is not
    a number: adding it to an int raises, so it can never leak into a hull
    computation by accident.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("overslopes.Infinity")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()


def _check_prime(p):
    if not isinstance(p, int) or p < 2 or not gmpy2.is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")


def _vp_int(n: int, p: int) -> int:
    # gmpy2.remove strips every factor of p in one call
    return int(gmpy2.remove(gmpy2.mpz(n), p)[1])


def vp(x, p: int = 2):
    """Exponent of ``p`` in the nonzero rational ``x``.

    Negative when ``p`` divides the denominator. ``vp(0, p)`` is
    :data:`INFINITY`.
    """
    _check_prime(p)
    if isinstance(x, bool):
        raise TypeError("booleans are not valuations inputs")
    if isinstance(x, int):
        return INFINITY if x == 0 else _vp_int(x, p)
    if isinstance(x, (Fraction, Rational)) or hasattr(x, "numerator"):
        num, den = int(x.numerator), int(x.denominator)
        if num == 0:
            return INFINITY
        return _vp_int(num, p) - _vp_int(den, p)
    raise TypeError(f"cannot take a p-adic valuation of {type(x).__name__}")


def vp_factorial(n: int, p: int = 2) -> int:
    """Legendre's formula: sum of floor(n / p**i) for i >= 1."""
    _check_prime(p)
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    total = 0
    while n:
        n //= p
        total += n
    return total


def vp_factorial_ratio(num: list[int], den: list[int], p: int = 2) -> int:
    """Valuation of prod(a! for a in num) / prod(b! for b in den)."""
    return sum(vp_factorial(a, p) for a in num) - sum(vp_factorial(b, p) for b in den)


def slope_weight0(n: int) -> int:
    """Slope of the n-th eigenvalue of U on weight-0 overconvergent cusp forms:
    ``1 + 2 * v_2((3n)! / n!)``.
    """
    if n < 1:
        raise ValueError(f"slope index must be >= 1, got {n}")
    return 1 + 2 * (vp_factorial(3 * n, 2) - vp_factorial(n, 2))


def slope_p11(n: int) -> int:
    """Conjectural 11-adic slope of the n-th eigenvalue of U in weight 0.

    Evaluation only; nothing here verifies the formula.
    """
    if n < 1:
        raise ValueError(f"slope index must be >= 1, got {n}")
    head = vp_factorial_ratio([(6 * n + 1) // 5, (6 * n + 4) // 5], [n // 5, n // 5], 11)
    return head + sum((n + k) // 5 for k in range(1, 5))

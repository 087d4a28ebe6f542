from fractions import Fraction
from math import factorial

import pytest


def v_by_division(x, p):
    """Valuation by repeated division; independent of the library."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero")
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def naive_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def naive_product(prec, factor):
    """prod over n >= 1 of factor(n) (a dense list), multiplied out naively."""
    out = [1] + [0] * prec
    for n in range(1, prec + 1):
        out = naive_mul(out, factor(n), prec + 1)
    return out


@pytest.fixture
def fact():
    return factorial

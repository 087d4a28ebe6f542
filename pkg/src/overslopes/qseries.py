"""Truncated q-expansions with exact rational coefficients.

A :class:`QSeries` knows its coefficients at exponents ``0..prec``; anything
above ``prec`` is unknown (not zero). Every operation propagates precision
pessimistically, so two series that compare equal do so provably up to the
reported precision.

Integer series are multiplied by Kronecker substitution: both operands are
packed into one big integer, multiplied with GMP and unpacked. Rational
series clear denominators first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import gmpy2

from .report import VerificationReport, timed

__all__ = [
    "QSeries",
    "FPolynomial",
    "NotAPolynomialError",
    "series_arith",
    "delta_qexp",
    "f_qexp",
    "f_qexp_odd_product",
    "f_qexp_delta_ratio",
    "g_qexp",
    "e4_qexp",
    "e6_qexp",
    "theta_qexp",
    "j_inverse_qexp",
    "u_on_qexp",
    "negate_q",
    "decompose_in_f",
    "cusp_form_dimension",
    "miller_basis",
    "appendix_identities",
    "NAMED_SERIES",
    "named_series",
    "dump_series",
]


class NotAPolynomialError(ValueError):
    """Raised when a series is not a polynomial in f of the requested degree."""


# --------------------------------------------------------------------------
# integer kernels


def _pack(coeffs: Sequence[int], width: int) -> int:
    # sum c_i * 2**(width*i), signed digits allowed
    x = 0
    for c in reversed(coeffs):
        x = (x << width) + c
    return x


def _unpack(x, n: int, width: int) -> list[int]:
    """Low ``n`` signed digits of ``x`` in base ``2**width``.

    ``width`` is a multiple of 8 and every digit lies strictly inside
    ``(-2**(width-1), 2**(width-1))``.
    """
    nbytes = width // 8
    half = 1 << (width - 1)
    # shift every digit into [0, 2**width); reducing mod 2**(width*n) then
    # leaves exactly the low digits as unsigned bytes
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * n, "little")
    y = int(gmpy2.f_mod_2exp(gmpy2.mpz(x) + offset, width * n))
    raw = y.to_bytes(nbytes * n, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(n)
    ]


def _mul_trunc(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Coefficients ``0..n-1`` of the product of two integer polynomials."""
    a = list(a[:n])
    b = list(b[:n])
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        return [0] * n
    if len(a) * len(b) <= 256:
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b[: n - i]):
                    out[i + j] += x * y
        return out
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 2 + 7) // 8 * 8
    prod = gmpy2.mpz(_pack(a, width)) * gmpy2.mpz(_pack(b, width))
    m = min(n, len(a) + len(b) - 1)
    return _unpack(prod, m, width) + [0] * (n - m)


def _common_denominator(coeffs: Iterable[Fraction]) -> int:
    d = 1
    for c in coeffs:
        if c.denominator != 1:
            d = math.lcm(d, c.denominator)
    return d


# --------------------------------------------------------------------------
# QSeries


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, float)):
        raise TypeError(f"q-series coefficients must be exact, got {type(c).__name__}")
    return Fraction(c)


@dataclass(frozen=True, eq=False)
class QSeries:
    """Coefficients of q**0 .. q**prec; higher coefficients are unknown."""

    coeffs: tuple
    prec: int

    def __init__(self, coeffs: Iterable, prec: int | None = None):
        cs = [_to_fraction(c) for c in coeffs]
        if prec is None:
            prec = len(cs) - 1
        if prec < -1:
            raise ValueError("precision must be >= -1")
        if len(cs) < prec + 1:
            cs.extend([Fraction(0)] * (prec + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs[: prec + 1]))
        object.__setattr__(self, "prec", prec)

    # construction helpers
    @classmethod
    def _raw(cls, coeffs: list[Fraction], prec: int) -> "QSeries":
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "prec", prec)
        return obj

    @classmethod
    def from_ints(cls, coeffs: Sequence[int], prec: int | None = None) -> "QSeries":
        if prec is None:
            prec = len(coeffs) - 1
        cs = [Fraction(c) for c in coeffs[: prec + 1]]
        cs.extend([Fraction(0)] * (prec + 1 - len(cs)))
        return cls._raw(cs, prec)

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls.from_ints([1], prec)

    @classmethod
    def monomial(cls, n: int, prec: int, c=1) -> "QSeries":
        cs = [0] * (prec + 1)
        if n <= prec:
            cs[n] = c
        return cls(cs, prec)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.prec:
            raise IndexError(f"coefficient of q^{n} is beyond precision {self.prec}")
        return self.coeffs[n]

    def __len__(self):
        return self.prec + 1

    def __repr__(self):
        terms = []
        for n, c in enumerate(self.coeffs[:8]):
            if c:
                terms.append(f"{c}*q^{n}" if n else f"{c}")
        body = " + ".join(terms) or "0"
        return f"{body} + O(q^{self.prec + 1})"

    def valuation(self) -> int | None:
        """Index of the first nonzero known coefficient, or None."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("series has non-integral coefficients")
        return [c.numerator for c in self.coeffs]

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise ValueError(f"cannot raise precision from {self.prec} to {prec}")
        return QSeries._raw(list(self.coeffs[: prec + 1]), prec)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, QSeries):
            if self.prec < 0:
                return self
            cs = list(self.coeffs)
            cs[0] += _to_fraction(other)
            return QSeries._raw(cs, self.prec)
        p = min(self.prec, other.prec)
        return QSeries._raw([x + y for x, y in zip(self.coeffs[: p + 1], other.coeffs[: p + 1])], p)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        c = _to_fraction(c)
        return QSeries._raw([c * x for x in self.coeffs], self.prec)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        return _mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = QSeries.one(self.prec)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> "QSeries":
        """Multiplicative inverse of a series with nonzero constant term."""
        if self.prec < 0 or self.coeffs[0] == 0:
            raise ZeroDivisionError("cannot invert a series without a unit constant term")
        a = self.coeffs
        inv0 = 1 / a[0]
        out = [inv0]
        if self.is_integral() and abs(a[0]) == 1:
            ia = [c.numerator for c in a]
            s0 = int(inv0)
            iout = [s0]
            for n in range(1, self.prec + 1):
                acc = 0
                for k in range(1, n + 1):
                    if ia[k]:
                        acc += ia[k] * iout[n - k]
                iout.append(-s0 * acc)
            return QSeries.from_ints(iout, self.prec)
        for n in range(1, self.prec + 1):
            acc = sum((a[k] * out[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            out.append(-inv0 * acc)
        return QSeries._raw(out, self.prec)

    def __truediv__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(1 / _to_fraction(other))
        v = other.valuation()
        if v is None:
            raise ZeroDivisionError("division by a series with no known nonzero coefficient")
        head = self.coeffs[:v]
        if any(head):
            raise ZeroDivisionError(
                f"numerator does not vanish to order {v} at q = 0; result would be a Laurent series"
            )
        num = QSeries._raw(list(self.coeffs[v:]), self.prec - v)
        den = QSeries._raw(list(other.coeffs[v:]), other.prec - v)
        return num * den.invert()

    def subs(self, scale=1, power: int = 1) -> "QSeries":
        """Substitute ``q -> scale * q**power``."""
        if power < 1:
            raise ValueError("power must be >= 1")
        scale = _to_fraction(scale)
        prec = power * (self.prec + 1) - 1
        out = [Fraction(0)] * (prec + 1)
        s = Fraction(1)
        for n, c in enumerate(self.coeffs):
            out[n * power] = c * s
            s *= scale
        return QSeries._raw(out, prec)

    def compare(self, other: "QSeries") -> tuple[bool, int]:
        """Compare up to the common precision; returns (equal, precision)."""
        p = min(self.prec, other.prec)
        return self.coeffs[: p + 1] == other.coeffs[: p + 1], p

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.compare(other)[0]

    __hash__ = None

    def first_difference(self, other: "QSeries") -> int | None:
        p = min(self.prec, other.prec)
        for n in range(p + 1):
            if self.coeffs[n] != other.coeffs[n]:
                return n
        return None


def _mul(a: QSeries, b: QSeries) -> QSeries:
    va, vb = a.valuation(), b.valuation()
    if va is None:
        va = a.prec + 1
    if vb is None:
        vb = b.prec + 1
    prec = min(a.prec + vb, b.prec + va)
    if prec < 0:
        return QSeries._raw([], -1)
    n = prec + 1
    da = _common_denominator(a.coeffs)
    db = _common_denominator(b.coeffs)
    ia = [(c * da).numerator for c in a.coeffs[:n]]
    ib = [(c * db).numerator for c in b.coeffs[:n]]
    prod = _mul_trunc(ia, ib, n)
    den = da * db
    if den == 1:
        return QSeries._raw([Fraction(c) for c in prod], prec)
    return QSeries._raw([Fraction(c, den) for c in prod], prec)


def series_arith(a: QSeries, b=None, op: str = "add", **kw) -> QSeries:
    """Dispatch one of add, mul, pow, invert, compose-scale."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "pow":
        return a ** int(b)
    if op == "invert":
        return a.invert()
    if op == "compose-scale":
        return a.subs(kw.get("scale", 1), kw.get("power", 1))
    raise ValueError(f"unknown series operation {op!r}")


# --------------------------------------------------------------------------
# the series themselves


def _euler_product(prec: int, sign: int = -1, step: int = 1, start: int = 1) -> list[int]:
    """prod over n = start, start+step, ... of (1 + sign*q**n), to q**prec.

    Each factor is a sparse binomial applied in place.
    """
    out = [0] * (prec + 1)
    out[0] = 1
    for n in range(start, prec + 1, step):
        for i in range(prec, n - 1, -1):
            if out[i - n]:
                out[i] += sign * out[i - n]
    return out


def _power_ints(c: list[int], e: int, prec: int) -> list[int]:
    result = [1] + [0] * prec
    base = c
    while e:
        if e & 1:
            result = _mul_trunc(result, base, prec + 1)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, prec + 1)
    return result


@lru_cache(maxsize=8)
def _delta_ints(prec: int) -> tuple:
    eta24 = _power_ints(_euler_product(prec, -1), 24, prec)
    return tuple([0] + eta24[:prec])


def delta_qexp(prec: int) -> QSeries:
    """The discriminant q * prod (1 - q^n)^24."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    return QSeries.from_ints(_delta_ints(prec), prec)


@lru_cache(maxsize=8)
def _f_ints(prec: int) -> tuple:
    p24 = _power_ints(_euler_product(prec, +1), 24, prec)
    return tuple([0] + p24[:prec])


def f_qexp(prec: int) -> QSeries:
    """The level 2 Hauptmodul q * prod (1 + q^n)^24 = Delta(2 tau) / Delta(tau)."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    return QSeries.from_ints(_f_ints(prec), prec)


def f_qexp_odd_product(prec: int) -> QSeries:
    """q * prod (1 - q^(2n-1))^-24, built without the (1 + q^n) product."""
    odd = QSeries.from_ints(_euler_product(prec, -1, step=2, start=1), prec)
    inv = odd.invert() ** 24
    return QSeries.monomial(1, prec) * inv


def f_qexp_delta_ratio(prec: int) -> QSeries:
    """Delta(q^2) / Delta(q), precision ``prec``."""
    d = delta_qexp(prec + 1)
    return (d.subs(1, 2).truncate(prec + 1)) / d


def g_qexp(prec: int) -> QSeries:
    return f_qexp(prec).scale(64)


def _sigma(n: int, k: int) -> int:
    s = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            s += d ** k
            e = n // d
            if e != d:
                s += e ** k
        d += 1
    return s


def e4_qexp(prec: int) -> QSeries:
    if prec < 0:
        raise ValueError("prec must be >= 0")
    return QSeries.from_ints([1] + [240 * _sigma(n, 3) for n in range(1, prec + 1)], prec)


def e6_qexp(prec: int) -> QSeries:
    if prec < 0:
        raise ValueError("prec must be >= 0")
    return QSeries.from_ints([1] + [-504 * _sigma(n, 5) for n in range(1, prec + 1)], prec)


def theta_qexp(prec: int) -> QSeries:
    """Theta series of the hexagonal lattice: sum over a, b of q^(a^2+ab+b^2)."""
    if prec < 0:
        raise ValueError("prec must be >= 0")
    out = [0] * (prec + 1)
    # a^2+ab+b^2 >= 3/4 max(a,b)^2, so |a|,|b| <= sqrt(4 prec / 3)
    r = math.isqrt(4 * prec // 3 + 1) + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            n = a * a + a * b + b * b
            if n <= prec:
                out[n] += 1
    return QSeries.from_ints(out, prec)


def j_inverse_qexp(prec: int) -> QSeries:
    """1/j = Delta / E4^3."""
    if prec < 1:
        raise ValueError("prec must be >= 1")
    return delta_qexp(prec) * (e4_qexp(prec) ** 3).invert()


def u_on_qexp(s: QSeries) -> QSeries:
    """U_2 on q-expansions: the n-th output coefficient is the 2n-th input one."""
    return QSeries._raw(list(s.coeffs[::2]), s.prec // 2)


def negate_q(s: QSeries) -> QSeries:
    """Substitute q -> -q."""
    return QSeries._raw([c if n % 2 == 0 else -c for n, c in enumerate(s.coeffs)], s.prec)


# --------------------------------------------------------------------------
# polynomials in f


@dataclass(frozen=True)
class FPolynomial:
    """A polynomial in the Hauptmodul f, stored sparsely as degree -> coefficient."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(d): _to_fraction(c) for d, c in self.coeffs.items() if c}
        if any(d < 0 for d in clean):
            raise ValueError("negative degree")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_list(cls, cs: Sequence) -> "FPolynomial":
        return cls({d: c for d, c in enumerate(cs)})

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs.get(d, Fraction(0))

    def to_list(self, length: int | None = None) -> list[Fraction]:
        n = self.degree + 1 if length is None else length
        return [self[d] for d in range(n)]

    def __eq__(self, other):
        if not isinstance(other, FPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "FPolynomial") -> "FPolynomial":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, 0) + c
        return FPolynomial(out)

    def __mul__(self, other) -> "FPolynomial":
        if not isinstance(other, FPolynomial):
            c = _to_fraction(other)
            return FPolynomial({d: c * x for d, x in self.coeffs.items()})
        out: dict = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return FPolynomial(out)

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def evaluate(self, f: QSeries) -> QSeries:
        """Substitute a q-series for the variable (Horner)."""
        acc = QSeries([0], f.prec)
        for d in range(self.degree, -1, -1):
            acc = acc * f + QSeries([self[d]], f.prec)
        return acc

    def __repr__(self):
        if not self.coeffs:
            return "FPolynomial(0)"
        terms = [f"{c}*X^{d}" if d else f"{c}" for d, c in sorted(self.coeffs.items())]
        return "FPolynomial(" + " + ".join(terms) + ")"


def decompose_in_f(s: QSeries, maxdeg: int, f: QSeries | None = None) -> FPolynomial:
    """Write ``s`` as a polynomial of degree <= maxdeg in f = q + O(q^2).

    Peels off the leading coefficient degree by degree, then checks that
    what remains vanishes to the full precision of ``s``.
    """
    if maxdeg < 0:
        raise ValueError("maxdeg must be >= 0")
    if s.prec < maxdeg:
        raise ValueError(f"series precision {s.prec} is below the degree bound {maxdeg}")
    if f is None:
        f = f_qexp(max(s.prec, 1))
    if f.prec < s.prec:
        s = s.truncate(f.prec)
        if s.prec < maxdeg:
            raise ValueError("f is known to lower precision than the degree bound")
    f = f.truncate(s.prec)
    residual = list(s.coeffs)
    fi = [c.numerator for c in f.coeffs]
    power = [1] + [0] * s.prec
    out = {}
    for d in range(maxdeg + 1):
        c = residual[d]
        if c:
            out[d] = c
            for n in range(d, s.prec + 1):
                if power[n]:
                    residual[n] -= c * power[n]
        power = _mul_trunc(power, fi, s.prec + 1)
    bad = next((n for n in range(s.prec + 1) if residual[n]), None)
    if bad is not None:
        raise NotAPolynomialError(
            f"series is not a polynomial of degree <= {maxdeg} in f: "
            f"residual coefficient of q^{bad} is {residual[bad]}"
        )
    return FPolynomial(out)


# --------------------------------------------------------------------------
# level one cusp forms


def cusp_form_dimension(k: int) -> int:
    if k % 2 or k < 0:
        return 0
    if k % 12 == 2:
        return max(k // 12 - 1, 0)
    return k // 12 if k >= 12 else 0


def _check_weight(k: int) -> None:
    if not isinstance(k, int) or k % 2 or k < 12:
        raise ValueError(f"weight must be an even integer >= 12, got {k!r}")


def _miller_rows(k: int, prec: int) -> list[list[int]]:
    """Integer coefficient rows of the echelon basis, q^0..q^prec."""
    dim = cusp_form_dimension(k)
    n = prec + 1
    delta = list(_delta_ints(prec))
    e4 = QSeries.from_ints([1] + [240 * _sigma(m, 3) for m in range(1, n)], prec).int_coeffs()
    e6 = QSeries.from_ints([1] + [-504 * _sigma(m, 5) for m in range(1, n)], prec).int_coeffs()
    e4cubed = _power_ints(e4, 3, prec)
    # Eisenstein part of weight k - 12*dim, then climb by E4^3 as a drops
    rest = k - 12 * dim
    c = 1 if rest % 4 else 0
    eis = _power_ints(e4, (rest - 6 * c) // 4, prec)
    if c:
        eis = _mul_trunc(eis, e6, n)
    delta_pows = [[1] + [0] * prec]
    for _ in range(dim):
        delta_pows.append(_mul_trunc(delta_pows[-1], delta, n))
    rows: list[list[int]] = [None] * (dim + 1)
    for a in range(dim, 0, -1):
        rows[a] = _mul_trunc(delta_pows[a], eis, n)
        eis = _mul_trunc(eis, e4cubed, n)
    rows = rows[1:]
    # rows[a-1] = q^a + ...; clear the entries above each pivot
    for j in range(dim, 0, -1):
        pivot = rows[j - 1]
        for i in range(j - 1):
            row = rows[i]
            c = row[j]
            if c:
                for m in range(j, n):
                    if pivot[m]:
                        row[m] -= c * pivot[m]
    return rows


def miller_basis(k: int, prec: int | None = None) -> list[QSeries]:
    """Echelon basis f_i = q^i + O(q^(dim+1)) of level one cusp forms of weight k.

    Built from the weight-k monomials Delta^a E4^b E6^c, a = 1..dim, with
    c in {0, 1}, then reduced above each pivot.
    """
    _check_weight(k)
    dim = cusp_form_dimension(k)
    if prec is None:
        prec = 2 * dim + 1
    if prec < 2 * dim + 1:
        raise ValueError(f"prec must be at least 2*dim+1 = {2 * dim + 1}")
    return [QSeries.from_ints(r, prec) for r in _miller_rows(k, prec)]


# --------------------------------------------------------------------------
# appendix identities and dumps


def appendix_identities(prec: int) -> list[VerificationReport]:
    """theta^4 = E4 mod 8, and 64/j = g/(4g+1)^3 with g = 64 f."""
    reports = []
    with timed() as clock:
        if prec < 0:
            raise ValueError("prec must be >= 0")
        th4 = theta_qexp(prec) ** 4
        e4 = e4_qexp(prec)
        diff = th4 - e4
        bad = [
            {"n": n, "theta4": str(th4[n]), "e4": str(e4[n])}
            for n in range(diff.prec + 1)
            if diff[n].denominator != 1 or diff[n].numerator % 8
        ]
    reports.append(VerificationReport(
        claim="appendix.theta4_congruent_e4_mod8",
        params={"prec": prec},
        outcome="pass" if not bad else "fail",
        details={"mismatches": bad, "checked_prec": diff.prec},
        elapsed=clock.ms,
    ))

    with timed() as clock:
        p = max(prec, 1)
        lhs = j_inverse_qexp(p).scale(64)
        g = g_qexp(p)
        rhs = g * ((g.scale(4) + 1) ** 3).invert()
        ok, common = lhs.compare(rhs)
        bad = []
        if not ok:
            n = lhs.first_difference(rhs)
            bad.append({"n": n, "lhs": str(lhs[n]), "rhs": str(rhs[n])})
        ok_prec = min(common, prec)
    reports.append(VerificationReport(
        claim="appendix.64_over_j",
        params={"prec": prec},
        outcome="pass" if not bad else "fail",
        details={"mismatches": bad, "checked_prec": ok_prec},
        elapsed=clock.ms,
    ))
    return reports


NAMED_SERIES = {
    "delta": delta_qexp,
    "f": f_qexp,
    "g": g_qexp,
    "e4": e4_qexp,
    "e6": e6_qexp,
    "theta": theta_qexp,
    "j-inverse": j_inverse_qexp,
}


def named_series(name: str, terms: int) -> QSeries:
    """Series ``name`` known through q^terms."""
    try:
        build = NAMED_SERIES[name]
    except KeyError:
        raise ValueError(f"unknown series {name!r}; choose from {', '.join(NAMED_SERIES)}") from None
    return build(max(terms, 1)).truncate(terms) if terms >= 0 else build(1)


def dump_series(s: QSeries) -> str:
    """One line per coefficient: ``n<TAB>numerator/denominator``."""
    return "".join(f"{n}\t{c.numerator}/{c.denominator}\n" for n, c in enumerate(s.coeffs))

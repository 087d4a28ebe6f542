"""The U operator on weight-0 overconvergent 2-adic forms in the basis g, g^2, ...

Everything is exact: the s-table by recurrence and in closed form, the
matrix entries u_{i,j}, the factorization U = A D B, truncated characteristic
series and the slopes they certify.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .linalg import RationalMatrix, det_bareiss, reversed_charpoly
from .newton import SlopeSequence, polygon_of_poly, polygons_equal, slopes_of
from .qseries import FPolynomial, decompose_in_f, f_qexp, u_on_qexp
from .report import VerificationReport, make_report, timed
from .valuation import slope_weight0, vp

__all__ = [
    "STable",
    "StabilizationError",
    "s_table",
    "s_closed",
    "u_entry",
    "a_entry",
    "b_entry",
    "d_entry",
    "abd_entries",
    "u_matrix",
    "verify_s_table",
    "verify_integrality",
    "verify_adb",
    "verify_adb_grid",
    "minor_identity",
    "verify_minor_identities",
    "truncated_char_series",
    "spectral_slopes",
    "selfadjoint_check",
    "verify_selfadjoint",
    "weight_matrix_entry",
    "weight_matrix",
    "weight_matrix_valuations",
    "np_lemma_check",
    "uf_polynomials",
    "verify_uf_cross",
]


class StabilizationError(RuntimeError):
    """The slope prefix did not settle before the truncation cap."""


@lru_cache(maxsize=4096)
def _fact(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return factorial(n)


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def _in_band(i: int, j: int) -> bool:
    return i <= 2 * j and j <= 2 * i


# --------------------------------------------------------------------------
# s_{i,j}: U(f^j) = sum_i s_{i,j} f^i


@dataclass(frozen=True)
class STable:
    imax: int
    jmax: int
    values: tuple

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.values[i][j]

    def column(self, j: int) -> list[int]:
        return [self.values[i][j] for i in range(self.imax + 1)]


def s_table(imax: int, jmax: int) -> STable:
    """s_{i,j} for 0 <= i <= imax, 0 <= j <= jmax, filled by the recurrence
    s_{i,j} = 48 s_{i-1,j-1} + 2^12 s_{i-2,j-1} + s_{i-1,j-2}.
    """
    if imax < 2 or jmax < 2:
        raise ValueError("table bounds must be >= 2")
    s = [[0] * (jmax + 1) for _ in range(imax + 1)]
    s[0][0] = 1
    s[1][1] = 24
    s[2][1] = 1 << 11
    s[1][2] = 1
    for j in range(2, jmax + 1):
        for i in range(2, imax + 1):
            s[i][j] = 48 * s[i - 1][j - 1] + (1 << 12) * s[i - 2][j - 1] + s[i - 1][j - 2]
    return STable(imax, jmax, tuple(tuple(r) for r in s))


def s_closed(i: int, j: int) -> Fraction:
    """(i+j-1)! 3j 2^(8i-4j-1) / ((2i-j)! (2j-i)!)."""
    if i < 1 or j < 1 or not _in_band(i, j):
        raise ValueError(f"({i}, {j}) is outside the support i <= 2j, j <= 2i")
    return Fraction(_fact(i + j - 1) * 3 * j, _fact(2 * i - j) * _fact(2 * j - i)) * _pow2(8 * i - 4 * j - 1)


def _u_closed(i: int, j: int) -> Fraction:
    return Fraction(_fact(i + j - 1) * 3 * j, _fact(2 * i - j) * _fact(2 * j - i)) * _pow2(2 * i + 2 * j - 1)


def u_entry(i: int, j: int) -> Fraction:
    """Matrix entry of U on the basis g^j -> g^i; zero outside the band."""
    if i < 1 or j < 1:
        raise ValueError("indices start at 1")
    if not _in_band(i, j):
        return Fraction(0)
    u = _pow2(6 * j - 6 * i) * s_closed(i, j)
    if u != _u_closed(i, j):
        raise AssertionError(f"the two forms of u_{{{i},{j}}} disagree")
    return u


def u_matrix(n: int) -> RationalMatrix:
    """Top-left n x n block of U."""
    return RationalMatrix([[u_entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])


# --------------------------------------------------------------------------
# U = A D B


@lru_cache(maxsize=None)
def a_entry(i: int, j: int) -> Fraction:
    """Lower triangular factor, supported on 2j >= i >= j."""
    if not (2 * j >= i >= j >= 1):
        return Fraction(0)
    num = _fact(i) ** 2 * _fact(2 * j) ** 2 * _fact(2 * j + i - 1)
    den = _fact(2 * i) * _fact(i - j) * _fact(j) * _fact(i + j) * _fact(2 * j - i) * _fact(3 * j - 1)
    return Fraction(num, den) * _pow2(2 * i - 2 * j)


@lru_cache(maxsize=None)
def b_entry(i: int, j: int) -> Fraction:
    """Upper triangular factor, supported on 2i >= j >= i."""
    if not (2 * i >= j >= i >= 1):
        return Fraction(0)
    num = j * _fact(j) ** 2 * _fact(2 * i) ** 2 * _fact(2 * i + j - 1)
    den = i * _fact(2 * j) * _fact(j - i) * _fact(i) * _fact(j + i) * _fact(2 * i - j) * _fact(3 * i - 1)
    return Fraction(num, den) * _pow2(2 * j - 2 * i)


@lru_cache(maxsize=None)
def d_entry(i: int) -> Fraction:
    """Diagonal factor 2^(4i+1) (3i)!^2 i!^2 / (3 (2i)!^4)."""
    if i < 1:
        raise ValueError("indices start at 1")
    return Fraction((1 << (4 * i + 1)) * _fact(3 * i) ** 2 * _fact(i) ** 2, 3 * _fact(2 * i) ** 4)


def abd_entries(i: int, j: int) -> tuple[Fraction, Fraction, Fraction]:
    """(a_{i,j}, b_{i,j}, d_{i,j}); the last is zero off the diagonal."""
    if i < 1 or j < 1:
        raise ValueError("indices start at 1")
    return a_entry(i, j), b_entry(i, j), d_entry(i) if i == j else Fraction(0)


def _adb_range(i: int, j: int) -> range:
    return range(max((i + 1) // 2, (j + 1) // 2), min(i, j) + 1)


def verify_adb(i: int, j: int) -> VerificationReport:
    """sum_k a_{i,k} d_{k,k} b_{k,j} against u_{i,j} (empty sum is zero)."""
    with timed() as clock:
        ks = _adb_range(i, j)
        total = sum((a_entry(i, k) * d_entry(k) * b_entry(k, j) for k in ks), Fraction(0))
        u = u_entry(i, j)
    bad = [] if total == u else [{"i": i, "j": j, "adb": str(total), "u": str(u)}]
    return make_report("adb.entry", {"i": i, "j": j}, bad, clock.ms,
                       k_range=[ks.start, ks.stop - 1] if len(ks) else [], value=str(u))


def verify_adb_grid(nmax: int) -> VerificationReport:
    with timed() as clock:
        bad = []
        for i in range(1, nmax + 1):
            for j in range(1, nmax + 1):
                r = verify_adb(i, j)
                bad.extend(r.details["mismatches"])
    return make_report("adb.grid", {"nmax": nmax}, bad, clock.ms, checked=nmax * nmax)


def verify_integrality(nmax: int) -> VerificationReport:
    """A = B = Id mod 2, v_2(d_ii) = 1 + 2 v_2((3i)!/i!), and i b_{i,j} = j a_{j,i}."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    bad = []
    with timed() as clock:
        for i in range(1, nmax + 1):
            for name, entry in (("a", a_entry), ("b", b_entry)):
                if entry(i, i) != 1:
                    bad.append({"entry": name, "i": i, "j": i, "value": str(entry(i, i))})
            expected = slope_weight0(i)
            got = vp(d_entry(i), 2)
            if got != expected:
                bad.append({"entry": "d", "i": i, "v2": got, "expected": expected})
            for j in range(1, nmax + 1):
                a, b = a_entry(i, j), b_entry(i, j)
                for name, x in (("a", a), ("b", b)):
                    if i != j and x and vp(x, 2) < 1:
                        bad.append({"entry": name, "i": i, "j": j, "v2": vp(x, 2)})
                if i * b != j * a_entry(j, i):
                    bad.append({"entry": "symmetry", "i": i, "j": j})
    return make_report("abd.integrality", {"nmax": nmax}, bad, clock.ms)


def minor_identity(i: int, j: int) -> VerificationReport:
    """The finite hypergeometric identity that ADB = U reduces to, by direct summation."""
    if i < 1 or j < 1 or not _in_band(i, j):
        raise ValueError(f"({i}, {j}) is outside the support 2i >= j, 2j >= i")
    with timed() as clock:
        lhs = Fraction(
            _fact(2 * i) * _fact(2 * j) * _fact(i + j - 1),
            4 * _fact(i) ** 2 * _fact(j) ** 2 * _fact(2 * i - j) * _fact(2 * j - i),
        )
        rhs = Fraction(0)
        for k in _adb_range(i, j):
            rhs += Fraction(
                _fact(2 * k + i - 1) * k * _fact(2 * k + j - 1),
                _fact(i - k) * _fact(i + k) * _fact(j - k) * _fact(j + k) * _fact(2 * k - i) * _fact(2 * k - j),
            )
    bad = [] if lhs == rhs else [{"i": i, "j": j, "lhs": str(lhs), "rhs": str(rhs)}]
    return make_report("minor_identity.entry", {"i": i, "j": j}, bad, clock.ms, value=str(lhs))


def verify_minor_identities(nmax: int) -> VerificationReport:
    with timed() as clock:
        bad = []
        count = 0
        for i in range(1, nmax + 1):
            for j in range(1, nmax + 1):
                if _in_band(i, j):
                    bad.extend(minor_identity(i, j).details["mismatches"])
                    count += 1
    return make_report("minor_identity.grid", {"nmax": nmax}, bad, clock.ms, checked=count)


def verify_s_table(nmax: int) -> VerificationReport:
    """Recurrence table against the closed form, and vanishing off the band."""
    with timed() as clock:
        tab = s_table(nmax, nmax)
        bad = []
        for i in range(1, nmax + 1):
            for j in range(1, nmax + 1):
                if _in_band(i, j):
                    if s_closed(i, j) != tab[i, j]:
                        bad.append({"i": i, "j": j, "table": tab[i, j], "closed": str(s_closed(i, j))})
                elif tab[i, j] != 0:
                    bad.append({"i": i, "j": j, "table": tab[i, j], "closed": 0})
    return make_report("s_table.closed_form", {"nmax": nmax}, bad, clock.ms)


# --------------------------------------------------------------------------
# spectra


@lru_cache(maxsize=16)
def _char_series(n: int) -> tuple:
    return tuple(reversed_charpoly(u_matrix(n)))


def truncated_char_series(n: int) -> list[Fraction]:
    """c_0..c_n of det(I - X U_n) for the top-left n x n block U_n."""
    if n < 1:
        raise ValueError("truncation size must be >= 1")
    return list(_char_series(n))


def spectral_slopes(n: int, cap: int = 1024) -> SlopeSequence:
    """First n slopes of U on weight-0 cusp forms, certified by truncation.

    Starts at N = 2n + 8 and doubles until the first n slopes from the N and
    2N truncations agree. The certificate records N and both slope lists.
    """
    if n < 1:
        raise ValueError("slope count must be >= 1")
    size = 2 * n + 8
    history = []
    current = slopes_of(polygon_of_poly(truncated_char_series(size)), n, "spectral")
    while 2 * size <= cap:
        nxt = slopes_of(polygon_of_poly(truncated_char_series(2 * size)), n, "spectral")
        history.append(size)
        if nxt.slopes == current.slopes:
            cert = {"N": size, "checked_against": 2 * size, "tried": history}
            return SlopeSequence(current.slopes, "spectral", cert)
        size *= 2
        current = nxt
    raise StabilizationError(f"first {n} slopes did not stabilize with truncations up to {cap}")


def selfadjoint_check(i: int, j: int) -> VerificationReport:
    """<U g^j, g^i> = i u_{i,j} must equal <g^j, U g^i> = j u_{j,i} and the symmetric formula."""
    with timed() as clock:
        left = i * u_entry(i, j)
        right = j * u_entry(j, i)
        if _in_band(i, j):
            sym = Fraction(3 * i * j * _fact(i + j - 1), _fact(2 * i - j) * _fact(2 * j - i)) * _pow2(2 * i + 2 * j - 1)
        else:
            sym = Fraction(0)
    bad = [] if left == right == sym else [{"i": i, "j": j, "left": str(left), "right": str(right), "formula": str(sym)}]
    return make_report("selfadjoint", {"i": i, "j": j}, bad, clock.ms)


def verify_selfadjoint(nmax: int) -> VerificationReport:
    with timed() as clock:
        bad = []
        for i in range(1, nmax + 1):
            for j in range(1, nmax + 1):
                bad.extend(selfadjoint_check(i, j).details["mismatches"])
    return make_report("selfadjoint_grid", {"nmax": nmax}, bad, clock.ms)


def weight_matrix_entry(m: int, i: int, j: int) -> Fraction:
    """Entry of U in weight -12m on the basis h g^j: 2^(-6m) u_{i+m, j+2m}."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return _pow2(-6 * m) * u_entry(i + m, j + 2 * m)


def weight_matrix(m: int, n: int) -> RationalMatrix:
    return RationalMatrix([[weight_matrix_entry(m, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])


def weight_matrix_valuations(m: int, n: int) -> VerificationReport:
    """Observed 2-adic valuations of the n x n weight -12m block.

    Purely descriptive: nothing about integrality is claimed, so the report
    always passes (u_entry itself asserts its two closed forms agree).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    with timed() as clock:
        vals = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                x = weight_matrix_entry(m, i, j)
                row.append(None if x == 0 else vp(x, 2))
            vals.append(row)
        finite = [v for r in vals for v in r if v is not None]
    return make_report(
        "weight_matrix.valuations",
        {"m": m, "n": n},
        [],
        clock.ms,
        weight=-12 * m,
        valuations=vals,
        min_valuation=min(finite) if finite else None,
        negative_entries=sum(v < 0 for v in finite),
    )


def _random_c(n: int, seed: int) -> list[list[int]]:
    # odd diagonal, even off-diagonal
    rng = random.Random(seed)
    return [[2 * rng.randint(-4, 4) + (1 if r == s else 0) for s in range(n)] for r in range(n)]


def np_lemma_check(n: int, seed: int, max_subset: int = 4, c_matrix=None) -> VerificationReport:
    """For C = Id mod 2 (random from ``seed`` unless ``c_matrix`` is given),
    principal minors of D and C D share valuations, and det(I - X D) and
    det(I - X C D) have the same 2-adic Newton polygon.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = _random_c(n, seed) if c_matrix is None else [[int(x) for x in r] for r in c_matrix]
    if len(c) != n or any(len(r) != n for r in c):
        raise ValueError("C must be n x n")
    if any((c[r][s] - (r == s)) % 2 for r in range(n) for s in range(n)):
        raise ValueError("C must be congruent to the identity mod 2")
    with timed() as clock:
        d = [d_entry(i) for i in range(1, n + 1)]
        cd = RationalMatrix([[c[r][s] * d[s] for s in range(n)] for r in range(n)])
        dm = RationalMatrix.diagonal(d)
        bad = []
        identical = True
        for size in range(1, min(n, max_subset) + 1):
            for idx in combinations(range(n), size):
                md = det_bareiss(dm.submatrix(idx))
                mcd = det_bareiss(cd.submatrix(idx))
                identical = identical and md == mcd
                if vp(md, 2) != vp(mcd, 2):
                    bad.append({"subset": [k + 1 for k in idx], "v2_D": vp(md, 2), "v2_CD": vp(mcd, 2)})
        poly_d = polygon_of_poly(reversed_charpoly(dm), 2)
        poly_cd = polygon_of_poly(reversed_charpoly(cd), 2)
        if not polygons_equal(poly_d, poly_cd):
            bad.append({"polygon_D": poly_d.to_json_obj(), "polygon_CD": poly_cd.to_json_obj()})
    return make_report(
        "np_perturbation",
        {"N": n, "seed": seed},
        bad,
        clock.ms,
        minors_identical=identical,
        polygon=poly_d,
    )


# --------------------------------------------------------------------------
# X_k = U(f^k) as polynomials in f


def uf_polynomials(kmax: int) -> list[FPolynomial]:
    """X_0 .. X_kmax with X_k = (48X + 2^12 X^2) X_{k-1} + X X_{k-2}."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    step = FPolynomial({1: 48, 2: 1 << 12})
    shift = FPolynomial({1: 1})
    out = [FPolynomial({0: 1}), FPolynomial({1: 24, 2: 1 << 11})]
    for k in range(2, kmax + 1):
        out.append(step * out[k - 1] + shift * out[k - 2])
    for k, x in enumerate(out):
        if not x.is_integral() or x.degree > 2 * k:
            raise AssertionError(f"X_{k} is not an integer polynomial of degree <= {2 * k}")
    return out[: kmax + 1]


def verify_uf_cross(kmax: int) -> VerificationReport:
    """Recurrence polynomials against U(f^k) decomposed from q-expansions,
    and against the columns of the s-table.
    """
    with timed() as clock:
        polys = uf_polynomials(kmax)
        tab = s_table(max(2 * kmax, 2), max(kmax, 2))
        # U(f^k) needs coefficients through q^(2 * 2k) plus a margin for the residual check
        prec = 4 * kmax + 40
        f = f_qexp(prec)
        half = f.truncate(prec // 2)
        bad = []
        fk = f ** 0
        for k in range(kmax + 1):
            if k:
                fk = fk * f
            q_side = decompose_in_f(u_on_qexp(fk), 2 * k, half)
            if q_side != polys[k]:
                bad.append({"k": k, "recurrence": repr(polys[k]), "qexp": repr(q_side)})
            col = [polys[k][i] for i in range(2 * kmax + 1)]
            if col != list(tab.column(k)):
                bad.append({"k": k, "s_table_column": "mismatch"})
    return make_report("uf_cross", {"kmax": kmax}, bad, clock.ms, prec=prec)

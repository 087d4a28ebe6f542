"""Dense exact matrices and characteristic polynomials.

Two independent routes to det(xI - M):

* :func:`charpoly_berkowitz` is division free (ring operations only) and
  serves as the reference.
* :func:`charpoly_hessenberg` reduces to upper Hessenberg form over Q with
  GMP rationals, O(n^3) field operations.

Integer matrices with large entries go through :func:`charpoly_multimodular`:
Hessenberg reduction modulo a batch of 27-bit primes at once (numpy int64),
then Chinese remaindering against a proven coefficient bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from functools import lru_cache
from math import isqrt
from typing import Sequence

import gmpy2
import numpy as np

__all__ = [
    "RationalMatrix",
    "charpoly_berkowitz",
    "charpoly_hessenberg",
    "charpoly_multimodular",
    "charpoly_bound",
    "charpoly",
    "reversed_charpoly",
    "det_bareiss",
    "principal_minor",
    "principal_minor_sums",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (bool, float)):
        raise TypeError(f"matrix entries must be exact, got {type(x).__name__}")
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


@dataclass(frozen=True)
class RationalMatrix:
    """Square matrix of exact rationals."""

    rows: tuple

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "RationalMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def submatrix(self, idx: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def to_strings(self) -> list[list[str]]:
        """Entries as ``numerator/denominator`` strings, for JSON export."""
        return [[f"{x.numerator}/{x.denominator}" for x in r] for r in self.rows]

    @classmethod
    def from_strings(cls, rows) -> "RationalMatrix":
        return cls([[Fraction(s) for s in r] for r in rows])


def charpoly_berkowitz(m: RationalMatrix) -> list[Fraction]:
    """Coefficients p_0..p_n of det(xI - M), lowest degree first.

    Berkowitz's algorithm: only additions and multiplications, so integer
    input stays integer throughout.
    """
    a = [list(r) for r in m.rows]
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    # vector of coefficients, highest degree first
    poly = [Fraction(1), -a[0][0]]
    for r in range(1, n):
        # leading principal (r+1)x(r+1) block: [[A_r, C], [R, a_rr]]
        R = a[r][:r]
        C = [a[i][r] for i in range(r)]
        A = [row[:r] for row in a[:r]]
        # Toeplitz column: 1, -a_rr, -R C, -R A C, -R A^2 C, ...
        col = [Fraction(1), -a[r][r]]
        vec = C
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, vec)), Fraction(0)))
            vec = [sum((A[i][j] * vec[j] for j in range(r)), Fraction(0)) for i in range(r)]
        # new poly = T * poly where T is lower triangular Toeplitz of size (r+2)x(r+1)
        new = []
        for i in range(r + 2):
            s = Fraction(0)
            for j in range(min(i, r) + 1):
                s += col[i - j] * poly[j]
            new.append(s)
        poly = new
    return poly[::-1]


def charpoly_hessenberg(m: RationalMatrix) -> list[Fraction]:
    """Coefficients p_0..p_n of det(xI - M) via Hessenberg reduction over Q."""
    n = m.n
    if n == 0:
        return [Fraction(1)]
    mpq = gmpy2.mpq
    h = [[mpq(x.numerator, x.denominator) for x in r] for r in m.rows]
    for c in range(n - 2):
        piv = next((i for i in range(c + 1, n) if h[i][c] != 0), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[piv], h[c + 1] = h[c + 1], h[piv]
            for row in h:
                row[piv], row[c + 1] = row[c + 1], row[piv]
        pv = h[c + 1][c]
        for i in range(c + 2, n):
            t = h[i][c]
            if t == 0:
                continue
            t = t / pv
            hi, hc = h[i], h[c + 1]
            for j in range(c, n):
                if hc[j]:
                    hi[j] -= t * hc[j]
            # similarity: column c+1 += t * column i
            for row in h:
                if row[i]:
                    row[c + 1] += t * row[i]
    # p_k(x) = det(xI - H_k) for leading blocks, via the Hessenberg recurrence
    polys = [[mpq(1)]]
    for k in range(1, n + 1):
        hk = h[k - 1]
        # x * p_{k-1} - h_{k-1,k-1} * p_{k-1}
        prev = polys[k - 1]
        cur = [mpq(0)] + prev[:]
        for d in range(len(prev)):
            cur[d] -= hk[k - 1] * prev[d]
        prod = mpq(1)
        for i in range(k - 1, 0, -1):
            prod *= h[i][i - 1]
            if prod == 0:
                break
            coef = prod * h[i - 1][k - 1]
            if coef:
                pi = polys[i - 1]
                for d in range(len(pi)):
                    cur[d] -= coef * pi[d]
        polys.append(cur)
    return [Fraction(int(c.numerator), int(c.denominator)) for c in polys[n]]


# --------------------------------------------------------------------------
# multimodular route

# products of two residues stay below 2^54, so up to 2^9 of them can be
# summed in int64 before reducing
_PRIME_CEILING = 1 << 27
_MAX_DIM = 1 << 9


@lru_cache(maxsize=None)
def _primes(count: int) -> tuple:
    out = []
    p = _PRIME_CEILING
    while len(out) < count:
        p = int(gmpy2.prev_prime(p))
        out.append(p)
    return tuple(out)


def charpoly_bound(rows: Sequence[Sequence[int]]) -> int:
    """B with |p_i| <= B for every coefficient of det(xI - M).

    Each i x i principal minor is at most the product of the Euclidean norms
    of its rows (Hadamard), and those rows are pieces of full rows of M, so
    every elementary symmetric sum is bounded by prod(1 + ||row_j||).
    """
    bound = 1
    for r in rows:
        bound *= 1 + isqrt(sum(x * x for x in r)) + 1
    return bound


def _residues(values: list[int], primes: np.ndarray) -> np.ndarray:
    """values[i] mod primes[j], as an int64 array of shape (len(values), len(primes))."""
    signs = np.array([-1 if v < 0 else 1 for v in values], dtype=np.int64)
    mags = [abs(v) for v in values]
    nbytes = max(1, max((v.bit_length() + 7) // 8 for v in mags))
    buf = b"".join(v.to_bytes(nbytes, "little") for v in mags)
    # 8-bit limbs times 27-bit powers, summed over at most 2^14 limbs, stay
    # below 2^53, so a float64 product is exact
    limbs = np.frombuffer(buf, dtype=np.uint8).reshape(len(values), nbytes).astype(np.float64)
    out = np.zeros((len(values), len(primes)), dtype=np.int64)
    chunk = 1 << 13
    for start in range(0, nbytes, chunk):
        stop = min(nbytes, start + chunk)
        pw = np.empty((stop - start, len(primes)), dtype=np.int64)
        pw[0] = [pow(256, start, int(p)) for p in primes]
        for i in range(1, stop - start):
            pw[i] = (pw[i - 1] * 256) % primes
        part = (limbs[:, start:stop] @ pw.astype(np.float64)).astype(np.int64)
        out = (out + part % primes) % primes
    return (out * signs[:, None]) % primes


def _inv_mod(a: np.ndarray, p: np.ndarray) -> np.ndarray:
    # Fermat; zero maps to zero
    result = np.ones_like(a)
    base = a % p
    e = p - 2
    while np.any(e):
        odd = (e & 1).astype(bool)
        result = np.where(odd, (result * base) % p, result)
        base = (base * base) % p
        e = e >> 1
    return result


def _charpoly_mod_batch(h: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Charpoly coefficients (lowest first) of each h[b] modulo p[b]."""
    nb, n, _ = h.shape
    pb = p[:, None]
    pbb = p[:, None, None]
    ar = np.arange(nb)
    for c in range(n - 2):
        col = h[:, c + 1:, c]
        nz = col != 0
        piv = c + 1 + np.argmax(nz, axis=1)
        swap = piv != c + 1
        if np.any(swap):
            idx = ar[swap]
            pv = piv[swap]
            rows_a = h[idx, c + 1, :].copy()
            h[idx, c + 1, :] = h[idx, pv, :]
            h[idx, pv, :] = rows_a
            cols_a = h[idx, :, c + 1].copy()
            h[idx, :, c + 1] = h[idx, :, pv]
            h[idx, :, pv] = cols_a
        inv = _inv_mod(h[:, c + 1, c], p)
        t = (h[:, c + 2:, c] * inv[:, None]) % pb
        if not np.any(t):
            continue
        # rows below the pivot: only columns >= c are still nonzero
        pivot_row = h[:, c + 1, c:]
        h[:, c + 2:, c:] = (h[:, c + 2:, c:] - t[:, :, None] * pivot_row[:, None, :]) % pbb
        contrib = np.matmul(h[:, :, c + 2:], t[:, :, None])[:, :, 0]
        h[:, :, c + 1] = (h[:, :, c + 1] + contrib) % pb
    polys = [np.ones((nb, 1), dtype=np.int64)]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = np.zeros((nb, k + 1), dtype=np.int64)
        cur[:, 1:] = prev
        cur[:, :k] = (cur[:, :k] - (h[:, k - 1, k - 1][:, None] * prev) % pb) % pb
        prod = np.ones(nb, dtype=np.int64)
        for i in range(k - 1, 0, -1):
            prod = (prod * h[:, i, i - 1]) % p
            if not np.any(prod):
                break
            coef = (prod * h[:, i - 1, k - 1]) % p
            pi = polys[i - 1]
            cur[:, :i] = (cur[:, :i] - (coef[:, None] * pi) % pb) % pb
        polys.append(cur)
    return polys[n]


def charpoly_multimodular(m: RationalMatrix, batch: int = 512) -> list[Fraction]:
    """Coefficients p_0..p_n of det(xI - M) for an integer matrix, exactly.

    Enough primes are used that their product exceeds twice the proven
    bound, so the symmetric CRT lift is the true coefficient.
    """
    if not m.is_integral():
        raise ValueError("multimodular charpoly needs an integer matrix")
    n = m.n
    if n == 0:
        return [Fraction(1)]
    if n > _MAX_DIM:
        raise ValueError(f"multimodular charpoly supports dimension <= {_MAX_DIM}")
    rows = [[x.numerator for x in r] for r in m.rows]
    bound = charpoly_bound(rows)
    primes: list[int] = []
    modulus = 1
    for q in _primes_until(2 * bound + 1):
        primes.append(q)
        modulus *= q
    flat = [x for r in rows for x in r]
    residues = []
    for start in range(0, len(primes), batch):
        pb = np.array(primes[start:start + batch], dtype=np.int64)
        res = _residues(flat, pb).T.reshape(len(pb), n, n).copy()
        residues.append(_charpoly_mod_batch(res, pb))
    res = np.concatenate(residues, axis=0)  # (nprimes, n+1)
    return [Fraction(c) for c in _crt_columns(res, primes, modulus)]


def _primes_until(target: int):
    count = 64
    while True:
        ps = _primes(count)
        acc = 1
        for i, q in enumerate(ps):
            acc *= q
            if acc > target:
                return ps[: i + 1]
        count *= 2


def _crt_columns(res: np.ndarray, primes: list[int], modulus: int) -> list[int]:
    # x = sum_i ((r_i * y_i) mod p_i) * M_i  mod M, with M_i = M/p_i, y_i = M_i^-1 mod p_i
    cof = [modulus // q for q in primes]
    ys = np.array([int(gmpy2.invert(c % q, q)) for c, q in zip(cof, primes)], dtype=np.int64)
    pa = np.array(primes, dtype=np.int64)
    scaled = (res * ys[:, None]) % pa[:, None]
    mz = gmpy2.mpz(modulus)
    cofz = [gmpy2.mpz(c) for c in cof]
    half = mz // 2
    out = []
    for j in range(res.shape[1]):
        col = scaled[:, j].tolist()
        x = sum((cz * v for cz, v in zip(cofz, col) if v), gmpy2.mpz(0)) % mz
        out.append(int(x - mz if x > half else x))
    return out


def charpoly(m: RationalMatrix, method: str = "auto") -> list[Fraction]:
    """det(xI - M), lowest degree first.

    ``auto`` picks the multimodular route for integer matrices and Hessenberg
    over Q otherwise.
    """
    if method == "auto":
        method = "multimodular" if m.n > 4 and m.is_integral() else "hessenberg"
    if method == "multimodular":
        return charpoly_multimodular(m)
    if method == "hessenberg":
        return charpoly_hessenberg(m)
    if method == "berkowitz":
        return charpoly_berkowitz(m)
    raise ValueError(f"unknown charpoly method {method!r}")


def reversed_charpoly(m: RationalMatrix, method: str = "auto") -> list[Fraction]:
    """Coefficients c_0..c_n of det(I - X*M); c_0 = 1."""
    # det(I - XM) = X^n det(X^-1 I - M), so c_j is the x^(n-j) coefficient
    return charpoly(m, method)[::-1]


def det_bareiss(m: RationalMatrix) -> Fraction:
    """Determinant by fraction-free elimination after clearing denominators."""
    n = m.n
    if n == 0:
        return Fraction(1)
    den = 1
    for r in m.rows:
        for x in r:
            den = gmpy2.lcm(den, x.denominator)
    den = int(den)
    a = [[int(x * den) for x in r] for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], den ** n)


def principal_minor(m: RationalMatrix, idx: Sequence[int]) -> Fraction:
    return det_bareiss(m.submatrix(idx))


def principal_minor_sums(m: RationalMatrix, upto: int | None = None) -> list[Fraction]:
    """e_0..e_upto: sums of all r x r principal minors (brute force)."""
    n = m.n
    upto = n if upto is None else upto
    out = [Fraction(1)]
    for r in range(1, upto + 1):
        out.append(sum((principal_minor(m, s) for s in combinations(range(n), r)), Fraction(0)))
    return out

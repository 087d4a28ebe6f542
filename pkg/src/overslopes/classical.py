"""T_2 on level one cusp forms and the conjectural product polygons.

The classical side computes det(1 - X T_2) on S_k exactly; the conjectural
side evaluates the factorial product for each coefficient. The driver
compares their 2-adic Newton polygons.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .linalg import RationalMatrix, reversed_charpoly
from .newton import NewtonPolygon, polygon_from_points, polygon_of_poly, polygons_equal
from .qseries import _check_weight, _miller_rows, cusp_form_dimension
from .report import VerificationReport, timed
from .valuation import slope_weight0, vp

__all__ = [
    "PoleError",
    "t2_matrix",
    "reversed_charpoly",
    "conjectural_terms_classical",
    "conjectural_coefficients_classical",
    "conjectural_polygon_classical",
    "conjectural_series_overconvergent",
    "classical_polygon",
    "verify_conjecture1",
]


class PoleError(ZeroDivisionError):
    """The weight k <= 0 product hits a zero denominator at some index j."""

    def __init__(self, k: int, j: int):
        super().__init__(f"pole at j={j} for weight k={k}: -k-12j = 0")
        self.k = k
        self.j = j


def _fact(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return factorial(n)


def t2_matrix(k: int) -> RationalMatrix:
    """Matrix of T_2 on S_k in the echelon basis; column j is T_2 f_j.

    (T_2 h)_n = a_{2n} + 2^(k-1) a_{n/2}, and since f_i = q^i + O(q^(dim+1))
    the coordinates of T_2 f_j are its coefficients at q^1..q^dim.
    """
    _check_weight(k)
    dim = cusp_form_dimension(k)
    rows = _miller_rows(k, 2 * dim + 1)
    if len(rows) != dim:
        raise AssertionError(f"basis has {len(rows)} elements, dimension formula says {dim}")
    w = 1 << (k - 1)
    m = [[0] * dim for _ in range(dim)]
    for j, f in enumerate(rows):
        for i in range(1, dim + 1):
            m[i - 1][j] = f[2 * i] + (w * f[i // 2] if i % 2 == 0 else 0)
    return RationalMatrix(m)


def conjectural_terms_classical(k: int) -> list[Fraction]:
    """The j-th factor 2^(2j) (k-8j)! (k-8j-3)! (k-12j-2) / ((k-12j)! (k-6j-1)!), j = 1..dim."""
    _check_weight(k)
    out = []
    for j in range(1, cusp_form_dimension(k) + 1):
        lin = k - 12 * j - 2
        if lin == 0:
            raise AssertionError(f"zero factor k-12j-2 at j={j}, k={k}")
        num = 4 ** j * _fact(k - 8 * j) * _fact(k - 8 * j - 3) * lin
        den = _fact(k - 12 * j) * _fact(k - 6 * j - 1)
        out.append(Fraction(num, den))
    return out


def conjectural_coefficients_classical(k: int) -> list[Fraction]:
    """1, c_1, ..., c_dim with c_n the product of the first n factors."""
    out = [Fraction(1)]
    for t in conjectural_terms_classical(k):
        out.append(out[-1] * t)
    return out


def conjectural_polygon_classical(k: int) -> NewtonPolygon:
    pts = [(0, 0)]
    total = 0
    for n, t in enumerate(conjectural_terms_classical(k), start=1):
        total += vp(t, 2)
        pts.append((n, total))
    return polygon_from_points(pts)


def conjectural_series_overconvergent(k: int, nmax: int) -> list[tuple[int, int]]:
    """(n, v_2(c_n)) for the weight k <= 0 product, n = 1..nmax.

    c_n = prod_{j<=n} 2^(2j) (-k+2+12j)! (-k+6j)! / ((-k+2+8j)! (-k-2+8j)! (-k-12j)).
    """
    if k > 0:
        raise ValueError("only weights k <= 0 are supported")
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    for j in range(1, nmax + 1):
        if -k - 12 * j == 0:
            raise PoleError(k, j)
    out = []
    total = 0
    a = -k
    for j in range(1, nmax + 1):
        term = Fraction(
            4 ** j * _fact(a + 2 + 12 * j) * _fact(a + 6 * j),
            _fact(a + 2 + 8 * j) * _fact(a - 2 + 8 * j) * (a - 12 * j),
        )
        v = vp(term, 2)
        if k == 0 and v != slope_weight0(j):
            raise AssertionError(f"weight 0 term {j} has valuation {v}, expected {slope_weight0(j)}")
        total += v
        out.append((j, total))
    return out


def classical_polygon(k: int, method: str = "auto") -> tuple[NewtonPolygon, list[Fraction]]:
    """Newton polygon of det(1 - X T_2) on S_k, with the coefficients."""
    m = t2_matrix(k)
    if not m.is_integral():
        raise AssertionError(f"T_2 matrix in weight {k} is not integral")
    coeffs = reversed_charpoly(m, method)
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError(f"det(1 - X T_2) in weight {k} has non-integral coefficients")
    return polygon_of_poly(coeffs, 2), coeffs


def verify_conjecture1(k: int, method: str = "auto") -> VerificationReport:
    params = {"k": k}
    with timed() as clock:
        try:
            _check_weight(k)
            dim = cusp_form_dimension(k)
            computed, _ = classical_polygon(k, method)
            predicted = conjectural_polygon_classical(k)
        except (ValueError, AssertionError) as exc:
            err = exc
        else:
            err = None
    if err is not None:
        return VerificationReport("classical_slopes", params, "error", {"error": str(err)}, clock.ms)
    mismatches = []
    if not polygons_equal(computed, predicted):
        mismatches.append({"classical": computed.to_json_obj(), "conjectural": predicted.to_json_obj()})
    return VerificationReport(
        "classical_slopes",
        params,
        "fail" if mismatches else "pass",
        {
            "mismatches": mismatches,
            "dim": dim,
            "classical_vertices": computed,
            "conjectural_vertices": predicted,
            "slopes": [str(s) for s in computed.segment_slopes()],
        },
        clock.ms,
    )

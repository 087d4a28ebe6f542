from fractions import Fraction

import pytest

from overslopes.classical import (
    PoleError,
    classical_polygon,
    conjectural_coefficients_classical,
    conjectural_polygon_classical,
    conjectural_series_overconvergent,
    t2_matrix,
    verify_conjecture1,
)
from overslopes.linalg import reversed_charpoly
from overslopes.qseries import delta_qexp, e4_qexp, e6_qexp, miller_basis
from overslopes.valuation import slope_weight0


def hecke_t2(s, k, upto):
    """(T_2 h)_n = a_{2n} + 2^(k-1) a_{n/2}, straight from the definition."""
    return [s[2 * n] + (2 ** (k - 1) * s[n // 2] if n % 2 == 0 else 0) for n in range(upto)]


def test_t2_on_delta_directly():
    d = delta_qexp(40)
    t = hecke_t2(d, 12, 20)
    assert t == [-24 * d[n] for n in range(20)]
    assert t2_matrix(12)[0, 0] == -24 and t2_matrix(12).n == 1


def test_t2_weight16_eigenvalue():
    f = (e4_qexp(40) * delta_qexp(40))
    t = hecke_t2(f, 16, 20)
    assert t == [216 * f[n] for n in range(20)]
    assert t2_matrix(16)[0, 0] == 216 and t2_matrix(16).n == 1
    assert t2_matrix(22)[0, 0] == -288 and t2_matrix(22).n == 1


def test_t2_weight24_trace_in_another_basis():
    # S_24 spanned by Delta^2 and Delta E4^3; solve for T_2 in that basis
    d = delta_qexp(40)
    b1, b2 = d * d, d * e4_qexp(40) ** 3
    basis = [b1, b2]
    # coordinates from the q^1, q^2 coefficients via Cramer's rule
    det = b1[1] * b2[2] - b1[2] * b2[1]
    mat = []
    for b in basis:
        t = hecke_t2(b, 24, 6)
        x = Fraction(t[1] * b2[2] - t[2] * b2[1], det)
        y = Fraction(b1[1] * t[2] - b1[2] * t[1], det)
        for n in range(6):
            assert t[n] == x * b1[n] + y * b2[n]
        mat.append((x, y))
    trace = mat[0][0] + mat[1][1]
    assert trace == 1080
    assert t2_matrix(24).trace() == 1080


def test_t2_matrix_is_integral_and_basis_consistent():
    for k in (36, 48, 60):
        m = t2_matrix(k)
        assert m.is_integral()
        basis = miller_basis(k)
        for j, f in enumerate(basis):
            t = hecke_t2(f, k, len(basis) + 1)
            assert [t[i] for i in range(1, len(basis) + 1)] == [m[i, j] for i in range(len(basis))]


def test_conjectural_first_coefficients():
    assert conjectural_coefficients_classical(12)[1] == Fraction(-8, 5)
    assert conjectural_coefficients_classical(16)[1] == Fraction(40, 9)
    assert conjectural_coefficients_classical(22)[1] == Fraction(352, 15)


def test_example_polygons():
    # one-dimensional spaces: a single segment of slope v_2(eigenvalue)
    for k, slope in ((12, 3), (16, 3), (22, 5)):
        assert classical_polygon(k)[0].vertices == ((0, 0), (1, slope))
        assert conjectural_polygon_classical(k).vertices == ((0, 0), (1, slope))


@pytest.mark.parametrize("k", list(range(12, 101, 2)))
def test_classical_polygons_small_weights(k):
    r = verify_conjecture1(k)
    assert r.outcome == "pass", r.details


def test_charpoly_methods_agree_on_t2():
    for k in (48, 96):
        m = t2_matrix(k)
        assert reversed_charpoly(m, "hessenberg") == reversed_charpoly(m, "multimodular")


def test_invalid_weights():
    for k in (13, 10, -4):
        with pytest.raises(ValueError):
            t2_matrix(k)
    assert verify_conjecture1(13).outcome == "error"


def test_weight_zero_series():
    vals = conjectural_series_overconvergent(0, 5)
    assert vals == [(1, 3), (2, 10), (3, 23), (4, 38), (5, 55)]
    running = 0
    for n, v in conjectural_series_overconvergent(0, 60):
        running += slope_weight0(n)
        assert v == running


def test_negative_weights():
    with pytest.raises(PoleError):
        conjectural_series_overconvergent(-12, 3)
    with pytest.raises(PoleError):
        conjectural_series_overconvergent(-24, 3)
    assert len(conjectural_series_overconvergent(-4, 10)) == 10
    with pytest.raises(ValueError):
        conjectural_series_overconvergent(12, 3)


def test_e6_sanity():
    assert e6_qexp(3)[1] == -504

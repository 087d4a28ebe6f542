from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from overslopes import spectral as sp
from overslopes.linalg import RationalMatrix
from overslopes.qseries import decompose_in_f, f_qexp, u_on_qexp
from overslopes.valuation import slope_weight0, vp

from conftest import v_by_division

band = st.tuples(st.integers(1, 40), st.integers(1, 40)).filter(lambda ij: sp._in_band(*ij))


def test_s_table_examples():
    t = sp.s_table(6, 6)
    assert t[1, 1] == 24
    assert t[2, 1] == 2048
    assert t[2, 2] == 1152
    assert t[1, 2] == 1
    assert t[0, 0] == 1
    with pytest.raises(ValueError):
        sp.s_table(1, 5)


def test_s_table_against_q_expansions():
    # column j of the table is U(f^j) written in powers of f
    t = sp.s_table(12, 6)
    f = f_qexp(120)
    half = f.truncate(60)
    fj = f
    for j in range(1, 7):
        if j > 1:
            fj = fj * f
        poly = decompose_in_f(u_on_qexp(fj), 2 * j, half)
        assert [poly[i] for i in range(13)] == t.column(j)


def test_s_closed_examples():
    assert sp.s_closed(1, 1) == 24
    assert sp.s_closed(2, 2) == 1152
    assert sp.s_closed(1, 2) == 1
    with pytest.raises(ValueError):
        sp.s_closed(1, 3)


def test_u_entry_examples():
    assert sp.u_entry(1, 1) == 24
    assert sp.u_entry(2, 1) == 32
    assert sp.u_entry(1, 2) == 64
    assert sp.u_entry(5, 1) == 0
    with pytest.raises(ValueError):
        sp.u_entry(0, 1)


def test_abd_examples():
    assert sp.abd_entries(1, 1) == (1, 1, 24)
    assert sp.a_entry(2, 1) == Fraction(4, 3)
    assert sp.a_entry(1, 2) == 0 and sp.b_entry(2, 1) == 0
    assert vp(sp.d_entry(2), 2) == 7
    assert sp.abd_entries(2, 1)[2] == 0


def test_adb_examples():
    assert sp.verify_adb(1, 1).details["value"] == "24"
    assert sp.verify_adb(2, 1).details["value"] == "32"
    r = sp.verify_adb(5, 1)
    assert r.passed and r.details["k_range"] == [] and r.details["value"] == "0"


def test_adb_product_matches_u_block():
    # the triangular supports make the N x N blocks multiply exactly
    n = 12
    a = RationalMatrix([[sp.a_entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    b = RationalMatrix([[sp.b_entry(i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    d = RationalMatrix.diagonal([sp.d_entry(i) for i in range(1, n + 1)])
    assert (a @ d @ b).rows == sp.u_matrix(n).rows


@settings(max_examples=50, deadline=None)
@given(band)
def test_closed_forms_are_integral_and_consistent(ij):
    i, j = ij
    s = sp.s_closed(i, j)
    assert s.denominator == 1
    u = sp.u_entry(i, j)
    assert u.denominator == 1
    assert i * u == j * sp.u_entry(j, i)


def test_minor_identity_examples():
    for ij in ((1, 1), (2, 2), (3, 5)):
        assert sp.minor_identity(*ij).passed
    assert sp.minor_identity(1, 1).details["value"] == "1"
    with pytest.raises(ValueError):
        sp.minor_identity(1, 3)


def test_integrality_examples():
    assert sp.verify_integrality(1).passed
    assert sp.verify_integrality(50).passed
    with pytest.raises(ValueError):
        sp.verify_integrality(0)


def test_d_valuation_by_factor_counting():
    for i in range(1, 80):
        d = Fraction(2 ** (4 * i + 1) * factorial(3 * i) ** 2 * factorial(i) ** 2, 3 * factorial(2 * i) ** 4)
        assert v_by_division(d, 2) == slope_weight0(i) == vp(sp.d_entry(i), 2)


def test_truncated_char_series_examples():
    assert sp.truncated_char_series(1) == [1, -24]
    c = sp.truncated_char_series(2)
    assert c[1] == -(sp.u_entry(1, 1) + sp.u_entry(2, 2))
    assert c[2] == sp.u_entry(1, 1) * sp.u_entry(2, 2) - sp.u_entry(1, 2) * sp.u_entry(2, 1)
    with pytest.raises(ValueError):
        sp.truncated_char_series(0)


def test_spectral_slopes_small():
    s1 = sp.spectral_slopes(1)
    assert s1.as_ints() == [3]
    assert s1.certificate["checked_against"] == 2 * s1.certificate["N"]
    s4 = sp.spectral_slopes(4)
    assert s4.as_ints() == [3, 7, 13, 15]
    s10 = sp.spectral_slopes(10).as_ints()
    assert all(a < b for a, b in zip(s10, s10[1:]))
    assert all(s % 2 == 1 for s in s10)


def test_spectral_slopes_cap():
    with pytest.raises(sp.StabilizationError):
        sp.spectral_slopes(4, cap=16)


def test_selfadjoint_examples():
    assert sp.selfadjoint_check(1, 2).passed
    assert 1 * sp.u_entry(1, 2) == 2 * sp.u_entry(2, 1) == 64
    assert sp.selfadjoint_check(3, 3).passed
    assert sp.selfadjoint_check(3, 1).passed
    assert sp.verify_selfadjoint(30).passed


def test_weight_matrix():
    assert sp.weight_matrix_entry(0, 3, 4) == sp.u_entry(3, 4)
    assert sp.weight_matrix_entry(1, 1, 1) == 72
    for i in range(1, 15):
        for j in range(1, 15):
            vanishes = i + 1 > 2 * (j + 2) or j + 2 > 2 * (i + 1)
            assert (sp.weight_matrix_entry(1, i, j) == 0) == vanishes
    with pytest.raises(ValueError):
        sp.weight_matrix_entry(-1, 1, 1)
    assert sp.weight_matrix(2, 3).n == 3


def test_weight_matrix_valuations_are_descriptive():
    r = sp.weight_matrix_valuations(1, 6)
    assert r.passed
    assert r.details["weight"] == -12
    assert r.details["valuations"][0][0] == vp(72, 2)
    assert sp.weight_matrix_valuations(0, 4).details["min_valuation"] >= 0


def test_np_lemma_examples():
    for seed in range(3):
        assert sp.np_lemma_check(1, seed).passed
    assert sp.np_lemma_check(4, 0).passed
    r = sp.np_lemma_check(5, 0, c_matrix=[[int(a == b) for b in range(5)] for a in range(5)])
    assert r.passed and r.details["minors_identical"]
    with pytest.raises(ValueError):
        sp.np_lemma_check(2, 0, c_matrix=[[1, 1], [0, 1]])


def test_np_lemma_is_deterministic():
    a = sp.np_lemma_check(5, 7)
    b = sp.np_lemma_check(5, 7)
    assert a.details["polygon"] == b.details["polygon"]
    assert sp._random_c(5, 7) == sp._random_c(5, 7)


def test_uf_polynomials_examples():
    x = sp.uf_polynomials(3)
    assert x[1][1] == 24 and x[1][2] == 2048 and x[1].degree == 2
    assert x[2][1] == 1 and x[2][2] == 1152
    for k, p in enumerate(x):
        assert p.degree <= 2 * k and p.is_integral()
    assert sp.verify_uf_cross(8).passed

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from overslopes import qseries as qs
from overslopes.qseries import (
    FPolynomial,
    NotAPolynomialError,
    QSeries,
    appendix_identities,
    cusp_form_dimension,
    decompose_in_f,
    delta_qexp,
    e4_qexp,
    f_qexp,
    f_qexp_delta_ratio,
    f_qexp_odd_product,
    miller_basis,
    negate_q,
    theta_qexp,
    u_on_qexp,
)

from conftest import naive_mul, naive_product

ints = st.integers(min_value=-10**30, max_value=10**30)


def coeffs(s):
    return [int(c) for c in s.coeffs]


# --- arithmetic -----------------------------------------------------------

def test_basic_arithmetic_examples():
    a = QSeries([1, 1, 0], 2)
    b = QSeries([1, -1, 0], 2)
    assert coeffs(a * b) == [1, 0, -1]
    inv = QSeries([1, -1] + [0] * 8, 9).invert()
    assert coeffs(inv) == [1] * 10
    x = QSeries([0, 1, 1, 0, 0], 4)
    assert coeffs(x ** 2) == [0, 0, 1, 2, 1, 0]


def test_precision_min_rule():
    # q + O(q^5) times 1 + O(q^3): the product is known through q^3
    a = QSeries([0, 1, 0, 0, 0], 4)
    b = QSeries([1, 0, 0, 0], 3)
    assert (a * b).prec == 4
    assert (a + b).prec == 3
    # leading zeros extend what is known
    assert (a * a).prec == 5


def test_compare_reports_common_precision():
    a = QSeries([1, 2, 3, 4], 3)
    b = QSeries([1, 2, 3], 2)
    assert a.compare(b) == (True, 2)
    assert a == b
    assert QSeries([1, 2, 4], 2).compare(a) == (False, 2)


def test_coefficients_beyond_precision_are_unknown():
    s = QSeries([1, 2], 1)
    with pytest.raises(IndexError):
        s[2]


def test_invert_requires_unit():
    with pytest.raises(ZeroDivisionError):
        QSeries([0, 1, 2], 2).invert()


def test_series_arith_dispatch():
    a = QSeries([1, 1, 0], 2)
    assert qs.series_arith(a, a, "add") == a.scale(2)
    assert qs.series_arith(a, 2, "pow") == a * a
    assert qs.series_arith(a, op="compose-scale", scale=-1) == negate_q(a)
    with pytest.raises(ValueError):
        qs.series_arith(a, a, "frobnicate")


@settings(max_examples=60, deadline=None)
@given(st.lists(ints, min_size=1, max_size=40), st.lists(ints, min_size=1, max_size=40))
def test_kronecker_kernel_matches_schoolbook(a, b):
    n = max(len(a), len(b))
    assert qs._mul_trunc(a, b, n) == naive_mul(a, b, n)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(max_denominator=50), min_size=3, max_size=25))
def test_rational_product_and_inverse(cs):
    cs[0] = cs[0] or Fraction(1)
    s = QSeries(cs)
    one = s * s.invert()
    assert one.compare(QSeries.one(s.prec)) == (True, s.prec)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=30))
def test_negate_q_is_involution(cs):
    s = QSeries(cs)
    assert negate_q(negate_q(s)) == s


# --- named series -----------------------------------------------------------

def _delta_oracle(prec):
    eta = naive_product(prec, lambda n: [1] + [0] * (n - 1) + [-1])
    eta24 = [1] + [0] * prec
    for _ in range(24):
        eta24 = naive_mul(eta24, eta, prec + 1)
    return [0] + eta24[:prec]


def test_delta_coefficients():
    d = delta_qexp(12)
    assert d[1] == 1
    oracle = _delta_oracle(12)
    assert d[2] == oracle[2] == -24
    assert d[3] == oracle[3] == 252
    assert coeffs(d) == oracle


def test_f_first_coefficients():
    assert coeffs(f_qexp(6))[1:] == [1, 24, 300, 2624, 18126, 105504]
    assert f_qexp(5)[1] * 64 == qs.g_qexp(5)[1] == 64


def test_f_three_constructions_agree():
    a = f_qexp(200)
    for other in (f_qexp_odd_product(200), f_qexp_delta_ratio(200)):
        assert a.compare(other) == (True, 200)


def test_f_delta_ratio_to_100():
    assert f_qexp(100).compare(f_qexp_delta_ratio(100)) == (True, 100)


def test_named_series_are_integral():
    for build in (delta_qexp, f_qexp, theta_qexp, e4_qexp, qs.e6_qexp):
        assert build(60).is_integral()


def test_e4_coefficients():
    e4 = e4_qexp(5)
    assert e4[0] == 1 and e4[1] == 240
    assert e4[2] == 240 * (1 + 8)


def _theta_oracle(prec):
    out = [0] * (prec + 1)
    r = prec + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            n = a * a + a * b + b * b
            if n <= prec:
                out[n] += 1
    return out


def test_theta_coefficients():
    th = theta_qexp(12)
    assert [th[0], th[1], th[3]] == [1, 6, 6]
    assert th[2] == 0
    assert th[4] == 6
    assert coeffs(th) == _theta_oracle(12)


# --- U, q -> -q, decomposition -------------------------------------------

def test_u_extracts_even_coefficients():
    s = QSeries([0, 1, 1, 1, 1], 4)
    assert coeffs(u_on_qexp(s)) == [0, 1, 1]
    assert u_on_qexp(s).prec == 2
    assert coeffs(u_on_qexp(QSeries.one(6))) == [1, 0, 0, 0]


def test_u_of_f_is_quadratic_in_f():
    f = f_qexp(80)
    lhs = u_on_qexp(f)
    rhs = f.scale(24) + (f * f).scale(2 ** 11)
    ok, prec = lhs.compare(rhs)
    assert ok and prec == 40


def test_negate_q_examples():
    assert coeffs(negate_q(QSeries([1, 1]))) == [1, -1]
    f = f_qexp(200)
    lhs = negate_q(f) * f
    rhs = -(f.subs(1, 2))
    ok, prec = lhs.compare(rhs)
    assert ok and prec >= 200
    assert (lhs + f.subs(1, 2)).compare(QSeries([0] * 201)) == (True, 200)


def test_decompose_examples():
    f = f_qexp(40)
    assert decompose_in_f(f * f, 3) == FPolynomial({2: 1})
    assert decompose_in_f(u_on_qexp(f_qexp(80)), 2) == FPolynomial({1: 24, 2: 2048})
    x2 = decompose_in_f(u_on_qexp(f_qexp(80) ** 2), 4)
    assert x2[1] == 1 and x2[2] == 1152


def test_decompose_rejects_non_polynomials():
    with pytest.raises(NotAPolynomialError):
        decompose_in_f(delta_qexp(30), 5)


def test_fpolynomial_roundtrip():
    p = FPolynomial({0: 3, 2: -1, 5: Fraction(1, 2)})
    f = f_qexp(30)
    assert decompose_in_f(p.evaluate(f), 5) == p


# --- level one cusp forms --------------------------------------------------

def test_dimension_formula():
    assert [cusp_form_dimension(k) for k in (12, 14, 16, 24, 26, 36, 38)] == [1, 0, 1, 2, 1, 3, 2]


def test_miller_basis_examples():
    (d,) = miller_basis(12)
    assert d.compare(delta_qexp(d.prec)) == (True, d.prec)
    b26 = miller_basis(26)
    assert len(b26) == 1 and b26[0][1] == 1
    b24 = miller_basis(24)
    assert len(b24) == 2
    assert [b24[0][1], b24[0][2]] == [1, 0]
    assert [b24[1][1], b24[1][2]] == [0, 1]


@pytest.mark.parametrize("k", [12, 16, 24, 36, 48, 100, 122, 240])
def test_miller_basis_is_echelon(k):
    basis = miller_basis(k)
    dim = cusp_form_dimension(k)
    assert len(basis) == dim
    for i, f in enumerate(basis, start=1):
        assert f.is_integral()
        assert [f[n] for n in range(dim + 1)] == [1 if n == i else 0 for n in range(dim + 1)]


def test_miller_basis_rejects_bad_weights():
    for k in (10, 13, 0):
        with pytest.raises(ValueError):
            miller_basis(k)
    with pytest.raises(ValueError):
        miller_basis(24, prec=3)


# --- appendix ----------------------------------------------------------------

def test_theta4_against_e4_first_coefficient():
    th4 = theta_qexp(3) ** 4
    assert th4[1] == 24
    assert e4_qexp(3)[1] - th4[1] == 216 == 8 * 27


@pytest.mark.parametrize("prec", [0, 50])
def test_appendix_identities(prec):
    reports = appendix_identities(prec)
    assert [r.outcome for r in reports] == ["pass", "pass"]


def test_dump_format():
    text = qs.dump_series(qs.named_series("f", 3))
    assert text == "0\t0/1\n1\t1/1\n2\t24/1\n3\t300/1\n"
    with pytest.raises(ValueError):
        qs.named_series("nope", 3)

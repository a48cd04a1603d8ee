from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qforms.qseries import (
    QSeries,
    PrecisionError,
    pk_projection,
    rescale,
    u_operator,
    uk4,
)


def brute_r3(n):
    # oracle: enumerate x in Z^3 with x1^2+x2^2+x3^2 = n
    count = 0
    m = 0
    while m * m <= n:
        m += 1
    for x in range(-m, m + 1):
        for y in range(-m, m + 1):
            z2 = n - x * x - y * y
            if z2 < 0:
                continue
            z = 0
            while z * z < z2:
                z += 1
            if z * z == z2:
                count += 1 if z == 0 else 2
    return count


def theta(prec):
    c = {}
    n = 0
    while n * n < prec:
        c[n * n] = 1 if n == 0 else 2
        n += 1
    return QSeries(c, prec)


def test_add_cancellation():
    a = QSeries({0: 1, 1: 1}, 10)
    b = QSeries({0: -1, 1: 1}, 10)
    assert a + b == QSeries({1: 2}, 10)


def test_add_identity():
    a = QSeries({0: 1, 3: Fraction(2, 7)}, 10)
    assert a + QSeries({}, 10) == a


def test_add_prec_contract():
    a = theta(5)
    b = theta(3)
    assert (a + b).prec == 3


def test_mul_basic():
    one_plus_q = QSeries({0: 1, 1: 1}, 10)
    one_minus_q = QSeries({0: 1, 1: -1}, 10)
    prod = one_plus_q * one_minus_q
    assert prod.coeff(0) == 1 and prod.coeff(1) == 0 and prod.coeff(2) == -1


def test_theta_cubed_counts_three_squares():
    t = theta(40)
    t3 = t * t * t
    for n in range(t3.prec):
        assert t3.coeff(n) == brute_r3(n), n


def test_fractional_grid_mul():
    # eta-like grids: lowest exponent of a den-24 product of 1/24 and 3/24 terms
    a = QSeries({1: 1}, 50, den=24)
    b = QSeries({3: 1}, 50, den=24)
    assert (a * b).coeff(4) == 1


def test_mul_precision_rule():
    a = QSeries({2: 1}, 10)  # lowest exponent 2
    b = QSeries({0: 1}, 6)
    assert (a * b).prec == min(10 + 0, 6 + 2)


def test_u_operator_theta_cubed():
    t3 = theta(200) ** 3
    u = u_operator(t3, 4)
    assert [u.coeff(n) for n in range(4)] == [brute_r3(4 * n) for n in range(4)]
    assert [u.coeff(n) for n in range(4)] == [1, 6, 12, 8]


def test_u_operator_geometric_fixed_point():
    g = QSeries({n: 1 for n in range(20)}, 20)
    assert u_operator(g, 2) == QSeries({n: 1 for n in range(10)}, 10)


def test_u_operator_identity_and_errors():
    f = QSeries({0: 1, 5: 3}, 9)
    assert u_operator(f, 1) == f
    with pytest.raises(ValueError):
        u_operator(QSeries({1: 1}, 5, den=8), 2)


def test_pk_projection():
    f = QSeries({0: 1, 1: 1, 2: 1, 3: 1}, 4)
    assert pk_projection(f, 1) == QSeries({0: 1, 3: 1}, 4)
    assert pk_projection(f, 2) == QSeries({0: 1, 1: 1}, 4)
    assert pk_projection(QSeries({}, 4), 3) == QSeries({}, 4)


def test_uk4_theta_cubed():
    t3 = theta(200) ** 3
    e = uk4(t3, 1)
    assert all(n % 4 in (0, 3) for n in e.support())
    assert e.coeff(3) == brute_r3(12)
    assert uk4(QSeries({0: 1}, 9), 1).coeff(0) == 1


def test_rescale():
    assert rescale(QSeries({0: 1, 1: 1}, 2), 2) == QSeries({0: 1, 2: 1}, 4)
    f = QSeries({0: 2, 3: Fraction(1, 3)}, 7)
    assert rescale(f, 1) == f
    th4 = rescale(theta(10), 4)
    assert th4.prec == 40 and th4.support() == [0, 4, 16, 36]


def test_coeff_out_of_precision():
    f = QSeries({0: 1}, 4)
    with pytest.raises(PrecisionError):
        f.coeff(4)


def test_den_round_trip_identity():
    f = QSeries({0: 1, 2: Fraction(-1, 5)}, 9, den=2)
    assert f.to_den(24).to_den(2) == f


def test_json_round_trip():
    f = QSeries({1: 1, 25: Fraction(-3, 7)}, 100, den=24)
    assert QSeries.from_json(f.to_json()) == f
    d = f.to_json_dict()
    assert d["coeffs"] == [[1, "1"], [25, "-3/7"]]


@st.composite
def qseries_strategy(draw, den=1):
    prec = draw(st.integers(min_value=1, max_value=25))
    n = draw(st.integers(min_value=0, max_value=8))
    coeffs = {}
    for _ in range(n):
        e = draw(st.integers(min_value=0, max_value=prec - 1))
        num = draw(st.integers(min_value=-50, max_value=50))
        den_c = draw(st.integers(min_value=1, max_value=9))
        coeffs[e] = Fraction(num, den_c)
    return QSeries(coeffs, prec, den=den)


@settings(max_examples=120)
@given(qseries_strategy(), qseries_strategy())
def test_mul_commutative(a, b):
    assert a * b == b * a


@settings(max_examples=60)
@given(qseries_strategy(), qseries_strategy(), qseries_strategy())
def test_mul_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    lhs = a * (b + c)
    rhs = a * b + a * c
    assert lhs.agrees_with(rhs, through=min(lhs.prec, rhs.prec))


@settings(max_examples=80)
@given(qseries_strategy(), st.integers(min_value=1, max_value=4), st.integers(min_value=1, max_value=4))
def test_u_operator_composes(f, d1, d2):
    assert u_operator(u_operator(f, d1), d2) == u_operator(f, d1 * d2)


@settings(max_examples=80)
@given(qseries_strategy(den=8))
def test_json_round_trip_property(f):
    assert QSeries.from_json(f.to_json()) == f

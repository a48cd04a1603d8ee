from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qforms import arith
from qforms.arith import (
    FundDecomp,
    bernoulli_number,
    bernoulli_poly,
    cohen_h,
    cohen_rep_r3,
    fund_decomp,
    half_decomp,
    hurwitz_h,
    hurwitz_table,
    is_fundamental,
    kronecker,
    kronecker_any,
    l_value,
    l_value_kronecker,
    moebius,
    r3_table,
    r_m,
    sigma,
    zeta_value,
)


def test_kronecker_special_values_at_small_moduli():
    for r in range(1, 30, 2):
        assert kronecker(-4, r) == (-1) ** ((r - 1) // 2)
    assert kronecker(-4, 3) == -1
    # negative second argument follows the sign rule (a/-1) = sgn(a)
    assert kronecker(-4, -15) == -kronecker(-4, 15)
    assert kronecker(8, -3) == kronecker(8, 3)
    assert kronecker(8, 3) == -1
    for r in range(1, 30, 2):
        assert kronecker(8, r) == (-1) ** ((r * r - 1) // 8)
        assert kronecker(-8, r) == kronecker(-4, r) * kronecker(8, r)
    assert kronecker(-4, 2) == 0
    assert kronecker(8, 2) == 0


def test_kronecker_rejects_non_discriminants():
    with pytest.raises(ValueError):
        kronecker(3, 5)
    with pytest.raises(ValueError):
        kronecker(-6, 5)


@settings(max_examples=200)
@given(st.sampled_from([-3, -4, -8, 5, 8, 12, -20, 21]), st.integers(1, 400), st.integers(1, 400))
def test_kronecker_completely_multiplicative(D, m, n):
    assert kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n)


def test_kronecker_periodic_for_fundamental():
    for D in (-3, -4, -8, 5, 8, -20, 13, -24):
        period = abs(D)
        for n in range(1, 3 * period):
            assert kronecker(D, n) == kronecker(D, n + period)


def test_sigma():
    assert sigma(1, 1) == 1
    assert sigma(1, 6) == 12  # 1+2+3+6
    assert sigma(1, Fraction(3, 2)) == 0
    assert sigma(1, 0) == 0
    assert sigma(3, 4) == 1 + 8 + 64


def test_moebius():
    assert moebius(1) == 1
    assert moebius(4) == 0
    assert moebius(30) == -1  # three prime factors
    assert [moebius(n) for n in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_fund_decomp():
    assert fund_decomp(-4) == FundDecomp(-4, -4, 1)
    assert fund_decomp(-12) == FundDecomp(-12, -3, 2)
    assert fund_decomp(-48) == FundDecomp(-48, -3, 4)
    assert fund_decomp(8) == FundDecomp(8, 8, 1)
    assert fund_decomp(16) == FundDecomp(16, 1, 4)
    with pytest.raises(ValueError):
        fund_decomp(-6)
    with pytest.raises(ValueError):
        fund_decomp(0)


@settings(max_examples=300)
@given(st.integers(-2000, 2000))
def test_fund_decomp_properties(d):
    if d == 0 or d % 4 not in (0, 1):
        return
    dec = fund_decomp(d)
    assert dec.fund * dec.cond**2 == d
    assert is_fundamental(dec.fund)


def test_half_decomp():
    d = half_decomp(3)
    assert (d.fund, d.f, d.f1, d.e) == (-3, 1, 1, 0)
    d = half_decomp(1)
    assert (d.fund, d.f, d.f1, d.e) == (-4, Fraction(1, 2), 1, -1)
    d = half_decomp(12)
    assert (d.fund, d.f, d.f1, d.e) == (-3, 2, 1, 1)
    for n in range(1, 500):
        d = half_decomp(n)
        assert d.fund * d.f**2 == -n
        assert is_fundamental(d.fund)
        assert d.f == Fraction(2) ** d.e * d.f1 and d.f1 % 2 == 1


def test_bernoulli():
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(3) == 0
    assert bernoulli_poly(1, Fraction(1, 2)) == 0  # B_1(x) = x - 1/2
    assert bernoulli_poly(2, 0) == Fraction(1, 6)


def test_zeta_values():
    assert zeta_value(1).value == Fraction(-1, 12)
    assert zeta_value(2).value == Fraction(1, 120)  # zeta(-3) = -B_4/4
    assert zeta_value(3).value == Fraction(-1, 252)  # zeta(-5) = -B_6/6


def test_l_values():
    assert l_value(1, -4) == Fraction(1, 2)
    assert l_value(1, -3) == Fraction(1, 3)
    assert l_value(2, 1) == Fraction(-1, 12)  # zeta(-1)
    assert l_value(1, -8) == 1
    with pytest.raises(ValueError):
        l_value(2, 12 * 4)  # 48 is not fundamental


def test_l_value_kronecker_extends_l_value():
    for k in (1, 2, 3):
        for D in (-3, -4, -8, 1, 5, 8, 12, -20):
            if k == 1 and D > 0:
                continue  # B_{1,chi} vanishes for even characters; not needed
            assert l_value_kronecker(k, D) == l_value(k, D)


def test_hurwitz_small_values():
    # oracle: hand enumeration of reduced forms of small discriminant
    expected = {
        0: Fraction(-1, 12),
        3: Fraction(1, 3),
        4: Fraction(1, 2),
        7: 1,
        8: 1,
        11: 1,
        12: Fraction(4, 3),
        15: 2,
        16: Fraction(3, 2),
        19: 1,
        20: 2,
        23: 3,
        24: 2,
        27: Fraction(4, 3),
        1: 0,
        2: 0,
        5: 0,
        6: 0,
    }
    for n, h in expected.items():
        assert hurwitz_h(n) == h, n
    with pytest.raises(ValueError):
        hurwitz_h(-1)


def test_hurwitz_table_matches_pointwise():
    table = hurwitz_table(600)
    for n in range(601):
        assert table[n] == hurwitz_h(n), n


def test_cohen_h_forced_values():
    assert cohen_h(2, 0) == Fraction(1, 120)
    assert cohen_h(1, 3) == Fraction(1, 3)
    assert cohen_h(1, 2) == 0
    assert cohen_h(2, 3) == 0  # (-1)^2*3 = 3 mod 4
    with pytest.raises(ValueError):
        cohen_h(0, 5)


def test_cohen_h_k1_agrees_with_l_value_route():
    # the quadratic-form count against the generalized-Bernoulli formula
    for n in range(1, 400):
        if (-n) % 4 in (2, 3):
            continue
        dec = fund_decomp(-n)
        acc = Fraction(0)
        for d in arith.divisors(dec.cond):
            mu = moebius(d)
            if mu:
                acc += mu * kronecker(dec.fund, d) * sigma(1, dec.cond // d)
        assert hurwitz_h(n) == l_value(1, dec.fund) * acc, n


def test_cohen_h_4n_relation():
    # H(k,4N) = (1 + 2^(2k-1) - (8/((-1)^k N)) 2^(k-1)) H(k,N) for odd conductor N
    for k in (2, 3, 4):
        for n in range(1, 101):
            disc = n if k % 2 == 0 else -n
            if disc % 4 not in (0, 1):
                continue
            if fund_decomp(disc).cond % 2 == 0:
                continue
            lhs = cohen_h(k, 4 * n)
            rhs = (1 + 2 ** (2 * k - 1) - kronecker_any(8, disc) * 2 ** (k - 1)) * cohen_h(k, n)
            assert lhs == rhs, (k, n)


def test_r_m():
    assert r_m(3, 0) == 1
    assert r_m(3, 3) == 8  # (+-1, +-1, +-1)
    assert r_m(3, 1) == 6
    assert r_m(4, 1) == 8
    assert r_m(1, 9) == 2
    for n in range(0, 201):
        assert r_m(3, 4 * n) == r_m(3, n), n


def test_r3_table_matches_r_m():
    table = r3_table(300)
    for n in range(301):
        assert table[n] == r_m(3, n), n


def test_cohen_rep_r3_examples():
    assert cohen_rep_r3(3) == 8
    assert cohen_rep_r3(7) == 0
    assert cohen_rep_r3(4) == r_m(3, 4) == 6
    assert cohen_rep_r3(2) == 12
    assert cohen_rep_r3(27) == 32


def test_r3_class_number_identity_small():
    for n in range(1, 301):
        assert r_m(3, n) == 12 * (hurwitz_h(4 * n) - 2 * hurwitz_h(n)), n

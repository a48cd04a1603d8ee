"""Half-integral weight forms of level 4 and 8 at q-expansion level: theta
powers, Cohen Eisenstein series H_k, the level-8 series H*_{r,k}, the weight
3/2 level-8 series fixed by U_1(4), plus-space support predicates, and the
Hecke operator T(p^2).

A form of weight k + 1/2 carries its integer parameter k, its level, and an
optional plus-space class r in {1, 3, 5, 7} claiming support on exponents
n = 0, 4, -r mod 8 (with (-1)^k = -r mod 4).  Membership in the analytic
spaces is by construction from the named series; only support conditions
are checked computationally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import cohen_h, hurwitz_h, is_prime, kronecker_any, r3_table, zeta_value
from .qseries import QSeries, uk4


@dataclass(frozen=True)
class HalfIntForm:
    """A weight k + 1/2 form of level 4 or 8 as an integer-exponent q-expansion."""

    k: int
    level: int
    series: QSeries
    plus_class: Optional[int] = None

    def __post_init__(self):
        if self.level not in (4, 8):
            raise ValueError("level must be 4 or 8")
        if self.series.den != 1:
            raise ValueError("half-integral forms use integer exponents")
        if self.plus_class is not None and self.plus_class not in (1, 3, 5, 7):
            raise ValueError("plus_class must be in {1, 3, 5, 7}")

    def coeff(self, n: int) -> Fraction:
        return self.series.coeff(n)

    def to_json_dict(self) -> dict:
        d = self.series.to_json_dict()
        d.update({"k": self.k, "level": self.level, "plus_class": self.plus_class})
        return d


def theta(prec: int) -> HalfIntForm:
    """theta = sum over integers of q^(n^2): 1 at 0 and 2 at positive squares."""
    coeffs = {}
    n = 0
    while n * n < prec:
        coeffs[n * n] = 1 if n == 0 else 2
        n += 1
    return HalfIntForm(0, 4, QSeries(coeffs, prec))


def theta_pow(m: int, prec: int) -> HalfIntForm:
    """theta^m; the coefficient at N is the number of ways to write N as an
    ordered sum of m squares.  The weight m/2 is genuinely half-integral only
    for odd m; the k field is (m-1)//2 and is meaningful for odd m only."""
    if m < 1:
        raise ValueError("theta_pow() expects m >= 1")
    base = theta(prec)
    return HalfIntForm((m - 1) // 2, 4, base.series**m)


def cohen_eisenstein(k: int, prec: int) -> HalfIntForm:
    """The level-4 Eisenstein series zeta(1-2k) + sum H(k,N) q^N of weight k+1/2."""
    if k < 1:
        raise ValueError("cohen_eisenstein() expects k >= 1")
    coeffs = {0: zeta_value(k).value}
    for n in range(1, prec):
        coeffs[n] = cohen_h(k, n)
    return HalfIntForm(k, 4, QSeries(coeffs, prec))


def _h_star(r: int, k: int, n: int) -> Fraction:
    """H*_r(k, N) = H(k,N) + (H(k,N) - H(k,4N)) / (2^(k-1) ((8/r) + 2^k)).

    On exponents with (-1)^k N = 2, 3 mod 4 the plus-space support forces the
    coefficient to 0 (the displayed combination of H_k and H_k|U_k(4) has no
    such terms), so the formula is applied only on the supported classes.
    """
    if ((n if k % 2 == 0 else -n) % 4) in (2, 3):
        return Fraction(0)
    hn = cohen_h(k, n)
    h4n = cohen_h(k, 4 * n)
    denom = 2 ** (k - 1) * (kronecker_any(8, r) + 2**k)
    return hn + Fraction(hn - h4n, 1) / denom


def cohen_star(r: int, k: int, prec: int) -> HalfIntForm:
    """The level-8 series zeta(1-2k) + sum H*_r(k,N) q^N with plus class r."""
    if r not in (1, 3, 5, 7):
        raise ValueError("r must be in {1, 3, 5, 7}")
    if k < 1:
        raise ValueError("cohen_star() expects k >= 1")
    if ((-1) ** k) % 4 != (-r) % 4:
        raise ValueError(f"parity mismatch: need (-1)^k = -r mod 4, got k={k}, r={r}")
    coeffs = {0: zeta_value(k).value}
    for n in range(1, prec):
        coeffs[n] = _h_star(r, k, n)
    return HalfIntForm(k, 8, QSeries(coeffs, prec), plus_class=r)


def zagier_hol(prec: int) -> HalfIntForm:
    """The holomorphic part -1/12 + sum H(N) q^N of the weight 3/2 series of
    level 4 (the non-holomorphic completion is not modeled)."""
    coeffs = {0: Fraction(-1, 12)}
    for n in range(1, prec):
        coeffs[n] = hurwitz_h(n)
    return HalfIntForm(1, 4, QSeries(coeffs, prec))


def e_3_2_8(prec: int) -> HalfIntForm:
    """The weight 3/2 level-8 form with constant term 1 and plus class 5,
    realized as theta^3 | U_1(4); the coefficient at N is r_3(N) for
    N = 0, 3 mod 4 (and 0 elsewhere)."""
    table = r3_table(4 * max(prec - 1, 0))
    coeffs = {}
    for n in range(prec):
        if n % 4 in (0, 3):
            coeffs[n] = table[4 * n]
    return HalfIntForm(1, 8, QSeries(coeffs, prec), plus_class=5)


def hecke_t_p2(f: HalfIntForm, p: int) -> HalfIntForm:
    """T(p^2): c(p^2 n) + ((-1)^k n / p) p^(k-1) c(n) + p^(2k-1) c(n/p^2),
    for odd primes p; extended to n = 0 where it gives (1 + p^(2k-1)) c(0)."""
    if p == 2 or not is_prime(p):
        raise ValueError("T(p^2) needs an odd prime")
    k = f.k
    sgn = (-1) ** k
    src = f.series
    pp = p * p
    prec = src.prec // pp
    out: dict[int, Fraction] = {}
    for n in range(prec):
        val = src.coeff(pp * n)
        c_n = src.coeffs.get(n)
        if c_n:
            val += kronecker_any(sgn * n, p) * p ** (k - 1) * c_n
        if n % pp == 0:
            c_dn = src.coeffs.get(n // pp)
            if c_dn:
                val += p ** (2 * k - 1) * c_dn
        if val:
            out[n] = val
    return HalfIntForm(k, f.level, QSeries(out, prec), plus_class=f.plus_class)


def plus_support_check(f: HalfIntForm) -> bool:
    """Do the certified coefficients satisfy the declared support constraints?

    With a plus class r: support inside n = 0, 4, -r mod 8 and the parity
    (-1)^k = -r mod 4.  Without one (level 4): the plus condition
    (-1)^k n = 0, 1 mod 4; theta powers other than theta itself generally
    fail it, which is the expected answer for them.
    """
    if f.plus_class is not None:
        r = f.plus_class
        if ((-1) ** f.k) % 4 != (-r) % 4:
            return False
        allowed = {0, 4, (-r) % 8}
        return all(n % 8 in allowed for n in f.series.support())
    sgn = (-1) ** f.k
    return all((sgn * n) % 4 in (0, 1) for n in f.series.support())


def uk4_eigen_sign(f: HalfIntForm, k: Optional[int] = None) -> Optional[Fraction]:
    """The scalar c with f|U_k(4) = c f on the certified range, or None.

    The parity projection inside U_k(4) uses the form's own k unless an
    override is given.
    """
    if f.series.is_zero():
        raise ValueError("the zero form is an eigenvector of everything")
    kk = f.k if k is None else k
    return f.series.proportionality(uk4(f.series, kk))

"""Eta powers, the level-1 graded ring, eta-type bases eta^s * M_m(1), and
the twisted Hecke operator acting on them.

An eta-type form lives on the 1/8 exponent grid: eta^s = q^(s/24) * P(q)^s
with P(q) = prod(1 - q^n), and for s in {3, 9, 15, 21} all exponents fall on
(s/3 + 8Z)/8.  The Euler product part P is generated by the pentagonal-number
recurrence, never the raw product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import bernoulli_number, factor, is_prime, kronecker_any
from .qseries import QSeries

ETA_POWERS = (3, 9, 15, 21)


def euler_product_part(prec: int) -> list[int]:
    """Coefficients of P(q) = prod_{n>=1} (1 - q^n) below prec (pentagonal numbers)."""
    out = [0] * max(prec, 0)
    j = 0
    while True:
        hit = False
        for g in ((3 * j * j - j) // 2, (3 * j * j + j) // 2):
            if g < prec:
                out[g] = (-1) ** j
                hit = True
        if not hit and j > 0:
            break
        j += 1
    return out


def _int_mul(a: list[int], b: list[int], prec: int) -> list[int]:
    out = [0] * prec
    for i, ca in enumerate(a):
        if ca and i < prec:
            top = min(len(b), prec - i)
            for j in range(top):
                cb = b[j]
                if cb:
                    out[i + j] += ca * cb
    return out


def _int_pow(base: list[int], n: int, prec: int) -> list[int]:
    result = None
    b = base[:prec]
    while n:
        if n & 1:
            result = b if result is None else _int_mul(result, b, prec)
        n >>= 1
        if n:
            b = _int_mul(b, b, prec)
    if result is None:
        return [1] + [0] * (prec - 1)
    return result


def eta(prec: int) -> QSeries:
    """Dedekind eta: q^(1/24) prod(1-q^n), on the 1/24 grid below prec."""
    coeffs = {}
    j = 0
    while (6 * j + 1) ** 2 < prec or (6 * j - 1) ** 2 < prec:
        for n in (6 * j + 1, -(6 * j - 1)):
            e = n * n
            if e < prec:
                coeffs[e] = (-1) ** j
        j += 1
    # j = 0 contributes the n = 1 term twice; the dict write is idempotent
    return QSeries(coeffs, prec, den=24)


@dataclass(frozen=True)
class EtaTypeForm:
    """An element of eta^s * M_m(1), stored on the 1/8 exponent grid.

    The weight is m + s/2 = k + 1/2 with k = m + (s-1)//2.  Coefficients are
    supported on numerators n = s/3 mod 8.
    """

    s: int
    m: int
    series: QSeries

    def __post_init__(self):
        if self.s not in ETA_POWERS:
            raise ValueError(f"s must be in {ETA_POWERS}")
        if self.series.den != 8:
            raise ValueError("eta-type forms live on the 1/8 grid")

    @property
    def k(self) -> int:
        return self.m + (self.s - 1) // 2

    def coeff(self, n: int) -> Fraction:
        return self.series.coeff(n)

    def support_class(self) -> int:
        return (self.s // 3) % 8

    def support_ok(self) -> bool:
        cls = self.support_class()
        return all(n % 8 == cls for n in self.series.support())

    def to_json_dict(self) -> dict:
        d = self.series.to_json_dict()
        d.update({"s": self.s, "m": self.m})
        return d


def eta_pow(s: int, prec: int) -> EtaTypeForm:
    """eta^s for s in {3, 9, 15, 21}, certified below prec on the 1/8 grid."""
    if s not in ETA_POWERS:
        raise ValueError(f"s must be in {ETA_POWERS}")
    off = s // 3  # eta^s = q^(off/8) * P(q)^s
    n_int = max((prec - off + 7) // 8, 0)
    part = _int_pow(euler_product_part(n_int), s, n_int) if n_int > 0 else []
    coeffs = {off + 8 * t: c for t, c in enumerate(part) if c}
    return EtaTypeForm(s, 0, QSeries(coeffs, prec, den=8))


def _sigma_table(m: int, nmax: int) -> list[int]:
    out = [0] * (nmax + 1)
    for d in range(1, nmax + 1):
        dm = d**m
        for n in range(d, nmax + 1, d):
            out[n] += dm
    return out


def eisenstein_level1(weight: int, prec: int) -> QSeries:
    """Level-1 Eisenstein series of even weight >= 4, constant term 1."""
    if weight < 4 or weight % 2:
        raise ValueError("level-1 Eisenstein series need even weight >= 4")
    factor_c = Fraction(-2 * weight) / bernoulli_number(weight)
    table = _sigma_table(weight - 1, prec - 1 if prec > 0 else 0)
    coeffs = {0: Fraction(1)}
    for n in range(1, prec):
        coeffs[n] = factor_c * table[n]
    return QSeries(coeffs, prec)


def level1_basis(m: int, prec: int) -> list[QSeries]:
    """Monomial basis E4^a E6^b (4a + 6b = m) of M_m(1); empty when dim is 0."""
    if m < 0 or m % 2 or m == 2:
        return []
    if m == 0:
        return [QSeries({0: 1}, prec)]
    e4 = eisenstein_level1(4, prec)
    e6 = eisenstein_level1(6, prec) if m >= 6 else None
    basis = []
    for b in range(m // 6 + 1):
        rem = m - 6 * b
        if rem % 4:
            continue
        a = rem // 4
        mono = QSeries({0: 1}, prec)
        for _ in range(a):
            mono = mono * e4
        for _ in range(b):
            mono = mono * e6
        basis.append(mono)
    return basis


def eta_type_basis(s: int, m: int, prec: int) -> list[EtaTypeForm]:
    """Basis eta^s * (monomial basis of M_m(1)) of the eta-type space."""
    lvl1 = level1_basis(m, max((prec + 7) // 8, 1))
    if not lvl1:
        return []
    es = eta_pow(s, prec)
    return [EtaTypeForm(s, m, es.series * f) for f in lvl1]


def twisted_hecke(f: EtaTypeForm, p: int) -> EtaTypeForm:
    """The twisted operator: (-4/p) * { c(p^2 n) + ((-1)^k n / p) p^(k-1) c(n)
    + p^(2k-1) c(n/p^2) } at q^(n/8), for odd primes p."""
    if p == 2 or not is_prime(p):
        raise ValueError("the twisted Hecke operator needs an odd prime")
    k = f.k
    sgn = (-1) ** k
    tw = kronecker_any(-4, p)
    src = f.series
    prec = src.prec // (p * p)
    out: dict[int, Fraction] = {}
    pp = p * p
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
            out[n] = tw * val
    return EtaTypeForm(f.s, f.m, QSeries(out, prec, den=8))

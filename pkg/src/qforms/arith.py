"""Number-theoretic primitives: Kronecker symbols, divisor sums, Bernoulli
machinery, Dirichlet L-values at non-positive integers, Hurwitz and Cohen
class numbers, and sum-of-squares representation counts.

Everything is exact: values are ints or Fractions throughout.  Class numbers
H(N) are obtained by counting reduced positive-definite binary quadratic
forms, deliberately independent of the L-value formulas they are checked
against.  Memo caches are per-process and keyed by arguments only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt


# -- factorization helpers ---------------------------------------------------


@lru_cache(maxsize=None)
def factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, e), ...) by trial division."""
    if n < 1:
        raise ValueError("factor() expects n >= 1")
    out = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += step
        step = 6 - step  # alternate 5,7,11,13,... (6k+-1)
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factor(n):
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def is_prime(n: int) -> bool:
    return n >= 2 and factor(n) == ((n, 1),)


def moebius(n: int) -> int:
    """Moebius function, 0 on non-squarefree n."""
    if n < 1:
        raise ValueError("moebius() expects n >= 1")
    fs = factor(n)
    if any(e > 1 for _, e in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def sigma(m: int, x) -> Fraction:
    """Divisor power sum sigma_m(x) for positive integers, 0 otherwise.

    Non-integral or non-positive arguments count as 0 by convention, which
    makes expressions like sigma(1, Fraction(n, 2)) meaningful verbatim.
    """
    x = Fraction(x)
    if x <= 0 or x.denominator != 1:
        return Fraction(0)
    n = x.numerator
    total = 1
    for p, e in factor(n):
        total *= sum(p ** (m * i) for i in range(e + 1))
    return Fraction(total)


# -- Kronecker symbol --------------------------------------------------------


def kronecker_any(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    while n % 2 == 0:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            sign = -sign
        n //= 2
    if n == 1:
        return sign
    # Jacobi symbol (a/n) for odd n > 1 via quadratic reciprocity
    a %= n
    result = sign
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for a discriminant D = 0, 1 mod 4."""
    if D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a discriminant (need D = 0, 1 mod 4)")
    return kronecker_any(D, n)


# -- discriminant decompositions ---------------------------------------------


@dataclass(frozen=True)
class FundDecomp:
    """A discriminant split as disc = fund * cond**2 with fund fundamental."""

    disc: int
    fund: int
    cond: int


def is_fundamental(D: int) -> bool:
    """True for fundamental discriminants; D = 1 counts as the trivial one."""
    if D % 4 == 1:
        return all(e == 1 for _, e in factor(abs(D))) if D != 1 else True
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for _, e in factor(abs(m)))
    return False


def fund_decomp(disc: int) -> FundDecomp:
    """Unique factorization disc = D * f**2 with D fundamental, f >= 1."""
    if disc == 0:
        raise ValueError("discriminant 0 has no fundamental decomposition")
    if disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a discriminant (need disc = 0, 1 mod 4)")
    sq = 1
    for p, e in factor(abs(disc)):
        sq *= p ** (e // 2)
    core = disc // (sq * sq)  # squarefree, carries the sign
    if core % 4 == 1:
        D = core
    else:
        D = 4 * core
    f = isqrt(disc // D)
    if D * f * f != disc:
        raise AssertionError(f"fundamental decomposition failed for {disc}")
    return FundDecomp(disc, D, f)


@dataclass(frozen=True)
class HalfDecomp:
    """-N = fund * f**2 with f allowed in (1/2)N; f = 2**e * f1, f1 odd."""

    n: int
    fund: int
    f: Fraction
    f1: int
    e: int


def half_decomp(N: int) -> HalfDecomp:
    """Decompose -N = D f**2 with D fundamental and f half-integral.

    Every N >= 1 works: when -N = 2, 3 mod 4 the decomposition of -4N has
    even conductor shifted down by one power of 2, so e = -1 is possible.
    """
    if N < 1:
        raise ValueError("half_decomp() expects N >= 1")
    if (-N) % 4 in (0, 1):
        dec = fund_decomp(-N)
        f = Fraction(dec.cond)
    else:
        dec = fund_decomp(-4 * N)
        f = Fraction(dec.cond, 2)
    e = 0
    f1 = f
    if f.denominator == 2:
        e = -1
        f1 = f * 2
    else:
        n = f.numerator
        while n % 2 == 0:
            n //= 2
            e += 1
        f1 = Fraction(n)
    return HalfDecomp(N, dec.fund, f, int(f1), e)


# -- Bernoulli numbers, zeta and L-values --------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(k: int) -> Fraction:
    """Bernoulli number B_k (B_1 = -1/2), by the defining recurrence."""
    if k < 0:
        raise ValueError("bernoulli_number() expects k >= 0")
    if k == 0:
        return Fraction(1)
    if k % 2 == 1:
        return Fraction(-1, 2) if k == 1 else Fraction(0)
    acc = Fraction(0)
    for j in range(k):
        acc += comb(k + 1, j) * bernoulli_number(j)
    return -acc / (k + 1)


def bernoulli_poly(k: int, x) -> Fraction:
    """Bernoulli polynomial B_k(x) = sum_j C(k,j) B_j x^(k-j)."""
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli_number(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


@dataclass(frozen=True)
class ZetaValue:
    """The exact rational zeta(1-2k) = -B_{2k}/(2k)."""

    k: int
    value: Fraction


@lru_cache(maxsize=None)
def zeta_value(k: int) -> ZetaValue:
    if k < 1:
        raise ValueError("zeta_value() expects k >= 1")
    return ZetaValue(k, -bernoulli_number(2 * k) / (2 * k))


@lru_cache(maxsize=None)
def l_value_kronecker(k: int, disc: int) -> Fraction:
    """L(1-k, (disc/.)) for any discriminant, via generalized Bernoulli numbers.

    Uses the period |disc| of the Kronecker character:
        B_{k,chi} = sum_j C(k,j) B_j m^(j-1) S_{k-j},  S_t = sum_a chi(a) a^t,
    and L(1-k, chi) = -B_{k,chi}/k.  For non-fundamental disc this is the
    L-series of the (imprimitive) symbol n -> (disc/n) taken literally.
    """
    if k < 1:
        raise ValueError("l_value expects k >= 1")
    m = abs(disc)
    if m == 0:
        raise ValueError("discriminant must be nonzero")
    power_sums = [0] * (k + 1)
    for a in range(1, m + 1):
        chi = kronecker(disc, a)
        if chi:
            at = 1
            for t in range(k + 1):
                power_sums[t] += chi * at
                at *= a
    b = Fraction(0)
    for j in range(k + 1):
        bj = bernoulli_number(j)
        if bj:
            b += comb(k, j) * bj * Fraction(m) ** (j - 1) * power_sums[k - j]
    return -b / k


def l_value(k: int, D: int) -> Fraction:
    """L(1-k, chi_D) = -B_{k,chi_D}/k for a fundamental discriminant D."""
    if not is_fundamental(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    return l_value_kronecker(k, D)


# -- Hurwitz class numbers ----------------------------------------------------


def _hurwitz_weight6(N: int) -> int:
    """Six times H(N) for N > 0 with -N = 0, 1 mod 4, by counting reduced forms.

    Reduced means |b| <= a <= c with b >= 0 whenever |b| = a or a = c;
    (a, 0, a) counts 1/2 and (a, a, a) counts 1/3.
    """
    total = 0
    bmax = isqrt(N // 3)
    b = N % 2
    while b <= bmax:
        m4 = N + b * b
        if m4 % 4 == 0:
            m = m4 // 4
            a = max(b, 1)
            while a * a <= m:
                if m % a == 0:
                    c = m // a
                    if b == 0:
                        total += 3 if a == c else 6
                    elif b == a:
                        total += 2 if a == c else 6
                    elif a == c:
                        total += 6
                    else:
                        total += 12  # (a, b, c) and (a, -b, c) both reduced
                a += 1
        b += 2
    return total


@lru_cache(maxsize=None)
def hurwitz_h(N: int) -> Fraction:
    """Hurwitz class number H(N); H(0) = -1/12, H(N) = 0 for -N = 2, 3 mod 4."""
    if N < 0:
        raise ValueError("hurwitz_h() expects N >= 0")
    if N == 0:
        return Fraction(-1, 12)
    if (-N) % 4 in (2, 3):
        return Fraction(0)
    return Fraction(_hurwitz_weight6(N), 6)


def hurwitz_table(nmax: int) -> list[Fraction]:
    """H(0..nmax) in one sweep over all reduced forms, for bulk verification."""
    six = [0] * (nmax + 1)
    amax = isqrt(nmax // 3) if nmax >= 3 else 0
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            bb = b * b
            cmax = (nmax + bb) // (4 * a)
            for c in range(a, cmax + 1):
                if c == a and b < 0:
                    continue
                N = 4 * a * c - bb
                if N > nmax:
                    break
                if b == 0 and a == c:
                    w = 3
                elif a == b == c:
                    w = 2
                else:
                    w = 6
                six[N] += w
    out = [Fraction(n, 6) for n in six]
    out[0] = Fraction(-1, 12)
    return out


@lru_cache(maxsize=None)
def cohen_h(k: int, N: int) -> Fraction:
    """Cohen's class number H(k, N).

    H(k, 0) = zeta(1-2k); zero unless (-1)^k N = 0, 1 mod 4; otherwise the
    multiplicative formula over the conductor,
        H(k, N) = L(1-k, chi_D) * sum_{d | f} mu(d) (D/d) d^(k-1) sigma_{2k-1}(f/d)
    with (-1)^k N = D f**2.  For k = 1 the quadratic-form count hurwitz_h is
    the single source of truth (the L-value route duplicates it and is kept
    to the test suite as a cross-check).
    """
    if k < 1:
        raise ValueError("cohen_h() expects k >= 1")
    if N < 0:
        raise ValueError("cohen_h() expects N >= 0")
    if k == 1:
        return hurwitz_h(N)
    if N == 0:
        return zeta_value(k).value
    disc = N if k % 2 == 0 else -N
    if disc % 4 not in (0, 1):
        return Fraction(0)
    dec = fund_decomp(disc)
    D, f = dec.fund, dec.cond
    acc = Fraction(0)
    for d in divisors(f):
        mu = moebius(d)
        if mu:
            acc += mu * kronecker(D, d) * d ** (k - 1) * sigma(2 * k - 1, f // d)
    return l_value(k, D) * acc


# -- sums of squares -----------------------------------------------------------


def r_m(m: int, N: int) -> int:
    """Number of ways to write N as an ordered sum of m integer squares."""
    if m < 1:
        raise ValueError("r_m() expects m >= 1")
    if N < 0:
        raise ValueError("r_m() expects N >= 0")
    if m == 1:
        s = isqrt(N)
        if s * s != N:
            return 0
        return 1 if N == 0 else 2
    total = 0
    x = 0
    while x * x <= N:
        sub = r_m(m - 1, N - x * x)
        total += sub if x == 0 else 2 * sub
        x += 1
    return total


def r3_table(nmax: int) -> list[int]:
    """r_3(0..nmax) by exhaustive lattice enumeration (iterated square convolution)."""
    r1 = [0] * (nmax + 1)
    x = 0
    while x * x <= nmax:
        r1[x * x] = 1 if x == 0 else 2
        x += 1
    r2 = [0] * (nmax + 1)
    x = 0
    while x * x <= nmax:
        wx = 1 if x == 0 else 2
        xx = x * x
        for y2 in range(0, nmax - xx + 1):
            if r1[y2]:
                r2[xx + y2] += wx * r1[y2]
        x += 1
    r3 = [0] * (nmax + 1)
    x = 0
    while x * x <= nmax:
        wx = 1 if x == 0 else 2
        xx = x * x
        for y2 in range(0, nmax - xx + 1):
            if r2[y2]:
                r3[xx + y2] += wx * r2[y2]
        x += 1
    return r3


def cohen_rep_r3(N: int) -> int:
    """Closed form for r_3(N): 12 H(|D| f1**2) (1 - (8/D)) with -N = D (2^e f1)^2."""
    if N < 1:
        raise ValueError("cohen_rep_r3() expects N >= 1")
    dec = half_decomp(N)
    val = 12 * hurwitz_h(-dec.fund * dec.f1 * dec.f1) * (1 - kronecker_any(8, dec.fund))
    if val.denominator != 1:
        raise AssertionError(f"non-integral representation count at N={N}")
    return int(val)

"""Integral-weight modular forms of level 1 and 2: Eisenstein series, bases
by monomials in the weight-2 level-2 Eisenstein series and E4, Hecke action,
cusp/new/old splitting by exact rational linear algebra, and Fricke signs.

Forms are q-expansions with exact rational coefficients.  Space dimensions
are never assumed: the monomial generation is certified by a rank check
against the dimension formula, and the cusp space is obtained as the image
of (T(3) - eisenstein eigenvalue), whose rank is checked as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .arith import is_prime, zeta_value
from .etaforms import eisenstein_level1, level1_basis, _sigma_table
from .qseries import QSeries, rescale, u_operator


class RankError(Exception):
    """A computed space failed its dimension certification."""


@dataclass(frozen=True)
class ModForm:
    """A modular form of even integral weight for level 1 or 2, as a q-expansion."""

    weight: int
    level: int
    series: QSeries

    def __post_init__(self):
        if self.level not in (1, 2):
            raise ValueError("only levels 1 and 2 are supported")
        if self.series.den != 1:
            raise ValueError("integral-weight forms use integer exponents")

    @property
    def sturm_bound(self) -> int:
        """Certified-equality bound: weight * [SL2 : Gamma0(level)] / 12."""
        index = 1 if self.level == 1 else 3
        return self.weight * index // 12 + 1

    def coeff(self, n: int) -> Fraction:
        return self.series.coeff(n)

    def to_json_dict(self) -> dict:
        d = self.series.to_json_dict()
        d.update({"weight": self.weight, "level": self.level})
        return d


@dataclass
class EigenRecord:
    """Hecke data of an eigenform: prime -> eigenvalue, plus the Fricke sign.

    For level 2 the entry at p = 2 is the U(2) eigenvalue a(2), not a T(2)
    eigenvalue.  ``charpoly`` is set instead of ``eigenvalues`` when a Hecke
    block does not split over the rationals.
    """

    label: str
    eigenvalues: dict[int, Fraction] = field(default_factory=dict)
    fricke: Optional[int] = None
    charpoly: Optional[tuple[Fraction, ...]] = None


# -- constructors -------------------------------------------------------------


def eisenstein_2k(weight: int, prec: int) -> ModForm:
    """E_{2k} of level 1 with constant term 1, weight >= 4 even."""
    return ModForm(weight, 1, eisenstein_level1(weight, prec))


def g_series(weight: int, prec: int) -> ModForm:
    """The arithmetically normalized Eisenstein series
    zeta(1-2k)/2 + sum sigma_{2k-1}(n) q^n."""
    if weight < 4 or weight % 2:
        raise ValueError("need even weight >= 4")
    table = _sigma_table(weight - 1, max(prec - 1, 0))
    coeffs: dict[int, Fraction] = {0: zeta_value(weight // 2).value / 2}
    for n in range(1, prec):
        coeffs[n] = Fraction(table[n])
    return ModForm(weight, 1, QSeries(coeffs, prec))


def e2_level2(prec: int) -> ModForm:
    """The weight-2 level-2 Eisenstein series 1 + 24 sum (sigma(n) - 2 sigma(n/2)) q^n.

    This is the holomorphic q-part of twice the rescaled completed weight-2
    series minus itself; the non-holomorphic corrections cancel.
    """
    table = _sigma_table(1, max(prec - 1, 0))
    coeffs: dict[int, Fraction] = {0: Fraction(1)}
    for n in range(1, prec):
        s = table[n] - (2 * table[n // 2] if n % 2 == 0 else 0)
        coeffs[n] = Fraction(24 * s)
    return ModForm(2, 2, QSeries(coeffs, prec))


def m2k_level2_basis(weight: int, prec: int) -> list[ModForm]:
    """Monomials X2^a E4^b (2a + 4b = weight) spanning level-2 forms of the
    given even weight, certified linearly independent up to the Sturm bound."""
    if weight < 2 or weight % 2:
        raise ValueError("need even weight >= 2")
    k = weight // 2
    expected = 1 + k // 2
    x2 = e2_level2(prec).series
    e4 = eisenstein_level1(4, prec) if weight >= 4 else None
    forms = []
    for b in range(k // 2 + 1):
        a = k - 2 * b
        mono = QSeries({0: 1}, prec)
        for _ in range(a):
            mono = mono * x2
        for _ in range(b):
            mono = mono * e4
        forms.append(ModForm(weight, 2, mono))
    sturm = weight * 3 // 12 + 1
    if prec < sturm:
        raise ValueError(f"prec {prec} below the certification bound {sturm}")
    rank = _rank([_vector(f.series, sturm) for f in forms])
    if rank != expected:
        raise RankError(f"monomial span of weight {weight} has rank {rank}, expected {expected}")
    return forms


# -- Hecke action --------------------------------------------------------------


def hecke_tp(f: ModForm, p: int) -> ModForm:
    """T(p) on level 1; on level 2, T(p) for odd p and U(2) (a(2n)) at p = 2."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    src = f.series
    if f.level == 2 and p == 2:
        return ModForm(f.weight, 2, u_operator(src, 2))
    prec = src.prec // p
    pk = p ** (f.weight - 1)
    out: dict[int, Fraction] = {}
    for n in range(prec):
        val = src.coeff(p * n)
        if n % p == 0:
            val += pk * src.coeff(n // p)
        if val:
            out[n] = val
    return ModForm(f.weight, f.level, QSeries(out, prec))


# -- exact linear algebra helpers ----------------------------------------------


def _vector(s: QSeries, length: int) -> list[Fraction]:
    return [s.coeff(n) for n in range(length)]


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    mat = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _rank(rows: list[list[Fraction]]) -> int:
    return len(_rref(rows)[0])


def _solve_coords(basis: list[list[Fraction]], target: list[Fraction]) -> list[Fraction]:
    """Coordinates of target in the span of (independent) basis rows; raises if outside."""
    n = len(basis)
    mat = [basis[i][:] + [Fraction(j == i) for j in range(n)] for i in range(n)]
    red, pivots = _rref(mat)
    coords = [Fraction(0)] * n
    rem = target[:]
    ncols = len(target)
    for row, c in zip(red, pivots):
        if c >= ncols:
            break
        f = rem[c]
        if f:
            for j in range(ncols):
                rem[j] -= f * row[j]
            for j in range(n):
                coords[j] += f * row[ncols + j]
    if any(rem):
        raise ValueError("vector is not in the span")
    return coords


def _charpoly(mat: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial, monic, coefficients low to high (Faddeev-LeVerrier)."""
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = Fraction(1)
    am = m
    for k in range(1, n + 1):
        am = _mat_mul(mat, am)
        ck = -_trace(am) / k
        coeffs[n - k] = ck
        for i in range(n):
            am[i][i] += ck
    return coeffs


def _mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]


def _trace(a):
    return sum(a[i][i] for i in range(len(a)))


def _poly_div(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    """Exact polynomial division (low-to-high coefficients); raises on remainder."""
    num = num[:]
    dn, dd = len(num) - 1, len(den) - 1
    out = [Fraction(0)] * (dn - dd + 1)
    for i in range(dn - dd, -1, -1):
        c = num[i + dd] / den[dd]
        out[i] = c
        if c:
            for j in range(dd + 1):
                num[i + j] -= c * den[j]
    if any(num):
        raise ValueError("polynomial division left a remainder")
    return out


def _rational_roots(poly: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Split a polynomial into rational roots (with multiplicity) and an
    unsplit factor.  Linear and quadratic pieces are solved exactly; higher
    degrees are only deflated by roots found in the quadratic resolution."""
    from math import isqrt

    roots: list[Fraction] = []
    p = poly[:]
    while len(p) > 1:
        while p and p[0] == 0:
            roots.append(Fraction(0))
            p = p[1:]
        if len(p) == 2:
            roots.append(-p[0] / p[1])
            p = [p[1]]
            break
        if len(p) == 3:
            a, b, c = p[2], p[1], p[0]
            disc = b * b - 4 * a * c
            if disc < 0:
                break
            num, den = disc.numerator, disc.denominator
            rn, rd = isqrt(num), isqrt(den)
            if rn * rn != num or rd * rd != den:
                break
            sq = Fraction(rn, rd)
            roots.extend([(-b + sq) / (2 * a), (-b - sq) / (2 * a)])
            p = [p[2]]
            break
        break
    return roots, p


# -- space decomposition --------------------------------------------------------


def _apply_matrix(op: Callable[[QSeries], QSeries], basis: list[QSeries], length: int) -> list[list[Fraction]]:
    """Matrix of op on the span of basis, coordinates row-convention (x -> x A)."""
    vecs = [_vector(b, length) for b in basis]
    rows = []
    for b in basis:
        img = _vector(op(b), length)
        rows.append(_solve_coords(vecs, img))
    return rows


def cusp_basis_level2(weight: int, prec: int) -> list[ModForm]:
    """Basis of the level-2 cusp space as the image of T(3) minus the
    Eisenstein eigenvalue, with rank and constant-term certification."""
    big = 3 * prec
    basis = m2k_level2_basis(weight, big)
    lam = 1 + 3 ** (weight - 1)
    images = []
    for f in basis:
        img = hecke_tp(f, 3).series - f.series.scale(lam)
        images.append(_vector(img, prec))
    red, _ = _rref(images)
    expected = len(basis) - 2
    if len(red) != expected:
        raise RankError(f"cusp space of weight {weight} has rank {len(red)}, expected {expected}")
    out = []
    for row in red:
        if row[0] != 0:
            raise RankError("claimed cusp form has a nonzero constant term")
        out.append(ModForm(weight, 2, QSeries(dict(enumerate(row)), prec)))
    return out


def _level1_cusp_basis(weight: int, prec: int) -> list[QSeries]:
    basis = level1_basis(weight, prec)
    if not basis:
        return []
    red, _ = _rref([_vector(b, prec) for b in basis])
    # cusp forms are the kernel of the constant term; rref puts 1 at q^0 first
    out = []
    for row in red:
        if row[0] == 0:
            out.append(QSeries(dict(enumerate(row)), prec))
    return out


def newform_extract(weight: int, prec: int = 60) -> list[tuple[ModForm, EigenRecord]]:
    """Simultaneous Hecke eigenforms spanning the genuinely-level-2 part of
    the cusp space, normalized to a(1) = 1.

    The old space is spanned by f(q) and f(q^2) over level-1 cusp forms f.
    The new space is cut out as the kernel of the old part of the T(3)
    characteristic polynomial, then split by T(3) with T(5) as tie-break.
    Eigenvalues are read off the normalized q-expansions; blocks that do not
    split over the rationals are returned with their characteristic
    polynomial in the record instead of eigenvalues.
    """
    if weight < 4 or weight % 2:
        raise ValueError("need even weight >= 4")
    prec = max(prec, 20)
    sturm = weight * 3 // 12 + 1
    work = max(prec, 5 * (sturm + 3))
    cusp = cusp_basis_level2(weight, work)
    if not cusp:
        return []
    dim_s = len(cusp)
    vecs = [_vector(f.series, work) for f in cusp]

    lvl1 = _level1_cusp_basis(weight, work)
    old: list[list[Fraction]] = []
    for f in lvl1:
        old.append(_vector(f, work))
        old.append(_vector(rescale(f, 2), work))
    dim_old = _rank(old) if old else 0
    if dim_old != 2 * len(lvl1):
        raise RankError("old space rank mismatch")

    compare = work // 3
    t3 = _apply_matrix(lambda s: _t_odd(s, 3, weight), [f.series for f in cusp], compare)
    chi_s = _charpoly(t3)

    if dim_old:
        old_coords = [_solve_coords(vecs, v) for v in old]
        red_old, _ = _rref(old_coords)
        t3_old = []
        for row in red_old:
            img = [sum(row[i] * t3[i][j] for i in range(dim_s)) for j in range(dim_s)]
            t3_old.append(_solve_coords(red_old, img))
        chi_old = _charpoly(t3_old)
        chi_new = _poly_div(chi_s, chi_old)
    else:
        chi_new = chi_s

    # new space: kernel of chi_new(T3) acting on the cusp space
    mat = _poly_eval_matrix(chi_new, t3)
    new_rows = _kernel(mat)
    dim_new = dim_s - dim_old
    if len(new_rows) != dim_new:
        raise RankError("new space dimension mismatch")
    if not new_rows:
        return []

    return _split_eigenforms(new_rows, t3, vecs, cusp, weight, prec)


def _t_odd(s: QSeries, p: int, weight: int) -> QSeries:
    out: dict[int, Fraction] = {}
    prec = s.prec // p
    pk = p ** (weight - 1)
    for n in range(prec):
        val = s.coeff(p * n)
        if n % p == 0:
            val += pk * s.coeff(n // p)
        if val:
            out[n] = val
    return QSeries(out, prec)


def _poly_eval_matrix(poly: list[Fraction], mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    result = [[Fraction(0)] * n for _ in range(n)]
    power = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in poly:
        if c:
            for i in range(n):
                for j in range(n):
                    result[i][j] += c * power[i][j]
        power = _mat_mul(power, mat)
    return result


def _kernel(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    """Left kernel basis of a square matrix (row convention x -> x M)."""
    n = len(mat)
    cols = len(mat[0]) if mat else 0
    aug = [mat[i][:] + [Fraction(j == i) for j in range(n)] for i in range(n)]
    red, pivots = _rref(aug)
    out = []
    for row, c in zip(red, pivots):
        if c >= cols:
            out.append(row[cols:])
    return out


def _split_eigenforms(new_rows, t3, vecs, cusp, weight, prec):
    dim_s = len(vecs)
    n_new = len(new_rows)
    # restrict T(3) to the new space
    t3_new = []
    for row in new_rows:
        img = [sum(row[i] * t3[i][j] for i in range(dim_s)) for j in range(dim_s)]
        t3_new.append(_solve_coords(new_rows, img))
    chi = _charpoly(t3_new)
    roots, leftover = _rational_roots(chi)
    results: list[tuple[ModForm, EigenRecord]] = []
    if len(leftover) > 1:
        rec = EigenRecord(
            label=f"level2-weight{weight}-block-deg{len(leftover) - 1}",
            charpoly=tuple(chi),
        )
        rep = _combine(new_rows[0], vecs)
        results.append((ModForm(weight, 2, QSeries(dict(enumerate(rep)), len(rep))), rec))
        return results

    seen: set[Fraction] = set()
    for lam in roots:
        if lam in seen:
            continue
        seen.add(lam)
        shifted = [[t3_new[i][j] - (lam if i == j else 0) for j in range(n_new)] for i in range(n_new)]
        eigvecs = _kernel(shifted)
        pieces = [eigvecs] if len(eigvecs) == 1 else _refine_with_t5(eigvecs, new_rows, vecs, cusp, weight)
        for basis_piece in pieces:
            if len(basis_piece) != 1:
                rec = EigenRecord(label=f"level2-weight{weight}-nonsplit-eigenspace", charpoly=tuple(chi))
                rep = _combine(_lift(basis_piece[0], new_rows), vecs)
                results.append((ModForm(weight, 2, QSeries(dict(enumerate(rep)), len(rep))), rec))
                continue
            coords = _lift(basis_piece[0], new_rows)
            series = _combine(coords, vecs)
            a1 = series[1]
            if a1 == 0:
                raise RankError("newform candidate with a(1) = 0")
            norm = [c / a1 for c in series]
            f = ModForm(weight, 2, QSeries(dict(enumerate(norm[:prec])), prec))
            eigs = {p: norm[p] for p in (2, 3, 5, 7, 11, 13) if p < prec}
            rec = EigenRecord(label=f"level2-weight{weight}-newform-a2({eigs[2]})", eigenvalues=eigs)
            half = 2 ** (weight // 2 - 1)
            if abs(eigs[2]) == half:
                rec.fricke = fricke_sign(rec, weight)
            results.append((f, rec))
    results.sort(key=lambda t: str(t[1].label))
    return results


def _refine_with_t5(eigvecs, new_rows, vecs, cusp, weight):
    """Split a multi-dimensional T(3) eigenspace with T(5)."""
    lifted = [_lift(v, new_rows) for v in eigvecs]
    space = [_combine(c, vecs) for c in lifted]
    length = len(space[0]) // 5
    t5 = []
    for s in space:
        qs = QSeries(dict(enumerate(s)), len(s))
        img = _vector(_t_odd(qs, 5, weight), length)
        t5.append(_solve_coords([v[:length] for v in space], img))
    chi = _charpoly(t5)
    roots, leftover = _rational_roots(chi)
    if len(leftover) > 1:
        return [eigvecs]
    pieces = []
    seen = set()
    for lam in roots:
        if lam in seen:
            continue
        seen.add(lam)
        shifted = [[t5[i][j] - (lam if i == j else 0) for j in range(len(t5))] for i in range(len(t5))]
        for v in _kernel(shifted):
            combined = [sum(v[i] * eigvecs[i][j] for i in range(len(eigvecs))) for j in range(len(eigvecs[0]))]
            pieces.append([combined])
    return pieces if pieces else [eigvecs]


def _lift(coords_in_new, new_rows):
    return [sum(coords_in_new[i] * new_rows[i][j] for i in range(len(new_rows))) for j in range(len(new_rows[0]))]


def _combine(coords, vecs):
    return [sum(coords[i] * vecs[i][j] for i in range(len(vecs))) for j in range(len(vecs[0]))]


def fricke_sign(rec: EigenRecord, weight: int) -> int:
    """Sign of the level-2 involution from a(2): eps = (-2^(1-k) a_2) * (-1)^k
    with weight = 2k; a(2) must be +-2^(k-1)."""
    if 2 not in rec.eigenvalues:
        raise ValueError("record has no a(2) eigenvalue")
    a2 = rec.eigenvalues[2]
    k = weight // 2
    if abs(a2) != 2 ** (k - 1):
        raise ValueError(f"a(2) = {a2} is not +-2^(k-1); not a level-2 newform datum")
    c = -Fraction(2) ** (1 - k) * a2
    eps = c * (-1) ** k
    return int(eps)

"""Exact truncated q-expansions on fractional exponent grids.

A :class:`QSeries` stores finitely many rational coefficients on the grid
``(1/den)*Z`` with ``den`` in {1, 2, 8, 24}, together with a certification
bound ``prec``: the coefficient of ``q^(e/den)`` is known exactly for every
numerator ``e < prec``, and absent keys in that range mean zero.  Stored
coefficients are never zero (canonical sparse form) and never sit at or
above ``prec``.

Operations compute the tightest correct bound instead of erroring, so long
pipelines stay composable.  Values are immutable after construction and
safe to share between threads.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Union

ALLOWED_DENS = (1, 2, 8, 24)

Scalar = Union[int, Fraction]


class PrecisionError(Exception):
    """A coefficient outside the certified range was requested."""


def _frac(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QSeries:
    """Sparse exact q-expansion, certified below ``prec`` on the ``1/den`` grid."""

    __slots__ = ("den", "prec", "coeffs")

    def __init__(
        self,
        coeffs: Union[Mapping[int, Scalar], Iterable[tuple[int, Scalar]]] = (),
        prec: int = 0,
        den: int = 1,
    ):
        if den not in ALLOWED_DENS:
            raise ValueError(f"den must be one of {ALLOWED_DENS}, got {den}")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        d: dict[int, Fraction] = {}
        for e, c in items:
            if e >= prec:
                continue  # beyond certification, meaningless to store
            v = _frac(c)
            if v:
                d[int(e)] = v
        self.den = den
        self.prec = int(prec)
        self.coeffs = d

    # -- basic access -----------------------------------------------------

    def coeff(self, e: int) -> Fraction:
        """Coefficient of q^(e/den); zero if absent, error if uncertified."""
        if e >= self.prec:
            raise PrecisionError(f"exponent {e}/{self.den} is at or above prec {self.prec}/{self.den}")
        return self.coeffs.get(e, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        """Nonzero (numerator, coefficient) pairs in ascending exponent order."""
        return sorted(self.coeffs.items())

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def lowest(self) -> int:
        """Smallest supported numerator; equals prec for the zero series."""
        return min(self.coeffs) if self.coeffs else self.prec

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- grid conversion --------------------------------------------------

    def to_den(self, new_den: int) -> "QSeries":
        """Move to another allowed grid; refining is always possible, coarsening
        requires every supported exponent to land on the coarser grid."""
        if new_den not in ALLOWED_DENS:
            raise ValueError(f"den must be one of {ALLOWED_DENS}, got {new_den}")
        if new_den == self.den:
            return self
        if new_den % self.den == 0:
            m = new_den // self.den
            return QSeries({e * m: c for e, c in self.coeffs.items()}, self.prec * m, new_den)
        if self.den % new_den == 0:
            g = self.den // new_den
            if any(e % g for e in self.coeffs):
                raise ValueError(f"series does not live on the 1/{new_den} grid")
            new_prec = -((-self.prec) // g)  # ceil(prec/g)
            return QSeries({e // g: c for e, c in self.coeffs.items()}, new_prec, new_den)
        raise ValueError(f"cannot convert den {self.den} to {new_den}")

    @staticmethod
    def unify(a: "QSeries", b: "QSeries") -> tuple["QSeries", "QSeries"]:
        d = lcm(a.den, b.den)
        return a.to_den(d), b.to_den(d)

    def truncate(self, prec: int) -> "QSeries":
        if prec >= self.prec:
            return self
        return QSeries(self.coeffs, prec, self.den)

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            # scalars are exact everywhere, so they inherit this series' bound
            other = QSeries({0: other}, self.prec, self.den)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries.unify(self, other)
        prec = min(a.prec, b.prec)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QSeries(out, prec, a.den)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.prec, self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "QSeries":
        v = _frac(c)
        if not v:
            return QSeries({}, self.prec, self.den)
        return QSeries({e: v * x for e, x in self.coeffs.items()}, self.prec, self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries.unify(self, other)
        prec = min(a.prec + b.lowest(), b.prec + a.lowest())
        if not a.coeffs or not b.coeffs:
            return QSeries({}, prec, a.den)
        return QSeries(_convolve(a.coeffs, b.coeffs, prec), prec, a.den)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        # constant 1 certified everywhere the base is; squaring keeps prec tight
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return QSeries({0: 1}, self.prec, self.den)
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = QSeries.unify(self, other)
        return a.prec == b.prec and a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    def agrees_with(self, other: "QSeries", through: int | None = None) -> bool:
        """Exact coefficient agreement on the joint certified range.

        ``through`` restricts the comparison to numerators below it (after
        grid unification); it must not exceed the certified range.
        """
        a, b = QSeries.unify(self, other)
        bound = min(a.prec, b.prec)
        if through is not None:
            if through > bound:
                raise PrecisionError(f"requested agreement through {through}, certified only below {bound}")
            bound = through
        for e, c in a.coeffs.items():
            if e < bound and b.coeffs.get(e, Fraction(0)) != c:
                return False
        for e, c in b.coeffs.items():
            if e < bound and a.coeffs.get(e, Fraction(0)) != c:
                return False
        return True

    def proportionality(self, other: "QSeries") -> Fraction | None:
        """Return c with ``other == c*self`` on the joint certified range, else None.

        The zero series is proportional to everything (returns 0 against a
        zero ``other``); a nonzero ``self`` against zero ``other`` gives 0.
        """
        a, b = QSeries.unify(self, other)
        bound = min(a.prec, b.prec)
        ratio = None
        for e in sorted(set(a.coeffs) | set(b.coeffs)):
            if e >= bound:
                continue
            ca, cb = a.coeffs.get(e, Fraction(0)), b.coeffs.get(e, Fraction(0))
            if ca == 0:
                if cb != 0:
                    return None
                continue
            r = cb / ca
            if ratio is None:
                ratio = r
            elif ratio != r:
                return None
        return Fraction(0) if ratio is None else ratio

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "den": self.den,
            "prec": self.prec,
            "coeffs": [[e, str(c)] for e, c in self.items()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json_dict(cls, d: dict) -> "QSeries":
        return cls({int(e): Fraction(c) for e, c in d["coeffs"]}, int(d["prec"]), int(d["den"]))

    @classmethod
    def from_json(cls, s: str) -> "QSeries":
        return cls.from_json_dict(json.loads(s))

    def __repr__(self) -> str:
        terms = self.items()
        shown = ", ".join(f"{c}*q^({e}/{self.den})" for e, c in terms[:6])
        if len(terms) > 6:
            shown += ", ..."
        return f"QSeries({shown or '0'}; prec {self.prec}/{self.den})"


def _convolve(a: dict[int, Fraction], b: dict[int, Fraction], prec: int) -> dict[int, Fraction]:
    """Cauchy product of two sparse coefficient maps, truncated below prec.

    Denominators are cleared first so the inner loop runs on plain ints;
    when both factors are dense on their span the dense list path is used
    (fill ratio above 1/4).
    """
    da = lcm(1, *(c.denominator for c in a.values()))
    db = lcm(1, *(c.denominator for c in b.values()))
    ia = {e: c.numerator * (da // c.denominator) for e, c in a.items()}
    ib = {e: c.numerator * (db // c.denominator) for e, c in b.items()}
    dd = da * db

    lo_a, hi_a = min(ia), max(ia)
    lo_b, hi_b = min(ib), max(ib)
    span_a, span_b = hi_a - lo_a + 1, hi_b - lo_b + 1
    dense = 4 * len(ia) > span_a and 4 * len(ib) > span_b and span_a * span_b > 4096

    out: dict[int, Fraction] = {}
    if dense:
        la = [0] * span_a
        for e, c in ia.items():
            la[e - lo_a] = c
        lb = [0] * span_b
        for e, c in ib.items():
            lb[e - lo_b] = c
        lo = lo_a + lo_b
        acc = [0] * max(prec - lo, 0)
        for i, ca in enumerate(la):
            if not ca:
                continue
            room = prec - lo - i
            if room <= 0:
                break
            for j in range(min(span_b, room)):
                cb = lb[j]
                if cb:
                    acc[i + j] += ca * cb
        for i, v in enumerate(acc):
            if v:
                out[lo + i] = Fraction(v, dd)
        return out

    iacc: dict[int, int] = {}
    bs = sorted(ib.items())
    for ea, ca in sorted(ia.items()):
        limit = prec - ea
        for eb, cb in bs:
            if eb >= limit:
                break
            k = ea + eb
            iacc[k] = iacc.get(k, 0) + ca * cb
    for e, v in iacc.items():
        if v:
            out[e] = Fraction(v, dd)
    return out


# -- named operators on integer-grid series ---------------------------------


def u_operator(f: QSeries, d: int) -> QSeries:
    """U(d): pick every d-th coefficient, (sum a_n q^n)|U(d) = sum a_{dn} q^n."""
    if f.den != 1:
        raise ValueError("U(d) is defined on integer exponent grids only (den = 1)")
    if d < 1:
        raise ValueError("d must be a positive integer")
    if d == 1:
        return f
    return QSeries({e // d: c for e, c in f.coeffs.items() if e % d == 0}, f.prec // d, 1)


def pk_projection(f: QSeries, k: int) -> QSeries:
    """The projection keeping coefficients at n with (-1)^k n = 0, 1 mod 4."""
    if f.den != 1:
        raise ValueError("the parity projection requires den = 1")
    keep = (0, 1) if k % 2 == 0 else (0, 3)
    return QSeries({e: c for e, c in f.coeffs.items() if e % 4 in keep}, f.prec, 1)


def uk4(f: QSeries, k: int) -> QSeries:
    """U(4) followed by the mod-4 parity projection, in that order."""
    return pk_projection(u_operator(f, 4), k)


def rescale(f: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m on the same grid: result coefficient at m*e is f's at e."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return f
    return QSeries({e * m: c for e, c in f.coeffs.items()}, f.prec * m, f.den)

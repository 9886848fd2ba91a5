"""Exact arithmetic in the rational function tower Q(q)(t).

Elements are stored as reduced fractions of polynomials in ``q`` and ``t``
with rational coefficients (sympy's sparse polynomial rings with gmpy ground
types do the gcd work).  The views ``num_coeffs``/``den_coeffs`` present the
same element as a quotient of polynomials in ``t`` over Q(q) with a monic
denominator, which is the form the rest of the package reasons about.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import NamedTuple, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement, field

from .errors import DivisionByZero, ZeroElement

QT, _QF, _TF = field("q,t", QQ)
RING = QT.ring
Q_GEN, T_GEN = RING.gens

INF = math.inf


def _lift(value):
    """Convert ``value`` to an element of QT, or NotImplemented."""
    if isinstance(value, FieldElem):
        return value._f
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return QT(value)
    if isinstance(value, Fraction):
        return QT(QQ(value.numerator, value.denominator))
    if isinstance(value, FracElement) and value.field == QT:
        return value
    return NotImplemented


def _integer_form(f):
    """Primitive integer numerator and denominator, denominator leading in t positive."""
    num, den = f.numer, f.denom
    coeffs = list(num.coeffs()) + list(den.coeffs())
    lcm = reduce(math.lcm, (int(c.denominator) for c in coeffs), 1)
    gcd = reduce(math.gcd, (int(c.numerator) * (lcm // int(c.denominator)) for c in coeffs), 0)
    scale = QQ(lcm, gcd or 1)
    # sign convention: the term of highest t-degree (then q-degree) is positive
    lead = max(den.terms(), key=lambda tc: (tc[0][1], tc[0][0]))[1]
    if lead < 0:
        scale = -scale
    return num * scale, den * scale


class FieldElem:
    """An element of Q(q)(t).

    Instances are immutable; arithmetic returns new, already reduced elements.
    Plain ``int`` and ``fractions.Fraction`` operands are coerced.
    """

    __slots__ = ("_f", "_key")

    def __init__(self, value=0):
        f = _lift(value)
        if f is NotImplemented:
            raise TypeError(f"cannot build a field element from {type(value).__name__}")
        self._f = f
        self._key = None

    @classmethod
    def _wrap(cls, f):
        obj = object.__new__(cls)
        obj._f = f
        obj._key = None
        return obj

    # construction helpers -------------------------------------------------
    @classmethod
    def from_t_coeffs(cls, num: Sequence, den: Sequence = (1,)) -> "FieldElem":
        """Build ``sum(num[i] t^i) / sum(den[j] t^j)`` from constant coefficients."""
        n = sum((FieldElem(c)._f * _TF**i for i, c in enumerate(num)), QT(0))
        d = sum((FieldElem(c)._f * _TF**i for i, c in enumerate(den)), QT(0))
        if not d:
            raise DivisionByZero("zero denominator")
        return cls._wrap(n / d)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else FieldElem._wrap(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else FieldElem._wrap(self._f - o)

    def __rsub__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else FieldElem._wrap(o - self._f)

    def __mul__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else FieldElem._wrap(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by the zero element")
        return FieldElem._wrap(self._f / o)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self._f:
            raise DivisionByZero("division by the zero element")
        return FieldElem._wrap(o / self._f)

    def __neg__(self):
        return FieldElem._wrap(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self._f:
                raise DivisionByZero("negative power of zero")
            return FieldElem._wrap(1 / self._f**(-n))
        return FieldElem._wrap(self._f**n)

    def inverse(self) -> "FieldElem":
        return self**-1

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._f.numer * o.denom == o.numer * self._f.denom

    def __hash__(self):
        return hash(self.key())

    def __bool__(self):
        return bool(self._f.numer)

    def key(self):
        """Canonical hashable representation (integer numerator, denominator)."""
        if self._key is None:
            num, den = _integer_form(self._f)
            self._key = (tuple(sorted(num.terms())), tuple(sorted(den.terms())))
        return self._key

    # structure ------------------------------------------------------------
    @property
    def raw(self):
        """The underlying sympy fraction (read-only use)."""
        return self._f

    def integer_form(self):
        """``(numer, denom)`` as primitive integer polynomials in ``(q, t)``."""
        return _integer_form(self._f)

    def is_zero(self) -> bool:
        return not self._f.numer

    def is_constant(self) -> bool:
        """True when the element lies in Q(q), i.e. does not involve ``t``."""
        return self._f.numer.degree(T_GEN) <= 0 and self._f.denom.degree(T_GEN) <= 0

    def is_rational(self) -> bool:
        return self.is_constant() and self._f.numer.degree(Q_GEN) <= 0 and self._f.denom.degree(Q_GEN) <= 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not a rational number")
        c = QQ(self._f.numer.LC if self._f.numer else 0) / QQ(self._f.denom.LC)
        return Fraction(int(c.numerator), int(c.denominator))

    def numerator(self) -> "FieldElem":
        return FieldElem._wrap(QT(self._f.numer))

    def denominator(self) -> "FieldElem":
        return FieldElem._wrap(QT(self._f.denom))

    def deg_t(self) -> tuple[int, int]:
        """Degrees in ``t`` of numerator and denominator (zero has -1)."""
        n = self._f.numer.degree(T_GEN) if self._f.numer else -1
        return max(n, -1), self._f.denom.degree(T_GEN)

    def num_coeffs(self) -> list["FieldElem"]:
        """Coefficients in ``t`` of the numerator, denominator made monic."""
        lead = _t_coeff_lists(self._f.denom)[-1]
        return [FieldElem._wrap(c / lead) for c in _t_coeff_lists(self._f.numer)] if self else []

    def den_coeffs(self) -> list["FieldElem"]:
        cs = _t_coeff_lists(self._f.denom)
        return [FieldElem._wrap(c / cs[-1]) for c in cs]

    def diff_t(self) -> "FieldElem":
        return FieldElem._wrap(self._f.diff(_TF))

    def __repr__(self):
        from .parser import render
        return f"FieldElem({render(self)!r})"

    def __str__(self):
        from .parser import render
        return render(self)


def _t_coeff_lists(poly) -> list:
    """Coefficients of ``poly`` in ``t`` as elements of QT (constants in q)."""
    if not poly:
        return [QT(0)]
    deg = poly.degree(T_GEN)
    buckets = [dict() for _ in range(deg + 1)]
    for (i, j), c in poly.terms():
        buckets[j][(i, 0)] = c
    return [QT(RING.from_dict(b)) if b else QT(0) for b in buckets]


Q = FieldElem._wrap(_QF)
T = FieldElem._wrap(_TF)
ZERO = FieldElem(0)
ONE = FieldElem(1)


def as_elem(value) -> FieldElem:
    return value if isinstance(value, FieldElem) else FieldElem(value)


def field_ops(x, y, kind: str) -> FieldElem:
    x, y = as_elem(x), as_elem(y)
    if kind == "add":
        return x + y
    if kind == "sub":
        return x - y
    if kind == "mul":
        return x * y
    if kind == "div":
        return x / y
    raise ValueError(f"unknown operation {kind!r}")


# ---------------------------------------------------------------------------
# places and valuations


@dataclass(frozen=True)
class Place:
    """A place of Q(q)(t)/Q(q): ``t = 0``, ``t = oo`` or ``t = alpha``."""

    kind: str
    point: FieldElem | None = None

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def infinity(cls):
        return cls("infinity")

    @classmethod
    def at(cls, alpha):
        alpha = as_elem(alpha)
        if not alpha.is_constant():
            raise ValueError("finite places are only supported at points of Q(q)")
        if alpha.is_zero():
            return cls.zero()
        return cls("point", alpha)

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "infinity":
            return "infinity"
        return str(self.point)


def _poly_order_at(coeffs: list[FieldElem], alpha: FieldElem) -> int:
    """Multiplicity of ``t - alpha`` in the polynomial with the given coefficients."""
    order = 0
    cs = list(coeffs)
    while len(cs) > 1:
        # synthetic division by (t - alpha)
        quot = [ZERO] * (len(cs) - 1)
        acc = ZERO
        for k in range(len(cs) - 1, 0, -1):
            acc = acc * alpha + cs[k]
            quot[k - 1] = acc
        rem = acc * alpha + cs[0]
        if rem:
            break
        order += 1
        cs = quot
    return order


def _low_order(coeffs) -> int:
    return next(i for i, c in enumerate(coeffs) if c)


def valuation(x, place: Place):
    """Order of ``x`` at ``place``; ``math.inf`` for the zero element."""
    x = as_elem(x)
    if x.is_zero():
        return INF
    if place.kind == "infinity":
        dn, dd = x.deg_t()
        return dd - dn
    num, den = x.num_coeffs(), x.den_coeffs()
    if place.kind == "zero":
        return _low_order(num) - _low_order(den)
    return _poly_order_at(num, place.point) - _poly_order_at(den, place.point)


class Laurent(NamedTuple):
    """Truncated expansion ``sum(coeffs[k] * u**(start + k))`` in a uniformizer ``u``."""

    start: int
    coeffs: tuple

    def leading(self) -> FieldElem:
        return self.coeffs[0]

    def coeff(self, exponent: int) -> FieldElem:
        k = exponent - self.start
        if k < 0:
            return ZERO
        if k >= len(self.coeffs):
            raise IndexError(f"exponent {exponent} beyond truncation order")
        return self.coeffs[k]


def _series_div(num: list, den: list, n: int) -> list:
    out = []
    inv0 = den[0].inverse()
    for k in range(n):
        acc = num[k] if k < len(num) else ZERO
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def laurent_expand(x, place: Place, n_terms: int) -> Laurent:
    """First ``n_terms`` coefficients of ``x`` at ``t = 0`` (in t) or at infinity (in 1/t)."""
    x = as_elem(x)
    if x.is_zero():
        raise ZeroElement("the zero element has no Laurent expansion")
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    num, den = x.num_coeffs(), x.den_coeffs()
    if place.kind == "zero":
        a, b = _low_order(num), _low_order(den)
        return Laurent(a - b, tuple(_series_div(num[a:], den[b:], n_terms)))
    if place.kind == "infinity":
        return Laurent(len(den) - len(num), tuple(_series_div(num[::-1], den[::-1], n_terms)))
    raise ValueError("Laurent expansions are only provided at 0 and infinity")


def t_power(k: int) -> FieldElem:
    return T**k


def q_power(k: int) -> FieldElem:
    return Q**k

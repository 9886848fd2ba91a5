"""The field F(Y) obtained by adjoining a generic solution Y of a Riccati equation.

``tau`` acts on F(Y) through the base operator on coefficients and by
``Y -> tau_Y``; when a value ``D_Y`` is supplied, ``D`` extends ``d/dt`` by
``D(Y) = D_Y``.  Everything is an identity between rational functions of
``Y``, so all checks are exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import FracElement, field

from .arith import QT, FieldElem, as_elem
from .errors import DivisionByZero, MissingDY
from .operators import DiffOp, compose

QTY, _QG, _TG, _YG = field("q,t,Y", QQ)
RING_Y = QTY.ring
T_Y = RING_Y.gens[1]
Y_GEN = RING_Y.gens[2]


def _lift(value):
    if isinstance(value, GenElem):
        return value._f
    if isinstance(value, FieldElem):
        f = value.raw
        return QTY(f.numer.set_ring(RING_Y)) / QTY(f.denom.set_ring(RING_Y))
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, int):
        return QTY(value)
    if isinstance(value, Fraction):
        return QTY(QQ(value.numerator, value.denominator))
    if isinstance(value, FracElement) and value.field == QTY:
        return value
    return NotImplemented


class GenElem:
    """An element of F(Y) with F = Q(q)(t)."""

    __slots__ = ("_f",)

    def __init__(self, value=0):
        f = _lift(value)
        if f is NotImplemented:
            raise TypeError(f"cannot build an element of F(Y) from {type(value).__name__}")
        self._f = f

    @classmethod
    def _wrap(cls, f):
        obj = object.__new__(cls)
        obj._f = f
        return obj

    @classmethod
    def from_y_coeffs(cls, num, den=(1,)) -> "GenElem":
        """``sum(num[i] Y^i) / sum(den[j] Y^j)`` with coefficients in F."""
        n = sum((_lift(as_elem(c)) * _YG**i for i, c in enumerate(num)), QTY(0))
        d = sum((_lift(as_elem(c)) * _YG**i for i, c in enumerate(den)), QTY(0))
        if not d:
            raise DivisionByZero("zero denominator")
        return cls._wrap(n / d)

    def __add__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else GenElem._wrap(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else GenElem._wrap(self._f - o)

    def __rsub__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else GenElem._wrap(o - self._f)

    def __mul__(self, other):
        o = _lift(other)
        return NotImplemented if o is NotImplemented else GenElem._wrap(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by the zero element")
        return GenElem._wrap(self._f / o)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        if not self._f:
            raise DivisionByZero("division by the zero element")
        return GenElem._wrap(o / self._f)

    def __neg__(self):
        return GenElem._wrap(-self._f)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / GenElem._wrap(self._f**(-n))
        return GenElem._wrap(self._f**n)

    def __eq__(self, other):
        o = _lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self._f.numer * o.denom == o.numer * self._f.denom

    def __hash__(self):
        return hash((self._f.numer * (1 / self._f.denom.LC), self._f.denom * (1 / self._f.denom.LC)))

    def __bool__(self):
        return bool(self._f.numer)

    @property
    def raw(self):
        return self._f

    def deg_y(self) -> tuple[int, int]:
        n = self._f.numer.degree(Y_GEN) if self._f.numer else -1
        return max(n, -1), self._f.denom.degree(Y_GEN)

    def y_coeffs(self) -> tuple[list[FieldElem], list[FieldElem]]:
        """Numerator and denominator coefficients in ``Y``; denominator made monic."""
        num = _y_coeff_lists(self._f.numer)
        den = _y_coeff_lists(self._f.denom)
        lead = den[-1]
        return [c / lead for c in num], [c / lead for c in den]

    def in_base(self) -> FieldElem | None:
        """The element as a member of F, or None if it involves ``Y``."""
        if self._f.numer.degree(Y_GEN) > 0 or self._f.denom.degree(Y_GEN) > 0:
            return None
        return _to_base(self._f.numer) / _to_base(self._f.denom)

    def __repr__(self):
        num, den = self.y_coeffs()
        return f"GenElem(num={[str(c) for c in num]}, den={[str(c) for c in den]})"


def _to_base(poly) -> FieldElem:
    """A Y-free polynomial of RING_Y as a field element."""
    terms = {(i, j): c for (i, j, k), c in poly.terms()}
    return FieldElem._wrap(QT(QT.ring.from_dict(terms)))


def _y_coeff_lists(poly) -> list[FieldElem]:
    if not poly:
        return [FieldElem(0)]
    deg = poly.degree(Y_GEN)
    buckets = [dict() for _ in range(deg + 1)]
    for (i, j, k), c in poly.terms():
        buckets[k][(i, j, 0)] = c
    return [_to_base(RING_Y.from_dict(b)) if b else FieldElem(0) for b in buckets]


Y = GenElem._wrap(_YG)


def lift(x) -> GenElem:
    return x if isinstance(x, GenElem) else GenElem(x)


def _render_y_poly(coeffs: list[FieldElem]) -> str:
    from .parser import render

    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        negative = render(c).startswith("-")
        text = render(-c if negative else c)
        mono = "" if k == 0 else ("Y" if k == 1 else f"Y^{k}")
        if not mono:
            body = text if " " not in text else f"({text})"
        elif text == "1":
            body = mono
        else:
            body = f"({text})*{mono}"
        if out:
            out.append(f" - {body}" if negative else f" + {body}")
        else:
            out.append(f"-{body}" if negative else body)
    return "".join(out) if out else "0"


def render_y(x: GenElem) -> str:
    """Text for an element of F(Y), written as polynomials in ``Y`` over F."""
    num, den = x.y_coeffs()
    num_s = _render_y_poly(num)
    if len(den) == 1:
        return num_s
    return f"({num_s})/({_render_y_poly(den)})"


@dataclass(frozen=True)
class GenStructure:
    """Base operator plus the images of ``Y`` under ``tau`` and (optionally) ``D``."""

    base_op: DiffOp
    tau_Y: GenElem
    D_Y: GenElem | None = None

    @classmethod
    def from_matrix(cls, op: DiffOp, A, D_Y=None) -> "GenStructure":
        from .mobius import mobius_apply

        return cls(op, mobius_apply(A, Y), None if D_Y is None else lift(D_Y))

    def with_derivation(self, D_Y) -> "GenStructure":
        return GenStructure(self.base_op, self.tau_Y, lift(D_Y))


def _tau_poly(S: GenStructure, poly):
    pn, pd = S.base_op.image_parts(RING_Y)
    n1, d1 = compose(poly, T_Y, pn, pd, RING_Y)
    yn, yd = S.tau_Y.raw.numer, S.tau_Y.raw.denom
    n2, d2 = compose(n1, Y_GEN, yn, yd, RING_Y)
    return QTY(n2) / QTY(d1 * d2)


def ext_tau(S: GenStructure, R) -> GenElem:
    """Apply tau on F(Y): base operator on coefficients, ``Y -> tau_Y``."""
    f = lift(R).raw
    return GenElem._wrap(_tau_poly(S, f.numer) / _tau_poly(S, f.denom))


def ext_tau_n(S: GenStructure, R, n: int) -> GenElem:
    R = lift(R)
    for _ in range(n):
        R = ext_tau(S, R)
    return R


def ext_derive(S: GenStructure, R) -> GenElem:
    """Derivation of F(Y) extending d/dt with ``D(Y) = D_Y``."""
    if S.D_Y is None:
        raise MissingDY("the structure carries no value for D(Y)")
    f = lift(R).raw
    return GenElem._wrap(f.diff(_TG) + f.diff(_YG) * S.D_Y.raw)


def commutation_defect(S: GenStructure) -> GenElem:
    """``D(tau Y) - s*tau(D Y)``; zero exactly when ``D tau = s tau D`` extends to F(Y)."""
    if S.D_Y is None:
        raise MissingDY("the structure carries no value for D(Y)")
    return ext_derive(S, S.tau_Y) - S.base_op.s_factor * ext_tau(S, S.D_Y)

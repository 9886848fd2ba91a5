"""Transforming operators on Q(q)(t) and the derivation d/dt.

Each operator substitutes a fixed ``phi(t)`` for ``t`` and leaves Q(q) alone:

* ``shift:c``    -- ``t -> t + c`` (``c`` in Q(q)),   s = 1
* ``qdilation``  -- ``t -> q*t``,                     s = q
* ``mahler:p``   -- ``t -> t^p`` (``p >= 2``),        s = p*t^(p-1)

``s = dphi/dt`` is the factor in ``D(tau x) = s * tau(D x)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arith import Q, QT, RING, T, T_GEN, FieldElem, as_elem


def compose(poly, var, image_num, image_den, ring):
    """Substitute ``image_num/image_den`` for ``var`` in ``poly``.

    Works on sympy polynomials; returns ``(numerator, denominator)`` where the
    denominator is ``image_den**deg_var(poly)``.
    """
    if not poly:
        return poly, ring.one
    if image_den == ring.one:
        return poly.compose(var, image_num), ring.one
    deg = poly.degree(var)
    idx = ring.gens.index(var)
    buckets = {}
    for monom, c in poly.terms():
        k = monom[idx]
        m = monom[:idx] + (0,) + monom[idx + 1:]
        buckets.setdefault(k, {})[m] = c
    num = ring.zero
    for k, terms in buckets.items():
        num += ring.from_dict(terms) * image_num**k * image_den**(deg - k)
    return num, image_den**deg


@dataclass(frozen=True)
class DiffOp:
    """One of the built-in transforming operators (see module docstring)."""

    kind: str
    shift: FieldElem | None = None
    power: int | None = None
    phi: FieldElem = field(init=False, compare=False, repr=False)
    s_factor: FieldElem = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == "shift":
            c = as_elem(self.shift if self.shift is not None else 1)
            if not c.is_constant():
                raise ValueError("shift amount must lie in Q(q)")
            object.__setattr__(self, "shift", c)
            phi = T + c
        elif self.kind == "qdilation":
            phi = Q * T
        elif self.kind == "mahler":
            if not isinstance(self.power, int) or self.power < 2:
                raise ValueError("Mahler operators need an integer power p >= 2")
            phi = T**self.power
        else:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "s_factor", derive(phi))

    @classmethod
    def qdilation(cls):
        return cls("qdilation")

    @classmethod
    def shift_by(cls, c=1):
        return cls("shift", shift=as_elem(c))

    @classmethod
    def mahler(cls, p: int):
        return cls("mahler", power=p)

    def spec(self) -> str:
        from .parser import render

        if self.kind == "shift":
            return f"shift:{render(self.shift)}"
        if self.kind == "mahler":
            return f"mahler:{self.power}"
        return "qdilation"

    def __str__(self):
        return self.spec()

    def image_parts(self, ring):
        """``phi`` as (numerator, denominator) polynomials of ``ring``."""
        num = self.phi.raw.numer.set_ring(ring)
        den = self.phi.raw.denom.set_ring(ring)
        return num, den


def parse_op(spec: str) -> DiffOp:
    """Parse ``shift:c``, ``qdilation`` or ``mahler:p``."""
    from .parser import parse_elem

    name, _, arg = spec.strip().partition(":")
    name = name.strip().lower()
    if name == "qdilation" and not arg:
        return DiffOp.qdilation()
    if name == "shift":
        return DiffOp.shift_by(parse_elem(arg) if arg else 1)
    if name == "mahler" and arg:
        try:
            p = int(arg)
        except ValueError:
            raise ValueError(f"bad Mahler power {arg!r}") from None
        return DiffOp.mahler(p)
    raise ValueError(f"unknown operator spec {spec!r}; use shift:c, qdilation or mahler:p")


def tau(op: DiffOp, x) -> FieldElem:
    """Apply the transforming operator: substitute ``phi(t)`` for ``t``."""
    f = as_elem(x).raw
    pn, pd = op.image_parts(RING)
    nn, nd = compose(f.numer, T_GEN, pn, pd, RING)
    dn, dd = compose(f.denom, T_GEN, pn, pd, RING)
    return FieldElem._wrap(QT(nn * dd) / QT(dn * nd))


def tau_n(op: DiffOp, x, n: int) -> FieldElem:
    if n < 0:
        raise ValueError("only nonnegative powers of tau are available")
    x = as_elem(x)
    for _ in range(n):
        x = tau(op, x)
    return x


def derive(x) -> FieldElem:
    """d/dt with Q(q) as constants."""
    return as_elem(x).diff_t()


def verify_commutation(op: DiffOp, x) -> bool:
    """Check ``D(tau x) == s * tau(D x)`` exactly."""
    x = as_elem(x)
    return derive(tau(op, x)) - op.s_factor * tau(op, derive(x)) == 0

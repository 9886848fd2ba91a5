"""Shared strategies.

Random elements are produced twice in lockstep: once with the package
arithmetic and once as plain sympy expressions.  The sympy side is the
independent oracle used throughout the tests.
"""
import random

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from driccati.arith import Q, T, FieldElem
from driccati.mobius import Mat2
from driccati.operators import DiffOp

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

q_sym, t_sym = sympy.symbols("q t")

OPERATORS = [DiffOp.shift_by(1), DiffOp.shift_by(Q), DiffOp.qdilation(), DiffOp.mahler(2), DiffOp.mahler(3)]


def sym_phi(op: DiffOp):
    if op.kind == "shift":
        return t_sym + sympy.sympify(str(op.shift).replace("^", "**"))
    if op.kind == "qdilation":
        return q_sym * t_sym
    return t_sym**op.power


def sym_equal(a, b) -> bool:
    return sympy.cancel(sympy.together(a - b)) == 0


def to_sym(x: FieldElem):
    """Sympy expression of an element (through its integer polynomials)."""
    num, den = x.integer_form()
    return (sympy.Poly.from_dict(dict(num.terms()), q_sym, t_sym).as_expr()
            / sympy.Poly.from_dict(dict(den.terms()), q_sym, t_sym).as_expr())


@st.composite
def polys(draw, max_terms=3, max_deg_q=2, max_deg_t=2, nonzero=False):
    """A polynomial as (FieldElem, sympy expression)."""
    n = draw(st.integers(1 if nonzero else 0, max_terms))
    elem, expr = FieldElem(0), sympy.Integer(0)
    for _ in range(n):
        c = draw(st.integers(-4, 4).filter(bool))
        i = draw(st.integers(0, max_deg_q))
        j = draw(st.integers(0, max_deg_t))
        elem = elem + c * Q**i * T**j
        expr = expr + c * q_sym**i * t_sym**j
    if nonzero and not elem:
        elem, expr = elem + 1, expr + 1
    return elem, expr


@st.composite
def elems(draw, nonzero=False, **kw):
    """A rational function as (FieldElem, sympy expression)."""
    n, ne = draw(polys(nonzero=nonzero, **kw))
    d, de = draw(polys(nonzero=True, **kw))
    return n / d, ne / de


def plain_elems(**kw):
    return elems(**kw).map(lambda pair: pair[0])


@st.composite
def matrices(draw, regular=False):
    while True:
        entries = [draw(plain_elems(max_terms=2, max_deg_q=1, max_deg_t=1)) for _ in range(4)]
        A = Mat2(*entries)
        if not regular or A.det():
            return A


def random_elem(rng: random.Random, max_terms=3, deg=2) -> FieldElem:
    """Seeded generator for loops that do not need shrinking."""
    def poly(nonzero):
        p = FieldElem(0)
        for _ in range(rng.randint(1 if nonzero else 0, max_terms)):
            p = p + rng.choice([-3, -2, -1, 1, 2, 3]) * Q**rng.randint(0, deg) * T**rng.randint(0, deg)
        return p if (p or not nonzero) else p + 1

    return poly(False) / poly(True)


def _random_poly(rng, deg, deg_q=2):
    p = FieldElem(0)
    for j in range(rng.randint(0, deg) + 1):
        p = p + rng.choice([-3, -2, -1, 1, 2, 3]) * Q**rng.randint(0, deg_q) * T**j
    return p if p else p + 1


def planted_solution(rng: random.Random) -> FieldElem:
    """A rational g with poles at 0 and on short q-orbits."""
    num = _random_poly(rng, 2)
    den = FieldElem(1)
    for _ in range(rng.randint(0, 2)):
        roll = rng.random()
        a = rng.choice([1, -1, 2]) * Q**rng.randint(0, 3)
        if roll < 0.3:
            den = den * T
        elif roll < 0.6:
            den = den * (T - a) * (T - Q * a)
        else:
            den = den * (T - a)
    return num / den


def planted_operator(rng: random.Random, op=None):
    """(L, g) with L of order <= 3, coefficient degree <= 4 and L(g) = rhs."""
    from driccati.linop import LinearDiffOp

    op = op or DiffOp.qdilation()
    n = rng.randint(1, 3)
    while True:
        cs = tuple(_random_poly(rng, 4) for _ in range(n + 1))
        if cs[0] and cs[-1]:
            break
    g = planted_solution(rng)
    hom = LinearDiffOp(op, cs)
    return LinearDiffOp(op, cs, hom.apply(g)), g

import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from driccati.arith import (
    INF,
    ONE,
    ZERO,
    FieldElem,
    Place,
    Q,
    T,
    field_ops,
    laurent_expand,
    valuation,
)
from driccati.errors import DivisionByZero, ZeroElement
from driccati.parser import parse_elem as P

from conftest import elems, plain_elems, q_sym, sym_equal, t_sym, to_sym


def test_gcd_cancellation():
    assert field_ops(T**2 - 1, T - 1, "div") == T + 1
    assert P("(t^2-1)/(t-1)").key() == (T + 1).key()


def test_inverse_and_difference():
    r = 1 / (Q**3 * T**2)
    assert field_ops(r, Q**3 * T**2, "mul") == ONE
    assert r - 1 / (Q**5 * T**2) == (Q**2 - 1) / (Q**5 * T**2)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_ops(T, 0, "div")
    with pytest.raises(DivisionByZero):
        ZERO**-1
    with pytest.raises(ValueError):
        field_ops(T, T, "pow")


def test_coercions():
    assert T + Fraction(1, 2) == (2 * T + 1) / 2
    assert 3 - T == -(T - 3)
    assert (Fraction(3, 4) * ONE).to_fraction() == Fraction(3, 4)
    with pytest.raises(TypeError):
        FieldElem(1.5)


def test_monic_denominator_view():
    x = (2 * T + 2) / (3 * Q * T**2 - 3 * Q)
    assert x == 2 / (3 * Q * (T - 1))
    den = x.den_coeffs()
    assert den[-1] == 1
    assert [str(c) for c in den] == ["-1", "1"]
    assert [str(c) for c in x.num_coeffs()] == ["2/(3*q)"]


@given(elems(), elems())
def test_field_ops_match_oracle(a, b):
    (x, xe), (y, ye) = a, b
    assert sym_equal(to_sym(x + y), xe + ye)
    assert sym_equal(to_sym(x - y), xe - ye)
    assert sym_equal(to_sym(x * y), xe * ye)
    if y:
        assert sym_equal(to_sym(x / y), xe / ye)


@given(plain_elems())
def test_canonical_form_idempotent(x):
    num, den = x.numerator(), x.denominator()
    again = num / den
    assert again.key() == x.key()
    assert (again * 1).key() == x.key()
    assert P(str(x)).key() == x.key()
    assert hash(again) == hash(x)


# valuations --------------------------------------------------------------


def test_valuation_examples():
    assert valuation(1 / (Q**3 * T**2), Place.infinity()) == 2
    assert valuation(T + 1, Place.zero()) == 0
    assert valuation((T - Q)**3 / T, Place.at(Q)) == 3
    assert valuation(ZERO, Place.zero()) == INF
    assert Place.at(0) == Place.zero()
    with pytest.raises(ValueError):
        Place.at(T)


def _sym_valuation(expr, place):
    """Oracle: order of vanishing via sympy factor multiplicities."""
    num, den = sympy.fraction(sympy.cancel(expr))
    if place.kind == "infinity":
        return sympy.degree(den, t_sym) - sympy.degree(num, t_sym)
    alpha = 0 if place.kind == "zero" else to_sym(place.point)

    def mult(p):
        k = 0
        p = sympy.Poly(p, t_sym)
        lin = sympy.Poly(t_sym - alpha, t_sym)
        while True:
            quo, rem = sympy.div(p, lin)
            if not rem.is_zero:
                return k
            p, k = quo, k + 1

    return mult(num) - mult(den)


PLACES = [Place.zero(), Place.infinity(), Place.at(1), Place.at(Q), Place.at(-Q**2)]


@given(elems(nonzero=True), st.sampled_from(PLACES))
def test_valuation_matches_oracle(a, place):
    x, xe = a
    assert valuation(x, place) == _sym_valuation(xe, place)


@given(plain_elems(nonzero=True), plain_elems(nonzero=True), st.sampled_from(PLACES))
def test_valuation_multiplicative(x, y, place):
    assert valuation(x * y, place) == valuation(x, place) + valuation(y, place)


@given(plain_elems(), plain_elems(), st.sampled_from(PLACES))
def test_valuation_ultrametric(x, y, place):
    assert valuation(x + y, place) >= min(valuation(x, place), valuation(y, place))


# Laurent expansions -------------------------------------------------------


def test_laurent_examples():
    s = laurent_expand(1 / (1 - 1 / T), Place.infinity(), 3)
    assert s.start == 0 and list(s.coeffs) == [1, 1, 1]
    s = laurent_expand(T**2, Place.infinity(), 1)
    assert (s.start, s.leading()) == (-2, 1)
    s = laurent_expand(2 / T, Place.infinity(), 1)
    assert (s.start, s.leading()) == (1, 2)
    assert s.coeff(0) == 0
    with pytest.raises(IndexError):
        s.coeff(5)
    with pytest.raises(ZeroElement):
        laurent_expand(ZERO, Place.zero(), 2)
    with pytest.raises(ValueError):
        laurent_expand(T, Place.at(1), 2)


Q_VALUE = sympy.Rational(101, 7)


def _series_oracle(expr, place, n):
    """Coefficients from sympy's series in the uniformizer, at q = 101/7."""
    u = sympy.Symbol("u")
    sub = sympy.cancel(expr.subs(q_sym, Q_VALUE).subs(t_sym, 1 / u if place.kind == "infinity" else u))
    num, den = sympy.fraction(sub)
    shift = sympy.Poly(den, u).monoms()[-1][0]
    series = sympy.series(sympy.cancel(sub * u**shift), u, 0, n + 8).removeO()
    return {k[0] - shift: c for k, c in sympy.Poly(series, u).as_dict().items()}


@given(elems(nonzero=True, max_deg_t=2), st.sampled_from([Place.zero(), Place.infinity()]))
def test_laurent_matches_series_oracle(a, place):
    x, xe = a
    s = laurent_expand(x, place, 3)
    assert s.leading()
    assert s.start == valuation(x, place)
    oracle = _series_oracle(xe, place, 3)
    for k, c in enumerate(s.coeffs):
        assert to_sym(c).subs(q_sym, Q_VALUE) == oracle.get(s.start + k, 0)


@given(plain_elems(nonzero=True), st.integers(1, 4))
def test_laurent_truncation_error(x, k):
    place = Place.infinity()
    s = laurent_expand(x, place, k)
    approx = sum((c * T**(-(s.start + i)) for i, c in enumerate(s.coeffs)), ZERO)
    assert valuation(x - approx, place) >= s.start + k
    s0 = laurent_expand(x, Place.zero(), k)
    approx0 = sum((c * T**(s0.start + i) for i, c in enumerate(s0.coeffs)), ZERO)
    assert valuation(x - approx0, Place.zero()) >= s0.start + k


def test_q_is_an_indeterminate():
    assert Q**3 != Q**2
    assert (Q**2).is_constant() and not (Q * T).is_constant()
    assert not Q.is_rational() and FieldElem(Fraction(2, 3)).is_rational()
    assert math.isinf(valuation(0, Place.infinity()))

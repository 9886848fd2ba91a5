import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from driccati.arith import ZERO, Q, T
from driccati.operators import DiffOp, derive, parse_op, tau, tau_n, verify_commutation

from conftest import OPERATORS, elems, plain_elems, sym_equal, sym_phi, t_sym, to_sym

R_QAIRY = 1 / (Q**3 * T**2)


def test_tau_examples():
    qd = DiffOp.qdilation()
    assert tau(qd, R_QAIRY) == 1 / (Q**5 * T**2)
    for op in OPERATORS:
        assert tau(op, Q**2 + 3) == Q**2 + 3
    assert tau(DiffOp.mahler(2), T + 1) == T**2 + 1
    for i in range(4):
        assert tau_n(qd, R_QAIRY, i) == 1 / (Q**(2 * i + 3) * T**2)
    assert tau_n(DiffOp.shift_by(1), T, 3) == T + 3
    assert tau_n(qd, R_QAIRY, 0) == R_QAIRY
    with pytest.raises(ValueError):
        tau_n(qd, T, -1)


def test_derive_examples():
    assert derive(R_QAIRY) == -2 / (Q**3 * T**3)
    assert derive(Q**5) == ZERO
    assert derive(T**3 + T) == 3 * T**2 + 1


def test_s_factors():
    assert DiffOp.shift_by(1).s_factor == 1
    assert DiffOp.qdilation().s_factor == Q
    assert DiffOp.mahler(2).s_factor == 2 * T
    assert DiffOp.mahler(3).s_factor == 3 * T**2


def test_commutation_examples():
    assert verify_commutation(DiffOp.qdilation(), T)
    assert verify_commutation(DiffOp.mahler(2), T)
    qd = DiffOp.qdilation()
    lhs = derive(tau(qd, R_QAIRY))
    assert lhs == -2 / (Q**5 * T**3)
    assert lhs == Q * tau(qd, derive(R_QAIRY))


def test_parse_op():
    assert parse_op("qdilation") == DiffOp.qdilation()
    assert parse_op("shift:1") == DiffOp.shift_by(1)
    assert parse_op("shift:q") == DiffOp.shift_by(Q)
    assert parse_op("shift") == DiffOp.shift_by(1)
    assert parse_op("mahler:3") == DiffOp.mahler(3)
    for op in OPERATORS:
        assert parse_op(op.spec()) == op
    for bad in ["mahler:1", "mahler:x", "mahler", "shift:t", "dilation", "qdilation:2"]:
        with pytest.raises(ValueError):
            parse_op(bad)


@given(elems(), st.sampled_from(OPERATORS))
def test_tau_matches_substitution_oracle(a, op):
    x, expr = a
    assert sym_equal(to_sym(tau(op, x)), expr.subs(t_sym, sym_phi(op)))


@given(elems())
def test_derive_matches_oracle(a):
    x, expr = a
    assert sym_equal(to_sym(derive(x)), sympy.diff(expr, t_sym))


@given(plain_elems(), plain_elems(), st.sampled_from(OPERATORS))
def test_tau_is_a_homomorphism(x, y, op):
    assert tau(op, x + y) == tau(op, x) + tau(op, y)
    assert tau(op, x * y) == tau(op, x) * tau(op, y)
    if not tau(op, x):
        assert not x


@given(plain_elems(), plain_elems())
def test_leibniz(x, y):
    assert derive(x * y) == derive(x) * y + x * derive(y)
    assert derive(x + y) == derive(x) + derive(y)


@given(plain_elems(), st.sampled_from(OPERATORS))
def test_commutation_law(x, op):
    assert verify_commutation(op, x)


@given(plain_elems(max_terms=2, max_deg_t=1), st.sampled_from(OPERATORS), st.integers(0, 2), st.integers(0, 2))
def test_tau_n_composes(x, op, a, b):
    assert tau_n(op, x, a + b) == tau_n(op, tau_n(op, x, a), b)

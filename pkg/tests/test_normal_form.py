import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from driccati.arith import ONE, ZERO, Q, T
from driccati.errors import DegenerateInput, WrongForm
from driccati.extension import GenStructure, Y, ext_tau
from driccati.mobius import Mat2, cocycle, eq_residual, gauge, mobius_apply
from driccati.normal_form import MAX_STEPS, FormClass, classify, normalize, step
from driccati.operators import DiffOp
from driccati.parser import parse_matrix

from conftest import OPERATORS, matrices

QD = DiffOp.qdilation()
S1 = DiffOp.shift_by(1)
A_QAIRY = parse_matrix("[[-q*t,1],[1,0]]")


def test_classify_examples():
    assert classify(QD, A_QAIRY) is FormClass.F2
    assert classify(S1, parse_matrix("[[0,t],[1,0]]")) is FormClass.F3
    assert classify(QD, parse_matrix("[[0,q],[1,0]]")) is FormClass.F4
    assert classify(QD, parse_matrix("[[t,t],[t,0]]")) is FormClass.FT
    assert classify(QD, parse_matrix("[[t,1],[q,1]]")) is FormClass.F1
    assert classify(QD, parse_matrix("[[t,1],[0,1]]")) is FormClass.DEGENERATE
    assert classify(QD, parse_matrix("[[t,1],[t,1]]")) is FormClass.DEGENERATE


def test_step_examples():
    P, B = step(QD, A_QAIRY)
    assert P == parse_matrix("[[-q*t,1],[-q*t,0]]")
    assert B == Mat2(ONE, 1 / (Q**3 * T**2), ONE, ZERO).scale(-Q**2 * T)
    P, B = step(S1, parse_matrix("[[0,t],[1,0]]"))
    assert P == parse_matrix("[[1,t],[1,1]]")
    assert B == Mat2(1 / (1 - T), -T**2 / (1 - T), ONE, ZERO)
    assert classify(S1, B) is FormClass.F2
    for bad in ["[[t,1],[t,1]]", "[[0,q],[1,0]]", "[[1,q],[1,0]]"]:
        with pytest.raises(WrongForm):
            step(QD, parse_matrix(bad))


def test_normalize_qairy():
    res = normalize(QD, A_QAIRY)
    assert res.outcome == "tietze"
    assert res.e == -Q**2 * T
    assert res.r == 1 / (Q**3 * T**2)
    assert res.Q == parse_matrix("[[-q*t,1],[-q*t,0]]")
    assert [s.form for s in res.trace] == [FormClass.F2]
    assert (gauge(QD, A_QAIRY, res.Q) - res.tietze_matrix.scale(res.e)).is_zero()


def test_normalize_periodic():
    res = normalize(QD, parse_matrix("[[0,q],[1,0]]"))
    assert res.outcome == "periodic" and res.r == Q
    assert cocycle(QD, res.B, 2).matrix == Mat2(Q, ZERO, ZERO, Q)


def test_normalize_two_steps():
    A = parse_matrix("[[0,t],[1,0]]")
    res = normalize(S1, A)
    assert [s.form for s in res.trace] == [FormClass.F3, FormClass.F2]
    assert classify(S1, res.trace[-1].result) is FormClass.FT
    assert gauge(S1, A, res.Q) == res.tietze_matrix.scale(res.e)


def test_normalize_from_f1():
    A = parse_matrix("[[t,1],[q,1]]")
    res = normalize(QD, A)
    assert res.trace[0].form is FormClass.F1
    assert gauge(QD, A, res.Q) == res.tietze_matrix.scale(res.e)


def test_normalize_rejects_degenerate():
    with pytest.raises(DegenerateInput):
        normalize(QD, parse_matrix("[[t,1],[t,1]]"))
    with pytest.raises(DegenerateInput):
        normalize(QD, parse_matrix("[[t,1],[0,1]]"))


@given(matrices(regular=True), st.sampled_from(OPERATORS))
def test_normalize_properties(A, op):
    assume(A.c)
    res = normalize(op, A)
    assert len(res.trace) <= MAX_STEPS
    det = A.det()
    for s in res.trace:
        assert s.P.det()
        assert s.result.det()
        assert det
    if res.outcome == "tietze":
        assert res.e and res.r
        assert (gauge(op, A, res.Q) - res.tietze_matrix.scale(res.e)).is_zero()
        # the transported generic solution solves the Tietze-form equation
        S = GenStructure.from_matrix(op, A)
        g = mobius_apply(res.Q, Y)
        assert eq_residual(op, ext_tau(S, g), res.tietze_matrix, 1, g) == 0
    else:
        assert cocycle(op, res.B, 2).matrix == Mat2(res.r, ZERO, ZERO, res.r)


@given(st.sampled_from(OPERATORS), st.integers(-3, 3).filter(bool), st.integers(0, 2))
def test_f4_detection_on_constants(op, c, k):
    b = c * Q**k
    assert classify(op, Mat2(ZERO, b, ONE, ZERO)) is FormClass.F4

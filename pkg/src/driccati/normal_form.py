"""Reduction of a Riccati matrix to the Tietze shape ``e*[[1, r], [1, 0]]``.

Matrices are sorted into five shapes:

======  =======================================================
F1      ``c != 0`` (anything invertible not covered below)
F2      ``[[a, b], [1, 0]]`` with ``a != 0``
F3      ``[[0, b], [1, 0]]`` with ``tau(b) != b``
F4      ``[[0, b], [1, 0]]`` with ``tau(b) == b``
FT      ``e*[[1, r], [1, 0]]`` with ``e, r != 0``
======  =======================================================

One gauge step moves F1 to F2/F3/F4, F3 to F2 and F2 to FT, so at most
three steps are ever needed.  F4 is a dead end: the equation then has
period two, ``tau(B) B = b*I``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .arith import ONE, ZERO, FieldElem
from .errors import DegenerateInput, WrongForm
from .mobius import Mat2, cocycle, gauge
from .operators import DiffOp, tau

MAX_STEPS = 3


class FormClass(str, enum.Enum):
    F1 = "F1"
    F2 = "F2"
    F3 = "F3"
    F4 = "F4"
    FT = "FT"
    DEGENERATE = "Degenerate"


def classify(op: DiffOp, A: Mat2) -> FormClass:
    a, b, c, d = A.entries()
    if not A.det():
        return FormClass.DEGENERATE
    if not d and a == c:
        return FormClass.FT
    if c == 1 and not d:
        if a:
            return FormClass.F2
        return FormClass.F4 if tau(op, b) == b else FormClass.F3
    if c:
        return FormClass.F1
    return FormClass.DEGENERATE


def step(op: DiffOp, A: Mat2) -> tuple[Mat2, Mat2]:
    """One reduction step; returns the gauge matrix ``P`` and ``tau(P) A P^-1``."""
    form = classify(op, A)
    a, b, c, d = A.entries()
    if form is FormClass.F1:
        P = Mat2(c, d, ZERO, ONE)
    elif form is FormClass.F2:
        P = Mat2(a, b, a, ZERO)
    elif form is FormClass.F3:
        # tau fixes 1, so tau(b) != b already forces b != 1
        if b == 1:
            raise AssertionError("F3 matrix with b = 1: the reduction matrix would be singular")
        P = Mat2(ONE, b, ONE, ONE)
    else:
        raise WrongForm(f"no reduction step applies to a matrix of form {form.value}")
    return P, gauge(op, A, P)


@dataclass(frozen=True)
class TraceStep:
    form: FormClass
    P: Mat2
    result: Mat2


@dataclass(frozen=True)
class NormalizationResult:
    """Outcome of ``normalize``.

    ``outcome`` is ``"tietze"`` (fields ``e``, ``r``, ``Q`` set and
    ``gauge(A, Q) == e*[[1, r], [1, 0]]``) or ``"periodic"`` (``B`` is the
    reduced F4 matrix and ``r`` its corner entry, ``tau(B) B == r*I``).
    """

    outcome: str
    r: FieldElem
    Q: Mat2
    e: FieldElem | None = None
    B: Mat2 | None = None
    trace: tuple[TraceStep, ...] = field(default=())

    @property
    def tietze_matrix(self) -> Mat2:
        return Mat2(ONE, self.r, ONE, ZERO)


def normalize(op: DiffOp, A: Mat2) -> NormalizationResult:
    form = classify(op, A)
    if form is FormClass.DEGENERATE:
        reason = "determinant is zero" if not A.det() else "lower-left entry c is zero"
        raise DegenerateInput(reason)
    Q = Mat2.identity()
    trace = []
    current = A
    steps = 0
    while form not in (FormClass.FT, FormClass.F4):
        P, current = step(op, current)
        trace.append(TraceStep(form, P, current))
        Q = P @ Q
        steps += 1
        form = classify(op, current)
        assert steps <= MAX_STEPS, "reduction did not terminate"
        assert form is not FormClass.F1, "reduced matrix re-entered F1"
    if form is FormClass.F4:
        r = current.b
        assert cocycle(op, current, 2).matrix == Mat2(r, ZERO, ZERO, r)
        return NormalizationResult("periodic", r=r, Q=Q, B=current, trace=tuple(trace))
    e, r = current.c, current.b / current.c
    assert gauge(op, A, Q) == Mat2(e, e * r, e, ZERO)
    return NormalizationResult("tietze", r=r, Q=Q, e=e, trace=tuple(trace))

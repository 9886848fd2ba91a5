"""Exact tests for differential transcendence of solutions of difference Riccati equations.

Pipeline: a 2x2 matrix ``A`` over Q(q)(t) and a transforming operator are
gauge-reduced to the Tietze form ``tau(y) = 1 + r/y``; ``r`` yields a
third-order linear difference equation whose rational solvability is decided
by the q-difference solver.  No rational solution (plus the hypotheses)
rules out differentially algebraic solutions; a rational solution ``g``
gives a differential Riccati equation ``D(f) + R(f) = 0``.
"""
from .arith import ONE, Q, T, ZERO, FieldElem, Laurent, Place, laurent_expand, valuation
from .criterion import (
    build_criterion,
    build_R,
    hypothesis_check,
    lemma_nullspace_check,
    verify_construction,
)
from .errors import DriccatiError
from .extension import GenElem, GenStructure, Y, commutation_defect, ext_derive, ext_tau
from .linop import LinearDiffOp
from .mobius import Mat2, cocycle, eq_residual, gauge, mobius_apply
from .normal_form import FormClass, classify, normalize
from .operators import DiffOp, derive, parse_op, tau, tau_n, verify_commutation
from .parser import parse_elem, parse_matrix, render
from .solver import (
    indicial_orders,
    replay_certificate,
    solve,
    solve_linear_qdifference,
    universal_denominator,
    verify_solution,
)

__version__ = "0.1.0"

__all__ = [
    "ONE",
    "Q",
    "T",
    "ZERO",
    "FieldElem",
    "Laurent",
    "Place",
    "laurent_expand",
    "valuation",
    "build_criterion",
    "build_R",
    "hypothesis_check",
    "lemma_nullspace_check",
    "verify_construction",
    "DriccatiError",
    "GenElem",
    "GenStructure",
    "Y",
    "commutation_defect",
    "ext_derive",
    "ext_tau",
    "LinearDiffOp",
    "Mat2",
    "cocycle",
    "eq_residual",
    "gauge",
    "mobius_apply",
    "FormClass",
    "classify",
    "normalize",
    "DiffOp",
    "derive",
    "parse_op",
    "tau",
    "tau_n",
    "verify_commutation",
    "parse_elem",
    "parse_matrix",
    "render",
    "indicial_orders",
    "replay_certificate",
    "solve",
    "solve_linear_qdifference",
    "universal_denominator",
    "verify_solution",
]

"""The third-order criterion for a Tietze-form equation ``tau(y) = 1 + r/y``.

If that equation has a differentially algebraic solution (and the standing
hypotheses hold), then ``g`` in Q(q)(t) solves::

    tau^2(s r) tau(s) s tau^3(g) + (tau(r) + 1) tau(s) s tau^2(g)
        - (tau(r) + 1) s tau(g) - r g = -s tau(D(r)/r)

Conversely each such ``g`` yields the quadratic ``R(Y)`` for which
``D(Y) = -R(Y)`` extends ``d/dt`` compatibly with ``tau`` on F(Y).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .arith import FieldElem, Place, T, as_elem, valuation
from .errors import HypothesisNotCertified, ZeroR
from .extension import GenElem, GenStructure, Y, commutation_defect, lift
from .linalg import build_system, echelon, from_kq
from .linop import LinearDiffOp
from .operators import DiffOp, derive, tau, tau_n


def _check_r(r) -> FieldElem:
    r = as_elem(r)
    if not r:
        raise ZeroR("r must be nonzero")
    return r


def build_criterion(op: DiffOp, r) -> LinearDiffOp:
    r = _check_r(r)
    s = op.s_factor
    ts = tau(op, s)
    tr1 = tau(op, r) + 1
    c3 = tau_n(op, s * r, 2) * ts * s
    c2 = tr1 * ts * s
    c1 = -tr1 * s
    c0 = -r
    rhs = -s * tau(op, derive(r) / r)
    return LinearDiffOp(op, (c0, c1, c2, c3), rhs)


def build_R(op: DiffOp, r, g) -> GenElem:
    """``g Y^2 - (tau(s r) s tau^2(g) + s tau(g) - r g + D(r)/r) Y - s r tau(g)``."""
    r = _check_r(r)
    g = as_elem(g)
    s = op.s_factor
    tg = tau(op, g)
    linear = tau(op, s * r) * s * tau(op, tg) + s * tg - r * g + derive(r) / r
    return GenElem.from_y_coeffs([-s * r * tg, -linear, g])


def riccati_structure(op: DiffOp, r, g=None) -> GenStructure:
    """F(Y) with ``tau(Y) = 1 + r/Y`` and, given ``g``, ``D(Y) = -R(Y)``."""
    r = _check_r(r)
    S = GenStructure(op, 1 + r / Y)
    return S if g is None else S.with_derivation(-build_R(op, r, g))


@dataclass(frozen=True)
class ConstructionCheck:
    criterion_residual: FieldElem
    commutation_defect: GenElem

    @property
    def consistent(self) -> bool:
        """The criterion residual vanishing must force the defect to vanish."""
        return bool(self.criterion_residual) or not self.commutation_defect


def verify_construction(op: DiffOp, r, g) -> ConstructionCheck:
    r = _check_r(r)
    residual = build_criterion(op, r).residual(g)
    defect = commutation_defect(riccati_structure(op, r, g))
    return ConstructionCheck(residual, defect)


# ---------------------------------------------------------------------------
# hypotheses

# places left in place by each operator family; positivity of v(r) there
# propagates to every tau^i(r) (shift and q-dilation keep the valuation,
# t -> t^p multiplies it by p)
STABLE_PLACES = {
    "shift": ("infinity",),
    "qdilation": ("infinity", "zero"),
    "mahler": ("infinity", "zero"),
}


@dataclass(frozen=True)
class HypothesisReport:
    r_nonzero: bool
    Dr_nonzero: bool
    Dr: FieldElem | None
    place_witness: Place | None
    witness_order: int | None
    algebraic_solution_hypothesis: str  # "asserted" or "unchecked"
    notes: tuple[str, ...] = field(default=())

    @property
    def certified(self) -> bool:
        """Everything the tool can check holds."""
        return self.r_nonzero and self.Dr_nonzero and self.place_witness is not None

    @property
    def passed(self) -> bool:
        return self.certified and self.algebraic_solution_hypothesis == "asserted"


def hypothesis_check(op: DiffOp, r, assume_no_algebraic_solutions: bool = False) -> HypothesisReport:
    r = as_elem(r)
    assumed = "asserted" if assume_no_algebraic_solutions else "unchecked"
    if not r:
        return HypothesisReport(False, False, None, None, None, assumed, ("r = 0",))
    Dr = derive(r)
    notes = []
    if not Dr:
        notes.append("D(r) = 0")
    witness = order = None
    for name in STABLE_PLACES[op.kind]:
        P = Place.zero() if name == "zero" else Place.infinity()
        v = valuation(r, P)
        if v > 0:
            witness, order = P, v
            break
    if witness is None:
        notes.append("no tau-stable place where r vanishes")
    if not assume_no_algebraic_solutions:
        notes.append("absence of algebraic solutions of every iterate is not verified")
    return HypothesisReport(True, bool(Dr), Dr, witness, order, assumed, tuple(notes))


# ---------------------------------------------------------------------------
# bounded null-space checks of the three auxiliary functional equations


@dataclass(frozen=True)
class NullspaceReport:
    """``only_trivial`` is True when the bounded search finds nothing beyond
    what the functional equation allows (constants / zero / no solution)."""

    lemma: str
    only_trivial: bool
    basis: tuple
    counterexamples: tuple = ()
    unknowns: int = 0


LEMMAS = ("monomial", "homogeneous", "inhomogeneous")
LEMMA_ALIASES = {"L31": "monomial", "L32": "homogeneous", "L33": "inhomogeneous"}


def _tau_monomial(S: GenStructure, j: int, k: int) -> GenElem:
    return lift(tau(S.base_op, T**k)) * S.tau_Y**j


def _span(coords, basis_elems):
    total = GenElem(0)
    for x, b in zip(coords, basis_elems):
        if x:
            total = total + from_kq(x) * b
    return total


def lemma_nullspace_check(op: DiffOp, r, lemma: str, degree_bound: int,
                          alpha=1, gamma: int = 1) -> NullspaceReport:
    """Search the bounded ansatz for solutions of one of the functional equations

    * ``"monomial"``: ``N = alpha Y^lam Y^nu tau(N)``, ``N`` in F[Y] of degree
      ``nu`` exactly divisible by ``Y^lam`` (only constants allowed),
    * ``"homogeneous"``: ``R - alpha (-r/Y^2)^gamma tau(R) = 0`` (only ``R = 0``),
    * ``"inhomogeneous"``: ``S + (r/Y^2) tau(S) + alpha/Y = 0`` (no solution).

    The short names ``L31``, ``L32`` and ``L33`` are accepted as aliases.
    Coefficients range over ``t^k`` and ``Y^j`` with ``|k| <= degree_bound``;
    ``|j| <= degree_bound`` for the last two, ``0 <= j <= degree_bound`` for
    the monomial equation.
    """
    lemma = LEMMA_ALIASES.get(lemma, lemma)
    if lemma not in LEMMAS:
        raise ValueError(f"unknown functional equation {lemma!r}; use one of {', '.join(LEMMAS)}")
    r = _check_r(r)
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    report = hypothesis_check(op, r)
    if report.place_witness is None or not report.Dr_nonzero:
        raise HypothesisNotCertified("r does not satisfy the valuation and D(r) != 0 hypotheses")
    alpha = as_elem(alpha)
    if not alpha:
        raise ValueError("alpha must be nonzero")
    S = GenStructure(op, 1 + r / Y)
    B = degree_bound
    ks = range(-B, B + 1)

    if lemma == "monomial":
        return _check_monomial(S, alpha, B, ks)
    if lemma == "homogeneous":
        if gamma < 1:
            raise ValueError("gamma must be a positive integer")
        factor = alpha * (-r / Y**2)**gamma
        monos = [(j, k) for j in range(-B, B + 1) for k in ks]
        elems = [lift(T**k) * Y**j for j, k in monos]
        cols = [e - factor * _tau_monomial(S, j, k) for e, (j, k) in zip(elems, monos)]
        rows, rhs = build_system(cols, GenElem(0))
        null = echelon(rows, rhs, len(cols)).nullspace()
        basis = tuple(_span(v, elems) for v in null)
        return NullspaceReport("homogeneous", not basis, basis, basis, len(cols))
    if lemma == "inhomogeneous":
        factor = r / Y**2
        monos = [(j, k) for j in range(-B, B + 1) for k in ks]
        elems = [lift(T**k) * Y**j for j, k in monos]
        cols = [e + factor * _tau_monomial(S, j, k) for e, (j, k) in zip(elems, monos)]
        rows, rhs = build_system(cols, -alpha / Y)
        ech = echelon(rows, rhs, len(cols))
        if ech.inconsistent:
            return NullspaceReport("inhomogeneous", True, (), (), len(cols))
        sol = _span(ech.particular(), elems)
        return NullspaceReport("inhomogeneous", False, (sol,), (sol,), len(cols))
    raise AssertionError(lemma)


def _check_monomial(S: GenStructure, alpha: FieldElem, B: int, ks) -> NullspaceReport:
    permitted, bad = [], []
    unknowns = 0
    for nu in range(0, B + 1):
        for lam in range(0, nu + 1):
            monos = [(j, k) for j in range(lam, nu + 1) for k in ks]
            elems = [lift(T**k) * Y**j for j, k in monos]
            shift = alpha * Y**(lam + nu)
            cols = [e - shift * _tau_monomial(S, j, k) for e, (j, k) in zip(elems, monos)]
            unknowns += len(cols)
            rows, rhs = build_system(cols, GenElem(0))
            null = echelon(rows, rhs, len(cols)).nullspace()
            if not null:
                continue
            top = [i for i, (j, _) in enumerate(monos) if j == nu]
            low = [i for i, (j, _) in enumerate(monos) if j == lam]
            has_top = any(v[i] for v in null for i in top)
            has_low = any(v[i] for v in null for i in low)
            sols = [_span(v, elems) for v in null]
            if nu == 0:
                permitted.extend(sols)
            elif has_top and has_low:
                bad.extend(sols)
    return NullspaceReport("monomial", not bad, tuple(permitted), tuple(bad), unknowns)

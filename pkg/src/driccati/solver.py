"""Rational solutions of linear difference equations over Q(q)(t).

For the q-dilation ``g(t) -> g(q t)`` the search is complete:

1. pole orders at ``t = 0`` and ``t = oo`` are bounded through the indicial
   polynomials ``sum(gamma_i X^i)`` of the dominant coefficients, whose roots
   of the form ``X = q^k`` are read off from a factorization over Q(q);
2. nonzero finite poles are confined to a universal denominator ``u`` built
   from the q-dispersion of the extreme coefficients (Abramov's scheme with
   ``x + h`` replaced by ``q^h t``);
3. the remaining unknowns ``g = sum(x_k t^k)/u`` form a finite linear system
   over Q(q), solved exactly.

Other operators only get a bounded search over a caller-supplied window of
exponents.  Negative answers come with a certificate that can be replayed.
"""
from __future__ import annotations

from dataclasses import dataclass

from sympy import QQ
from sympy.polys.rings import ring

from .arith import _QF, Q, QT, RING, T, T_GEN, ZERO, FieldElem, Place, laurent_expand, valuation
from .errors import DegenerateOperator, NotQDilation
from .linalg import build_system, echelon, from_kq
from .linop import LinearDiffOp
from .operators import compose

_QX_RING, _QX_Q, _QX_X = ring("q,X", QQ)
Q_GEN = RING.gens[0]


# ---------------------------------------------------------------------------
# small polynomial helpers (sympy polynomials in q, t)


def _t_content(poly):
    by_t = {}
    for (i, j), c in poly.terms():
        by_t.setdefault(j, {})[(i, 0)] = c
    g = RING.zero
    for d in by_t.values():
        g = g.gcd(RING.from_dict(d))
    return g


def _t_primitive(poly):
    """``poly`` divided by its content in Q[q] (leading coefficient made positive)."""
    if not poly or poly.degree(T_GEN) <= 0:
        return RING.one
    prim = poly.exquo(_t_content(poly))
    return -prim if prim.LC < 0 else prim


def _strip_t(poly):
    """Remove every factor ``t`` from ``poly``."""
    low = min(j for (i, j), c in poly.terms())
    return RING.from_dict({(i, j - low): c for (i, j), c in poly.terms()})


def _scale_t(poly, h: int):
    """Primitive part of ``poly(q^h t)``."""
    if h >= 0:
        return _t_primitive(poly.compose(T_GEN, Q_GEN**h * T_GEN))
    num, _ = compose(poly, T_GEN, T_GEN, Q_GEN**(-h), RING)
    return _t_primitive(num)


def _t_coeffs(poly) -> list:
    """Coefficients in t as FieldElem constants."""
    deg = poly.degree(T_GEN)
    buckets = [dict() for _ in range(deg + 1)]
    for (i, j), c in poly.terms():
        buckets[j][(i, 0)] = c
    return [FieldElem._wrap(QT(RING.from_dict(b))) for b in buckets]


def q_power_exponent(x: FieldElem) -> int | None:
    """``e`` if ``x == q**e`` exactly, else None."""
    if not x or not x.is_constant():
        return None
    num, den = x.integer_form()
    if len(num.terms()) != 1 or len(den.terms()) != 1:
        return None
    (mn, cn), = num.terms()
    (md, cd), = den.terms()
    if cn != cd:
        return None
    return mn[0] - md[0]


def integer_q_roots(gammas: dict[int, FieldElem]) -> list[int]:
    """All integers ``k`` with ``sum(gammas[i] * q**(i*k)) == 0``.

    The polynomial ``sum(gammas[i] X^i)`` is factored over Q(q); only linear
    factors can have a root in Q(q), and such a root must be exactly a power
    of ``q``.
    """
    dens = RING.one
    for g in gammas.values():
        dens = dens.lcm(g.raw.denom)
    poly = _QX_RING.zero
    for i, g in gammas.items():
        c = g.raw.numer * dens.exquo(g.raw.denom)
        poly += _QX_RING.from_dict({(a, i): v for (a, b), v in c.terms()})
    roots = set()
    _, factors = poly.factor_list()
    for fac, _ in factors:
        if fac.degree(_QX_X) != 1:
            continue
        a = {(m[0], 0): c for m, c in fac.terms() if m[1] == 1}
        b = {(m[0], 0): c for m, c in fac.terms() if m[1] == 0}
        if not b:
            continue  # root X = 0 is never a power of q
        rho = -FieldElem._wrap(QT(RING.from_dict(b))) / FieldElem._wrap(QT(RING.from_dict(a)))
        e = q_power_exponent(rho)
        if e is not None:
            roots.add(e)
    return sorted(roots)


# ---------------------------------------------------------------------------
# indicial analysis


@dataclass(frozen=True)
class IndicialData:
    """Dominant part of an operator at ``t = 0`` or ``t = oo``.

    ``mu`` is the least valuation of a coefficient, ``gammas`` the leading
    Laurent coefficients of the coefficients attaining it and ``orders`` the
    valuations ``m`` a nonzero homogeneous solution may have there.
    """

    place: str
    mu: int
    gammas: dict
    orders: tuple[int, ...]

    def char_value(self, m: int) -> FieldElem:
        """Indicial polynomial evaluated for a solution of valuation ``m``."""
        sign = 1 if self.place == "zero" else -1
        total = ZERO
        for i, g in self.gammas.items():
            total = total + g * FieldElem._wrap(QT(_q_pow(sign * i * m)))
        return total


def _q_pow(e: int):
    return _QF**e


def _place(name: str) -> Place:
    if name == "zero":
        return Place.zero()
    if name == "infinity":
        return Place.infinity()
    raise ValueError(f"indicial analysis is only available at 'zero' and 'infinity', not {name!r}")


def _require_qdilation(L: LinearDiffOp):
    if L.op.kind != "qdilation":
        raise NotQDilation(f"complete analysis needs the q-dilation, got {L.op.spec()}")


def indicial_data(L: LinearDiffOp, place: str) -> IndicialData:
    _require_qdilation(L)
    P = _place(place)
    vals = {i: valuation(c, P) for i, c in enumerate(L.coeffs) if c}
    mu = min(vals.values())
    gammas = {i: laurent_expand(L.coeffs[i], P, 1).leading() for i, v in vals.items() if v == mu}
    ks = integer_q_roots(gammas)
    orders = tuple(sorted(k if place == "zero" else -k for k in ks))
    return IndicialData(place, mu, gammas, orders)


def indicial_orders(L: LinearDiffOp, place: str) -> set[int]:
    """Possible valuations at ``place`` of nonzero solutions of the homogeneous equation."""
    return set(indicial_data(L, place).orders)


def order_lower_bound(L: LinearDiffOp, place: str) -> tuple[int | None, IndicialData]:
    """Lower bound for the valuation of any solution at ``place`` (None: only ``g = 0``)."""
    data = indicial_data(L, place)
    candidates = list(data.orders)
    if L.rhs:
        candidates.append(valuation(L.rhs, _place(place)) - data.mu)
    return (min(candidates) if candidates else None), data


# ---------------------------------------------------------------------------
# universal denominator


def clear_denominators(L: LinearDiffOp) -> LinearDiffOp:
    """Multiply through so that all coefficients and the rhs are polynomials in t."""
    common = RING.one
    for c in (*L.coeffs, L.rhs):
        common = common.lcm(c.raw.denom)
    return L.scaled(FieldElem._wrap(QT(common)))


def _irreducible_t_factors(poly) -> list:
    _, factors = poly.factor_list()
    return [f for f, _ in factors if f.degree(T_GEN) >= 1 and f != RING(T_GEN)]


def _match_exponent(fa, fb) -> int | None:
    """``h >= 0`` with ``fb(q^h t)`` proportional to ``fa(t)``, if any."""
    if fa.degree(T_GEN) != fb.degree(T_GEN):
        return None
    k = fa.degree(T_GEN)
    ca, cb = _t_coeffs(fa), _t_coeffs(fb)
    ca = [c / ca[-1] for c in ca]
    cb = [c / cb[-1] for c in cb]
    if not ca[0] or not cb[0]:
        return None
    e = q_power_exponent(cb[0] / ca[0])
    if e is None or e % k or e < 0:
        return None
    h = e // k
    if all(cb[j] == ca[j] * Q**(h * (k - j)) for j in range(k + 1)):
        return h
    return None


def dispersion_set(A, B) -> list[int]:
    """Integers ``h >= 0`` with ``gcd(A(t), B(q^h t))`` nonconstant."""
    hs = set()
    fa_list = _irreducible_t_factors(A)
    fb_list = _irreducible_t_factors(B)
    for fa in fa_list:
        for fb in fb_list:
            h = _match_exponent(fa, fb)
            if h is not None:
                hs.add(h)
    return sorted(hs)


def universal_denominator(L: LinearDiffOp) -> FieldElem:
    """A polynomial ``u`` with ``u(0) != 0`` divisible by the nonzero-pole part of
    the denominator of every rational solution."""
    _require_qdilation(L)
    L = clear_denominators(L.trimmed())
    n = L.order
    c0 = L.coeffs[0].raw.numer
    cn = L.coeffs[n].raw.numer
    A = _strip_t(_scale_t(cn, -n)) if cn.degree(T_GEN) > 0 else RING.one
    B = _strip_t(_t_primitive(c0)) if c0.degree(T_GEN) > 0 else RING.one
    u = RING.one
    for h in sorted(dispersion_set(A, B), reverse=True):
        d = _t_primitive(A.gcd(_scale_t(B, h)))
        if d.degree(T_GEN) <= 0:
            continue
        A = A.exquo(d)
        B = B.exquo(_scale_t(d, -h))
        for j in range(h + 1):
            u = u * _scale_t(d, -j)
    return FieldElem._wrap(QT(u))


# ---------------------------------------------------------------------------
# outcomes and certificates


@dataclass(frozen=True)
class ObstructionCert:
    """Why there is no rational solution.

    ``kind`` is ``indicial_infinity``/``indicial_zero`` (every solution has
    valuation at least ``order`` at the place, the indicial polynomial vanishes
    there and the coefficient equation of that order reads ``0 = residual``)
    or ``linear_system`` (the exact system over the certified ansatz
    ``sum(x_k t^k, k=lo..hi)/denominator`` has rank < augmented rank).
    """

    kind: str
    order: int | None = None
    residual: FieldElem | None = None
    rank: int | None = None
    augmented_rank: int | None = None
    window: tuple[int, int] | None = None
    denominator: FieldElem | None = None


@dataclass(frozen=True)
class SolveOutcome:
    status: str  # "solution" or "no_solution"
    g: FieldElem | None = None
    nullspace_basis: tuple[FieldElem, ...] = ()
    certificate: ObstructionCert | None = None
    complete: bool = True
    window: tuple[int, int] | None = None
    denominator: FieldElem | None = None

    @property
    def solvable(self) -> bool:
        return self.status == "solution"

    def contains(self, L: LinearDiffOp, g) -> bool:
        """Whether ``g`` lies in the affine solution set ``g0 + span(nullspace)``."""
        if not self.solvable:
            return False
        diff = FieldElem(g) - self.g
        if not diff:
            return True
        if not self.nullspace_basis:
            return False
        rows, rhs = build_system(list(self.nullspace_basis), diff)
        return not echelon(rows, rhs, len(self.nullspace_basis)).inconsistent


def verify_solution(L: LinearDiffOp, g) -> FieldElem:
    """``sum(c_i tau^i g) - rhs`` by direct substitution."""
    return L.residual(g)


def _window_columns(L: LinearDiffOp, lo: int, hi: int, u: FieldElem):
    basis = [T**k / u for k in range(lo, hi + 1)]
    return basis, [L.apply(b) for b in basis]


def solve_window(L: LinearDiffOp, lo: int, hi: int, denominator=None, complete=False) -> SolveOutcome:
    """Solve exactly over the ansatz ``g = sum(x_k t^k, k = lo..hi) / denominator``."""
    u = FieldElem(1) if denominator is None else FieldElem(denominator)
    if hi < lo:
        if not L.rhs:
            return SolveOutcome("solution", ZERO, (), None, complete, (lo, hi), u)
        cert = ObstructionCert("linear_system", rank=0, augmented_rank=1, window=(lo, hi), denominator=u)
        return SolveOutcome("no_solution", certificate=cert, complete=complete, window=(lo, hi), denominator=u)
    basis, cols = _window_columns(L, lo, hi, u)
    rows, rhs = build_system(cols, L.rhs)
    ech = echelon(rows, rhs, len(cols))
    if ech.inconsistent:
        cert = ObstructionCert("linear_system", rank=ech.rank, augmented_rank=ech.rank + 1,
                               window=(lo, hi), denominator=u)
        return SolveOutcome("no_solution", certificate=cert, complete=complete, window=(lo, hi), denominator=u)

    def combine(vec):
        total = ZERO
        for x, b in zip(vec, basis):
            if x:
                total = total + from_kq(x) * b
        return total

    g = combine(ech.particular())
    null = tuple(combine(v) for v in ech.nullspace())
    return SolveOutcome("solution", g, null, None, complete, (lo, hi), u)


def _indicial_obstruction(L: LinearDiffOp, place: str) -> ObstructionCert | None:
    bound, data = order_lower_bound(L, place)
    if bound is None or not L.rhs or bound not in data.orders:
        return None
    P = _place(place)
    if valuation(L.rhs, P) - data.mu != bound:
        return None
    b_coeff = laurent_expand(L.rhs, P, 1).leading()
    assert not data.char_value(bound)
    return ObstructionCert(f"indicial_{place}", order=bound, residual=-b_coeff)


def solve_linear_qdifference(L: LinearDiffOp) -> SolveOutcome:
    """Complete rational solution set of ``sum(c_i g(q^i t)) = rhs``."""
    _require_qdilation(L)
    L = L.trimmed()
    if len(L.coeffs) == 0 or not L.coeffs[0] or not L.coeffs[-1]:
        raise DegenerateOperator("the extreme coefficients must be nonzero")
    for place in ("infinity", "zero"):
        cert = _indicial_obstruction(L, place)
        if cert is not None:
            return SolveOutcome("no_solution", certificate=cert)
    n0, _ = order_lower_bound(L, "zero")
    m_inf, _ = order_lower_bound(L, "infinity")
    u = universal_denominator(L)
    if n0 is None or m_inf is None:
        lo, hi = 0, -1  # only g = 0 is possible
    else:
        lo, hi = n0, u.deg_t()[0] - m_inf
    outcome = solve_window(L, lo, hi, u, complete=True)
    if outcome.solvable:
        assert not verify_solution(L, outcome.g)
    return outcome


def solve(L: LinearDiffOp, window: tuple[int, int] | None = None) -> SolveOutcome:
    """Complete solve for the q-dilation, bounded Laurent search otherwise."""
    if L.op.kind == "qdilation":
        return solve_linear_qdifference(L)
    lo, hi = window if window is not None else (-3, 3)
    return solve_window(L.trimmed(), lo, hi, complete=False)


def replay_certificate(L: LinearDiffOp, cert: ObstructionCert) -> bool:
    """Recompute the obstruction recorded in ``cert``."""
    if cert.kind.startswith("indicial_"):
        place = cert.kind[len("indicial_"):]
        L = L.trimmed()
        bound, data = order_lower_bound(L, place)
        if bound != cert.order or data.char_value(bound):
            return False
        P = _place(place)
        if valuation(L.rhs, P) - data.mu != bound:
            return False
        return -laurent_expand(L.rhs, P, 1).leading() == cert.residual and bool(cert.residual)
    if cert.kind == "linear_system":
        lo, hi = cert.window
        redo = solve_window(L.trimmed(), lo, hi, cert.denominator)
        if redo.solvable:
            return False
        c = redo.certificate
        return (c.rank, c.augmented_rank) == (cert.rank, cert.augmented_rank)
    raise ValueError(f"unknown certificate kind {cert.kind!r}")

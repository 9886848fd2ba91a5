"""Sparse exact Gaussian elimination over Q(q).

Rows are dicts ``{column: value}``; values are elements of ``KQ`` (sympy's
field Q(q)).  Pivots are chosen in a fixed order (first row, lowest
column), so results are deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

from sympy import QQ
from sympy.polys.fields import field

from .arith import QT, FieldElem

KQ, _KQ_GEN = field("q", QQ)
KQ_RING = KQ.ring


def to_kq(x: FieldElem):
    """A t-free field element as an element of KQ."""
    f = x.raw
    num = KQ_RING.from_dict({(i,): c for (i, j), c in f.numer.terms()})
    den = KQ_RING.from_dict({(i,): c for (i, j), c in f.denom.terms()})
    return KQ(num) / KQ(den)


def from_kq(x) -> FieldElem:
    num = QT.ring.from_dict({(i, 0): c for (i,), c in x.numer.terms()})
    den = QT.ring.from_dict({(i, 0): c for (i,), c in x.denom.terms()})
    return FieldElem._wrap(QT(num) / QT(den))


@dataclass
class Echelon:
    """Row echelon form; each pivot row is scaled to 1 at its (smallest) pivot column."""

    ncols: int
    pivots: dict
    rank: int
    inconsistent: bool

    def particular(self) -> list:
        """One solution with all free variables zero (requires consistency)."""
        x = [KQ(0)] * self.ncols
        for p in sorted(self.pivots, reverse=True):
            row, rhs = self.pivots[p]
            acc = rhs
            for c, v in row.items():
                if c != p:
                    acc -= v * x[c]
            x[p] = acc
        return x

    def nullspace(self) -> list[list]:
        free = [c for c in range(self.ncols) if c not in self.pivots]
        basis = []
        for f in free:
            x = [KQ(0)] * self.ncols
            x[f] = KQ(1)
            for p in sorted(self.pivots, reverse=True):
                row, _ = self.pivots[p]
                acc = KQ(0)
                for c, v in row.items():
                    if c != p:
                        acc -= v * x[c]
                x[p] = acc
            basis.append(x)
        return basis


def echelon(rows: list[dict], rhs: list, ncols: int) -> Echelon:
    pivots: dict[int, tuple[dict, object]] = {}
    inconsistent = False
    for row, b in zip(rows, rhs):
        row = {c: v for c, v in row.items() if v}
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                break
            c = min(hits)
            prow, pb = pivots[c]
            factor = row[c]
            for k, v in prow.items():
                nv = row.get(k, KQ(0)) - factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
            b = b - factor * pb
        if not row:
            if b:
                inconsistent = True
            continue
        p = min(row)
        inv = 1 / row[p]
        pivots[p] = ({k: v * inv for k, v in row.items()}, b * inv)
    return Echelon(ncols, pivots, len(pivots), inconsistent)


def rank_of(rows: list[dict], ncols: int) -> int:
    return echelon(rows, [KQ(0)] * len(rows), ncols).rank


def build_system(columns: list, rhs) -> tuple[list[dict], list]:
    """Coefficient equations of ``sum(x_k * columns[k]) == rhs`` with ``x_k`` in Q(q).

    ``columns`` and ``rhs`` are FieldElem or GenElem values of one field.
    Everything is brought over a common denominator and the coefficients of
    each monomial in the non-q variables are equated.
    """
    fracs = [c.raw for c in columns] + [rhs.raw]
    ring = fracs[0].numer.ring
    common = ring.one
    for f in fracs:
        common = common.lcm(f.denom)
    table: dict[tuple, dict[int, dict]] = {}
    for k, f in enumerate(fracs):
        poly = f.numer * common.exquo(f.denom)
        for monom, c in poly.terms():
            cell = table.setdefault(monom[1:], {}).setdefault(k, {})
            cell[(monom[0],)] = c
    ncols = len(columns)
    rows, rhs_vec = [], []
    for key in sorted(table):
        entries = table[key]
        rows.append({k: KQ(KQ_RING.from_dict(d)) for k, d in entries.items() if k < ncols})
        rhs_vec.append(KQ(KQ_RING.from_dict(entries[ncols])) if ncols in entries else KQ(0))
    return rows, rhs_vec

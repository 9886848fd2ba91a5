"""Inhomogeneous linear difference operators ``sum(c_i tau^i g) = rhs``."""
from __future__ import annotations

from dataclasses import dataclass

from .arith import ZERO, FieldElem, as_elem
from .operators import DiffOp, tau


@dataclass(frozen=True)
class LinearDiffOp:
    op: DiffOp
    coeffs: tuple[FieldElem, ...]
    rhs: FieldElem = ZERO

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(as_elem(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", as_elem(self.rhs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def trimmed(self) -> "LinearDiffOp":
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        return LinearDiffOp(self.op, tuple(cs), self.rhs)

    def apply(self, g) -> FieldElem:
        """``sum(c_i * tau^i(g))`` (the rhs is not subtracted)."""
        g = as_elem(g)
        total = ZERO
        for i, c in enumerate(self.coeffs):
            if i:
                g = tau(self.op, g)
            if c:
                total = total + c * g
        return total

    def residual(self, g) -> FieldElem:
        return self.apply(g) - self.rhs

    def scaled(self, factor) -> "LinearDiffOp":
        factor = as_elem(factor)
        return LinearDiffOp(self.op, tuple(c * factor for c in self.coeffs), self.rhs * factor)

    def homogeneous(self) -> "LinearDiffOp":
        return LinearDiffOp(self.op, self.coeffs, ZERO)

"""2x2 matrices over the base field and the Riccati calculus built on them.

A matrix ``A = [[a, b], [c, d]]`` stands for the difference Riccati equation
``tau(y) = (a*y + b)/(c*y + d)``.  ``cocycle(op, A, i)`` is the product
``tau^(i-1)(A) ... tau(A) A`` that transports a solution ``i`` steps, and
``gauge(op, A, P) = tau(P) A P^-1`` is the matrix of the equation satisfied
by ``P.y``.  Relations are reported as residuals so that callers can test
for exact zero and still look at the defect when it is not.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import ONE, ZERO, as_elem
from .errors import PoleOfTransform, SingularGauge
from .operators import DiffOp, tau


@dataclass(frozen=True)
class Mat2:
    a: object
    b: object
    c: object
    d: object

    @classmethod
    def of(cls, a, b, c, d) -> "Mat2":
        return cls(*(as_elem(e) if isinstance(e, (int, Fraction)) else e for e in (a, b, c, d)))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(ONE, ZERO, ZERO, ONE)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def map(self, fn: Callable) -> "Mat2":
        return Mat2(*(fn(e) for e in self.entries()))

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, k) -> "Mat2":
        return self.map(lambda e: k * e)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(x - y for x, y in zip(self.entries(), other.entries())))

    def det(self):
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        if not det:
            raise SingularGauge("matrix is not invertible")
        inv = 1 / det
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def is_zero(self) -> bool:
        return not any(self.entries())

    def __str__(self):
        from .parser import render
        return render(self)


def tau_mat(op: DiffOp, A: Mat2, n: int = 1) -> Mat2:
    for _ in range(n):
        A = A.map(lambda e: tau(op, e))
    return A


@dataclass(frozen=True)
class CocycleProduct:
    base: Mat2
    order: int
    matrix: Mat2

    @property
    def entries(self):
        return self.matrix.entries()


def cocycle(op: DiffOp, A: Mat2, i: int) -> CocycleProduct:
    """``A_i = tau^(i-1)(A) ... tau(A) A``."""
    if i < 1:
        raise ValueError("cocycle order must be positive")
    prod = A
    shifted = A
    for _ in range(i - 1):
        shifted = tau_mat(op, shifted)
        prod = shifted @ prod
    return CocycleProduct(A, i, prod)


def eq_pair(f, A: Mat2, g):
    """Residual of ``f*(c*g + d) = a*g + b``."""
    return f * (A.c * g + A.d) - (A.a * g + A.b)


def eq_residual(op: DiffOp, f_i, A: Mat2, i: int, f):
    """Residual of the i-step equation ``f_i*(c_i*f + d_i) = a_i*f + b_i``."""
    return eq_pair(f_i, cocycle(op, A, i).matrix, f)


def gauge(op: DiffOp, A: Mat2, P: Mat2) -> Mat2:
    """``tau(P) A P^-1``; raises SingularGauge when ``P`` is singular."""
    if not P.det():
        raise SingularGauge("gauge matrix has zero determinant")
    return tau_mat(op, P) @ A @ P.inverse()


def mobius_apply(A: Mat2, y):
    """``(a*y + b)/(c*y + d)``."""
    den = A.c * y + A.d
    if not den:
        raise PoleOfTransform("c*y + d vanishes")
    return (A.a * y + A.b) / den


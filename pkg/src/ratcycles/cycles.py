"""Rational cycles of a composition.

Two independent routes to the cycle terms:

* :func:`solve_cycle` evaluates the closed form
  ``x_i = sum_t (p_i ... p_{i+n-2-t}) * k_{i-1-t} * U_t`` with ``U_t = q^t / D``;
* :func:`affine_fold_fixed_point` folds the steps into a single affine map
  and solves its fixed-point equation directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .composition import Composition
from .errors import DegenerateCycle, InvariantViolation
from .exact import rat_to_json


def discriminant(c: Composition) -> int:
    """``q^n - p_0 p_1 ... p_{n-1}``."""
    return c.q ** c.n - c.prod_p


def u_value(c: Composition, t: int, D: int | None = None) -> Fraction:
    """``U_t = q^t / D`` for any ``t >= 0``."""
    if D is None:
        D = discriminant(c)
    if D == 0:
        raise DegenerateCycle("q^n equals the product of the p_i")
    return Fraction(c.q ** t, D)


@dataclass(frozen=True)
class CycleSolution:
    D: int
    U: tuple[Fraction, ...]
    x: tuple[Fraction, ...]
    common_den: int

    @property
    def n(self) -> int:
        return len(self.x)

    def term(self, i: int) -> Fraction:
        return self.x[i % self.n]

    def to_json(self, c: Composition) -> dict:
        return {
            "q": c.q,
            "n": c.n,
            "steps": c.to_json()["steps"],
            "prodP": str(c.prod_p),
            "D": str(self.D),
            "U": [rat_to_json(u) for u in self.U],
            "x": [rat_to_json(v) for v in self.x],
            "commonDen": str(self.common_den),
        }


def solve_cycle(c: Composition) -> CycleSolution:
    n, q = c.n, c.q
    D = discriminant(c)
    if D == 0:
        raise DegenerateCycle(f"D = {q}^{n} - {c.prod_p} = 0: no unique fixed point")
    U = tuple(Fraction(q ** t, D) for t in range(n + 1))
    xs = []
    for i in range(n):
        # D * x_i, summed over the U_t coefficients
        num = sum(
            c.p_product(i, i + n - 1 - t) * c.step(i - 1 - t).k * q ** t
            for t in range(n)
        )
        xs.append(Fraction(num, D))
    dens = {x.denominator for x in xs}
    if len(dens) != 1:
        raise InvariantViolation(f"cycle terms have unlike denominators {sorted(dens)}")
    common_den = dens.pop()
    if D % common_den:
        raise InvariantViolation(f"common denominator {common_den} does not divide D={D}")
    return CycleSolution(D, U, tuple(xs), common_den)


@dataclass(frozen=True)
class AffineMap:
    """``x -> (A*x + C) / q^E``, kept unreduced."""

    A: int = 1
    C: int = 0
    E: int = 0

    def after(self, p: int, k: int, q: int) -> AffineMap:
        """Apply step ``(p*y + k)/q`` on top of this map."""
        return AffineMap(p * self.A, p * self.C + k * q ** self.E, self.E + 1)


def fold(c: Composition) -> AffineMap:
    m = AffineMap()
    for s in reversed(c.steps):
        m = m.after(s.p, s.k, c.q)
    return m


def affine_fold_fixed_point(c: Composition) -> Fraction:
    m = fold(c)
    scale = c.q ** m.E
    if m.A == scale:
        raise DegenerateCycle("folded map has slope 1: no unique fixed point")
    return Fraction(m.C, scale - m.A)


def verify_closure(c: Composition, sol: CycleSolution) -> bool:
    if len(sol.x) != c.n:
        return False
    for i in range(c.n):
        if c.apply_step(i, sol.x[(i + 1) % c.n]) != sol.x[i]:
            return False
        if affine_fold_fixed_point(c.rotate(i)) != sol.x[i]:
            return False
    return True

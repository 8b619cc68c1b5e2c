"""Integer linear combinations of cycle terms.

A witness ``(alpha, beta, b)`` with ``0 < b < n`` certifies that
``D | alpha + beta*q^b`` (equivalently ``alpha*U_0 + beta*U_b`` is an
integer).  For such a witness every

    alpha*x_i + beta*p_i*p_{i+1}*...*p_{i+b-1}*x_{i+b}

is an integer, for every i (indices mod n).  The converse does not hold:
on integer cycles the combination is an integer for any coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .composition import Composition
from .cycles import CycleSolution, discriminant, solve_cycle, u_value
from .errors import (
    BadArgument,
    BadB,
    DegenerateCycle,
    InvariantViolation,
    NotCertified,
    NotInteger,
    NoValidB,
    WraparoundUnsupported,
    ZeroCoefficient,
)
from .exact import euler_totient


@dataclass(frozen=True)
class Witness:
    alpha: int
    beta: int
    b: int

    def __post_init__(self):
        if self.alpha == 0 or self.beta == 0:
            raise ZeroCoefficient("alpha and beta must both be nonzero")
        if self.b <= 0:
            raise BadB(f"b must satisfy 0 < b < n, got {self.b}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.b)

    def to_json(self, c: Composition) -> dict:
        D = discriminant(c)
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "b": self.b,
            "certificate": {"D": D, "value": (self.alpha + self.beta * c.q ** self.b) // D},
        }


@dataclass(frozen=True)
class DecompositionReport:
    M: tuple[int, ...]
    combination: int


def _nonzero_discriminant(c: Composition) -> int:
    D = discriminant(c)
    if D == 0:
        raise DegenerateCycle("D = 0: the cycle is degenerate")
    return D


def is_witness(c: Composition, alpha: int, beta: int, b: int) -> bool:
    if not 0 < b < c.n:
        raise BadB(f"b must satisfy 0 < b < n={c.n}, got {b}")
    if alpha == 0 or beta == 0:
        raise ZeroCoefficient("alpha and beta must both be nonzero")
    D = _nonzero_discriminant(c)
    by_divisibility = (alpha + beta * c.q ** b) % D == 0
    by_u = (alpha * u_value(c, 0, D) + beta * u_value(c, b, D)).denominator == 1
    if by_divisibility != by_u:
        raise InvariantViolation("divisibility and U-integrality disagree")
    return by_divisibility


def certify(c: Composition, alpha: int, beta: int, b: int) -> Witness:
    """Return the witness, or raise NotCertified showing the failed division."""
    if not is_witness(c, alpha, beta, b):
        D = discriminant(c)
        raise NotCertified(f"{D} does not divide {alpha + beta * c.q ** b}")
    return Witness(alpha, beta, b)


def _require(c: Composition, w: Witness) -> None:
    # divisibility only; is_witness does the slower cross-check
    D = _nonzero_discriminant(c)
    if not w.b < c.n:
        raise BadB(f"b must satisfy 0 < b < n={c.n}, got {w.b}")
    if (w.alpha + w.beta * c.q ** w.b) % D:
        raise NotCertified(f"{D} does not divide {w.alpha + w.beta * c.q ** w.b}")


def lemma1_transform(c: Composition, w: Witness) -> Witness:
    """``(alpha, beta, b) -> (prod(p)*beta, alpha, n-b)``."""
    _require(c, w)
    out = Witness(c.prod_p * w.beta, w.alpha, c.n - w.b)
    if not is_witness(c, *out.as_tuple()):
        raise InvariantViolation(f"transform of {w} is not a witness")
    return out


def _as_int(value, what: str) -> int:
    if value.denominator != 1:
        raise NotInteger(f"{what} = {value} is not an integer")
    return value.numerator


def lemma2_shift(c: Composition, w: Witness, i: int) -> tuple[int, int]:
    """``(alpha*U_i + beta*U_{i+b}, prod(p)*beta*U_i + alpha*U_{n+i-b})``."""
    _require(c, w)
    if i < 0:
        raise BadArgument(f"shift must be nonnegative, got {i}")
    D = discriminant(c)
    U = lambda t: u_value(c, t, D)  # noqa: E731
    first = w.alpha * U(i) + w.beta * U(i + w.b)
    second = c.prod_p * w.beta * U(i) + w.alpha * U(c.n + i - w.b)
    return _as_int(first, "alpha*U_i + beta*U_{i+b}"), _as_int(second, "P*beta*U_i + alpha*U_{n+i-b}")


def theorem_combination(
    c: Composition, w: Witness, i: int, sol: CycleSolution | None = None
) -> int:
    """Exact integer value of ``alpha*x_i + beta*p_i...p_{i+b-1}*x_{i+b}``.

    Any i is accepted; ``i + b >= n`` wraps around the cycle.
    """
    _require(c, w)
    if sol is None:
        sol = solve_cycle(c)
    n, d = c.n, sol.common_den
    i %= n
    j = (i + w.b) % n
    # all x share denominator d, so numerators can be combined directly
    num = w.alpha * sol.x[i].numerator + w.beta * c.p_product(i, i + w.b) * sol.x[j].numerator
    if num % d:
        raise NotInteger(f"combination at i={i} is {num}/{d}, expected an integer")
    return num // d


def decompose_m(
    c: Composition, w: Witness, i: int, sol: CycleSolution | None = None
) -> DecompositionReport:
    """Split the combination at i as ``sum_j k_j * M_j`` with integer M_j.

    Only the non-wraparound case ``0 <= i`` and ``i + b < n`` is supported.
    """
    _require(c, w)
    n, q, b = c.n, c.q, w.b
    if i < 0:
        raise BadArgument(f"i must be nonnegative, got {i}")
    if i + b >= n:
        raise WraparoundUnsupported(f"i + b = {i + b} >= n = {n}")
    D = discriminant(c)
    P = c.prod_p
    alpha, beta = w.alpha, w.beta
    M = []
    for j in range(n):
        if i <= j < i + b:
            pp = c.p_product(i, j)
            num = alpha * q ** (n + i - 1 - j) + beta * P * q ** (i + b - 1 - j)
        elif j < i:
            pp = c.p_product(i, n + j)
            num = alpha * q ** (i - 1 - j) + beta * q ** (i + b - 1 - j)
        else:
            pp = c.p_product(i, j)
            num = alpha * q ** (n + i - 1 - j) + beta * q ** (n + i + b - 1 - j)
        if num % D:
            raise NotInteger(f"M_{j} = {pp}*{num}/{D} is not an integer")
        M.append(pp * (num // D))
    combination = sum(k * m for k, m in zip(c.ks, M))
    expected = theorem_combination(c, w, i, sol)
    if combination != expected:
        raise InvariantViolation(f"sum k_j M_j = {combination} but combination is {expected}")
    return DecompositionReport(tuple(M), combination)


def remark_edge(c: Composition, alpha: int, beta: int, b: int) -> list[int]:
    """The b = 0 and b = n cases, where the combination is a multiple of x_i.

    Returns ``coef * x_i`` for every i, with ``coef = alpha + beta`` (b = 0)
    or ``alpha + prod(p)*beta`` (b = n).
    """
    if alpha == 0 or beta == 0:
        raise ZeroCoefficient("alpha and beta must both be nonzero")
    if b == 0:
        coef = alpha + beta
    elif b == c.n:
        coef = alpha + c.prod_p * beta
    else:
        raise BadB(f"remark cases need b in {{0, {c.n}}}, got {b}")
    D = _nonzero_discriminant(c)
    if coef % D:
        raise NotCertified(f"{D} does not divide {coef}")
    sol = solve_cycle(c)
    return [_as_int(coef * x, f"{coef}*x_{i}") for i, x in enumerate(sol.x)]


def search_witnesses(c: Composition, alpha_bound: int, beta_bound: int) -> list[Witness]:
    """All witnesses with ``0 < |alpha| <= alpha_bound``, ``0 < |beta| <= beta_bound``.

    Ordered by ``(b, alpha, beta)``.
    """
    if alpha_bound < 1 or beta_bound < 1:
        raise BadArgument("search bounds must be >= 1")
    D = _nonzero_discriminant(c)
    alphas = [a for a in range(-alpha_bound, alpha_bound + 1) if a]
    betas = [v for v in range(-beta_bound, beta_bound + 1) if v]
    found = []
    for b in range(1, c.n):
        qb = c.q ** b
        for a in alphas:
            for v in betas:
                if (a + v * qb) % D == 0:
                    found.append(Witness(a, v, b))
    return found


def canonical_witness(c: Composition, k: int = 1) -> Witness:
    """``(k, -k*q^(phi(|D|)-1), 1)``, certified by Euler's theorem."""
    if c.n == 1:
        raise NoValidB("n = 1 leaves no b with 0 < b < n")
    if k == 0:
        raise ZeroCoefficient("k must be nonzero")
    D = _nonzero_discriminant(c)
    if gcd(c.q, D) != 1:
        raise InvariantViolation(f"gcd(q, D) = gcd({c.q}, {D}) != 1")
    w = Witness(k, -k * c.q ** (euler_totient(abs(D)) - 1), 1)
    if not is_witness(c, *w.as_tuple()):
        raise InvariantViolation(f"{w} failed certification")
    return w

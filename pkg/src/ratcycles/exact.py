"""Exact rational arithmetic and the bits of modular number theory we need.

Rationals are plain :class:`fractions.Fraction` values, which already keep
a reduced form with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import BadArgument, BadModulus, NotCoprime, ZeroDenominator

Rational = Fraction


def rat_make(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(int(num), int(den))


def rat_is_integer(x: Fraction) -> bool:
    return x.denominator == 1


def rat_div(a: Fraction, b: Fraction) -> Fraction:
    if b == 0:
        raise ZeroDenominator("division by a zero rational")
    return Fraction(a) / b


def mod_inverse(a: int, m: int) -> int:
    """Return ``u`` in ``[0, m)`` with ``a*u = 1 (mod m)``."""
    if m < 2:
        raise BadModulus(f"modulus must be >= 2, got {m}")
    if gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {gcd(a, m)}")
    return pow(a, -1, m)


def euler_totient(n: int) -> int:
    """Euler's phi via trial-division factorization."""
    if n < 1:
        raise BadArgument(f"totient undefined for {n}")
    result = n
    rest = n
    f = 2
    while f * f <= rest:
        if rest % f == 0:
            while rest % f == 0:
                rest //= f
            result -= result // f
        f += 1 if f == 2 else 2
    if rest > 1:
        result -= result // rest
    return result


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % f for f in range(2, isqrt(n) + 1))


def rat_to_text(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_text(text: str) -> Fraction:
    num, _, den = text.strip().partition("/")
    return rat_make(int(num), int(den) if den else 1)


def rat_to_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rat_from_json(obj: dict) -> Fraction:
    return rat_make(int(obj["num"]), int(obj["den"]))

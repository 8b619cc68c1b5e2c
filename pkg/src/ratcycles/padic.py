"""Base-p digit expansions of rationals whose denominator is prime to p.

With ``x_t = a_t / b`` and b fixed, the digits follow
``d_t = a_t * b^-1 mod p`` and ``a_{t+1} = (a_t - d_t*b) / p``.  Distinct
states have distinct digit tails, so the first repeated state gives the
shortest preperiod and a primitive period.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .composition import Composition
from .cycles import discriminant, solve_cycle
from .errors import (
    BadArgument,
    BadB,
    BaseNotCoprime,
    BadBase,
    NoPeriodWithinBound,
    NotCertified,
    NotInteger,
    InvariantViolation,
)
from .exact import mod_inverse, rat_to_text
from .integrality import is_witness

_ALPHABET = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass(frozen=True)
class PAdicExpansion:
    base: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def digit(self, j: int) -> int:
        s = len(self.preperiod)
        if j < s:
            return self.preperiod[j]
        return self.period[(j - s) % len(self.period)]

    def digits(self, count: int) -> list[int]:
        """First ``count`` digits, least significant first."""
        return [self.digit(j) for j in range(count)]

    @property
    def value(self) -> Fraction:
        """The rational this expansion represents (closed-form geometric sum)."""
        p, s, L = self.base, len(self.preperiod), len(self.period)
        head = sum(d * p ** j for j, d in enumerate(self.preperiod))
        cycle = sum(d * p ** j for j, d in enumerate(self.period))
        return head + Fraction(p ** s * cycle, 1 - p ** L)


def expand(x: Fraction, p: int, max_digits: int = 100_000) -> PAdicExpansion:
    if p < 2:
        raise BadBase(f"base must be >= 2, got {p}")
    x = Fraction(x)
    a, b = x.numerator, x.denominator
    if gcd(b, p) != 1:
        raise BaseNotCoprime(f"denominator {b} shares a factor with base {p}")
    inv = mod_inverse(b, p)
    seen: dict[int, int] = {}
    digits: list[int] = []
    while a not in seen:
        if len(digits) >= max_digits:
            raise NoPeriodWithinBound(f"no repeated state within {max_digits} digits")
        seen[a] = len(digits)
        d = (a * inv) % p
        digits.append(d)
        a = (a - d * b) // p
    start = seen[a]
    return PAdicExpansion(p, tuple(digits[:start]), tuple(digits[start:]))


def digit_char(d: int, base: int) -> str:
    if base <= 36:
        return _ALPHABET[d]
    return f"[{d}]"


def tails_agree(e1: PAdicExpansion, e2: PAdicExpansion) -> bool:
    """True if the two digit streams coincide from some index on."""
    start = max(len(e1.preperiod), len(e2.preperiod))
    span = lcm(len(e1.period), len(e2.period))
    return all(e1.digit(j) == e2.digit(j) for j in range(start, start + span))


@dataclass(frozen=True)
class PatternReport:
    l: int
    i: int
    b: int
    sigma_value: int
    difference: int
    agreement_mode: str

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "i": self.i,
            "b": self.b,
            "sigma": self.sigma_value,
            "difference": str(self.difference),
            "agreementMode": self.agreement_mode,
        }


def pattern_check(c: Composition, l: int, i: int, b: int) -> PatternReport:
    """Check that ``p^l * x_i - p^sigma(i, i+b) * x_{i+b}`` is an integer.

    Requires ``D | p^l - q^b``; b may range over ``0..n``.
    """
    p = c.two_type_base()
    if p is None:
        raise BadArgument("composition has no S steps and no declared p")
    if l < 0:
        raise BadArgument(f"l must be nonnegative, got {l}")
    if not 0 <= b <= c.n:
        raise BadB(f"b must satisfy 0 <= b <= n={c.n}, got {b}")
    D = discriminant(c)
    certified = (p ** l - c.q ** b) % D == 0 if D else False
    if 0 < b < c.n and is_witness(c, p ** l, -1, b) != certified:
        raise InvariantViolation("witness check disagrees with direct divisibility")
    if not certified:
        raise NotCertified(f"{D} does not divide {p ** l - c.q ** b}")
    sol = solve_cycle(c)
    s = c.sigma(i, i + b)
    lhs = p ** l * sol.term(i)
    rhs = p ** s * sol.term(i + b)
    diff = lhs - rhs
    if diff.denominator != 1:
        raise NotInteger(f"{p}^{l}*x_{i} - {p}^{s}*x_{i + b} = {diff}")
    mode = "tail-equal" if tails_agree(expand(lhs, p), expand(rhs, p)) else "tail-complement"
    return PatternReport(l, i, b, s, diff.numerator, mode)


def _table_rows(c: Composition):
    """Row order x_0, x_{n-1}, ..., x_1, x_0, with the step leading to the next row."""
    n = c.n
    order = [n] + list(range(n - 1, 0, -1)) + [0]
    for pos, i in enumerate(order):
        label = None
        if pos + 1 < len(order):
            label = f"{c.step_label(i - 1)}=B_{(i - 1) % n}"
        yield i, label


def render_table(c: Composition, p: int | None = None, digit_count: int = 10) -> str:
    """Staircase digit table, most significant digit on the left.

    The row for x_i is shifted left by sigma(0, i) places (the top x_0 row
    by the total S count), so digits that the integrality relation ties
    together line up in columns.
    """
    base = c.two_type_base()
    if p is None:
        p = base
    if p is None or p < 2:
        raise BadBase(f"need a base >= 2, got {p}")
    if digit_count < 1:
        raise BadArgument("digit count must be positive")
    sol = solve_cycle(c)
    names, cells, labels = [], [], []
    for i, label in _table_rows(c):
        x = sol.term(i)
        shown = max(digit_count - c.sigma(0, i), 0)
        ds = expand(x, p).digits(shown)
        row = [digit_char(d, p) for d in reversed(ds)]
        cells.append(row + [""] * (digit_count - shown))
        names.append(f"x_{i % c.n}={rat_to_text(x)}")
        labels.append(label or "")
    width = max(len(ch) for row in cells for ch in row) if digit_count else 1
    name_w = max(len(s) for s in names)
    lines = []
    for name, row, label in zip(names, cells, labels):
        digits = " ".join(ch.rjust(width) for ch in row)
        line = f"{name.ljust(name_w)} = ... {digits}"
        if label:
            line += f"   {label}"
        lines.append(line.rstrip())
    return "\n".join(lines) + "\n"


def render_csv(c: Composition, p: int | None = None, digit_count: int = 10) -> str:
    """One CSV row per cycle term: digits least significant first plus structure."""
    if p is None:
        p = c.two_type_base()
    if p is None or p < 2:
        raise BadBase(f"need a base >= 2, got {p}")
    sol = solve_cycle(c)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["index", "value", "digits_lsf", "preperiod", "period"])
    for i, x in enumerate(sol.x):
        e = expand(x, p)
        fmt = lambda ds: " ".join(digit_char(d, p) for d in ds)  # noqa: E731
        out.writerow([i, rat_to_text(x), fmt(e.digits(digit_count)), fmt(e.preperiod), fmt(e.period)])
    return buf.getvalue()

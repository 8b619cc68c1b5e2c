"""Compositions ``P = B_0 o B_1 o ... o B_{n-1}`` of affine steps.

Each step is ``B_i(x) = (p_i*x + k_i) / q`` and indices are taken mod n.

Order convention: ``B_{n-1}`` is applied first (innermost) and ``B_0`` last,
so the cycle terms satisfy ``x_i = B_i(x_{i+1})``.  Word forms such as
``"T S S"`` list steps in index order, leftmost letter being ``B_0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from math import gcd, prod

from .errors import BadArgument, BadRange, NotTwoType, ParseError, ValidationError


@dataclass(frozen=True)
class AffineStep:
    p: int
    k: int

    def __post_init__(self):
        if self.p == 0:
            raise ValidationError("step multiplier p must be nonzero")

    def __call__(self, x: Fraction, q: int) -> Fraction:
        return (self.p * Fraction(x) + self.k) / q


@dataclass(frozen=True)
class Composition:
    q: int
    steps: tuple[AffineStep, ...]
    # Declared S multiplier for word-form compositions; not part of identity.
    p: int | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.q == 0:
            raise ValidationError("q must be nonzero")
        if not self.steps:
            raise ValidationError("a composition needs at least one step")
        for i, s in enumerate(self.steps):
            if gcd(s.p, self.q) != 1:
                raise ValidationError(
                    f"gcd(p_{i}, q) = gcd({s.p}, {self.q}) = {gcd(s.p, self.q)}, must be 1"
                )

    @classmethod
    def from_pairs(cls, q: int, pairs, p: int | None = None) -> Composition:
        return cls(q, tuple(AffineStep(int(a), int(b)) for a, b in pairs), p)

    @classmethod
    def from_word(cls, q: int, p: int, word: str, k_s: int = 1, k_t: int = 0) -> Composition:
        """Build a two-type composition from a plain word like ``"TTSS"``."""
        steps = []
        for ch in word.replace(" ", ""):
            if ch == "S":
                steps.append(AffineStep(p, k_s))
            elif ch == "T":
                steps.append(AffineStep(1, k_t))
            else:
                raise ValidationError(f"unexpected letter {ch!r} in word")
        return cls(q, tuple(steps), p)

    @cached_property
    def n(self) -> int:
        return len(self.steps)

    @cached_property
    def ps(self) -> tuple[int, ...]:
        return tuple(s.p for s in self.steps)

    @cached_property
    def ks(self) -> tuple[int, ...]:
        return tuple(s.k for s in self.steps)

    @cached_property
    def prod_p(self) -> int:
        return prod(self.ps)

    def step(self, i: int) -> AffineStep:
        return self.steps[i % self.n]

    def apply_step(self, i: int, x: Fraction) -> Fraction:
        return self.step(i)(x, self.q)

    def p_product(self, i: int, j: int) -> int:
        """Product ``p_i * p_{i+1} * ... * p_{j-1}`` with indices mod n."""
        if j < i or j - i > self.n:
            raise BadRange(f"need 0 <= j - i <= n, got i={i}, j={j}, n={self.n}")
        return prod(self.step(t).p for t in range(i, j))

    def two_type_base(self) -> int | None:
        """The common S multiplier if every p_i is 1 or that value.

        Returns None for an all-T composition without a declared p.
        Raises NotTwoType otherwise.
        """
        others = {s.p for s in self.steps if s.p != 1}
        if self.p is not None:
            others.discard(self.p)
            if others:
                raise NotTwoType(f"multipliers {sorted(others)} are neither 1 nor p={self.p}")
            return self.p
        if len(others) > 1:
            raise NotTwoType(f"multipliers {sorted(others | {1})} use more than two types")
        return others.pop() if others else None

    def sigma(self, i: int, j: int) -> int:
        """Number of S steps in the fragment ``B_i ... B_{j-1}``."""
        self.two_type_base()
        if j < i or j - i > self.n:
            raise BadRange(f"need 0 <= j - i <= n, got i={i}, j={j}, n={self.n}")
        return sum(1 for t in range(i, j) if self.step(t).p != 1)

    def rotate(self, i: int) -> Composition:
        i %= self.n
        return Composition(self.q, self.steps[i:] + self.steps[:i], self.p)

    def power(self, k: int) -> Composition:
        if k < 1:
            raise BadArgument(f"power needs k >= 1, got {k}")
        return Composition(self.q, self.steps * k, self.p)

    def step_label(self, i: int) -> str:
        """``S_k``/``T_k`` name of step i (two-type compositions only)."""
        base = self.two_type_base()
        s = self.step(i)
        letter = "T" if s.p == 1 and base != 1 else "S"
        return f"{letter}_{s.k}"

    def render(self) -> str:
        """Spec-file text that parses back to this composition."""
        if self.p is not None:
            letters = " ".join(
                f"{'T' if s.p == 1 and self.p != 1 else 'S'}{s.k}" for s in self.steps
            )
            return f"q={self.q}\np={self.p}\nword={letters}\n"
        pairs = " ".join(f"({s.p},{s.k})" for s in self.steps)
        return f"q={self.q}\nsteps={pairs}\n"

    def to_json(self) -> dict:
        return {"q": self.q, "steps": [{"p": s.p, "k": s.k} for s in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> Composition:
        try:
            return cls.from_pairs(int(obj["q"]), [(s["p"], s["k"]) for s in obj["steps"]])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed composition JSON: {exc}") from exc


_ASSIGN = re.compile(r"\s*([A-Za-z_]\w*)\s*=\s*")
_INT = re.compile(r"\s*([+-]?\d+)\s*$")
_PAIR = re.compile(r"\s*\(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*\)")
_TOKEN = re.compile(r"\s*([ST])([+-]?\d+)?")


def _parse_int(text: str, line: int, col: int) -> int:
    m = _INT.match(text)
    if not m:
        raise ParseError(f"expected a signed integer, got {text.strip()!r}", line, col)
    return int(m.group(1))


def _scan(regex, text: str, line: int, col: int, what: str) -> list:
    found = []
    pos = 0
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = regex.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"expected {what}", line, col + pos + skip)
        found.append(m.groups())
        pos = m.end()
    if not found:
        raise ParseError(f"expected at least one {what}", line, col)
    return found


def parse_spec(text: str) -> Composition:
    """Parse the ``q=`` / ``steps=`` or ``q=`` / ``p=`` / ``word=`` format.

    ``#`` starts a comment. In word form a bare ``T`` means ``(1, 0)`` and a
    bare ``S`` means ``(p, 1)``; ``T5``/``S-3`` set k explicitly.
    """
    values: dict[str, tuple] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        m = _ASSIGN.match(body)
        if not m:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError("expected 'name = value'", lineno, col)
        key = m.group(1)
        rest = body[m.end():]
        col = m.end() + 1
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno, m.start(1) + 1)
        if key in ("q", "p"):
            values[key] = (_parse_int(rest, lineno, col), lineno)
        elif key == "steps":
            pairs = _scan(_PAIR, rest, lineno, col, "a pair '(p,k)'")
            values[key] = ([(int(a), int(b)) for a, b in pairs], lineno)
        elif key == "word":
            values[key] = (_scan(_TOKEN, rest, lineno, col, "a token S or T"), lineno)
        else:
            raise ParseError(f"unknown key {key!r}", lineno, m.start(1) + 1)

    last = max((ln for _, ln in values.values()), default=0) + 1
    if "q" not in values:
        raise ParseError("missing 'q' line", last, 1)
    q = values["q"][0]
    if "steps" in values:
        for key in ("p", "word"):
            if key in values:
                raise ParseError(f"'{key}' cannot be combined with 'steps'", values[key][1], 1)
        return Composition.from_pairs(q, values["steps"][0])
    if "word" not in values or "p" not in values:
        raise ParseError("need either 'steps' or both 'p' and 'word'", last, 1)
    p = values["p"][0]
    if p == 0:
        raise ValidationError("p must be nonzero")
    steps = []
    for letter, k in values["word"][0]:
        if letter == "T":
            steps.append(AffineStep(1, int(k) if k is not None else 0))
        else:
            steps.append(AffineStep(p, int(k) if k is not None else 1))
    return Composition(q, tuple(steps), p)

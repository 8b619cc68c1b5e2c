"""Exhaustive search over S/T words for a fixed pair of step types.

``S(x) = (p*x + k_s)/q`` and ``T(x) = (x + k_t)/q``; the classic 3x+1 map
is q=2, p=3, k_s=1, k_t=0.  The leftmost letter of a word is B_0, the step
applied last.

Canonical rotations order letters with T before S.  Under that order the
representative of each known 3x+1 cycle is the word the cycle is usually
named by (T, S, TS, TSS, TTTSSSTSSSS), whose x_0 is the cycle's smallest
term in absolute value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterator

from .composition import Composition
from .cycles import affine_fold_fixed_point, discriminant
from .errors import DegenerateCycle, ValidationError

_LETTER_ORDER = {"T": 0, "S": 1}


@dataclass(frozen=True)
class CycleRecord:
    word: str
    n: int
    m: int
    D: int
    x0: Fraction
    is_integer: bool
    rotation_class: str

    def to_row(self) -> list:
        return [self.word, self.n, self.m, self.D, self.x0.numerator, self.x0.denominator,
                str(self.is_integer).lower(), self.rotation_class]

    def to_json(self) -> dict:
        return {
            "word": self.word,
            "n": self.n,
            "m": self.m,
            "D": str(self.D),
            "x0_num": str(self.x0.numerator),
            "x0_den": str(self.x0.denominator),
            "is_integer": self.is_integer,
            "rotation_class": self.rotation_class,
        }


CSV_HEADER = ["word", "n", "m", "D", "x0_num", "x0_den", "is_integer", "rotation_class"]


def canonical_rotation(word: str) -> str:
    rotations = [word[i:] + word[:i] for i in range(len(word))]
    return min(rotations, key=lambda w: [_LETTER_ORDER[ch] for ch in w])


def iter_words(max_len: int) -> Iterator[str]:
    """All words of length 1..max_len, length first, then T < S order."""
    for length in range(1, max_len + 1):
        for letters in product("TS", repeat=length):
            yield "".join(letters)


def _check_types(q: int, p: int) -> None:
    if q == 0 or p == 0:
        raise ValidationError("p and q must be nonzero")
    if gcd(p, q) != 1:
        raise ValidationError(f"gcd(p, q) = gcd({p}, {q}) = {gcd(p, q)}, must be 1")


def make_record(word: str, q: int, p: int, k_s: int = 1, k_t: int = 0) -> CycleRecord:
    c = Composition.from_word(q, p, word, k_s, k_t)
    D = discriminant(c)
    x0 = affine_fold_fixed_point(c)
    return CycleRecord(word, c.n, word.count("S"), D, x0, x0.denominator == 1,
                       canonical_rotation(word))


def enumerate_words(
    q: int, p: int, k_s: int = 1, k_t: int = 0, max_len: int = 11, skipped: list | None = None
) -> Iterator[CycleRecord]:
    """One record per word with ``D != 0``.

    Words with ``D = 0`` are skipped; pass a list as ``skipped`` to collect them.
    """
    _check_types(q, p)
    if max_len < 1:
        raise ValidationError("max_len must be >= 1")
    for word in iter_words(max_len):
        if q ** len(word) == p ** word.count("S"):
            if skipped is not None:
                skipped.append(word)
            continue
        yield make_record(word, q, p, k_s, k_t)


def find_integer_cycles(
    q: int, p: int, k_s: int = 1, k_t: int = 0, max_len: int = 11, dedup_rotations: bool = False
) -> list[CycleRecord]:
    found = []
    for rec in enumerate_words(q, p, k_s, k_t, max_len):
        if not rec.is_integer:
            continue
        if dedup_rotations and rec.word != rec.rotation_class:
            continue
        found.append(rec)
    return found


def classify_rotations(
    word: str, q: int, p: int, k_s: int = 1, k_t: int = 0
) -> tuple[str, list[Fraction]]:
    """Canonical rotation of ``word`` and the fixed point of each rotation.

    Rotation r starts at letter r, so its fixed point is x_r of the cycle.
    """
    _check_types(q, p)
    c = Composition.from_word(q, p, word, k_s, k_t)
    if discriminant(c) == 0:
        raise DegenerateCycle(f"word {word!r} has D = 0")
    xs = [affine_fold_fixed_point(c.rotate(r)) for r in range(c.n)]
    return canonical_rotation(word), xs

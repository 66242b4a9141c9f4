"""
Words in the free group F_m = <x_1, ..., x_m>.

A FreeWord is always freely reduced: construction cancels every adjacent
x_k^{±1} x_k^{∓1} pair, so equality of FreeWords is equality in F_m.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from braidjohnson.braid_core import (
    BraidError,
    IndexOutOfRange,
    WordParseError,
    require_same_m,
)
from braidjohnson.crossing import HVector

Syllable = tuple[int, int]

_TOKEN = re.compile(r"^x_?(\d+)(?:\^\(?([+-]?\d+)\)?)?$", re.IGNORECASE)


def free_reduce(syllables: Iterable[Syllable], from_right: bool = False) -> tuple[Syllable, ...]:
    """Stack-based free reduction, scanning left-to-right or right-to-left."""
    items = list(syllables)
    if from_right:
        items.reverse()
    stack: list[Syllable] = []
    for k, s in items:
        if stack and stack[-1] == (k, -s):
            stack.pop()
        else:
            stack.append((k, s))
    if from_right:
        stack.reverse()
    return tuple(stack)


@dataclass(frozen=True)
class FreeWord:
    m: int
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        if self.m < 1:
            raise BraidError(f"free group rank must be >= 1, got {self.m}")
        syllables = tuple((int(k), int(s)) for k, s in self.syllables)
        for k, s in syllables:
            if not 1 <= k <= self.m:
                raise IndexOutOfRange(f"free generator x{k} outside x1..x{self.m}")
            if s not in (1, -1):
                raise BraidError(f"syllable sign must be +1 or -1, got {s}")
        object.__setattr__(self, "syllables", free_reduce(syllables))

    @classmethod
    def identity(cls, m: int) -> "FreeWord":
        return cls(m, ())

    @classmethod
    def generator(cls, m: int, k: int, sign: int = 1) -> "FreeWord":
        return cls(m, ((k, sign),))

    @classmethod
    def from_ints(cls, m: int, ints: Iterable[int]) -> "FreeWord":
        syllables = []
        for x in ints:
            if x == 0:
                raise BraidError("0 is not a free-group letter")
            syllables.append((abs(x), 1 if x > 0 else -1))
        return cls(m, tuple(syllables))

    def to_ints(self) -> list[int]:
        return [k * s for k, s in self.syllables]

    def __len__(self) -> int:
        return len(self.syllables)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return invert(self)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"x{k}" if s == 1 else f"x{k}^-1" for k, s in self.syllables)


def multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    require_same_m(a.m, b.m, "free group ranks")
    return FreeWord(a.m, a.syllables + b.syllables)


def invert(a: FreeWord) -> FreeWord:
    return FreeWord(a.m, tuple((k, -s) for k, s in reversed(a.syllables)))


def abelianize(a: FreeWord) -> HVector:
    """[x] ∈ H: signed count of each generator."""
    coeffs = np.zeros(a.m, dtype=np.int64)
    for k, s in a.syllables:
        coeffs[k - 1] += s
    return HVector(coeffs)


def parse_free_word(text: str, m: int) -> FreeWord:
    """Parse ``x1 x2^-1 x1`` (powers allowed); ``1`` or an empty string is the identity."""
    syllables: list[Syllable] = []
    tokens = text.replace("*", " ").split()
    if tokens == ["1"]:
        return FreeWord.identity(m)
    for position, token in enumerate(tokens, start=1):
        match = _TOKEN.match(token)
        if not match:
            raise WordParseError("unrecognised free-group letter", position, token)
        k = int(match.group(1))
        power = int(match.group(2)) if match.group(2) is not None else 1
        if not 1 <= k <= m or power == 0:
            raise WordParseError(f"generator outside x1..x{m} or zero power", position, token)
        syllables.extend([(k, 1 if power > 0 else -1)] * abs(power))
    return FreeWord(m, tuple(syllables))

"""
Braid words in the standard generators and the permutations they induce.

Indices are 1-based wherever a caller can see them: the letter (k, +1) is
sigma_k, (k, -1) its inverse, and Permutation(images)(j) is images[j - 1].
Words are never reduced to a normal form; every invariant in the package is
computed on the raw letters and is checked against the braid relations instead.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from braidjohnson.logging_config import get_lazy_logger

logger = get_lazy_logger(__name__)

Letter = tuple[int, int]

_INT_TOKEN = re.compile(r"^[+-]?\d+$")
_GEN_TOKEN = re.compile(r"^(?:s|σ|sigma)_?(\d+)(?:\^\(?([+-]?\d+)\)?)?$", re.IGNORECASE)


class BraidError(ValueError):
    """Base class for errors caused by invalid braid-group input."""


class StrandCountMismatch(BraidError):
    pass


class IndexOutOfRange(BraidError, IndexError):
    pass


class WordParseError(BraidError):
    def __init__(self, message: str, position: int, token: str):
        super().__init__(f"{message} at token {position}: {token!r}")
        self.position = position
        self.token = token


def require_same_m(left: int, right: int, what: str = "strand counts") -> None:
    if left != right:
        raise StrandCountMismatch(f"mismatched {what}: {left} != {right}")


@dataclass(frozen=True)
class Permutation:
    """
    A bijection of {1..m}; images[j - 1] = π(j).
    Products compose right to left: (π₁π₂)(j) = π₁(π₂(j)).
    """
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise BraidError(f"not a permutation of 1..{len(images)}: {list(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> "Permutation":
        if not (1 <= i <= m and 1 <= j <= m) or i == j:
            raise IndexOutOfRange(f"invalid transposition ({i} {j}) in S_{m}")
        images = list(range(1, m + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        if not 1 <= j <= self.m:
            raise IndexOutOfRange(f"index {j} outside 1..{self.m}")
        return self.images[j - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        require_same_m(self.m, other.m, "permutation degrees")
        return Permutation(tuple(self.images[k - 1] for k in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.m
        for j, image in enumerate(self.images, start=1):
            inv[image - 1] = j
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(image == j for j, image in enumerate(self.images, start=1))

    def moved_points(self) -> list[int]:
        return [j for j, image in enumerate(self.images, start=1) if image != j]

    def transposition_pair(self) -> Optional[tuple[int, int]]:
        """(i, j) with i < j if this is a transposition, else None."""
        moved = self.moved_points()
        if len(moved) == 2 and self(moved[0]) == moved[1]:
            return moved[0], moved[1]
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        result = []
        for start in range(1, self.m + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            result.append(tuple(cycle))
        return result

    def index_array(self) -> np.ndarray:
        """0-based images, for numpy fancy indexing: arr[k] = π(k + 1) - 1."""
        return np.asarray(self.images, dtype=np.intp) - 1

    def to_json(self) -> list[int]:
        return list(self.images)

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def apply_permutation_to_index(p: Permutation, j: int) -> int:
    return p(j)


@dataclass(frozen=True)
class BraidWord:
    """A word σ_{k₁}^{ε₁} ⋯ σ_{k_n}^{ε_n} in B_m, read top to bottom."""
    m: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 2:
            raise BraidError(f"strand count must be an integer >= 2, got {self.m!r}")
        object.__setattr__(self, "m", int(self.m))
        letters = tuple((int(k), int(s)) for k, s in self.letters)
        for k, s in letters:
            if not 1 <= k <= self.m - 1:
                raise IndexOutOfRange(f"generator index {k} outside 1..{self.m - 1}")
            if s not in (1, -1):
                raise BraidError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, m: int) -> "BraidWord":
        return cls(m, ())

    @classmethod
    def generator(cls, m: int, k: int, sign: int = 1) -> "BraidWord":
        return cls(m, ((k, sign),))

    @classmethod
    def from_ints(cls, m: int, ints: Iterable[int]) -> "BraidWord":
        letters = []
        for x in ints:
            x = int(x)
            if x == 0:
                raise BraidError("0 is not a braid letter")
            letters.append((abs(x), 1 if x > 0 else -1))
        return cls(m, tuple(letters))

    def to_ints(self) -> list[int]:
        return [k * s for k, s in self.letters]

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.to_ints())

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return concat(self, other)

    def __pow__(self, n: int) -> "BraidWord":
        base = self if n >= 0 else inverse(self)
        return BraidWord(self.m, base.letters * abs(n))

    def inverse(self) -> "BraidWord":
        return inverse(self)

    @property
    def exponent_sum(self) -> int:
        return sum(s for _, s in self.letters)

    @property
    def is_positive(self) -> bool:
        return all(s == 1 for _, s in self.letters)

    def freely_reduced(self) -> "BraidWord":
        """Cancel adjacent σ_kσ_k⁻¹ pairs. Not a normal form."""
        stack: list[Letter] = []
        for k, s in self.letters:
            if stack and stack[-1] == (k, -s):
                stack.pop()
            else:
                stack.append((k, s))
        return BraidWord(self.m, tuple(stack))


def concat(a: BraidWord, b: BraidWord) -> BraidWord:
    """The stacking product ab (a above b)."""
    require_same_m(a.m, b.m)
    return BraidWord(a.m, a.letters + b.letters)


def inverse(a: BraidWord) -> BraidWord:
    return BraidWord(a.m, tuple((k, -s) for k, s in reversed(a.letters)))


def conjugate(g: BraidWord, h: BraidWord) -> BraidWord:
    """g*h = h⁻¹gh."""
    require_same_m(g.m, h.m)
    return concat(concat(inverse(h), g), h)


class StrandTracker:
    """
    Follows which strand occupies each position while a word is read top to bottom.
    Strand k starts at position k. cross(p) swaps positions p and p+1 and returns
    the strands (left, right) that met there.
    """

    __slots__ = ("positions",)

    def __init__(self, m: int):
        self.positions = list(range(1, m + 1))

    def cross(self, p: int) -> tuple[int, int]:
        left, right = self.positions[p - 1], self.positions[p]
        self.positions[p - 1], self.positions[p] = right, left
        return left, right

    def permutation(self) -> Permutation:
        # position -> strand reading at the bottom
        return Permutation(tuple(self.positions))


def underlying_permutation(a: BraidWord) -> Permutation:
    """|β|: |β|(j) is the strand whose terminal point is q_j."""
    tracker = StrandTracker(a.m)
    for k, _ in a.letters:
        tracker.cross(k)
    return tracker.permutation()


def parse_braid_word(text: str, m: int) -> BraidWord:
    """
    Parse ``-2 1 1 2`` (k is σ_k, -k is σ_k⁻¹) or ``s2^-1 s1 s1 s2``.
    Powers in the second form are expanded letter by letter.
    """
    ints: list[int] = []
    for position, token in enumerate(text.replace(",", " ").split(), start=1):
        if _INT_TOKEN.match(token):
            value = int(token)
            if value == 0:
                raise WordParseError("0 is not a braid letter", position, token)
            if not 1 <= abs(value) <= m - 1:
                raise WordParseError(f"generator outside 1..{m - 1}", position, token)
            ints.append(value)
            continue
        match = _GEN_TOKEN.match(token)
        if not match:
            raise WordParseError("unrecognised braid letter", position, token)
        k = int(match.group(1))
        power = int(match.group(2)) if match.group(2) is not None else 1
        if power == 0 or not 1 <= k <= m - 1:
            raise WordParseError(f"generator outside 1..{m - 1} or zero power", position, token)
        ints.extend([k if power > 0 else -k] * abs(power))
    return BraidWord.from_ints(m, ints)


def random_braid_word(rng: np.random.Generator, m: int, max_length: int,
                      min_length: int = 0, positive: bool = False) -> BraidWord:
    length = int(rng.integers(min_length, max_length + 1))
    indices = rng.integers(1, m, size=length)
    if positive:
        signs = np.ones(length, dtype=np.int64)
    else:
        signs = rng.choice(np.array([-1, 1]), size=length)
    return BraidWord(m, tuple(zip(indices.tolist(), signs.tolist())))

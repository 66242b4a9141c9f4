"""
Crossing matrices C(β) ∈ Mat⁰_m, the diving information f_i(β) ∈ H, and the
left S_m-action on both.

Conventions (checked when the module is imported):
  * row index = starting index of the over-strand, column = under-strand;
    C(σ_j) has its single 1 at (j+1, j);
  * |β| is the position -> strand reading at the bottom of the braid, which makes
    C(ab) = C(a) + |a|(C(b)) with π(M)[i][j] = M[π⁻¹(i)][π⁻¹(j)].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    IndexOutOfRange,
    Permutation,
    StrandTracker,
    WordParseError,
    require_same_m,
)
from braidjohnson.logging_config import get_lazy_logger

logger = get_lazy_logger(__name__)

# int64 sums of two values below this bound cannot wrap
ENTRY_BOUND = 2 ** 62


class ConventionError(RuntimeError):
    """A self-check of an index or composition convention failed."""


def checked(values: np.ndarray) -> np.ndarray:
    """Freeze an int64 array after checking it stays inside ENTRY_BOUND."""
    arr = np.array(values, dtype=np.int64)
    if arr.size and int(np.abs(arr).max()) >= ENTRY_BOUND:
        raise OverflowError("integer entry exceeds the checked int64 range")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class HVector:
    """An element Σ c_k X_k of H = Z^m; coeffs[k - 1] = c_k."""
    coeffs: np.ndarray

    def __post_init__(self):
        arr = checked(self.coeffs)
        if arr.ndim != 1 or arr.size == 0:
            raise BraidError(f"HVector needs a non-empty 1-d coefficient array, got shape {arr.shape}")
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls, m: int) -> "HVector":
        return cls(np.zeros(m, dtype=np.int64))

    @classmethod
    def basis(cls, m: int, k: int) -> "HVector":
        if not 1 <= k <= m:
            raise IndexOutOfRange(f"basis index {k} outside 1..{m}")
        arr = np.zeros(m, dtype=np.int64)
        arr[k - 1] = 1
        return cls(arr)

    @classmethod
    def from_dict(cls, m: int, terms: dict[int, int]) -> "HVector":
        arr = np.zeros(m, dtype=np.int64)
        for k, c in terms.items():
            if not 1 <= k <= m:
                raise IndexOutOfRange(f"basis index {k} outside 1..{m}")
            arr[k - 1] += c
        return cls(arr)

    @property
    def m(self) -> int:
        return int(self.coeffs.shape[0])

    def coeff(self, k: int) -> int:
        if not 1 <= k <= self.m:
            raise IndexOutOfRange(f"basis index {k} outside 1..{self.m}")
        return int(self.coeffs[k - 1])

    def __add__(self, other: "HVector") -> "HVector":
        require_same_m(self.m, other.m, "ranks")
        return HVector(self.coeffs + other.coeffs)

    def __sub__(self, other: "HVector") -> "HVector":
        require_same_m(self.m, other.m, "ranks")
        return HVector(self.coeffs - other.coeffs)

    def __neg__(self) -> "HVector":
        return HVector(-self.coeffs)

    def __mul__(self, scalar: int) -> "HVector":
        return HVector(self.coeffs * int(scalar))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HVector) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def permuted(self, p: Permutation) -> "HVector":
        """π(Σ c_k X_k) = Σ c_k X_{π(k)}."""
        require_same_m(self.m, p.m, "ranks")
        out = np.empty_like(self.coeffs)
        out[p.index_array()] = self.coeffs
        return HVector(out)

    def to_json(self) -> dict:
        return {"coeffs": self.coeffs.tolist()}

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs.tolist(), start=1):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign}{mag}X{k}")
        if not terms:
            return "0"
        text = "".join(terms)
        return text[1:] if text.startswith("+") else text

    def __repr__(self) -> str:
        return f"HVector({self})"


@dataclass(frozen=True, eq=False)
class CrossingMatrix:
    """An element of Mat⁰_m: an m×m integer matrix with zero diagonal."""
    entries: np.ndarray

    def __post_init__(self):
        arr = checked(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise BraidError(f"crossing matrix must be square, got shape {arr.shape}")
        if np.diagonal(arr).any():
            raise BraidError("crossing matrix must have zero diagonal")
        object.__setattr__(self, "entries", arr)

    @classmethod
    def zero(cls, m: int) -> "CrossingMatrix":
        return cls(np.zeros((m, m), dtype=np.int64))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "CrossingMatrix":
        """Build from nested integer lists; positions in errors count entries row by row from 1."""
        if not isinstance(rows, (list, tuple)) or not rows:
            raise WordParseError("matrix must be a non-empty list of rows", 1, repr(rows))
        m = len(rows)
        position = 0
        for row in rows:
            if not isinstance(row, (list, tuple)) or len(row) != m:
                raise WordParseError(f"every row must hold {m} entries", position + 1, repr(row))
            for value in row:
                position += 1
                if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
                    raise WordParseError("matrix entries must be integers", position, repr(value))
                if abs(int(value)) >= ENTRY_BOUND:
                    raise BraidError(f"matrix entry {value} at position {position} exceeds the checked int64 range")
        return cls(np.array(rows, dtype=np.int64))

    @classmethod
    def from_json(cls, data: dict | list) -> "CrossingMatrix":
        """Accepts ``{"m": 3, "rows": [...]}`` or a bare list of rows."""
        if isinstance(data, dict):
            if "rows" not in data:
                raise WordParseError("matrix JSON needs a 'rows' field", 0, repr(sorted(data)))
            matrix = cls.from_rows(data["rows"])
            declared = data.get("m", matrix.m)
            if isinstance(declared, bool) or not isinstance(declared, int):
                raise WordParseError("'m' must be an integer", 0, repr(declared))
            if declared != matrix.m:
                raise WordParseError(f"declared m does not match the {matrix.m} rows", 0, repr(declared))
            return matrix
        return cls.from_rows(data)

    @property
    def m(self) -> int:
        return int(self.entries.shape[0])

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.m and 1 <= j <= self.m):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside 1..{self.m}")
        return int(self.entries[i - 1, j - 1])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def __add__(self, other: "CrossingMatrix") -> "CrossingMatrix":
        require_same_m(self.m, other.m, "matrix sizes")
        return CrossingMatrix(self.entries + other.entries)

    def __sub__(self, other: "CrossingMatrix") -> "CrossingMatrix":
        require_same_m(self.m, other.m, "matrix sizes")
        return CrossingMatrix(self.entries - other.entries)

    def __neg__(self) -> "CrossingMatrix":
        return CrossingMatrix(-self.entries)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CrossingMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.m, self.entries.tobytes()))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def total(self) -> int:
        return int(self.entries.sum())

    def column(self, i: int) -> HVector:
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"column {i} outside 1..{self.m}")
        return HVector(self.entries[:, i - 1])

    def to_json(self) -> dict:
        return {"m": self.m, "rows": self.rows()}

    def __repr__(self) -> str:
        return f"CrossingMatrix({self.rows()})"


def _track(b: BraidWord) -> tuple[np.ndarray, StrandTracker]:
    tracker = StrandTracker(b.m)
    entries = np.zeros((b.m, b.m), dtype=np.int64)
    for p, sign in b.letters:
        left, right = tracker.cross(p)
        if sign == 1:
            entries[right - 1, left - 1] += 1
        else:
            entries[left - 1, right - 1] -= 1
    return entries, tracker


def crossing_matrix(b: BraidWord) -> CrossingMatrix:
    """
    C(β)[i][j] = signed number of crossings where strand i passes over strand j.
    At σ_p the strand coming from position p+1 is over; at σ_p⁻¹ the one from p is.
    """
    entries, _ = _track(b)
    return CrossingMatrix(entries)


def act_permutation(p: Permutation, M: CrossingMatrix) -> CrossingMatrix:
    """π(M)[i][j] = M[π⁻¹(i)][π⁻¹(j)]."""
    require_same_m(p.m, M.m, "sizes")
    idx = p.index_array()
    out = np.empty_like(M.entries)
    out[np.ix_(idx, idx)] = M.entries
    return CrossingMatrix(out)


def f_column(M: CrossingMatrix, i: int) -> HVector:
    """f_i(M) = Σ_k M[k][i] X_k."""
    return M.column(i)


def diving_info(b: BraidWord, i: int) -> HVector:
    """f_i(β): how the i-th strand passes under each other strand, algebraically."""
    if not 1 <= i <= b.m:
        raise IndexOutOfRange(f"strand index {i} outside 1..{b.m}")
    return crossing_matrix(b).column(i)


@dataclass(frozen=True)
class LiftedCrossing:
    """An element (M, π) of Mat⁰_m ⋊ S_m with (M₁,π₁)(M₂,π₂) = (M₁ + π₁(M₂), π₁π₂)."""
    matrix: CrossingMatrix
    perm: Permutation

    @classmethod
    def identity(cls, m: int) -> "LiftedCrossing":
        return cls(CrossingMatrix.zero(m), Permutation.identity(m))

    def __mul__(self, other: "LiftedCrossing") -> "LiftedCrossing":
        return LiftedCrossing(
            self.matrix + act_permutation(self.perm, other.matrix),
            self.perm * other.perm,
        )

    def inverse(self) -> "LiftedCrossing":
        inv = self.perm.inverse()
        return LiftedCrossing(-act_permutation(inv, self.matrix), inv)

    def to_json(self) -> dict:
        return {**self.matrix.to_json(), "perm": self.perm.to_json()}


def lift_C(b: BraidWord) -> LiftedCrossing:
    """C̃(β) = (C(β), |β|), computed in one pass of the tracker."""
    entries, tracker = _track(b)
    return LiftedCrossing(CrossingMatrix(entries), tracker.permutation())


REFERENCE_WORD = (-2, 1, 1, 2, 2, 2, -1, 2)
REFERENCE_MATRIX = ((0, -1, 1), (0, 0, 1), (2, 1, 0))


def _check_conventions() -> None:
    word = BraidWord.from_ints(3, REFERENCE_WORD)
    if crossing_matrix(word) != CrossingMatrix.from_rows(REFERENCE_MATRIX):
        raise ConventionError(
            f"crossing tracker gives {crossing_matrix(word).rows()} for the reference word "
            f"{REFERENCE_WORD}, expected {REFERENCE_MATRIX}"
        )
    sigma = crossing_matrix(BraidWord.generator(3, 1))
    if sigma.entry(2, 1) != 1 or sigma.total() != 1:
        raise ConventionError(f"C(σ₁) should be 1 at (2, 1) only, got {sigma.rows()}")
    for cut in range(len(word) + 1):
        head = BraidWord(3, word.letters[:cut])
        tail = BraidWord(3, word.letters[cut:])
        lifted = lift_C(head)
        expected = crossing_matrix(word)
        if lifted.matrix + act_permutation(lifted.perm, crossing_matrix(tail)) == expected:
            continue
        flipped = lifted.matrix + act_permutation(lifted.perm.inverse(), crossing_matrix(tail))
        hint = "the inverse permutation satisfies it" if flipped == expected else "neither reading does"
        raise ConventionError(f"crossed-hom law fails at split {cut} with |a|; {hint}")
    logger.debug("crossing conventions verified against the reference word")


_check_conventions()

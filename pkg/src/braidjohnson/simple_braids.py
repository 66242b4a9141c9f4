"""
Simple braids σ_{i₀}^ε * w and their cord invariant v(β) = ([γ̃_β], ε).

The homology class of the cord is read off the crossing matrix: for a simple
braid with transposition (i j), f_i(β) = [γ̃] + X_j when ε = +1 and
f_i(β) = [γ̃] when ε = −1. The remaining columns of C(β) are then determined
by [γ̃] alone, which check_column_formulas cross-validates.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Protocol, Sequence, TypeVar

import numpy as np

from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    IndexOutOfRange,
    Permutation,
    concat,
    conjugate,
    random_braid_word,
    require_same_m,
)
from braidjohnson.crossing import (
    ConventionError,
    CrossingMatrix,
    HVector,
    lift_C,
)
from braidjohnson.logging_config import get_lazy_logger
from braidjohnson.magnus_johnson import LiftedWedge, delta

logger = get_lazy_logger(__name__)


class NotSimpleBraidError(BraidError):
    """The word does not represent a conjugate of σ_i^{±1}."""


@dataclass(frozen=True)
class SimpleBraid:
    """β = σ_{i₀}^ε * w = w⁻¹ σ_{i₀}^ε w."""
    m: int
    base_index: int
    sign: int
    conjugator: BraidWord

    def __post_init__(self):
        if not 1 <= self.base_index <= self.m - 1:
            raise IndexOutOfRange(f"base index {self.base_index} outside 1..{self.m - 1}")
        if self.sign not in (1, -1):
            raise BraidError(f"sign must be +1 or -1, got {self.sign}")
        require_same_m(self.m, self.conjugator.m)

    def as_word(self) -> BraidWord:
        return as_word(self)


@dataclass(frozen=True)
class CordClass:
    """v(β): the transposition (i j), the sign and [γ̃] ∈ ⊕_{k≠i,j} Z·X_k."""
    m: int
    i: int
    j: int
    sign: int
    homology: HVector

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.m:
            raise IndexOutOfRange(f"cord endpoints must satisfy 1 <= i < j <= {self.m}, got ({self.i}, {self.j})")
        if self.sign not in (1, -1):
            raise BraidError(f"sign must be +1 or -1, got {self.sign}")
        require_same_m(self.m, self.homology.m, "strand count and homology rank")
        if self.homology.coeff(self.i) or self.homology.coeff(self.j):
            raise BraidError(
                f"cord homology must vanish at X{self.i} and X{self.j}, got {self.homology}"
            )

    @property
    def transposition(self) -> Permutation:
        return Permutation.transposition(self.m, self.i, self.j)

    def to_json(self) -> dict:
        return {
            "transposition": [self.i, self.j],
            "sign": self.sign,
            "homology": self.homology.to_json(),
        }


@dataclass(frozen=True)
class ColumnFormulaReport:
    passed: bool
    cord: Optional[CordClass]
    failure: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "cord": self.cord.to_json() if self.cord else None,
            "failure": self.failure,
        }


def as_word(s: SimpleBraid) -> BraidWord:
    return conjugate(BraidWord.generator(s.m, s.base_index, s.sign), s.conjugator)


def _cord_from_matrix(M: CrossingMatrix, perm: Permutation, sign: int) -> CordClass:
    pair = perm.transposition_pair()
    if pair is None:
        raise NotSimpleBraidError(f"underlying permutation {perm} is not a transposition")
    i, j = pair
    f_i = M.column(i)
    homology = f_i - HVector.basis(M.m, j) if sign == 1 else f_i
    if homology.coeff(i) or homology.coeff(j):
        raise ConventionError(
            f"cord homology {homology} has a nonzero X{i} or X{j} coefficient"
        )
    return CordClass(M.m, i, j, sign, homology)


def v_invariant(s: SimpleBraid) -> CordClass:
    lifted = lift_C(as_word(s))
    return _cord_from_matrix(lifted.matrix, lifted.perm, s.sign)


def cord_of_word(word: BraidWord, sign: int) -> CordClass:
    """v of a raw word already known to be a simple braid of the given sign."""
    if word.exponent_sum != sign:
        raise NotSimpleBraidError(f"exponent sum {word.exponent_sum} does not match sign {sign}")
    lifted = lift_C(word)
    return _cord_from_matrix(lifted.matrix, lifted.perm, sign)


def predicted_crossing_matrix(cord: CordClass) -> CrossingMatrix:
    """Rebuild the whole of C(β) from v(β) through the column formulas."""
    m, i, j, h = cord.m, cord.i, cord.j, cord.homology
    x_i, x_j = HVector.basis(m, i), HVector.basis(m, j)
    columns = []
    for k in range(1, m + 1):
        if k == i:
            column = h + x_j if cord.sign == 1 else h
        elif k == j:
            column = -h if cord.sign == 1 else -h - x_i
        elif i < k < j:
            column = (h.coeff(k) - 1) * (x_i - x_j)
        else:
            column = h.coeff(k) * (x_i - x_j)
        columns.append(column.coeffs)
    return CrossingMatrix(np.column_stack(columns))


def check_column_formulas(s: SimpleBraid) -> ColumnFormulaReport:
    lifted = lift_C(as_word(s))
    try:
        cord = _cord_from_matrix(lifted.matrix, lifted.perm, s.sign)
    except ConventionError as e:
        return ColumnFormulaReport(False, None, str(e))
    predicted = predicted_crossing_matrix(cord)
    i, j = cord.i, cord.j
    # f_i holds by construction; check f_j first, then every f_k
    for k in [j] + [k for k in range(1, s.m + 1) if k not in (i, j)]:
        actual, expected = lifted.matrix.column(k), predicted.column(k)
        if actual != expected:
            name = "f_j" if k == j else "f_k"
            return ColumnFormulaReport(False, cord, f"{name} for k={k}: got {actual}, formula gives {expected}")
    return ColumnFormulaReport(True, cord)


def pure_generator(m: int, r: int, s: int) -> BraidWord:
    """A_rs = σ_{s−1}⋯σ_{r+1} σ_r² σ_{r+1}⁻¹⋯σ_{s−1}⁻¹ for 1 ≤ r < s ≤ m."""
    if not 1 <= r < s <= m:
        raise IndexOutOfRange(f"pure generator needs 1 <= r < s <= {m}, got ({r}, {s})")
    down = [(k, 1) for k in range(s - 1, r, -1)]
    up = [(k, -1) for k in range(r + 1, s)]
    return BraidWord(m, tuple(down + [(r, 1), (r, 1)] + up))


def straight_cord_braid(m: int, i: int, j: int, sign: int) -> SimpleBraid:
    """σ_{j−1}⋯σ_{i+1} σ_i^ε σ_{i+1}⁻¹⋯σ_{j−1}⁻¹: the cord along the segment q_i q_j."""
    if not 1 <= i < j <= m:
        raise IndexOutOfRange(f"cord endpoints must satisfy 1 <= i < j <= {m}, got ({i}, {j})")
    conjugator = BraidWord(m, tuple((k, -1) for k in range(i + 1, j)))
    return SimpleBraid(m, i, sign, conjugator)


def construct_from_invariant(m: int, i: int, j: int, sign: int, homology: HVector) -> SimpleBraid:
    """
    A simple braid with v = (homology, sign) in the (i j) class.

    Starts from the straight cord and appends powers of A_{ik} to the
    conjugator; each power winds the cord around q_k and shifts only the
    X_k coefficient. The result is checked by recomputing v.
    """
    target = CordClass(m, i, j, sign, homology)
    base = straight_cord_braid(m, i, j, sign)
    current = v_invariant(base).homology
    conjugator = base.conjugator
    for k in range(1, m + 1):
        if k in (i, j):
            continue
        gap = homology.coeff(k) - current.coeff(k)
        if gap == 0:
            continue
        bump = pure_generator(m, min(i, k), max(i, k))
        step = v_invariant(SimpleBraid(m, i, sign, concat(conjugator, bump))).homology - current
        if step != HVector.basis(m, k) and step != -HVector.basis(m, k):
            raise ConventionError(f"winding around q{k} shifted the cord class by {step}, expected ±X{k}")
        power = gap * step.coeff(k)
        conjugator = concat(conjugator, bump ** power)
        current = current + step * gap * step.coeff(k)
    result = SimpleBraid(m, i, sign, conjugator)
    got = v_invariant(result)
    if got != target:
        raise ConventionError(f"constructed braid has v = {got.to_json()}, wanted {target.to_json()}")
    logger.debug(f"realized cord ({i} {j}) sign {sign} homology {homology} with {len(conjugator)} conjugator letters")
    return result


def mu(cord: CordClass) -> LiftedWedge:
    """The τ̃₁θ value (δ(C), (i j)) shared by every simple braid with this v."""
    return LiftedWedge(delta(predicted_crossing_matrix(cord)), cord.transposition)


def random_simple_braid(rng: np.random.Generator, m: int, max_conjugator_length: int) -> SimpleBraid:
    base = int(rng.integers(1, m))
    sign = int(rng.choice(np.array([-1, 1])))
    return SimpleBraid(m, base, sign, random_braid_word(rng, m, max_conjugator_length))


class _GroupElement(Protocol):
    def __mul__(self, other): ...

    def inverse(self): ...


G = TypeVar("G", bound=_GroupElement)


def hurwitz_move(t: Sequence[G], p: int, direction: int) -> tuple[G, ...]:
    """
    +1: (…, a_p, a_{p+1}, …) ↦ (…, a_{p+1}, a_{p+1}⁻¹ a_p a_{p+1}, …)
    −1: (…, a_p, a_{p+1}, …) ↦ (…, a_p a_{p+1} a_p⁻¹, a_p, …)
    Works on any tuple of elements with ``*`` and ``inverse()``.
    """
    if not 1 <= p <= len(t) - 1:
        raise IndexOutOfRange(f"Hurwitz move index {p} outside 1..{len(t) - 1}")
    if direction not in (1, -1):
        raise BraidError(f"Hurwitz direction must be +1 or -1, got {direction}")
    out = list(t)
    a, b = out[p - 1], out[p]
    if direction == 1:
        out[p - 1], out[p] = b, b.inverse() * a * b
    else:
        out[p - 1], out[p] = a * b * a.inverse(), a
    return tuple(out)


def apply_hurwitz_moves(t: Sequence[G], moves: Iterable[int]) -> tuple[G, ...]:
    """Apply signed moves in order: +p is move p forward, −p its inverse."""
    result = tuple(t)
    for move in moves:
        if move == 0:
            raise BraidError("0 is not a Hurwitz move")
        result = hurwitz_move(result, abs(move), 1 if move > 0 else -1)
    return result

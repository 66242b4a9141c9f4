"""
Membership tests for the images of the crossing-matrix map and a bounded
realization search for positive pure braids.

With the tracker used in crossing, C(σ_j) has its 1 at (j+1, j) and C(π⁺) is
strictly lower triangular for every permutation braid π⁺. The conditions on
permutation-braid matrices are therefore applied transposed:

  (i)   L[i][j] = 0 whenever i <= j
  (ii)  L[i][j] ∈ {0, 1}
  (iii) L[j][i] = L[k][j] = p implies L[k][i] = p, for i < j < k and p ∈ {0, 1}
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Iterator, Optional

import numpy as np

from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    Permutation,
    StrandTracker,
    concat,
    inverse,
    underlying_permutation,
)
from braidjohnson.crossing import ConventionError, CrossingMatrix, crossing_matrix
from braidjohnson.logging_config import get_lazy_logger
from braidjohnson.simple_braids import pure_generator
from braidjohnson.utils import log_performance

logger = get_lazy_logger(__name__)


class ConditionsError(BraidError):
    """Search input violates the positive-pure conditions or has a bad limit."""


def is_perm_braid_matrix(L: CrossingMatrix) -> bool:
    a = L.entries
    if np.triu(a).any():
        return False
    if not np.isin(a, (0, 1)).all():
        return False
    for i, j, k in combinations(range(L.m), 3):
        if a[j, i] == a[k, j] and a[k, i] != a[j, i]:
            return False
    return True


def permutation_braid(p: Permutation) -> BraidWord:
    """
    The positive braid π⁺ with |π⁺| = p in which each pair of strands crosses
    at most once. Bubble-sorting the bottom arrangement back to the identity
    and replaying the swaps in reverse gives its letters.
    """
    arrangement = list(p.images)
    swaps: list[int] = []
    for end in range(p.m - 1, 0, -1):
        for pos in range(end):
            if arrangement[pos] > arrangement[pos + 1]:
                arrangement[pos], arrangement[pos + 1] = arrangement[pos + 1], arrangement[pos]
                swaps.append(pos + 1)
    return BraidWord(p.m, tuple((k, 1) for k in reversed(swaps)))


def decompose_crossing_matrix(A: CrossingMatrix) -> tuple[CrossingMatrix, CrossingMatrix]:
    """Split A into (M, L): M symmetric and L zero on and above the diagonal."""
    lower = np.tril(A.entries - A.entries.T, k=-1)
    return CrossingMatrix(A.entries - lower), CrossingMatrix(lower)


def is_in_image_C(A: CrossingMatrix) -> bool:
    _, L = decompose_crossing_matrix(A)
    return is_perm_braid_matrix(L)


def permutation_from_perm_braid_matrix(L: CrossingMatrix) -> Permutation:
    """The permutation p with C(p⁺) = L."""
    if not is_perm_braid_matrix(L):
        raise BraidError(f"not a permutation-braid matrix: {L.rows()}")
    a = L.entries
    images = [0] * L.m
    for s in range(L.m):
        # strands left of s at the bottom: uncrossed ones starting left, crossed ones starting right
        position = int((a[s, :s] == 0).sum() + (a[s + 1:, s] == 1).sum())
        images[position] = s + 1
    return Permutation(tuple(images))


def pure_part(word: BraidWord) -> BraidWord:
    """β·(|β|⁺)⁻¹, a pure braid with C(β) = C(pure part) + C(|β|⁺)."""
    return concat(word, inverse(permutation_braid(underlying_permutation(word))))


def realize_crossing_matrix(A: CrossingMatrix) -> BraidWord:
    """A word with crossing matrix A: Π A_rs^{M_rs} followed by the permutation braid of L."""
    if not is_in_image_C(A):
        raise BraidError(f"matrix is not the crossing matrix of any braid: {A.rows()}")
    M, L = decompose_crossing_matrix(A)
    word = BraidWord.identity(A.m)
    for r, s in combinations(range(1, A.m + 1), 2):
        count = M.entry(r, s)
        if count:
            word = concat(word, pure_generator(A.m, r, s) ** count)
    word = concat(word, permutation_braid(permutation_from_perm_braid_matrix(L)))
    if crossing_matrix(word) != A:
        raise ConventionError(f"realization gives {crossing_matrix(word).rows()}, wanted {A.rows()}")
    return word


def satisfies_ppb_conjecture_conditions(M: CrossingMatrix) -> bool:
    a = M.entries
    if not M.is_symmetric() or (a < 0).any():
        return False
    for i, j, k in combinations(range(M.m), 3):
        if a[i, j] == 0 and a[j, k] == 0 and a[i, k] != 0:
            return False
    return True


class _PositiveSearch:
    """Depth-first search over positive words whose crossing counts stay below a target."""

    def __init__(self, target: np.ndarray, canonical: bool):
        self.target = target
        self.m = target.shape[0]
        self.length = int(target.sum())
        self.canonical = canonical
        self.counts = np.zeros_like(target)
        self.tracker = StrandTracker(self.m)
        self.letters: list[int] = []

    def _allowed(self, k: int) -> bool:
        if self.canonical and self.letters and k < self.letters[-1] - 1:
            return False
        left, right = self.tracker.positions[k - 1], self.tracker.positions[k]
        return self.counts[right - 1, left - 1] < self.target[right - 1, left - 1]

    def run(self, prefix: Optional[int] = None) -> Iterator[tuple[int, ...]]:
        if prefix is None:
            yield from self._descend()
            return
        if self.length == 0 or not self._allowed(prefix):
            return
        yield from self._step(prefix)

    def _step(self, k: int) -> Iterator[tuple[int, ...]]:
        left, right = self.tracker.cross(k)
        self.counts[right - 1, left - 1] += 1
        self.letters.append(k)
        yield from self._descend()
        self.letters.pop()
        self.counts[right - 1, left - 1] -= 1
        self.tracker.cross(k)

    def _descend(self) -> Iterator[tuple[int, ...]]:
        if len(self.letters) == self.length:
            # every entry has reached its target, so each pair crossed an even number of times
            yield tuple(self.letters)
            return
        for k in range(1, self.m):
            if self._allowed(k):
                yield from self._step(k)


def _search_partition(rows: list[list[int]], first: Optional[int], limit: Optional[int],
                      canonical: bool) -> list[tuple[int, ...]]:
    search = _PositiveSearch(np.array(rows, dtype=np.int64), canonical)
    found = []
    for letters in search.run(first):
        found.append(letters)
        if limit is not None and len(found) >= limit:
            break
    return found


@log_performance("search_positive_pure_realizations")
def search_positive_pure_realizations(M: CrossingMatrix, limit: Optional[int] = 1,
                                      workers: int = 1, canonical: bool = True) -> list[BraidWord]:
    """
    Positive pure braid words with crossing matrix exactly M, in lexicographic
    order, at most ``limit`` of them (``None`` lists all). An empty list means
    no positive braid has crossing matrix M.
    """
    if limit is not None and limit < 1:
        raise ConditionsError(f"limit must be a positive count, got {limit}")
    if not satisfies_ppb_conjecture_conditions(M):
        raise ConditionsError(f"matrix fails the positive-pure conditions: {M.rows()}")

    rows = M.rows()
    if workers <= 1 or M.total() == 0 or M.m == 2:
        found = _search_partition(rows, None, limit, canonical)
    else:
        firsts = range(1, M.m)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_search_partition, rows, k, limit, canonical) for k in firsts]
            found = sorted(letters for future in futures for letters in future.result())
        if limit is not None:
            found = found[:limit]

    words = [BraidWord(M.m, tuple((k, 1) for k in letters)) for letters in found]
    logger.info(f"found {len(words)} positive pure realization(s) of length {M.total()} for m={M.m}")
    return words

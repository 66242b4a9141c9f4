"""
The Artin representation Φ: B_m → Aut(F_m), applied operationally.

For σ_i:   x_i ↦ x_{i+1},           x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}
For σ_i⁻¹: x_i ↦ x_i x_{i+1} x_i⁻¹,  x_{i+1} ↦ x_i
All other generators are fixed. Letters of a braid word are applied right to
left, so Φ(β₁β₂) = Φ(β₁) ∘ Φ(β₂).
"""
from __future__ import annotations

from braidjohnson.braid_core import BraidWord, require_same_m, underlying_permutation
from braidjohnson.crossing import HVector
from braidjohnson.free_group import FreeWord, Syllable
from braidjohnson.logging_config import get_lazy_logger

logger = get_lazy_logger(__name__)


def generator_image(i: int, sign: int, k: int) -> tuple[Syllable, ...]:
    """Image of x_k under Φ(σ_i^sign), as unreduced syllables."""
    if sign == 1:
        if k == i:
            return ((i + 1, 1),)
        if k == i + 1:
            return ((i + 1, -1), (i, 1), (i + 1, 1))
    else:
        if k == i:
            return ((i, 1), (i + 1, 1), (i, -1))
        if k == i + 1:
            return ((i, 1),)
    return ((k, 1),)


def _substitute(i: int, sign: int, w: FreeWord) -> FreeWord:
    out: list[Syllable] = []
    for k, s in w.syllables:
        image = generator_image(i, sign, k)
        if s == 1:
            out.extend(image)
        else:
            out.extend((g, -e) for g, e in reversed(image))
    return FreeWord(w.m, tuple(out))


def apply_artin(b: BraidWord, w: FreeWord) -> FreeWord:
    """Φ(β)(w): one substitution pass per letter, innermost letter first."""
    require_same_m(b.m, w.m, "strand count and free rank")
    for i, sign in reversed(b.letters):
        w = _substitute(i, sign, w)
    return w


def artin_abelianized(b: BraidWord, v: HVector) -> HVector:
    """|Φ(β)| on H, which is the permutation action of |β|."""
    require_same_m(b.m, v.m, "strand count and rank")
    return v.permuted(underlying_permutation(b))

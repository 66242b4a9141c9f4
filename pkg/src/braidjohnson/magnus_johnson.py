"""
Degree-2 truncated Magnus expansion, the extended first Johnson homomorphism
τ₁θ on B_m and the map δ: Mat⁰_m → Hom(H, ∧²H).

∧²H is embedded in H⊗H by X∧Y ↦ X⊗Y − Y⊗X, so a WedgeMap stores, for every
basis vector X_i, a full antisymmetric m×m coefficient matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from braidjohnson.artin import generator_image, apply_artin
from braidjohnson.braid_core import (
    BraidError,
    BraidWord,
    IndexOutOfRange,
    Permutation,
    inverse,
    require_same_m,
    underlying_permutation,
)
from braidjohnson.crossing import (
    ConventionError,
    CrossingMatrix,
    REFERENCE_WORD,
    HVector,
    ENTRY_BOUND,
    checked,
    crossing_matrix,
)
from braidjohnson.free_group import FreeWord
from braidjohnson.logging_config import get_lazy_logger

logger = get_lazy_logger(__name__)

TauMethod = Literal["expansion", "word"]


@dataclass(frozen=True, eq=False)
class Tensor2:
    """An element of H⊗H; coeffs[k - 1, l - 1] is the coefficient of X_k⊗X_l."""
    coeffs: np.ndarray

    def __post_init__(self):
        arr = checked(self.coeffs)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise BraidError(f"Tensor2 needs a square coefficient array, got shape {arr.shape}")
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def zero(cls, m: int) -> "Tensor2":
        return cls(np.zeros((m, m), dtype=np.int64))

    @classmethod
    def outer(cls, a: HVector, b: HVector) -> "Tensor2":
        require_same_m(a.m, b.m, "ranks")
        return cls(np.outer(a.coeffs, b.coeffs))

    @classmethod
    def wedge(cls, a: HVector, b: HVector) -> "Tensor2":
        """a∧b = a⊗b − b⊗a."""
        return cls.outer(a, b) - cls.outer(b, a)

    @property
    def m(self) -> int:
        return int(self.coeffs.shape[0])

    def coeff(self, k: int, l: int) -> int:
        if not (1 <= k <= self.m and 1 <= l <= self.m):
            raise IndexOutOfRange(f"tensor index ({k}, {l}) outside 1..{self.m}")
        return int(self.coeffs[k - 1, l - 1])

    def __add__(self, other: "Tensor2") -> "Tensor2":
        require_same_m(self.m, other.m, "ranks")
        return Tensor2(self.coeffs + other.coeffs)

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        require_same_m(self.m, other.m, "ranks")
        return Tensor2(self.coeffs - other.coeffs)

    def __neg__(self) -> "Tensor2":
        return Tensor2(-self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Tensor2) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    def is_antisymmetric(self) -> bool:
        return bool(np.array_equal(self.coeffs, -self.coeffs.T))

    def permuted(self, p: Permutation) -> "Tensor2":
        """π^{⊗2}: X_k⊗X_l ↦ X_{π(k)}⊗X_{π(l)}."""
        require_same_m(self.m, p.m, "ranks")
        idx = p.index_array()
        out = np.empty_like(self.coeffs)
        out[np.ix_(idx, idx)] = self.coeffs
        return Tensor2(out)

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": self.coeffs.tolist()}


@dataclass(frozen=True)
class TruncatedExpansion:
    """1 + deg1 + deg2 in the power series ring, modulo degree ≥ 3."""
    deg1: HVector
    deg2: Tensor2

    def __post_init__(self):
        require_same_m(self.deg1.m, self.deg2.m, "degree-1 and degree-2 ranks")

    @classmethod
    def one(cls, m: int) -> "TruncatedExpansion":
        return cls(HVector.zero(m), Tensor2.zero(m))

    @classmethod
    def generator(cls, m: int, k: int, sign: int = 1) -> "TruncatedExpansion":
        """θ(x_k) = 1 + X_k and θ(x_k⁻¹) = 1 − X_k + X_k⊗X_k."""
        x = HVector.basis(m, k)
        if sign == 1:
            return cls(x, Tensor2.zero(m))
        return cls(-x, Tensor2.outer(x, x))

    @property
    def m(self) -> int:
        return self.deg1.m

    def __mul__(self, other: "TruncatedExpansion") -> "TruncatedExpansion":
        return TruncatedExpansion(
            self.deg1 + other.deg1,
            self.deg2 + other.deg2 + Tensor2.outer(self.deg1, other.deg1),
        )

    def inverse(self) -> "TruncatedExpansion":
        # (1 + a₁ + a₂)⁻¹ = 1 − a₁ + (a₁⊗a₁ − a₂) mod degree 3
        return TruncatedExpansion(-self.deg1, Tensor2.outer(self.deg1, self.deg1) - self.deg2)

    def __pow__(self, sign: int) -> "TruncatedExpansion":
        if sign == 1:
            return self
        if sign == -1:
            return self.inverse()
        raise BraidError(f"only ±1 powers of an expansion are used, got {sign}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncatedExpansion) and self.deg1 == other.deg1 and self.deg2 == other.deg2

    def __hash__(self) -> int:
        return hash((self.deg1, self.deg2))


def magnus(w: FreeWord) -> TruncatedExpansion:
    result = TruncatedExpansion.one(w.m)
    for k, s in w.syllables:
        result = result * TruncatedExpansion.generator(w.m, k, s)
    return result


def theta2(w: FreeWord) -> Tensor2:
    return magnus(w).deg2


@dataclass(frozen=True, eq=False)
class WedgeMap:
    """
    An element of Hom(H, ∧²H). images[i - 1] is the antisymmetric coefficient
    matrix of the image of X_i.
    """
    images: np.ndarray

    def __post_init__(self):
        arr = checked(self.images)
        if arr.ndim != 3 or not (arr.shape[0] == arr.shape[1] == arr.shape[2]) or arr.shape[0] == 0:
            raise BraidError(f"WedgeMap needs an m×m×m array, got shape {arr.shape}")
        if not np.array_equal(arr, -np.transpose(arr, (0, 2, 1))):
            raise BraidError("every image of a WedgeMap must be antisymmetric")
        object.__setattr__(self, "images", arr)

    @classmethod
    def zero(cls, m: int) -> "WedgeMap":
        return cls(np.zeros((m, m, m), dtype=np.int64))

    @classmethod
    def from_images(cls, images: list[Tensor2]) -> "WedgeMap":
        return cls(np.stack([t.coeffs for t in images]))

    @property
    def m(self) -> int:
        return int(self.images.shape[0])

    def image(self, i: int) -> Tensor2:
        if not 1 <= i <= self.m:
            raise IndexOutOfRange(f"basis index {i} outside 1..{self.m}")
        return Tensor2(self.images[i - 1])

    def wedge_coefficient(self, i: int, k: int, l: int) -> int:
        """Coefficient of X_k∧X_l in the image of X_i."""
        return self.image(i).coeff(k, l)

    def __add__(self, other: "WedgeMap") -> "WedgeMap":
        require_same_m(self.m, other.m, "ranks")
        return WedgeMap(self.images + other.images)

    def __sub__(self, other: "WedgeMap") -> "WedgeMap":
        require_same_m(self.m, other.m, "ranks")
        return WedgeMap(self.images - other.images)

    def __neg__(self) -> "WedgeMap":
        return WedgeMap(-self.images)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WedgeMap) and np.array_equal(self.images, other.images)

    def __hash__(self) -> int:
        return hash((self.m, self.images.tobytes()))

    def is_zero(self) -> bool:
        return not self.images.any()

    def act(self, p: Permutation) -> "WedgeMap":
        """p ⊙ F, where (p⊙F)(X) = p^{⊗2}(F(p⁻¹X))."""
        require_same_m(self.m, p.m, "ranks")
        idx = p.index_array()
        out = np.empty_like(self.images)
        out[np.ix_(idx, idx, idx)] = self.images
        return WedgeMap(out)

    def to_json(self) -> list[dict]:
        """Nonzero X_k∧X_l coefficients (k < l) of each image, basis by basis."""
        result = []
        for i in range(1, self.m + 1):
            block = self.images[i - 1]
            rows, cols = np.nonzero(np.triu(block, k=1))
            wedge = [
                {"i": int(k) + 1, "j": int(l) + 1, "c": int(block[k, l])}
                for k, l in zip(rows.tolist(), cols.tolist())
            ]
            result.append({"basis": f"X{i}", "wedge": wedge})
        return result


def _expansions_of_artin_images(b: BraidWord) -> list[TruncatedExpansion]:
    """
    θ(Φ(β)(x_k)) for every k, built letter by letter inside the truncated
    algebra instead of on the (possibly very long) free words.
    """
    m = b.m
    # deg1[k] and deg2[k] hold the expansion of the current image of x_{k+1}
    deg1 = np.eye(m, dtype=np.int64)
    deg2 = np.zeros((m, m, m), dtype=np.int64)
    # Φ(g₁⋯g_t)(x_k) = Φ(g₁⋯g_{t-1})(Φ(g_t)(x_k)), and Φ(g_t)(x_k) is a short word
    for i, sign in b.letters:
        new1, new2 = {}, {}
        for k in (i, i + 1):
            a1 = np.zeros(m, dtype=np.int64)
            a2 = np.zeros((m, m), dtype=np.int64)
            for l, s in generator_image(i, sign, k):
                b1, b2 = deg1[l - 1], deg2[l - 1]
                if s == -1:
                    b1, b2 = -b1, np.outer(b1, b1) - b2
                a2 = a2 + b2 + np.outer(a1, b1)
                a1 = a1 + b1
            new1[k], new2[k] = a1, a2
        for k in (i, i + 1):
            deg1[k - 1], deg2[k - 1] = new1[k], new2[k]
        if np.abs(deg2).max(initial=0) >= ENTRY_BOUND:
            raise OverflowError("Magnus coefficients exceed the checked int64 range")
    return [TruncatedExpansion(HVector(deg1[k]), Tensor2(deg2[k])) for k in range(m)]


def tau1(b: BraidWord, method: TauMethod = "expansion") -> WedgeMap:
    """
    τ₁θ(β): X_i ↦ −|β|^{⊗2}(θ₂(Φ(β)⁻¹(x_i))), with Φ(β)⁻¹ = Φ(β⁻¹).

    ``method="word"`` expands every Φ(β⁻¹)(x_i) as a reduced free word first;
    ``"expansion"`` composes truncated expansions and agrees with it exactly.
    """
    perm = underlying_permutation(b)
    inv = inverse(b)
    if method == "word":
        tensors = [theta2(apply_artin(inv, FreeWord.generator(b.m, k))) for k in range(1, b.m + 1)]
    elif method == "expansion":
        tensors = [e.deg2 for e in _expansions_of_artin_images(inv)]
    else:
        raise BraidError(f"unknown τ₁θ method {method!r}")

    images = []
    for k, t in enumerate(tensors, start=1):
        image = -t.permuted(perm)
        if not image.is_antisymmetric():
            raise ConventionError(
                f"τ₁θ image of X{k} is not antisymmetric for word [{b}]: {image.coeffs.tolist()}"
            )
        images.append(image)
    return WedgeMap.from_images(images)


def delta(M: CrossingMatrix) -> WedgeMap:
    """δ(M)(X_i) = X_i ∧ f_i(M)."""
    m = M.m
    out = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        column = M.entries[:, i]
        out[i, i, :] += column
        out[i, :, i] -= column
    return WedgeMap(out)


def delta_preimage(W: WedgeMap) -> CrossingMatrix:
    """The unique M with δ(M) = W; raises if W is outside the image of δ."""
    m = W.m
    entries = np.zeros((m, m), dtype=np.int64)
    for i in range(m):
        entries[:, i] = W.images[i, i, :]
    entries[np.diag_indices(m)] = 0
    M = CrossingMatrix(entries)
    if delta(M) != W:
        raise BraidError("wedge map is not of the form X_i ↦ X_i ∧ f_i for any crossing matrix")
    return M


@dataclass(frozen=True)
class LiftedWedge:
    """(F, π) in Hom(H, ∧²H) ⋊ S_m with (F₁,π₁)(F₂,π₂) = (F₁ + π₁⊙F₂, π₁π₂)."""
    wedge: WedgeMap
    perm: Permutation

    @classmethod
    def identity(cls, m: int) -> "LiftedWedge":
        return cls(WedgeMap.zero(m), Permutation.identity(m))

    def __mul__(self, other: "LiftedWedge") -> "LiftedWedge":
        return LiftedWedge(self.wedge + other.wedge.act(self.perm), self.perm * other.perm)

    def inverse(self) -> "LiftedWedge":
        inv = self.perm.inverse()
        return LiftedWedge(-self.wedge.act(inv), inv)

    def to_json(self) -> dict:
        return {"m": self.wedge.m, "tau1": self.wedge.to_json(), "perm": self.perm.to_json()}


def lift_tau(b: BraidWord) -> LiftedWedge:
    return LiftedWedge(tau1(b), underlying_permutation(b))


def _check_conventions() -> None:
    for m in (2, 3):
        x1, x2 = HVector.basis(m, 1), HVector.basis(m, 2)
        expected = Tensor2.wedge(x1, x2)
        for method in ("expansion", "word"):
            got = tau1(BraidWord.generator(m, 1), method)
            if got.image(1) != expected:
                raise ConventionError(
                    f"τ₁θ(σ₁)(X₁) should be X₁∧X₂, got {got.image(1).coeffs.tolist()} "
                    f"(method {method}); check the Artin letter order"
                )
    word = BraidWord.from_ints(3, REFERENCE_WORD)
    whole = lift_tau(word)
    for cut in range(len(word) + 1):
        head = BraidWord(3, word.letters[:cut])
        tail = BraidWord(3, word.letters[cut:])
        if lift_tau(head) * lift_tau(tail) != whole:
            raise ConventionError(f"τ₁θ crossed-hom law fails on the reference word at split {cut}")
    if whole.wedge != delta(crossing_matrix(word)):
        raise ConventionError("τ₁θ and δ∘C disagree on the reference word")
    logger.debug("Johnson map conventions verified against the reference word")


_check_conventions()

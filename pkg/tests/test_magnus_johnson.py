import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidjohnson.braid_core import BraidError, BraidWord, Permutation, concat, inverse, underlying_permutation
from braidjohnson.crossing import CrossingMatrix, HVector, act_permutation, crossing_matrix
from braidjohnson.free_group import FreeWord, abelianize, invert
from braidjohnson.magnus_johnson import (
    LiftedWedge,
    Tensor2,
    TruncatedExpansion,
    WedgeMap,
    delta,
    delta_preimage,
    lift_tau,
    magnus,
    tau1,
    theta2,
)
from braidjohnson.verify import all_words
from tests.strategies import braid_pairs, braid_words, free_words


def test_generator_expansions():
    m = 3
    x2 = HVector.basis(m, 2)
    assert magnus(FreeWord.generator(m, 2)) == TruncatedExpansion(x2, Tensor2.zero(m))
    inv = magnus(FreeWord.generator(m, 2, -1))
    assert inv.deg1 == -x2
    assert inv.deg2 == Tensor2.outer(x2, x2)
    assert magnus(FreeWord.identity(m)) == TruncatedExpansion.one(m)


def test_commutator_expansion():
    m = 2
    x1, x2 = HVector.basis(m, 1), HVector.basis(m, 2)
    commutator = FreeWord.from_ints(m, (1, 2, -1, -2))
    assert magnus(commutator) == TruncatedExpansion(HVector.zero(m), Tensor2.wedge(x1, x2))


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=4).flatmap(lambda m: st.tuples(free_words(m), free_words(m), free_words(m))))
def test_magnus_is_multiplicative(triple):
    a, b, c = triple
    assert magnus(a * b) == magnus(a) * magnus(b)
    assert (magnus(a) * magnus(b)) * magnus(c) == magnus(a) * (magnus(b) * magnus(c))
    assert magnus(a) * magnus(invert(a)) == TruncatedExpansion.one(a.m)
    assert magnus(a).deg1 == abelianize(a)


@settings(max_examples=200)
@given(st.integers(min_value=1, max_value=4).flatmap(lambda m: st.tuples(free_words(m), free_words(m))))
def test_theta2_conjugation_formula(pair):
    """θ₂(y⁻¹xy) = θ₂(x) + [x]⊗[y] − [y]⊗[x]"""
    x, y = pair
    ax, ay = abelianize(x), abelianize(y)
    assert theta2(invert(y) * x * y) == theta2(x) + Tensor2.outer(ax, ay) - Tensor2.outer(ay, ax)


def test_expansion_power_rejects_other_exponents():
    e = TruncatedExpansion.generator(2, 1)
    assert e ** -1 == e.inverse()
    with pytest.raises(BraidError):
        e ** 2


@pytest.mark.parametrize("m", range(2, 7))
def test_tau1_on_generators(m):
    for i in range(1, m):
        expected = Tensor2.wedge(HVector.basis(m, i), HVector.basis(m, i + 1))
        positive = tau1(BraidWord.generator(m, i))
        negative = tau1(BraidWord.generator(m, i, -1))
        for k in range(1, m + 1):
            assert positive.image(k) == (expected if k == i else Tensor2.zero(m))
            assert negative.image(k) == (expected if k == i + 1 else Tensor2.zero(m))


def test_tau1_of_reference_word(reference_word):
    W = tau1(reference_word)
    assert W == delta(crossing_matrix(reference_word))
    # column 3 of the reference matrix is X1 + X2
    x1, x2, x3 = (HVector.basis(3, k) for k in (1, 2, 3))
    assert W.image(3) == Tensor2.wedge(x3, x1 + x2)
    assert W.wedge_coefficient(3, 1, 3) == -1


@settings(max_examples=200, deadline=None)
@given(braid_words(max_length=40))
def test_tau1_factors_through_crossing_matrix(b):
    assert tau1(b) == delta(crossing_matrix(b))


def test_tau1_exhaustive_b3():
    count = 0
    for b in all_words(3, 4):
        assert tau1(b) == delta(crossing_matrix(b))
        count += 1
    assert count == 341


@settings(max_examples=100, deadline=None)
@given(braid_words(max_length=8, max_m=5))
def test_tau1_methods_agree(b):
    assert tau1(b, "word") == tau1(b, "expansion")


def test_tau1_unknown_method():
    with pytest.raises(BraidError):
        tau1(BraidWord.generator(3, 1), "series")


@settings(max_examples=200, deadline=None)
@given(braid_pairs(max_length=20))
def test_lifted_tau_is_homomorphism(pair):
    a, b = pair
    assert lift_tau(concat(a, b)) == lift_tau(a) * lift_tau(b)
    assert tau1(concat(a, b)) == tau1(a) + tau1(b).act(underlying_permutation(a))


def test_lifted_wedge_group_laws(reference_word):
    lifted = lift_tau(reference_word)
    identity = LiftedWedge.identity(3)
    assert lifted * identity == lifted
    assert lifted * lifted.inverse() == identity
    assert lift_tau(inverse(reference_word)) == lifted.inverse()
    data = lifted.to_json()
    assert data["m"] == 3
    assert data["perm"] == underlying_permutation(reference_word).to_json()


def test_delta_of_generator_matrix():
    W = delta(crossing_matrix(BraidWord.generator(2, 1)))
    assert W.images[0].tolist() == [[0, 1], [-1, 0]]
    assert W.image(2) == Tensor2.zero(2)
    assert W.to_json() == [
        {"basis": "X1", "wedge": [{"i": 1, "j": 2, "c": 1}]},
        {"basis": "X2", "wedge": []},
    ]
    assert delta(CrossingMatrix.zero(4)).is_zero()


def test_delta_is_injective_and_equivariant(rng):
    for _ in range(100):
        m = int(rng.integers(2, 7))
        entries = rng.integers(-5, 6, size=(m, m))
        np.fill_diagonal(entries, 0)
        M = CrossingMatrix(entries)
        assert delta_preimage(delta(M)) == M
        p = Permutation(tuple(int(x) + 1 for x in rng.permutation(m)))
        assert delta(act_permutation(p, M)) == delta(M).act(p)
        assert delta(M + M) == delta(M) + delta(M)


def test_delta_preimage_rejects_maps_outside_image():
    x1, x2, x3 = (HVector.basis(3, k) for k in (1, 2, 3))
    W = WedgeMap.from_images([Tensor2.wedge(x2, x3), Tensor2.zero(3), Tensor2.zero(3)])
    with pytest.raises(BraidError):
        delta_preimage(W)


def test_wedge_map_validation():
    with pytest.raises(BraidError):
        WedgeMap(np.ones((2, 2, 2), dtype=np.int64))
    with pytest.raises(BraidError):
        WedgeMap(np.zeros((2, 3, 3), dtype=np.int64))
    with pytest.raises(BraidError):
        Tensor2(np.zeros((2, 3), dtype=np.int64))


def test_tensor_permutation_moves_both_indices():
    m = 3
    t = Tensor2.outer(HVector.basis(m, 1), HVector.basis(m, 2))
    p = Permutation((2, 3, 1))
    assert t.permuted(p) == Tensor2.outer(HVector.basis(m, 2), HVector.basis(m, 3))
    assert t.permuted(p).permuted(p.inverse()) == t

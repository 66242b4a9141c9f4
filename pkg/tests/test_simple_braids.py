import pytest

from braidjohnson.braid_core import BraidError, BraidWord, IndexOutOfRange, underlying_permutation
from braidjohnson.crossing import CrossingMatrix, HVector, crossing_matrix, lift_C
from braidjohnson.magnus_johnson import lift_tau
from braidjohnson.simple_braids import (
    CordClass,
    NotSimpleBraidError,
    SimpleBraid,
    apply_hurwitz_moves,
    as_word,
    check_column_formulas,
    construct_from_invariant,
    cord_of_word,
    hurwitz_move,
    mu,
    predicted_crossing_matrix,
    pure_generator,
    random_simple_braid,
    straight_cord_braid,
    v_invariant,
)


@pytest.fixture
def b5_example():
    return SimpleBraid(5, 1, 1, BraidWord.from_ints(5, (2, -3, -4, -4, -1, -1)))


def test_b5_example_invariant(b5_example):
    cord = v_invariant(b5_example)
    assert (cord.i, cord.j, cord.sign) == (1, 4, 1)
    assert cord.homology.coeffs.tolist() == [0, 2, 0, 0, -1]
    assert cord.to_json() == {"transposition": [1, 4], "sign": 1, "homology": {"coeffs": [0, 2, 0, 0, -1]}}
    assert underlying_permutation(as_word(b5_example)) == cord.transposition


def test_b5_example_matrix_matches_formulas(b5_example):
    cord = v_invariant(b5_example)
    assert predicted_crossing_matrix(cord) == crossing_matrix(as_word(b5_example))
    assert check_column_formulas(b5_example).passed


@pytest.mark.parametrize("m,i", [(2, 1), (4, 2), (6, 5)])
@pytest.mark.parametrize("sign", [1, -1])
def test_generators_have_trivial_cord(m, i, sign):
    cord = v_invariant(SimpleBraid(m, i, sign, BraidWord.identity(m)))
    assert (cord.i, cord.j, cord.sign) == (i, i + 1, sign)
    assert cord.homology.is_zero()


def test_column_formulas_on_random_simple_braids(rng):
    signs = set()
    for _ in range(300):
        s = random_simple_braid(rng, int(rng.integers(2, 8)), 30)
        report = check_column_formulas(s)
        assert report.passed, report.failure
        assert report.to_json()["passed"]
        signs.add(s.sign)
    assert signs == {1, -1}


@pytest.mark.parametrize("sign", [1, -1])
def test_straight_cord_has_zero_class(sign):
    s = straight_cord_braid(5, 2, 5, sign)
    cord = v_invariant(s)
    assert (cord.i, cord.j) == (2, 5)
    assert cord.homology.is_zero()


def test_construct_b5_target():
    target = HVector.from_dict(5, {2: 2, 5: -1})
    s = construct_from_invariant(5, 1, 4, 1, target)
    assert v_invariant(s) == CordClass(5, 1, 4, 1, target)


def test_construct_random_targets(rng):
    m = 5
    for _ in range(60):
        i, j = sorted(int(x) + 1 for x in rng.choice(m, size=2, replace=False))
        sign = int(rng.choice([-1, 1]))
        coeffs = rng.integers(-3, 4, size=m)
        coeffs[[i - 1, j - 1]] = 0
        target = HVector(coeffs)
        s = construct_from_invariant(m, i, j, sign, target)
        assert v_invariant(s) == CordClass(m, i, j, sign, target)
        assert check_column_formulas(s).passed


def test_construct_rejects_bad_targets():
    with pytest.raises(BraidError):
        construct_from_invariant(4, 1, 3, 1, HVector.basis(4, 1))
    with pytest.raises(IndexOutOfRange):
        construct_from_invariant(4, 3, 2, 1, HVector.zero(4))


def test_mu_matches_lifted_tau_and_separates_classes():
    m = 4
    seen = {}
    for a in range(-2, 3):
        for b in range(-2, 3):
            homology = HVector.from_dict(m, {2: a, 4: b})
            cord = CordClass(m, 1, 3, -1, homology)
            s = construct_from_invariant(m, 1, 3, -1, homology)
            assert lift_tau(as_word(s)) == mu(cord)
            assert mu(cord) not in seen
            seen[mu(cord)] = homology
    assert len(seen) == 25


def test_cord_of_word_errors():
    with pytest.raises(NotSimpleBraidError):
        cord_of_word(BraidWord.from_ints(3, (1, 2)), 1)
    with pytest.raises(NotSimpleBraidError):
        cord_of_word(BraidWord.from_ints(4, (1, 2, -3)), 1)


def test_simple_braid_validation():
    with pytest.raises(IndexOutOfRange):
        SimpleBraid(3, 3, 1, BraidWord.identity(3))
    with pytest.raises(BraidError):
        SimpleBraid(3, 1, 2, BraidWord.identity(3))
    with pytest.raises(BraidError):
        CordClass(4, 1, 3, 1, HVector.basis(4, 3))


@pytest.mark.parametrize("m", [3, 4, 6])
def test_pure_generators(m):
    for r in range(1, m):
        for s in range(r + 1, m + 1):
            word = pure_generator(m, r, s)
            assert underlying_permutation(word).is_identity()
            expected = [[0] * m for _ in range(m)]
            expected[r - 1][s - 1] = expected[s - 1][r - 1] = 1
            assert crossing_matrix(word) == CrossingMatrix.from_rows(expected)


def test_hurwitz_move_on_generators():
    s1, s2 = BraidWord.generator(3, 1), BraidWord.generator(3, 2)
    moved = hurwitz_move((s1, s2), 1, 1)
    assert moved[0] == s2
    assert moved[1].to_ints() == [-2, 1, 2]
    back = hurwitz_move(moved, 1, -1)
    assert tuple(w.freely_reduced() for w in back) == (s1, s2)


def test_hurwitz_moves_validation():
    t = (BraidWord.generator(3, 1), BraidWord.generator(3, 2))
    with pytest.raises(IndexOutOfRange):
        hurwitz_move(t, 2, 1)
    with pytest.raises(BraidError):
        hurwitz_move(t, 1, 0)
    with pytest.raises(BraidError):
        apply_hurwitz_moves(t, [1, 0])
    assert apply_hurwitz_moves(t, []) == t


def test_hurwitz_moves_satisfy_braid_relation(rng):
    words = tuple(as_word(random_simple_braid(rng, 4, 5)) for _ in range(3))
    lifted = tuple(lift_tau(w) for w in words)
    assert apply_hurwitz_moves(lifted, [1, 2, 1]) == apply_hurwitz_moves(lifted, [2, 1, 2])
    assert apply_hurwitz_moves(lifted, [1, -1, -2, 2]) == lifted


def test_invariants_follow_hurwitz_moves(rng):
    for _ in range(30):
        words = tuple(as_word(random_simple_braid(rng, 5, 6)) for _ in range(4))
        moves = [int(x) for x in rng.choice([-3, -2, -1, 1, 2, 3], size=5)]
        moved = apply_hurwitz_moves(words, moves)
        assert tuple(lift_tau(w) for w in moved) == apply_hurwitz_moves(tuple(lift_tau(w) for w in words), moves)
        assert tuple(lift_C(w) for w in moved) == apply_hurwitz_moves(tuple(lift_C(w) for w in words), moves)

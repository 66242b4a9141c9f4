"""
The randomized and exhaustive property suite behind ``braidjohnson verify``.

Every check is a named function taking its own numpy Generator. The runner
spawns one child SeedSequence per check from the suite seed, so results do not
depend on check order or on how many worker processes run them.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product
from typing import Callable, Iterable, Optional

import numpy as np

from braidjohnson.artin import apply_artin, artin_abelianized
from braidjohnson.braid_core import (
    BraidWord,
    Permutation,
    concat,
    inverse,
    random_braid_word,
    underlying_permutation,
)
from braidjohnson.crossing import (
    REFERENCE_MATRIX,
    REFERENCE_WORD,
    CrossingMatrix,
    HVector,
    act_permutation,
    crossing_matrix,
    lift_C,
)
from braidjohnson.free_group import FreeWord, abelianize, invert
from braidjohnson.logging_config import get_lazy_logger
from braidjohnson.magnus_johnson import (
    Tensor2,
    delta,
    delta_preimage,
    lift_tau,
    magnus,
    tau1,
)
from braidjohnson.matrix_sets import (
    is_in_image_C,
    permutation_braid,
    pure_part,
    realize_crossing_matrix,
    satisfies_ppb_conjecture_conditions,
    search_positive_pure_realizations,
)
from braidjohnson.simple_braids import (
    SimpleBraid,
    apply_hurwitz_moves,
    as_word,
    check_column_formulas,
    construct_from_invariant,
    cord_of_word,
    mu,
    random_simple_braid,
    v_invariant,
)
from braidjohnson.utils import log_performance

logger = get_lazy_logger(__name__)

NOMINAL_CASES = 1000


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str
    duration_ms: float

    def to_json(self) -> dict:
        data = asdict(self)
        data["duration_ms"] = round(self.duration_ms, 1)
        return data


class CheckFailed(AssertionError):
    pass


def _scaled(nominal: int, cases: int) -> int:
    return max(1, math.ceil(nominal * cases / NOMINAL_CASES))


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


def _random_free_word(rng: np.random.Generator, m: int, max_length: int) -> FreeWord:
    length = int(rng.integers(0, max_length + 1))
    gens = rng.integers(1, m + 1, size=length)
    signs = rng.choice(np.array([-1, 1]), size=length)
    return FreeWord(m, tuple(zip(gens.tolist(), signs.tolist())))


def all_words(m: int, max_length: int) -> Iterable[BraidWord]:
    letters = [k for k in range(1, m)] + [-k for k in range(1, m)]
    for length in range(max_length + 1):
        for ints in product(letters, repeat=length):
            yield BraidWord.from_ints(m, ints)


def check_reference_matrix(rng, cases, max_length) -> tuple[int, str]:
    C = crossing_matrix(BraidWord.from_ints(3, REFERENCE_WORD))
    _expect(C == CrossingMatrix.from_rows(REFERENCE_MATRIX), f"got {C.rows()}")
    return 1, "reference matrix reproduced"


def check_tau_equals_delta_C(rng, cases, max_length) -> tuple[int, str]:
    count = 0
    for m in range(2, 7):
        for _ in range(cases):
            b = random_braid_word(rng, m, max_length)
            _expect(tau1(b) == delta(crossing_matrix(b)), f"τ₁θ ≠ δ∘C for m={m}, word [{b}]")
            count += 1
    exhaustive = 0
    for b in all_words(3, 4):
        _expect(tau1(b) == delta(crossing_matrix(b)), f"τ₁θ ≠ δ∘C for B3 word [{b}]")
        exhaustive += 1
    return count + exhaustive, f"{count} random words for m=2..6 and all {exhaustive} B3 words of length <= 4"


def check_tau1_methods(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(200, cases)
    for _ in range(n):
        m = int(rng.integers(2, 6))
        b = random_braid_word(rng, m, min(max_length, 12))
        _expect(tau1(b, "word") == tau1(b, "expansion"), f"free-word and expansion τ₁θ differ on [{b}]")
    return n, "free-word and truncated-expansion evaluation agree"


def check_generator_values(rng, cases, max_length) -> tuple[int, str]:
    count = 0
    for m in range(2, 9):
        for i in range(1, m):
            x_i, x_next = np.eye(m, dtype=np.int64)[i - 1], np.eye(m, dtype=np.int64)[i]
            wedge = np.outer(x_i, x_next) - np.outer(x_next, x_i)
            for sign, moved in ((1, i), (-1, i + 1)):
                W = tau1(BraidWord.generator(m, i, sign))
                for k in range(1, m + 1):
                    expected = wedge if k == moved else np.zeros((m, m), dtype=np.int64)
                    _expect(np.array_equal(W.images[k - 1], expected),
                            f"τ₁θ(σ_{i}^{sign})(X{k}) wrong for m={m}")
                count += 1
    return count, "τ₁θ(σ_i^±1) match X_i∧X_{i+1} for m <= 8"


def check_crossed_hom(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    for _ in range(n):
        m = int(rng.integers(2, 7))
        a = random_braid_word(rng, m, max_length // 2)
        b = random_braid_word(rng, m, max_length // 2)
        ab = concat(a, b)
        perm = underlying_permutation(a)
        _expect(crossing_matrix(ab) == crossing_matrix(a) + act_permutation(perm, crossing_matrix(b)),
                f"C crossed-hom law fails on [{a}] | [{b}]")
        _expect(tau1(ab) == tau1(a) + tau1(b).act(perm),
                f"τ₁θ crossed-hom law fails on [{a}] | [{b}]")
        _expect(lift_C(ab) == lift_C(a) * lift_C(b), f"C̃ is not multiplicative on [{a}] | [{b}]")
    return n, "C and τ₁θ crossed-hom laws on random pairs"


def check_braid_relations(rng, cases, max_length) -> tuple[int, str]:
    count = 0
    for m in range(3, 9):
        pairs = []
        for i in range(1, m - 1):
            pairs.append(((i, i + 1, i), (i + 1, i, i + 1)))
        for i in range(1, m):
            for j in range(i + 2, m):
                pairs.append(((i, j), (j, i)))
        for left, right in pairs:
            a, b = BraidWord.from_ints(m, left), BraidWord.from_ints(m, right)
            _expect(crossing_matrix(a) == crossing_matrix(b), f"C differs on [{a}] vs [{b}]")
            _expect(tau1(a) == tau1(b), f"τ₁θ differs on [{a}] vs [{b}]")
            for k in range(1, m + 1):
                x = FreeWord.generator(m, k)
                _expect(apply_artin(a, x) == apply_artin(b, x), f"Φ differs on [{a}] vs [{b}] at x{k}")
            count += 1
    return count, "braid and far-commutation relations respected for m <= 8"


def check_artin_action(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    for _ in range(n):
        m = int(rng.integers(2, 6))
        a = random_braid_word(rng, m, 10)
        b = random_braid_word(rng, m, 10)
        w = _random_free_word(rng, m, 10)
        _expect(apply_artin(concat(a, b), w) == apply_artin(a, apply_artin(b, w)),
                f"Φ is not a left action on [{a}], [{b}], {w}")
        _expect(apply_artin(a, apply_artin(inverse(a), w)) == w, f"Φ(β)Φ(β⁻¹) ≠ id on [{a}], {w}")
        _expect(abelianize(apply_artin(a, w)) == artin_abelianized(a, abelianize(w)),
                f"|Φ(β)| is not |β| on [{a}], {w}")
    return n, "Φ is a left action and abelianizes to the permutation action"


def check_theta2_conjugation(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    for _ in range(n):
        m = int(rng.integers(1, 6))
        x = _random_free_word(rng, m, 12)
        y = _random_free_word(rng, m, 12)
        lhs = magnus(invert(y) * x * y).deg2
        ax, ay = abelianize(x), abelianize(y)
        rhs = magnus(x).deg2 + Tensor2.outer(ax, ay) - Tensor2.outer(ay, ax)
        _expect(lhs == rhs, f"θ₂ conjugation formula fails for x={x}, y={y}")
        _expect(magnus(x).deg1 == ax, f"θ₁ ≠ abelianization for {x}")
    return n, "θ₂(y⁻¹xy) = θ₂(x) + [x]⊗[y] − [y]⊗[x]"


def check_simple_example(rng, cases, max_length) -> tuple[int, str]:
    s = SimpleBraid(5, 1, 1, BraidWord.from_ints(5, (2, -3, -4, -4, -1, -1)))
    cord = v_invariant(s)
    _expect((cord.i, cord.j, cord.sign) == (1, 4, 1), f"got transposition ({cord.i} {cord.j}) sign {cord.sign}")
    _expect(cord.homology.coeffs.tolist() == [0, 2, 0, 0, -1], f"got homology {cord.homology}")
    return 1, "v = (2X2 − X5, +1) in the (1 4) class"


def check_simple_columns(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    signs = {1: 0, -1: 0}
    for _ in range(n):
        s = random_simple_braid(rng, int(rng.integers(2, 8)), 30)
        report = check_column_formulas(s)
        _expect(report.passed, f"{report.failure} for base {s.base_index}, sign {s.sign}, w=[{s.conjugator}]")
        signs[s.sign] += 1
    return n, f"column formulas hold ({signs[1]} positive, {signs[-1]} negative)"


def check_cord_classification(rng, cases, max_length) -> tuple[int, str]:
    m = 5
    per_class = _scaled(200, cases)
    count = 0
    for i in range(1, m):
        for j in range(i + 1, m + 1):
            for sign in (1, -1):
                by_homology: dict[bytes, object] = {}
                by_tau: dict[object, bytes] = {}
                for _ in range(per_class):
                    coeffs = rng.integers(-1, 2, size=m)
                    coeffs[[i - 1, j - 1]] = 0
                    target = HVector(coeffs)
                    s = construct_from_invariant(m, i, j, sign, target)
                    # same braid, different word: σ_{i₀}^n commutes with σ_{i₀}^ε
                    padding = random_braid_word(rng, m, 4)
                    shift = int(rng.integers(-2, 3))
                    w = concat(concat(BraidWord.generator(m, s.base_index, 1) ** shift, concat(padding, inverse(padding))),
                               s.conjugator)
                    word = as_word(SimpleBraid(m, s.base_index, sign, w))
                    cord = cord_of_word(word, sign)
                    _expect(cord.homology == target, f"v round-trip failed for ({i} {j}) {sign} {target}")
                    lifted = lift_tau(word)
                    _expect(lifted == mu(cord), f"μ disagrees with τ̃₁θ for ({i} {j}) {sign} {target}")
                    key_h = target.coeffs.tobytes()
                    if key_h in by_homology:
                        _expect(by_homology[key_h] == lifted.wedge, f"equal classes, different τ₁θ: {target}")
                    else:
                        by_homology[key_h] = lifted.wedge
                    if lifted.wedge in by_tau:
                        _expect(by_tau[lifted.wedge] == key_h, f"distinct classes share τ₁θ: {target}")
                    else:
                        by_tau[lifted.wedge] = key_h
                    count += 1
    return count, "class equality iff τ₁θ equality; μ injective on every (i j)×ε sample"


def check_image_of_C(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(5000, cases)
    for _ in range(n):
        b = random_braid_word(rng, int(rng.integers(2, 7)), max_length)
        _expect(is_in_image_C(crossing_matrix(b)), f"C([{b}]) rejected by the image predicate")
    exhaustive = 0
    for b in all_words(3, 6):
        _expect(is_in_image_C(crossing_matrix(b)), f"C([{b}]) rejected by the image predicate")
        exhaustive += 1
    return n + exhaustive, f"{n} random words and all {exhaustive} B3 words of length <= 6 accepted"


def check_decomposition(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    for _ in range(n):
        b = random_braid_word(rng, int(rng.integers(2, 7)), max_length)
        a = pure_part(b)
        perm_word = permutation_braid(underlying_permutation(b))
        _expect(underlying_permutation(a).is_identity(), f"pure part of [{b}] is not pure")
        _expect(crossing_matrix(a).is_symmetric(), f"C of the pure part of [{b}] is not symmetric")
        _expect(crossing_matrix(b) == crossing_matrix(a) + crossing_matrix(perm_word),
                f"C([{b}]) ≠ C(pure part) + C(|β|⁺)")
        _expect(crossing_matrix(realize_crossing_matrix(crossing_matrix(b))) == crossing_matrix(b),
                f"realization of C([{b}]) failed")
    return n, "C(β) = C(a) + C(|β|⁺) and every C(β) is realized constructively"


def _ppb_candidates(max_sum: int) -> Iterable[CrossingMatrix]:
    for a, b, c in product(range(max_sum // 2 + 1), repeat=3):
        if 2 * (a + b + c) <= max_sum:
            yield CrossingMatrix.from_rows([[0, a, b], [a, 0, c], [b, c, 0]])


def check_ppb_m3(rng, cases, max_length) -> tuple[int, str]:
    count = 0
    for M in _ppb_candidates(8):
        if not satisfies_ppb_conjecture_conditions(M):
            continue
        found = search_positive_pure_realizations(M, limit=1)
        _expect(bool(found), f"no positive pure realization of {M.rows()}")
        count += 1
    return count, f"all {count} matrices with entry sum <= 8 passing (I)–(III) are realized"


def check_ppb_search_complete(rng, cases, max_length) -> tuple[int, str]:
    count = 0
    for m in (2, 3):
        naive: dict[CrossingMatrix, int] = {}
        for length in range(0, 7):
            for ints in product(range(1, m), repeat=length):
                word = BraidWord.from_ints(m, ints)
                if underlying_permutation(word).is_identity():
                    C = crossing_matrix(word)
                    naive[C] = naive.get(C, 0) + 1
        for M, n_words in naive.items():
            full = search_positive_pure_realizations(M, limit=None, canonical=False)
            _expect(len(full) == n_words, f"unrestricted search found {len(full)} of {n_words} words for {M.rows()}")
            _expect(all(crossing_matrix(w) == M for w in full), f"unsound result for {M.rows()}")
            _expect(bool(search_positive_pure_realizations(M, limit=1)), f"canonical search missed {M.rows()}")
            count += 1
    return count, "search agrees with naive enumeration for m = 2, 3 and entry sum <= 6"


def check_hurwitz(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(100, cases)
    for _ in range(n):
        m = int(rng.integers(2, 6))
        size = int(rng.integers(2, 5))
        words = tuple(random_braid_word(rng, m, 4) for _ in range(size))
        moves = [int(p) * int(d) for p, d in zip(rng.integers(1, size, size=int(rng.integers(0, 11))),
                                                  rng.choice(np.array([-1, 1]), size=10))]
        moved = tuple(w.freely_reduced() for w in apply_hurwitz_moves(words, moves))
        _expect(tuple(lift_tau(w) for w in moved) == apply_hurwitz_moves(tuple(lift_tau(w) for w in words), moves),
                f"τ̃₁θ images do not follow moves {moves}")
        _expect(tuple(lift_C(w) for w in moved) == apply_hurwitz_moves(tuple(lift_C(w) for w in words), moves),
                f"C̃ images do not follow moves {moves}")
    return n, "τ̃₁θ and C̃ tuples transform by the same Hurwitz moves"


def check_delta_injective(rng, cases, max_length) -> tuple[int, str]:
    n = _scaled(500, cases)
    for _ in range(n):
        m = int(rng.integers(2, 7))
        entries = rng.integers(-5, 6, size=(m, m))
        np.fill_diagonal(entries, 0)
        M = CrossingMatrix(entries)
        _expect(delta_preimage(delta(M)) == M, f"δ is not recovered on {M.rows()}")
        perm = Permutation(tuple(int(x) + 1 for x in rng.permutation(m)))
        _expect(delta(act_permutation(perm, M)) == delta(M).act(perm), f"δ is not equivariant for {perm}")
    return n, "δ injective and S_m-equivariant on random matrices"


CHECKS: dict[str, Callable[[np.random.Generator, int, int], tuple[int, str]]] = {
    "reference_matrix": check_reference_matrix,
    "tau_equals_delta_C": check_tau_equals_delta_C,
    "tau1_methods": check_tau1_methods,
    "generator_values": check_generator_values,
    "crossed_hom": check_crossed_hom,
    "braid_relations": check_braid_relations,
    "artin_action": check_artin_action,
    "theta2_conjugation": check_theta2_conjugation,
    "delta_injective": check_delta_injective,
    "simple_example": check_simple_example,
    "column_formulas": check_simple_columns,
    "cord_classification": check_cord_classification,
    "image_of_C": check_image_of_C,
    "decomposition": check_decomposition,
    "ppb_m3": check_ppb_m3,
    "ppb_search_complete": check_ppb_search_complete,
    "hurwitz": check_hurwitz,
}


def run_check(name: str, seed: np.random.SeedSequence, cases: int, max_length: int) -> CheckResult:
    log = logger.bind(check=name)
    rng = np.random.default_rng(seed)
    start = time.perf_counter()
    try:
        count, detail = CHECKS[name](rng, cases, max_length)
        passed = True
    except CheckFailed as e:
        count, detail, passed = 0, str(e), False
    except Exception as e:
        log.error(f"raised {type(e).__name__}: {e}")
        count, detail, passed = 0, f"{type(e).__name__}: {e}", False
    duration_ms = (time.perf_counter() - start) * 1000
    log.debug(f"{'passed' if passed else 'FAILED'} in {duration_ms:.1f}ms: {detail}")
    return CheckResult(name, passed, count, detail, duration_ms)


@log_performance("verify suite")
def run_suite(seed: int, cases: int = NOMINAL_CASES, max_length: int = 50, workers: int = 1,
              only: Optional[Iterable[str]] = None) -> list[CheckResult]:
    names = list(only) if only else list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    # children are spawned for the full table so a check's stream does not depend on `only`
    children = dict(zip(CHECKS, np.random.SeedSequence(seed).spawn(len(CHECKS))))
    logger.info(f"running {len(names)} check(s) with seed {seed}, cases {cases}, workers {workers}")
    if workers <= 1:
        results = [run_check(n, children[n], cases, max_length) for n in names]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(run_check, n, children[n], cases, max_length) for n in names]
            results = [f.result() for f in futures]
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.warning(f"{len(failed)} check(s) failed: {', '.join(failed)}")
    else:
        logger.info(f"all {len(results)} checks passed")
    return results


def format_table(results: list[CheckResult], timings: bool = False) -> str:
    width = max([len(r.name) for r in results] + [5])
    lines = [f"{'check':<{width}}  result  {'cases':>6}  detail"]
    for r in results:
        line = f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.cases:>6}  {r.detail}"
        if timings:
            line += f"  ({r.duration_ms:.0f}ms)"
        lines.append(line)
    return "\n".join(lines)

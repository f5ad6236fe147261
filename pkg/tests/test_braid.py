"""Word model, parsing, homomorphisms, and move generators."""

import random

import pytest

from singskein.braid import (
    Conjugate,
    CyclicShift,
    Generator,
    InapplicableMoveError,
    R_BRAID,
    R_CANCEL,
    R_INSERT,
    R_SIGMA_SIGMA_TAU,
    R_SIGMA_TAU_SAME,
    RelationMove,
    SIGMA,
    SIGMA_INV,
    SingularBraidWord,
    StabilizeDown,
    StabilizeUp,
    BraidSyntaxError,
    StrandIndexError,
    TAU,
    apply_move,
    exponent_sum,
    inverse_word,
    parse,
    random_move_sequence,
    relation_move_candidates,
    shuffle_braid,
    stack,
    underlying_permutation,
    with_strands,
)
from singskein.permutations import Permutation


def word(text: str, strands=None) -> SingularBraidWord:
    return parse(text, strands)


# -- parsing -----------------------------------------------------------------


def test_parse_basic():
    w = word("s1 s1 s1", 2)
    assert w.strands == 2
    assert [g.kind for g in w.letters] == [SIGMA] * 3
    assert w.degree == 0


def test_parse_tau():
    w = word("t1", 2)
    assert w.letters == (Generator(TAU, 1),)
    assert w.degree == 1


def test_parse_index_out_of_range():
    with pytest.raises(StrandIndexError):
        word("s3", 2)


def test_parse_syntax_error_carries_position():
    with pytest.raises(BraidSyntaxError) as exc:
        parse("s1 x2")
    assert exc.value.position == 3


def test_parse_infers_strands():
    assert parse("s1 S2 t1").strands == 3
    assert parse("").strands == 1


def test_parse_normalises_whitespace():
    assert parse("  s1   t2 ").display() == "s1 t2"


# -- homomorphisms ------------------------------------------------------------


def test_exponent_sum():
    assert exponent_sum(word("s1 s1 s1", 2)) == 3
    assert exponent_sum(word("t1 s1", 2)) == 1
    assert exponent_sum(word("s1 S2", 3)) == 0


def test_underlying_permutation():
    assert underlying_permutation(word("s1", 2)) == Permutation((2, 1))
    assert underlying_permutation(word("t1 s1", 2)) == Permutation((1, 2))
    assert underlying_permutation(word("", 2)) == Permutation((1, 2))


def test_underlying_permutation_of_stack_is_block_sum():
    rng = random.Random(3)
    for _ in range(20):
        a = _random_word(rng, strands=rng.randint(1, 4), length=rng.randint(0, 6))
        b = _random_word(rng, strands=rng.randint(1, 4), length=rng.randint(0, 6))
        assert underlying_permutation(stack(a, b)) == underlying_permutation(
            a
        ).block_sum(underlying_permutation(b))


# -- stacking ------------------------------------------------------------------


def test_stack_shifts_indices():
    left = word("t1", 2)
    right = word("t1", 2)
    assert stack(left, right).display() == "t1 t3"
    assert stack(left, right).strands == 4


def test_stack_with_trivial_strand_is_embedding():
    w = word("s1 t1", 2)
    assert stack(w, parse("", 1)) == with_strands(w, 3)


def test_stack_mixed():
    assert stack(word("s1", 2), word("t1", 2)).display() == "s1 t3"


# -- moves ---------------------------------------------------------------------


def test_cyclic_shift():
    w = word("s1 t1", 2)
    assert apply_move(w, CyclicShift(1)).display() == "t1 s1"


def test_stabilize_up():
    w = word("t1", 2)
    up = apply_move(w, StabilizeUp(1))
    assert up.strands == 3
    assert up.display() == "t1 s2"


def test_stabilize_down():
    w = word("t1 s2", 3)
    down = apply_move(w, StabilizeDown())
    assert down == word("t1", 2)


def test_stabilize_down_requires_single_use():
    with pytest.raises(InapplicableMoveError):
        apply_move(word("s2 t1 s2", 3), StabilizeDown())
    with pytest.raises(InapplicableMoveError):
        apply_move(word("t1 t2", 3), StabilizeDown())


def test_cancel_move():
    w = word("s1 S1 t1", 2)
    assert apply_move(w, RelationMove(R_CANCEL, 0)) == word("t1", 2)
    with pytest.raises(InapplicableMoveError):
        apply_move(w, RelationMove(R_CANCEL, 1))


def test_insert_move():
    w = word("t1", 2)
    inserted = apply_move(w, RelationMove(R_INSERT, 1, index=1, sign=-1))
    assert inserted.display() == "t1 S1 s1"


def test_sigma_tau_commute_move():
    w = word("s1 t1", 2)
    assert apply_move(w, RelationMove(R_SIGMA_TAU_SAME, 0)).display() == "t1 s1"


def test_braid_relation_move():
    w = word("s1 s2 s1", 3)
    assert apply_move(w, RelationMove(R_BRAID, 0)).display() == "s2 s1 s2"


def test_singular_braid_relation_move_both_directions():
    lhs = word("s1 s2 t1", 3)
    rhs = word("t2 s1 s2", 3)
    assert apply_move(lhs, RelationMove(R_SIGMA_SIGMA_TAU, 0)) == rhs
    assert apply_move(rhs, RelationMove(R_SIGMA_SIGMA_TAU, 0)) == lhs


def test_conjugate_requires_invertible():
    with pytest.raises(InapplicableMoveError):
        apply_move(word("s1", 2), Conjugate(word("t1", 2)))


def test_conjugate():
    w = word("t1", 2)
    out = apply_move(w, Conjugate(word("s1 S1", 2)))
    assert out.display() == "s1 S1 t1 s1 S1"


def test_inverse_word():
    assert inverse_word(word("s1 S2", 3)).display() == "s2 S1"
    with pytest.raises(ValueError):
        inverse_word(word("t1", 2))


# -- move invariants -----------------------------------------------------------


def _random_word(rng: random.Random, strands: int, length: int, degree=None):
    letters = []
    for _ in range(length):
        if strands < 2:
            break
        kind = rng.choice((SIGMA, SIGMA, SIGMA_INV, TAU))
        letters.append(Generator(kind, rng.randrange(1, strands)))
    if degree is not None:
        letters = [g for g in letters if g.kind != TAU]
        positions = sorted(rng.sample(range(len(letters) + degree), degree))
        for offset, p in enumerate(positions):
            letters.insert(p, Generator(TAU, rng.randrange(1, strands)))
    return SingularBraidWord(strands, tuple(letters))


def test_relation_moves_preserve_counted_invariants():
    rng = random.Random(11)
    for _ in range(120):
        w = _random_word(rng, strands=rng.randint(2, 5), length=rng.randint(2, 10))
        for move in relation_move_candidates(w):
            out = apply_move(w, move)
            assert exponent_sum(out) == exponent_sum(w)
            assert out.degree == w.degree
            assert underlying_permutation(out) == underlying_permutation(w)


def test_random_move_sequence_deterministic():
    w = word("t1 s1 S2", 3)
    a = random_move_sequence(w, 30, seed=42)
    b = random_move_sequence(w, 30, seed=42)
    assert a == b
    assert len(a) == 30


def test_random_move_sequence_respects_caps():
    w = word("t1", 2)
    for _, step in random_move_sequence(w, 60, seed=1, max_strands=4, max_length=20):
        assert step.strands <= 4
        assert len(step.letters) <= 20
        assert step.degree == 1


def test_random_move_sequence_empty():
    assert random_move_sequence(word("t1", 2), 0, seed=0) == []


# -- shuffle braid ---------------------------------------------------------------


def test_shuffle_braid_single_crossing():
    assert shuffle_braid(1, 1).display() == "s1"


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 2), (2, 4)])
def test_shuffle_braid_length_and_permutation(n, m):
    w = shuffle_braid(n, m)
    assert len(w.letters) == n * m
    perm = underlying_permutation(w)
    for k in range(1, n + 1):
        assert perm(k) == k + m
    for k in range(n + 1, n + m + 1):
        assert perm(k) == k - n
    # reduced: the word length equals the inversion count
    assert perm.inversions() == n * m

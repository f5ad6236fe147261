"""Skein classes of closures: anchors, skein relation, algebra structure."""

import random

import pytest

from singskein.braid import (
    Generator,
    SIGMA,
    SIGMA_INV,
    SingularBraidWord,
    TAU,
    parse,
    random_move_sequence,
    stack,
    with_strands,
)
from singskein.coeff import SU, RationalFunction, embed_qz_to_su
from singskein.coeff import QZ
from singskein.skein import (
    SkeinClass,
    closure_product,
    disjoint_union_coefficient,
    skein_class,
    skein_triple_check,
)

ONE = RationalFunction.one(SU)
S = RationalFunction.coordinate(SU, "s")
U = RationalFunction.coordinate(SU, "u")


def random_singular_word(rng, strands, length, degree):
    letters = [
        Generator(rng.choice((SIGMA, SIGMA, SIGMA_INV)), rng.randrange(1, strands))
        for _ in range(max(length - degree, 0))
    ]
    for _ in range(degree):
        letters.insert(
            rng.randint(0, len(letters)), Generator(TAU, rng.randrange(1, strands))
        )
    return SingularBraidWord(strands, tuple(letters))


# -- normalisation anchors ------------------------------------------------------


def test_unknot_is_one():
    assert skein_class(parse("", 1)) == SkeinClass.constant(ONE)


def test_single_double_point_is_xhat():
    assert skein_class(parse("t1", 2)) == SkeinClass.monomial(1, 0)


def test_double_point_with_crossing_is_yhat():
    assert skein_class(parse("t1 s1", 2)) == SkeinClass.monomial(0, 1)


def test_single_crossing_closure_is_unknot():
    assert skein_class(parse("s1", 2)) == SkeinClass.constant(ONE)
    assert skein_class(parse("S1", 2)) == SkeinClass.constant(ONE)


def test_split_double_point_picks_up_union_coefficient():
    # the same double point viewed on three strands: one extra split component
    expected = SkeinClass.monomial(1, 0, disjoint_union_coefficient())
    assert skein_class(with_strands(parse("t1", 2), 3)) == expected


# -- the disjoint-union coefficient ------------------------------------------------


def test_union_coefficient_closed_form():
    s2 = S * S
    expected = (ONE - s2 * U * U) / (U * (s2 - ONE))
    assert disjoint_union_coefficient() == expected


def test_union_coefficient_equals_inverse_z_u():
    z_image = embed_qz_to_su(RationalFunction.coordinate(QZ, "z"))
    assert disjoint_union_coefficient() == z_image.inverse() * U.inverse()


def test_union_coefficient_matches_pipeline():
    rng = random.Random(404)
    for _ in range(8):
        w = random_singular_word(rng, strands=rng.randint(2, 4), length=5, degree=rng.randint(0, 2))
        grown = with_strands(w, w.strands + 1)
        assert skein_class(grown) == skein_class(w).scaled(disjoint_union_coefficient())


# -- skein relation ------------------------------------------------------------------


def test_triple_check_unknots():
    result = skein_triple_check(parse("", 2), 1)
    assert result.holds


def test_triple_check_trefoil_family():
    assert skein_triple_check(parse("s1", 2), 1).holds


def test_triple_check_singular_instance():
    assert skein_triple_check(parse("t1", 2), 1).holds


def test_triple_check_randomized():
    rng = random.Random(60601)
    for _ in range(25):
        n = rng.randint(2, 5)
        w = random_singular_word(rng, n, rng.randint(0, 8), rng.randint(0, 2))
        i = rng.randrange(1, n)
        result = skein_triple_check(w, i)
        assert result.holds, f"skein relation failed for {w!r} at {i}"


def test_triple_check_reports_witnesses():
    result = skein_triple_check(parse("s1 s1", 2), 1)
    assert result.holds
    assert result.lhs == result.rhs
    # the positive leg is the trefoil-shaped closure of s1^3
    assert result.positive == skein_class(parse("s1 s1 s1", 2))


def test_triple_check_index_range():
    with pytest.raises(ValueError):
        skein_triple_check(parse("s1", 2), 2)


# -- stabilisation and move invariance --------------------------------------------------


def test_stabilisation_neutrality():
    rng = random.Random(7001)
    for _ in range(10):
        n = rng.randint(2, 4)
        w = random_singular_word(rng, n, rng.randint(0, 6), rng.randint(0, 2))
        for sign in (SIGMA, SIGMA_INV):
            up = SingularBraidWord(n + 1, w.letters + (Generator(sign, n),))
            assert skein_class(up) == skein_class(w)


def test_move_invariance_smoke():
    rng = random.Random(515)
    for _ in range(6):
        w = random_singular_word(rng, rng.randint(2, 4), rng.randint(1, 6), rng.randint(0, 2))
        base = skein_class(w)
        for _, step in random_move_sequence(w, 8, seed=rng.randint(0, 10**6), max_strands=6):
            assert skein_class(step) == base


# -- algebra structure ---------------------------------------------------------------------


def test_multiplicativity_over_stack():
    # closing a stacked word gives a split union, so the product of closure
    # classes carries one disjoint-union coefficient
    rng = random.Random(606)
    for _ in range(8):
        a = random_singular_word(rng, rng.randint(2, 3), 4, rng.randint(0, 1))
        b = random_singular_word(rng, rng.randint(2, 3), 4, rng.randint(0, 2))
        assert skein_class(stack(a, b)) == closure_product(skein_class(a), skein_class(b))


def test_closure_product_absorbs_trivial_factor():
    rng = random.Random(607)
    w = random_singular_word(rng, 3, 5, 1)
    assert closure_product(skein_class(w), skein_class(parse("", 1))) == skein_class(
        with_strands(w, 4)
    )


def test_xhat_powers_from_stacked_double_points():
    # each extra split copy of the double-point closure multiplies by the
    # union coefficient: the D-fold stack is coeff^(D-1) * Xhat^D
    word = parse("t1", 2)
    for power in range(2, 4):
        word = stack(word, parse("t1", 2))
        expected = SkeinClass.monomial(power, 0, disjoint_union_coefficient() ** (power - 1))
        assert skein_class(word) == expected

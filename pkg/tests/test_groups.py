"""Element arithmetic and ball enumeration across the three families."""

import random
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordercone import (ContextMismatchError, GroupContext, ball, invert,
                       is_identity, multiply)

from conftest import burau_exact

small_ints = st.integers(min_value=-6, max_value=6)
klein_pairs = st.tuples(small_ints, small_ints)


def test_klein_multiplication_examples(klein):
    x, y = klein.generators()
    assert (x * y).payload == (1, 1)
    # y x rewrites through the relator to x y^-1.
    assert (y * x).payload == (1, -1)
    assert multiply(klein.element((1, 2)), klein.element((2, 3))).payload == (3, 5)


def test_klein_relator(klein):
    x, y = klein.generators()
    # x y x^-1 = y^-1 as elements.
    assert (x * y * x.inverse()) == y.inverse()


def test_klein_inverse(klein):
    g = klein.element((1, -1))
    assert g.inverse().payload == (-1, -1)
    assert (g * g.inverse()).is_identity()


@given(klein_pairs, klein_pairs, klein_pairs)
def test_klein_group_laws(p1, p2, p3):
    klein = GroupContext.klein_bottle()
    g, h, f = (klein.element(p) for p in (p1, p2, p3))
    assert (g * h) * f == g * (h * f)
    assert is_identity(g * invert(g))
    assert invert(invert(g)) == g


def test_free_abelian_examples(z2):
    assert (z2.element((1, 2)) * z2.element((-1, 3))).payload == (0, 5)
    assert invert(z2.element((3, -1))).payload == (-3, 1)
    assert GroupContext.free_abelian(3).element((0, 0, 0)).is_identity()


def test_braid_elements(b3):
    g = b3.element("s1 s2")
    assert g.inverse().text() == "S2 S1"
    assert b3.element("s1 s2 s1 S2 S1 S2").is_identity()
    assert not b3.element("s2").is_identity()
    # Semantic equality across different words for the same braid.
    assert b3.element("s1 s2 s1") == b3.element("s2 s1 s2")
    assert hash(b3.element("s1 s2 s1")) == hash(b3.element("s2 s1 s2"))


def test_context_mismatch(b3, z2):
    with pytest.raises(ContextMismatchError):
        multiply(b3.element("s1"), GroupContext.braid(4).element("s1"))
    assert b3.element("s1") != z2.element((1, 0))


def test_ball_counts():
    assert len(ball(GroupContext.free_abelian(2), 1)) == 4
    assert len(ball(GroupContext.klein_bottle(), 1)) == 4
    assert len(ball(GroupContext.braid(3), 2)) == 16
    assert len(ball(GroupContext.free_abelian(2), 2)) == 12
    assert len(ball(GroupContext.klein_bottle(), 2)) == 12
    assert len(ball(GroupContext.free_abelian(3), 2)) == 24


def test_braid_ball_against_burau_oracle(b3):
    # Independent count: dedupe all words of length <= 2 by exact Burau.
    words = set()
    letters = [1, -1, 2, -2]
    for l1 in letters:
        words.add((l1,))
        for l2 in letters:
            words.add((l1, l2))
    from ordercone import BraidWord
    images = {burau_exact(BraidWord(3, w)) for w in words}
    identity_image = burau_exact(BraidWord(3, ()))
    images.discard(identity_image)
    assert len(images) == len(ball(b3, 2)) == 16


def test_ball_invariants():
    for ctx, radius in ((GroupContext.free_abelian(2), 4),
                        (GroupContext.klein_bottle(), 4),
                        (GroupContext.braid(3), 3)):
        b = ball(ctx, radius)
        smaller = ball(ctx, radius - 1)
        assert list(b.elements[:len(smaller)]) == list(smaller.elements)
        assert ctx.identity() not in b
        for i, e in enumerate(b.elements):
            assert b.elements[b.inverse_position[i]] == e.inverse()
            assert e.word_length() <= radius
        assert len(set(b.elements)) == len(b)


def test_ball_word_lengths_are_geodesic(b3):
    # Re-derive shortest words by BFS over raw words with the Burau oracle.
    from ordercone import BraidWord
    b = ball(b3, 3)
    shortest = {burau_exact(BraidWord(3, ())): 0}
    frontier = [()]
    for depth in range(1, 4):
        new = []
        for word in frontier:
            for letter in (1, -1, 2, -2):
                candidate = word + (letter,)
                image = burau_exact(BraidWord(3, candidate))
                if image not in shortest:
                    shortest[image] = depth
                    new.append(candidate)
        frontier = new
    for element in b:
        assert shortest[burau_exact(element.word)] == element.word_length()


def test_ball_budget(b3):
    with pytest.raises(Exception, match="ball budget exceeded"):
        ball(b3, 9)
    # Override lifts the cap.
    assert len(ball(GroupContext.braid(3), 5, {"braid_ball": {3: 6}})) > 0


def test_ball_deterministic_order(z2):
    b = ball(z2, 2)
    assert [e.payload for e in b.elements[:4]] == [
        (1, 0), (-1, 0), (0, 1), (0, -1)]
    again = ball(GroupContext.free_abelian(2), 2)
    assert [e.payload for e in again.elements] == [e.payload for e in b.elements]


def test_associativity_sampled(b3):
    rng = random.Random(13)
    elems = list(ball(b3, 2))
    for _ in range(60):
        g, h, f = (rng.choice(elems) for _ in range(3))
        assert (g * h) * f == g * (h * f)


def test_klein_ball_closure(klein):
    b = ball(klein, 3)
    for g, h in product(list(b)[:8], repeat=2):
        prod = g * h
        if prod.word_length() <= 3 and not prod.is_identity():
            assert prod in b

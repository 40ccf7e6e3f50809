"""Shared test helpers, including independent oracles.

The exact Burau matrix over Z[t, 1/t] is a faithful representation of
the 3-strand braid group, so it decides equality there without touching
the reduction machinery under test.  Laurent polynomials are dicts
degree -> coefficient with zero coefficients dropped.
"""

from __future__ import annotations

import random

import pytest

from ordercone import BraidWord, GroupContext

Laurent = dict[int, int]


def lp(*pairs) -> Laurent:
    out: Laurent = {}
    for deg, coeff in pairs:
        if coeff:
            out[deg] = out.get(deg, 0) + coeff
            if not out[deg]:
                del out[deg]
    return out


def lp_add(a: Laurent, b: Laurent) -> Laurent:
    out = dict(a)
    for deg, coeff in b.items():
        out[deg] = out.get(deg, 0) + coeff
        if not out[deg]:
            del out[deg]
    return out


def lp_mul(a: Laurent, b: Laurent) -> Laurent:
    out: Laurent = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            deg = d1 + d2
            out[deg] = out.get(deg, 0) + c1 * c2
            if not out[deg]:
                del out[deg]
    return out


def burau_exact(word: BraidWord) -> tuple:
    """Unreduced Burau matrix of a braid word over Z[t, 1/t]."""
    n = word.n
    one, zero = lp((0, 1)), lp()
    matrix = [[one if r == c else zero for c in range(n)] for r in range(n)]
    for letter in word.letters:
        i = abs(letter) - 1
        gen = [[one if r == c else zero for c in range(n)] for r in range(n)]
        if letter > 0:
            gen[i][i] = lp((0, 1), (1, -1))      # 1 - t
            gen[i][i + 1] = lp((1, 1))           # t
            gen[i + 1][i] = one
            gen[i + 1][i + 1] = zero
        else:
            gen[i][i] = zero
            gen[i][i + 1] = one
            gen[i + 1][i] = lp((-1, 1))          # 1/t
            gen[i + 1][i + 1] = lp((0, 1), (-1, -1))  # 1 - 1/t
        matrix = [[_dot(matrix, gen, r, c, n) for c in range(n)]
                  for r in range(n)]
    return tuple(tuple(frozenset(entry.items()) for entry in row)
                 for row in matrix)


def _dot(a, b, r, c, n) -> Laurent:
    total = lp()
    for t in range(n):
        total = lp_add(total, lp_mul(a[r][t], b[t][c]))
    return total


def braids_equal_oracle(u: BraidWord, v: BraidWord) -> bool:
    """Independent equality decision, valid for 3-strand braids only."""
    assert u.n == v.n == 3, "the Burau oracle is only faithful for B_3"
    return burau_exact(u) == burau_exact(v)


def random_word(rng: random.Random, n: int, max_len: int,
                min_len: int = 0) -> BraidWord:
    length = rng.randint(min_len, max_len)
    letters = []
    for _ in range(length):
        idx = rng.randint(1, n - 1)
        letters.append(idx if rng.random() < 0.5 else -idx)
    return BraidWord(n, tuple(letters))


def random_positive_word(rng: random.Random, n: int, max_len: int) -> BraidWord:
    length = rng.randint(1, max_len)
    return BraidWord(n, tuple(rng.randint(1, n - 1) for _ in range(length)))


@pytest.fixture
def b3() -> GroupContext:
    return GroupContext.braid(3)


@pytest.fixture
def b4() -> GroupContext:
    return GroupContext.braid(4)


@pytest.fixture
def klein() -> GroupContext:
    return GroupContext.klein_bottle()


@pytest.fixture
def z2() -> GroupContext:
    return GroupContext.free_abelian(2)

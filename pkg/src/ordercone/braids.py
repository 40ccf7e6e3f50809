"""Braid words, handle reduction, and the braid word problem.

A word in the Artin generators of the braid group on ``n`` strands is a
tuple of signed integers: ``+i`` encodes the generator ``s_i`` and
``-i`` its inverse, for ``1 <= i <= n - 1``.  Text form uses tokens
``s<i>`` and ``S<i>`` separated by whitespace, e.g. ``"s1 S2"``.

The reduction engine rewrites *handles*: a handle is a subword
``s_i^e  u  s_i^{-e}`` whose interior ``u`` only mentions indices above
``i``.  Rewriting replaces every interior letter ``s_{i+1}^d`` by
``s_{i+1}^{-e} s_i^d s_{i+1}^{e}``, keeps letters of index ``>= i + 2``,
and drops the outer pair.  We always rewrite the handle that *closes
earliest* in the word; that handle cannot contain a nested handle, so
the rewrite is permitted and the known termination argument applies.  A
step budget is enforced regardless, and running out raises instead of
returning a non-reduced word.

A reduced (handle-free) word has its lowest occurring generator index
appearing with a single sign, and a nonempty reduced word is never
trivial in the group.  That turns reduction into a word-problem
decision: ``u = v`` exactly when ``u v^{-1}`` reduces to the empty word.
Reduction results are memoized keyed by the free-reduced letter
sequence.  A permutation + modular-Burau fingerprint provides a cheap
sound inequality filter and a hash for semantic deduplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .budgets import current_budget
from .errors import BudgetExceededError, ContextMismatchError, UsageError

Letters = tuple | list

_TOKEN = re.compile(r"^([sS])([1-9][0-9]*)$")

# Reduction memo, keyed by (n, free-reduced letter tuple).
_reduce_cache: dict[tuple[int, tuple[int, ...]], tuple[int, ...]] = {}

# Modular Burau fingerprint parameters: prime modulus, unit evaluation point.
_P = (1 << 61) - 1
_T = 3
_TINV = pow(_T, _P - 2, _P)


def clear_caches() -> None:
    _reduce_cache.clear()


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``n`` strands."""

    n: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise UsageError(f"braid group needs n >= 2 strands, got {self.n}")
        for letter in self.letters:
            if letter == 0 or not 1 <= abs(letter) <= self.n - 1:
                raise UsageError(
                    f"letter {letter} out of range for {self.n} strands")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def identity(cls, n: int) -> "BraidWord":
        return cls(n, ())

    @classmethod
    def from_text(cls, n: int, text: str) -> "BraidWord":
        return cls(n, parse_letters(text))

    def to_text(self) -> str:
        return format_letters(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.n != other.n:
            raise ContextMismatchError("incompatible groups")
        return BraidWord(self.n, free_reduce_letters(self.letters + other.letters))

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        out = BraidWord.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple(-l for l in reversed(self.letters)))

    def __repr__(self) -> str:
        return f"BraidWord({self.n}, {self.to_text()!r})"


@dataclass(frozen=True)
class MainSignReport:
    """Lowest generator index of the reduced form and its constant sign.

    ``sign`` is 0 exactly when ``index`` is None exactly when ``reduced``
    is the empty word (the braid is trivial).
    """

    index: int | None
    sign: int
    reduced: BraidWord


def parse_letters(text: str) -> tuple[int, ...]:
    """Parse whitespace-separated ``s<i>`` / ``S<i>`` tokens."""
    letters = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m:
            raise UsageError(f"bad braid token {token!r} (expected s<i> or S<i>)")
        idx = int(m.group(2))
        letters.append(idx if m.group(1) == "s" else -idx)
    return tuple(letters)


def format_letters(letters: Letters) -> str:
    return " ".join(f"s{l}" if l > 0 else f"S{-l}" for l in letters)


def free_reduce_letters(letters: Letters) -> tuple[int, ...]:
    out: list[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def free_reduce(word: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs; the result represents the same braid."""
    return BraidWord(word.n, free_reduce_letters(word.letters))


def _find_handle(letters: list[int], n: int) -> tuple[int, int] | None:
    """Position pair (p, q) of the earliest-closing handle, or None.

    ``last[i]`` tracks the most recent occurrence of index ``i`` that has
    not been separated from the scan point by any index ``< i``; a letter
    of index ``j`` therefore invalidates the entries above ``j``.
    """
    last: list[int | None] = [None] * (n + 1)
    for q, letter in enumerate(letters):
        j = abs(letter)
        for i in range(j + 1, n):
            last[i] = None
        p = last[j]
        if p is not None and letters[p] == -letter:
            return p, q
        last[j] = q
    return None


def handle_reduce_letters(n: int, letters: Letters,
                          max_steps: int | None = None) -> tuple[int, ...]:
    """Handle-free word equivalent to ``letters`` in the braid group B_n."""
    key = (n, free_reduce_letters(letters))
    cached = _reduce_cache.get(key)
    if cached is not None:
        return cached
    if max_steps is None:
        max_steps = current_budget().handle_steps
    word = list(key[1])
    steps = 0
    while True:
        found = _find_handle(word, n)
        if found is None:
            result = tuple(word)
            _reduce_cache[key] = result
            _reduce_cache[(n, result)] = result
            return result
        steps += 1
        if steps > max_steps:
            raise BudgetExceededError(
                f"reduction budget exceeded after {max_steps} steps")
        p, q = found
        opener = word[p]
        i = abs(opener)
        e = 1 if opener > 0 else -1
        replacement: list[int] = []
        for letter in word[p + 1:q]:
            if abs(letter) == i + 1:
                d = 1 if letter > 0 else -1
                replacement.extend((-e * (i + 1), d * i, e * (i + 1)))
            else:
                replacement.append(letter)
        word = list(free_reduce_letters(word[:p] + replacement + word[q + 1:]))


def handle_reduce(word: BraidWord, max_steps: int | None = None) -> BraidWord:
    """Reduce to a handle-free word equal to ``word`` in B_n.

    The lowest generator index of the result occurs with one sign only,
    and the result is empty exactly when the braid is trivial.
    """
    return BraidWord(word.n, handle_reduce_letters(word.n, word.letters, max_steps))


def main_sign(word: BraidWord, max_steps: int | None = None) -> MainSignReport:
    """Lowest-index generator of the reduced form together with its sign."""
    reduced = handle_reduce(word, max_steps)
    if not reduced.letters:
        return MainSignReport(None, 0, reduced)
    index = min(abs(l) for l in reduced.letters)
    sign = 1 if next(l for l in reduced.letters if abs(l) == index) > 0 else -1
    return MainSignReport(index, sign, reduced)


def is_trivial(word: BraidWord, max_steps: int | None = None) -> bool:
    return not handle_reduce(word, max_steps).letters


def braid_equal(u: BraidWord, v: BraidWord, max_steps: int | None = None) -> bool:
    """Word problem: true iff ``u`` and ``v`` represent the same braid."""
    if u.n != v.n:
        raise ContextMismatchError("incompatible groups")
    if u.letters == v.letters:
        return True
    if fingerprint(u) != fingerprint(v):
        return False
    return is_trivial(u * v.inverse(), max_steps)


def shift_embed(r: int, word: BraidWord, n: int) -> BraidWord:
    """Embed by sending every generator index i to i + r, landing in B_n."""
    if r < 0:
        raise UsageError("shift amount must be nonnegative")
    shifted = tuple((abs(l) + r) * (1 if l > 0 else -1) for l in word.letters)
    if any(abs(l) > n - 1 for l in shifted):
        raise UsageError(f"shifted index exceeds {n - 1} (index overflow)")
    return BraidWord(n, shifted)


def permutation(word: BraidWord) -> tuple[int, ...]:
    """Image in the symmetric group, as a tuple of strand positions.

    Independent of the word representative: the braid relations map to
    the Coxeter relations of S_n.
    """
    perm = list(range(word.n))
    for letter in word.letters:
        i = abs(letter) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)


@lru_cache(maxsize=None)
def _burau_generator(n: int, letter: int) -> tuple[tuple[int, ...], ...]:
    """Unreduced Burau matrix of one generator, mod _P at t = _T."""
    i = abs(letter) - 1
    rows = [[1 if r == c else 0 for c in range(n)] for r in range(n)]
    if letter > 0:
        rows[i][i] = (1 - _T) % _P
        rows[i][i + 1] = _T % _P
        rows[i + 1][i] = 1
        rows[i + 1][i + 1] = 0
    else:
        rows[i][i] = 0
        rows[i][i + 1] = 1
        rows[i + 1][i] = _TINV
        rows[i + 1][i + 1] = (1 - _TINV) % _P
    return tuple(tuple(r) for r in rows)


def _matmul(a: tuple[tuple[int, ...], ...],
            b: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    size = len(a)
    cols = list(zip(*b))
    return tuple(
        tuple(sum(row[t] * col[t] for t in range(size)) % _P for col in cols)
        for row in a)


def burau_fingerprint(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    n = word.n
    matrix = tuple(tuple(1 if r == c else 0 for c in range(n)) for r in range(n))
    for letter in word.letters:
        matrix = _matmul(matrix, _burau_generator(n, letter))
    return matrix


def fingerprint(word: BraidWord):
    """Sound inequality filter: equal braids always get equal fingerprints."""
    return permutation(word), burau_fingerprint(word)

"""Uniform element arithmetic and Cayley-ball enumeration.

Three group families are supported:

* free abelian lattices Z^k, elements stored as integer vectors;
* Artin braid groups B_n, elements carrying a free-reduced word with
  semantic equality through the word problem;
* the Klein-bottle group <x, y | x y x^-1 = y^-1>, elements in the
  normal form x^a y^b with the multiplication law
  (a1, b1)(a2, b2) = (a1 + a2, (-1)^a2 b1 + b2), derived once from the
  relator and fixed as the datum.

Balls are enumerated breadth first over the standard generators and
their inverses in a fixed letter order, deduplicating with each
family's equality decision, so members carry shortest (for braids,
BFS-first canonical) representatives and appear in a deterministic
order: by word length, then by discovery.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import braids
from .braids import BraidWord
from .budgets import Budget, current_budget
from .errors import BudgetExceededError, ContextMismatchError, UsageError

FREE_ABELIAN = "free_abelian"
BRAID = "braid"
KLEIN_BOTTLE = "klein_bottle"


@dataclass(frozen=True)
class GroupContext:
    """One of the supported group families together with its parameters."""

    family: str
    k: int = 0
    n: int = 0

    def __post_init__(self) -> None:
        if self.family == FREE_ABELIAN:
            if self.k < 1:
                raise UsageError("free abelian rank must be k >= 1")
        elif self.family == BRAID:
            if self.n < 2:
                raise UsageError("braid group needs n >= 2")
        elif self.family == KLEIN_BOTTLE:
            pass
        else:
            raise UsageError(f"unknown group family {self.family!r}")

    @classmethod
    def free_abelian(cls, k: int) -> "GroupContext":
        return cls(FREE_ABELIAN, k=k)

    @classmethod
    def braid(cls, n: int) -> "GroupContext":
        return cls(BRAID, n=n)

    @classmethod
    def klein_bottle(cls) -> "GroupContext":
        return cls(KLEIN_BOTTLE)

    @property
    def generator_names(self) -> tuple[str, ...]:
        if self.family == FREE_ABELIAN:
            return tuple(f"e{i}" for i in range(1, self.k + 1))
        if self.family == BRAID:
            return tuple(f"s{i}" for i in range(1, self.n))
        return ("x", "y")

    def identity(self) -> "GroupElement":
        if self.family == FREE_ABELIAN:
            return GroupElement(self, (0,) * self.k)
        if self.family == BRAID:
            return GroupElement(self, BraidWord.identity(self.n))
        return GroupElement(self, (0, 0))

    def element(self, value) -> "GroupElement":
        """Coerce a payload into an element: coordinate tuple, Klein pair,
        BraidWord, or braid word text."""
        if self.family == BRAID:
            if isinstance(value, BraidWord):
                word = value
            elif isinstance(value, str):
                word = BraidWord.from_text(self.n, value)
            else:
                word = BraidWord(self.n, tuple(value))
            if word.n != self.n:
                raise ContextMismatchError("incompatible groups")
            return GroupElement(self, braids.free_reduce(word))
        coords = tuple(int(c) for c in value)
        expected = self.k if self.family == FREE_ABELIAN else 2
        if len(coords) != expected:
            raise UsageError(f"expected {expected} coordinates, got {len(coords)}")
        return GroupElement(self, coords)

    def generators(self) -> list["GroupElement"]:
        if self.family == FREE_ABELIAN:
            return [self.element(tuple(1 if j == i else 0 for j in range(self.k)))
                    for i in range(self.k)]
        if self.family == BRAID:
            return [self.element(BraidWord(self.n, (i,))) for i in range(1, self.n)]
        return [self.element((1, 0)), self.element((0, 1))]

    def generators_with_inverses(self) -> list["GroupElement"]:
        """Generators interleaved with inverses: g1, g1^-1, g2, g2^-1, ..."""
        out = []
        for g in self.generators():
            out.append(g)
            out.append(g.inverse())
        return out

    def __repr__(self) -> str:
        if self.family == FREE_ABELIAN:
            return f"Z^{self.k}"
        if self.family == BRAID:
            return f"B_{self.n}"
        return "KleinBottle"


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of one of the supported groups in its family's form.

    Equality and hashing are semantic: braid elements compare through the
    word problem and hash through the permutation/Burau fingerprint, so
    different words for the same braid collide as they must.
    """

    context: GroupContext
    payload: tuple | BraidWord

    @property
    def word(self) -> BraidWord:
        if self.context.family != BRAID:
            raise UsageError("only braid elements carry a word")
        return self.payload

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        out = self.context.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    def inverse(self) -> "GroupElement":
        return invert(self)

    def is_identity(self) -> bool:
        return is_identity(self)

    def word_length(self) -> int:
        """Length of the stored representative.  Exact for ball members;
        an upper bound for freshly computed braid products."""
        if self.context.family == BRAID:
            return len(self.payload.letters)
        return sum(abs(c) for c in self.payload)

    def conjugate_by(self, h: "GroupElement") -> "GroupElement":
        """h^-1 * self * h."""
        return h.inverse() * self * h

    @cached_property
    def _fingerprint(self):
        return braids.fingerprint(self.payload)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.context != other.context:
            return False
        if self.context.family == BRAID:
            return braids.braid_equal(self.payload, other.payload)
        return self.payload == other.payload

    def __hash__(self) -> int:
        if self.context.family == BRAID:
            return hash((self.context, self._fingerprint))
        return hash((self.context, self.payload))

    def text(self) -> str:
        if self.context.family == BRAID:
            return self.payload.to_text()
        return ",".join(str(c) for c in self.payload)

    def __repr__(self) -> str:
        return f"<{self.context!r}: {self.text() or '1'}>"


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.context != h.context:
        raise ContextMismatchError("incompatible groups")
    ctx = g.context
    if ctx.family == FREE_ABELIAN:
        return GroupElement(ctx, tuple(a + b for a, b in zip(g.payload, h.payload)))
    if ctx.family == KLEIN_BOTTLE:
        a1, b1 = g.payload
        a2, b2 = h.payload
        return GroupElement(ctx, (a1 + a2, (b1 if a2 % 2 == 0 else -b1) + b2))
    return GroupElement(ctx, g.payload * h.payload)


def invert(g: GroupElement) -> GroupElement:
    ctx = g.context
    if ctx.family == FREE_ABELIAN:
        return GroupElement(ctx, tuple(-c for c in g.payload))
    if ctx.family == KLEIN_BOTTLE:
        a, b = g.payload
        return GroupElement(ctx, (-a, -b if a % 2 == 0 else b))
    return GroupElement(ctx, g.payload.inverse())


def is_identity(g: GroupElement) -> bool:
    if g.context.family == BRAID:
        return braids.is_trivial(g.payload)
    return all(c == 0 for c in g.payload)


class Ball:
    """The nontrivial elements of word length at most ``radius``.

    Closed under inversion, free of duplicates, ordered by word length
    and then by BFS discovery order.
    """

    def __init__(self, context: GroupContext, radius: int,
                 elements: list[GroupElement]):
        self.context = context
        self.radius = radius
        self.elements: tuple[GroupElement, ...] = tuple(elements)
        self.index: dict[GroupElement, int] = {
            e: i for i, e in enumerate(self.elements)}
        self.lengths: tuple[int, ...] = tuple(e.word_length() for e in self.elements)
        self.inverse_position: tuple[int, ...] = tuple(
            self.index[e.inverse()] for e in self.elements)
        self._triples: list[tuple[int, int, int]] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element: GroupElement) -> bool:
        return element in self.index

    def position(self, element: GroupElement) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise UsageError(f"{element!r} is not in the radius-{self.radius} ball")

    def product_triples(self) -> list[tuple[int, int, int]]:
        """All (i, j, k) with element_i * element_j = element_k, cached."""
        if self._triples is None:
            triples = []
            for i, g in enumerate(self.elements):
                for j, h in enumerate(self.elements):
                    prod = g * h
                    if is_identity(prod):
                        continue
                    k = self.index.get(prod)
                    if k is not None:
                        triples.append((i, j, k))
            self._triples = triples
        return self._triples


_ball_cache: dict[tuple[GroupContext, int], Ball] = {}


def ball(context: GroupContext, radius: int,
         budget: Budget | dict | None = None) -> Ball:
    """Enumerate the Cayley ball of the given radius.

    Braid balls are capped by the budget because deduplication costs a
    word-problem call per candidate collision.
    """
    if radius < 0:
        raise UsageError("ball radius must be nonnegative")
    if context.family == BRAID:
        limit = current_budget(budget).braid_ball_limit(context.n)
        if radius > limit:
            raise BudgetExceededError(
                f"ball budget exceeded: radius {radius} > limit {limit} "
                f"for B_{context.n}")
    cached = _ball_cache.get((context, radius))
    if cached is not None:
        return cached

    gens = context.generators_with_inverses()
    elements: list[GroupElement] = []
    seen: dict[GroupElement, int] = {}
    frontier = [context.identity()]
    identity = context.identity()
    seen[identity] = -1
    for _layer in range(radius):
        next_frontier: list[GroupElement] = []
        for parent in frontier:
            for g in gens:
                candidate = parent * g
                if candidate in seen:
                    continue
                seen[candidate] = len(elements)
                elements.append(candidate)
                next_frontier.append(candidate)
        frontier = next_frontier
    result = Ball(context, radius, elements)
    _ball_cache[(context, radius)] = result
    return result


def clear_ball_cache() -> None:
    _ball_cache.clear()

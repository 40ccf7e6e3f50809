"""The space of left orderings at finite resolution.

A cone restricted to a Cayley ball is a sign vector; two cones are at
distance 2^-r when r is the largest radius on which their sign vectors
agree.  Distance zero is never asserted: when agreement persists to the
scanned resolution the result is an upper bound flagged as inexact.

The census enumerates every +/- assignment on a ball satisfying the
local cone axioms (inversion antisymmetry and product closure for
in-ball products) plus optional positivity pins.  Finite-radius census
vectors are necessary conditions for genuine left orders, so counts are
"consistent cylinder classes at radius r"; when constructed orders
match the count, the count is certified.  Enumeration is backtracking
with unit propagation over inverse-paired variables in ball order,
trying + before -, which makes the output order deterministic.

The remaining operations are experiment drivers: semigroup witnesses
for the Dubrovina-Dubrovin cone, conjugate-orbit accumulation scans,
convexity triple scans, discreteness checks, interval closures, and
Conradian / bi-order violation scans, each returning replayable
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .budgets import Budget, current_budget
from .certificates import (AccumulationWitness, ConvexityCertificate,
                           ConvexityCounterexample, DensityWitness,
                           DiscretenessPass, IntervalClosureReport,
                           SemigroupWitness)
from .cones import (ConeOracle, ConvexPredicate, DubrovinaDubrovinCone,
                    conjugate_cone, element_to_json, sign_text)
from .errors import (BudgetExceededError, ContextMismatchError, UsageError)
from .groups import BRAID, Ball, GroupContext, GroupElement, ball


@dataclass(frozen=True)
class SignVector:
    """The restriction of a cone to a ball: one sign per ball element."""

    ball: Ball
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != len(self.ball):
            raise UsageError("sign vector length must match the ball")

    def sign_of(self, g: GroupElement) -> int:
        return self.signs[self.ball.position(g)]

    def positives(self) -> list[GroupElement]:
        return [e for e, s in zip(self.ball.elements, self.signs) if s == 1]

    def restrict(self, radius: int) -> tuple[int, ...]:
        return tuple(s for s, l in zip(self.signs, self.ball.lengths)
                     if l <= radius)

    def validate(self) -> None:
        """Re-check the invariants: antisymmetry under the inversion
        pairing and closure of positives under in-ball products."""
        for i, s in enumerate(self.signs):
            if s not in (1, -1):
                raise UsageError("sign vectors only take values + and -")
            if self.signs[self.ball.inverse_position[i]] != -s:
                raise UsageError("sign vector is not antisymmetric")
        for i, j, k in self.ball.product_triples():
            if self.signs[i] == 1 and self.signs[j] == 1 and self.signs[k] != 1:
                raise UsageError("sign vector is not product closed")

    def to_json(self) -> dict:
        return {"radius": self.ball.radius,
                "signs": [[element_to_json(e), sign_text(s)]
                          for e, s in zip(self.ball.elements, self.signs)]}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignVector):
            return NotImplemented
        return (self.ball.context == other.ball.context
                and self.ball.radius == other.ball.radius
                and self.signs == other.signs)

    def __hash__(self) -> int:
        return hash((self.ball.context, self.ball.radius, self.signs))


@dataclass(frozen=True)
class DistanceResult:
    """Ultrametric distance at finite resolution.

    ``exact`` is False when the vectors agreed all the way out to the
    resolution; the distance is then only an upper bound 2^-resolution.
    """

    agree_radius: int
    resolution: int
    exact: bool

    @property
    def distance(self) -> Fraction:
        return Fraction(1, 2 ** self.agree_radius)

    def to_json(self) -> dict:
        return {"agree_radius": self.agree_radius,
                "distance": f"2^-{self.agree_radius}",
                "resolution": self.resolution, "exact": self.exact}


def sign_vector(cone: ConeOracle, radius: int,
                budget: Budget | dict | None = None,
                validate: bool = False) -> SignVector:
    """Evaluate the cone on every element of the radius ball."""
    b = ball(cone.context, radius, budget)
    signs = []
    for element in b:
        s = cone.sign(element)
        if s == 0:
            raise UsageError(
                f"cone assigned 0 to the nontrivial element {element!r}")
        signs.append(s)
    vector = SignVector(b, tuple(signs))
    if validate:
        vector.validate()
    return vector


def distance(p: ConeOracle, q: ConeOracle, resolution: int,
             budget: Budget | dict | None = None) -> DistanceResult:
    """Largest agreement radius up to the resolution, as a distance."""
    if p.context != q.context:
        raise ContextMismatchError("incompatible groups")
    if resolution < 1:
        raise UsageError("resolution must be at least 1")
    b = ball(p.context, resolution, budget)
    for element, length in zip(b.elements, b.lengths):
        if p.sign(element) != q.sign(element):
            return DistanceResult(length - 1, resolution, True)
    return DistanceResult(resolution, resolution, False)


# ---------------------------------------------------------------------------
# Census


@dataclass(frozen=True)
class CensusQuery:
    """A cylinder set at finite radius: the cones with the given elements
    positive, cut down to sign vectors on the radius ball."""

    context: GroupContext
    radius: int
    required_positive: tuple[GroupElement, ...] = ()


def census(query: CensusQuery,
           budget: Budget | dict | None = None) -> list[SignVector]:
    """All consistent sign vectors on the ball matching the pins.

    Complete and duplicate-free; deterministic order (variables in ball
    order, + tried before -).  Solutions are re-validated independently
    after enumeration as a guard against propagation bugs.
    """
    eff = current_budget(budget)
    cap = (eff.census_braid_radius if query.context.family == BRAID
           else eff.census_other_radius)
    if query.radius > cap:
        raise BudgetExceededError(
            f"census budget exceeded: radius {query.radius} > limit {cap}")
    b = ball(query.context, query.radius, budget)
    n = len(b)
    inverse = b.inverse_position
    triples = b.product_triples()
    by_element: list[list[int]] = [[] for _ in range(n)]
    for t, (i, j, k) in enumerate(triples):
        for slot in (i, j, k):
            by_element[slot].append(t)

    signs = [0] * n
    solutions: list[tuple[int, ...]] = []

    def assign(pos: int, value: int, trail: list[int]) -> bool:
        """Set a pair of signs and propagate closure; False on conflict."""
        queue = []
        for target, v in ((pos, value), (inverse[pos], -value)):
            if signs[target] == 0:
                signs[target] = v
                trail.append(target)
                queue.append(target)
            elif signs[target] != v:
                return False
        while queue:
            current = queue.pop()
            for t in by_element[current]:
                i, j, k = triples[t]
                si, sj, sk = signs[i], signs[j], signs[k]
                forced = None
                if si == 1 and sj == 1:
                    forced = (k, 1)
                elif si == 1 and sk == -1:
                    forced = (j, -1)
                elif sj == 1 and sk == -1:
                    forced = (i, -1)
                if forced is None:
                    continue
                target, v = forced
                if signs[target] == -v or signs[inverse[target]] == v:
                    return False
                for tgt, val in ((target, v), (inverse[target], -v)):
                    if signs[tgt] == 0:
                        signs[tgt] = val
                        trail.append(tgt)
                        queue.append(tgt)
        return True

    root_trail: list[int] = []
    feasible = True
    for pin in query.required_positive:
        if pin not in b:
            raise UsageError(f"pinned element {pin!r} is outside the ball")
        if not assign(b.position(pin), 1, root_trail):
            feasible = False
            break

    def search() -> None:
        pos = next((i for i in range(n) if signs[i] == 0), None)
        if pos is None:
            solutions.append(tuple(signs))
            return
        for value in (1, -1):
            trail: list[int] = []
            if assign(pos, value, trail):
                search()
            for touched in trail:
                signs[touched] = 0

    if feasible:
        search()
    for touched in root_trail:
        signs[touched] = 0

    vectors = [SignVector(b, sol) for sol in solutions]
    for vector in vectors:
        vector.validate()
    return vectors


# ---------------------------------------------------------------------------
# Semigroup witnesses for the Dubrovina-Dubrovin cone


def dd_isolation_witnesses(n: int, radius: int, max_len: int,
                           budget: Budget | dict | None = None
                           ) -> list[SemigroupWitness]:
    """Factor every DD-positive ball element over the cone's generators.

    Breadth-first search over semigroup products with word-problem
    deduplication; first-found factorizations are shortest.  Elements
    left unresolved within ``max_len`` and the frontier budget raise,
    never silently vanish.
    """
    cone = DubrovinaDubrovinCone(n)
    frontier_cap = current_budget(budget).bfs_frontier
    targets: dict[GroupElement, int] = {}
    order: list[GroupElement] = []
    for element in ball(cone.context, radius, budget):
        if cone.sign(element) == 1:
            targets[element] = len(order)
            order.append(element)
    found: dict[int, tuple[str, ...]] = {}
    generators = cone.generators()
    names = [f"y{i + 1}" for i in range(len(generators))]

    identity = cone.context.identity()
    seen = {identity}
    frontier: list[tuple[GroupElement, tuple[str, ...]]] = [(identity, ())]
    nodes = 1
    depth = 0
    while frontier and len(found) < len(order) and depth < max_len:
        depth += 1
        next_frontier: list[tuple[GroupElement, tuple[str, ...]]] = []
        for element, factors in frontier:
            for gen, name in zip(generators, names):
                candidate = element * gen
                if candidate in seen:
                    continue
                seen.add(candidate)
                nodes += 1
                if nodes > frontier_cap:
                    missing = [order[i].text() for i in range(len(order))
                               if i not in found]
                    raise BudgetExceededError(
                        "semigroup BFS frontier budget exceeded; unresolved: "
                        + ", ".join(missing))
                path = factors + (name,)
                target_index = targets.get(candidate)
                if target_index is not None and target_index not in found:
                    found[target_index] = path
                next_frontier.append((candidate, path))
        frontier = next_frontier

    if len(found) < len(order):
        missing = [order[i].text() for i in range(len(order)) if i not in found]
        raise BudgetExceededError(
            f"no semigroup witness of length <= {max_len} for: "
            + ", ".join(missing))
    return [SemigroupWitness(n, order[i].text(), found[i])
            for i in range(len(order))]


# ---------------------------------------------------------------------------
# Accumulation scan


def accumulation_scan(cone: ConeOracle, conjugators: Ball, target_radius: int,
                      resolution: int | None = None,
                      budget: Budget | dict | None = None
                      ) -> AccumulationWitness | None:
    """First conjugator moving the cone a positive exact distance at most
    2^-target_radius, or None when the scanned set has no witness.

    Conjugators are tried in ball order; per conjugator the conjugate is
    evaluated outward and abandoned at the first disagreement, so cones
    that differ early cost almost nothing and cones that agree through
    the resolution are skipped as inexact rather than claimed.
    """
    if conjugators.context != cone.context:
        raise ContextMismatchError("incompatible groups")
    if resolution is None:
        resolution = target_radius + 1
    if resolution <= target_radius:
        raise UsageError("resolution must exceed the target radius")
    probe = ball(cone.context, resolution, budget)
    base_signs = [cone.sign(g) for g in probe]
    for h in conjugators:
        conjugate = conjugate_cone(cone, h)
        first_diff: int | None = None
        for g, s, length in zip(probe.elements, base_signs, probe.lengths):
            if conjugate.sign(g) != s:
                first_diff = length
                break
        if first_diff is None:
            continue  # agreement to the whole resolution: inexact, unusable
        agree = first_diff - 1
        if agree >= target_radius:
            return AccumulationWitness(cone.to_json(), element_to_json(h),
                                       target_radius, agree, resolution)
    return None


# ---------------------------------------------------------------------------
# Convexity, discreteness, interval closures


def convexity_check(cone: ConeOracle, predicate: ConvexPredicate, radius: int,
                    budget: Budget | dict | None = None):
    """Scan all triples f, h in C, g outside C for f < g < h.

    Returns a ConvexityCertificate on a clean scan, otherwise the first
    counterexample in deterministic scan order.
    """
    if predicate.context != cone.context:
        raise ContextMismatchError("incompatible groups")
    b = ball(cone.context, radius, budget)
    signs = {g: cone.sign(g) for g in b}

    def less(u: GroupElement, v: GroupElement) -> bool:
        product = u.inverse() * v
        if product.is_identity():
            return False
        s = signs.get(product)
        if s is None:
            s = cone.sign(product)
        return s == 1

    members = [g for g in b if predicate.contains(g)]
    outside = [g for g in b if not predicate.contains(g)]
    for f in members:
        for h in members:
            for g in outside:
                if less(f, g) and less(g, h):
                    return ConvexityCounterexample(
                        cone.to_json(), predicate.to_json(), radius,
                        element_to_json(f), element_to_json(g),
                        element_to_json(h))
    return ConvexityCertificate(cone.to_json(), predicate.to_json(), radius)


def discreteness_check(cone: ConeOracle, candidate_eps: GroupElement,
                       radius: int, budget: Budget | dict | None = None):
    """Verify no positive ball element lies strictly below the candidate.

    Returns a DiscretenessPass, or a DensityWitness naming the first
    smaller positive element found.
    """
    if cone.sign(candidate_eps) != 1:
        raise UsageError("candidate least element must be positive")
    for g in ball(cone.context, radius, budget):
        if cone.sign(g) != 1 or g == candidate_eps:
            continue
        if cone.sign(g.inverse() * candidate_eps) == 1:
            return DensityWitness(cone.to_json(),
                                  element_to_json(candidate_eps),
                                  element_to_json(g))
    return DiscretenessPass(cone.to_json(), element_to_json(candidate_eps),
                            radius)


def interval_closure(cone: ConeOracle, g: GroupElement, radius: int,
                     k_max: int,
                     budget: Budget | dict | None = None
                     ) -> IntervalClosureReport:
    """Ball members h with g^-k <= h <= g^k for some k <= k_max, and
    whether each of them fixes the cone under conjugation at this radius.

    Since g is positive the powers are monotone, so membership is
    decided at k = k_max directly.
    """
    if cone.sign(g) != 1:
        raise UsageError("interval element must be positive")
    top = g ** k_max
    bottom = top.inverse()
    members: list[GroupElement] = []
    for h in ball(cone.context, radius, budget):
        below = cone.sign(h.inverse() * top)
        above = cone.sign(bottom.inverse() * h)
        if below >= 0 and above >= 0:
            members.append(h)
    base_vector = sign_vector(cone, radius, budget)
    flags = []
    for h in members:
        conj_vector = sign_vector(conjugate_cone(cone, h), radius, budget)
        flags.append((element_to_json(h), conj_vector == base_vector))
    return IntervalClosureReport(cone.to_json(), element_to_json(g), radius,
                                 k_max, tuple(flags),
                                 all(s for _, s in flags))


# ---------------------------------------------------------------------------
# Order-property scans


@dataclass(frozen=True)
class OrderPropertyReport:
    """Violation inventories at finite resolution.

    conradian_violations  positive pairs (g, h) with g < h g^n failing
                          for every n up to the scan bound
    biorder_violations    pairs (g, h) with h positive but g h g^-1 negative
    stabilizer_elements   ball elements whose conjugate cone agrees with
                          the cone on the whole ball (a finite-resolution
                          over-approximation of the stabilizer)
    """

    radius: int
    n_max: int
    conradian_violations: tuple[tuple[object, object], ...]
    biorder_violations: tuple[tuple[object, object], ...]
    stabilizer_elements: tuple[object, ...]

    def to_json(self) -> dict:
        return {"radius": self.radius, "n_max": self.n_max,
                "conradian_violations": [list(p) for p in
                                         self.conradian_violations],
                "biorder_violations": [list(p) for p in
                                       self.biorder_violations],
                "stabilizer_elements": list(self.stabilizer_elements)}


def order_property_scan(cone: ConeOracle, radius: int, n_max: int = 4,
                        budget: Budget | dict | None = None,
                        restrict_to: ConvexPredicate | None = None
                        ) -> OrderPropertyReport:
    """Scan a ball for Conradian failures, bi-order failures, and
    cone-stabilizing elements; optionally restricted to a subgroup."""
    b = ball(cone.context, radius, budget)
    elements = [g for g in b
                if restrict_to is None or restrict_to.contains(g)]
    positives = [g for g in elements if cone.sign(g) == 1]

    conradian = []
    for g in positives:
        g_inverse = g.inverse()
        for h in positives:
            ok = False
            power = g_inverse * h
            for _ in range(n_max):
                power = power * g
                if cone.sign(power) == 1:
                    ok = True
                    break
            if not ok:
                conradian.append((element_to_json(g), element_to_json(h)))

    biorder = []
    for g in elements:
        g_inverse = g.inverse()
        for h in positives:
            if cone.sign(g * h * g_inverse) == -1:
                biorder.append((element_to_json(g), element_to_json(h)))

    base_vector = sign_vector(cone, radius, budget)
    stabilizers = []
    for g in elements:
        if sign_vector(conjugate_cone(cone, g), radius, budget) == base_vector:
            stabilizers.append(element_to_json(g))

    return OrderPropertyReport(radius, n_max, tuple(conradian),
                               tuple(biorder), tuple(stabilizers))


@dataclass(frozen=True)
class SoulLevelReport:
    """One chain level of the soul estimate."""

    predicate_json: dict
    description: str
    convex: bool
    conradian_ok: bool
    biorder_ok: bool

    def to_json(self) -> dict:
        return {"predicate": self.predicate_json,
                "description": self.description, "convex": self.convex,
                "conradian_ok": self.conradian_ok,
                "biorder_ok": self.biorder_ok}


@dataclass(frozen=True)
class SoulEstimate:
    """Finite-resolution estimate of the largest convex levels on which
    the restricted order looks Conradian / bi-invariant.

    Levels are indices into the chain; -1 means no level passed.  This
    is evidence at the scanned radius, not a decision about the group.
    """

    radius: int
    n_max: int
    levels: tuple[SoulLevelReport, ...]
    best_conradian_level: int
    best_biorder_level: int

    def to_json(self) -> dict:
        return {"radius": self.radius, "n_max": self.n_max,
                "levels": [l.to_json() for l in self.levels],
                "best_conradian_level": self.best_conradian_level,
                "best_biorder_level": self.best_biorder_level,
                "note": "finite-resolution estimate"}


def soul_estimate(cone: ConeOracle, chain: list[ConvexPredicate], radius: int,
                  n_max: int = 4,
                  budget: Budget | dict | None = None) -> SoulEstimate:
    """Scan an inclusion-ordered chain of candidate convex subgroups."""
    levels = []
    best_conradian = -1
    best_biorder = -1
    for level, predicate in enumerate(chain):
        convex_result = convexity_check(cone, predicate, radius, budget)
        is_convex = isinstance(convex_result, ConvexityCertificate)
        report = order_property_scan(cone, radius, n_max, budget,
                                     restrict_to=predicate)
        conradian_ok = not report.conradian_violations
        biorder_ok = not report.biorder_violations
        levels.append(SoulLevelReport(predicate.to_json(),
                                      predicate.describe(), is_convex,
                                      conradian_ok, biorder_ok))
        if is_convex and conradian_ok:
            best_conradian = level
        if is_convex and biorder_ok:
            best_biorder = level
    return SoulEstimate(radius, n_max, tuple(levels), best_conradian,
                        best_biorder)


def check_cone_axioms(cone: ConeOracle, radius: int,
                      budget: Budget | dict | None = None) -> None:
    """Raise unless the cone passes the axiom suite on the ball."""
    sign_vector(cone, radius, budget, validate=True)

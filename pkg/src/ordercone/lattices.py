"""Exact left orderings of Z^k by chains of hyperplane normals over Q(sqrt 2).

A ``LexConeSpec`` orders Z^k by the sign of the first nonzero dot
product against an ordered list of normal vectors with entries in
Q(sqrt 2).  Each normal contributes two rational functionals (the
rational and the sqrt-2 part of the dot product), so validity (no
nonzero lattice vector orthogonal to every normal) and kernels are
decided exactly with integer linear algebra.

Density classification peels normals recursively: the integer kernel L
of the first normal carries the refinement order given by the remaining
normals, and its positives sit below everything the first normal
already separates, so the whole order has a least positive element
exactly when the restriction to L does.  When L is trivial the first
normal embeds the lattice in the reals, where a subgroup of rank 2 or
more is never discrete.  Discrete verdicts are cross-checked against a
brute-force ball search and the operation fails loudly on disagreement;
a dense verdict cannot be refuted by any finite window, so the window
check for it is one-directional.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import intlinalg
from .budgets import Budget, current_budget
from .errors import CrossCheckError, PerturbationError, UsageError
from .quadratic import QuadScalar, quad, quad_sign

Vector = tuple[int, ...]
Normal = tuple[QuadScalar, ...]

_DELTA_START = Fraction(1, 8)
_DELTA_FLOOR = Fraction(1, 2 ** 64)

#: Difference-witness search radii for perturbations, by dimension.
_WITNESS_RADIUS = {2: 12, 3: 6}


def _as_vector(v, k: int) -> Vector:
    vec = tuple(int(c) for c in v)
    if len(vec) != k:
        raise UsageError(f"expected a vector of dimension {k}, got {len(vec)}")
    return vec


def _functional_rows(normals: tuple[Normal, ...]) -> list[list[Fraction]]:
    rows = []
    for normal in normals:
        rows.append([entry.a for entry in normal])
        rows.append([entry.b for entry in normal])
    return rows


def _integer_rows(rows: list[list[Fraction]]) -> intlinalg.IntMatrix:
    out = []
    for row in rows:
        if not any(row):
            continue
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


@dataclass(frozen=True)
class LexConeSpec:
    """An exact total left order of Z^k: sign of the first nonzero dot."""

    k: int
    normals: tuple[Normal, ...]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise UsageError("lattice dimension must be k >= 1")
        if not self.normals:
            raise UsageError("a lex spec needs at least one normal")
        normals = tuple(tuple(entry if isinstance(entry, QuadScalar) else quad(entry)
                              for entry in normal)
                        for normal in self.normals)
        object.__setattr__(self, "normals", normals)
        for normal in normals:
            if len(normal) != self.k:
                raise UsageError(f"normal {normal!r} has wrong dimension")
        rows = _functional_rows(normals)
        if intlinalg.rational_rank(rows) < self.k:
            raise UsageError(
                "invalid spec: some nonzero lattice vector is orthogonal "
                "to every normal")

    def dot(self, normal_index: int, v: Vector) -> QuadScalar:
        total = quad(0, 0)
        for entry, coord in zip(self.normals[normal_index], v):
            total = total + entry * coord
        return total

    @property
    def _int_normals(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Each normal scaled by a positive integer so both functional
        rows are integral; signs are unchanged and dots become fast."""
        cached = getattr(self, "_int_normals_cache", None)
        if cached is None:
            cached = []
            for normal in self.normals:
                denom = 1
                for entry in normal:
                    for part in (entry.a, entry.b):
                        denom = denom * part.denominator // gcd(
                            denom, part.denominator)
                cached.append((tuple(int(e.a * denom) for e in normal),
                               tuple(int(e.b * denom) for e in normal)))
            object.__setattr__(self, "_int_normals_cache", cached)
        return cached

    def sign(self, v) -> int:
        v = _as_vector(v, self.k)
        for a_row, b_row in self._int_normals:
            a = sum(x * c for x, c in zip(a_row, v))
            b = sum(x * c for x, c in zip(b_row, v))
            if a == 0 and b == 0:
                continue
            sa = 1 if a > 0 else (-1 if a < 0 else 0)
            sb = 1 if b > 0 else (-1 if b < 0 else 0)
            if sa == sb or sb == 0:
                return sa
            if sa == 0:
                return sb
            return sa if a * a > 2 * b * b else sb
        return 0

    def to_json(self) -> dict:
        return {"k": self.k,
                "normals": [[entry.to_json() for entry in normal]
                            for normal in self.normals]}

    @classmethod
    def from_json(cls, data: dict) -> "LexConeSpec":
        try:
            normals = tuple(tuple(QuadScalar.from_json(entry) for entry in normal)
                            for normal in data["normals"])
            return cls(int(data["k"]), normals)
        except (KeyError, TypeError) as exc:
            raise UsageError(f"bad lex spec payload: {exc}") from exc


def lex_sign(spec: LexConeSpec, v) -> int:
    """Sign of v under the spec: -1, 0 (only for v = 0), or +1."""
    return spec.sign(v)


def compare_vectors(spec: LexConeSpec, u, v) -> int:
    """Sign of v - u: positive when u < v in the order."""
    u = _as_vector(u, spec.k)
    v = _as_vector(v, spec.k)
    return spec.sign(tuple(b - a for a, b in zip(u, v)))


@dataclass(frozen=True)
class DensityReport:
    """Outcome of a density classification: discrete orders carry their
    least positive element, dense ones carry none."""

    verdict: str  # "dense" | "discrete"
    least_positive: Vector | None
    method: str  # "exact-recursive" | "ball-search"

    def __post_init__(self) -> None:
        if (self.verdict == "discrete") != (self.least_positive is not None):
            raise UsageError("verdict is discrete iff least_positive is present")

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "least_positive": list(self.least_positive)
                if self.least_positive is not None else None,
                "method": self.method}


def _restrict_normals(normals: tuple[Normal, ...],
                      basis: intlinalg.IntMatrix) -> tuple[Normal, ...]:
    """Express normals in the dual coordinates of a sublattice basis."""
    restricted = []
    for normal in normals:
        row = []
        for basis_vec in basis:
            total = quad(0, 0)
            for entry, coord in zip(normal, basis_vec):
                total = total + entry * coord
            row.append(total)
        restricted.append(tuple(row))
    return tuple(restricted)


def _classify(k: int, normals: tuple[Normal, ...]) -> Vector | None:
    """Least positive element in basis coordinates, or None when dense."""
    if not normals:
        raise AssertionError("recursion exhausted normals on a nonzero lattice")
    first, rest = normals[0], normals[1:]
    rows = _integer_rows(_functional_rows((first,)))
    kernel = intlinalg.kernel_basis(rows, k)
    rank = len(kernel)
    if rank == 0:
        if k == 1:
            unit = (1,)
            s = quad_sign(first[0])
            return unit if s > 0 else (-1,)
        # The first normal embeds a rank >= 2 lattice into the reals;
        # such a subgroup is never discrete.
        return None
    if rank == k:
        # The first normal vanishes identically; peel it.
        return _classify(k, rest)
    sub_least = _classify(rank, _restrict_normals(rest, kernel))
    if sub_least is None:
        return None
    lifted = [0] * k
    for coeff, basis_vec in zip(sub_least, kernel):
        for i, c in enumerate(basis_vec):
            lifted[i] += coeff * c
    return tuple(lifted)


def iter_lattice_shell(k: int, norm: int):
    """All integer vectors of L1 norm exactly ``norm``, deterministically."""
    def build(prefix: list[int], remaining: int, slots: int):
        if slots == 1:
            if remaining == 0:
                yield tuple(prefix + [0])
            else:
                yield tuple(prefix + [remaining])
                yield tuple(prefix + [-remaining])
            return
        for magnitude in range(remaining + 1):
            values = (0,) if magnitude == 0 else (magnitude, -magnitude)
            for value in values:
                yield from build(prefix + [value], remaining - magnitude,
                                 slots - 1)
    yield from build([], norm, k)


def least_positive_in_ball(spec: LexConeSpec, radius: int) -> Vector | None:
    """Order-minimum of the positive vectors with L1 norm <= radius."""
    best: Vector | None = None
    for norm in range(1, radius + 1):
        for v in iter_lattice_shell(spec.k, norm):
            if spec.sign(v) != 1:
                continue
            if best is None or compare_vectors(spec, v, best) == 1:
                best = v
    return best


def _positive_below(spec: LexConeSpec, bound: Vector,
                    lo: int, hi: int) -> Vector | None:
    """First positive vector strictly below ``bound`` with norm in (lo, hi]."""
    for norm in range(lo + 1, hi + 1):
        for v in iter_lattice_shell(spec.k, norm):
            if spec.sign(v) == 1 and compare_vectors(spec, v, bound) == 1:
                return v
    return None


def classify_density(spec: LexConeSpec,
                     budget: Budget | dict | None = None) -> DensityReport:
    """Exact dense/discrete verdict with the least positive element.

    Discrete verdicts are verified against a ball search at the budget's
    check radius; any positive vector below the claimed least fails the
    operation loudly.
    """
    least = _classify(spec.k, spec.normals)
    if least is None:
        return DensityReport("dense", None, "exact-recursive")
    norm = sum(abs(c) for c in least)
    check_radius = max(min(current_budget(budget).lattice_check_radius,
                           max(norm, 4)), 1)
    window_min = least_positive_in_ball(spec, check_radius)
    if norm <= check_radius:
        if window_min != least:
            raise CrossCheckError(
                f"exact least {least} disagrees with ball search {window_min}")
    elif window_min is not None and compare_vectors(spec, window_min, least) == 1:
        raise CrossCheckError(
            f"ball search found {window_min} below the exact least {least}")
    return DensityReport("discrete", least, "exact-recursive")


def ball_search_density(spec: LexConeSpec, radius: int,
                        refutation_radius: int | None = None) -> DensityReport:
    """Desk-scale density oracle, independent of the exact recursion.

    Takes the order-minimum m of the positives in the radius window,
    then tries to refute its minimality by exhibiting a positive vector
    strictly below m in balls of doubling radius.  A found witness is
    a genuine decreasing chain, so the dense verdict is sound; a miss up
    to the refutation cap is read as discrete with least m, which is
    exactly as strong as a finite window can be.  Meaningful for specs
    with small coefficients relative to the cap; used as the cross-check
    route, never as the exact answer.
    """
    minimum = least_positive_in_ball(spec, radius)
    if minimum is None:
        raise UsageError("window contained no positive vectors")
    if refutation_radius is None:
        refutation_radius = 16 * radius if spec.k <= 2 else 8 * radius
    scanned = 0
    width = radius
    while scanned < refutation_radius:
        width = min(max(2 * width, radius), refutation_radius)
        if _positive_below(spec, minimum, scanned, width) is not None:
            return DensityReport("dense", None, "ball-search")
        scanned = width
    return DensityReport("discrete", minimum, "ball-search")


@dataclass(frozen=True)
class PerturbationResult:
    """A dense single-normal spec close to the input, with evidence."""

    spec: LexConeSpec
    witness: Vector  # lattice vector on which input and output disagree
    coordinate: int  # 1-based index of the perturbed entry
    delta: Fraction

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "witness": list(self.witness),
                "coordinate": self.coordinate, "delta": str(self.delta)}


def perturb_dense(spec: LexConeSpec, required_positive,
                  budget: Budget | dict | None = None) -> PerturbationResult:
    """Tilt the first normal into a dense order keeping pinned vectors positive.

    Candidate normals are n1 + delta*sqrt(2)*e_j for j = 1..k and delta
    halving from 1/8; the first candidate that passes all exact checks
    (pinned signs, exactly one irrational entry, validity, density, and
    a difference witness within the configured radius) wins.  Over
    Q(sqrt 2) a single normal can only order Z^k totally when the two
    rational functional rows have full rank k, which forces k <= 2, so
    for higher dimensions the schedule runs out and the error says so;
    dense orders there are built by composing ``saturate`` and
    ``extend_by_quotient`` instead.
    """
    required = [_as_vector(g, spec.k) for g in required_positive]
    for g in required:
        if spec.sign(g) != 1:
            raise UsageError(f"required vector {g} is not positive under the spec")
    first = spec.normals[0]
    witness_radius = _WITNESS_RADIUS.get(spec.k, 6)
    for j in range(spec.k):
        if any(first[p].b != 0 for p in range(spec.k) if p != j):
            continue  # another entry is already irrational; j cannot work
        if any(g[j] <= 0 for g in required if spec.dot(0, g).is_zero()):
            continue  # a pinned vector rides the hyperplane on the wrong side
        delta = _DELTA_START
        while delta >= _DELTA_FLOOR:
            entries = list(first)
            entries[j] = entries[j] + quad(0, delta)
            if entries[j].b == 0:
                delta /= 2
                continue
            try:
                candidate = LexConeSpec(spec.k, (tuple(entries),))
            except UsageError:
                break  # validity is delta-independent for fixed j
            if (all(candidate.sign(g) == 1 for g in required)
                    and classify_density(candidate, budget).verdict == "dense"):
                witness = _difference_witness(spec, candidate, witness_radius)
                if witness is not None:
                    return PerturbationResult(candidate, witness, j + 1, delta)
            delta /= 2
    raise PerturbationError(
        "perturbation failed: no admissible tilt at the configured precision "
        f"(k = {spec.k}; dense single-normal specs over Q(sqrt 2) need k = 2)")


def _difference_witness(old: LexConeSpec, new: LexConeSpec,
                        radius: int) -> Vector | None:
    from .groups import GroupContext, ball
    for element in ball(GroupContext.free_abelian(old.k), radius):
        v = element.payload
        if old.sign(v) != new.sign(v):
            return v
    return None


@dataclass(frozen=True)
class SaturationResult:
    """Basis of the isolator of the span of the input generators."""

    input_generators: tuple[Vector, ...]
    basis: tuple[Vector, ...]

    def to_json(self) -> dict:
        return {"input_generators": [list(g) for g in self.input_generators],
                "basis": [list(b) for b in self.basis]}


def saturate(k: int, generators) -> SaturationResult:
    """Smallest saturated sublattice of Z^k containing the generators.

    Computed as the double integer-orthogonal complement; the quotient
    by the result is torsion free by construction.
    """
    gens = tuple(_as_vector(g, k) for g in generators)
    basis = intlinalg.saturation([list(g) for g in gens], k)
    return SaturationResult(gens, tuple(tuple(row) for row in basis))


def _completed_transforms(basis: tuple[Vector, ...], k: int):
    """Smith transforms (U, V) for a saturated basis B: U B V = [I | 0].

    The rows of V^-1 complete B to a basis of Z^k, so alpha(w) = w . V
    are coordinates in that completed basis: the first r locate w inside
    the sublattice (after mixing by U), the last k - r are the quotient
    coordinates.  Raises when B is not saturated, since the quotient
    would then have torsion.
    """
    rows = [list(b) for b in basis]
    u, d, v = intlinalg.smith_with_transforms(rows)
    r = len(basis)
    divisors = [d[i][i] for i in range(r)]
    if any(x != 1 for x in divisors):
        raise UsageError(
            f"basis is not saturated (quotient has torsion: divisors {divisors})")
    return u, v


def extend_by_quotient(inner: LexConeSpec | None, basis,
                       outer: LexConeSpec) -> LexConeSpec:
    """Order Z^k by the quotient order first, refined by the inner order.

    ``basis`` spans a saturated sublattice L of Z^k; ``inner`` orders L
    in basis coordinates and ``outer`` orders the quotient Z^k / L.  The
    result stacks the lifted outer normals above the inner normals
    pulled back through the dual coordinates, so a vector is compared by
    its coset first and within L only when the coset is trivial.  An
    empty basis (trivial L) returns ``outer`` unchanged.
    """
    basis = [tuple(int(c) for c in b) for b in basis]
    if not basis:
        return outer
    k = len(basis[0])
    basis = [_as_vector(b, k) for b in basis]
    r = len(basis)
    if inner is None:
        raise UsageError("a nonempty basis needs an inner spec")
    if inner.k != r:
        raise UsageError(f"inner spec has dimension {inner.k}, basis rank is {r}")
    if outer.k != k - r:
        raise UsageError(
            f"outer spec has dimension {outer.k}, quotient rank is {k - r}")
    u, v = _completed_transforms(basis, k)
    lifted: list[Normal] = []
    for normal in outer.normals:
        entries = []
        for row in range(k):
            total = quad(0, 0)
            for l, scalar in enumerate(normal):
                total = total + scalar * v[row][r + l]
            entries.append(total)
        lifted.append(tuple(entries))
    for normal in inner.normals:
        # inner coordinates of w are (w . V)[:r] . U
        entries = []
        for row in range(k):
            total = quad(0, 0)
            for s, scalar in enumerate(normal):
                for t in range(r):
                    total = total + scalar * (v[row][t] * u[t][s])
            entries.append(total)
        lifted.append(tuple(entries))
    return LexConeSpec(k, tuple(lifted))


def restrict_to_sublattice(spec: LexConeSpec, basis) -> LexConeSpec:
    """The order induced on a sublattice, in its basis coordinates."""
    basis = [list(_as_vector(b, spec.k)) for b in basis]
    return LexConeSpec(len(basis), _restrict_normals(spec.normals, basis))

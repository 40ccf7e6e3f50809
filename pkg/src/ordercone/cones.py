"""Positive-cone oracles and convex-subgroup predicates.

A cone oracle is a total sign function on one of the supported groups
satisfying the positive-cone axioms: the identity gets 0 and nothing
else does, inversion negates the sign, and positives are closed under
products.  Base cones are the Dehornoy and Dubrovina-Dubrovin braid
cones, the four Klein-bottle orders, and lattice lex cones; derived
cones are conjugates, flips and replacements on certified convex
subgroups, and lexicographic extensions over a normal convex subgroup.

Oracles are immutable value objects; evaluation is pure.  Everything
serializes to a JSON tagged union and deserializes to an oracle that
replays identically (flip and replace re-certify convexity on load).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from . import intlinalg
from .braids import BraidWord, main_sign
from .errors import CertificateError, ContextMismatchError, UsageError
from .groups import (BRAID, FREE_ABELIAN, KLEIN_BOTTLE, GroupContext,
                     GroupElement)
from .lattices import LexConeSpec, _completed_transforms

if TYPE_CHECKING:
    from .certificates import ConvexityCertificate

_SIGN_TEXT = {1: "+", 0: "0", -1: "-"}
_TEXT_SIGN = {v: k for k, v in _SIGN_TEXT.items()}


def sign_text(s: int) -> str:
    return _SIGN_TEXT[s]


def element_to_json(g: GroupElement):
    if g.context.family == BRAID:
        return g.text()
    return list(g.payload)


def element_from_json(context: GroupContext, data) -> GroupElement:
    return context.element(data)


def context_to_json(ctx: GroupContext) -> dict:
    if ctx.family == FREE_ABELIAN:
        return {"family": ctx.family, "k": ctx.k}
    if ctx.family == BRAID:
        return {"family": ctx.family, "n": ctx.n}
    return {"family": ctx.family}


def context_from_json(data: dict) -> GroupContext:
    family = data.get("family")
    if family == FREE_ABELIAN:
        return GroupContext.free_abelian(int(data["k"]))
    if family == BRAID:
        return GroupContext.braid(int(data["n"]))
    if family == KLEIN_BOTTLE:
        return GroupContext.klein_bottle()
    raise UsageError(f"unknown group family {family!r}")


# ---------------------------------------------------------------------------
# Convex-subgroup predicates


class ConvexPredicate:
    """Membership test for a subgroup used as a convexity candidate.

    Predicates only decide membership; convexity with respect to a cone
    is certified separately by the triple scan in ``lospace``.
    """

    context: GroupContext

    def contains(self, g: GroupElement) -> bool:
        raise NotImplementedError

    def subgroup_context(self) -> GroupContext:
        """The standalone group the subgroup is identified with."""
        raise NotImplementedError

    def project(self, g: GroupElement) -> GroupElement:
        """Coordinates of a member inside ``subgroup_context()``."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class BraidShiftPredicate(ConvexPredicate):
    """The subgroup of B_n generated by the generators above index r,
    i.e. the braids whose reduced form only uses indices > r."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if not 0 <= self.r <= self.n - 2:
            raise UsageError(f"shift amount {self.r} out of range for B_{self.n}")

    @property
    def context(self) -> GroupContext:
        return GroupContext.braid(self.n)

    def contains(self, g: GroupElement) -> bool:
        report = main_sign(g.word)
        return report.index is None or report.index > self.r

    def subgroup_context(self) -> GroupContext:
        return GroupContext.braid(self.n - self.r)

    def project(self, g: GroupElement) -> GroupElement:
        reduced = main_sign(g.word).reduced
        letters = tuple((abs(l) - self.r) * (1 if l > 0 else -1)
                        for l in reduced.letters)
        if any(abs(l) < 1 for l in letters):
            raise UsageError(f"{g!r} is not in the shifted subgroup")
        return self.subgroup_context().element(
            BraidWord(self.n - self.r, letters))

    def to_json(self) -> dict:
        return {"type": "braid_shift", "n": self.n, "r": self.r}

    def describe(self) -> str:
        return f"sh^{self.r}(B_{self.n - self.r})<=B_{self.n}"


@dataclass(frozen=True)
class KleinYPredicate(ConvexPredicate):
    """The subgroup <y> of the Klein-bottle group: pairs (0, b)."""

    @property
    def context(self) -> GroupContext:
        return GroupContext.klein_bottle()

    def contains(self, g: GroupElement) -> bool:
        return g.payload[0] == 0

    def subgroup_context(self) -> GroupContext:
        return GroupContext.free_abelian(1)

    def project(self, g: GroupElement) -> GroupElement:
        if g.payload[0] != 0:
            raise UsageError(f"{g!r} is not in <y>")
        return self.subgroup_context().element((g.payload[1],))

    def to_json(self) -> dict:
        return {"type": "klein_y"}

    def describe(self) -> str:
        return "<y><=K"


@dataclass(frozen=True)
class LatticeSublatticePredicate(ConvexPredicate):
    """An explicit sublattice of Z^k given by basis rows."""

    k: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        basis = tuple(tuple(int(c) for c in b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        for b in basis:
            if len(b) != self.k:
                raise UsageError("basis rows must have dimension k")

    @property
    def context(self) -> GroupContext:
        return GroupContext.free_abelian(self.k)

    def contains(self, g: GroupElement) -> bool:
        return intlinalg.solve_in_row_span(
            [list(b) for b in self.basis], list(g.payload)) is not None

    def subgroup_context(self) -> GroupContext:
        return GroupContext.free_abelian(len(self.basis))

    def project(self, g: GroupElement) -> GroupElement:
        coeff = intlinalg.solve_in_row_span(
            [list(b) for b in self.basis], list(g.payload))
        if coeff is None:
            raise UsageError(f"{g!r} is not in the sublattice")
        return self.subgroup_context().element(tuple(coeff))

    def to_json(self) -> dict:
        return {"type": "lattice_sublattice", "basis": [list(b) for b in self.basis]}

    def describe(self) -> str:
        return f"span{list(map(list, self.basis))}<=Z^{self.k}"


@dataclass(frozen=True)
class CyclicBraidPredicate(ConvexPredicate):
    """The cyclic subgroup of B_n generated by one braid.

    When the generator has nonzero exponent sum, the exponent-sum
    homomorphism pins the only possible power exactly.  Otherwise
    membership falls back to testing powers up to a length bound, which
    is sound at desk scale where candidates come from small balls.
    """

    n: int
    word_text: str

    @property
    def context(self) -> GroupContext:
        return GroupContext.braid(self.n)

    def _generator(self) -> GroupElement:
        return self.context.element(self.word_text)

    def contains(self, g: GroupElement) -> bool:
        return self._power_of(g) is not None

    def _power_of(self, g: GroupElement) -> int | None:
        w = self._generator()
        if g.is_identity():
            return 0
        exp_w = sum(1 if l > 0 else -1 for l in w.word.letters)
        exp_g = sum(1 if l > 0 else -1 for l in g.word.letters)
        if exp_w != 0:
            if exp_g % exp_w != 0:
                return None
            m = exp_g // exp_w
            return m if m != 0 and g == w ** m else None
        bound = len(g.word.letters) + 2
        for m in range(1, bound + 1):
            if g == w ** m:
                return m
            if g == w ** (-m):
                return -m
        return None

    def subgroup_context(self) -> GroupContext:
        return GroupContext.free_abelian(1)

    def project(self, g: GroupElement) -> GroupElement:
        m = self._power_of(g)
        if m is None:
            raise UsageError(f"{g!r} is not a power of {self.word_text!r}")
        return self.subgroup_context().element((m,))

    def to_json(self) -> dict:
        return {"type": "cyclic_braid", "n": self.n, "word": self.word_text}

    def describe(self) -> str:
        return f"<{self.word_text}><=B_{self.n}"


@dataclass(frozen=True)
class WholePredicate(ConvexPredicate):
    """The whole group; lets chains for the soul estimator end at G."""

    context_data: GroupContext

    @property
    def context(self) -> GroupContext:
        return self.context_data

    def contains(self, g: GroupElement) -> bool:
        return True

    def subgroup_context(self) -> GroupContext:
        return self.context_data

    def project(self, g: GroupElement) -> GroupElement:
        return g

    def to_json(self) -> dict:
        return {"type": "whole", "group": context_to_json(self.context_data)}

    def describe(self) -> str:
        return f"all of {self.context_data!r}"


def predicate_from_json(data: dict) -> ConvexPredicate:
    kind = data.get("type")
    if kind == "braid_shift":
        return BraidShiftPredicate(int(data["n"]), int(data["r"]))
    if kind == "klein_y":
        return KleinYPredicate()
    if kind == "lattice_sublattice":
        basis = tuple(tuple(int(c) for c in b) for b in data["basis"])
        k = len(basis[0]) if basis else int(data.get("k", 0))
        return LatticeSublatticePredicate(k, basis)
    if kind == "cyclic_braid":
        return CyclicBraidPredicate(int(data["n"]), data["word"])
    if kind == "whole":
        return WholePredicate(context_from_json(data["group"]))
    raise UsageError(f"unknown predicate type {kind!r}")


# ---------------------------------------------------------------------------
# Cone oracles


class ConeOracle:
    """A total sign function satisfying the positive-cone axioms."""

    context: GroupContext

    def sign(self, g: GroupElement) -> int:
        if g.context != self.context:
            raise ContextMismatchError("incompatible groups")
        return self._sign(g)

    def _sign(self, g: GroupElement) -> int:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class DehornoyCone(ConeOracle):
    """The Dehornoy order of B_n: positive iff the reduced form's lowest
    generator index occurs positively."""

    n: int

    @property
    def context(self) -> GroupContext:
        return GroupContext.braid(self.n)

    def _sign(self, g: GroupElement) -> int:
        return main_sign(g.word).sign

    def to_json(self) -> dict:
        return {"type": "dehornoy", "n": self.n}

    def describe(self) -> str:
        return f"dehornoy:{self.n}"


@dataclass(frozen=True)
class DubrovinaDubrovinCone(ConeOracle):
    """The Dubrovina-Dubrovin order of B_n.

    A braid with main index i and main sign s is positive iff
    s = (-1)^(i+1), matching the semigroup generators
    y_i = (s_i ... s_{n-1})^((-1)^(i+1)): odd main indices must be
    positive, even ones negative.
    """

    n: int

    @property
    def context(self) -> GroupContext:
        return GroupContext.braid(self.n)

    def _sign(self, g: GroupElement) -> int:
        report = main_sign(g.word)
        if report.index is None:
            return 0
        required = 1 if report.index % 2 == 1 else -1
        return 1 if report.sign == required else -1

    def generators(self) -> list[GroupElement]:
        """The semigroup generators y_1 .. y_{n-1} of the positive cone."""
        out = []
        for i in range(1, self.n):
            letters = tuple(range(i, self.n))
            word = BraidWord(self.n, letters)
            if i % 2 == 0:
                word = word.inverse()
            out.append(self.context.element(word))
        return out

    def to_json(self) -> dict:
        return {"type": "dd", "n": self.n}

    def describe(self) -> str:
        return f"dd:{self.n}"


@dataclass(frozen=True)
class KleinTararinCone(ConeOracle):
    """One of the four orders of the Klein-bottle group: the sign of
    x^a y^b is sx * sgn(a) when a != 0 and sy * sgn(b) otherwise."""

    sx: int
    sy: int

    def __post_init__(self) -> None:
        if self.sx not in (1, -1) or self.sy not in (1, -1):
            raise UsageError("Klein-Tararin orientations must be +1 or -1")

    @property
    def context(self) -> GroupContext:
        return GroupContext.klein_bottle()

    def _sign(self, g: GroupElement) -> int:
        a, b = g.payload
        if a != 0:
            return self.sx * (1 if a > 0 else -1)
        if b != 0:
            return self.sy * (1 if b > 0 else -1)
        return 0

    def to_json(self) -> dict:
        return {"type": "klein_tararin", "sx": sign_text(self.sx),
                "sy": sign_text(self.sy)}

    def describe(self) -> str:
        return f"klein:{sign_text(self.sx)}{sign_text(self.sy)}"


@dataclass(frozen=True)
class LatticeCone(ConeOracle):
    """A lex cone on Z^k backed by an exact hyperplane-chain spec."""

    spec: LexConeSpec

    @property
    def context(self) -> GroupContext:
        return GroupContext.free_abelian(self.spec.k)

    def _sign(self, g: GroupElement) -> int:
        return self.spec.sign(g.payload)

    def to_json(self) -> dict:
        return {"type": "lattice", "spec": self.spec.to_json()}

    def describe(self) -> str:
        return f"lattice:k={self.spec.k}"


@dataclass(frozen=True)
class ConjugateCone(ConeOracle):
    """The image of a cone under the conjugation action: an element is
    positive here iff h^-1 g h is positive in the base cone."""

    base: ConeOracle
    h: GroupElement

    def __post_init__(self) -> None:
        if self.h.context != self.base.context:
            raise ContextMismatchError("incompatible groups")

    @property
    def context(self) -> GroupContext:
        return self.base.context

    def _sign(self, g: GroupElement) -> int:
        return self.base.sign(g.conjugate_by(self.h))

    def to_json(self) -> dict:
        return {"type": "conjugate", "base": self.base.to_json(),
                "g": element_to_json(self.h)}

    def describe(self) -> str:
        return f"conj[{self.h.text()}]({self.base.describe()})"


@dataclass(frozen=True)
class FlipCone(ConeOracle):
    """The base cone with its sign negated exactly on a certified convex
    subgroup: the flipped restriction glued to the untouched outside."""

    base: ConeOracle
    predicate: ConvexPredicate
    certificate: "ConvexityCertificate"

    def __post_init__(self) -> None:
        _check_certificate(self.certificate, self.base, self.predicate)

    @property
    def context(self) -> GroupContext:
        return self.base.context

    def _sign(self, g: GroupElement) -> int:
        s = self.base.sign(g)
        return -s if self.predicate.contains(g) else s

    def to_json(self) -> dict:
        return {"type": "flip_on_convex", "base": self.base.to_json(),
                "predicate": self.predicate.to_json(),
                "radius": self.certificate.radius}

    def describe(self) -> str:
        return f"flip[{self.predicate.describe()}]({self.base.describe()})"


@dataclass(frozen=True)
class ReplaceCone(ConeOracle):
    """The base cone with its restriction to a certified convex subgroup
    replaced by an arbitrary order of that subgroup."""

    base: ConeOracle
    predicate: ConvexPredicate
    inner: ConeOracle
    certificate: "ConvexityCertificate"

    def __post_init__(self) -> None:
        _check_certificate(self.certificate, self.base, self.predicate)
        if self.inner.context != self.predicate.subgroup_context():
            raise ContextMismatchError(
                "inner cone lives on the wrong group for this subgroup")

    @property
    def context(self) -> GroupContext:
        return self.base.context

    def _sign(self, g: GroupElement) -> int:
        if self.predicate.contains(g):
            return self.inner.sign(self.predicate.project(g))
        return self.base.sign(g)

    def to_json(self) -> dict:
        return {"type": "replace_on_convex", "base": self.base.to_json(),
                "predicate": self.predicate.to_json(),
                "inner": self.inner.to_json(),
                "radius": self.certificate.radius}

    def describe(self) -> str:
        return (f"replace[{self.predicate.describe()}<-{self.inner.describe()}]"
                f"({self.base.describe()})")


@dataclass(frozen=True)
class LexExtensionCone(ConeOracle):
    """Order a group through a normal convex subgroup: compare cosets by
    the quotient order and fall back to the inner order inside.

    Implemented for the two concrete instantiations with a finite data
    model: the Klein-bottle group over <y> (quotient infinite cyclic in
    the x exponent) and a free abelian group over a saturated sublattice
    (quotient coordinates through a completed basis).
    """

    convex: ConvexPredicate
    inner: ConeOracle
    quotient: ConeOracle

    def __post_init__(self) -> None:
        if isinstance(self.convex, KleinYPredicate):
            qk = 1
        elif isinstance(self.convex, LatticeSublatticePredicate):
            rows = [list(b) for b in self.convex.basis]
            if rows and intlinalg.elementary_divisors(rows) != [1] * len(rows):
                raise UsageError("sublattice is not saturated "
                                 "(quotient has torsion)")
            qk = self.convex.k - len(self.convex.basis)
        else:
            raise UsageError(
                f"lex extension is not implemented over {self.convex.describe()}")
        if self.inner.context != self.convex.subgroup_context():
            raise ContextMismatchError("inner cone lives on the wrong group")
        expected = GroupContext.free_abelian(qk) if qk >= 1 else None
        if expected is None:
            raise UsageError("quotient is trivial; nothing to extend by")
        if self.quotient.context != expected:
            raise ContextMismatchError(
                f"quotient cone must live on {expected!r}")

    @property
    def context(self) -> GroupContext:
        return self.convex.context

    def _quotient_image(self, g: GroupElement) -> GroupElement:
        if isinstance(self.convex, KleinYPredicate):
            return self.quotient.context.element((g.payload[0],))
        transform = getattr(self, "_transform_cache", None)
        if transform is None:
            _, transform = _completed_transforms(self.convex.basis,
                                                 self.convex.k)
            object.__setattr__(self, "_transform_cache", transform)
        r = len(self.convex.basis)
        alpha = intlinalg.matvec_left(list(g.payload), transform)
        return self.quotient.context.element(tuple(alpha[r:]))

    def _sign(self, g: GroupElement) -> int:
        image = self._quotient_image(g)
        if not image.is_identity():
            return self.quotient.sign(image)
        return self.inner.sign(self.convex.project(g))

    def to_json(self) -> dict:
        return {"type": "lex_extension", "convex": self.convex.to_json(),
                "inner": self.inner.to_json(),
                "quotient": self.quotient.to_json()}

    def describe(self) -> str:
        return (f"lexext[{self.convex.describe()}: {self.inner.describe()}; "
                f"{self.quotient.describe()}]")


def _check_certificate(certificate, base: ConeOracle,
                       predicate: ConvexPredicate) -> None:
    if certificate is None:
        raise CertificateError(
            "uncertified convex subgroup: run the convexity check first")
    if (certificate.cone_json != base.to_json()
            or certificate.predicate_json != predicate.to_json()):
        raise CertificateError(
            "certificate does not match this cone and subgroup")


# ---------------------------------------------------------------------------
# Operations


def cone_sign(cone: ConeOracle, g: GroupElement) -> int:
    """Sign of g under the cone: -1, 0 (identity only), or +1."""
    return cone.sign(g)


def compare(cone: ConeOracle, g: GroupElement, h: GroupElement) -> str:
    """'<', '=', or '>' for g against h: g < h iff g^-1 h is positive."""
    if g.context != h.context:
        raise ContextMismatchError("incompatible groups")
    s = cone.sign(g.inverse() * h)
    return {1: "<", 0: "=", -1: ">"}[s]


def conjugate_cone(cone: ConeOracle, g: GroupElement) -> ConeOracle:
    """The cone moved by the conjugation action of g."""
    return ConjugateCone(cone, g)


def flip_on_convex(cone: ConeOracle, predicate: ConvexPredicate,
                   certificate) -> ConeOracle:
    """Negate the cone exactly on a certified convex subgroup."""
    return FlipCone(cone, predicate, certificate)


def replace_on_convex(cone: ConeOracle, predicate: ConvexPredicate,
                      inner: ConeOracle, certificate) -> ConeOracle:
    """Swap in a different order on a certified convex subgroup."""
    return ReplaceCone(cone, predicate, inner, certificate)


def lex_extension(convex: ConvexPredicate, inner: ConeOracle,
                  quotient: ConeOracle) -> ConeOracle:
    """Build the order that compares cosets of the convex subgroup first."""
    return LexExtensionCone(convex, inner, quotient)


def klein_tararin_cones() -> list[KleinTararinCone]:
    """All four orders of the Klein-bottle group."""
    return [KleinTararinCone(sx, sy) for sx in (1, -1) for sy in (1, -1)]


def cone_from_json(data: dict) -> ConeOracle:
    kind = data.get("type")
    if kind == "dehornoy":
        return DehornoyCone(int(data["n"]))
    if kind == "dd":
        return DubrovinaDubrovinCone(int(data["n"]))
    if kind == "klein_tararin":
        return KleinTararinCone(_TEXT_SIGN[data["sx"]], _TEXT_SIGN[data["sy"]])
    if kind == "lattice":
        return LatticeCone(LexConeSpec.from_json(data["spec"]))
    if kind == "conjugate":
        base = cone_from_json(data["base"])
        return ConjugateCone(base, element_from_json(base.context, data["g"]))
    if kind == "flip_on_convex":
        from .lospace import convexity_check
        base = cone_from_json(data["base"])
        predicate = predicate_from_json(data["predicate"])
        result = convexity_check(base, predicate, int(data["radius"]))
        if not getattr(result, "passed", False):
            raise CertificateError(
                "stored flip no longer certifies as convex on replay")
        return FlipCone(base, predicate, result)
    if kind == "replace_on_convex":
        from .lospace import convexity_check
        base = cone_from_json(data["base"])
        predicate = predicate_from_json(data["predicate"])
        inner = cone_from_json(data["inner"])
        result = convexity_check(base, predicate, int(data["radius"]))
        if not getattr(result, "passed", False):
            raise CertificateError(
                "stored replacement no longer certifies as convex on replay")
        return ReplaceCone(base, predicate, inner, result)
    if kind == "lex_extension":
        return LexExtensionCone(predicate_from_json(data["convex"]),
                                cone_from_json(data["inner"]),
                                cone_from_json(data["quotient"]))
    raise UsageError(f"unknown cone type {kind!r}")

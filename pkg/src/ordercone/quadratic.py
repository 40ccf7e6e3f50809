"""Exact arithmetic in Q(sqrt 2).

A scalar is a + b*sqrt(2) with rational a, b kept as ``Fraction``
values, which stores them in lowest terms with positive denominator.
The sign is decidable exactly: when a and b agree in sign it is
immediate, and for opposite signs it reduces to comparing a^2 with
2 b^2 (they can never tie, since sqrt 2 is irrational).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational literal {value!r}") from exc
    raise UsageError(f"cannot coerce {value!r} to a rational")


@dataclass(frozen=True)
class QuadScalar:
    """The exact number a + b*sqrt(2)."""

    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _fraction(self.a))
        object.__setattr__(self, "b", _fraction(self.b))

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # Opposite signs: a + b*sqrt2 > 0 iff a^2 > 2 b^2 when a > 0,
        # and iff a^2 < 2 b^2 when b > 0.
        gap = self.a * self.a - 2 * self.b * self.b
        if gap == 0:
            raise ArithmeticError("sqrt 2 cannot satisfy a^2 = 2 b^2 nontrivially")
        return sa if gap > 0 else sb

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def __add__(self, other: "QuadScalar") -> "QuadScalar":
        return QuadScalar(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadScalar") -> "QuadScalar":
        return QuadScalar(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self.a, -self.b)

    def __mul__(self, other) -> "QuadScalar":
        if isinstance(other, QuadScalar):
            return QuadScalar(self.a * other.a + 2 * self.b * other.b,
                              self.a * other.b + self.b * other.a)
        return QuadScalar(self.a * other, self.b * other)

    __rmul__ = __mul__

    def scaled(self, factor) -> "QuadScalar":
        factor = _fraction(factor)
        return QuadScalar(self.a * factor, self.b * factor)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 2 ** 0.5

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, data: dict) -> "QuadScalar":
        if not isinstance(data, dict) or set(data) - {"a", "b"}:
            raise UsageError(f"bad scalar payload {data!r}")
        return cls(_fraction(data.get("a", 0)), _fraction(data.get("b", 0)))

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a}+{self.b}r2" if self.b > 0 else f"{self.a}{self.b}r2"


ZERO = QuadScalar(Fraction(0), Fraction(0))
ONE = QuadScalar(Fraction(1), Fraction(0))
SQRT2 = QuadScalar(Fraction(0), Fraction(1))


def quad(a=0, b=0) -> QuadScalar:
    """Convenience constructor: quad(a, b) = a + b*sqrt(2)."""
    return QuadScalar(_fraction(a), _fraction(b))


def quad_sign(x: QuadScalar) -> int:
    """Exact sign of a + b*sqrt(2): one of -1, 0, +1."""
    return x.sign()

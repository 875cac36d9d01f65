"""Exact scalars: arbitrary-precision rationals and the field Q(sqrt2, sqrt3).

Rationals are `fractions.Fraction` (always in lowest terms, positive
denominator). `QuadScalar` implements the fixed biquadratic field with basis
{1, sqrt2, sqrt3, sqrt6}; zero testing is exact because the basis is linearly
independent over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Rational = Fraction

_COERCIBLE = (int, Fraction)

# High-precision rational approximations of the radicals, used so that float
# embedding is a single correctly-rounded conversion at the end.
_SHIFT = 2 ** 60
_SQRT2_APPROX = Fraction(isqrt(2 * _SHIFT * _SHIFT), _SHIFT)
_SQRT3_APPROX = Fraction(isqrt(3 * _SHIFT * _SHIFT), _SHIFT)
_SQRT6_APPROX = Fraction(isqrt(6 * _SHIFT * _SHIFT), _SHIFT)


class QuadScalar:
    """a + b*sqrt2 + c*sqrt3 + d*sqrt6 with Fraction components, immutable."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0) -> None:
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    @classmethod
    def _wrap(cls, x: Union["QuadScalar", int, Fraction]) -> "QuadScalar":
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, _COERCIBLE):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into QuadScalar")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, _COERCIBLE):
            other = QuadScalar(other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return QuadScalar(self.a + other.a, self.b + other.b,
                          self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if isinstance(other, _COERCIBLE):
            other = QuadScalar(other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _COERCIBLE):
            return QuadScalar(self.a * other, self.b * other,
                              self.c * other, self.d * other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return QuadScalar(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    # -- field operations ------------------------------------------------

    def conjugates(self):
        """The three nontrivial Galois images (sqrt2 and/or sqrt3 negated)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return (
            QuadScalar(a, -b, c, -d),
            QuadScalar(a, b, -c, -d),
            QuadScalar(a, -b, -c, d),
        )

    def invert(self) -> "QuadScalar":
        if self.is_zero():
            raise ZeroDivisionError("QuadScalar division by zero")
        g2, g3, g6 = self.conjugates()
        cofactor = g2 * g3 * g6
        norm = self * cofactor
        # The product over the full Galois orbit is rational.
        assert norm.b == 0 and norm.c == 0 and norm.d == 0
        return QuadScalar(cofactor.a / norm.a, cofactor.b / norm.a,
                          cofactor.c / norm.a, cofactor.d / norm.a)

    def __truediv__(self, other):
        if isinstance(other, _COERCIBLE):
            if other == 0:
                raise ZeroDivisionError("QuadScalar division by zero")
            inv = Fraction(1, 1) / Fraction(other)
            return self * inv
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        if isinstance(other, _COERCIBLE):
            return QuadScalar(other) * self.invert()
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self.invert() if exponent < 0 else self
        result = QuadScalar(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # -- predicates and conversions ---------------------------------------

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, _COERCIBLE):
            other = QuadScalar(other)
        if not isinstance(other, QuadScalar):
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __float__(self) -> float:
        exact = (self.a + self.b * _SQRT2_APPROX + self.c * _SQRT3_APPROX
                 + self.d * _SQRT6_APPROX)
        return float(exact)

    def __repr__(self) -> str:
        return f"QuadScalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


SQRT2 = QuadScalar(0, 1, 0, 0)
SQRT3 = QuadScalar(0, 0, 1, 0)
SQRT6 = QuadScalar(0, 0, 0, 1)

Scalar = Union[Fraction, QuadScalar]


def embed_to_float(x) -> float:
    """Embed an exact scalar (or plain number) into a double."""
    if isinstance(x, QuadScalar):
        return float(x)
    return float(x)


def format_scalar(x) -> str:
    """Canonical string form, e.g. '3/5+2/7*sqrt2-1*sqrt6'."""
    if not isinstance(x, QuadScalar):
        return str(Fraction(x))
    parts = []
    for coeff, tag in ((x.a, ""), (x.b, "sqrt2"), (x.c, "sqrt3"), (x.d, "sqrt6")):
        if coeff == 0:
            continue
        body = str(coeff) if not tag else f"{coeff}*{tag}"
        if not parts:
            parts.append(body)
        elif coeff > 0:
            parts.append("+" + body)
        else:
            parts.append(body)  # str(coeff) already carries the minus sign
    return "".join(parts) if parts else "0"


def parse_scalar(text: str) -> QuadScalar:
    """Inverse of format_scalar for the canonical forms it emits."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty scalar string")
    terms = []
    current = ""
    for i, ch in enumerate(text):
        if ch in "+-" and i > 0 and text[i - 1] not in "+-/*":
            terms.append(current)
            current = ch
        else:
            current += ch
    terms.append(current)
    slots = {"": 0, "sqrt2": 1, "sqrt3": 2, "sqrt6": 3}
    comps = [Fraction(0)] * 4
    for term in terms:
        if "*" in term:
            coeff_text, tag = term.split("*", 1)
        elif term.lstrip("+-").startswith("sqrt"):
            sign = -1 if term.startswith("-") else 1
            coeff_text, tag = str(sign), term.lstrip("+-")
        else:
            coeff_text, tag = term, ""
        if tag not in slots:
            raise ValueError(f"unknown radical tag {tag!r}")
        comps[slots[tag]] += Fraction(coeff_text)
    return QuadScalar(*comps)


def as_fraction(x) -> Fraction:
    """Strict conversion to Fraction; rejects irrational QuadScalars."""
    if isinstance(x, QuadScalar):
        if not x.is_rational():
            raise ValueError(f"{x} is not rational")
        return x.a
    return Fraction(x)

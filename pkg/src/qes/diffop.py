"""Linear ordinary differential operators with Laurent-polynomial coefficients.

Normal form: sum over k of p_k(x) * D^k with all derivatives moved to the
right. Composition uses the Leibniz rule, so equality of normal forms is
equality of operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict

from .laurent import LaurentPoly, register_non_scalar


def _as_laurent(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.const(value)


class DiffOp:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, object] | None = None) -> None:
        cleaned: Dict[int, LaurentPoly] = {}
        if coeffs:
            for order, poly in coeffs.items():
                if not isinstance(order, int) or order < 0:
                    raise ValueError("derivative orders must be ints >= 0")
                poly = _as_laurent(poly)
                if poly.is_zero():
                    continue
                cleaned[order] = poly
        object.__setattr__(self, "coeffs", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "DiffOp":
        return cls({})

    @classmethod
    def identity(cls) -> "DiffOp":
        return cls({0: LaurentPoly.const(Fraction(1))})

    @classmethod
    def d(cls, order: int = 1) -> "DiffOp":
        return cls({order: LaurentPoly.const(Fraction(1))})

    @classmethod
    def mul_by(cls, poly) -> "DiffOp":
        """The operator 'multiply by poly(x)'."""
        return cls({0: _as_laurent(poly)})

    # -- vector-space operations --------------------------------------------

    def __add__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        total = dict(self.coeffs)
        for order, poly in other.coeffs.items():
            total[order] = total.get(order, LaurentPoly.zero()) + poly
        return DiffOp(total)

    def __sub__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DiffOp({k: -p for k, p in self.coeffs.items()})

    # -- composition -------------------------------------------------------

    def __mul__(self, other):
        """Operator composition; scalars and Laurent polys act as multipliers."""
        if not isinstance(other, DiffOp):
            other = DiffOp.mul_by(other)
        out: Dict[int, LaurentPoly] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                db = b
                for m in range(i + 1):
                    if db.is_zero():
                        break
                    term = comb(i, m) * (a * db)
                    order = i + j - m
                    out[order] = out.get(order, LaurentPoly.zero()) + term
                    db = db.derivative()
        return DiffOp(out)

    def __rmul__(self, other):
        # other is a scalar or Laurent poly: left multiplication by a function.
        return DiffOp.mul_by(other) * self

    def __pow__(self, n: int) -> "DiffOp":
        if not isinstance(n, int) or n < 0:
            raise ValueError("operator powers must be ints >= 0")
        result = DiffOp.identity()
        for _ in range(n):
            result = result * self
        return result

    # -- predicates ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset((k, p) for k, p in self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def order(self) -> int:
        if not self.coeffs:
            raise ValueError("zero operator has no order")
        return max(self.coeffs)

    def coeff(self, order: int) -> LaurentPoly:
        return self.coeffs.get(order, LaurentPoly.zero())

    # -- action -------------------------------------------------------------

    def apply_to(self, f: LaurentPoly) -> LaurentPoly:
        result = LaurentPoly.zero()
        for order, poly in self.coeffs.items():
            df = f
            for _ in range(order):
                df = df.derivative()
            result = result + poly * df
        return result

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for order in sorted(self.coeffs, reverse=True):
            poly = self.coeffs[order]
            if order == 0:
                parts.append(f"[{poly!r}]")
            elif order == 1:
                parts.append(f"[{poly!r}]*D")
            else:
                parts.append(f"[{poly!r}]*D^{order}")
        return " + ".join(parts)


register_non_scalar(DiffOp)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a * b - b * a


@dataclass(frozen=True)
class GaugeFactor:
    """Multiplier z**z_power * exp(gauss_coeff * z**2)."""

    z_power: int
    gauss_coeff: object

    def log_derivative(self) -> LaurentPoly:
        terms = {}
        if self.z_power:
            terms[-1] = Fraction(self.z_power)
        if self.gauss_coeff != 0:
            terms[1] = 2 * self.gauss_coeff
        return LaurentPoly(terms)

    def inverse(self) -> "GaugeFactor":
        return GaugeFactor(-self.z_power, -self.gauss_coeff)


def conjugate_by_gauge(op: DiffOp, gauge: GaugeFactor) -> DiffOp:
    """Return gauge^-1 * op * gauge in normal form.

    Conjugation is an algebra map fixing multiplication operators and sending
    D to D + (log gauge)'. Exact whenever the log-derivative is Laurent, which
    holds for all supported gauges.
    """
    shifted_d = DiffOp({1: LaurentPoly.const(Fraction(1)),
                        0: gauge.log_derivative()})
    result = DiffOp.zero()
    power = DiffOp.identity()
    max_order = max(op.coeffs, default=0)
    powers = []
    for _ in range(max_order + 1):
        powers.append(power)
        power = power * shifted_d
    for order, poly in op.coeffs.items():
        result = result + poly * powers[order]
    return result


def substitute_square(op: DiffOp, scale) -> DiffOp:
    """Rewrite an operator in x under the change of variable x = scale * z**2.

    Multiplication by x becomes multiplication by scale*z^2 and D_x becomes
    (1/(2*scale)) * z^-1 * D_z; the result may have Laurent coefficients.
    """
    if scale == 0:
        raise ValueError("substitution scale must be nonzero")
    inv = 1 / (2 * scale)
    new_d = DiffOp({1: LaurentPoly({-1: inv})})
    result = DiffOp.zero()
    power = DiffOp.identity()
    max_order = max(op.coeffs, default=0)
    powers = []
    for _ in range(max_order + 1):
        powers.append(power)
        power = power * new_d
    for order, poly in op.coeffs.items():
        result = result + poly.stretch_square(scale) * powers[order]
    return result

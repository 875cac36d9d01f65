import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qes.scalars import (QuadScalar, SQRT2, SQRT3, SQRT6, as_fraction,
                         embed_to_float, format_scalar, parse_scalar)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def quad_scalars():
    return st.builds(QuadScalar, rationals, rationals, rationals, rationals)


def test_surd_squares():
    assert SQRT2 * SQRT2 == QuadScalar(2)
    assert SQRT3 * SQRT3 == QuadScalar(3)
    assert SQRT6 * SQRT6 == QuadScalar(6)
    assert SQRT2 * SQRT3 == SQRT6


def test_embedding_matches_floating_surds():
    x = QuadScalar(Fraction(1, 2), Fraction(-3, 4), 2, Fraction(5, 7))
    expected = 0.5 - 0.75 * math.sqrt(2) + 2 * math.sqrt(3) + (5 / 7) * math.sqrt(6)
    assert embed_to_float(x) == pytest.approx(expected, rel=1e-15)


@given(quad_scalars(), quad_scalars(), quad_scalars())
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(quad_scalars())
def test_multiplicative_inverse(x):
    if x == QuadScalar(0):
        with pytest.raises(ZeroDivisionError):
            x.invert()
        return
    assert x * x.invert() == QuadScalar(1)


@given(quad_scalars())
def test_embedding_is_a_homomorphism(x):
    two = QuadScalar(2)
    assert embed_to_float(x + two) == pytest.approx(embed_to_float(x) + 2, abs=1e-9)
    assert embed_to_float(x * two) == pytest.approx(2 * embed_to_float(x), abs=1e-9)


@given(quad_scalars())
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_scalar_coercion_in_arithmetic():
    assert Fraction(1, 2) * SQRT2 == QuadScalar(0, Fraction(1, 2))
    assert SQRT2 * 3 == QuadScalar(0, 3)
    assert SQRT2 + 1 == QuadScalar(1, 1)


def test_as_fraction_rejects_irrational_values():
    assert as_fraction(QuadScalar(Fraction(3, 5))) == Fraction(3, 5)
    with pytest.raises(ValueError):
        as_fraction(SQRT2)


def test_rational_zero_divisor_free():
    # (a + b*sqrt2)(a - b*sqrt2) = a^2 - 2 b^2 never vanishes for rational
    # a, b not both zero, which is what makes inversion well defined.
    x = QuadScalar(1, 1) * QuadScalar(1, -1)
    assert x == QuadScalar(-1)

from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from carnot_sard import linalg
from carnot_sard.numberfield import NumberField
from carnot_sard.polynomial import Poly

from conftest import rationals

X = Poly.x()
SQRT2 = NumberField(X * X - 2)


def test_generator_squares_to_two():
    a = SQRT2.generator
    assert a * a == 2
    assert a * a - 2 == 0
    assert not (a * a - 2)


@given(rationals(9), rationals(9, nonzero=True))
def test_inverse(p, q):
    a = SQRT2.generator
    z = a * q + p  # nonzero since sqrt 2 is irrational
    assert z * z.inverse() == 1
    assert (z / z) == 1


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        SQRT2(0).inverse()


def test_rank_over_number_field_matches_sympy():
    a = SQRT2.generator
    m = [[a, SQRT2(2)], [SQRT2(1), a]]
    assert linalg.rank(m) == 1  # det = alpha^2 - 2
    s = sympy.sqrt(2)
    assert sympy.Matrix([[s, 2], [1, s]]).rank(simplify=True) == 1


def test_cubic_field_and_real_roots():
    k = NumberField(X * X * X - X - 1)
    b = k.generator
    assert b * b * b == b + 1
    (lo, hi), = k.real_roots()
    # the plastic number 1.32471...
    assert lo <= Fraction(132471, 100000) and Fraction(132472, 100000) <= hi


def test_modulus_must_be_nonconstant():
    with pytest.raises(ValueError):
        NumberField(Poly.const(2))

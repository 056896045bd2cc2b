"""
精确三角乘积标量测试
"""

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from core.errors import ParseError
from core.scalar import (
    SineProductScalar,
    numerically_equal,
    scalar_eval,
    scalar_format,
    scalar_parse,
    scalar_ratio_as_integer,
    scalar_to_mpf,
    sin_formula,
    sin_formula2,
)

S = SineProductScalar


def test_special_angles_fold_into_surds():
    assert S.sine(Fraction(1, 2)) == S.one()
    assert S.sine(Fraction(1, 6)) == S.rational(Fraction(1, 2))
    assert S.sine(Fraction(1, 4)) == S.sqrt(Fraction(1, 2))
    assert S.sine(Fraction(1, 3)) == S.sqrt(3) / 2


def test_angle_folding_and_sign():
    assert S.sine(Fraction(4, 5)) == S.sine(Fraction(1, 5))
    assert S.sine(Fraction(3, 2)) == S.rational(-1)
    assert S.sine(Fraction(6, 5)).sign() == -1


def test_zero_sine():
    assert S.sine(1).is_zero
    assert (S.sine(2) * S.sqrt(7)).is_zero
    with pytest.raises(ZeroDivisionError):
        S.sine(1, -1)


def test_sqrt_canonical():
    assert S.sqrt(12) == S.sqrt(3) * 2
    assert S.sqrt(3) * S.sqrt(3) == S.rational(3)
    assert (S.sqrt(2) ** 3) == S.sqrt(2) * 2
    with pytest.raises(ValueError):
        S.sqrt(-1)


def test_half_integer_power():
    assert S.rational(9) ** Fraction(1, 2) == S.rational(3)
    assert S.rational(3) ** Fraction(3, 2) == S.sqrt(3) * 3
    with pytest.raises(ValueError):
        S.rational(2) ** Fraction(1, 3)


def test_format_and_parse():
    value = S.sine(Fraction(1, 5)) / (S.sqrt(5) * 3)
    text = scalar_format(value)
    assert text == "1/3 * S(1/5)^1 * R(5)^-1/2"
    assert scalar_parse(text) == value
    assert scalar_parse("1/3 * R(3)^-1/2") == 1 / (S.sqrt(3) * 3)
    assert scalar_format(S.zero()) == "0"


@pytest.mark.parametrize("text", ["", "x", "1/3 * Q(2)^1", "1 * S(1/5)^1/2", "1 * R(0)^1/2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        scalar_parse(text)


def test_numeric_evaluation():
    value = S.sine(Fraction(1, 5)) / S.sqrt(5)
    with mpmath.workprec(200):
        expected = mpmath.sin(mpmath.pi / 5) / mpmath.sqrt(5)
        assert abs(scalar_to_mpf(value) - expected) < mpmath.mpf(10) ** -30
    interval = scalar_eval(value)
    assert interval.a <= expected <= interval.b
    assert float(S.sqrt(2)) == pytest.approx(2 ** 0.5)


def test_ratio_as_integer():
    base = S.sine(Fraction(1, 7)) * S.sine(Fraction(2, 7))
    assert scalar_ratio_as_integer(base * 2, base) == 2
    assert scalar_ratio_as_integer(base, base) == 1
    assert scalar_ratio_as_integer(base, base * 3) is None
    assert scalar_ratio_as_integer(base * 100, base) is None
    # sin(π/5)·sin(2π/5) = √5/4
    assert scalar_ratio_as_integer(S.sqrt(5), S.sine(Fraction(1, 5)) * S.sine(Fraction(2, 5))) == 4


@pytest.mark.parametrize("n", [2, 3, 5, 6, 12, 30, 64])
def test_sin_product_identities(n):
    assert numerically_equal(sin_formula(n), S.rational(n), rel_tol=1e-10)
    assert numerically_equal(sin_formula2(n), S.sqrt(n) ** n, rel_tol=1e-10)


_angles = st.integers(min_value=2, max_value=60).flatmap(
    lambda d: st.builds(Fraction, st.integers(min_value=1, max_value=d - 1), st.just(d))
)


@settings(max_examples=60, deadline=None)
@given(_angles, _angles)
def test_multiplication_is_canonical(r, s):
    a, b = S.sine(r), S.two_sine(s) * S.sqrt(6)
    assert a * b == b * a
    assert numerically_equal((a * b) / b, a)
    assert a * a.inverse() == S.one()


@settings(max_examples=40, deadline=None)
@given(_angles)
def test_canonical_form_round_trips_through_text(r):
    value = S.two_sine(r) * S.sine(r / 2) / S.sqrt(10)
    assert scalar_parse(scalar_format(value)) == value

import pytest
from fractions import Fraction

from hypothesis import given, strategies as st

from gptcast.rationals import (
    InexactNumberError,
    ONE,
    Rational,
    ZERO,
    as_fraction,
    lcm_denominators,
    primitive_integer_vector,
    rat,
    rat_str,
)


def test_rat_from_int_and_pair():
    assert rat(3) == 3
    assert rat(3, 7) == Fraction(3, 7)
    assert rat(-2, 4) == Fraction(-1, 2)


def test_rat_from_string():
    assert rat("3/7") == Fraction(3, 7)
    assert rat("-5") == -5
    assert rat(" 2/6 ") == Fraction(1, 3)


def test_rat_zero_denominator_raises():
    with pytest.raises(ZeroDivisionError):
        rat("1/0")
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


def test_rat_rejects_floats():
    with pytest.raises(InexactNumberError):
        rat(0.5)
    with pytest.raises(InexactNumberError):
        rat(1.0, 2)
    with pytest.raises(InexactNumberError):
        rat(1, 2.0)


def test_rat_str_round_trip():
    for text in ["0", "5", "-5", "3/7", "-12/5"]:
        assert rat_str(rat(text)) == text
    # non-canonical input comes back reduced
    assert rat_str(rat("2/6")) == "1/3"


def test_as_fraction():
    f = as_fraction(rat(22, 7))
    assert isinstance(f, Fraction) and f == Fraction(22, 7)


def test_lcm_denominators():
    assert lcm_denominators([rat(1, 2), rat(1, 3), rat(5)]) == 6
    assert lcm_denominators([]) == 1


def test_primitive_integer_vector_values():
    v = primitive_integer_vector([rat(1, 2), rat(-1, 3), ZERO])
    assert v == (3, -2, 0)
    assert all(rat(x).denominator == 1 for x in v)
    # entries stay rationals so later division is exact
    assert all(isinstance(x, type(ONE)) for x in v)


def test_primitive_integer_vector_zero():
    assert primitive_integer_vector([ZERO, ZERO]) == (0, 0)


def test_primitive_integer_vector_reduces_gcd():
    assert primitive_integer_vector([rat(4), rat(6)]) == (2, 3)


@given(
    st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6),
    st.fractions(min_value=Fraction(1, 20), max_value=20, max_denominator=20),
)
def test_primitive_invariant_under_positive_scaling(values, scale):
    base = [rat(v) for v in values]
    scaled = [rat(scale) * v for v in base]
    assert primitive_integer_vector(base) == primitive_integer_vector(scaled)

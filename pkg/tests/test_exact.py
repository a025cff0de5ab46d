import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conevol.exact import (
    GradeError,
    PiScalar,
    pi_add,
    pi_mul,
    pi_square,
    rational_new,
    render,
    to_float,
)

fractions = st.fractions(max_denominator=10**6)
grades = st.integers(0, 2)


@st.composite
def scalars(draw, grade=None):
    g = draw(grades) if grade is None else grade
    return PiScalar(draw(fractions), g)


@pytest.mark.parametrize("num, den, expected", [
    (2, 4, (1, 2)),
    (-3, -6, (1, 2)),
    (0, 7, (0, 1)),
    (3, -9, (-1, 3)),
])
def test_rational_new_canonical(num, den, expected):
    r = rational_new(num, den)
    assert (r.numerator, r.denominator) == expected


def test_rational_new_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rational_new(1, 0)


def test_pi_add_examples():
    assert pi_add(PiScalar.angle(1, 2), PiScalar.angle(1, 3)) == PiScalar.angle(5, 6)
    zero = pi_add(PiScalar(Fraction(1, 3), 2), PiScalar(Fraction(-1, 3), 2))
    assert zero == PiScalar.zero(2)
    assert zero.grade == 2
    with pytest.raises(GradeError):
        pi_add(PiScalar(1, 0), PiScalar(1, 1))


def test_pi_mul_examples():
    third = PiScalar.angle(1, 3)
    assert pi_mul(third, third) == PiScalar(Fraction(1, 9), 2)
    assert pi_square(third) == PiScalar(Fraction(1, 9), 2)
    assert pi_mul(PiScalar(3, 0), PiScalar(Fraction(1, 3), 2)) == PiScalar(1, 2)
    with pytest.raises(GradeError):
        pi_mul(PiScalar(1, 1), PiScalar(1, 2))


def test_zero_keeps_grade():
    assert PiScalar.zero(1) != PiScalar.zero(2)
    assert PiScalar.zero(2).to_json() == {"coeff": "0", "grade": 2}


def test_to_float_examples():
    assert to_float(PiScalar(Fraction(1, 3), 2)) == pytest.approx(math.pi**2 / 3, rel=1e-15)
    assert to_float(PiScalar(Fraction(1, 3), 2)) == pytest.approx(3.2898681337, abs=1e-10)
    assert to_float(PiScalar.zero(1)) == 0.0
    assert to_float(PiScalar.angle(5, 3)) == pytest.approx(5.2359877559, abs=1e-10)


def test_to_float_overflow():
    with pytest.raises(OverflowError):
        to_float(PiScalar(Fraction(10**400), 2))


def test_cross_grade_comparison_rejected():
    with pytest.raises(GradeError):
        PiScalar(1, 1) < PiScalar(1, 2)


def test_grade_out_of_range():
    with pytest.raises(GradeError):
        PiScalar(1, 3)


@pytest.mark.parametrize("x, text", [
    (PiScalar(Fraction(2, 3), 1), "2/3*pi"),
    (PiScalar(2, 1), "2*pi"),
    (PiScalar(Fraction(-1, 9), 2), "-1/9*pi^2"),
    (PiScalar(Fraction(7, 4), 0), "7/4"),
    (PiScalar.zero(2), "0"),
])
def test_render(x, text):
    assert render(x) == text


@given(scalars(1), scalars(1), scalars(1))
def test_addition_associative_commutative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a


@given(scalars(0), scalars(1), scalars(1))
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(st.integers(-10**12, 10**12), st.integers(1, 10**12))
def test_round_trip(n, d):
    r = rational_new(n, d)
    assert rational_new(r.numerator, r.denominator) == r
    assert r.denominator > 0


@given(scalars(1), scalars(1))
def test_to_float_monotone(x, y):
    if x < y:
        assert to_float(x) <= to_float(y)


@given(scalars(), scalars())
def test_grades_stay_in_range(a, b):
    try:
        c = a * b
    except GradeError:
        assert a.grade + b.grade > 2
    else:
        assert c.grade == a.grade + b.grade <= 2

"""Exact field-tower arithmetic: examples, axioms, intervals, serialization."""

from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from unitdist.fields import (
    FieldError,
    NegativeRadicandError,
    ZeroReciprocalError,
    parse_expression,
    rational,
    sign,
    sqrt_extend,
    to_expression,
    to_interval,
)


def sqrt3():
    return sqrt_extend(rational(3))[1]


def sqrt2():
    return sqrt_extend(rational(2))[1]


class TestArithmetic:
    def test_difference_of_squares(self):
        r3 = sqrt3()
        assert (1 + r3) * (-1 + r3) == 2

    def test_recip_of_two(self):
        assert rational(2).reciprocal() == Fraction(1, 2)

    def test_unit_vector_identity(self):
        r3 = sqrt3()
        half = rational(Fraction(1, 2))
        y = r3 * Fraction(1, 2)
        assert half * half + y * y == 1

    def test_recip_of_zero_raises(self):
        with pytest.raises(ZeroReciprocalError):
            rational(0).reciprocal()
        with pytest.raises(ZeroReciprocalError):
            sqrt3() / (sqrt3() - sqrt3())

    def test_cross_tower_lifting(self):
        # sqrt(2) and sqrt(3) live in different towers; products must still work
        r2, r3 = sqrt2(), sqrt3()
        prod = r2 * r3
        assert prod * prod == 6
        assert (r2 + r3) * (r2 + r3) == 5 + 2 * prod

    def test_division(self):
        r3 = sqrt3()
        assert (r3 / r3) == 1
        assert (1 / r3) * r3 == 1


class TestSign:
    def test_sqrt2_below_three_halves(self):
        # oracle: 2 < 9/4, i.e. 8 < 9 over a common denominator
        assert 2 * 4 < 9
        assert sign(sqrt2() - Fraction(3, 2)) == -1

    def test_sign_of_zero(self):
        assert sign(rational(0)) == 0
        assert sign(sqrt3() - sqrt3()) == 0

    def test_sqrt3_above_17_tenths(self):
        # oracle: 3*100 > 289
        assert 300 > 289
        assert sign(sqrt3() - Fraction(17, 10)) == +1

    def test_mixed_sign_branches(self):
        r3 = sqrt3()
        assert sign(2 - r3) == +1
        assert sign(r3 - 2) == -1
        assert sign(-1 * r3) == -1


class TestSqrtExtend:
    def test_sqrt_three_over_rationals(self):
        tower, root = sqrt_extend(rational(3))
        assert tower.depth == 1
        assert root * root == 3
        assert root.sign() == +1

    def test_perfect_square_keeps_tower(self):
        tower, root = sqrt_extend(rational(4))
        assert tower.depth == 0
        assert root == 2

    def test_rational_radicand_normalised(self):
        # sqrt(3/4) = sqrt(3)/2, confirmed by squaring
        tower, root = sqrt_extend(rational(Fraction(3, 4)))
        assert tower.depth == 1
        assert root * root == Fraction(3, 4)
        assert root == sqrt3() * Fraction(1, 2)

    def test_square_inside_extended_tower(self):
        tower, r3 = sqrt_extend(rational(3))
        # 12 = (2*sqrt(3))^2 is a square in Q(sqrt(3))
        twelve = tower.element(12)
        tower2, root = sqrt_extend(twelve)
        assert tower2 == tower
        assert root == 2 * r3

    def test_multi_quadratic_square_detection(self):
        r2 = sqrt2()
        tower, r3 = sqrt_extend(r2.tower.element(3))
        six = tower.element(6)
        tower2, r6 = sqrt_extend(six)
        assert tower2 == tower  # sqrt(6) = sqrt(2)*sqrt(3) already present
        assert r6 * r6 == 6

    def test_negative_radicand_rejected(self):
        with pytest.raises(NegativeRadicandError):
            sqrt_extend(rational(-1))

    def test_nested_radical(self):
        # sqrt(1 + sqrt(2)) needs a depth-2 tower
        r2 = sqrt2()
        tower, root = sqrt_extend(1 + r2)
        assert tower.depth == 2
        assert root * root == 1 + r2

    def test_denesting_via_square_criterion(self):
        # 3 + 2*sqrt(2) = (1 + sqrt(2))^2: no extension needed
        r2 = sqrt2()
        tower, root = sqrt_extend(3 + 2 * r2)
        assert tower.depth == 1
        assert root == 1 + r2

    def test_denesting_across_merged_towers(self):
        # 5 + 2*sqrt(6) = (sqrt(2) + sqrt(3))^2 inside Q(sqrt2, sqrt3)
        r2, r3 = sqrt2(), sqrt3()
        merged_sum = r2 + r3
        tower, root = sqrt_extend(5 + 2 * (r2 * r3))
        assert tower.depth == 2
        assert root == merged_sum

    def test_square_of_sum_denests(self):
        r2, r3 = sqrt2(), sqrt3()
        x = r2 + r3
        tower, root = sqrt_extend(x * x)
        assert tower.depth == 2
        assert root == x


class TestIntervals:
    def test_sqrt3_enclosure(self):
        lo, hi = to_interval(sqrt3(), 10)
        assert hi - lo <= Fraction(1, 1 << 10)
        assert lo <= Fraction(17320508, 10**7) <= hi

    def test_rational_degenerate(self):
        lo, hi = to_interval(rational(Fraction(1, 2)), 5)
        assert lo == hi == Fraction(1, 2)

    def test_golden_ratio(self):
        # high-precision oracle via integer sqrt: phi = (1+sqrt(5))/2
        scale = 10**25
        lo5 = isqrt(5 * scale * scale)
        phi_lo = Fraction(scale + lo5, 2 * scale)
        phi_hi = Fraction(scale + lo5 + 1, 2 * scale)
        r5 = sqrt_extend(rational(5))[1]
        phi = (1 + r5) / 2
        lo, hi = to_interval(phi, 20)
        assert hi - lo <= Fraction(1, 1 << 20)
        assert lo <= phi_hi and phi_lo <= hi

    def test_nesting(self):
        r2 = sqrt2()
        x = (3 + 2 * r2) / 7
        prev = to_interval(x, 4)
        for prec in (8, 16, 32, 64):
            cur = to_interval(x, prec)
            assert prev[0] <= cur[0] and cur[1] <= prev[1]
            assert cur[1] - cur[0] <= Fraction(1, 1 << prec)
            prev = cur


class TestSerialization:
    @pytest.mark.parametrize(
        "build",
        [
            lambda: rational(Fraction(-7, 3)),
            lambda: sqrt3(),
            lambda: (1 + sqrt3()) * Fraction(1, 2),
            lambda: sqrt_extend(1 + sqrt2())[1],
            lambda: (5 - 2 * sqrt2()) / 3 + sqrt3(),
        ],
    )
    def test_round_trip(self, build):
        x = build()
        assert parse_expression(to_expression(x)) == x

    def test_parse_simple_forms(self):
        assert parse_expression("1/2") == Fraction(1, 2)
        assert parse_expression("sqrt(9)") == 3
        assert parse_expression("2*sqrt(3)+1") == 1 + 2 * sqrt3()
        assert parse_expression("-(1/2)*sqrt(2)") == -sqrt2() / 2

    def test_parse_errors(self):
        with pytest.raises(FieldError):
            parse_expression("1 +")
        with pytest.raises(FieldError):
            parse_expression("sqrt(2")
        with pytest.raises(NegativeRadicandError):
            parse_expression("sqrt(0 - 1)")


# -- randomized field axioms -------------------------------------------------

def tower_elements(radicands):
    roots = [sqrt_extend(rational(r))[1] for r in radicands]
    coeff = st.integers(min_value=-9, max_value=9)
    denom = st.integers(min_value=1, max_value=6)

    @st.composite
    def element(draw):
        value = rational(Fraction(draw(coeff), draw(denom)))
        for root in roots:
            value = value + root * Fraction(draw(coeff), draw(denom))
        return value

    return element()


ELEMS = tower_elements([2, 3])


@settings(max_examples=60, deadline=None)
@given(ELEMS, ELEMS, ELEMS)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x


@settings(max_examples=60, deadline=None)
@given(ELEMS)
def test_reciprocal_inverse(x):
    if not x.is_zero():
        assert x * x.reciprocal() == 1


@settings(max_examples=60, deadline=None)
@given(ELEMS, ELEMS)
def test_sign_multiplicative(x, y):
    assert sign(x) * sign(y) == sign(x * y)


@settings(max_examples=40, deadline=None)
@given(ELEMS)
def test_sqrt_extend_squares_back(x):
    if x.sign() >= 0:
        _, root = sqrt_extend(x)
        assert root * root == x
        assert root.sign() >= 0


@settings(max_examples=40, deadline=None)
@given(ELEMS)
def test_interval_contains_and_shrinks(x):
    lo8, hi8 = to_interval(x, 8)
    lo16, hi16 = to_interval(x, 16)
    assert lo8 <= lo16 and hi16 <= hi8
    assert hi16 - lo16 <= Fraction(1, 1 << 16)


@settings(max_examples=40, deadline=None)
@given(ELEMS)
def test_expression_round_trip_random(x):
    assert parse_expression(to_expression(x)) == x

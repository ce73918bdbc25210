"""Exact grow-shrink forms and their sign machinery."""

import math
import random
from fractions import Fraction

import pytest

from cgflow.errors import DomainError
from cgflow.forms import (
    DeformedLength,
    FlowModulus,
    FlowWidth,
    GrowShrinkForm,
    as_fraction,
    sign_quadratic_at_exp,
)


class TestAsFraction:
    def test_int_and_fraction_pass_through(self):
        assert as_fraction(7) == Fraction(7)
        assert as_fraction(Fraction(3, 8)) == Fraction(3, 8)

    def test_float_converts_by_binary_expansion(self):
        # 0.1 is not 1/10 in binary; the conversion must be exact, not rounded.
        assert as_fraction(0.1) == Fraction(0.1)
        assert as_fraction(0.1) != Fraction(1, 10)
        assert as_fraction(0.5) == Fraction(1, 2)

    def test_string_parses_as_rational(self):
        assert as_fraction("1/10") == Fraction(1, 10)
        assert as_fraction("0.25") == Fraction(1, 4)

    def test_rejects_non_finite_and_junk(self):
        with pytest.raises(DomainError):
            as_fraction(float("inf"))
        with pytest.raises(DomainError):
            as_fraction(float("nan"))
        with pytest.raises(DomainError):
            as_fraction(object())


class TestSignQuadratic:
    def test_rational_point_is_exact(self):
        # t = 0 means u = 1, so the sign is that of a + b + c.
        assert sign_quadratic_at_exp(Fraction(1), Fraction(-3), Fraction(2), Fraction(0)) == 0
        assert sign_quadratic_at_exp(Fraction(1), Fraction(-3), Fraction(3), Fraction(0)) == 1
        assert sign_quadratic_at_exp(Fraction(1), Fraction(-3), Fraction(1), Fraction(0)) == -1

    def test_identically_zero(self):
        assert sign_quadratic_at_exp(Fraction(0), Fraction(0), Fraction(0), Fraction(2)) == 0

    def test_agreeing_signs_shortcut(self):
        assert sign_quadratic_at_exp(Fraction(1), Fraction(0), Fraction(5), Fraction(3)) == 1
        assert sign_quadratic_at_exp(Fraction(-1), Fraction(-2), Fraction(0), Fraction(-3)) == -1

    def test_matches_float_evaluation_when_comfortable(self):
        rnd = random.Random(4)
        for _ in range(200):
            a = Fraction(rnd.randint(-9, 9))
            b = Fraction(rnd.randint(-9, 9))
            c = Fraction(rnd.randint(-9, 9))
            t = Fraction(rnd.randint(-4, 4), rnd.randint(1, 4))
            got = sign_quadratic_at_exp(a, b, c, t)
            u = math.exp(2 * float(t))
            val = (float(a) * u + float(b)) * u + float(c)
            if abs(val) > 1e-6 * max(abs(float(a)) * u * u, abs(float(b)) * u, 1.0):
                assert got == (1 if val > 0 else -1)

    def test_near_tie_settled_by_intervals(self):
        # a u^2 - b with a/b extremely close to u^2 at t = 1/2 forces the
        # interval branch; e is transcendental so the sign is still definite.
        # Plain float evaluation cancels completely here, so the reference
        # sign comes from 60-digit arithmetic instead.
        from mpmath import mp

        u2 = Fraction(math.exp(1.0)) ** 2
        a = u2.denominator
        b = u2.numerator
        s = sign_quadratic_at_exp(Fraction(a), Fraction(0), Fraction(-b), Fraction(1, 2))
        old = mp.dps
        try:
            mp.dps = 60
            reference = 1 if a * mp.e**2 - b > 0 else -1
        finally:
            mp.dps = old
        assert s == reference


class TestGrowShrinkForm:
    def test_value_and_at_zero(self):
        f = GrowShrinkForm(Fraction(2), Fraction(3))
        assert f.at_zero() == Fraction(5)
        assert f.value(0) == pytest.approx(5.0)
        assert f.value(1) == pytest.approx(2 * math.e**2 + 3 * math.e**-2)

    def test_rejects_negative_coefficients(self):
        with pytest.raises(DomainError):
            GrowShrinkForm(Fraction(-1), Fraction(0))

    def test_scaled(self):
        f = GrowShrinkForm(4, 6).scaled(Fraction(1, 2))
        assert (f.grow, f.shrink) == (Fraction(2), Fraction(3))
        with pytest.raises(DomainError):
            GrowShrinkForm(1, 1).scaled(-2)

    def test_cmp_crossing(self):
        # 4e^{2t} vs e^{-2t}: equal grow+shrink never, crosses at e^{4t} = 1/4.
        a = GrowShrinkForm(4, 0)
        b = GrowShrinkForm(0, 1)
        assert a.cmp(b, 0) == 1
        assert a.cmp(b, -1) == -1
        assert a.cmp(a, Fraction(3, 7)) == 0

    def test_cmp_rational(self):
        f = GrowShrinkForm(1, 1)
        assert f.cmp_rational(2, 0) == 0
        assert f.cmp_rational(Fraction(3, 2), 0) == 1
        assert f.cmp_rational(100, Fraction(1, 3)) == -1

    def test_equality_and_hash(self):
        assert GrowShrinkForm(1, 2) == GrowShrinkForm(1, 2)
        assert hash(GrowShrinkForm(1, 2)) == hash(GrowShrinkForm(1, 2))
        assert GrowShrinkForm(1, 2) != GrowShrinkForm(2, 1)


class TestDeformedLength:
    def test_from_holonomy_scales_by_area(self):
        # (3, 4) on area 5: squared length (9 e^{2t} + 16 e^{-2t}) / 5.
        L = DeformedLength.from_holonomy(3, 4, 5)
        assert L.squared_at_zero() == Fraction(5)
        assert L.value(0) == pytest.approx(math.sqrt(5))

    def test_value_is_sqrt_of_form(self):
        L = DeformedLength.from_coeffs(1, 0)
        assert L.value(1) == pytest.approx(math.e)
        assert L.value(-1) == pytest.approx(math.e**-1)

    def test_rejects_nonpositive_area(self):
        with pytest.raises(DomainError):
            DeformedLength.from_holonomy(1, 0, 0)

    def test_cmp_by_squares(self):
        a = DeformedLength.from_coeffs(4, 0)
        b = DeformedLength.from_coeffs(0, 1)
        assert a.cmp(b, 0) == 1
        assert a.cmp(b, -1) == -1

    def test_cmp_rational_threshold(self):
        L = DeformedLength.from_coeffs(1, 0)  # length e^t
        assert L.cmp_rational(1, 0) == 0
        assert L.cmp_rational(Fraction(1, 2), -1) == -1
        assert L.cmp_rational(-3, 2) == 1  # lengths beat any negative bound


class TestFlowWidth:
    def test_value(self):
        w = FlowWidth(Fraction(1, 2), GrowShrinkForm(4, 0))
        assert w.value(0) == pytest.approx(0.25)

    def test_cmp_is_exact_at_crossing(self):
        # widths 1/sqrt(e^{2t}) and 1/sqrt(e^{-2t}) swap order at t = 0.
        a = FlowWidth(1, GrowShrinkForm(1, 0))
        b = FlowWidth(1, GrowShrinkForm(0, 1))
        assert a.cmp(b, 0) == 0
        assert a.cmp(b, 1) == -1
        assert a.cmp(b, -1) == 1

    def test_cmp_rational(self):
        a = FlowWidth(1, GrowShrinkForm(1, 0))
        assert a.cmp_rational(1, 0) == 0
        assert a.cmp_rational(Fraction(1, 100), 0) == 1
        assert a.cmp_rational(0, 5) == 1

    def test_validation(self):
        with pytest.raises(DomainError):
            FlowWidth(0, GrowShrinkForm(1, 0))
        with pytest.raises(DomainError):
            FlowWidth(1, GrowShrinkForm(0, 0))


class TestFlowModulus:
    def test_value_and_at_zero(self):
        m = FlowModulus(Fraction(1), GrowShrinkForm(2, 2))
        assert m.at_zero() == Fraction(1, 4)
        assert m.value(0) == pytest.approx(0.25)

    def test_reciprocal_form(self):
        m = FlowModulus(Fraction(1, 4), GrowShrinkForm(1, 1))
        r = m.reciprocal_form()
        assert (r.grow, r.shrink) == (Fraction(4), Fraction(4))

    def test_cmp(self):
        a = FlowModulus(1, GrowShrinkForm(1, 0))
        b = FlowModulus(1, GrowShrinkForm(0, 1))
        assert a.cmp(b, 0) == 0
        assert a.cmp(b, 1) == -1
        assert a.cmp_rational(Fraction(1, 2), 0) == 1

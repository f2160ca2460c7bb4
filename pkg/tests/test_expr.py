"""Expression layer: construction, calculus, evaluation, equality verdicts."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import distalg as d
from distalg import Verdict
from distalg.errors import DomainError


def poly(*coeffs):
    return d.expr_from_poly([Fraction(c) if not isinstance(c, tuple)
                             else Fraction(*c) for c in coeffs])


class TestConstruction:
    def test_sum_folds_constants(self):
        e = d.sum_of(d.const(1), d.const(2), d.X)
        assert e == d.sum_of(d.const(3), d.X)

    def test_like_terms_collapse(self):
        e = d.sum_of(d.X, d.X, d.neg(d.product_of(d.const(2), d.X)))
        assert e == d.ZERO

    def test_product_zero_annihilates(self):
        assert d.product_of(d.X, d.ZERO, d.exp_of(d.X)) == d.ZERO

    def test_power_grouping(self):
        e = d.product_of(d.X, d.X, d.X)
        assert e == d.power_of(d.X, 3)

    def test_power_decomposes(self):
        assert d.power_of(d.X, 1) == d.X
        assert d.power_of(d.exp_of(d.X), 0) == d.ONE

    def test_structural_special_values(self):
        assert d.exp_of(d.ZERO) == d.ONE
        assert d.sin_of(d.ZERO) == d.ZERO
        assert d.cos_of(d.ZERO) == d.ONE

    def test_quotient_by_constant_becomes_product(self):
        e = d.quotient_of(d.X, d.const(2))
        assert d.poly_normal_form(e) == (
            d.ComplexRational.of(0), d.ComplexRational.of(Fraction(1, 2)))
        with pytest.raises(ZeroDivisionError):
            d.quotient_of(d.X, d.ZERO)


class TestDifferentiation:
    def test_polynomial_rule(self):
        e = poly(1, 2, 3)  # 1 + 2x + 3x^2
        assert d.poly_normal_form(d.diff_expr(e)) == (
            d.ComplexRational.of(2), d.ComplexRational.of(6))

    def test_exp_chain(self):
        e = d.exp_of(d.neg(d.X))
        de = d.diff_expr(e)
        x = 0.7
        assert abs(d.eval_num(de, x) - (-math.exp(-x))) < 1e-12

    def test_quotient_rule_matches_finite_difference(self):
        e = d.quotient_of(d.ONE, d.sum_of(d.ONE, d.power_of(d.X, 2)))
        de = d.diff_expr(e)
        for x in (0.3, -1.2, 2.5):
            h = 1e-5
            fd = (d.eval_num(e, x + h) - d.eval_num(e, x - h)) / (2 * h)
            v = d.eval_num(de, x)
            assert abs(v - fd) <= 1e-6 * (1 + abs(v))

    def test_random_poly_derivative_exact(self):
        rng = random.Random(42)
        for _ in range(50):
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                      for _ in range(rng.randint(1, 6))]
            e = d.expr_from_poly(coeffs)
            x0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            want = sum(k * c * x0 ** (k - 1)
                       for k, c in enumerate(coeffs) if k >= 1)
            got = d.eval_exact(d.diff_expr(e), x0)
            assert got is not None and got.im == 0 and got.re == want


class TestEvaluation:
    def test_square_at_three(self):
        assert d.eval_expr(d.power_of(d.X, 2), 3) == 9

    def test_exp_at_zero(self):
        assert d.eval_expr(d.exp_of(d.X), 0) == 1

    def test_pole_raises(self):
        with pytest.raises(DomainError):
            d.eval_expr(d.quotient_of(d.ONE, d.X), 0)

    def test_eval_num_vectorized(self):
        xs = np.linspace(-1, 1, 7)
        vals = d.eval_num(poly(0, 0, 1), xs)
        assert np.allclose(vals, xs ** 2)

    def test_eval_exact_structural_exp(self):
        e = d.exp_of(d.product_of(d.const(3), d.X))
        assert d.eval_exact(e, Fraction(0)) == d.ComplexRational.of(1)
        assert d.eval_exact(e, Fraction(1)) is None

    def test_complex_constant(self):
        i = d.ComplexRational(Fraction(0), Fraction(1))
        e = d.product_of(d.const(i), d.X)
        assert d.eval_expr(e, 2) == 2j


class TestPolyNormalForm:
    def test_binomial_square(self):
        e = d.power_of(d.sum_of(d.X, d.ONE), 2)
        assert d.poly_normal_form(e) == tuple(
            d.ComplexRational.of(c) for c in (1, 2, 1))

    def test_zero_polynomial_is_empty(self):
        e = d.sub_expr(d.power_of(d.X, 2), d.power_of(d.X, 2))
        assert d.poly_normal_form(e) == ()

    def test_exp_is_not_polynomial(self):
        assert d.poly_normal_form(d.exp_of(d.X)) is None

    def test_exact_division(self):
        # (x^2 - 1)/(x - 1) divides exactly
        num = d.sub_expr(d.power_of(d.X, 2), d.ONE)
        den = d.sub_expr(d.X, d.ONE)
        e = d.quotient_of(num, den)
        assert d.poly_normal_form(e) == tuple(
            d.ComplexRational.of(c) for c in (1, 1))

    def test_inexact_division_is_not_polynomial(self):
        e = d.quotient_of(d.X, d.sum_of(d.X, d.ONE))
        assert d.poly_normal_form(e) is None

    def test_idempotent_under_reparse(self):
        rng = random.Random(9)
        for _ in range(30):
            coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                      for _ in range(rng.randint(1, 5))]
            e = d.expr_from_poly(coeffs)
            again = d.parse_smooth_expr(d.format_expr(e))
            assert d.poly_normal_form(again) == d.poly_normal_form(e)


class TestVerdicts:
    def test_polynomials_equal(self):
        e1 = d.power_of(d.sum_of(d.X, d.ONE), 2)
        e2 = poly(1, 2, 1)
        assert d.expr_equal(e1, e2) is Verdict.EQUAL

    def test_separating_sample(self):
        assert d.expr_equal(d.X, d.sum_of(d.X, d.ONE)) is Verdict.UNEQUAL

    def test_pythagorean_identity_is_unknown(self):
        e = d.sum_of(d.power_of(d.sin_of(d.X), 2),
                     d.power_of(d.cos_of(d.X), 2))
        assert d.expr_equal(e, d.ONE) is Verdict.UNKNOWN

    def test_worst_verdict_ordering(self):
        assert d.worst_verdict(Verdict.EQUAL, Verdict.UNKNOWN) is Verdict.UNKNOWN
        assert d.worst_verdict(Verdict.UNKNOWN, Verdict.UNEQUAL) is Verdict.UNEQUAL
        assert d.worst_verdict() is Verdict.EQUAL

    def test_interval_restriction(self):
        # pieces that differ only left of the window compare Equal on it
        e1 = d.X
        e2 = d.X
        assert d.expr_equal(e1, e2, (Fraction(0), None)) is Verdict.EQUAL


class TestSubstShift:
    def test_shift_polynomial(self):
        e = d.power_of(d.X, 2)
        shifted = d.shift_expr(e, Fraction(1))  # (x+1)^2
        assert d.poly_normal_form(shifted) == tuple(
            d.ComplexRational.of(c) for c in (1, 2, 1))

    def test_shift_inverse(self):
        e = d.exp_of(d.X)
        back = d.shift_expr(d.shift_expr(e, Fraction(1, 2)), Fraction(-1, 2))
        assert d.expr_equal(e, back) is not Verdict.UNEQUAL

    def test_subst_composition(self):
        e = d.power_of(d.X, 2)
        inner = d.sum_of(d.X, d.ONE)
        assert d.poly_normal_form(d.subst(e, inner)) == tuple(
            d.ComplexRational.of(c) for c in (1, 2, 1))


_small = st.integers(min_value=-6, max_value=6)


@st.composite
def rational_polys(draw, max_deg=4):
    n = draw(st.integers(min_value=0, max_value=max_deg))
    coeffs = [Fraction(draw(_small), draw(st.integers(1, 4)))
              for _ in range(n + 1)]
    return d.expr_from_poly(coeffs)


@settings(max_examples=60, deadline=None)
@given(rational_polys(), rational_polys(), rational_polys())
def test_poly_ring_laws(a, b, c):
    lhs = d.product_of(a, d.sum_of(b, c))
    rhs = d.sum_of(d.product_of(a, b), d.product_of(a, c))
    assert d.poly_normal_form(lhs) == d.poly_normal_form(rhs)
    assert d.poly_normal_form(d.product_of(a, b)) == \
        d.poly_normal_form(d.product_of(b, a))


@settings(max_examples=60, deadline=None)
@given(rational_polys(), rational_polys())
def test_derivative_is_linear_and_leibniz(a, b):
    assert d.poly_normal_form(d.diff_expr(d.sum_of(a, b))) == \
        d.poly_normal_form(d.sum_of(d.diff_expr(a), d.diff_expr(b)))
    lhs = d.diff_expr(d.product_of(a, b))
    rhs = d.sum_of(d.product_of(d.diff_expr(a), b),
                   d.product_of(a, d.diff_expr(b)))
    assert d.poly_normal_form(lhs) == d.poly_normal_form(rhs)

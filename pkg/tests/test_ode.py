"""Confined equations, residuals, and cutoff particular solutions."""

import random
from fractions import Fraction

import pytest

import distalg as d
from distalg import Verdict
from distalg.dist import _assemble
from distalg.errors import DegenerateLeadingCoefficient, ShapeError


def second_order():
    return d.make_ode([d.ZERO, d.ZERO, d.ONE])  # psi'' = 0


def first_order():
    return d.make_ode([d.ZERO, d.ONE])  # psi' = 0


def linear(c0, c1):
    return d.sum_of(d.const(Fraction(c0)),
                    d.product_of(d.const(Fraction(c1)), d.X))


class TestMakeOde:
    def test_accepts_constant_coefficients(self):
        ode = second_order()
        assert ode.n == 2
        assert ode.leading_sampled_nonzero

    def test_order_zero_rejected(self):
        with pytest.raises(ShapeError):
            d.make_ode([d.ONE])

    def test_zero_leading_rejected(self):
        with pytest.raises(DegenerateLeadingCoefficient):
            d.make_ode([d.ONE, d.ZERO])
        with pytest.raises(DegenerateLeadingCoefficient):
            d.make_ode([d.ONE, d.sub_expr(d.X, d.X)])

    def test_vanishing_leading_flagged_not_rejected(self):
        # effectively zero away from the origin, so the sampled check trips
        spike = d.exp_of(d.product_of(d.const(-10000), d.power_of(d.X, 2)))
        ode = d.make_ode([d.ONE, spike])
        assert not ode.leading_sampled_nonzero
        assert d.make_ode([d.ONE, d.ONE]).leading_sampled_nonzero


class TestConfinedStructure:
    def test_halfline_records(self):
        ceq = d.confine_halfline(second_order(), 0)
        recs = [(r.i, r.j, r.binomial, r.endpoint, r.hside_order, r.sign)
                for r in ceq.corrections]
        assert recs == [(2, 1, 2, "lower", 1, 1), (2, 2, 1, "lower", 2, 1)]

    def test_interval_records_cover_both_endpoints(self):
        ceq = d.confine_interval(second_order(), 0, 1)
        lower = [r for r in ceq.corrections if r.endpoint == "lower"]
        upper = [r for r in ceq.corrections if r.endpoint == "upper"]
        assert len(lower) == len(upper) == 2
        assert all(r.sign == 1 for r in lower)
        assert all(r.sign == -1 for r in upper)
        assert all(1 <= r.j <= r.i <= 2 for r in ceq.corrections)

    def test_zero_coefficients_contribute_no_records(self):
        ode = d.make_ode([d.ONE, d.ZERO, d.ONE])  # psi'' + psi = 0
        ceq = d.confine_halfline(ode, 0)
        assert {r.i for r in ceq.corrections} == {2}

    def test_indicator_shapes(self):
        half = d.confine_halfline(first_order(), Fraction(1, 2))
        assert d.equal_dist(d.indicator_dist(half),
                            d.heaviside(Fraction(1, 2))) is Verdict.EQUAL
        box = d.confine_interval(first_order(), 0, 1)
        assert d.equal_dist(d.indicator_dist(box),
                            d.indicator(0, 1)) is Verdict.EQUAL


class TestResidualHalfline:
    def test_heaviside_solves_first_order(self):
        ceq = d.confine_halfline(first_order(), 0)
        assert d.is_zero_dist(d.residual(ceq, d.heaviside(0)))

    def test_ramp_solves_second_order(self):
        ceq = d.confine_halfline(second_order(), 0)
        ramp = d.make_piecewise([0], [d.ZERO, d.X])
        assert d.is_zero_dist(d.residual(ceq, ramp))

    def test_random_cutoff_linear_solutions(self):
        rng = random.Random(41)
        ceq = d.confine_halfline(second_order(), 0)
        for _ in range(50):
            c0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            c1 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            psi = d.smooth_mul(linear(c0, c1), d.heaviside(0))
            assert d.is_zero_dist(d.residual(ceq, psi))

    def test_unconfined_solution_leaves_deltas(self):
        ceq = d.confine_halfline(second_order(), 0)
        res = d.residual(ceq, d.smooth_dist(linear(3, 2)))
        want = _assemble((), (d.ZERO,),
                         [d.DeltaAtom(Fraction(0), 0, d.ComplexRational.of(2)),
                          d.DeltaAtom(Fraction(0), 1, d.ComplexRational.of(3))])
        assert d.equal_dist(res, want) is Verdict.EQUAL

    def test_shifted_endpoint(self):
        ceq = d.confine_halfline(second_order(), 1)
        psi = d.smooth_mul(linear(-1, 1), d.heaviside(1))  # (x-1)*H(x-1)
        assert d.is_zero_dist(d.residual(ceq, psi))
        assert {a.w for a in d.residual(ceq, d.smooth_dist(d.X)).atoms} == {Fraction(1)}

    def test_wrong_shapes_never_pass(self):
        # candidates with an extra atom or a live left branch must fail
        rng = random.Random(42)
        ceq = d.confine_halfline(second_order(), 0)
        for _ in range(50):
            c0 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            c1 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
            good = d.smooth_mul(linear(c0, c1), d.heaviside(0))
            if rng.random() < 0.5:
                k = rng.randint(0, 1)
                c = Fraction(rng.randint(1, 5), rng.randint(1, 3))
                bad = d.add(good, d.delta_dist(0, k, c * rng.choice([1, -1])))
            else:
                left = linear(rng.randint(1, 5), rng.randint(-3, 3))
                bad = d.add(good, d.smooth_mul(left, d.indicator(-5, 0)))
            assert not d.is_zero_dist(d.residual(ceq, bad))


class TestResidualInterval:
    def test_confined_linear_solution(self):
        ceq = d.confine_interval(second_order(), 0, 1)
        psi = d.smooth_mul(linear(3, 2), d.indicator(0, 1))
        assert d.is_zero_dist(d.residual(ceq, psi))

    def test_confined_constant_first_order(self):
        ceq = d.confine_interval(first_order(), 0, 1)
        psi = d.scale(Fraction(5, 7), d.indicator(0, 1))
        assert d.is_zero_dist(d.residual(ceq, psi))

    def test_unconfined_fails(self):
        ceq = d.confine_interval(second_order(), 0, 1)
        res = d.residual(ceq, d.smooth_dist(linear(3, 2)))
        assert not d.is_zero_dist(res)
        assert {a.w for a in res.atoms} == {Fraction(0), Fraction(1)}

    def test_random_interval_solutions(self):
        rng = random.Random(43)
        for _ in range(25):
            a = Fraction(rng.randint(-3, 0))
            b = a + rng.randint(1, 3)
            ceq = d.confine_interval(second_order(), a, b)
            psi = d.smooth_mul(
                linear(Fraction(rng.randint(-5, 5), 2),
                       Fraction(rng.randint(-5, 5), 3)),
                d.indicator(a, b))
            assert d.is_zero_dist(d.residual(ceq, psi))


class TestSupportInvariance:
    def test_corrections_ignore_left_supported_junk(self):
        # adding atoms strictly left of the endpoint changes nothing in the
        # correction terms, which only read right-of-endpoint data
        rng = random.Random(44)
        ode = d.make_ode([d.const(1), d.const(2), d.X, d.ONE])
        ceq = d.confine_halfline(ode, 0)
        for _ in range(40):
            psi_u = d.sum_of(
                d.const(Fraction(rng.randint(-4, 4), 2)),
                d.product_of(d.const(Fraction(rng.randint(-4, 4), 3)),
                             d.power_of(d.X, rng.randint(1, 3))))
            base = d.smooth_mul(psi_u, d.heaviside(0))
            atoms = [d.DeltaAtom(Fraction(-rng.randint(1, 4), rng.choice([1, 2])),
                                 rng.randint(0, 2),
                                 d.ComplexRational(Fraction(rng.randint(-5, 5)),
                                                   Fraction(rng.randint(-2, 2))))
                     for _ in range(rng.randint(1, 3))]
            junk = _assemble((), (d.ZERO,), atoms)
            c_base = d.correction_values(ceq, base)
            c_junk = d.correction_values(ceq, d.add(base, junk))
            assert len(c_base) == len(c_junk) == len(ceq.corrections)
            for u, v in zip(c_base, c_junk):
                assert d.equal_dist(u, v) is Verdict.EQUAL


class TestParticularRhs:
    def test_unit_value_gives_delta_prime(self):
        out = d.particular_rhs(second_order(), [1, 0], 0)
        assert d.equal_dist(out, d.delta_dist(0, 1)) is Verdict.EQUAL

    def test_unit_slope_gives_delta(self):
        out = d.particular_rhs(second_order(), [0, 1], 0)
        assert d.equal_dist(out, d.delta_dist(0)) is Verdict.EQUAL

    def test_zero_data_vanishes(self):
        assert d.is_zero_dist(d.particular_rhs(first_order(), [0], 0))

    def test_length_check(self):
        with pytest.raises(ShapeError):
            d.particular_rhs(second_order(), [1], 0)

    def test_cutoff_identity(self):
        # Sum a_i (H psi)^(i) = H * (sum a_i psi^(i)) + the delta combination
        # built from the endpoint data of psi, for any polynomial psi.
        rng = random.Random(45)
        for _ in range(30):
            n = rng.randint(1, 3)
            coeffs = [d.expr_from_poly([Fraction(rng.randint(-3, 3)),
                                        Fraction(rng.randint(-2, 2))])
                      for _ in range(n)] + [d.ONE]
            ode = d.make_ode(coeffs)
            a = Fraction(rng.randint(-2, 2))
            psi_u = d.expr_from_poly([Fraction(rng.randint(-4, 4), 2)
                                      for _ in range(rng.randint(1, 4))])
            cut = d.smooth_mul(psi_u, d.heaviside(a))
            lhs = d.zero_dist()
            deriv = cut
            derivs = [cut]
            for _ in range(ode.n):
                deriv = d.differentiate(deriv)
                derivs.append(deriv)
            for i, ai in enumerate(ode.coeffs):
                lhs = d.add(lhs, d.smooth_mul(ai, derivs[i]))
            classical = d.sum_of(*(d.product_of(ode.coeffs[i], d.diff_n(psi_u, i))
                                   for i in range(ode.n + 1)))
            values = [d.eval_exact(d.diff_n(psi_u, k), a) for k in range(ode.n)]
            rhs = d.add(d.smooth_mul(classical, d.heaviside(a)),
                        d.particular_rhs(ode, values, a))
            assert d.equal_dist(lhs, rhs) is Verdict.EQUAL


class TestVerify:
    def test_polynomial_solution_verdict(self):
        ceq = d.confine_halfline(second_order(), 0)
        rep = d.verify_confinement(ceq, linear(3, 2))
        assert rep.verdict is Verdict.EQUAL
        assert d.is_zero_dist(rep.residual)
        assert rep.classical_max == 0

    def test_decaying_exponential(self):
        ode = d.make_ode([d.ONE, d.ONE])  # psi' + psi = 0
        ceq = d.confine_halfline(ode, 0)
        rep = d.verify_confinement(ceq, d.exp_of(d.neg(d.X)))
        assert rep.verdict is Verdict.EQUAL
        assert rep.classical_max <= 1e-9

    def test_non_solution_reports_classical_residual(self):
        ceq = d.confine_halfline(second_order(), 0)
        rep = d.verify_confinement(ceq, d.power_of(d.X, 2))
        assert rep.classical_max > 1
        assert rep.verdict is not Verdict.EQUAL

    def test_report_serialization_keys(self):
        ceq = d.confine_halfline(second_order(), 0)
        rep = d.verify_confinement(ceq, linear(1, 1))
        obj = d.report_to_jsonable(rep)
        assert set(obj) >= {"verdict", "residual", "samples"}
        assert obj["verdict"] == "Equal"
        assert all(set(s) == {"x", "value"} for s in obj["samples"])

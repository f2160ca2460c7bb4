"""Canonical form, linear structure, and distributional calculus."""

import random
from fractions import Fraction

import pytest

import distalg as d
from distalg import Verdict
from distalg.dist import _assemble
from distalg.errors import DomainError, ShapeError, UnsupportedPiece

from conftest import random_dist, random_poly


def CR(*a):
    if len(a) == 1:
        return d.ComplexRational.of(a[0])
    return d.ComplexRational(Fraction(a[0]), Fraction(a[1]))


class TestCanonicalForm:
    def test_heaviside_shape(self):
        H = d.make_piecewise([0], [0, 1])
        assert H.breakpoints == (Fraction(0),)
        assert H.pieces == (d.ZERO, d.ONE)
        assert H.atoms == ()

    def test_equal_pieces_merge(self):
        F = d.make_piecewise([0], [d.X, d.X])
        assert F.breakpoints == ()
        assert F.pieces == (d.X,)

    def test_indicator(self):
        chi = d.make_piecewise([0, 1], [0, 1, 0])
        assert chi.breakpoints == (Fraction(0), Fraction(1))
        assert d.equal_dist(chi, d.indicator(0, 1)) is Verdict.EQUAL

    def test_atom_location_padding(self):
        F = _assemble((), (d.X,), [d.DeltaAtom(Fraction(1), 0, CR(1))])
        assert F.breakpoints == (Fraction(1),)
        assert F.pieces == (d.X, d.X)

    def test_shape_errors(self):
        with pytest.raises(ShapeError):
            d.make_piecewise([0], [d.ZERO])
        with pytest.raises(ShapeError):
            d.make_piecewise([1, 0], [0, 1, 2])
        with pytest.raises(ShapeError):
            _assemble((), (d.ZERO,), [d.DeltaAtom(Fraction(0), -1, CR(1))])

    def test_zero_coefficient_atoms_drop(self):
        F = _assemble((), (d.ZERO,), [d.DeltaAtom(Fraction(0), 0, CR(1)),
                                      d.DeltaAtom(Fraction(0), 0, CR(-1))])
        assert d.is_zero_dist(F)

    def test_normalization_idempotent(self):
        rng = random.Random(12)
        for _ in range(40):
            F = random_dist(rng)
            G = d.normalize_dist(F)
            assert G.breakpoints == F.breakpoints
            assert G.pieces == F.pieces
            assert G.atoms == F.atoms


class TestLinearOps:
    def test_add_heavisides(self):
        S = d.add(d.heaviside(0), d.heaviside(0))
        assert S.breakpoints == (Fraction(0),)
        assert d.poly_normal_form(S.pieces[1]) == (CR(2),)

    def test_delta_cancellation(self):
        Z = d.add(d.delta_dist(0), d.scale(-1, d.delta_dist(0)))
        assert d.is_zero_dist(Z)

    def test_mixed_sum(self):
        F = d.add(d.heaviside(0), d.delta_dist(0))
        assert F.atoms == (d.DeltaAtom(Fraction(0), 0, CR(1)),)
        assert F.pieces == (d.ZERO, d.ONE)

    def test_vector_space_axioms(self):
        rng = random.Random(13)
        for _ in range(25):
            F, G, J = (random_dist(rng) for _ in range(3))
            assert d.equal_dist(d.add(F, G), d.add(G, F)) is Verdict.EQUAL
            assert d.equal_dist(d.add(d.add(F, G), J),
                                d.add(F, d.add(G, J))) is Verdict.EQUAL
            c = Fraction(3, 2)
            assert d.equal_dist(
                d.scale(c, d.add(F, G)),
                d.add(d.scale(c, F), d.scale(c, G))) is Verdict.EQUAL
            assert d.is_zero_dist(d.sub(F, F))


class TestSmoothTimesAtom:
    def test_constant_is_identity(self):
        out = d.smooth_times_atom(d.ONE, d.DeltaAtom(Fraction(0), 1, CR(1)))
        assert out == [d.DeltaAtom(Fraction(0), 1, CR(1))]

    def test_x_times_delta_prime(self):
        out = d.smooth_times_atom(d.X, d.DeltaAtom(Fraction(0), 1, CR(1)))
        assert out == [d.DeltaAtom(Fraction(0), 0, CR(-1))]

    def test_x_squared_times_delta_vanishes(self):
        out = d.smooth_times_atom(d.power_of(d.X, 2),
                                  d.DeltaAtom(Fraction(0), 0, CR(1)))
        assert out == []

    def test_inexact_fallback(self):
        out = d.smooth_times_atom(d.exp_of(d.X),
                                  d.DeltaAtom(Fraction(1), 0, CR(1)))
        assert len(out) == 1
        a = out[0]
        assert isinstance(a, d.InexactAtom)
        assert abs(a.coeff - 2.718281828459045) < 1e-12

    def test_action_contract(self):
        # <g*atom, t> must equal <atom, g*t>; checked through the quadrature
        rng = random.Random(14)
        t = d.make_bump(-3, 3)
        for _ in range(20):
            g = random_poly(rng)
            a = d.DeltaAtom(Fraction(rng.randint(-2, 2)), rng.randint(0, 2),
                            CR(rng.randint(-3, 3)))
            expanded = _assemble((), (d.ZERO,), d.smooth_times_atom(g, a))
            lhs = d.action(expanded, t)
            gF = d.smooth_mul(g, _assemble((), (d.ZERO,), [a]))
            rhs = d.action(gF, t)
            assert abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs))


class TestDifferentiate:
    def test_heaviside_to_delta(self):
        D = d.differentiate(d.heaviside(0))
        assert d.is_zero_dist(d.sub(D, d.delta_dist(0)))

    def test_ramp_to_heaviside(self):
        ramp = d.make_piecewise([0], [d.ZERO, d.X])
        assert d.equal_dist(d.differentiate(ramp),
                            d.heaviside(0)) is Verdict.EQUAL

    def test_delta_order_increments(self):
        D = d.differentiate(d.delta_dist(0))
        assert D.atoms == (d.DeltaAtom(Fraction(0), 1, CR(1)),)

    def test_jump_with_nonpoly_exact_at_zero(self):
        # left piece 0, right piece exp(x): jump exp(0) = 1 stays exact
        F = d.make_piecewise([0], [d.ZERO, d.exp_of(d.X)])
        D = d.differentiate(F)
        assert D.atoms == (d.DeltaAtom(Fraction(0), 0, CR(1)),)
        assert not D.inexact_atoms

    def test_jump_with_nonpoly_inexact_elsewhere(self):
        F = d.make_piecewise([1], [d.ZERO, d.exp_of(d.X)])
        D = d.differentiate(F)
        assert not D.atoms
        assert len(D.inexact_atoms) == 1
        assert abs(D.inexact_atoms[0].coeff - 2.718281828459045) < 1e-12


class TestAntiderivative:
    def test_delta_to_heaviside(self):
        assert d.equal_dist(d.antiderivative(d.delta_dist(0)),
                            d.heaviside(0)) is Verdict.EQUAL

    def test_delta_prime_to_delta(self):
        A = d.antiderivative(d.delta_dist(0, 1))
        assert d.equal_dist(A, d.delta_dist(0)) is Verdict.EQUAL

    def test_heaviside_to_ramp(self):
        A = d.antiderivative(d.heaviside(0))
        ramp = d.make_piecewise([0], [d.ZERO, d.X])
        assert d.equal_dist(A, ramp) is Verdict.EQUAL

    def test_leftmost_constant_is_zero(self):
        A = d.antiderivative(d.heaviside(-1))
        assert d.poly_normal_form(A.pieces[0]) == ()

    def test_regular_part_continuous(self):
        rng = random.Random(15)
        for _ in range(30):
            F = random_dist(rng, max_atoms=1)
            A = d.antiderivative(F)
            for j, w in enumerate(A.breakpoints):
                atom0 = [a for a in F.atoms if a.w == w and a.k == 0]
                if atom0:
                    continue  # order-0 atoms create genuine steps
                left = d.eval_exact(A.pieces[j], w)
                right = d.eval_exact(A.pieces[j + 1], w)
                assert left == right

    def test_round_trip(self):
        rng = random.Random(16)
        for _ in range(60):
            F = random_dist(rng)
            assert d.equal_dist(d.differentiate(d.antiderivative(F)),
                                F) is Verdict.EQUAL

    def test_nonpoly_piece_rejected(self):
        F = d.make_piecewise([0], [d.ZERO, d.exp_of(d.X)])
        with pytest.raises(UnsupportedPiece):
            d.antiderivative(F)

    def test_inexact_step_rejected(self):
        F = _assemble((), (d.ZERO,), (),
                      [d.InexactAtom(Fraction(0), 0, 1.5)])
        with pytest.raises(DomainError):
            d.antiderivative(F)


class TestAlignTranslate:
    def test_align_union(self):
        Fa, Ga = d.align(d.heaviside(0), d.heaviside(1))
        assert Fa.breakpoints == Ga.breakpoints == (Fraction(0), Fraction(1))
        assert len(Fa.pieces) == 3

    def test_align_inserts_unnormalized(self):
        Fa, Ga = d.align(d.delta_dist(0), d.smooth_dist(d.X))
        assert Ga.breakpoints == (Fraction(0),)
        assert Ga.pieces == (d.X, d.X)

    def test_translate_shifts_features(self):
        T = d.translate(d.heaviside(0), Fraction(1))
        assert T.breakpoints == (Fraction(-1),)
        T2 = d.translate(d.delta_dist(0), Fraction(1, 2))
        assert T2.atoms[0].w == Fraction(-1, 2)

    def test_translate_inverse(self):
        rng = random.Random(17)
        for _ in range(20):
            F = random_dist(rng)
            back = d.translate(d.translate(F, Fraction(1, 3)), Fraction(-1, 3))
            assert d.equal_dist(F, back) is Verdict.EQUAL


class TestSingularSupport:
    def test_heaviside(self):
        assert d.singular_support(d.heaviside(0)) == [Fraction(0)]

    def test_smooth_is_empty(self):
        assert d.singular_support(d.smooth_dist(d.power_of(d.X, 2))) == []

    def test_mixed(self):
        F = d.add(d.heaviside(0), d.delta_dist(1))
        assert d.singular_support(F) == [Fraction(0), Fraction(1)]


class TestEqualDist:
    def test_delta_vs_derivative(self):
        assert d.equal_dist(d.delta_dist(0),
                            d.delta_dist(0, 1)) is Verdict.UNEQUAL

    def test_pythagorean_pieces_unknown(self):
        trig = d.smooth_dist(d.sum_of(d.power_of(d.sin_of(d.X), 2),
                                      d.power_of(d.cos_of(d.X), 2)))
        assert d.equal_dist(trig, d.smooth_dist(d.ONE)) is Verdict.UNKNOWN

    def test_inexact_atoms_compare_within_tolerance(self):
        F = _assemble((), (d.ZERO,), (), [d.InexactAtom(Fraction(0), 0, 1.0)])
        G = _assemble((), (d.ZERO,), (),
                      [d.InexactAtom(Fraction(0), 0, 1.0 + 1e-12)])
        assert d.equal_dist(F, G) is Verdict.UNKNOWN
        H = _assemble((), (d.ZERO,), (), [d.InexactAtom(Fraction(0), 0, 2.0)])
        assert d.equal_dist(F, H) is Verdict.UNEQUAL

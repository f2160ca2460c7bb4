"""Shared random families for the test suite.

The draws deliberately stay on small rational grids: breakpoints on
{-2,...,2}, sparse polynomial pieces of degree <= 3, atom orders <= 2,
coefficients with small numerators and denominators.  Everything downstream
(products, residuals, verdicts) is then exact, which is what the identity
tests rely on.
"""

import random
from fractions import Fraction

import distalg as d
from distalg.dist import _assemble

LOCS = [Fraction(-2), Fraction(-1), Fraction(0), Fraction(1), Fraction(2)]


def rational_scalar(rng, imag_rate=0.3, max_num=5, max_den=3):
    num = rng.randint(-max_num, max_num)
    den = rng.choice([1, 1, 2, max_den])
    if rng.random() < imag_rate:
        return d.ComplexRational(Fraction(num, den),
                                 Fraction(rng.randint(-3, 3), den))
    return d.ComplexRational(Fraction(num, den), Fraction(0))


def random_poly(rng, max_deg=3, max_terms=2):
    terms = [d.ZERO]
    for _ in range(rng.randint(1, max_terms)):
        terms.append(d.product_of(d.const(rational_scalar(rng)),
                                  d.power_of(d.X, rng.randint(0, max_deg))))
    return d.sum_of(*terms)


def random_dist(rng, max_breaks=3, max_atoms=2, max_k=2):
    bks = sorted(rng.sample(LOCS, rng.randint(0, max_breaks)))
    pieces = [random_poly(rng) for _ in range(len(bks) + 1)]
    atoms = [d.DeltaAtom(rng.choice(LOCS), rng.randint(0, max_k),
                         rational_scalar(rng))
             for _ in range(rng.randint(0, max_atoms))]
    return _assemble(bks, pieces, atoms)


def random_corpus(seed, n, **kw):
    rng = random.Random(seed)
    return [random_dist(rng, **kw) for _ in range(n)]

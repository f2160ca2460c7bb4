"""Numerical weak actions and the translation-limit oracle.

``action`` evaluates <F, t> for a compactly supported bump t: piecewise
Gauss-Legendre quadrature for the regular part (split at every breakpoint so
each panel sees a smooth integrand) plus coeff·(-1)^k·t^(k)(w) for the
atoms, with bump derivatives taken symbolically.

``epsilon_product_action`` evaluates <F·G^eps, t> while deliberately
avoiding the closed-form product code: G is sampled at shifted points inside
the integral, and every atom term is obtained by numerically differentiating
the product of the opposing smooth piece with the bump (Cauchy integral on a
small circle, which needs only function values).  ``star_oracle`` drives it
along a shrinking eps schedule and extrapolates, giving an independent check
of the symbolic product.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .dist import GenDist, normalize_dist, singular_support
from .errors import EpsilonTooLarge, ShapeError
from .expr import (SmoothExpr, X, const, diff_expr, eval_num, exp_of,
                   power_of, product_of, quotient_of, sub_expr, sum_of, ONE)
from .scalars import as_fraction


# ---------------------------------------------------------------------------
# bump test functions


@dataclass(frozen=True)
class TestFunction:
    """A bump supported on [a, b]: body(u) in the normalized variable
    u = (2x - a - b)/(b - a), extended by zero outside.  The default body
    c·exp(-1/(1-u^2)) vanishes with all derivatives at the endpoints."""
    a: Fraction
    b: Fraction
    body: SmoothExpr


def make_bump(a, b, c=1) -> TestFunction:
    af, bf = as_fraction(a), as_fraction(b)
    if af >= bf:
        raise ShapeError("bump support needs a < b")
    body = product_of(const(c), exp_of(
        quotient_of(const(-1), sub_expr(ONE, power_of(X, 2)))))
    return TestFunction(af, bf, body)


@functools.lru_cache(maxsize=4096)
def _body_deriv(body: SmoothExpr, k: int) -> SmoothExpr:
    if k == 0:
        return body
    return diff_expr(_body_deriv(body, k - 1))


def _u_of_x(t: TestFunction, x):
    a, b = float(t.a), float(t.b)
    return (2.0 * np.asarray(x) - a - b) / (b - a)


def bump_values(t: TestFunction, x, guard: float = 0.0) -> np.ndarray:
    """t at real points; zero outside the (guard-shrunk) support."""
    return bump_deriv_values(t, 0, x, guard)


def bump_deriv_values(t: TestFunction, k: int, x, guard: float = 0.0) -> np.ndarray:
    """k-th derivative of t at real points.  Within `guard` of an endpoint
    the value is exactly 0 (all true derivatives vanish there faster than
    any polynomial)."""
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi = float(t.a) + guard, float(t.b) - guard
    inside = (xs > lo) & (xs < hi)
    out = np.zeros(xs.shape, dtype=complex)
    if np.any(inside):
        u = _u_of_x(t, xs[inside])
        chain = (2.0 / (float(t.b) - float(t.a))) ** k
        out[inside] = chain * eval_num(_body_deriv(t.body, k), u)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return complex(out[0])
    return out


def bump_analytic(t: TestFunction, z) -> np.ndarray:
    """The bump's smooth branch at complex points (no support cutoff); valid
    near real points strictly inside ]a, b[."""
    return eval_num(t.body, _u_of_x(t, np.asarray(z, dtype=complex)))


def bump_derivative(t: TestFunction) -> TestFunction:
    """The bump whose values are t': same support, body d/du scaled by the
    chain factor."""
    chain = Fraction(2) / (t.b - t.a)
    return TestFunction(t.a, t.b, product_of(const(chain), diff_expr(t.body)))


# ---------------------------------------------------------------------------
# quadrature configuration


@dataclass(frozen=True)
class QuadratureConfig:
    nodes: int = 64
    guard: float = 1e-12
    eps_schedule: Tuple[Fraction, ...] = (Fraction(1, 100), Fraction(1, 1000),
                                          Fraction(1, 10000))
    extrapolation: str = "richardson"  # or "last-value"

    def __post_init__(self):
        if self.nodes < 1:
            raise ShapeError("need at least one quadrature node")
        sched = tuple(as_fraction(e) for e in self.eps_schedule)
        object.__setattr__(self, "eps_schedule", sched)
        if any(e <= 0 for e in sched):
            raise ShapeError("epsilon schedule must be positive")
        if any(sched[i] <= sched[i + 1] for i in range(len(sched) - 1)):
            raise ShapeError("epsilon schedule must be strictly descending")
        if self.extrapolation not in ("richardson", "last-value"):
            raise ShapeError("extrapolation must be 'richardson' or 'last-value'")


DEFAULT_CONFIG = QuadratureConfig()


@functools.lru_cache(maxsize=64)
def _gauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _panel_integral(fn: Callable[[np.ndarray], np.ndarray],
                    lo: float, hi: float, nodes: int) -> complex:
    if hi <= lo:
        return 0j
    x, w = _gauss(nodes)
    mid, half = (lo + hi) / 2.0, (hi - lo) / 2.0
    vals = np.asarray(fn(mid + half * x), dtype=complex)
    return complex(half * np.sum(w * vals))


def _segments(lo: float, hi: float, cuts: Sequence[float]) -> list:
    pts = [lo] + sorted({c for c in cuts if lo < c < hi}) + [hi]
    return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)
            if pts[i + 1] > pts[i]]


def _piece_at(F: GenDist, x: float) -> SmoothExpr:
    fb = [float(b) for b in F.breakpoints]
    i = 0
    while i < len(fb) and fb[i] < x:
        i += 1
    return F.pieces[i]


# ---------------------------------------------------------------------------
# weak action


def action(F: GenDist, t: TestFunction, cfg: Optional[QuadratureConfig] = None
           ) -> complex:
    """<F, t>: quadrature of the regular part over supp t plus
    coeff·(-1)^k·t^(k)(w) for every atom."""
    cfg = cfg or DEFAULT_CONFIG
    lo, hi = float(t.a) + cfg.guard, float(t.b) - cfg.guard
    total = 0j
    for (s, e) in _segments(lo, hi, [float(b) for b in F.breakpoints]):
        piece = _piece_at(F, (s + e) / 2.0)
        if piece == const(0):
            continue
        total += _panel_integral(
            lambda xs: eval_num(piece, xs) * bump_values(t, xs, cfg.guard),
            s, e, cfg.nodes)
    for a in F.atoms + F.inexact_atoms:
        w = float(a.w)
        if not (lo < w < hi):
            continue
        tk = bump_deriv_values(t, a.k, w, cfg.guard)
        total += complex(a.coeff) * (-1) ** a.k * tk
    return total


# ---------------------------------------------------------------------------
# the translation-limit oracle


def _cauchy_deriv(fn: Callable[[np.ndarray], np.ndarray], w: float, k: int,
                  r: float, nodes: int = 64) -> complex:
    """k-th derivative at w of an analytic function from values on a circle
    of radius r (trapezoidal Cauchy integral; spectrally accurate)."""
    th = 2.0 * np.pi * np.arange(nodes) / nodes
    z = w + r * np.exp(1j * th)
    vals = np.asarray(fn(z), dtype=complex)
    if k == 0:
        return complex(np.mean(vals))
    return complex(math.factorial(k) / (nodes * r ** k)
                   * np.sum(vals * np.exp(-1j * k * th)))


def _atom_radius(w: float, lo: float, hi: float) -> float:
    return min(0.35 * (w - lo), 0.35 * (hi - w), 0.1)


def epsilon_product_action(F: GenDist, G: GenDist, t: TestFunction, eps,
                           cfg: Optional[QuadratureConfig] = None) -> complex:
    """<F(x)·G(x+eps), t> without the closed-form product code.

    Regular part: quadrature of f(x)·g(x+eps)·t(x) split at the breakpoints
    of F and of the shifted G.  Atoms: an atom of F at w meets the G piece
    covering w+eps, an atom of G at v sits at v-eps and meets the F piece
    covering that point; either way the contribution is
    coeff·(-1)^k·(m·t)^(k) at the location, differentiated numerically from
    complex function values.  Requires the shifted singular supports to be
    exactly disjoint.
    """
    cfg = cfg or DEFAULT_CONFIG
    epsf = as_fraction(eps)
    Fn = normalize_dist(F)
    Gn = normalize_dist(G)
    sf = set(singular_support(Fn))
    sg_shift = {v - epsf for v in singular_support(Gn)}
    if sf & sg_shift:
        raise EpsilonTooLarge(f"eps={epsf} collides singular supports at "
                              f"{sorted(sf & sg_shift)}")
    eps_float = float(epsf)
    lo, hi = float(t.a) + cfg.guard, float(t.b) - cfg.guard
    total = 0j
    cuts = [float(b) for b in Fn.breakpoints] + \
           [float(b - epsf) for b in Gn.breakpoints]
    for (s, e) in _segments(lo, hi, cuts):
        mid = (s + e) / 2.0
        fp = _piece_at(Fn, mid)
        gp = _piece_at(Gn, mid + eps_float)
        if fp == const(0) or gp == const(0):
            continue
        total += _panel_integral(
            lambda xs: (eval_num(fp, xs) * eval_num(gp, xs + eps_float)
                        * bump_values(t, xs, cfg.guard)),
            s, e, cfg.nodes)
    for a in Fn.atoms + Fn.inexact_atoms:
        w = float(a.w)
        if not (lo < w < hi):
            continue
        gp = _piece_at(Gn, float(a.w + epsf))
        fn = lambda z: eval_num(gp, z + eps_float) * bump_analytic(t, z)
        d = _cauchy_deriv(fn, w, a.k, _atom_radius(w, float(t.a), float(t.b)))
        total += complex(a.coeff) * (-1) ** a.k * d
    for a in Gn.atoms + Gn.inexact_atoms:
        wv = a.w - epsf
        w = float(wv)
        if not (lo < w < hi):
            continue
        fp = _piece_at(Fn, w)
        fn = lambda z: eval_num(fp, z) * bump_analytic(t, z)
        d = _cauchy_deriv(fn, w, a.k, _atom_radius(w, float(t.a), float(t.b)))
        total += complex(a.coeff) * (-1) ** a.k * d
    return total


def star_oracle(F: GenDist, G: GenDist, t: TestFunction,
                cfg: Optional[QuadratureConfig] = None,
                direction: int = 1) -> complex:
    """Extrapolated eps -> 0 limit of <F·G^eps, t> along cfg.eps_schedule.

    direction=-1 translates the other way (the mirrored product's limit).
    The default Richardson step assumes the leading error is linear in eps
    and combines the last two schedule values.
    """
    cfg = cfg or DEFAULT_CONFIG
    vals = [epsilon_product_action(F, G, t, direction * e, cfg)
            for e in cfg.eps_schedule]
    if cfg.extrapolation == "last-value" or len(vals) < 2:
        return vals[-1]
    e1, e2 = (float(direction * cfg.eps_schedule[-2]),
              float(direction * cfg.eps_schedule[-1]))
    v1, v2 = vals[-2], vals[-1]
    return (e1 * v2 - e2 * v1) / (e1 - e2)

"""Canonical representation of piecewise-smooth functions plus finite
delta combinations, with their distributional calculus.

A ``GenDist`` is a regular part (strictly ascending rational breakpoints
x_1 < ... < x_N with N+1 smooth pieces, piece k governing the open interval
]x_k, x_{k+1}[ where x_0 = -inf and x_{N+1} = +inf) together with a finite
list of delta atoms C·delta^(k)(x - w).  Every atom location is also a
breakpoint, at most one atom exists per (location, order), and normalization
removes breakpoints that carry no atom and join provably equal pieces.

Coefficients stay exact.  When an operation needs a pointwise value that has
no exact form (say exp(1)), the resulting atom is carried separately as an
``InexactAtom`` with a floating coefficient; exact-equality verdicts refuse
to say Equal in its presence.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DomainError, ShapeError, UnsupportedPiece
from .expr import (Const, Cos, Exp, Power, Product, Quotient, Sin, Sum, Var,
                   SmoothExpr, Verdict, ZERO, const, diff_expr, eval_exact,
                   eval_expr, expr_equal, expr_from_poly, poly_normal_form,
                   product_of, shift_expr, sum_of, worst_verdict)
from .scalars import ComplexRational, ScalarLike, as_fraction

_NODE_TYPES = (Const, Var, Sum, Product, Power, Quotient, Exp, Sin, Cos)


def as_expr(v) -> SmoothExpr:
    if isinstance(v, _NODE_TYPES):
        return v
    return const(v)


@dataclass(frozen=True)
class DeltaAtom:
    """One term coeff·delta^(k)(x - w) with an exact coefficient."""
    w: Fraction
    k: int
    coeff: ComplexRational


@dataclass(frozen=True)
class InexactAtom:
    """Same shape as DeltaAtom but the coefficient is a float, produced when
    a jump or derivative value had no exact evaluation."""
    w: Fraction
    k: int
    coeff: complex


@dataclass(frozen=True)
class PiecewiseSmooth:
    breakpoints: Tuple[Fraction, ...]
    pieces: Tuple[SmoothExpr, ...]


@dataclass(frozen=True)
class GenDist:
    regular: PiecewiseSmooth
    atoms: Tuple[DeltaAtom, ...]
    inexact_atoms: Tuple[InexactAtom, ...] = ()

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return self.regular.breakpoints

    @property
    def pieces(self) -> Tuple[SmoothExpr, ...]:
        return self.regular.pieces


# ---------------------------------------------------------------------------
# assembly and normalization


def _merge_exact(atoms: Iterable[DeltaAtom]) -> List[DeltaAtom]:
    acc: dict[Tuple[Fraction, int], ComplexRational] = {}
    for a in atoms:
        key = (a.w, a.k)
        acc[key] = acc.get(key, ComplexRational.of(0)) + a.coeff
    return [DeltaAtom(w, k, c) for (w, k), c in sorted(acc.items())
            if not c.is_zero]


def _merge_inexact(atoms: Iterable[InexactAtom]) -> List[InexactAtom]:
    acc: dict[Tuple[Fraction, int], complex] = {}
    for a in atoms:
        key = (a.w, a.k)
        acc[key] = acc.get(key, 0j) + complex(a.coeff)
    return [InexactAtom(w, k, c) for (w, k), c in sorted(acc.items())
            if c != 0]


def _piece_interval(breaks: Sequence[Fraction], i: int
                    ) -> Tuple[Optional[Fraction], Optional[Fraction]]:
    lo = breaks[i - 1] if i >= 1 else None
    hi = breaks[i] if i < len(breaks) else None
    return lo, hi


def _assemble(breakpoints: Sequence[Fraction], pieces: Sequence[SmoothExpr],
              atoms: Iterable[DeltaAtom] = (), inexact: Iterable[InexactAtom] = (),
              normalize: bool = True) -> GenDist:
    breaks = [as_fraction(b) for b in breakpoints]
    ps = [as_expr(p) for p in pieces]
    if len(ps) != len(breaks) + 1:
        raise ShapeError(f"{len(breaks)} breakpoints require {len(breaks)+1} "
                         f"pieces, got {len(ps)}")
    if any(breaks[i] >= breaks[i + 1] for i in range(len(breaks) - 1)):
        raise ShapeError("breakpoints must be strictly ascending")
    ea = _merge_exact(atoms)
    ia = _merge_inexact(inexact)
    for a in ea + ia:
        if a.k < 0:
            raise ShapeError("atom order must be >= 0")
    # every atom location must be a breakpoint; pad by duplicating the piece
    for w in sorted({a.w for a in ea} | {a.w for a in ia}):
        pos = bisect.bisect_left(breaks, w)
        if pos == len(breaks) or breaks[pos] != w:
            breaks.insert(pos, w)
            ps.insert(pos, ps[pos])
    if normalize:
        atom_locs = {a.w for a in ea} | {a.w for a in ia}
        i = 0
        while i < len(breaks):
            if breaks[i] in atom_locs:
                i += 1
                continue
            if ps[i] == ps[i + 1]:
                merged = True
            else:
                lo = breaks[i - 1] if i >= 1 else None
                hi = breaks[i + 1] if i + 1 < len(breaks) else None
                merged = expr_equal(ps[i], ps[i + 1], (lo, hi)) is Verdict.EQUAL
            if merged:
                del breaks[i]
                del ps[i + 1]
            else:
                i += 1
    return GenDist(PiecewiseSmooth(tuple(breaks), tuple(ps)), tuple(ea), tuple(ia))


def normalize_dist(F: GenDist) -> GenDist:
    return _assemble(F.breakpoints, F.pieces, F.atoms, F.inexact_atoms,
                     normalize=True)


# ---------------------------------------------------------------------------
# constructors


def make_piecewise(breakpoints: Sequence, pieces: Sequence) -> GenDist:
    """Atom-free piecewise function; normalized."""
    return _assemble(breakpoints, pieces)


def smooth_dist(e) -> GenDist:
    return _assemble((), (as_expr(e),))


def zero_dist() -> GenDist:
    return _assemble((), (ZERO,))


def heaviside(w=0) -> GenDist:
    return _assemble((as_fraction(w),), (ZERO, const(1)))


def indicator(a, b) -> GenDist:
    return _assemble((as_fraction(a), as_fraction(b)), (ZERO, const(1), ZERO))


def delta_dist(w=0, k: int = 0, c: ScalarLike = 1) -> GenDist:
    atom = DeltaAtom(as_fraction(w), k, ComplexRational.of(c))
    return _assemble((), (ZERO,), (atom,))


def is_zero_dist(F: GenDist) -> bool:
    return (not F.atoms and not F.inexact_atoms
            and all(p == ZERO for p in F.pieces))


# ---------------------------------------------------------------------------
# linear structure


def _repiece(ps: PiecewiseSmooth, newbreaks: Sequence[Fraction]
             ) -> Tuple[SmoothExpr, ...]:
    ob, op = ps.breakpoints, ps.pieces
    out = [op[0]]
    for i in range(1, len(newbreaks) + 1):
        start = newbreaks[i - 1]
        out.append(op[bisect.bisect_right(ob, start)])
    return tuple(out)


def align(F: GenDist, G: GenDist) -> Tuple[GenDist, GenDist]:
    """Rewrite both on the union of their breakpoints (pieces duplicated,
    atoms untouched).  Results are valid but deliberately not normalized."""
    union = sorted(set(F.breakpoints) | set(G.breakpoints))
    Fa = GenDist(PiecewiseSmooth(tuple(union), _repiece(F.regular, union)),
                 F.atoms, F.inexact_atoms)
    Ga = GenDist(PiecewiseSmooth(tuple(union), _repiece(G.regular, union)),
                 G.atoms, G.inexact_atoms)
    return Fa, Ga


def add(F: GenDist, G: GenDist) -> GenDist:
    Fa, Ga = align(F, G)
    pieces = tuple(sum_of(p, q) for p, q in zip(Fa.pieces, Ga.pieces))
    return _assemble(Fa.breakpoints, pieces, Fa.atoms + Ga.atoms,
                     Fa.inexact_atoms + Ga.inexact_atoms)


def scale(c: ScalarLike, F: GenDist) -> GenDist:
    cv = ComplexRational.of(c)
    pieces = tuple(product_of(Const(cv), p) for p in F.pieces)
    atoms = tuple(DeltaAtom(a.w, a.k, cv * a.coeff) for a in F.atoms)
    inex = tuple(InexactAtom(a.w, a.k, complex(cv) * a.coeff)
                 for a in F.inexact_atoms)
    return _assemble(F.breakpoints, pieces, atoms, inex)


def sub(F: GenDist, G: GenDist) -> GenDist:
    return add(F, scale(-1, G))


# ---------------------------------------------------------------------------
# atom expansion


def smooth_times_atom(g: SmoothExpr, a: Union[DeltaAtom, InexactAtom]
                      ) -> List[Union[DeltaAtom, InexactAtom]]:
    """Expand g·delta^(k)(x-w) into plain atoms.

    The expansion is sum over j of (k choose j)(-1)^j g^(j)(w)
    delta^(k-j)(x-w); equivalently the unique atom list with the same weak
    action as delta^(k)(·-w) applied to g·t.  Derivative values without an
    exact evaluation produce InexactAtom entries.
    """
    g = as_expr(g)
    out: List[Union[DeltaAtom, InexactAtom]] = []
    d = g
    for j in range(a.k + 1):
        if j > 0:
            d = diff_expr(d)
        v = eval_exact(d, a.w)
        factor = math.comb(a.k, j) * (-1) ** j
        if isinstance(a, DeltaAtom) and v is not None:
            coeff = a.coeff * v * factor
            if not coeff.is_zero:
                out.append(DeltaAtom(a.w, a.k - j, coeff))
        else:
            vn = complex(v) if v is not None else eval_expr(d, a.w)
            cn = complex(a.coeff) * vn * factor
            if cn != 0:
                out.append(InexactAtom(a.w, a.k - j, cn))
    return out


def smooth_mul(g, F: GenDist) -> GenDist:
    """Multiply by a globally smooth expression."""
    g = as_expr(g)
    pieces = tuple(product_of(g, p) for p in F.pieces)
    ea: List[DeltaAtom] = []
    ia: List[InexactAtom] = []
    for a in F.atoms + F.inexact_atoms:
        for b in smooth_times_atom(g, a):
            (ea if isinstance(b, DeltaAtom) else ia).append(b)
    return _assemble(F.breakpoints, pieces, ea, ia)


# ---------------------------------------------------------------------------
# calculus


def _jump_value(left: SmoothExpr, right: SmoothExpr, w: Fraction
                ) -> Union[ComplexRational, complex, None]:
    """Right limit minus left limit at w; None when zero, exact when possible."""
    if left == right:
        return None
    lv = eval_exact(left, w)
    rv = eval_exact(right, w)
    if lv is not None and rv is not None:
        d = rv - lv
        return None if d.is_zero else d
    lf = complex(lv) if lv is not None else eval_expr(left, w)
    rf = complex(rv) if rv is not None else eval_expr(right, w)
    d = rf - lf
    return None if d == 0 else d


def differentiate(F: GenDist) -> GenDist:
    """Distributional derivative: pieces differentiate, each breakpoint with
    a jump gains a delta, existing atoms move up one order."""
    pieces = tuple(diff_expr(p) for p in F.pieces)
    ea = [DeltaAtom(a.w, a.k + 1, a.coeff) for a in F.atoms]
    ia = [InexactAtom(a.w, a.k + 1, a.coeff) for a in F.inexact_atoms]
    for i, w in enumerate(F.breakpoints):
        d = _jump_value(F.pieces[i], F.pieces[i + 1], w)
        if d is None:
            continue
        if isinstance(d, ComplexRational):
            ea.append(DeltaAtom(w, 0, d))
        else:
            ia.append(InexactAtom(w, 0, d))
    return _assemble(F.breakpoints, pieces, ea, ia)


def _poly_eval(coeffs: Sequence[ComplexRational], x: Fraction) -> ComplexRational:
    acc = ComplexRational.of(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def antiderivative(F: GenDist) -> GenDist:
    """Exact antiderivative for polynomial-piece inputs.

    differentiate(result) reproduces F.  Atoms of order k >= 1 drop to order
    k-1; order-0 atoms become jumps of the regular part.  The regular part is
    continuous elsewhere and the leftmost piece has zero constant term.
    """
    polys: List[Tuple[ComplexRational, ...]] = []
    for p in F.pieces:
        nf = poly_normal_form(p)
        if nf is None:
            raise UnsupportedPiece("antiderivative requires polynomial pieces")
        polys.append(nf)
    for a in F.inexact_atoms:
        if a.k == 0:
            raise DomainError("order-0 atom with inexact coefficient has no "
                              "exact antiderivative")
    prims = [tuple([ComplexRational.of(0)] +
                   [c / (i + 1) for i, c in enumerate(nf)]) for nf in polys]
    jumps = {a.w: a.coeff for a in F.atoms if a.k == 0}
    consts = [ComplexRational.of(0)]
    for i, b in enumerate(F.breakpoints):
        c = consts[i] + _poly_eval(prims[i], b) - _poly_eval(prims[i + 1], b)
        c = c + jumps.get(b, ComplexRational.of(0))
        consts.append(c)
    pieces = []
    for prim, c in zip(prims, consts):
        cs = list(prim)
        cs[0] = cs[0] + c
        pieces.append(expr_from_poly(cs))
    ea = [DeltaAtom(a.w, a.k - 1, a.coeff) for a in F.atoms if a.k >= 1]
    ia = [InexactAtom(a.w, a.k - 1, a.coeff) for a in F.inexact_atoms]
    return _assemble(F.breakpoints, pieces, ea, ia)


def translate(F: GenDist, h) -> GenDist:
    """x ↦ x + h: features move left by h (breakpoints and atom locations
    shift by -h), pieces get the substituted variable."""
    hf = as_fraction(h)
    breaks = tuple(b - hf for b in F.breakpoints)
    pieces = tuple(shift_expr(p, hf) for p in F.pieces)
    atoms = tuple(DeltaAtom(a.w - hf, a.k, a.coeff) for a in F.atoms)
    inex = tuple(InexactAtom(a.w - hf, a.k, a.coeff) for a in F.inexact_atoms)
    return _assemble(breaks, pieces, atoms, inex, normalize=False)


# ---------------------------------------------------------------------------
# structure queries


def _has_atom_at(F: GenDist, w: Fraction) -> bool:
    return any(a.w == w for a in F.atoms) or any(a.w == w for a in F.inexact_atoms)


def singular_support(F: GenDist) -> List[Fraction]:
    """Breakpoints carrying an atom or a non-provably-smooth piece junction."""
    out = []
    for i, w in enumerate(F.breakpoints):
        if _has_atom_at(F, w):
            out.append(w)
            continue
        lo = F.breakpoints[i - 1] if i >= 1 else None
        hi = F.breakpoints[i + 1] if i + 1 < len(F.breakpoints) else None
        if expr_equal(F.pieces[i], F.pieces[i + 1], (lo, hi)) is not Verdict.EQUAL:
            out.append(w)
    return out


_INEXACT_RTOL = 1e-9


def equal_dist(F: GenDist, G: GenDist) -> Verdict:
    """Compare after normalization and alignment: atoms exactly, pieces by
    expr_equal on their interval; the worst verdict wins.  Inexact atoms can
    at best leave the verdict Unknown."""
    Fa, Ga = align(normalize_dist(F), normalize_dist(G))
    verdict = Verdict.EQUAL
    fe = {(a.w, a.k): a.coeff for a in Fa.atoms}
    ge = {(a.w, a.k): a.coeff for a in Ga.atoms}
    fi = {(a.w, a.k): a.coeff for a in Fa.inexact_atoms}
    gi = {(a.w, a.k): a.coeff for a in Ga.inexact_atoms}
    for key in set(fe) | set(ge):
        if key in fi or key in gi:
            continue  # handled below with float tolerance
        if fe.get(key, ComplexRational.of(0)) != ge.get(key, ComplexRational.of(0)):
            return Verdict.UNEQUAL
    for key in set(fi) | set(gi):
        zero = ComplexRational.of(0)
        a = complex(fe.get(key, zero)) + fi.get(key, 0j)
        b = complex(ge.get(key, zero)) + gi.get(key, 0j)
        if abs(a - b) > _INEXACT_RTOL * (1 + max(abs(a), abs(b))):
            return Verdict.UNEQUAL
        verdict = worst_verdict(verdict, Verdict.UNKNOWN)
    for i in range(len(Fa.pieces)):
        lo, hi = _piece_interval(Fa.breakpoints, i)
        verdict = worst_verdict(verdict, expr_equal(Fa.pieces[i], Ga.pieces[i],
                                                    (lo, hi)))
        if verdict is Verdict.UNEQUAL:
            return verdict
    return verdict

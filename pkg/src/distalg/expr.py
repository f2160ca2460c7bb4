"""Symbolic one-variable smooth expressions.

The node set {constant, x, sum, product, integer power, quotient, exp, sin,
cos} is closed under differentiation and products, which is all the rest of
the package needs.  Constructors (``sum_of``, ``product_of``, ...) do light
canonicalization: constant folding, like-term collection, power grouping,
and a deterministic factor order.  They never attempt general
simplification; equality beyond the polynomial subset is a semi-decision
(see ``expr_equal``).

Coefficients are exact ``ComplexRational`` values.  Floating point enters
only through ``eval_expr`` / ``eval_num``.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError
from .scalars import ComplexRational, ScalarLike, as_fraction

# ---------------------------------------------------------------------------
# node types


@dataclass(frozen=True)
class Const:
    value: ComplexRational


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Sum:
    terms: Tuple["SmoothExpr", ...]


@dataclass(frozen=True)
class Product:
    factors: Tuple["SmoothExpr", ...]


@dataclass(frozen=True)
class Power:
    base: "SmoothExpr"
    n: int  # constructors only emit n >= 2


@dataclass(frozen=True)
class Quotient:
    num: "SmoothExpr"
    den: "SmoothExpr"


@dataclass(frozen=True)
class Exp:
    arg: "SmoothExpr"


@dataclass(frozen=True)
class Sin:
    arg: "SmoothExpr"


@dataclass(frozen=True)
class Cos:
    arg: "SmoothExpr"


SmoothExpr = Union[Const, Var, Sum, Product, Power, Quotient, Exp, Sin, Cos]

X = Var()
ZERO = Const(ComplexRational())
ONE = Const(ComplexRational(Fraction(1)))


def const(v: ScalarLike) -> Const:
    return Const(ComplexRational.of(v))


# ---------------------------------------------------------------------------
# deterministic ordering of subexpressions


@functools.lru_cache(maxsize=1 << 16)
def _ser(e: SmoothExpr) -> str:
    if isinstance(e, Const):
        return f"C[{e.value}]"
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Sum):
        return "S(" + ",".join(_ser(t) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "P(" + ",".join(_ser(f) for f in e.factors) + ")"
    if isinstance(e, Power):
        return f"W({_ser(e.base)},{e.n})"
    if isinstance(e, Quotient):
        return f"Q({_ser(e.num)},{_ser(e.den)})"
    if isinstance(e, Exp):
        return f"exp({_ser(e.arg)})"
    if isinstance(e, Sin):
        return f"sin({_ser(e.arg)})"
    if isinstance(e, Cos):
        return f"cos({_ser(e.arg)})"
    raise TypeError(f"not a SmoothExpr: {e!r}")


def _order_key(e: SmoothExpr):
    # constants first, everything else by serialized form
    return (0 if isinstance(e, Const) else 1, _ser(e))


# ---------------------------------------------------------------------------
# smart constructors


def _coeff_core(e: SmoothExpr) -> Tuple[ComplexRational, SmoothExpr]:
    """Split e into (constant coefficient, remaining factor)."""
    if isinstance(e, Const):
        return e.value, ONE
    if isinstance(e, Product) and isinstance(e.factors[0], Const):
        rest = e.factors[1:]
        core = rest[0] if len(rest) == 1 else Product(rest)
        return e.factors[0].value, core
    return ComplexRational.of(1), e


def _with_coeff(c: ComplexRational, core: SmoothExpr) -> SmoothExpr:
    if c.is_zero:
        return ZERO
    if isinstance(core, Const):  # only ONE reaches here
        return Const(c * core.value)
    if c == ComplexRational.of(1):
        return core
    if isinstance(core, Product):
        return Product((Const(c),) + core.factors)
    return Product((Const(c), core))


def sum_of(*terms: SmoothExpr) -> SmoothExpr:
    """Sum with flattening, constant folding and like-term collection."""
    flat: list[SmoothExpr] = []
    stack = list(terms)
    while stack:
        t = stack.pop(0)
        if isinstance(t, Sum):
            stack = list(t.terms) + stack
        else:
            flat.append(t)
    acc = ComplexRational.of(0)
    by_core: dict[SmoothExpr, ComplexRational] = {}
    order: list[SmoothExpr] = []
    for t in flat:
        c, core = _coeff_core(t)
        if isinstance(core, Const):
            acc = acc + c * core.value
            continue
        if core not in by_core:
            by_core[core] = c
            order.append(core)
        else:
            by_core[core] = by_core[core] + c
    out = [_with_coeff(by_core[core], core) for core in sorted(order, key=_order_key)
           if not by_core[core].is_zero]
    if not acc.is_zero:
        out.insert(0, Const(acc))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Sum(tuple(out))


def _base_exp(e: SmoothExpr) -> Tuple[SmoothExpr, int]:
    if isinstance(e, Power):
        return e.base, e.n
    return e, 1


def product_of(*factors: SmoothExpr) -> SmoothExpr:
    """Product with flattening, constant folding and power grouping."""
    flat: list[SmoothExpr] = []
    stack = list(factors)
    while stack:
        f = stack.pop(0)
        if isinstance(f, Product):
            stack = list(f.factors) + stack
        else:
            flat.append(f)
    coeff = ComplexRational.of(1)
    by_base: dict[SmoothExpr, int] = {}
    order: list[SmoothExpr] = []
    for f in flat:
        if isinstance(f, Const):
            if f.value.is_zero:
                return ZERO
            coeff = coeff * f.value
            continue
        base, n = _base_exp(f)
        if base not in by_base:
            by_base[base] = n
            order.append(base)
        else:
            by_base[base] += n
    out: list[SmoothExpr] = []
    for base in sorted(order, key=_order_key):
        n = by_base[base]
        if n == 0:
            continue
        out.append(base if n == 1 else power_of(base, n))
    if not out:
        return Const(coeff)
    if (len(out) == 1 and isinstance(out[0], Sum)
            and coeff != ComplexRational.of(1)):
        # scalar times sum distributes, so c*(a+b) and c*a + c*b coincide
        return sum_of(*(product_of(Const(coeff), t) for t in out[0].terms))
    if coeff != ComplexRational.of(1):
        out.insert(0, Const(coeff))
    if len(out) == 1:
        return out[0]
    return Product(tuple(out))


def power_of(base: SmoothExpr, n: int) -> SmoothExpr:
    if n == 0:
        return ONE
    if n == 1:
        return base
    if n < 0:
        return quotient_of(ONE, power_of(base, -n))
    if isinstance(base, Const):
        return Const(base.value ** n)
    if isinstance(base, Power):
        return power_of(base.base, base.n * n)
    if isinstance(base, Product):
        return product_of(*(power_of(f, n) for f in base.factors))
    return Power(base, n)


def quotient_of(num: SmoothExpr, den: SmoothExpr) -> SmoothExpr:
    if isinstance(den, Const):
        if den.value.is_zero:
            raise ZeroDivisionError("zero denominator in quotient")
        return product_of(Const(ComplexRational.of(1) / den.value), num)
    if num == ZERO:
        return ZERO
    if isinstance(num, Quotient) or isinstance(den, Quotient):
        na, nb = (num.num, num.den) if isinstance(num, Quotient) else (num, ONE)
        da, db = (den.num, den.den) if isinstance(den, Quotient) else (den, ONE)
        num2 = product_of(na, db)
        den2 = product_of(nb, da)
        if isinstance(den2, Const):
            return quotient_of(num2, den2)
        return Quotient(num2, den2)
    return Quotient(num, den)


def exp_of(arg: SmoothExpr) -> SmoothExpr:
    if arg == ZERO:
        return ONE
    return Exp(arg)


def sin_of(arg: SmoothExpr) -> SmoothExpr:
    if arg == ZERO:
        return ZERO
    return Sin(arg)


def cos_of(arg: SmoothExpr) -> SmoothExpr:
    if arg == ZERO:
        return ONE
    return Cos(arg)


def neg(e: SmoothExpr) -> SmoothExpr:
    return product_of(const(-1), e)


def sub_expr(a: SmoothExpr, b: SmoothExpr) -> SmoothExpr:
    return sum_of(a, neg(b))


# ---------------------------------------------------------------------------
# differentiation


def diff_expr(e: SmoothExpr) -> SmoothExpr:
    """Exact symbolic derivative; total on the node set."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Sum):
        return sum_of(*(diff_expr(t) for t in e.terms))
    if isinstance(e, Product):
        fs = e.factors
        terms = []
        for i in range(len(fs)):
            terms.append(product_of(*fs[:i], diff_expr(fs[i]), *fs[i + 1:]))
        return sum_of(*terms)
    if isinstance(e, Power):
        return product_of(const(e.n), power_of(e.base, e.n - 1), diff_expr(e.base))
    if isinstance(e, Quotient):
        num = sub_expr(product_of(diff_expr(e.num), e.den),
                       product_of(e.num, diff_expr(e.den)))
        return quotient_of(num, power_of(e.den, 2))
    if isinstance(e, Exp):
        return product_of(diff_expr(e.arg), e)
    if isinstance(e, Sin):
        return product_of(diff_expr(e.arg), cos_of(e.arg))
    if isinstance(e, Cos):
        return product_of(const(-1), diff_expr(e.arg), sin_of(e.arg))
    raise TypeError(f"not a SmoothExpr: {e!r}")


def diff_n(e: SmoothExpr, n: int) -> SmoothExpr:
    for _ in range(n):
        e = diff_expr(e)
    return e


# ---------------------------------------------------------------------------
# evaluation

QUOTIENT_GUARD = 1e-300


def eval_num(e: SmoothExpr, x, guard: float = QUOTIENT_GUARD):
    """Numerically evaluate at x (scalar or ndarray, real or complex).

    Returns complex values; raises DomainError when a quotient denominator
    falls below the guard in magnitude.
    """
    if isinstance(x, Fraction):
        x = float(x)
    elif isinstance(x, ComplexRational):
        x = complex(x)
    xa = np.asarray(x, dtype=complex)
    scalar = xa.ndim == 0

    def rec(e: SmoothExpr):
        if isinstance(e, Const):
            return np.full(xa.shape, complex(e.value)) if not scalar else complex(e.value)
        if isinstance(e, Var):
            return xa
        if isinstance(e, Sum):
            out = rec(e.terms[0])
            for t in e.terms[1:]:
                out = out + rec(t)
            return out
        if isinstance(e, Product):
            out = rec(e.factors[0])
            for f in e.factors[1:]:
                out = out * rec(f)
            return out
        if isinstance(e, Power):
            return rec(e.base) ** e.n
        if isinstance(e, Quotient):
            den = rec(e.den)
            if np.min(np.abs(den)) <= guard:
                raise DomainError("quotient denominator below evaluation guard")
            return rec(e.num) / den
        if isinstance(e, Exp):
            return np.exp(rec(e.arg))
        if isinstance(e, Sin):
            return np.sin(rec(e.arg))
        if isinstance(e, Cos):
            return np.cos(rec(e.arg))
        raise TypeError(f"not a SmoothExpr: {e!r}")

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        out = rec(e)
    if scalar:
        return complex(out)
    return np.asarray(out, dtype=complex)


def eval_exact(e: SmoothExpr, x: ScalarLike) -> Optional[ComplexRational]:
    """Exact evaluation when the value is provably a complex rational.

    Structural zeros are honored: exp(0) = 1, sin(0) = 0, cos(0) = 1 when the
    argument evaluates exactly to zero.  Returns None when no exact value can
    be produced; raises DomainError at a quotient pole.
    """
    xv = ComplexRational.of(x)

    def rec(e: SmoothExpr) -> Optional[ComplexRational]:
        if isinstance(e, Const):
            return e.value
        if isinstance(e, Var):
            return xv
        if isinstance(e, Sum):
            acc = ComplexRational.of(0)
            for t in e.terms:
                v = rec(t)
                if v is None:
                    return None
                acc = acc + v
            return acc
        if isinstance(e, Product):
            acc = ComplexRational.of(1)
            for f in e.factors:
                v = rec(f)
                if v is None:
                    return None
                acc = acc * v
            return acc
        if isinstance(e, Power):
            v = rec(e.base)
            if v is None:
                return None
            if v.is_zero and e.n < 0:
                raise DomainError("exact evaluation at a pole")
            return v ** e.n
        if isinstance(e, Quotient):
            d = rec(e.den)
            if d is not None and d.is_zero:
                raise DomainError("exact evaluation at a pole")
            n = rec(e.num)
            if n is None or d is None:
                return None
            return n / d
        if isinstance(e, (Exp, Sin, Cos)):
            a = rec(e.arg)
            if a is None or not a.is_zero:
                return None
            return ComplexRational.of(0) if isinstance(e, Sin) else ComplexRational.of(1)
        raise TypeError(f"not a SmoothExpr: {e!r}")

    return rec(e)


def eval_expr(e: SmoothExpr, x0) -> complex:
    """Evaluate at a real point, exactly on polynomial input, numerically
    otherwise.  The result is a complex float either way."""
    p = poly_normal_form(e)
    if p is not None and not isinstance(x0, complex):
        try:
            xf = as_fraction(x0)
        except (TypeError, ValueError):
            xf = None
        if xf is not None:
            acc = ComplexRational.of(0)
            for c in reversed(p):
                acc = acc * xf + c
            return complex(acc)
    return eval_num(e, x0)


# ---------------------------------------------------------------------------
# polynomial normal form

PolyCoeffs = Tuple[ComplexRational, ...]


def _poly_trim(cs: Sequence[ComplexRational]) -> PolyCoeffs:
    out = list(cs)
    while out and out[-1].is_zero:
        out.pop()
    return tuple(out)


def _poly_add(a: PolyCoeffs, b: PolyCoeffs) -> PolyCoeffs:
    n = max(len(a), len(b))
    z = ComplexRational.of(0)
    return _poly_trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z)
                       for i in range(n)])


def _poly_mul(a: PolyCoeffs, b: PolyCoeffs) -> PolyCoeffs:
    if not a or not b:
        return ()
    z = ComplexRational.of(0)
    out = [z] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return _poly_trim(out)


def _poly_divmod(a: PolyCoeffs, b: PolyCoeffs) -> Tuple[PolyCoeffs, PolyCoeffs]:
    """Exact division with remainder; b must be nonzero."""
    rem = list(a)
    q = [ComplexRational.of(0)] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(rem) >= len(b) and _poly_trim(rem):
        rem = list(_poly_trim(rem))
        if len(rem) < len(b):
            break
        k = len(rem) - len(b)
        c = rem[-1] / lead
        q[k] = c
        for i, bi in enumerate(b):
            rem[k + i] = rem[k + i] - c * bi
        rem.pop()
    return _poly_trim(q), _poly_trim(rem)


def poly_normal_form(e: SmoothExpr) -> Optional[PolyCoeffs]:
    """Dense ascending coefficients when e is (provably) a polynomial with
    exact coefficients; None otherwise.  The zero polynomial is ()."""
    if isinstance(e, Const):
        return () if e.value.is_zero else (e.value,)
    if isinstance(e, Var):
        return (ComplexRational.of(0), ComplexRational.of(1))
    if isinstance(e, Sum):
        out: PolyCoeffs = ()
        for t in e.terms:
            p = poly_normal_form(t)
            if p is None:
                return None
            out = _poly_add(out, p)
        return out
    if isinstance(e, Product):
        out = (ComplexRational.of(1),)
        for f in e.factors:
            p = poly_normal_form(f)
            if p is None:
                return None
            out = _poly_mul(out, p)
        return out
    if isinstance(e, Power):
        if e.n < 0:
            return None
        p = poly_normal_form(e.base)
        if p is None:
            return None
        out = (ComplexRational.of(1),)
        for _ in range(e.n):
            out = _poly_mul(out, p)
        return out
    if isinstance(e, Quotient):
        dp = poly_normal_form(e.den)
        if dp is None:
            return None
        if not dp:
            raise DomainError("zero-polynomial denominator")
        np_ = poly_normal_form(e.num)
        if np_ is None:
            return None
        q, r = _poly_divmod(np_, dp)
        if r:
            return None  # genuine rational function
        return q
    if isinstance(e, (Exp, Sin, Cos)):
        return None
    raise TypeError(f"not a SmoothExpr: {e!r}")


def expr_from_poly(coeffs: Sequence[ScalarLike]) -> SmoothExpr:
    """Build the expression sum_i coeffs[i]·x^i."""
    return sum_of(*(product_of(const(c), power_of(X, i))
                    for i, c in enumerate(coeffs)))


# ---------------------------------------------------------------------------
# equality (tri-state)


class Verdict(enum.Enum):
    EQUAL = 0
    UNKNOWN = 1
    UNEQUAL = 2

    def __str__(self) -> str:
        return {Verdict.EQUAL: "Equal", Verdict.UNKNOWN: "Unknown",
                Verdict.UNEQUAL: "Unequal"}[self]


def worst_verdict(*vs: Verdict) -> Verdict:
    return max(vs, key=lambda v: v.value, default=Verdict.EQUAL)


_SAMPLE_WINDOW = 8.0


def _sample_points(lo: Optional[Fraction], hi: Optional[Fraction], n: int) -> np.ndarray:
    if lo is None and hi is None:
        a, b = -_SAMPLE_WINDOW / 2, _SAMPLE_WINDOW / 2
    elif lo is None:
        b = float(hi)
        a = b - _SAMPLE_WINDOW
    elif hi is None:
        a = float(lo)
        b = a + _SAMPLE_WINDOW
    else:
        a, b = float(lo), float(hi)
    mid, half = (a + b) / 2, (b - a) / 2
    # Chebyshev nodes: interior, irrational spacing, no endpoint contact
    ks = np.arange(n)
    return mid + half * np.cos(np.pi * (2 * ks + 1) / (2 * n))


def _safe_values(e: SmoothExpr, xs: np.ndarray) -> np.ndarray:
    out = np.full(xs.shape, np.nan + 0j, dtype=complex)
    try:
        out = eval_num(e, xs)
    except DomainError:
        for i, x in enumerate(xs):
            try:
                out[i] = eval_num(e, float(x))
            except DomainError:
                out[i] = np.nan
    return out


def _term_magnitude(e: SmoothExpr, xs: np.ndarray,
                    values: np.ndarray) -> np.ndarray:
    """Pointwise size of the largest intermediate term.  A sum of huge terms
    can evaluate to a tiny value with only round-off accuracy, so separation
    must be judged against the terms, not the cancelled result."""
    if not isinstance(e, Sum):
        return np.abs(values)
    total = np.zeros(xs.shape)
    for t in e.terms:
        total = total + np.abs(_safe_values(t, xs))
    return np.where(np.isfinite(total), total, np.abs(values))


def expr_equal(e1: SmoothExpr, e2: SmoothExpr,
               interval: Tuple[Optional[Fraction], Optional[Fraction]] = (None, None),
               samples: int = 32, rtol: float = 1e-9) -> Verdict:
    """Equal iff proven (structural match or polynomial normal forms agree);
    Unequal iff a sample point on the interval separates the two beyond
    tolerance; Unknown otherwise."""
    if e1 == e2:
        return Verdict.EQUAL
    try:
        p = poly_normal_form(sub_expr(e1, e2))
    except DomainError:
        p = None
    if p is not None:
        return Verdict.EQUAL if p == () else Verdict.UNEQUAL
    xs = _sample_points(interval[0], interval[1], samples)
    v1 = _safe_values(e1, xs)
    v2 = _safe_values(e2, xs)
    ok = np.isfinite(v1) & np.isfinite(v2)
    if not np.any(ok):
        return Verdict.UNKNOWN
    gap = np.abs(v1[ok] - v2[ok])
    m1 = _term_magnitude(e1, xs, v1)[ok]
    m2 = _term_magnitude(e2, xs, v2)[ok]
    scale = 1.0 + np.maximum(m1, m2)
    if np.any(gap > rtol * scale):
        return Verdict.UNEQUAL
    return Verdict.UNKNOWN


# ---------------------------------------------------------------------------
# substitution


def subst(e: SmoothExpr, r: SmoothExpr) -> SmoothExpr:
    """Replace the variable with expression r, rebuilding canonically."""
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return r
    if isinstance(e, Sum):
        return sum_of(*(subst(t, r) for t in e.terms))
    if isinstance(e, Product):
        return product_of(*(subst(f, r) for f in e.factors))
    if isinstance(e, Power):
        return power_of(subst(e.base, r), e.n)
    if isinstance(e, Quotient):
        return quotient_of(subst(e.num, r), subst(e.den, r))
    if isinstance(e, Exp):
        return exp_of(subst(e.arg, r))
    if isinstance(e, Sin):
        return sin_of(subst(e.arg, r))
    if isinstance(e, Cos):
        return cos_of(subst(e.arg, r))
    raise TypeError(f"not a SmoothExpr: {e!r}")


def shift_expr(e: SmoothExpr, h: ScalarLike) -> SmoothExpr:
    """x ↦ x + h composition."""
    return subst(e, sum_of(X, const(h)))

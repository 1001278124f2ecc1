"""Double Laplace (x) / Sumudu (y) transform over the expression class.

Images are finite sums of separable terms ``c * R(v) * Q(w)`` with exact
rational functions ``R`` and ``Q``.  The forward map works from the transform
tables; the inverse map is per-variable partial fractions over Q(i) followed
by table lookup.  The Sumudu side reuses the Laplace machinery through
``S[f](w) = (1/w) L[f](1/w)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ArityMismatch, NotSeparable, OutOfClass, OutsideROC, PoleHit
from .expr import COS, NO_TRIG, SIN, Expr, as_fraction, d_dtau, d_dxi, mul
from .poly import (BiPoly, GaussianRational, Poly, content_v, content_w, gcd, lcm,
                   series_quotient, squarefree_part)

__all__ = [
    "RationalFn",
    "TransformTerm",
    "TransformExpr",
    "LinearOperator",
    "forward",
    "laplace_x",
    "sumudu_y",
    "eval_transform",
    "derivative_rule",
    "apply_kernel",
    "inverse",
    "shift_check",
]

ONE_POLY = Poly.const(Fraction(1))


def _poly_str(p: Poly, var: str) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(p.deg, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        mag = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts)


@dataclass(frozen=True)
class RationalFn:
    """Reduced ``num/den`` in one variable, both monic.

    Scalars live in the owning :class:`TransformTerm`, which makes structural
    equality of two normalized functions meaningful.
    """

    num: Poly
    den: Poly
    var: str = "v"

    @staticmethod
    def make(num: Poly, den: Poly, var: str) -> tuple[Fraction, "RationalFn | None"]:
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return Fraction(0), None
        g = gcd(num, den)
        if g.deg > 0:
            num, den = num.exact_div(g), den.exact_div(g)
        scale = Fraction(num.lc()) / Fraction(den.lc())
        return scale, RationalFn(num.monic(), den.monic(), var)

    @staticmethod
    def one(var: str) -> "RationalFn":
        return RationalFn(ONE_POLY, ONE_POLY, var)

    def is_one(self) -> bool:
        return self.num.deg == 0 and self.den.deg == 0

    def __call__(self, z):
        d = self.den(z)
        if d == 0:
            raise PoleHit(f"denominator of {self} vanishes at {self.var} = {z}")
        return self.num(z) / d

    def __str__(self) -> str:
        n = _poly_str(self.num, self.var)
        if self.den.deg == 0:
            return n
        return f"({n})/({_poly_str(self.den, self.var)})"


@dataclass(frozen=True)
class TransformTerm:
    coeff: Fraction
    rv: RationalFn
    qw: RationalFn

    def __str__(self) -> str:
        parts = [] if self.coeff == 1 else [str(self.coeff)]
        parts += [f"{f}" if f.den.deg == 0 and f.num.deg == 0 else f"[{f}]"
                  for f in (self.rv, self.qw) if not f.is_one()]
        return "*".join(parts) or "1"


Roc = tuple[Fraction | None, Fraction | None]


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _roc_join(r1: Roc, r2: Roc) -> Roc:
    return _max_opt(r1[0], r2[0]), _max_opt(r1[1], r2[1])


@dataclass(frozen=True)
class TransformExpr:
    """Sum of separable terms plus a region of convergence.

    ``roc = (a_max, b_max)`` means the image is valid for ``v > a_max`` and
    ``1/w > b_max``; ``None`` leaves that side unconstrained.  Equality is
    exact equality of the represented bivariate rational functions.
    """

    terms: tuple[TransformTerm, ...] = ()
    roc: Roc = (None, None)

    @staticmethod
    def build(items: Iterable[tuple[Fraction, RationalFn | None, RationalFn | None]],
              roc: Roc = (None, None)) -> "TransformExpr":
        acc: dict[tuple[RationalFn, RationalFn], Fraction] = {}
        order: list[tuple[RationalFn, RationalFn]] = []
        for c, rv, qw in items:
            if not c or rv is None or qw is None:
                continue
            k = (rv, qw)
            if k not in acc:
                acc[k] = Fraction(0)
                order.append(k)
            acc[k] += c
        terms = tuple(TransformTerm(acc[k], *k) for k in order if acc[k])
        return TransformExpr(terms, roc)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "TransformExpr") -> "TransformExpr":
        return TransformExpr.build(
            [(t.coeff, t.rv, t.qw) for t in self.terms + other.terms],
            _roc_join(self.roc, other.roc))

    def __neg__(self) -> "TransformExpr":
        return self.scale(-1)

    def __sub__(self, other: "TransformExpr") -> "TransformExpr":
        return self + (-other)

    def scale(self, c) -> "TransformExpr":
        c = as_fraction(c)
        return TransformExpr.build([(c * t.coeff, t.rv, t.qw) for t in self.terms], self.roc)

    def times(self, num_v: Poly = ONE_POLY, den_v: Poly = ONE_POLY,
              num_w: Poly = ONE_POLY, den_w: Poly = ONE_POLY) -> "TransformExpr":
        """Multiply by the separable factor ``(num_v/den_v)(v) * (num_w/den_w)(w)``."""
        items = []
        for t in self.terms:
            sv, rv = RationalFn.make(t.rv.num * num_v, t.rv.den * den_v, "v")
            sw, qw = RationalFn.make(t.qw.num * num_w, t.qw.den * den_w, "w")
            items.append((t.coeff * sv * sw, rv, qw))
        return TransformExpr.build(items, self.roc)

    def is_zero(self) -> bool:
        """Exact identity test by evaluation on a sufficiently large grid."""
        if not self.terms:
            return True
        dens_v = {t.rv.den for t in self.terms}
        dens_w = {t.qw.den for t in self.terms}
        bound_v = sum(d.deg for d in dens_v) + max(t.rv.num.deg for t in self.terms)
        bound_w = sum(d.deg for d in dens_w) + max(t.qw.num.deg for t in self.terms)
        vs = _sample_points(dens_v, bound_v + 1)
        ws = _sample_points(dens_w, bound_w + 1)
        rvals = [[t.rv(v) for v in vs] for t in self.terms]
        qvals = [[t.qw(w) for w in ws] for t in self.terms]
        for a in range(len(vs)):
            for b in range(len(ws)):
                total = sum(t.coeff * rvals[i][a] * qvals[i][b]
                            for i, t in enumerate(self.terms))
                if total:
                    return False
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransformExpr):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("TransformExpr equality is semantic; instances are unhashable")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(t) for t in self.terms).replace("+ -", "- ")


def _sample_points(dens, count: int) -> list[Fraction]:
    pts: list[Fraction] = []
    k = 1
    while len(pts) < count:
        z = Fraction(k, 3)
        if all(d(z) != 0 for d in dens):
            pts.append(z)
        k += 1
    return pts


@dataclass(frozen=True)
class LinearOperator:
    """``sum_l c_l * D^{dx_l}_x D^{dy_l}_y``; each term differentiates in one variable."""

    terms: tuple[tuple[Fraction, int, int], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a linear operator needs at least one term")
        norm = []
        for c, dx, dy in self.terms:
            if dx and dy:
                raise ValueError("mixed derivatives are outside the operator class")
            if dx < 0 or dy < 0:
                raise ValueError("orders must be nonnegative")
            norm.append((as_fraction(c), int(dx), int(dy)))
        object.__setattr__(self, "terms", tuple(norm))

    @property
    def m(self) -> int:
        """Highest x-order: number of boundary conditions at x = 0."""
        return max(dx for _, dx, _ in self.terms)

    @property
    def n(self) -> int:
        """Highest y-order: number of initial conditions at y = 0."""
        return max(dy for _, _, dy in self.terms)

    def kernel_denominator(self) -> BiPoly:
        """``w**n * sum_l c_l v**dx_l w**(-dy_l)`` as a polynomial."""
        n = self.n
        t: dict = {}
        for c, dx, dy in self.terms:
            k = (dx, n - dy)
            t[k] = t.get(k, 0) + c
        return BiPoly(t)

    def symbol(self, v: float, w: float) -> float:
        return sum(float(c) * v**dx * w ** (-dy) for c, dx, dy in self.terms)

    def apply(self, e: Expr) -> Expr:
        out = Expr()
        for c, dx, dy in self.terms:
            out = out + d_dtau(d_dxi(e, dx), dy).scale(c)
        return out


# ---------------------------------------------------------------- forward

def _laplace_factor(p: int, a: Fraction, trig) -> tuple[Poly, Poly]:
    """Laplace image of ``t**p * exp(a t) * trig(f t)`` as ``(num, den)``."""
    kind, f = trig
    fact = Fraction(math.factorial(p))
    if not kind:
        return Poly.const(fact), Poly([-a, Fraction(1)]) ** (p + 1)
    alpha = GaussianRational(a, f)
    lin = Poly([-alpha, GaussianRational(Fraction(1))])
    lin_c = Poly([-alpha.conjugate(), GaussianRational(Fraction(1))])
    hi, lo = lin_c ** (p + 1), lin ** (p + 1)
    if kind == SIN:
        num = (hi - lo).scale(GaussianRational(Fraction(0), Fraction(-1, 2)))
    else:
        num = (hi + lo).scale(GaussianRational(Fraction(1, 2)))
    if not num.is_real():
        raise AssertionError("trig image numerator is not real")
    den = Poly([a * a + f * f, -2 * a, Fraction(1)]) ** (p + 1)
    return num.real_part().scale(fact), den


def _swap_argument(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """``R(z) -> R(1/z)/z``; maps Laplace images to Sumudu images and back."""
    dn, dd = num.deg, den.deg
    n2, d2 = num.reversed(dn), den.reversed(dd)
    shift = dd - dn - 1
    if shift >= 0:
        n2 = n2 * Poly.monomial(shift)
    else:
        d2 = d2 * Poly.monomial(-shift)
    return n2, d2


def _xi_image(px, ax, tx) -> tuple[Fraction, RationalFn]:
    return RationalFn.make(*_laplace_factor(px, ax, tx), "v")


def _tau_image(py, ay, ty) -> tuple[Fraction, RationalFn]:
    return RationalFn.make(*_swap_argument(*_laplace_factor(py, ay, ty)), "w")


def forward(e: Expr) -> TransformExpr:
    """Double transform: Laplace in xi (variable v), Sumudu in tau (variable w)."""
    items = []
    for (px, py, ax, ay, tx, ty), c in e.sorted_items():
        sv, rv = _xi_image(px, ax, tx)
        sw, qw = _tau_image(py, ay, ty)
        items.append((c * sv * sw, rv, qw))
    return TransformExpr.build(items, e.rates())


def laplace_x(e: Expr) -> TransformExpr:
    """Single Laplace transform of a pure-xi expression (constant in w)."""
    if not e.is_pure_xi():
        raise OutOfClass("laplace_x expects an expression in xi only")
    items = []
    for (px, _, ax, _, tx, _), c in e.sorted_items():
        sv, rv = _xi_image(px, ax, tx)
        items.append((c * sv, rv, RationalFn.one("w")))
    return TransformExpr.build(items, (e.rates()[0], None))


def sumudu_y(e: Expr) -> TransformExpr:
    """Single Sumudu transform of a pure-tau expression (constant in v)."""
    if not e.is_pure_tau():
        raise OutOfClass("sumudu_y expects an expression in tau only")
    items = []
    for (_, py, _, ay, _, ty), c in e.sorted_items():
        sw, qw = _tau_image(py, ay, ty)
        items.append((c * sw, RationalFn.one("v"), qw))
    return TransformExpr.build(items, (None, e.rates()[1]))


def eval_transform(t: TransformExpr, v: float, w: float) -> float:
    """Numerical value at a point inside the region of convergence."""
    a_max, b_max = t.roc
    if w <= 0:
        raise OutsideROC(f"w must be positive, got {w}")
    if a_max is not None and not v > a_max:
        raise OutsideROC(f"v = {v} is not > {a_max}")
    if b_max is not None and not 1 / w > b_max:
        raise OutsideROC(f"1/w = {1 / w} is not > {b_max}")
    vq, wq = Fraction(v), Fraction(w)
    total = Fraction(0)
    for term in t.terms:
        total += term.coeff * term.rv(vq) * term.qw(wq)
    return float(total)


# ---------------------------------------------------- operational rules

def derivative_rule(psi_image: TransformExpr, direction: str, order: int,
                    boundary_images: Sequence[TransformExpr]) -> TransformExpr:
    """Image of the ``order``-th canonical derivative from the image of psi.

    x: ``v^m Psi - sum_k v^(m-1-k) S[D^k_x psi(0, .)]``
    y: ``w^-n Psi - sum_j w^(-n+j) L[D^j_y psi(., 0)]``
    """
    if order < 1:
        raise ValueError("order must be positive")
    if len(boundary_images) != order:
        raise ArityMismatch(f"order {order} needs {order} boundary images, "
                            f"got {len(boundary_images)}")
    if direction == "x":
        if any(not t.rv.is_one() for b in boundary_images for t in b.terms):
            raise ValueError("x-boundary images must be constant in v")
        out = psi_image.times(num_v=Poly.monomial(order))
        for k, b in enumerate(boundary_images):
            out = out - b.times(num_v=Poly.monomial(order - 1 - k))
    elif direction == "y":
        if any(not t.qw.is_one() for b in boundary_images for t in b.terms):
            raise ValueError("y-boundary images must be constant in w")
        out = psi_image.times(den_w=Poly.monomial(order))
        for j, b in enumerate(boundary_images):
            out = out - b.times(den_w=Poly.monomial(order - j))
    else:
        raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")
    return out


def apply_kernel(op: LinearOperator, t: TransformExpr) -> TransformExpr:
    """Multiply by the inverse operator symbol, cancelling exactly.

    Raises :class:`NotSeparable` when the coupled part of the symbol does not
    divide the operand, i.e. the product is no longer a sum of separable terms.
    """
    if not t.terms:
        return TransformExpr((), t.roc)
    den_v = ONE_POLY
    den_w = ONE_POLY
    for term in t.terms:
        den_v = lcm(den_v, term.rv.den)
        den_w = lcm(den_w, term.qw.den)
    num = BiPoly()
    for term in t.terms:
        pv = term.rv.num * den_v.exact_div(term.rv.den)
        pw = term.qw.num * den_w.exact_div(term.qw.den)
        num = num + BiPoly.outer(pv, pw).scale(term.coeff)
    if not num:
        return TransformExpr((), t.roc)

    num = num * BiPoly.outer(ONE_POLY, Poly.monomial(op.n))
    kernel = op.kernel_denominator()
    cw = content_w(kernel)
    k1 = kernel.div_pure_w(cw)
    cv = content_v(k1)
    coupled = k1.div_pure_v(cv)
    quo, rem = num.divmod(coupled)
    if rem:
        raise NotSeparable("kernel leaves a coupled denominator")

    den_v, den_w = den_v * cv, den_w * cw
    items = []
    for i, pw in sorted(quo.coeffs_in_v().items()):
        sv, rv = RationalFn.make(Poly.monomial(i), den_v, "v")
        sw, qw = RationalFn.make(pw, den_w, "w")
        items.append((sv * sw, rv, qw))
    return TransformExpr.build(items, t.roc)


# ---------------------------------------------------------------- inverse

_DENOMINATOR_BOUNDS = (1, 10, 100, 1000, 10**4, 10**6)


def _exact_roots(den: Poly) -> list[tuple[GaussianRational, int]]:
    """Distinct roots in Q(i) with multiplicities; OutOfClass if any root is not."""
    sq = squarefree_part(den)
    if sq.deg <= 0:
        return []
    sq_g = sq.to_gaussian()
    found: list[GaussianRational] = []
    numeric = np.roots([float(c) for c in reversed(sq.coeffs)])
    for z in numeric:
        for bound in _DENOMINATOR_BOUNDS:
            cand = GaussianRational(Fraction(z.real).limit_denominator(bound),
                                    Fraction(z.imag).limit_denominator(bound))
            if not sq_g(cand):
                if cand not in found:
                    found.append(cand)
                break
    if len(found) != sq.deg:
        raise OutOfClass(f"denominator {_poly_str(den, 's')} has poles outside Q(i)")
    out = []
    dg = den.to_gaussian()
    for r in found:
        mult = 0
        lin = Poly.linear_root(r)
        while True:
            q, rem = dg.divmod(lin)
            if rem:
                break
            dg, mult = q, mult + 1
        out.append((r, mult))
    return out


def _var_term(var: int, coeff: Fraction, p: int, a: Fraction, trig) -> Expr:
    if var == 0:
        key = (p, 0, a, Fraction(0), trig, NO_TRIG)
    else:
        key = (0, p, Fraction(0), a, NO_TRIG, trig)
    return Expr({key: coeff})


def _inverse_laplace(num: Poly, den: Poly, var: int) -> Expr:
    """Inverse Laplace of a strictly proper ``num/den`` into xi (0) or tau (1)."""
    if not num:
        return Expr()
    if num.deg >= den.deg:
        raise OutOfClass("improper image has no preimage in the class")
    num_g, den_g = num.to_gaussian(), den.to_gaussian()
    out = Expr()
    for root, mult in _exact_roots(den):
        if root.im < 0:
            continue  # paired with its conjugate
        rest = den_g
        lin = Poly.linear_root(root)
        for _ in range(mult):
            rest = rest.exact_div(lin)
        series = series_quotient(num_g.taylor_shift(root), rest.taylor_shift(root), mult)
        for r, c in enumerate(series):
            j = mult - r  # coefficient of 1/(s - root)^j
            if not c:
                continue
            fact = Fraction(math.factorial(j - 1))
            if root.im == 0:
                if c.im != 0:
                    raise AssertionError("complex residue at a real pole")
                out = out + _var_term(var, c.re / fact, j - 1, root.re, NO_TRIG)
            else:
                out = out + _var_term(var, 2 * c.re / fact, j - 1, root.re, (COS, root.im))
                out = out + _var_term(var, -2 * c.im / fact, j - 1, root.re, (SIN, root.im))
    return out


def inverse(t: TransformExpr) -> Expr:
    """Table inversion of a separable image back into the expression class."""
    out = Expr()
    for term in t.terms:
        fx = _inverse_laplace(term.rv.num, term.rv.den, 0)
        fy = _inverse_laplace(*_swap_argument(term.qw.num, term.qw.den), 1)
        out = out + mul(fx, fy).scale(term.coeff)
    return out


def shift_check(f: Expr, c, d, v: float, w: float) -> tuple[float, float]:
    """Both sides of the first shifting rule at ``(v, w)``.

    ``T[exp(c xi + d tau) f](v, w) = T[f](v - c, w / (1 - d w)) / (1 - d w)``
    """
    c, d = as_fraction(c), as_fraction(d)
    if d * Fraction(w) == 1:
        raise OutsideROC("d*w = 1 is a pole of the shift factor")
    lhs = eval_transform(forward(mul(Expr.term(1, ax=c, ay=d), f)), v, w)
    scale = 1 - float(d) * w
    rhs = eval_transform(forward(f), v - float(c), w / scale) / scale
    return lhs, rhs

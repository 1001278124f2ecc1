"""Exact algebra over the closed expression class.

Every expression is a finite linear combination of basis terms

    c * xi^p * tau^q * exp(a*xi + b*tau) * T(f*xi) * T(g*tau)

where ``xi = x**eta / eta`` and ``tau = y**gamma / gamma`` are the canonical
variables and ``T`` is one of ``1``, ``sin`` or ``cos``.  Coefficients, rates
and frequencies are :class:`fractions.Fraction` values, so equality and zero
tests are exact.  In canonical variables the conformable derivative of order
eta in x is the plain derivative in xi, so one symbolic engine serves every
fractional order; eta and gamma only enter at evaluation time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "DomainError",
    "Expr",
    "NonlinearitySpec",
    "ZERO",
    "ONE",
    "XI",
    "TAU",
    "add",
    "mul",
    "d_dxi",
    "d_dtau",
    "evaluate",
    "eval_canonical",
    "adomian",
    "as_fraction",
]

NONE = ""
SIN = "sin"
COS = "cos"

#: ``(kind, frequency)``; ``("", 0)`` is the absent factor.
Trig = tuple[str, Fraction]
#: ``(px, py, ax, ay, trigx, trigy)``
Key = tuple[int, int, Fraction, Fraction, Trig, Trig]

NO_TRIG: Trig = (NONE, Fraction(0))


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact data; use Fraction or str")
    return Fraction(value)


def _trig(kind: str, freq, factor: Fraction) -> list[tuple[Fraction, Trig]]:
    """Normalize a trig factor: positive frequencies, sin(0) = 0, cos(0) = 1."""
    freq = as_fraction(freq)
    if kind == NONE:
        return [(factor, NO_TRIG)]
    if freq == 0:
        return [] if kind == SIN else [(factor, NO_TRIG)]
    if freq < 0:
        freq = -freq
        if kind == SIN:
            factor = -factor
    return [(factor, (kind, freq))]


def _trig_product(t1: Trig, t2: Trig) -> list[tuple[Fraction, Trig]]:
    (k1, a), (k2, b) = t1, t2
    if k1 == NONE:
        return [(Fraction(1), t2)]
    if k2 == NONE:
        return [(Fraction(1), t1)]
    half = Fraction(1, 2)
    if k1 == SIN and k2 == SIN:
        parts = [(COS, a - b, half), (COS, a + b, -half)]
    elif k1 == SIN and k2 == COS:
        parts = [(SIN, a + b, half), (SIN, a - b, half)]
    elif k1 == COS and k2 == SIN:
        parts = [(SIN, a + b, half), (SIN, a - b, -half)]
    else:
        parts = [(COS, a - b, half), (COS, a + b, half)]
    out: list[tuple[Fraction, Trig]] = []
    for kind, freq, factor in parts:
        out.extend(_trig(kind, freq, factor))
    return out


class Expr:
    """Immutable canonical expression: a mapping from term key to coefficient.

    Like terms are merged and zero coefficients dropped on construction, so
    ``==`` is exact set equality of canonical terms and the zero expression
    has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Fraction] | Iterable[tuple[Key, Fraction]] = ()):
        acc: dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            coeff = as_fraction(coeff)
            if coeff:
                acc[key] = acc.get(key, Fraction(0)) + coeff
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def term(cls, coeff=1, px: int = 0, py: int = 0, ax=0, ay=0,
             trigx: tuple[str, object] | None = None,
             trigy: tuple[str, object] | None = None) -> "Expr":
        """Build a single basis term, normalizing trig frequency signs."""
        if px < 0 or py < 0:
            raise ValueError("powers must be nonnegative")
        coeff = as_fraction(coeff)
        xs = _trig(*(trigx or (NONE, 0)), Fraction(1))
        ys = _trig(*(trigy or (NONE, 0)), Fraction(1))
        items = []
        for fx, tx in xs:
            for fy, ty in ys:
                key = (px, py, as_fraction(ax), as_fraction(ay), tx, ty)
                items.append((key, coeff * fx * fy))
        return cls(items)

    @classmethod
    def const(cls, c) -> "Expr":
        return cls.term(c)

    # -- container protocol -----------------------------------------------
    @property
    def terms(self) -> Mapping[Key, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Expr.const(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .render import render

        return f"Expr({render(self)!r})"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "Expr":
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self) -> "Expr":
        return Expr((k, -c) for k, c in self._terms.items())

    def __sub__(self, other) -> "Expr":
        return add(self, -_coerce(other))

    def __rsub__(self, other) -> "Expr":
        return add(_coerce(other), -self)

    def __mul__(self, other) -> "Expr":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return mul(self, _coerce(other))

    def __rmul__(self, other) -> "Expr":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Expr":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are in the class")
        out = ONE
        for _ in range(n):
            out = mul(out, self)
        return out

    def scale(self, c) -> "Expr":
        c = as_fraction(c)
        return Expr((k, c * v) for k, v in self._terms.items())

    # -- structure ----------------------------------------------------------
    def depends_on_xi(self) -> bool:
        return any(k[0] or k[2] or k[4][0] for k in self._terms)

    def depends_on_tau(self) -> bool:
        return any(k[1] or k[3] or k[5][0] for k in self._terms)

    def is_pure_xi(self) -> bool:
        return not self.depends_on_tau()

    def is_pure_tau(self) -> bool:
        return not self.depends_on_xi()

    def rates(self) -> tuple[Fraction | None, Fraction | None]:
        """Largest exponential rate in xi and in tau (``None`` when empty)."""
        if not self._terms:
            return None, None
        return max(k[2] for k in self._terms), max(k[3] for k in self._terms)

    def at_xi_zero(self) -> "Expr":
        """Substitute xi = 0."""
        items = []
        for (px, py, ax, ay, tx, ty), c in self._terms.items():
            if px > 0 or tx[0] == SIN:
                continue
            items.append(((0, py, Fraction(0), ay, NO_TRIG, ty), c))
        return Expr(items)

    def at_tau_zero(self) -> "Expr":
        """Substitute tau = 0."""
        items = []
        for (px, py, ax, ay, tx, ty), c in self._terms.items():
            if py > 0 or ty[0] == SIN:
                continue
            items.append(((px, 0, ax, Fraction(0), tx, NO_TRIG), c))
        return Expr(items)

    def split(self) -> list[tuple[Fraction, "Expr", "Expr"]]:
        """Each term as ``(coeff, pure-xi factor, pure-tau factor)``."""
        out = []
        for (px, py, ax, ay, tx, ty), c in sorted(self._terms.items(), key=_sort_key):
            fx = Expr({(px, 0, ax, Fraction(0), tx, NO_TRIG): Fraction(1)})
            fy = Expr({(0, py, Fraction(0), ay, NO_TRIG, ty): Fraction(1)})
            out.append((c, fx, fy))
        return out

    def sorted_items(self) -> list[tuple[Key, Fraction]]:
        return sorted(self._terms.items(), key=_sort_key)


def _sort_key(item):
    (px, py, ax, ay, tx, ty), _ = item
    return (-(px + py), -py, -px, ax, ay, tx, ty)


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Expr.const(value)
    raise TypeError(f"cannot combine Expr with {type(value).__name__}")


ZERO = Expr()
ONE = Expr.const(1)
XI = Expr.term(1, px=1)
TAU = Expr.term(1, py=1)


def add(a: Expr, b: Expr) -> Expr:
    return Expr(list(a.items()) + list(b.items()))


def _mul_keys(k1: Key, k2: Key) -> list[tuple[Fraction, Key]]:
    px, py = k1[0] + k2[0], k1[1] + k2[1]
    ax, ay = k1[2] + k2[2], k1[3] + k2[3]
    out = []
    for fx, tx in _trig_product(k1[4], k2[4]):
        for fy, ty in _trig_product(k1[5], k2[5]):
            out.append((fx * fy, (px, py, ax, ay, tx, ty)))
    return out


def mul(a: Expr, b: Expr) -> Expr:
    """Product, with trig products rewritten into sums (product-to-sum)."""
    items = []
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            for f, key in _mul_keys(k1, k2):
                items.append((key, c1 * c2 * f))
    return Expr(items)


def _diff_once(e: Expr, axis: int) -> Expr:
    # axis 0 -> xi, 1 -> tau; key slots: power, rate, trig
    p_i, a_i, t_i = (0, 2, 4) if axis == 0 else (1, 3, 5)
    items = []
    for key, c in e.items():
        p, a, (kind, f) = key[p_i], key[a_i], key[t_i]
        k = list(key)
        if p:
            k2 = k.copy()
            k2[p_i] = p - 1
            items.append((tuple(k2), c * p))
        if a:
            items.append((key, c * a))
        if kind == SIN:
            k2 = k.copy()
            k2[t_i] = (COS, f)
            items.append((tuple(k2), c * f))
        elif kind == COS:
            k2 = k.copy()
            k2[t_i] = (SIN, f)
            items.append((tuple(k2), -c * f))
    return Expr(items)


def d_dxi(e: Expr, order: int = 1) -> Expr:
    """Conformable x-derivative of order ``order * eta`` (plain d/dxi)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    for _ in range(order):
        e = _diff_once(e, 0)
    return e


def d_dtau(e: Expr, order: int = 1) -> Expr:
    """Conformable y-derivative of order ``order * gamma`` (plain d/dtau)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    for _ in range(order):
        e = _diff_once(e, 1)
    return e


def _trig_eval(t: Trig, z):
    kind, f = t
    if kind == SIN:
        return np.sin(float(f) * z)
    if kind == COS:
        return np.cos(float(f) * z)
    return 1.0


def eval_canonical(e: Expr, xi, tau):
    """Evaluate at canonical coordinates; accepts scalars or numpy arrays."""
    xi = np.asarray(xi, dtype=float)
    tau = np.asarray(tau, dtype=float)
    total = np.zeros(np.broadcast(xi, tau).shape)
    for (px, py, ax, ay, tx, ty), c in e.sorted_items():
        total = total + (float(c) * xi**px * tau**py
                         * np.exp(float(ax) * xi + float(ay) * tau)
                         * _trig_eval(tx, xi) * _trig_eval(ty, tau))
    return total


def canonical_coords(x, y, eta, gamma):
    """Map raw (x, y) to (xi, tau) = (x^eta/eta, y^gamma/gamma)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0) or np.any(y < 0):
        raise DomainError("x and y must be nonnegative")
    eta, gamma = float(eta), float(gamma)
    if not (0 < eta <= 1 and 0 < gamma <= 1):
        raise DomainError("orders must lie in (0, 1]")
    # 0**eta is 0 for eta in (0, 1]
    return x**eta / eta, y**gamma / gamma


def evaluate(e: Expr, x, y, eta=1, gamma=1):
    """Evaluate ``e`` at raw coordinates for fractional orders eta, gamma."""
    xi, tau = canonical_coords(x, y, eta, gamma)
    out = eval_canonical(e, xi, tau)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class NonlinearitySpec:
    """A bilinear term ``coeff * Dx^a Dy^b ((Dx^l Dy^m psi) * (Dx^r Dy^s psi))``."""

    coeff: Fraction = Fraction(1)
    outer_dx: int = 0
    outer_dy: int = 0
    left_dx: int = 0
    left_dy: int = 0
    right_dx: int = 0
    right_dy: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        orders = (self.outer_dx, self.outer_dy, self.left_dx, self.left_dy,
                  self.right_dx, self.right_dy)
        if any(o < 0 for o in orders):
            raise ValueError("derivative orders must be nonnegative")

    def left(self, e: Expr) -> Expr:
        return d_dtau(d_dxi(e, self.left_dx), self.left_dy)

    def right(self, e: Expr) -> Expr:
        return d_dtau(d_dxi(e, self.right_dx), self.right_dy)

    def outer(self, e: Expr) -> Expr:
        return d_dtau(d_dxi(e, self.outer_dx), self.outer_dy).scale(self.coeff)

    def __call__(self, psi: Expr) -> Expr:
        return self.outer(mul(self.left(psi), self.right(psi)))


def adomian(nonlin: NonlinearitySpec | None, components: Sequence[Expr], i: int) -> Expr:
    """Adomian polynomial ``A_i`` of a bilinear nonlinearity.

    For a bilinear operator the lambda-expansion collapses to the Cauchy
    convolution ``Outer(sum_j L(psi_j) * R(psi_{i-j}))``.
    """
    if i < 0:
        raise ValueError("index must be nonnegative")
    if len(components) < i + 1:
        raise ValueError(f"A_{i} needs {i + 1} components, got {len(components)}")
    if nonlin is None:
        return ZERO
    acc = ZERO
    for j in range(i + 1):
        left = nonlin.left(components[j])
        if not left:
            continue
        acc = acc + mul(left, nonlin.right(components[i - j]))
    return nonlin.outer(acc)

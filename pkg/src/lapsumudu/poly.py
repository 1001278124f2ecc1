"""Exact polynomial arithmetic used by the transform layer.

``Poly`` is a dense univariate polynomial over any exact field whose elements
support ``+ - * /`` (``Fraction`` or :class:`GaussianRational`).  ``BiPoly``
is a sparse bivariate polynomial in (v, w) over ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class GaussianRational:
    """Exact element ``re + i*im`` of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.of(other) - self

    def __mul__(self, other):
        o = GaussianRational.of(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.of(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.of(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


class Poly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``s**k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c=Fraction(1)) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def linear_root(cls, root) -> "Poly":
        """``s - root``"""
        return cls([-root, Fraction(1) if not isinstance(root, GaussianRational)
                    else GaussianRational(Fraction(1))])

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def lc(self):
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0)
                    for k in range(n))

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        out = Poly.const(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "Poly":
        return Poly(x * c for x in self.coeffs)

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = other.deg
        lead = other.lc()
        q = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c / lead
            q[k - dd] = f
            for j, oc in enumerate(other.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - f * oc
        return Poly(q), Poly(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self:
            return self
        lead = self.lc()
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(c * k for k, c in enumerate(self.coeffs) if k)

    def taylor_shift(self, a) -> "Poly":
        """Coefficients of ``p(a + h)`` in powers of ``h``."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                c[k] = c[k] + a * c[k + 1]
        return Poly(c)

    def reversed(self, n: int | None = None) -> "Poly":
        """``s**n * p(1/s)`` with ``n = deg`` by default."""
        n = self.deg if n is None else n
        c = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return Poly(reversed(c[: n + 1]))

    def to_gaussian(self) -> "Poly":
        return Poly(GaussianRational.of(c) for c in self.coeffs)

    def real_part(self) -> "Poly":
        return Poly(GaussianRational.of(c).re for c in self.coeffs)

    def is_real(self) -> bool:
        return all(GaussianRational.of(c).im == 0 for c in self.coeffs)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over a field)."""
    while b:
        a, b = b, a % b
    return a.monic() if a else Poly.const(Fraction(1))


def lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(gcd(a, b)).monic()


def squarefree_part(p: Poly) -> Poly:
    if p.deg <= 0:
        return Poly.const(Fraction(1))
    return p.exact_div(gcd(p, p.derivative())).monic()


def series_quotient(num: Poly, den: Poly, order: int) -> list:
    """First ``order`` power-series coefficients of ``num/den`` at 0."""
    d0 = den.coeffs[0]
    a = list(num.coeffs) + [0] * order
    d = list(den.coeffs) + [0] * order
    out = []
    for k in range(order):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - d[j] * out[k - j]
        out.append(acc / d0)
    return out


class BiPoly:
    """Sparse polynomial in (v, w): ``{(i, j): c}`` for ``c * v**i * w**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def outer(cls, pv: Poly, pw: Poly) -> "BiPoly":
        return cls({(i, j): a * b for i, a in enumerate(pv.coeffs) if a
                    for j, b in enumerate(pw.coeffs) if b})

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "BiPoly") -> "BiPoly":
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return BiPoly(t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "BiPoly":
        return BiPoly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        t: dict = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, 0) + a * b
        return BiPoly(t)

    def leading(self):
        k = max(self.terms)  # lex order, v before w
        return k, self.terms[k]

    def divmod(self, d: "BiPoly") -> tuple["BiPoly", "BiPoly"]:
        """Lex-order division by a single divisor (remainder 0 iff divisible)."""
        (di, dj), dc = d.leading()
        p = BiPoly(self.terms)
        q: dict = {}
        r: dict = {}
        while p:
            (i, j), c = p.leading()
            if i >= di and j >= dj:
                m = {(i - di, j - dj): c / dc}
                q[(i - di, j - dj)] = q.get((i - di, j - dj), 0) + c / dc
                p = p - d * BiPoly(m)
            else:
                r[(i, j)] = c
                del p.terms[(i, j)]
        return BiPoly(q), BiPoly(r)

    def coeffs_in_v(self) -> dict[int, Poly]:
        """View as a polynomial in v with coefficients in Q[w]."""
        rows: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            row = rows.setdefault(i, [])
            row.extend([Fraction(0)] * (j + 1 - len(row)))
            row[j] = c
        return {i: Poly(r) for i, r in rows.items()}

    def coeffs_in_w(self) -> dict[int, Poly]:
        cols: dict[int, list] = {}
        for (i, j), c in self.terms.items():
            col = cols.setdefault(j, [])
            col.extend([Fraction(0)] * (i + 1 - len(col)))
            col[i] = c
        return {j: Poly(r) for j, r in cols.items()}

    def div_pure_w(self, p: Poly) -> "BiPoly":
        out = BiPoly()
        for i, cw in self.coeffs_in_v().items():
            out = out + BiPoly.outer(Poly.monomial(i), cw.exact_div(p))
        return out

    def div_pure_v(self, p: Poly) -> "BiPoly":
        out = BiPoly()
        for j, cv in self.coeffs_in_w().items():
            out = out + BiPoly.outer(cv.exact_div(p), Poly.monomial(j))
        return out


def content_w(p: BiPoly) -> Poly:
    """Monic gcd of the Q[w]-coefficients of ``p`` viewed in v."""
    g = Poly()
    for cw in p.coeffs_in_v().values():
        g = gcd(g, cw) if g else cw.monic()
    return g if g else Poly.const(Fraction(1))


def content_v(p: BiPoly) -> Poly:
    g = Poly()
    for cv in p.coeffs_in_w().values():
        g = gcd(g, cv) if g else cv.monic()
    return g if g else Poly.const(Fraction(1))


def poly_from_roots(roots: Sequence) -> Poly:
    out = Poly.const(Fraction(1))
    for r in roots:
        out = out * Poly.linear_root(r)
    return out

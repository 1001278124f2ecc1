"""Canonical text emitter; output re-parses to the identical expression."""

from __future__ import annotations

from fractions import Fraction

from .expr import Expr


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _scaled(c: Fraction, var: str) -> str:
    if c == 1:
        return var
    if c == -1:
        return f"-{var}"
    return f"{fmt_rational(c)}*{var}"


def _linear(a: Fraction, b: Fraction) -> str:
    parts = []
    if a:
        parts.append(_scaled(a, "X"))
    if b:
        s = _scaled(b, "Y")
        if parts:
            s = f"- {s[1:]}" if s.startswith("-") else f"+ {s}"
        parts.append(s)
    return " ".join(parts)


def _factors(key) -> list[str]:
    px, py, ax, ay, tx, ty = key
    out = []
    for var, p in (("X", px), ("Y", py)):
        if p == 1:
            out.append(var)
        elif p > 1:
            out.append(f"{var}^{p}")
    if ax or ay:
        out.append(f"exp({_linear(ax, ay)})")
    for var, (kind, f) in (("X", tx), ("Y", ty)):
        if kind:
            out.append(f"{kind}({_scaled(f, var)})")
    return out


def render(e: Expr) -> str:
    """Render in the expression grammar, terms in a fixed canonical order."""
    if e.is_zero():
        return "0"
    chunks = []
    for key, c in e.sorted_items():
        factors = _factors(key)
        mag = abs(c)
        if not factors:
            body = fmt_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([fmt_rational(mag)] + factors)
        if not chunks:
            chunks.append(f"-{body}" if c < 0 else body)
        else:
            chunks.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(chunks)

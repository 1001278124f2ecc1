"""Recursive-descent parsers for expressions and problem files.

Expression grammar::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := rational | 'X' | 'Y' | func '(' expr ')' | '(' expr ')' | '-' factor
    func     := 'exp' | 'sin' | 'cos'
    rational := int ('/' uint)?

``X`` stands for x^eta/eta and ``Y`` for y^gamma/gamma.

The ``lhs`` of a problem file is a signed sum of linear terms
``c*Dx^p(psi)`` / ``c*Dy^q(psi)`` and at most one bilinear term
``c*Dx^a(Dy^b(F * G))`` with ``F``, ``G`` derivatives of ``psi``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import OutOfClass, ParseError, ValidationError
from .expr import COS, SIN, TAU, XI, Expr, NonlinearitySpec, mul
from .solver import Problem
from .transform import LinearOperator

__all__ = ["parse_expr", "parse_problem", "load_problem", "Token", "tokenize"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "name" | "op" | "end"
    text: str
    line: int
    col: int


def tokenize(src: str, line: int = 1, col0: int = 1) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            out.append(Token("int", m.group(1), line, col0 + start))
        elif m.group(2) is not None:
            out.append(Token("name", m.group(2), line, col0 + start))
        elif m.group(3) is not None:
            out.append(Token("op", m.group(3), line, col0 + start))
        pos = m.end()
    out.append(Token("end", "", line, col0 + len(src.rstrip())))
    return out


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def take(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"unexpected {self.tok.text or 'end of input'!r}", {repr(text)})
        return self.take()

    def uint(self) -> int:
        if self.tok.kind != "int":
            self.fail(f"unexpected {self.tok.text or 'end of input'!r}", {"unsigned integer"})
        return int(self.take().text)

    def fail(self, msg: str, expected=()):
        raise ParseError(msg, self.tok.line, self.tok.col, expected)


_ATOM_START = {"integer", "'X'", "'Y'", "'exp'", "'sin'", "'cos'", "'('", "'-'"}


class _ExprParser:
    def __init__(self, cur: _Cursor):
        self.cur = cur

    def expr(self) -> Expr:
        out = self.term()
        while self.cur.at("+") or self.cur.at("-"):
            sign = self.cur.take().text
            rhs = self.term()
            out = out + rhs if sign == "+" else out - rhs
        return out

    def term(self) -> Expr:
        out = self.factor()
        while self.cur.at("*"):
            self.cur.take()
            out = mul(out, self.factor())
        return out

    def factor(self) -> Expr:
        base = self.atom()
        if self.cur.at("^"):
            self.cur.take()
            base = base ** self.cur.uint()
        return base

    def atom(self) -> Expr:
        cur = self.cur
        tok = cur.tok
        if tok.kind == "int":
            num = int(cur.take().text)
            if cur.at("/"):
                cur.take()
                den = cur.uint()
                if den == 0:
                    raise ParseError("zero denominator", tok.line, tok.col)
                return Expr.const(Fraction(num, den))
            return Expr.const(num)
        if tok.kind == "name":
            if tok.text == "X":
                cur.take()
                return XI
            if tok.text == "Y":
                cur.take()
                return TAU
            if tok.text in ("exp", "sin", "cos"):
                cur.take()
                cur.expect("(")
                arg = self.expr()
                cur.expect(")")
                return _apply_func(tok, arg)
            cur.fail(f"unknown name {tok.text!r}", _ATOM_START)
        if cur.at("("):
            cur.take()
            inner = self.expr()
            cur.expect(")")
            return inner
        if cur.at("-"):
            cur.take()
            return -self.factor()
        cur.fail(f"unexpected {tok.text or 'end of input'!r}", _ATOM_START)


def _linear_parts(tok: Token, arg: Expr) -> tuple[Fraction, Fraction]:
    a = b = Fraction(0)
    for (px, py, ax, ay, tx, ty), c in arg.items():
        if ax or ay or tx[0] or ty[0] or px + py > 1:
            raise OutOfClass(f"line {tok.line}, column {tok.col}: argument of "
                             f"{tok.text} must be linear in X and Y")
        if px + py == 0:
            raise OutOfClass(f"line {tok.line}, column {tok.col}: constant shift in "
                             f"{tok.text} argument has no exact representation")
        if px:
            a = c
        else:
            b = c
    return a, b


def _apply_func(tok: Token, arg: Expr) -> Expr:
    a, b = _linear_parts(tok, arg)
    if tok.text == "exp":
        return Expr.term(1, ax=a, ay=b)
    sx, cx = Expr.term(1, trigx=(SIN, a)), Expr.term(1, trigx=(COS, a))
    sy, cy = Expr.term(1, trigy=(SIN, b)), Expr.term(1, trigy=(COS, b))
    if tok.text == "sin":
        return mul(sx, cy) + mul(cx, sy)
    return mul(cx, cy) - mul(sx, sy)


def parse_expr(src: str, line: int = 1, col0: int = 1) -> Expr:
    """Parse one expression into its canonical form."""
    cur = _Cursor(tokenize(src, line, col0))
    out = _ExprParser(cur).expr()
    if cur.tok.kind != "end":
        cur.fail(f"unexpected {cur.tok.text!r}", {"'+'", "'-'", "'*'", "'^'", "end of input"})
    return out


# ------------------------------------------------------------ lhs grammar

def _rational_coeff(cur: _Cursor) -> Fraction:
    tok = cur.take()
    den = 1
    if cur.at("/"):
        cur.take()
        den = cur.uint()
        if den == 0:
            raise ParseError("zero denominator", tok.line, tok.col)
    return Fraction(int(tok.text), den)


@dataclass(frozen=True)
class _Node:
    """``Dx^dx Dy^dy`` applied to ``psi`` (no factors) or to ``left * right``."""

    dx: int = 0
    dy: int = 0
    left: "_Node | None" = None
    right: "_Node | None" = None

    @property
    def is_product(self) -> bool:
        return self.left is not None


def _node(cur: _Cursor) -> _Node:
    tok = cur.tok
    if tok.kind == "name" and tok.text == "psi":
        cur.take()
        return _Node()
    if tok.kind == "name" and tok.text in ("Dx", "Dy"):
        cur.take()
        order = 1
        if cur.at("^"):
            cur.take()
            order = cur.uint()
        cur.expect("(")
        inner = _product(cur)
        cur.expect(")")
        if tok.text == "Dx":
            return _Node(inner.dx + order, inner.dy, inner.left, inner.right)
        return _Node(inner.dx, inner.dy + order, inner.left, inner.right)
    cur.fail(f"unexpected {tok.text or 'end of input'!r}", {"'psi'", "'Dx'", "'Dy'"})


def _product(cur: _Cursor) -> _Node:
    """A node, optionally times a second node (``F * G`` or ``F^2``)."""
    start = cur.tok
    left = _node(cur)
    if cur.at("^"):
        cur.take()
        tok = cur.tok
        if cur.uint() != 2:
            raise ParseError("only the square of psi is supported", tok.line, tok.col)
        right = left
    elif cur.at("*"):
        cur.take()
        right = _node(cur)
    else:
        return left
    if left.is_product or right.is_product:
        raise ValidationError(f"line {start.line}, column {start.col}: only one "
                              "product of two factors is supported")
    return _Node(0, 0, left, right)


def parse_lhs(src: str, line: int = 1, col0: int = 1):
    """Parse an operator expression into ``(LinearOperator, NonlinearitySpec | None)``."""
    cur = _Cursor(tokenize(src, line, col0))
    linear: list[tuple[Fraction, int, int]] = []
    nonlin = None
    first = True
    while True:
        sign = 1
        if cur.at("+") or cur.at("-"):
            sign = -1 if cur.take().text == "-" else 1
        elif not first:
            break
        first = False
        coeff = Fraction(sign)
        if cur.tok.kind == "int":
            coeff *= _rational_coeff(cur)
            cur.expect("*")
        start = cur.tok
        node = _product(cur)
        if not node.is_product:
            dx, dy = node.dx, node.dy
            if dx and dy:
                raise ValidationError(f"line {start.line}, column {start.col}: mixed "
                                      "derivatives are not supported in linear terms")
            linear.append((coeff, dx, dy))
        else:
            if nonlin is not None:
                raise ValidationError(f"line {start.line}, column {start.col}: at most "
                                      "one nonlinear term is supported")
            left, right = node.left, node.right
            nonlin = NonlinearitySpec(coeff, node.dx, node.dy, left.dx, left.dy,
                                      right.dx, right.dy)
    if cur.tok.kind != "end":
        cur.fail(f"unexpected {cur.tok.text!r}", {"'+'", "'-'", "end of input"})
    if not linear:
        raise ValidationError(f"line {line}: the operator needs at least one linear term")
    merged: dict[tuple[int, int], Fraction] = {}
    for c, dx, dy in linear:
        merged[(dx, dy)] = merged.get((dx, dy), Fraction(0)) + c
    terms = tuple((c, dx, dy) for (dx, dy), c in merged.items() if c)
    return LinearOperator(terms), nonlin


# --------------------------------------------------------- problem files

_REQUIRED = ("eta", "gamma", "lhs", "g1", "g2")


def parse_problem(text: str, source: str = "<problem>") -> Problem:
    """Parse a ``key = value`` problem description."""
    entries: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", lineno, 1, {"'='"})
        key, value = body.split("=", 1)
        key = key.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", key):
            raise ParseError(f"invalid key {key!r}", lineno, 1)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", lineno, 1)
        col = len(body.split("=", 1)[0]) + 2 + (len(value) - len(value.lstrip()))
        entries[key] = (value.strip(), lineno, col)

    for k in _REQUIRED:
        if k not in entries:
            raise ValidationError(f"{source}: missing required key {k!r}")

    def order(key: str) -> Fraction:
        value, lineno, col = entries[key]
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{key} must be a rational or decimal number", lineno, col)

    def expr(key: str) -> Expr:
        value, lineno, col = entries[key]
        return parse_expr(value, lineno, col)

    value, lineno, col = entries["lhs"]
    op, nonlin = parse_lhs(value, lineno, col)

    ics, bcs = [], []
    j = 0
    while f"ic{j}" in entries:
        ics.append(expr(f"ic{j}"))
        j += 1
    k = 0
    while f"bc{k}" in entries:
        bcs.append(expr(f"bc{k}"))
        k += 1
    known = set(_REQUIRED) | {"name"} | {f"ic{i}" for i in range(j)} | {f"bc{i}" for i in range(k)}
    unknown = sorted(set(entries) - known)
    if unknown:
        _, lineno, _ = entries[unknown[0]]
        raise ValidationError(f"{source}, line {lineno}: unexpected key {unknown[0]!r}")

    name = entries["name"][0] if "name" in entries else Path(source).stem
    return Problem(linear_op=op, nonlin=nonlin, g1=expr("g1"), g2=expr("g2"),
                   ics=tuple(ics), bcs=tuple(bcs), eta=order("eta"), gamma=order("gamma"),
                   name=name)


def load_problem(path) -> Problem:
    path = Path(path)
    return parse_problem(path.read_text(encoding="utf-8"), str(path))

"""Textual grammar for field expressions.

The CLI accepts expressions like ``ln(cosh(u))``, ``exp(-u^2)`` or
``step01(u) + 0.5*tanh(2*u)``.  Grammar (documented in the README):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' unary) | ('/' NUMBER))*
    unary   := ('-' | '+') unary | power
    power   := atom ('^' INT)?          -- INT >= 1
    atom    := NUMBER | 'i' | 'pi' | 'u' | 'x' | '(' expr ')'
             | NAME '(' expr (',' expr)* ')'

``u`` and ``x`` both denote the free variable.  Every function the library
can produce is printable and reparseable, so serialised elements round-trip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import fields as F
from .errors import ParseError
from .fields import (Affine, BumpTail, Conj, Const, Exp, FieldExpr, Identity,
                     LnCosh, Piecewise, Power, Product, Reciprocal, Scale,
                     SqrtNonneg, SqrtRatio, Step01, Sum, Tanh)

_UNARY = {
    "exp": F.exp_of,
    "sqrt": F.sqrt_nonneg,
    "conj": F.conj,
    "tanh": F.tanh_of,
    "lncosh": F.ln_cosh,
    "step01": F.step01,
    "recip": F.reciprocal,
}


# ---------------------------------------------------------------------------
# tokenizer

@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int
    value: float = 0.0


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^(),;":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            text = src[i:j]
            try:
                val = float(text)
            except ValueError:
                raise ParseError(f"bad number {text!r}", i) from None
            toks.append(_Tok("num", text, i, val))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Tok("name", src[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", "", n))
    return toks


# ---------------------------------------------------------------------------
# parser

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"unexpected {t.text or 'end of input'!r}",
                             t.pos, expected=(kind,))
        return self.next()

    def parse(self) -> FieldExpr:
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected trailing {t.text!r}", t.pos,
                             expected=("end of input",))
        return e

    def expr(self) -> FieldExpr:
        e = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.term()
            e = F.add(e, rhs if op == "+" else F.scale(rhs, -1))
        return e

    def term(self) -> FieldExpr:
        e = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            if op == "*":
                e = F.mul(e, self.unary())
            else:
                t = self.peek()
                rhs = self.unary()
                if not isinstance(rhs, Const) or rhs.value == 0:
                    raise ParseError("division is only supported by a nonzero "
                                     "constant", t.pos, expected=("number",))
                e = F.scale(e, 1.0 / rhs.value)
        return e

    def unary(self) -> FieldExpr:
        t = self.peek()
        if t.kind == "-":
            self.next()
            return F.scale(self.unary(), -1)
        if t.kind == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> FieldExpr:
        base = self.atom()
        if self.peek().kind == "^":
            self.next()
            start = self.peek()
            neg = False
            t = start
            if t.kind == "-":
                self.next()
                neg = True
                t = self.peek()
            if t.kind != "num" or t.value != int(t.value) or int(t.value) < 1 or neg:
                raise ParseError("exponent must be an integer >= 1", start.pos,
                                 expected=("positive integer",))
            self.next()
            return F.int_power(base, int(t.value))
        return base

    def atom(self) -> FieldExpr:
        t = self.next()
        if t.kind == "num":
            return F.constant(t.value)
        if t.kind == "(":
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name":
            return self.named(t)
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos,
                         expected=("number", "name", "'('"))

    def named(self, t: _Tok) -> FieldExpr:
        name = t.text
        if self.peek().kind != "(":
            if name in ("u", "x"):
                return Identity()
            if name == "i":
                return F.constant(1j)
            if name == "pi":
                return F.constant(math.pi)
            raise ParseError(f"unknown identifier {name!r}", t.pos,
                             expected=("u", "i", "pi", "function call"))
        if name == "ln":
            # only the stable fused form ln(cosh(...)) is supported
            self.expect("(")
            inner = self.peek()
            if inner.kind != "name" or inner.text != "cosh":
                raise ParseError("only ln(cosh(...)) is supported; "
                                 "write lncosh(...) elsewhere", inner.pos,
                                 expected=("cosh",))
            self.next()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            self.expect(")")
            return F.ln_cosh(arg)
        self.expect("(")
        args = [self.expr()]
        while self.peek().kind == ",":
            self.next()
            args.append(self.expr())
        self.expect(")")
        return self.call(name, args, t.pos)

    def call(self, name: str, args: list[FieldExpr], pos: int) -> FieldExpr:
        def arity(k):
            if len(args) != k:
                raise ParseError(f"{name} takes {k} argument(s), got {len(args)}",
                                 pos)

        def num(j):
            a = args[j]
            if not isinstance(a, Const) or a.value.imag != 0:
                raise ParseError(f"argument {j + 1} of {name} must be a real "
                                 "number", pos)
            return a.value.real

        if name in _UNARY:
            arity(1)
            return _UNARY[name](args[0])
        if name == "cosh":
            raise ParseError("cosh alone is not in the function set; "
                             "use lncosh(...) for ln(cosh(...))", pos)
        if name == "shift":
            arity(2)
            return F.shift(args[0], num(1))
        if name == "affine":
            arity(3)
            return F.precompose_affine(args[0], num(1), num(2))
        if name == "window":
            arity(3)
            return F.windowed(args[0], num(1), num(2))
        if name == "piecewise":
            if len(args) < 3 or len(args) % 2 == 0:
                raise ParseError("piecewise(p0, b0, p1, b1, ..., pn) alternates "
                                 "pieces and breakpoints", pos)
            pieces = args[0::2]
            points = [num(j) for j in range(1, len(args), 2)]
            return F.piecewise(points, pieces)
        if name == "bumptail":
            if len(args) < 2:
                raise ParseError("bumptail(expr, c0, c1, ...) needs coefficients",
                                 pos)
            coeffs = tuple(num(j) for j in range(1, len(args)))
            return BumpTail(args[0], coeffs)
        if name == "dsqrt":
            arity(2)
            return SqrtRatio(args[0], args[1])
        if name == "gauss":
            arity(3)
            return F.gaussian(num(1), num(2)) * args[0]
        raise ParseError(f"unknown function {name!r}", pos,
                         expected=sorted([*_UNARY, "shift", "affine", "window",
                                          "piecewise", "bumptail", "dsqrt"]))


def parse_expr(src: str) -> FieldExpr:
    """Parse the textual grammar into an expression tree."""
    return _Parser(src).parse()


# ---------------------------------------------------------------------------
# printer

def _fmt_real(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _fmt_const(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return _fmt_real(re) if re >= 0 else f"({_fmt_real(re)})"
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "(-i)"
        return f"({_fmt_real(im)}*i)"
    sign = "+" if im >= 0 else "-"
    return f"({_fmt_real(re)}{sign}{_fmt_real(abs(im))}*i)"


def to_text(e: FieldExpr) -> str:
    """Render an expression in the grammar; parse_expr round-trips it."""
    if isinstance(e, Const):
        return _fmt_const(e.value)
    if isinstance(e, Identity):
        return "u"
    if isinstance(e, Sum):
        return "(" + " + ".join(to_text(c) for c in e.children) + ")"
    if isinstance(e, Product):
        return "*".join(to_text(c) for c in e.children)
    if isinstance(e, Scale):
        return f"{_fmt_const(e.factor)}*{to_text(e.child)}"
    if isinstance(e, Affine):
        if e.slope == 1.0:
            return f"shift({to_text(e.child)}, {_fmt_real(e.offset)})"
        return (f"affine({to_text(e.child)}, {_fmt_real(e.slope)}, "
                f"{_fmt_real(e.offset)})")
    if isinstance(e, Conj):
        return f"conj({to_text(e.child)})"
    if isinstance(e, Exp):
        return f"exp({to_text(e.child)})"
    if isinstance(e, Power):
        return f"({to_text(e.child)})^{e.exponent}"
    if isinstance(e, SqrtNonneg):
        return f"sqrt({to_text(e.child)})"
    if isinstance(e, SqrtRatio):
        return f"dsqrt({to_text(e.num)}, {to_text(e.den)})"
    if isinstance(e, Step01):
        return f"step01({to_text(e.child)})"
    if isinstance(e, BumpTail):
        coeffs = ", ".join(_fmt_real(c) for c in e.coeffs)
        return f"bumptail({to_text(e.child)}, {coeffs})"
    if isinstance(e, LnCosh):
        return f"lncosh({to_text(e.child)})"
    if isinstance(e, Tanh):
        return f"tanh({to_text(e.child)})"
    if isinstance(e, Reciprocal):
        return f"recip({to_text(e.child)})"
    if isinstance(e, Piecewise):
        parts = [to_text(e.pieces[0])]
        for pt, piece in zip(e.points, e.pieces[1:]):
            parts.append(_fmt_real(pt))
            parts.append(to_text(piece))
        return "piecewise(" + ", ".join(parts) + ")"
    raise TypeError(f"cannot print {type(e).__name__}")

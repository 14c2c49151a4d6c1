"""Expression grammar and canonical printing.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' uint)?
    atom   := uint | ident | '(' expr ')'
    ident  := [a-z][a-z0-9_]*

Integers reduce modulo p; `g` names the extension generator when e > 1.
There is no unary minus.  The printer emits the canonical representation
(graded-lex descending terms, no whitespace) and printing then re-parsing is
the identity on canonical elements.
"""

from __future__ import annotations

from .errors import ParseError
from .fields import FieldCtx, FieldElement, Poly

__all__ = ["parse_element", "format_element", "format_poly", "format_coeff"]

_OPS = set("+-*/^()")


def _tokenize(s):
    tokens = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c in " \t\n\r":
            i += 1
            continue
        if c in _OPS:
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and s[j].isdigit():
                j += 1
            tokens.append(("int", int(s[i:j]), i))
            i = j
            continue
        if "a" <= c <= "z":
            j = i
            while j < n and (s[j].isdigit() or s[j] == "_" or "a" <= s[j] <= "z"):
                j += 1
            tokens.append(("ident", s[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, ctx, s):
        self.ctx = ctx
        self.tokens = _tokenize(s)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", tok[2])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("trailing input", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            rhs = self.factor()
            value = value * rhs if op == "*" else value / rhs
        return value

    def factor(self):
        value = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "int":
                raise ParseError("exponent must be an unsigned integer", tok[2])
            value = value ** tok[1]
        return value

    def atom(self):
        tok = self.advance()
        kind, val, pos = tok
        if kind == "int":
            return self.ctx.from_int(val)
        if kind == "ident":
            if val == "g":
                if self.ctx.e == 1:
                    raise ParseError("'g' needs an extension field", pos)
                return self.ctx.gen()
            if val in self.ctx.vars:
                return self.ctx.var(val)
            raise ParseError(f"unknown identifier {val!r}", pos)
        if kind == "(":
            value = self.expr()
            closing = self.advance()
            if closing[0] != ")":
                raise ParseError("expected ')'", closing[2])
            return value
        raise ParseError("expected a value", pos)


def parse_element(ctx: FieldCtx, s: str) -> FieldElement:
    return _Parser(ctx, s).parse()


def format_coeff(ctx: FieldCtx, code: int) -> str:
    """Coefficient code as a polynomial in g, highest power first."""
    if ctx.e == 1:
        return str(code)
    digits = ctx.tab.digits[code]
    parts = []
    for j in range(ctx.e - 1, -1, -1):
        d = digits[j]
        if d == 0:
            continue
        if j == 0:
            parts.append(str(d))
        else:
            gp = "g" if j == 1 else f"g^{j}"
            parts.append(gp if d == 1 else f"{d}*{gp}")
    if not parts:
        return "0"
    return "+".join(parts)


def format_poly(poly: Poly) -> str:
    if poly.is_zero():
        return "0"
    ctx = poly.ctx
    parts = []
    for exps in sorted(poly.terms, key=lambda k: (sum(k), k), reverse=True):
        code = poly.terms[exps]
        mono = []
        for i, e in enumerate(exps):
            if e == 0:
                continue
            name = ctx.vars[i]
            mono.append(name if e == 1 else f"{name}^{e}")
        cs = format_coeff(ctx, code)
        if not mono:
            parts.append(cs)
        elif code == 1:
            parts.append("*".join(mono))
        else:
            if "+" in cs:
                cs = f"({cs})"
            parts.append("*".join([cs] + mono))
    return "+".join(parts)


def format_element(fe: FieldElement) -> str:
    np = format_poly(fe.num)
    if fe.den.is_one():
        return np
    dp = format_poly(fe.den)
    if "+" in np:
        np = f"({np})"
    if "+" in dp or "*" in dp:
        dp = f"({dp})"
    return f"{np}/{dp}"

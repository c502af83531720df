"""Parser for form literals such as ``X^5 + Y^4*Z + b20*X^3*Z^2``.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := INT | 'zeta' '(' INT ')' | X | Y | Z | NAME | '(' expr ')'

Coefficients may mix rationals, ``zeta(n)^k`` and parameter names; division
and negative powers are only allowed for nonzero constants.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .cyclotomic import CycNum, zeta
from .forms import Monomial, ParamPoly, TernaryForm


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotHomogeneous(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1):
            out.append(_Tok("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(_Tok("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


# A polynomial value: dict Monomial -> ParamPoly (mixed degrees allowed)
_Poly = dict


def _const(c) -> _Poly:
    p = ParamPoly.coerce(c)
    return {Monomial(0, 0, 0): p} if not p.is_zero() else {}


def _add(a: _Poly, b: _Poly, sign: int = 1) -> _Poly:
    out = dict(a)
    for m, c in b.items():
        c = c if sign > 0 else -c
        out[m] = out[m] + c if m in out else c
        if out[m].is_zero():
            del out[m]
    return out


def _mul(a: _Poly, b: _Poly) -> _Poly:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = Monomial(m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
            v = c1 * c2
            out[m] = out[m] + v if m in out else v
    return {m: c for m, c in out.items() if not c.is_zero()}


def _as_constant(p: _Poly, tok: _Tok) -> CycNum:
    if not p:
        return CycNum.rational(0)
    if set(p) != {Monomial(0, 0, 0)} or not p[Monomial(0, 0, 0)].is_constant():
        raise ParseError("expected a constant", tok.pos)
    return p[Monomial(0, 0, 0)].constant_value()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.take()
        if t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def parse(self) -> _Poly:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return value

    def expr(self) -> _Poly:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            value = _add(value, self.term(), 1 if op == "+" else -1)
        return value

    def term(self) -> _Poly:
        value = self.unary()
        while self.peek().text in ("*", "/"):
            op = self.take()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op.text == "*":
                value = _mul(value, rhs)
            else:
                c = _as_constant(rhs, rhs_tok)
                if c.is_zero():
                    raise ParseError("division by zero", rhs_tok.pos)
                inv = ParamPoly.const(1 / c)
                value = {m: v * inv for m, v in value.items()}
        return value

    def unary(self) -> _Poly:
        t = self.peek()
        if t.text == "-":
            self.take()
            return {m: -c for m, c in self.unary().items()}
        if t.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> _Poly:
        base_tok = self.peek()
        base = self.atom()
        if self.peek().text != "^":
            return base
        self.take()
        neg = False
        if self.peek().text == "-":
            self.take()
            neg = True
        if self.peek().text == "(":
            # allow ^(-1) style
            self.take()
            if self.peek().text == "-":
                self.take()
                neg = not neg
            e_tok = self.take()
            self.expect(")")
        else:
            e_tok = self.take()
        if e_tok.kind != "int":
            raise ParseError("exponent must be an integer", e_tok.pos)
        e = int(e_tok.text)
        if neg:
            c = _as_constant(base, base_tok)
            if c.is_zero():
                raise ParseError("zero to a negative power", base_tok.pos)
            return _const(c ** (-e))
        out = _const(1)
        for _ in range(e):
            out = _mul(out, base)
        return out

    def atom(self) -> _Poly:
        t = self.take()
        if t.kind == "int":
            return _const(int(t.text))
        if t.text == "(":
            value = self.expr()
            self.expect(")")
            return value
        if t.kind == "name":
            if t.text in ("X", "Y", "Z"):
                idx = "XYZ".index(t.text)
                return {Monomial(*(int(i == idx) for i in range(3))): ParamPoly.const(1)}
            if t.text == "zeta":
                self.expect("(")
                n_tok = self.take()
                if n_tok.kind != "int" or int(n_tok.text) < 1:
                    raise ParseError("zeta order must be a positive integer", n_tok.pos)
                self.expect(")")
                return _const(zeta(int(n_tok.text), 1))
            if t.text.startswith("_"):
                raise ParseError("names starting with '_' are reserved", t.pos)
            return {Monomial(0, 0, 0): ParamPoly.var(t.text)}
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_polynomial(text: str) -> dict:
    return _Parser(text).parse()


def parse_form(text: str) -> TernaryForm:
    """Parse a homogeneous form; the degree is inferred."""
    poly = parse_polynomial(text)
    if not poly:
        raise NotHomogeneous("the zero polynomial has no degree")
    degrees = {m.degree for m in poly}
    if len(degrees) != 1:
        raise NotHomogeneous(f"terms of degrees {sorted(degrees)} in {text!r}")
    return TernaryForm(degrees.pop(), poly)


def parse_scalar(text: str) -> ParamPoly:
    """Parse a coefficient (no X, Y, Z allowed)."""
    poly = parse_polynomial(text)
    if not poly:
        return ParamPoly()
    if set(poly) != {Monomial(0, 0, 0)}:
        raise ParseError("coefficient may not contain X, Y or Z", 0)
    return poly[Monomial(0, 0, 0)]


def parse_constant(text: str) -> CycNum:
    p = parse_scalar(text)
    if not p.is_constant():
        raise ParseError(f"{text!r} is not a constant", 0)
    return p.constant_value()


def parse_assignments(items) -> dict[str, CycNum]:
    """Parse ``name=value`` strings (CLI --set)."""
    out = {}
    for item in items or ():
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ParseError(f"expected name=value in {part!r}", 0)
            name, value = part.split("=", 1)
            out[name.strip()] = parse_constant(value)
    return out

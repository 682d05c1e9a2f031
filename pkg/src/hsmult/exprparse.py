"""Recursive-descent parser for the polynomial expression grammar.

Grammar (whitespace-insensitive):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('+'|'-')* power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | NAME | '(' expr ')'

Names resolve to declared variables or, when allowed, parameters t_i_j.
Division builds an exact rational pair of polynomials, so both rational
literals (3/4) and series generators (1/(1-x)) come out of one grammar; the
caller decides whether a non-constant denominator is acceptable.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .poly import SparsePoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()+\-*/^]))")


def _tokenize(text):
    tokens = []
    pos = 0
    line = 1
    line_start = 0
    while pos < len(text):
        if text[pos] == "\n":
            line += 1
            line_start = pos + 1
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = pos - line_start + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", line, col)
        col = m.start(1 if m.group(1) else 2 if m.group(2) else 3) - line_start + 1
        if m.group(1):
            tokens.append(("int", int(m.group(1)), line, col))
        elif m.group(2):
            tokens.append(("name", m.group(2), line, col))
        else:
            tokens.append(("op", m.group(3), line, col))
        pos = m.end()
    tokens.append(("end", None, line, len(text) - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, field, nvars, var_index, param_lookup):
        self.tokens = tokens
        self.i = 0
        self.field = field
        self.nvars = nvars
        self.var_index = var_index
        self.param_lookup = param_lookup

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, token=None):
        t = token or self.peek()
        raise ParseError(message, t[2], t[3])

    def _const(self, n):
        one = SparsePoly.constant(self.field, self.nvars, self.field.one())
        return (
            SparsePoly.constant(self.field, self.nvars, self.field.from_int(n)),
            one,
        )

    def parse(self):
        value = self.expr()
        kind, _, _, _ = self.peek()
        if kind != "end":
            self.error("unexpected trailing input")
        return value

    def expr(self):
        num, den = self.term()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                n2, d2 = self.term()
                if val == "+":
                    num, den = num * d2 + n2 * den, den * d2
                else:
                    num, den = num * d2 - n2 * den, den * d2
            else:
                return num, den

    def term(self):
        num, den = self.unary()
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "*/":
                tok = self.next()
                n2, d2 = self.unary()
                if val == "*":
                    num, den = num * n2, den * d2
                else:
                    if n2.is_zero():
                        self.error("division by zero", tok)
                    num, den = num * d2, den * n2
            else:
                return num, den

    def unary(self):
        sign = 1
        while True:
            kind, val, _, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                if val == "-":
                    sign = -sign
            else:
                break
        num, den = self.power()
        if sign < 0:
            num = -num
        return num, den

    def power(self):
        num, den = self.atom()
        kind, val, _, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, k, _, _ = self.peek()
            if kind2 != "int":
                self.error("exponent must be an integer literal")
            self.next()
            num, den = num**k, den**k
        return num, den

    def atom(self):
        kind, val, line, col = self.next()
        if kind == "int":
            return self._const(val)
        if kind == "name":
            one = SparsePoly.constant(self.field, self.nvars, self.field.one())
            idx = self.var_index.get(val)
            if idx is not None:
                return SparsePoly.variable(self.field, self.nvars, idx), one
            scalar = self.param_lookup(val) if self.param_lookup else None
            if scalar is not None:
                return SparsePoly.constant(self.field, self.nvars, scalar), one
            raise ParseError(f"unknown variable {val!r}", line, col)
        if kind == "op" and val == "(":
            value = self.expr()
            kind2, val2, line2, col2 = self.next()
            if kind2 != "op" or val2 != ")":
                raise ParseError("expected ')'", line2, col2)
            return value
        raise ParseError(
            "expected a number, a variable, or '('"
            if kind != "end"
            else "unexpected end of expression",
            line,
            col,
        )


def parse_rational(text, field, var_names, param_lookup=None):
    """Parse to an exact pair (numerator, denominator) of SparsePoly."""
    tokens = _tokenize(text)
    var_index = {name: i for i, name in enumerate(var_names)}
    parser = _Parser(tokens, field, len(var_names), var_index, param_lookup)
    return parser.parse()


def parse_polynomial(text, field, var_names, param_lookup=None):
    """Parse an expression that must denote a polynomial (constant denominator)."""
    num, den = parse_rational(text, field, var_names, param_lookup)
    c = den.constant_term()
    if den.total_degree() > 0 or not c:
        raise ParseError(f"expression {text!r} is not a polynomial")
    one = field.one()
    return num if c == one else num.scale(one / c)


def parse_generator(text, field, var_names, param_lookup=None):
    """Parse a generator: a polynomial, or a rational series when the
    denominator is a non-constant power series with unit constant term."""
    from .series import RationalSeries

    num, den = parse_rational(text, field, var_names, param_lookup)
    c = den.constant_term()
    if den.total_degree() <= 0:
        if not c:
            raise ParseError(f"zero denominator in {text!r}")
        one = field.one()
        return num if c == one else num.scale(one / c)
    return RationalSeries(num, den)

"""Recursive-descent parser for the polynomial input language.

Grammar (whitespace insignificant)::

    expr    := sign? term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := ('+' | '-') factor | atom ('^' INT)?
    atom    := INT ('/' INT)? | NAME | '(' expr ')'

``p/q`` is only accepted as a rational literal; there is no division.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, UnknownGenerator

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>[0-9]+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()])"
)


def _tokenize(text):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.rfind("\n")
            if nl >= 0:
                line += chunk.count("\n")
                line_start = pos + nl + 1
        else:
            tokens.append((kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, tok[2], tok[3])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty polynomial")
        result = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expr(self):
        result = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek()[1] == "*":
            self.take()
            result = result * self.factor()
        return result

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", exp_tok)
            base = base ** int(exp_tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, text = tok[0], tok[1]
        if kind == "int":
            value = Fraction(int(text))
            if self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    raise self.error("expected integer denominator", den)
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                value = Fraction(int(text), int(den[1]))
            return self.ctx.const(value)
        if kind == "name":
            if text not in self.ctx.a and text not in self.ctx.x:
                raise UnknownGenerator(f"unknown generator {text!r} at line {tok[2]}, column {tok[3]}")
            return self.ctx.gen(text)
        if text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {text or 'end of input'!r}", tok)


def parse_poly(text: str, ctx):
    return _Parser(text, ctx).parse()

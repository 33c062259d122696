"""Text syntax for noncommutative polynomials.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('-' | '+') factor | atom ('^' ['-'] INT)?
    atom   := INT | IDENT | '(' expr ')'

Identifiers are generator names of the alphabet or the scalars q, s, lam.
Division and negative powers are allowed for scalars only.  Whitespace is
ignored.
"""

import re

from .field import LAM, Q, S, FieldElem
from .ncpoly import NCPoly

SCALARS = {"q": Q, "s": S, "lam": LAM}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    def __init__(self, pos, msg):
        super().__init__(f"position {pos}: {msg}")
        self.pos = pos


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num), start))
        elif ident is not None:
            out.append(("ident", ident, start))
        else:
            if op not in "+-*/^()":
                raise ParseError(start, f"unexpected character {op!r}")
            out.append(("op", op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, alphabet, scalars):
        self.toks = tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.scalars = scalars

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def accept(self, op):
        kind, val, _ = self.peek()
        if kind == "op" and val == op:
            self.i += 1
            return True
        return False

    def expect(self, op):
        kind, val, pos = self.peek()
        if not self.accept(op):
            raise ParseError(pos, f"expected {op!r}, found {val if val is not None else 'end of input'!r}")

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(pos, f"unexpected {val!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            if self.accept("*"):
                p = p * self.factor()
            elif self.peek()[1] == "/" and self.peek()[0] == "op":
                pos = self.take()[2]
                d = self.factor()
                if not d.is_scalar() or d.is_zero():
                    raise ParseError(pos, "can only divide by a nonzero scalar")
                p = p / d.scalar_part()
            else:
                return p

    def factor(self):
        if self.accept("-"):
            return -self.factor()
        if self.accept("+"):
            return self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            neg = self.accept("-")
            kind, n, pos = self.take()
            if kind != "num":
                raise ParseError(pos, "expected an integer exponent")
            if neg:
                if not base.is_scalar() or base.is_zero():
                    raise ParseError(pos, "negative powers are allowed for nonzero scalars only")
                return NCPoly.scalar(base.scalar_part() ** (-n))
            return base ** n
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return NCPoly.scalar(val)
        if kind == "ident":
            if val in self.scalars:
                return NCPoly.scalar(self.scalars[val])
            if self.alphabet is not None and val in self.alphabet.index:
                return NCPoly.monomial((self.alphabet.index[val],))
            raise ParseError(pos, f"unknown identifier {val!r}")
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(pos, f"unexpected {val if val is not None else 'end of input'!r}")


def parse_poly(text, alphabet, scalars=None):
    """Parse ``text`` into an NCPoly over ``alphabet``."""
    return _Parser(text, alphabet, SCALARS if scalars is None else scalars).parse()


def parse_scalar(text):
    """Parse a scalar expression in q, s, lam into a FieldElem."""
    p = _Parser(text, None, SCALARS).parse()
    if not p.is_scalar():
        raise ParseError(0, "not a scalar")
    return FieldElem.coerce(p.scalar_part())

"""Expression parsing and canonical serialization for algebra elements.

Grammar (whitespace insensitive):
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := rational | [rational '*'] gen ('*' gen)*
    rational := int ['/' int]
    gen      := identifier
A bare rational stands for a multiple of the unit monomial, so "0" is the
zero element.  Parse errors carry the offending position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from mcprod.cdga import Element, FreeCDGA

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*/]))")


class ParseError(Exception):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            if src[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {src[pos:].strip()[0]!r}", pos)
        if m.group("int"):
            out.append(_Token("int", m.group("int"), m.start("int")))
        elif m.group("name"):
            out.append(_Token("name", m.group("name"), m.start("name")))
        else:
            out.append(_Token("op", m.group("op"), m.start("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[_Token], algebra: FreeCDGA, src: str):
        self.tokens = tokens
        self.algebra = algebra
        self.src = src
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def next(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.src))
        self.i += 1
        return tok

    def parse(self) -> Element:
        out = self._term_signed(allow_sign=True)
        while True:
            tok = self.peek()
            if tok is None:
                return out
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                term = self._term()
                out = out + term if tok.text == "+" else out - term
            else:
                raise ParseError(f"expected '+' or '-', got {tok.text!r}", tok.pos)

    def _term_signed(self, allow_sign: bool) -> Element:
        tok = self.peek()
        if allow_sign and tok is not None and tok.kind == "op" and tok.text in "+-":
            self.next()
            term = self._term()
            return term if tok.text == "+" else -term
        return self._term()

    def _rational(self) -> Fraction:
        tok = self.next()
        if tok.kind != "int":
            raise ParseError(f"expected a number, got {tok.text!r}", tok.pos)
        num = int(tok.text)
        nxt = self.peek()
        if nxt is not None and nxt.kind == "op" and nxt.text == "/":
            self.next()
            den_tok = self.next()
            if den_tok.kind != "int":
                raise ParseError("expected a denominator", den_tok.pos)
            den = int(den_tok.text)
            if den == 0:
                raise ParseError("zero denominator", den_tok.pos)
            return Fraction(num, den)
        return Fraction(num)

    def _gen(self) -> str:
        tok = self.next()
        if tok.kind != "name":
            raise ParseError(f"expected a generator name, got {tok.text!r}", tok.pos)
        if tok.text not in self.algebra._index:
            raise ParseError(f"unknown generator {tok.text!r}", tok.pos)
        return tok.text

    def _term(self) -> Element:
        tok = self.peek()
        if tok is None:
            raise ParseError("empty term", len(self.src))
        coeff = Fraction(1)
        names: list[str] = []
        if tok.kind == "int":
            coeff = self._rational()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "op" and nxt.text == "*":
                self.next()
                names.append(self._gen())
            else:
                # bare rational: coeff * unit monomial
                return self.algebra.one().scale(coeff)
        else:
            names.append(self._gen())
        while True:
            nxt = self.peek()
            if nxt is not None and nxt.kind == "op" and nxt.text == "*":
                self.next()
                names.append(self._gen())
            else:
                break
        return self.algebra.monomial(names, coeff)


def parse_element(src: str, algebra: FreeCDGA) -> Element:
    """Parse an expression into a normalized Element; errors carry positions."""
    tokens = _tokenize(src)
    if not tokens:
        raise ParseError("empty expression", 0)
    parser = _Parser(tokens, algebra, src)
    out = parser.parse()
    return out


def serialize_element(x: Element) -> str:
    """Canonical text form; parse_element round-trips it exactly."""
    A = x.algebra
    if x.is_zero():
        return "0"
    bits = []
    for w in sorted(x.terms, key=lambda w: (A.word_degree(w), [A.keys[i] for i in w])):
        c = x.terms[w]
        name = "*".join(A.generators[i].name for i in w)
        mag = -c if c < 0 else c
        if not w:
            body = str(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{mag}*{name}"
        bits.append(("-" if c < 0 else "+", body))
    sign, body = bits[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in bits[1:]:
        out += f" {sign} {body}"
    return out

"""Parser and printer for polynomial test functions.

Grammar (whitespace insensitive, UTF-8):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | power
    power  := atom ('^' INTEGER)?
    atom   := NUMBER | 'pi' | VARIABLE | '(' expr ')'

Variables are ``x``, ``y``, ``z``; a prefix of that list is legal for the
requested dimension.  Exponents must be non-negative integer literals.
Implicit multiplication is not allowed: write ``2*x``, not ``2x``.
"""

from __future__ import annotations

import math
import re

from .polynomials import Poly, VAR_NAMES


class PolyParseError(ValueError):
    """Raised on malformed input; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+\.\d*|\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            where = len(text) - len(stripped)
            raise PolyParseError(f"unexpected character {text[where]!r}", where)
        if match.lastgroup == "number":
            tokens.append(("number", match.group("number"), match.start("number")))
        elif match.lastgroup == "name":
            tokens.append(("name", match.group("name"), match.start("name")))
        else:
            tokens.append(("op", match.group("op"), match.start("op")))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim: int):
        self.tokens = _tokenize(text)
        self.dim = dim
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, symbol: str) -> None:
        kind, value, pos = self.peek()
        if kind != "op" or value != symbol:
            raise PolyParseError(f"expected {symbol!r}", pos)
        self.advance()

    def parse(self) -> Poly:
        poly = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected {value!r}", pos)
        return poly

    def expr(self) -> Poly:
        poly = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                rhs = self.term()
                poly = poly + rhs if value == "+" else poly - rhs
            else:
                return poly

    def term(self) -> Poly:
        poly = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                poly = poly * self.factor()
            else:
                return poly

    def factor(self) -> Poly:
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.advance()
            inner = self.factor()
            return inner if value == "+" else -inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, pos = self.peek()
            if kind != "number" or "." in value:
                raise PolyParseError(
                    "exponent must be a non-negative integer literal", pos
                )
            self.advance()
            return base ** int(value)
        return base

    def atom(self) -> Poly:
        kind, value, pos = self.advance()
        if kind == "number":
            return Poly.constant(self.dim, float(value))
        if kind == "name":
            if value == "pi":
                return Poly.constant(self.dim, math.pi)
            if value in VAR_NAMES:
                axis = VAR_NAMES.index(value)
                if axis >= self.dim:
                    raise PolyParseError(
                        f"variable {value!r} is not available in dimension {self.dim}",
                        pos,
                    )
                return Poly.variable(self.dim, axis)
            raise PolyParseError(f"unknown name {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise PolyParseError(f"unexpected {value!r}" if value else "unexpected end of input", pos)


def parse_poly(text: str, dim: int) -> Poly:
    """Parse ``text`` into an exact polynomial in ``dim`` variables."""
    return _Parser(text, dim).parse()


def format_poly(p: Poly) -> str:
    """Deterministic rendering that parses back to the identical term map.

    Terms print in descending graded-lexicographic order of the exponent
    tuple (variables ordered x, y, z); coefficients use ``repr`` so exact
    float round-trip is guaranteed.
    """
    if not p.terms:
        return "0"
    ordered = sorted(p.terms.items(), key=lambda item: (sum(item[0]), item[0]), reverse=True)
    pieces: list[tuple[str, str]] = []
    for exps, coeff in ordered:
        factors = []
        for axis, e in enumerate(exps):
            if e == 1:
                factors.append(VAR_NAMES[axis])
            elif e > 1:
                factors.append(f"{VAR_NAMES[axis]}^{e}")
        magnitude = abs(coeff)
        if not factors:
            body = repr(magnitude)
        elif magnitude == 1.0:
            body = "*".join(factors)
        else:
            body = "*".join([repr(magnitude)] + factors)
        sign = "-" if coeff < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out

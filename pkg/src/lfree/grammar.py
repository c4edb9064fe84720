"""Equation grammar: parsing and canonical printing.

Grammar::

    equation := side '=' side
    side     := ['+'|'-'] term (('+'|'-') term)*
    term     := integer ['*'] identifier | identifier | integer

Variables on the right-hand side are moved to the left with negated coefficients;
pure integer terms are collected into the constant b of a1*x1 + ... + ak*xk = b.
"""

import logging
import re
from collections.abc import Iterator
from dataclasses import dataclass

from lfree.errors import EquationSyntaxError
from lfree.models import CanonicalTriple, LinearEquation

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(r"(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-*=])")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> Iterator[Token]:
    """Split an equation string into tokens, skipping whitespace."""
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise EquationSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup or "op"
        yield Token(kind, match.group(), pos)
        pos = match.end()
    yield Token("end", "", len(text))


class EquationParser:
    """Recursive-descent parser producing a LinearEquation in left-normal form."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.index = 0
        self.coeffs: dict[str, int] = {}
        self.first_seen: dict[str, int] = {}
        self.rhs = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def _error(self, message: str, token: Token | None = None) -> EquationSyntaxError:
        token = token or self.current
        return EquationSyntaxError(message, self.text, token.position)

    def parse(self) -> LinearEquation:
        self._side(1)
        if self.current.text != "=":
            raise self._error("expected '='")
        self._advance()
        self._side(-1)
        if self.current.kind != "end":
            raise self._error(f"unexpected {self.current.text!r}")

        if not self.coeffs:
            raise EquationSyntaxError("equation has no variables", self.text, 0)
        for name, value in self.coeffs.items():
            if value == 0:
                raise EquationSyntaxError(
                    f"coefficient of {name!r} combines to zero", self.text, self.first_seen[name]
                )
        if len(self.coeffs) < 2:
            raise EquationSyntaxError("equation needs at least two variables", self.text, 0)

        return LinearEquation(tuple(self.coeffs.values()), self.rhs)

    def _side(self, side_sign: int) -> None:
        sign = 1
        if self.current.text in ("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
        self._term(sign * side_sign)
        while self.current.text in ("+", "-"):
            sign = -1 if self._advance().text == "-" else 1
            self._term(sign * side_sign)

    def _term(self, sign: int) -> None:
        token = self.current
        if token.kind == "int":
            value = int(self._advance().text)
            if self.current.text == "*":
                self._advance()
                if self.current.kind != "ident":
                    raise self._error("expected a variable after '*'")
                self._add_variable(self._advance(), sign * value)
            elif self.current.kind == "ident":
                self._add_variable(self._advance(), sign * value)
            else:
                self.rhs -= sign * value
        elif token.kind == "ident":
            self._add_variable(self._advance(), sign)
        else:
            raise self._error("expected a term" if token.kind != "end" else "unexpected end")

    def _add_variable(self, token: Token, value: int) -> None:
        name = token.text
        if name not in self.coeffs:
            self.coeffs[name] = 0
            self.first_seen[name] = token.position
        self.coeffs[name] += value


def parse_equation(text: str) -> LinearEquation:
    """Parse an equation string such as ``"3x+2y=2z"``."""
    equation = EquationParser(text).parse()
    logger.debug(f"Parsed {text!r} as {equation.coeffs} = {equation.rhs}")
    return equation


def _signed_term(coeff: int, name: str, first: bool) -> str:
    sign = "-" if coeff < 0 else ("" if first else "+")
    magnitude = abs(coeff)
    return f"{sign}{'' if magnitude == 1 else magnitude}{name}"


def format_equation(equation: LinearEquation) -> str:
    """Canonical text over variables x1..xk; parse_equation inverts it."""
    terms = "".join(
        _signed_term(a, f"x{i + 1}", i == 0) for i, a in enumerate(equation.coeffs)
    )
    return f"{terms}={equation.rhs}"


def format_triple(triple: CanonicalTriple) -> str:
    """Print a triple as ``px+qy=rz``."""

    def coeff(c: int) -> str:
        return "" if c == 1 else str(c)

    return f"{coeff(triple.p)}x+{coeff(triple.q)}y={coeff(triple.r)}z"

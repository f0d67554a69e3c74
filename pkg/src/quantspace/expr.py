"""Quantity expressions: parsing, evaluation and formatting.

Grammar, loosest binding first::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '·' | '/' | <juxtaposition>) factor)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := number | symbol | '[1]' | '(' expr ')'
    exponent := ['-'] integer ('^' exponent)?      # right-associative, folded

Numbers are decimals (``2``, ``2.5``, ``1e3``) or ``p/q`` rationals written
without spaces.  Exponents are integers only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Union

from . import core
from .basis import DIMENSIONLESS_SYMBOL, UnitSystem
from .core import Quantity
from .errors import ParseError
from .scalar import Scalar

__all__ = [
    "Number",
    "Symbol",
    "Mul",
    "Div",
    "Pow",
    "Add",
    "Sub",
    "Neg",
    "Paren",
    "Expr",
    "parse",
    "evaluate",
    "format_expr",
    "format_quantity",
]


@dataclass(frozen=True)
class Number:
    text: str

    @property
    def value(self) -> Fraction:
        return Fraction(self.text)


@dataclass(frozen=True)
class Symbol:
    name: str


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg:
    operand: Expr


@dataclass(frozen=True)
class Paren:
    inner: Expr


Expr = Union[Number, Symbol, Mul, Div, Pow, Add, Sub, Neg, Paren]


class Token(NamedTuple):
    kind: str  # NUMBER, SYMBOL, OP, END
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<dimless>\[1\])
  | (?P<symbol>[^\W\d]\w*)
  | (?P<op>\*\*|[-+*/^()·×])
    """,
    re.VERBOSE,
)

_EXPONENT_LIMIT = 2**63


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "op":
                tok = {"**": "^", "·": "*", "×": "*"}.get(tok, tok)
            elif kind == "dimless":
                kind = "symbol"
            tokens.append(Token(kind.upper(), tok, m.start(), m.end()))
        pos = m.end()
    tokens.append(Token("END", "", len(text), len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        offset = _byte_offset(self.text, tok.start)
        if tok.kind == "END":
            return ParseError("unexpected end of input", offset)
        return ParseError(f"unexpected {tok.text!r}", offset)

    def is_op(self, *ops: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text in ops

    def expect(self, op: str) -> Token:
        if not self.is_op(op):
            raise self.error()
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "END":
            raise self.error()
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.is_op("+", "-"):
            op = self.advance().text
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def starts_atom(self) -> bool:
        return self.tok.kind in ("NUMBER", "SYMBOL") or self.is_op("(")

    def term(self) -> Expr:
        node = self.factor()
        while True:
            if self.is_op("*"):
                self.advance()
                node = Mul(node, self.factor())
            elif self.is_op("/"):
                self.advance()
                node = Div(node, self.factor())
            elif self.starts_atom():
                node = Mul(node, self.factor())
            else:
                return node

    def factor(self) -> Expr:
        if self.is_op("-"):
            self.advance()
            return Neg(self.factor())
        node = self.atom()
        if self.is_op("^"):
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> int:
        if self.is_op("("):
            self.advance()
            k = self.exponent()
            self.expect(")")
        else:
            sign = 1
            if self.is_op("-", "+"):
                sign = -1 if self.advance().text == "-" else 1
            tok = self.tok
            if tok.kind != "NUMBER" or not tok.text.isdigit():
                raise ParseError(
                    "exponent must be an integer", _byte_offset(self.text, tok.start)
                )
            self.advance()
            k = sign * int(tok.text)
        if self.is_op("^"):
            at = self.advance()
            e = self.exponent()
            k = self._int_power(k, e, at)
        return k

    def _int_power(self, k: int, e: int, at: Token) -> int:
        offset = _byte_offset(self.text, at.start)
        if e < 0 and abs(k) != 1:
            raise ParseError("exponent must be an integer", offset)
        if abs(k) > 1 and e > 64:
            raise ParseError("exponent too large", offset)
        value = k ** abs(e) if e >= 0 else k
        if abs(value) >= _EXPONENT_LIMIT:
            raise ParseError("exponent too large", offset)
        return value

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "NUMBER":
            self.advance()
            return Number(self._rational_literal(tok))
        if tok.kind == "SYMBOL":
            self.advance()
            return Symbol(tok.text)
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return Paren(inner)
        raise self.error()

    def _rational_literal(self, tok: Token) -> str:
        # "p/q" with no spaces is one literal, unless it would steal the
        # operand of a preceding '/' or the base of a following '^'
        slash, q = self.tok, self.peek()
        prev = self.tokens[self.i - 2] if self.i >= 2 else None
        if (
            tok.text.isdigit()
            and slash.kind == "OP"
            and slash.text == "/"
            and slash.start == tok.end
            and q.kind == "NUMBER"
            and q.text.isdigit()
            and q.start == slash.end
            and int(q.text) != 0
            and not (prev is not None and prev.kind == "OP" and prev.text == "/")
            and not (self.peek(2).kind == "OP" and self.peek(2).text == "^")
        ):
            self.i += 2
            return f"{tok.text}/{q.text}"
        return tok.text


def parse(text: str) -> Expr:
    """Parse a quantity expression; raises :class:`ParseError` with a byte offset."""
    return _Parser(text).parse()


def evaluate(
    node: Expr, system: UnitSystem, bindings: Mapping[str, Quantity] | None = None
) -> Quantity:
    """Evaluate an expression to a quantity of ``system``.

    Names are looked up in ``bindings`` first, then in the unit table.
    """
    bindings = bindings or {}

    def ev(n: Expr) -> Quantity:
        if isinstance(n, Number):
            return core.scale(Scalar(n.value, system.scalars), core.one(system.space))
        if isinstance(n, Symbol):
            if n.name in bindings:
                return bindings[n.name]
            return system.resolve(n.name)
        if isinstance(n, Paren):
            return ev(n.inner)
        if isinstance(n, Mul):
            return core.mul(ev(n.left), ev(n.right))
        if isinstance(n, Div):
            return core.mul(ev(n.left), core.invert(ev(n.right)))
        if isinstance(n, Pow):
            return core.pow(ev(n.base), n.exponent)
        if isinstance(n, Add):
            return core.add(ev(n.left), ev(n.right))
        if isinstance(n, Sub):
            return core.sub(ev(n.left), ev(n.right))
        if isinstance(n, Neg):
            return core.neg(ev(n.operand))
        raise TypeError(f"not an expression node: {n!r}")

    return ev(node)


def _level(n: Expr) -> int:
    if isinstance(n, (Add, Sub)):
        return 1
    if isinstance(n, (Mul, Div)):
        return 2
    if isinstance(n, Neg):
        return 3
    if isinstance(n, Pow):
        return 4
    return 5


def format_expr(node: Expr) -> str:
    """Render an AST so that ``parse(format_expr(ast)) == ast`` for parsed ASTs."""

    def fmt(n: Expr, need: int) -> str:
        s = _fmt(n)
        return f"({s})" if _level(n) < need else s

    def _fmt(n: Expr) -> str:
        if isinstance(n, Number):
            return n.text
        if isinstance(n, Symbol):
            return n.name
        if isinstance(n, Paren):
            return f"({fmt(n.inner, 0)})"
        if isinstance(n, Add):
            return f"{fmt(n.left, 1)} + {fmt(n.right, 2)}"
        if isinstance(n, Sub):
            return f"{fmt(n.left, 1)} - {fmt(n.right, 2)}"
        if isinstance(n, Mul):
            return f"{fmt(n.left, 2)}*{fmt(n.right, 3)}"
        if isinstance(n, Div):
            left, right = fmt(n.left, 2), fmt(n.right, 3)
            if left[-1].isdigit() and right[0].isdigit():
                return f"{left} / {right}"  # "3/2" would read back as one literal
            return f"{left}/{right}"
        if isinstance(n, Neg):
            return f"-{fmt(n.operand, 3)}"
        if isinstance(n, Pow):
            return f"{fmt(n.base, 5)}^{n.exponent}"
        raise TypeError(f"not an expression node: {n!r}")

    return fmt(node, 0)


def unit_string(exponents: tuple[int, ...], base_units: tuple[str, ...]) -> str:
    parts = []
    for sym, k in zip(base_units, exponents):
        if k == 1:
            parts.append(sym)
        elif k:
            parts.append(f"{sym}^{k}")
    return "·".join(parts)


def format_quantity(q: Quantity, system: UnitSystem, substitute_derived: bool = False) -> str:
    """``"<measure> <b1^k1·...>"``; dimensionless quantities print as ``"<measure> [1]"``."""
    measure = str(q.measure)
    if substitute_derived:
        for sym, unit in system.derived_units.items():
            if unit.dim == q.dim and unit.measure == system.scalars.one():
                return f"{measure} {sym}"
    if q.dim.is_identity():
        return f"{measure} {DIMENSIONLESS_SYMBOL}"
    return f"{measure} {unit_string(q.exponents, system.base_units)}"

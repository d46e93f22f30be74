"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace-insensitive, no implicit multiplication):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | var | '(' expr ')' | '-' base

Exponents must be non-negative integer literals and variables must appear
in the declared variable list.  Errors carry a 1-based column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .ring import MultiPoly


class ParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.column = column


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Sub:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class Mul:
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int


ExprAst = Union[Lit, Var, Add, Sub, Neg, Mul, Pow]


# -- tokenizer ------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == match.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            col = len(text) - len(stripped) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", col)
        column = match.start(match.lastindex) + 1
        if match.group(1) is not None:
            tokens.append(("int", match.group(1), column))
        elif match.group(2) is not None:
            tokens.append(("name", match.group(2), column))
        else:
            tokens.append(("op", match.group(3), column))
        pos = match.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.index = 0
        self.variables = tuple(variables)

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, symbol: str) -> None:
        kind, value, column = self.peek()
        if kind != "op" or value != symbol:
            raise ParseError(f"expected {symbol!r}", column)
        self.advance()

    def parse(self) -> ExprAst:
        node = self.expr()
        kind, value, column = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", column)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                right = self.term()
                node = Add(node, right) if value == "+" else Sub(node, right)
            else:
                return node

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = Mul(node, self.factor())
            else:
                return node

    def factor(self) -> ExprAst:
        node = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            ekind, evalue, ecolumn = self.peek()
            if ekind != "int":
                raise ParseError("exponent must be a non-negative integer literal", ecolumn)
            self.advance()
            return Pow(node, int(evalue))
        return node

    def base(self) -> ExprAst:
        kind, value, column = self.advance()
        if kind == "int":
            return Lit(int(value))
        if kind == "name":
            if value not in self.variables:
                raise ParseError(
                    f"unknown variable {value!r} (declared: {', '.join(self.variables) or 'none'})",
                    column,
                )
            return Var(value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and value == "-":
            return Neg(self.base())
        raise ParseError(f"expected a number, variable, '(' or '-', got {value!r}"
                         if kind != "end" else "unexpected end of input", column)


def parse_expr(text: str, variables: Sequence[str]) -> ExprAst:
    """Parse ``text`` against the grammar; raises ParseError with a 1-based column."""
    return _Parser(text, variables).parse()


def ast_to_poly(node: ExprAst, variables: Sequence[str]) -> MultiPoly:
    variables = tuple(variables)
    if isinstance(node, Lit):
        return MultiPoly.const(variables, node.value)
    if isinstance(node, Var):
        return MultiPoly.var(node.name, variables)
    if isinstance(node, Add):
        return ast_to_poly(node.left, variables) + ast_to_poly(node.right, variables)
    if isinstance(node, Sub):
        return ast_to_poly(node.left, variables) - ast_to_poly(node.right, variables)
    if isinstance(node, Neg):
        return -ast_to_poly(node.operand, variables)
    if isinstance(node, Mul):
        return ast_to_poly(node.left, variables) * ast_to_poly(node.right, variables)
    if isinstance(node, Pow):
        return ast_to_poly(node.base, variables) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse and lower to a polynomial in one step."""
    return ast_to_poly(parse_expr(text, variables), variables)

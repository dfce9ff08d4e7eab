"""Recursive-descent parser for coefficient expressions in ``n``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' natural)?
    atom   := rational | 'n' | identifier | '(' expr ')' | '-' atom

A rational literal is ``digits`` or ``digits/digits``.  A leading minus on an
atom is accepted as a convenience (``-1/2*n``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .errors import SpecError
from .seqcore import PolyN


class ParseError(SpecError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnboundParameterError(SpecError):
    pass


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Param:
    name: str
    position: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Param, BinOp, Neg, Pow]

_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))"
)


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r}", pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, pos = self.take()
            if kind != "rat" or "/" in val:
                raise ParseError("exponent must be a natural number literal", pos)
            return Pow(base, int(val))
        return base

    def atom(self) -> Node:
        kind, val, pos = self.take()
        if kind == "rat":
            return Num(Fraction(val.replace(" ", "")))
        if kind == "ident":
            return Var() if val == "n" else Param(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "op" and val == "-":
            return Neg(self.atom())
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse_expr(text: str) -> Node:
    try:
        return _Parser(text).parse()
    except ZeroDivisionError:
        raise ParseError("zero denominator in rational literal", 0) from None


def lower(node: Node, bindings: Mapping[str, Fraction]) -> PolyN:
    """Expand the tree into a canonical polynomial in ``n``."""
    if isinstance(node, Num):
        return PolyN.const(node.value)
    if isinstance(node, Var):
        return PolyN.n()
    if isinstance(node, Param):
        if node.name not in bindings:
            raise UnboundParameterError(
                f"unbound identifier {node.name!r} at position {node.position}")
        return PolyN.const(Fraction(bindings[node.name]))
    if isinstance(node, Neg):
        return -lower(node.operand, bindings)
    if isinstance(node, Pow):
        return lower(node.base, bindings) ** node.exponent
    left, right = lower(node.left, bindings), lower(node.right, bindings)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def interpret(node: Node, n, bindings: Mapping[str, Fraction]) -> Fraction:
    """Evaluate the tree directly at one value of ``n`` (no expansion)."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return Fraction(n)
    if isinstance(node, Param):
        if node.name not in bindings:
            raise UnboundParameterError(f"unbound identifier {node.name!r}")
        return Fraction(bindings[node.name])
    if isinstance(node, Neg):
        return -interpret(node.operand, n, bindings)
    if isinstance(node, Pow):
        return interpret(node.base, n, bindings) ** node.exponent
    a, b = interpret(node.left, n, bindings), interpret(node.right, n, bindings)
    return a + b if node.op == "+" else a - b if node.op == "-" else a * b


def parse_coeff_expr(text: str, bindings: Mapping[str, Fraction] = None) -> PolyN:
    """Parse ``text`` and expand it into a polynomial in ``n``.

    >>> print(parse_coeff_expr("(n+1)*(n+alpha+1)", {"alpha": 0}))
    n^2 + 2*n + 1
    """
    return lower(parse_expr(text), bindings or {})

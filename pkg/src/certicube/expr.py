"""Recursive-descent parser for textual integrands.

Grammar:
    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' factor)?          # right-associative power
    base   := number | var | func '(' expr ')' | '(' expr ')' | '-' base
    var    := 'x' digits                  # 1-indexed

Functions: exp, sin, cos, log, sqrt. Node evaluation is numpy-based, so
a parsed tree accepts a single point (n,) or a batch (m, n).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ArityError, ParseError

FUNCTIONS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "log": np.log,
    "sqrt": np.sqrt,
}

_TOKEN_RE = re.compile(r"""
    \s*(
        (?P<number>\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?)
      | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>[-+*/^()])
    )
""", re.VERBOSE)


@dataclass(frozen=True)
class Num:
    value: float

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var:
    index: int  # 1-based

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Neg:
    child: object

    def __str__(self):
        return f"-{_wrap(self.child, 3)}"


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object

    def __str__(self):
        prec = _PREC[self.op]
        # Right operand needs parens at equal precedence for - / (left-
        # associative) but not for ^ (right-associative).
        lhs = _wrap(self.left, prec if self.op != "^" else prec + 1)
        rhs = _wrap(self.right, prec + 1 if self.op != "^" else prec)
        return f"{lhs} {self.op} {rhs}" if self.op in "+-" \
            else f"{lhs}{self.op}{rhs}"


@dataclass(frozen=True)
class Func:
    name: str
    child: object

    def __str__(self):
        return f"{self.name}({self.child})"


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}


def _prec_of(node):
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 2.5  # binds below ^ in printed form
    return 10


def _wrap(node, minimum):
    text = str(node)
    return text if _prec_of(node) >= minimum else f"({text})"


def evaluate(node, point):
    """Evaluate a tree at a point (n,) or batch (m, n) of points."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return point[..., node.index - 1]
    if isinstance(node, Neg):
        return -evaluate(node.child, point)
    if isinstance(node, Func):
        return FUNCTIONS[node.name](evaluate(node.child, point))
    left = evaluate(node.left, point)
    right = evaluate(node.right, point)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if node.op == "/":
        return left / right
    return np.power(left, right)


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None or match.group(1) is None:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                bad_at = len(text) - len(stripped)
                raise ParseError(
                    f"unexpected character {text[bad_at]!r} at {bad_at}",
                    position=bad_at)
            if match.group("number") is not None:
                kind = "number"
            elif match.group("ident") is not None:
                kind = "ident"
            else:
                kind = "op"
            self.tokens.append((kind, match.group(1).strip(), match.start(1)))
            pos = match.end()
        self.tokens.append(("end", "", len(text)))
        self.cursor = 0

    def peek(self):
        return self.tokens[self.cursor]

    def advance(self):
        token = self.tokens[self.cursor]
        self.cursor += 1
        return token

    def expect(self, value):
        kind, text, pos = self.peek()
        if text != value:
            shown = text if kind != "end" else "end of input"
            raise ParseError(
                f"expected {value!r}, found {shown} at {pos}",
                position=pos, expected=(value,))
        return self.advance()


def parse(text, n):
    """Parse ``text`` over variables x1..xn into an expression tree."""
    tok = _Tokenizer(text)
    tree = _expr(tok, n)
    kind, remaining, pos = tok.peek()
    if kind != "end":
        raise ParseError(
            f"unexpected trailing input {remaining!r} at {pos}",
            position=pos, expected=("end of input",))
    return tree


def _expr(tok, n):
    node = _term(tok, n)
    while tok.peek()[1] in ("+", "-"):
        op = tok.advance()[1]
        node = Bin(op, node, _term(tok, n))
    return node


def _term(tok, n):
    node = _factor(tok, n)
    while tok.peek()[1] in ("*", "/"):
        op = tok.advance()[1]
        node = Bin(op, node, _factor(tok, n))
    return node


def _factor(tok, n):
    node = _base(tok, n)
    if tok.peek()[1] == "^":
        tok.advance()
        node = Bin("^", node, _factor(tok, n))
    return node


def _base(tok, n):
    kind, text, pos = tok.peek()
    if kind == "number":
        tok.advance()
        return Num(float(text))
    if kind == "ident":
        tok.advance()
        if text in FUNCTIONS:
            tok.expect("(")
            inner = _expr(tok, n)
            tok.expect(")")
            return Func(text, inner)
        match = re.fullmatch(r"x(\d+)", text)
        if match:
            index = int(match.group(1))
            if not 1 <= index <= n:
                raise ArityError(
                    f"variable {text} outside x1..x{n}")
            return Var(index)
        raise ParseError(
            f"unknown identifier {text!r} at {pos}", position=pos,
            expected=tuple(sorted(FUNCTIONS)) + ("x<i>",))
    if text == "(":
        tok.advance()
        inner = _expr(tok, n)
        tok.expect(")")
        return inner
    if text == "-":
        tok.advance()
        return Neg(_base(tok, n))
    shown = text if kind != "end" else "end of input"
    raise ParseError(
        f"expected a value, found {shown} at {pos}", position=pos,
        expected=("number", "variable", "function", "(", "-"))

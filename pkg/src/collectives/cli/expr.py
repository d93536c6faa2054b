"""Collective expressions: ``potluck(U=[pie, salad], variant=first_served)``.

Grammar::

    expr    := NAME "(" [param ("," param)*] ")"
    param   := NAME "=" value | value
    value   := expr | literal
    literal := INT | INT "/" INT | "true" | "false" | SYMBOL | STRING
             | "[" [value ("," value)*] "]" | "{" [value ("," value)*] "}"

Symbols are bare identifiers; anything else that should be a string is
written in double quotes.  Rationals are normalized when parsed.  Error
offsets are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import ParseError


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple  # of Param


@dataclass(frozen=True)
class Param:
    name: str | None
    value: "Node"


@dataclass(frozen=True)
class ListLit:
    items: tuple


@dataclass(frozen=True)
class SetLit:
    items: tuple  # kept in source order; duplicates are a parse error


Node = Union[Call, ListLit, SetLit, int, Fraction, bool, str]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"-?[0-9]+(?:/[0-9]+)?")
_STRING = re.compile(r'"((?:[^"\\]|\\.)*)"')
_ESCAPE = re.compile(r"\\(.)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i=None) -> int:
        return len(self.text[: self.i if i is None else i].encode("utf-8"))

    def fail(self, message, i=None):
        raise ParseError(message, self.offset(i))

    def skip_ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.text[self.i]) if self.i < len(self.text) else "end of input"
            self.fail(f"expected {ch!r}, found {found}")
        self.i += 1

    def name(self) -> str:
        self.skip_ws()
        m = _NAME.match(self.text, self.i)
        if not m:
            self.fail("expected a name")
        self.i = m.end()
        return m.group()

    def expr(self) -> Call:
        start = self.i
        name = self.name()
        if self.peek() != "(":
            self.fail(f"expected '(' after {name!r}")
        call = self.call_rest(name, start)
        return call

    def call_rest(self, name, start) -> Call:
        self.expect("(")
        args = []
        if self.peek() != ")":
            while True:
                if not self.peek():
                    self.fail(f"unbalanced '(' opened by {name!r}", start + len(name))
                args.append(self.param())
                if self.peek() == ",":
                    self.i += 1
                    continue
                break
        if self.peek() != ")":
            if self.i >= len(self.text):
                self.fail(f"unbalanced '(' opened by {name!r}", start + len(name))
            self.fail(f"expected ',' or ')', found {self.text[self.i]!r}")
        self.i += 1
        seen = set()
        for p in args:
            if p.name is not None:
                if p.name in seen:
                    self.fail(f"parameter {p.name!r} given twice", start)
                seen.add(p.name)
        return Call(name, tuple(args))

    def param(self) -> Param:
        self.skip_ws()
        m = _NAME.match(self.text, self.i)
        if m:
            save = self.i
            self.i = m.end()
            if self.peek() == "=":
                self.i += 1
                return Param(m.group(), self.value())
            self.i = save
        return Param(None, self.value())

    def value(self) -> Node:
        ch = self.peek()
        if ch == "[":
            return ListLit(self.items("[", "]"))
        if ch == "{":
            start = self.i
            items = self.items("{", "}")
            if len(set(items)) != len(items):
                self.fail("set literal has duplicate elements", start)
            return SetLit(items)
        if ch == '"':
            m = _STRING.match(self.text, self.i)
            if not m:
                self.fail("unterminated string")
            self.i = m.end()
            return _ESCAPE.sub(r"\1", m.group(1))
        m = _NUMBER.match(self.text, self.i)
        if m:
            self.i = m.end()
            num, _, den = m.group().partition("/")
            if den:
                if int(den) == 0:
                    self.fail("zero denominator", m.start())
                q = Fraction(int(num), int(den))
                return q.numerator if q.denominator == 1 else q
            return int(num)
        m = _NAME.match(self.text, self.i)
        if m:
            start = self.i
            self.i = m.end()
            if self.peek() == "(":
                return self.call_rest(m.group(), start)
            if m.group() in ("true", "false"):
                return m.group() == "true"
            return m.group()
        if not ch:
            self.fail("unexpected end of input")
        self.fail(f"unexpected character {ch!r}")

    def items(self, open_, close) -> tuple:
        self.expect(open_)
        out = []
        if self.peek() != close:
            while True:
                out.append(self.value())
                if self.peek() == ",":
                    self.i += 1
                    continue
                break
        self.expect(close)
        return tuple(out)


def parse_expr(text: str) -> Call:
    """Parse a collective expression; raises :class:`ParseError` with a byte offset."""
    p = _Parser(text)
    e = p.expr()
    p.skip_ws()
    if p.i != len(text):
        p.fail(f"unexpected trailing input {text[p.i:]!r}")
    return e


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def print_node(node: Node) -> str:
    if isinstance(node, Call):
        inner = ", ".join(print_node(p.value) if p.name is None else f"{p.name}={print_node(p.value)}" for p in node.args)
        return f"{node.name}({inner})"
    if isinstance(node, ListLit):
        return "[" + ", ".join(print_node(x) for x in node.items) + "]"
    if isinstance(node, SetLit):
        return "{" + ", ".join(print_node(x) for x in node.items) + "}"
    if node is True or node is False:
        return "true" if node else "false"
    if isinstance(node, Fraction):
        return str(node.numerator) if node.denominator == 1 else f"{node.numerator}/{node.denominator}"
    if type(node) is int:
        return str(node)
    if isinstance(node, str):
        if _NAME.fullmatch(node) and node not in ("true", "false"):
            return node
        return _quote(node)
    raise TypeError(f"not an expression node: {node!r}")


def print_expr(e: Call) -> str:
    return print_node(e)

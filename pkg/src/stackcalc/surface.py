"""Concrete ASCII syntax.

    term   := 'bd' IDENT '.' term | app
    app    := prim ('@' stack)*
    prim   := 'car' '(' stack ')' | '#' CONST | '(' term ')'
    stack  := term '::' stack | 'cdr' ['^' NAT] '(' stack ')' | 'nil' | IDENT | '(' stack ')'
"""

from __future__ import annotations

import re
from typing import NamedTuple

from . import constants
from .syntax import (
    NIL, Abs, App, Car, Cdr, Expr, Nil, Push, Var, VarName, cdr, is_term,
)

KEYWORDS = {"bd", "car", "cdr", "nil"}

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<push>::)|(?P<ident>[a-z][a-zA-Z0-9_]*)|(?P<const>#[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<nat>[0-9]+)|(?P<sym>[.@()^])"
)


class ParseError(SyntaxError):
    def __init__(self, line: int, col: int, expected):
        self.line, self.col = line, col
        self.expected = frozenset(expected)
        super().__init__(f"line {line}, col {col}: expected one of {sorted(self.expected)}")


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(line, pos - line_start + 1, {"token"})
        kind = m.lastgroup
        tok = m.group()
        if kind == "ws":
            for i, ch in enumerate(tok):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "ident" and tok in KEYWORDS:
                kind = tok
            elif kind in ("sym", "push"):
                kind = tok
            tokens.append(Token(kind, tok, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.furthest = None

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def fail(self, *expected):
        tok = self.peek()
        err = ParseError(tok.line, tok.col, expected)
        if self.furthest is None or (tok.line, tok.col) > (self.furthest.line, self.furthest.col):
            self.furthest = err
        raise err

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(kind)
        self.i += 1
        return tok

    def term(self):
        if self.peek().kind == "bd":
            self.i += 1
            name = self.expect("ident")
            self.expect(".")
            return Abs(VarName.parse(name.text), self.term())
        t = self.prim()
        while self.peek().kind == "@":
            self.i += 1
            t = App(t, self.stack())
        return t

    def prim(self):
        tok = self.peek()
        if tok.kind == "car":
            self.i += 1
            self.expect("(")
            s = self.stack()
            self.expect(")")
            return Car(s)
        if tok.kind == "const":
            self.i += 1
            try:
                return constants.lookup(tok.text[1:])
            except KeyError:
                self.fail("CONST")
        if tok.kind == "(":
            self.i += 1
            t = self.term()
            self.expect(")")
            return t
        self.fail("bd", "car", "#CONST", "(")

    def stack(self):
        tok = self.peek()
        if tok.kind == "nil":
            self.i += 1
            return NIL
        if tok.kind == "ident":
            self.i += 1
            return Var(VarName.parse(tok.text))
        if tok.kind == "cdr":
            self.i += 1
            n = 1
            if self.peek().kind == "^":
                self.i += 1
                n = int(self.expect("nat").text)
            self.expect("(")
            s = self.stack()
            self.expect(")")
            return cdr(s, n)
        if tok.kind in ("bd", "car", "const"):
            return self._push()
        if tok.kind == "(":
            start = self.i
            try:
                return self._push()
            except ParseError:
                self.i = start
            self.i += 1
            s = self.stack()
            self.expect(")")
            return s
        self.fail("bd", "car", "cdr", "nil", "IDENT", "#CONST", "(")

    def _push(self):
        head = self.term()
        self.expect("::")
        return Push(head, self.stack())


def parse(text: str, sort: str = "term") -> Expr:
    p = _Parser(text)
    try:
        e = p.term() if sort == "term" else p.stack()
        p.expect("eof")
    except ParseError as err:
        raise p.furthest or err from None
    return e


def parse_term(text: str):
    return parse(text, "term")


def parse_stack(text: str):
    return parse(text, "stack")


# ---------------------------------------------------------------------------
# printing


def show(e: Expr) -> str:
    return _term(e) if is_term(e) else _stack(e)


def _term(t) -> str:
    if isinstance(t, Abs):
        return f"bd {t.binder}. {_term(t.body)}"
    if isinstance(t, App):
        fun = f"({_term(t.fun)})" if isinstance(t.fun, Abs) else _term(t.fun)
        return f"{fun} @ {_stack(t.arg)}"
    if isinstance(t, Car):
        return f"car({_stack(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def _stack(s) -> str:
    if isinstance(s, Nil):
        return "nil"
    if isinstance(s, Var):
        return str(s.name)
    if isinstance(s, Cdr):
        sugar = "cdr" if s.n == 1 else f"cdr^{s.n}"
        return f"{sugar}({_stack(s.arg)})"
    if isinstance(s, Push):
        head = _term(s.head)
        if isinstance(s.head, (Abs, App)):
            head = f"({head})"
        return f"{head} :: {_stack(s.tail)}"
    raise TypeError(f"not a stack: {s!r}")

"""Precedence-climbing parser for Grassmann and superfunction literals.

Grammar (all binary operators left associative)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)*
    atom   := NUMBER | SYMBOL | '(' expr ')'

Symbols are ``c<k>`` in the Grassmann context, ``x<k>``/``y<k>`` for
superfunctions and ``z<k>``/``c<k>`` for graded functions.  Division is only
allowed by a numeric constant.  Errors carry the 0-based character offset.
"""

import re
from dataclasses import dataclass

from .errors import ParseError
from .grassmann import GrassmannElement
from .scalars import EXACT, to_exact
from .superfunction import SuperFunction

CONTEXTS = {
    "grassmann": {"c": "odd"},
    "superfunction": {"x": "even", "y": "odd"},
    "graded": {"z": "even", "c": "odd"},
}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+)|(?P<sym>[a-z]\d+)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        kind = mt.lastgroup
        start = mt.start(kind)
        tokens.append(Token(kind, mt.group(kind), start))
        pos = mt.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST nodes are plain tuples: ("num", value), ("sym", letter, index),
# ("neg", a), ("add"|"sub"|"mul", a, b), ("div", a, const), ("pow", a, k)

class _Parser:
    def __init__(self, text, symbols):
        self.text = text
        self.symbols = symbols
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError(0, "empty expression")
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.pos, f"unexpected {tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.text == "*":
                node = ("mul", node, rhs)
            else:
                value = _constant(rhs)
                if value is None:
                    raise ParseError(tok.pos, "division is only allowed by a numeric constant")
                if value == 0:
                    raise ParseError(tok.pos, "division by zero")
                node = ("div", node, value)
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return ("neg", self.unary())
        if tok.kind == "op" and tok.text == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        while self.peek().kind == "op" and self.peek().text == "^":
            caret = self.take()
            tok = self.take()
            if tok.kind != "num" or not tok.text.isdigit():
                raise ParseError(tok.pos if tok.kind != "end" else caret.pos + 1,
                                 "exponent must be a nonnegative integer")
            node = ("pow", node, int(tok.text))
        return node

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return ("num", to_exact(tok.text))
        if tok.kind == "sym":
            letter, idx = tok.text[0], int(tok.text[1:])
            if letter not in self.symbols:
                raise ParseError(tok.pos, f"unknown symbol {tok.text!r}")
            if idx < 1:
                raise ParseError(tok.pos, "symbol indices start at 1")
            return ("sym", letter, idx)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            close = self.take()
            if close.kind != "op" or close.text != ")":
                raise ParseError(close.pos, "expected ')'")
            return node
        if tok.kind == "end":
            raise ParseError(tok.pos, "unexpected end of input")
        raise ParseError(tok.pos, f"unexpected {tok.text!r}")


def _constant(node):
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "neg":
        v = _constant(node[1])
        return None if v is None else -v
    if kind in ("add", "sub", "mul"):
        a, b = _constant(node[1]), _constant(node[2])
        if a is None or b is None:
            return None
        return a + b if kind == "add" else a - b if kind == "sub" else a * b
    if kind == "div":
        a = _constant(node[1])
        return None if a is None else a / node[2]
    if kind == "pow":
        a = _constant(node[1])
        return None if a is None else a ** node[2]
    return None


def parse_ast(text, context="grassmann"):
    if context not in CONTEXTS:
        raise ValueError(f"unknown context {context!r}")
    return _Parser(text, CONTEXTS[context]).parse()


def max_indices(node):
    """Largest index used per symbol letter."""
    out = {}

    def walk(n):
        if n[0] == "sym":
            out[n[1]] = max(out.get(n[1], 0), n[2])
        elif n[0] in ("add", "sub", "mul"):
            walk(n[1])
            walk(n[2])
        elif n[0] in ("neg", "div", "pow"):
            walk(n[1])
    walk(node)
    return out


def _evaluate(node, leaf, const):
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "sym":
        return leaf(node[1], node[2])
    if kind == "neg":
        return -_evaluate(node[1], leaf, const)
    if kind == "add":
        return _evaluate(node[1], leaf, const) + _evaluate(node[2], leaf, const)
    if kind == "sub":
        return _evaluate(node[1], leaf, const) - _evaluate(node[2], leaf, const)
    if kind == "mul":
        return _evaluate(node[1], leaf, const) * _evaluate(node[2], leaf, const)
    if kind == "div":
        return _evaluate(node[1], leaf, const) * (1 / node[2])
    if kind == "pow":
        base = _evaluate(node[1], leaf, const)
        out = const(1)
        for _ in range(node[2]):
            out = out * base
        return out
    raise ValueError(kind)


def parse_expr(text, context="grassmann", rank=None, n=None, m=None, mode=EXACT):
    """Parse ``text`` into a GrassmannElement or SuperFunction.

    Dimensions default to the largest index appearing in the text.
    """
    node = parse_ast(text, context)
    used = max_indices(node)
    if context == "grassmann":
        rank = used.get("c", 0) if rank is None else rank
        if used.get("c", 0) > rank:
            raise ParseError(0, f"generator c{used['c']} exceeds rank {rank}")
        return _evaluate(node, lambda _l, i: GrassmannElement.generator(rank, i, mode),
                         lambda v: GrassmannElement.scalar(rank, v, mode))
    even, odd = ("x", "y") if context == "superfunction" else ("z", "c")
    n = used.get(even, 0) if n is None else n
    m = used.get(odd, 0) if m is None else m
    if used.get(even, 0) > n or used.get(odd, 0) > m:
        raise ParseError(0, "symbol index exceeds the declared dimensions")
    syms = (even, odd)

    def leaf(letter, i):
        if letter == even:
            return SuperFunction.even_var(n, m, i, syms)
        return SuperFunction.odd_var(n, m, i, syms)
    return _evaluate(node, leaf, lambda v: SuperFunction.const(n, m, v, syms))


def pretty(obj):
    """Canonical text form; parsing it back yields the same object."""
    return str(obj)

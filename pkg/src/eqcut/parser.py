"""Text syntax for terms, formulas and sequents.

    f(a,b)   a = b   ~F   F & G   F | G   F -> G   forall x. F   exists x. F
    Gamma => Delta

Lowercase identifiers are free variables unless a quantifier in scope binds
them; ``c()`` is a constant.  Predicates start with an uppercase letter.
"""
from __future__ import annotations

import re

from .syntax import (
    EQ, And, Atom, BoundVar, Exists, Forall, Fun, Imp, Not, Or, Sequent, Var,
)


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>=>|->)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<punct>[(),.=~&|]))"
)
_KEYWORDS = {"forall", "exists"}


class _Tokens:
    def __init__(self, text: str, line: int = 1, col0: int = 0):
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                bad = len(text) - len(text[pos:].lstrip()) if m is None else pos
                raise ParseError(line, col0 + bad + 1, f"unexpected character {text[bad:bad + 1]!r}")
            kind = m.lastgroup
            val = m.group(kind)
            self.toks.append((kind, val, col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = col0 + len(text) + 1

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("eof", "", self.end_col)

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def expect(self, val: str):
        kind, v, col = self.next()
        if v != val:
            raise ParseError(self.line, col, f"expected {val!r}, found {v or 'end of input'!r}")

    def error(self, msg: str):
        raise ParseError(self.line, self.peek()[2], msg)

    def at_end(self) -> bool:
        return self.i >= len(self.toks)


class Parser:
    """Recursive-descent parser; tracks symbol arities across calls."""

    def __init__(self):
        self.arities: dict[tuple[str, str], int] = {}

    def _arity(self, toks: _Tokens, kind: str, name: str, n: int, col: int) -> None:
        key = (kind, name)
        seen = self.arities.setdefault(key, n)
        if seen != n:
            raise ParseError(toks.line, col, f"{kind} {name!r} used with arity {n}, earlier {seen}")

    # -- entry points
    def term(self, text: str, line: int = 1, col0: int = 0):
        toks = _Tokens(text, line, col0)
        t = self._term(toks, frozenset())
        if not toks.at_end():
            toks.error("trailing input")
        return t

    def formula(self, text: str, line: int = 1, col0: int = 0):
        toks = _Tokens(text, line, col0)
        f = self._formula(toks, frozenset())
        if not toks.at_end():
            toks.error("trailing input")
        return f

    def sequent(self, text: str, line: int = 1, col0: int = 0) -> Sequent:
        toks = _Tokens(text, line, col0)
        ant = self._list(toks, stop="=>")
        if toks.peek()[1] != "=>":
            toks.error("expected '=>'")
        toks.next()
        suc = self._list(toks, stop=None)
        if not toks.at_end():
            toks.error("trailing input")
        return Sequent(tuple(ant), tuple(suc))

    # -- grammar
    def _list(self, toks, stop):
        out = []
        if toks.peek()[0] == "eof" or toks.peek()[1] == stop:
            return out
        out.append(self._formula(toks, frozenset()))
        while toks.peek()[1] == ",":
            toks.next()
            out.append(self._formula(toks, frozenset()))
        return out

    def _formula(self, toks, bound):
        kind, val, col = toks.peek()
        if val in _KEYWORDS:
            return self._quant(toks, bound)
        left = self._or(toks, bound)
        if toks.peek()[1] == "->":
            toks.next()
            return Imp(left, self._formula(toks, bound))
        return left

    def _quant(self, toks, bound):
        _, q, _ = toks.next()
        kind, name, col = toks.next()
        if kind != "ident" or name in _KEYWORDS or not name[0].islower():
            raise ParseError(toks.line, col, "expected a lowercase bound variable")
        toks.expect(".")
        body = self._formula(toks, bound | {name})
        return (Forall if q == "forall" else Exists)(name, body)

    def _or(self, toks, bound):
        f = self._and(toks, bound)
        while toks.peek()[1] == "|":
            toks.next()
            f = Or(f, self._and(toks, bound))
        return f

    def _and(self, toks, bound):
        f = self._unary(toks, bound)
        while toks.peek()[1] == "&":
            toks.next()
            f = And(f, self._unary(toks, bound))
        return f

    def _unary(self, toks, bound):
        kind, val, col = toks.peek()
        if val == "~":
            toks.next()
            return Not(self._unary(toks, bound))
        if val in _KEYWORDS:
            return self._quant(toks, bound)
        if val == "(":
            toks.next()
            f = self._formula(toks, bound)
            toks.expect(")")
            return f
        if kind == "ident" and val[0].isupper():
            toks.next()
            args = ()
            if toks.peek()[1] == "(":
                args = self._args(toks, bound)
            self._arity(toks, "predicate", val, len(args), col)
            return Atom(val, args)
        if kind == "ident":
            left = self._term(toks, bound)
            toks.expect("=")
            right = self._term(toks, bound)
            return Atom(EQ, (left, right))
        toks.error(f"unexpected {val or 'end of input'!r}")

    def _args(self, toks, bound):
        toks.expect("(")
        args = []
        if toks.peek()[1] != ")":
            args.append(self._term(toks, bound))
            while toks.peek()[1] == ",":
                toks.next()
                args.append(self._term(toks, bound))
        toks.expect(")")
        return tuple(args)

    def _term(self, toks, bound):
        kind, val, col = toks.next()
        if kind != "ident" or val in _KEYWORDS or not val[0].islower():
            raise ParseError(toks.line, col, f"expected a term, found {val or 'end of input'!r}")
        if toks.peek()[1] == "(":
            args = self._args(toks, bound)
            self._arity(toks, "function", val, len(args), col)
            return Fun(val, args)
        if val in bound:
            return BoundVar(val)
        return Var(val)


def parse_term(text: str):
    return Parser().term(text)


def parse_formula(text: str):
    return Parser().formula(text)


def parse_sequent(text: str) -> Sequent:
    return Parser().sequent(text)

"""Regular expressions: parser, printer and position-automaton construction.

Grammar: ``|`` union, juxtaposition concatenation, postfix ``*`` ``+`` ``?``,
parentheses, ``_`` for ε, ``∅`` for the empty language, ``\\`` escapes a
metacharacter. Every other character is a symbol.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RegexSyntax
from .core import Nfa, trim

METACHARS = frozenset("|*+?()_\\∅")


class Regex:
    __slots__ = ()

    def __str__(self):
        return _show(self, 0)


@dataclass(frozen=True, eq=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Eps(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    symbol: str


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


@dataclass(frozen=True)
class Plus(Regex):
    inner: Regex


@dataclass(frozen=True)
class Opt(Regex):
    inner: Regex


def _show(r, prec):
    # prec: 0 union context, 1 concat context, 2 postfix operand
    if isinstance(r, Empty):
        return "∅"
    if isinstance(r, Eps):
        return "_"
    if isinstance(r, Sym):
        return "\\" + r.symbol if r.symbol in METACHARS else r.symbol
    if isinstance(r, Union):
        s = "|".join(_show(p, 0 if isinstance(p, Union) else 1) for p in r.parts)
        return f"({s})" if prec > 0 else s
    if isinstance(r, Concat):
        s = "".join(_show(p, 1 if isinstance(p, Concat) else 2) for p in r.parts)
        return f"({s})" if prec > 1 else s
    op = {Star: "*", Plus: "+", Opt: "?"}[type(r)]
    return _show(r.inner, 2) + op


def parse_regex(text: str) -> Regex:
    p = _Parser(text)
    r = p.union()
    if p.i < len(text):
        raise RegexSyntax(f"unexpected {text[p.i]!r}", p.i + 1)
    if r is None:
        raise RegexSyntax("empty expression", 1)
    return r


class _Parser:
    def __init__(self, text):
        self.text = text
        self.i = 0

    def peek(self):
        return self.text[self.i] if self.i < len(self.text) else None

    def union(self):
        parts = []
        first = self.concat()
        parts.append(first)
        while self.peek() == "|":
            bar = self.i
            self.i += 1
            if parts[-1] is None:
                raise RegexSyntax("missing expression before '|'", bar + 1)
            nxt = self.concat()
            if nxt is None:
                raise RegexSyntax("missing expression after '|'", self.i + 1)
            parts.append(nxt)
        if len(parts) == 1:
            return first
        flat = []
        for q in parts:
            flat.extend(q.parts if isinstance(q, Union) else (q,))
        return Union(tuple(flat))

    def concat(self):
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "|)":
                break
            parts.append(self.postfix())
        if not parts:
            return None
        if len(parts) == 1:
            return parts[0]
        flat = []
        for q in parts:
            flat.extend(q.parts if isinstance(q, Concat) else (q,))
        return Concat(tuple(flat))

    def postfix(self):
        r = self.atom()
        while self.peek() in ("*", "+", "?"):
            op = self.peek()
            self.i += 1
            r = {"*": Star, "+": Plus, "?": Opt}[op](r)
        return r

    def atom(self):
        c = self.peek()
        pos = self.i + 1
        if c == "(":
            self.i += 1
            inner = self.union()
            if self.peek() != ")":
                raise RegexSyntax("unclosed '('", pos)
            if inner is None:
                raise RegexSyntax("empty group", pos)
            self.i += 1
            return inner
        if c in ("*", "+", "?"):
            raise RegexSyntax(f"{c!r} has nothing to repeat", pos)
        if c == "\\":
            if self.i + 1 >= len(self.text):
                raise RegexSyntax("dangling escape", pos)
            self.i += 2
            return Sym(self.text[self.i - 1])
        self.i += 1
        if c == "_":
            return Eps()
        if c == "∅":
            return Empty()
        return Sym(c)


def symbols_of(r: Regex) -> set:
    if isinstance(r, Sym):
        return {r.symbol}
    if isinstance(r, (Concat, Union)):
        out = set()
        for p in r.parts:
            out |= symbols_of(p)
        return out
    if isinstance(r, (Star, Plus, Opt)):
        return symbols_of(r.inner)
    return set()


def regex_to_nfa(r: Regex) -> Nfa:
    """Position (Glushkov) automaton: state 0 is initial, one state per symbol leaf."""
    labels = [None]
    follow = set()

    def walk(node):
        # returns (nullable, first, last)
        if isinstance(node, Empty):
            return False, set(), set()
        if isinstance(node, Eps):
            return True, set(), set()
        if isinstance(node, Sym):
            labels.append(node.symbol)
            k = len(labels) - 1
            return False, {k}, {k}
        if isinstance(node, Union):
            nul, fi, la = False, set(), set()
            for p in node.parts:
                n, f, l = walk(p)
                nul, fi, la = nul or n, fi | f, la | l
            return nul, fi, la
        if isinstance(node, Concat):
            nul, fi, la = True, set(), set()
            for p in node.parts:
                n, f, l = walk(p)
                follow.update((a, b) for a in la for b in f)
                fi = fi | f if nul else fi
                la = la | l if n else l
                nul = nul and n
            return nul, fi, la
        n, f, l = walk(node.inner)
        if isinstance(node, (Star, Plus)):
            follow.update((a, b) for a in l for b in f)
        return (True if isinstance(node, (Star, Opt)) else n), f, l

    nullable, first, last = walk(r)
    trans = [(0, labels[k], k) for k in first] + [(a, labels[b], b) for a, b in follow]
    finals = set(last) | ({0} if nullable else set())
    return trim(Nfa(len(labels), symbols_of(r), [0], finals, trans))


def compile_regex(text: str) -> Nfa:
    return regex_to_nfa(parse_regex(text))

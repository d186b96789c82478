"""Splicing systems (H-schemes) and a bounded differential check against crossover closures.

This engine deliberately shares nothing with the crossover code except
the plain word helpers, so the two can check each other.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BadWord, SchemaError
from .words import EPSILON_TOKEN, RuleSet, WordSet, canonical, parse_word

__all__ = [
    "SpliceRule", "SpliceSystem", "SpliceRun", "splice_once", "sigma_closure_bounded",
    "differential_vs_gsco", "load_system", "system_from_dict",
]


@dataclass(frozen=True)
class SpliceRule:
    """u1#u2$u3#u4: cut x between u1 and u2, y between u3 and u4."""

    u1: str = ""
    u2: str = ""
    u3: str = ""
    u4: str = ""

    def __str__(self):
        show = [u or EPSILON_TOKEN for u in (self.u1, self.u2, self.u3, self.u4)]
        return f"{show[0]}#{show[1]}${show[2]}#{show[3]}"


def _sites(w, left, right):
    """Cut points c with w[:c] ending in ``left`` and w[c:] starting with ``right``."""
    out = []
    for c in range(len(left), len(w) - len(right) + 1):
        if w[c - len(left):c] == left and w[c:c + len(right)] == right:
            out.append(c)
    return out


def splice_once(x: str, y: str, r: SpliceRule, mode: int = 2) -> WordSet:
    """x1u1u4y2 for x = x1u1u2x2, y = y1u3u4y2; mode 2 adds y1u3u2x2."""
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    out = set()
    for i in _sites(x, r.u1, r.u2):
        for j in _sites(y, r.u3, r.u4):
            out.add(x[:i] + y[j:])
            if mode == 2:
                out.add(y[:j] + x[i:])
    return WordSet(out)


@dataclass(frozen=True)
class SpliceSystem:
    """Axioms plus rules. ``kind`` is "full", "null-context" or "simple"."""

    alphabet: frozenset
    axioms: WordSet
    kind: str
    items: tuple = ()

    def __post_init__(self):
        if self.kind not in ("full", "null-context", "simple"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        for w in self.axioms:
            if set(w) - self.alphabet:
                raise BadWord(f"axiom {w!r} uses symbols outside the alphabet")
        for it in self.items:
            if self.kind == "simple" and (not isinstance(it, str) or len(it) != 1):
                raise BadWord(f"simple rules are single symbols, got {it!r}")
            if self.kind == "null-context" and (not isinstance(it, str) or not it):
                raise BadWord(f"null-context rules are non-empty words, got {it!r}")
            if self.kind == "full" and not isinstance(it, SpliceRule):
                raise BadWord(f"full rules are SpliceRule values, got {it!r}")
            parts = (it.u1 + it.u2 + it.u3 + it.u4) if isinstance(it, SpliceRule) else it
            if set(parts) - self.alphabet:
                raise BadWord(f"rule {it} uses symbols outside the alphabet")

    @classmethod
    def simple(cls, axioms, symbols, alphabet=None):
        return cls._make(axioms, "simple", sorted(set(symbols)), alphabet)

    @classmethod
    def null_context(cls, axioms, words, alphabet=None):
        return cls._make(axioms, "null-context", canonical(set(words)), alphabet)

    @classmethod
    def full(cls, axioms, rules, alphabet=None):
        return cls._make(axioms, "full", sorted(set(rules), key=str), alphabet)

    @classmethod
    def _make(cls, axioms, kind, items, alphabet):
        axioms = WordSet(axioms)
        if alphabet is None:
            alphabet = {c for w in axioms for c in w}
            for it in items:
                alphabet |= set(str(it).replace("#", "").replace("$", "").replace(EPSILON_TOKEN, ""))
        return cls(frozenset(alphabet), axioms, kind, tuple(items))

    def rules(self) -> list:
        """Every rule as a quadruple."""
        if self.kind == "full":
            return list(self.items)
        return [SpliceRule(r, "", r, "") for r in self.items]


@dataclass
class SpliceRun:
    words: WordSet
    fixpoint: bool
    rounds: int
    cap: int
    retained: WordSet = field(repr=False, default_factory=WordSet)


class _Cuts:
    """For one rule: left pieces x[:i] and right pieces x[i:] at u1#u2 sites,
    and the same at u3#u4 sites, bucketed by length."""

    def __init__(self, r):
        self.r = r
        self.heads1 = defaultdict(set)   # x1u1
        self.tails1 = defaultdict(set)   # u2x2
        self.heads3 = defaultdict(set)   # y1u3
        self.tails3 = defaultdict(set)   # u4y2

    def pieces(self, w):
        a = [(w[:i], w[i:]) for i in _sites(w, self.r.u1, self.r.u2)]
        b = [(w[:j], w[j:]) for j in _sites(w, self.r.u3, self.r.u4)]
        return a, b

    def add(self, w, new):
        a, b = self.pieces(w)
        for h, t in a:
            for bucket, piece in ((self.heads1, h), (self.tails1, t)):
                if piece not in bucket[len(piece)]:
                    bucket[len(piece)].add(piece)
                    new.setdefault(id(bucket), set()).add(piece)
        for h, t in b:
            for bucket, piece in ((self.heads3, h), (self.tails3, t)):
                if piece not in bucket[len(piece)]:
                    bucket[len(piece)].add(piece)
                    new.setdefault(id(bucket), set()).add(piece)


def _join(left_new, left_all, right_new, right_all, cap, out):
    """left × right restricted to products that touch a new piece and fit in ``cap``."""
    for h in left_new:
        for n, ts in right_all.items():
            if len(h) + n <= cap:
                out.update(h + t for t in ts)
    for t in right_new:
        for n, hs in left_all.items():
            if len(t) + n <= cap:
                out.update(h + t for h in hs if h not in left_new)


def sigma_closure_bounded(S: SpliceSystem, max_len: int, cap: int | None = None,
                          max_rounds: int | None = None, mode: int = 2) -> SpliceRun:
    """Iterate σ^{i+1}(L) = σ^i(L) ∪ σ(σ^i(L)), keeping words up to ``cap``.

    Reports the words of length at most ``max_len``. The default cap,
    max_len plus the longest axiom plus the longest rule, keeps every
    intermediate word a left-to-right derivation needs.
    """
    rules = S.rules()
    if cap is None:
        longest = max((len(r.u1 + r.u2 + r.u3 + r.u4) for r in rules), default=0)
        cap = max_len + max((len(w) for w in S.axioms), default=0) + longest
    cap = max(cap, max_len)
    known = {w for w in S.axioms if len(w) <= cap}
    cuts = [_Cuts(r) for r in rules]
    fresh = set(known)
    rounds = 0
    fixpoint = False
    while True:
        produced = set()
        for cut in cuts:
            new = {}
            for w in fresh:
                cut.add(w, new)
            g = lambda b: new.get(id(b), set())
            _join(g(cut.heads1), cut.heads1, g(cut.tails3), cut.tails3, cap, produced)
            if mode == 2:
                _join(g(cut.heads3), cut.heads3, g(cut.tails1), cut.tails1, cap, produced)
        fresh = produced - known
        if not fresh:
            fixpoint = True
            break
        rounds += 1
        known |= fresh
        if max_rounds is not None and rounds >= max_rounds:
            break
    return SpliceRun(WordSet(w for w in known if len(w) <= max_len), fixpoint, rounds, cap,
                     WordSet(known))


def differential_vs_gsco(axioms: Iterable[str], rules: RuleSet, n: int, cap: int | None = None) -> dict:
    """Compare bounded splicing with the crossover closure automaton up to length n.

    Symbol rules become a simple system; string rules a null-context system.
    The default cap is n plus the longest axiom minus one: a left-to-right
    derivation of a word w only ever holds a prefix of w followed by the
    part of an axiom after a rule occurrence. A cap that is too small can
    only lose splicing words, so it never hides a word that crossover misses.
    """
    from .automata import enumerate_upto
    from .closure import jump_closure_finite

    axioms = WordSet(axioms)
    alphabet = {c for w in axioms for c in w}
    if rules.kind == "strings":
        S = SpliceSystem.null_context(axioms, rules.items, alphabet | {c for r in rules.items for c in r})
    else:
        S = SpliceSystem.simple(axioms, rules.resolve(alphabet), alphabet | set(rules.items))
    if cap is None:
        cap = n + max((len(w) for w in axioms), default=1) - 1
    spliced = set(sigma_closure_bounded(S, n, cap=cap).words)
    crossed = set(enumerate_upto(jump_closure_finite(axioms, rules), n))
    return {
        "equal": spliced == crossed,
        "only_splicing": canonical(spliced - crossed),
        "only_crossover": canonical(crossed - spliced),
        "count": len(crossed),
    }


# ---- system files ---------------------------------------------------------

def _word(v, path, allow_empty=False):
    if not isinstance(v, str):
        raise SchemaError("expected a string", path)
    if allow_empty and v in ("", EPSILON_TOKEN):
        return ""
    try:
        return parse_word(v)
    except BadWord as e:
        raise SchemaError(str(e), path) from None


def system_from_dict(data) -> SpliceSystem:
    if not isinstance(data, dict):
        raise SchemaError("expected an object")
    for k in ("alphabet", "axioms", "rules"):
        if k not in data:
            raise SchemaError(f"missing key {k!r}")
    alphabet = data["alphabet"]
    if not isinstance(alphabet, list) or not all(isinstance(c, str) and len(c) == 1 for c in alphabet):
        raise SchemaError("expected an array of one-character strings", "$.alphabet")
    if not isinstance(data["axioms"], list):
        raise SchemaError("expected an array", "$.axioms")
    axioms = [_word(w, f"$.axioms[{i}]") for i, w in enumerate(data["axioms"])]
    rules = data["rules"]
    if not isinstance(rules, dict) or "kind" not in rules or "items" not in rules:
        raise SchemaError("expected an object with kind and items", "$.rules")
    kind, items = rules["kind"], rules["items"]
    if not isinstance(items, list):
        raise SchemaError("expected an array", "$.rules.items")
    if kind == "full":
        parsed = []
        for i, it in enumerate(items):
            if not isinstance(it, list) or len(it) != 4:
                raise SchemaError("expected four words", f"$.rules.items[{i}]")
            parsed.append(SpliceRule(*[_word(u, f"$.rules.items[{i}][{j}]", True) for j, u in enumerate(it)]))
        items = parsed
    elif kind in ("simple", "null-context"):
        items = [_word(w, f"$.rules.items[{i}]") for i, w in enumerate(items)]
    else:
        raise SchemaError(f"unknown rule kind {kind!r}", "$.rules.kind")
    try:
        return SpliceSystem._make(axioms, kind, items if kind == "full" else canonical(set(items)),
                                  set(alphabet))
    except BadWord as e:
        raise SchemaError(str(e)) from None


def load_system(raw) -> SpliceSystem:
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno})") from None
    return system_from_dict(data)

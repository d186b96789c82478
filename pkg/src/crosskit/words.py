"""Words, occurrences and single-pair crossover.

A word is a plain ``str``; each character is one symbol. The empty word is
``""`` in code and ``_`` in text form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BadWord, EmptyPattern, EmptyRule, RuleAbsent

EPSILON_TOKEN = "_"


def canonical_key(w: str):
    return (len(w), w)


def canonical(words: Iterable[str]) -> list[str]:
    """Sort by (length, lexicographic)."""
    return sorted(set(words), key=canonical_key)


class WordSet(frozenset):
    """Immutable set of words that iterates in canonical order."""

    __slots__ = ("_order",)

    def __iter__(self):
        try:
            order = self._order
        except AttributeError:
            order = tuple(sorted(frozenset.__iter__(self), key=canonical_key))
            self._order = order
        return iter(order)

    def __repr__(self):
        return "{" + ", ".join(format_word(w) for w in self) + "}"

    def __or__(self, other):
        return WordSet(frozenset.__or__(self, other))

    def __and__(self, other):
        return WordSet(frozenset.__and__(self, other))

    def __sub__(self, other):
        return WordSet(frozenset.__sub__(self, other))


def format_word(w: str) -> str:
    return w if w else EPSILON_TOKEN


def parse_word(token: str) -> str:
    if token == EPSILON_TOKEN:
        return ""
    if not token:
        raise BadWord("empty token; write _ for the empty word")
    for ch in token:
        if ch == EPSILON_TOKEN or ch.isspace():
            raise BadWord(f"symbol {ch!r} is not allowed inside a word")
    return token


def read_words(text: str) -> list[str]:
    """Parse the word-list format: one word per line, ``#`` comments, ``_`` for ε."""
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_word(line))
    return out


def write_words(words: Iterable[str]) -> str:
    return "".join(format_word(w) + "\n" for w in canonical(words))


@dataclass(frozen=True)
class OccurrenceRef:
    pattern: str
    position: int  # 1-based start
    ordinal: int  # 1-based, counted left to right

    @property
    def start(self) -> int:
        return self.position - 1

    @property
    def end(self) -> int:
        return self.position - 1 + len(self.pattern)

    def __str__(self):
        return f"{self.pattern}@{self.position}"


class RuleSet:
    """The overlap set R: every symbol, an explicit symbol set, or explicit strings."""

    __slots__ = ("kind", "items")

    def __init__(self, kind: str, items: Iterable[str] = ()):
        items = frozenset(items)
        if kind == "all":
            if items:
                raise ValueError("AllSymbols takes no items")
        elif kind == "symbols":
            for s in items:
                if len(s) != 1:
                    if not s:
                        raise EmptyRule("the empty word is not a rule")
                    raise ValueError(f"symbol rule {s!r} must have length 1")
        elif kind == "strings":
            if "" in items:
                raise EmptyRule("the empty word is not a rule")
        else:
            raise ValueError(f"unknown rule kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "items", items)

    def __setattr__(self, name, value):
        raise AttributeError("RuleSet is immutable")

    @classmethod
    def all(cls) -> "RuleSet":
        return cls("all")

    @classmethod
    def symbols(cls, symbols: Iterable[str]) -> "RuleSet":
        return cls("symbols", symbols)

    @classmethod
    def strings(cls, words: Iterable[str]) -> "RuleSet":
        return cls("strings", words)

    def __eq__(self, other):
        return isinstance(other, RuleSet) and (self.kind, self.items) == (other.kind, other.items)

    def __hash__(self):
        return hash((self.kind, self.items))

    def __repr__(self):
        if self.kind == "all":
            return "RuleSet.all()"
        return f"RuleSet.{self.kind}({canonical(self.items)!r})"

    def describe(self) -> str:
        if self.kind == "all":
            return "all"
        return self.kind + "{" + ",".join(canonical(self.items)) + "}"

    def resolve(self, alphabet: Iterable[str]) -> tuple[str, ...]:
        """Concrete rules in canonical order; AllSymbols expands to ``alphabet``."""
        if self.kind == "all":
            return tuple(sorted(set(alphabet)))
        return tuple(canonical(self.items))

    def max_len(self) -> int:
        if self.kind == "strings":
            return max((len(x) for x in self.items), default=0)
        return 1


ALL = RuleSet.all()


def _check_mode(mode):
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode!r}")


@dataclass(frozen=True)
class CrossTrace:
    """One crossover: ``left`` up to and including the rule at ``left_cut``,
    then ``right`` strictly after the rule at ``right_cut``."""

    left: str
    right: str
    rule: str
    left_cut: OccurrenceRef
    right_cut: OccurrenceRef
    output: str

    def replay(self) -> str:
        for host, occ in ((self.left, self.left_cut), (self.right, self.right_cut)):
            if occ.pattern != self.rule or host[occ.start:occ.end] != self.rule:
                raise RuleAbsent(f"{self.rule!r} does not occur in {host!r} at {occ.position}")
            if _count_overlapping(host[:occ.end], self.rule) != occ.ordinal:
                raise RuleAbsent(f"wrong ordinal for {occ} in {host!r}")
        return self.left[:self.left_cut.end] + self.right[self.right_cut.end:]

    def is_valid(self) -> bool:
        try:
            return self.replay() == self.output
        except RuleAbsent:
            return False

    def __str__(self):
        return (f"{format_word(self.left)}[{self.left_cut}] >-< "
                f"{format_word(self.right)}[{self.right_cut}] -> {format_word(self.output)}")


def _count_overlapping(w, x):
    n, i = 0, w.find(x)
    while i >= 0:
        n += 1
        i = w.find(x, i + 1)
    return n


def alphabet_of(w: str) -> frozenset:
    return frozenset(w)


def factors(w: str) -> WordSet:
    n = len(w)
    return WordSet(w[i:j] for i in range(n) for j in range(i + 1, n + 1))


def two_blocks(w: str) -> WordSet:
    if len(w) < 2:
        return WordSet([w])
    return WordSet(w[i:i + 2] for i in range(len(w) - 1))


def occurrences(w: str, x: str) -> list[OccurrenceRef]:
    if not x:
        raise EmptyPattern("cannot locate the empty word")
    out = []
    i = w.find(x)
    while i >= 0:
        out.append(OccurrenceRef(x, i + 1, len(out) + 1))
        i = w.find(x, i + 1)
    return out


def prefixes_at(w: str, x: str) -> WordSet:
    """Prefix_x(w) = {u : u x u' = w}."""
    return WordSet(w[:o.start] for o in occurrences(w, x))


def suffixes_at(w: str, x: str) -> WordSet:
    """Suffix_x(w) = {s : s' x s = w}."""
    return WordSet(w[o.end:] for o in occurrences(w, x))


def _resolve_occurrence(w, x, ref):
    occs = occurrences(w, x)
    if isinstance(ref, OccurrenceRef):
        if ref.pattern == x and 1 <= ref.ordinal <= len(occs) and occs[ref.ordinal - 1] == ref:
            return ref
    elif isinstance(ref, int) and 1 <= ref <= len(occs):
        return occs[ref - 1]
    raise RuleAbsent(f"{x!r} has no occurrence {ref} in {w!r}")


def cross_at(w1: str, w2: str, x: str, i, j, mode: int = 2) -> tuple[CrossTrace, ...]:
    """Traces for crossing ``w1`` and ``w2`` at the given occurrences of ``x``.

    ``i`` and ``j`` are OccurrenceRefs or 1-based ordinals.
    """
    _check_mode(mode)
    if not x:
        raise EmptyRule("the empty word is not a rule")
    oi = _resolve_occurrence(w1, x, i)
    oj = _resolve_occurrence(w2, x, j)
    first = CrossTrace(w1, w2, x, oi, oj, w1[:oi.end] + w2[oj.end:])
    if mode == 1:
        return (first,)
    return (first, CrossTrace(w2, w1, x, oj, oi, w2[:oj.end] + w1[oi.end:]))


def gsco_at(w1: str, w2: str, x: str, i, j, mode: int = 2) -> WordSet:
    return WordSet(t.output for t in cross_at(w1, w2, x, i, j, mode))


def _rule_crossings(w1, w2, x, mode):
    o1 = occurrences(w1, x)
    if not o1:
        return
    o2 = occurrences(w2, x)
    for a in o1:
        for b in o2:
            yield CrossTrace(w1, w2, x, a, b, w1[:a.end] + w2[b.end:])
            if mode == 2:
                yield CrossTrace(w2, w1, x, b, a, w2[:b.end] + w1[a.end:])


def crossings(w1: str, w2: str, rules=ALL, mode: int = 2) -> Iterator[CrossTrace]:
    """All crossover traces of the pair, rules in canonical order.

    ``rules`` is a RuleSet or a single non-empty rule word.
    """
    _check_mode(mode)
    if isinstance(rules, str):
        if not rules:
            raise EmptyRule("the empty word is not a rule")
        xs = (rules,)
    elif rules.kind == "all":
        xs = tuple(sorted(set(w1) & set(w2)))
    else:
        xs = rules.resolve(())
    for x in xs:
        yield from _rule_crossings(w1, w2, x, mode)


def gsco_rule(w1: str, w2: str, x: str, mode: int = 2) -> WordSet:
    return WordSet(t.output for t in crossings(w1, w2, x, mode))


def gsco_pair(w1: str, w2: str, rules=ALL, mode: int = 2) -> WordSet:
    """Crossover of a pair over a rule set.

    For AllSymbols only the common symbols are tried; crossing at a longer
    common factor never yields anything that one of its symbols does not.
    """
    return WordSet(t.output for t in crossings(w1, w2, rules, mode))


def epsilon_gsco(w1: str, w2: str) -> WordSet:
    """Crossover with the empty overlap allowed: Pref(w1)Suff(w2) ∪ Pref(w2)Suff(w1)."""
    out = set()
    for a, b in ((w1, w2), (w2, w1)):
        for i in range(len(a) + 1):
            for j in range(len(b) + 1):
                out.add(a[:i] + b[j:])
    return WordSet(out)


def cgsco(w1: str, w2: str) -> WordSet:
    """Corresponding crossover: only the i-th occurrence in w1 meets the i-th in w2,
    for factors occurring more than once in both words."""
    out = set()
    for x in factors(w1) & factors(w2):
        o1, o2 = occurrences(w1, x), occurrences(w2, x)
        if len(o1) < 2 or len(o2) < 2:
            continue
        for a, b in zip(o1, o2):
            out.add(w1[:a.end] + w2[b.end:])
            out.add(w2[:b.end] + w1[a.end:])
    return WordSet(out)

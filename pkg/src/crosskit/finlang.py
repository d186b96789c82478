"""Crossover lifted to finite languages and bounded iterated closures."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import EmptyAxioms, EpsilonAxiom, NotAClosure
from .words import (ALL, CrossTrace, OccurrenceRef, RuleSet, WordSet, _check_mode,
                    canonical_key, crossings, format_word)


class FiniteLanguage(WordSet):
    """A finite set of non-empty words."""

    __slots__ = ()

    def __new__(cls, words: Iterable[str] = ()):
        ws = frozenset(words)
        if "" in ws:
            raise EpsilonAxiom("a finite language here may not contain the empty word")
        return super().__new__(cls, ws)

    @property
    def alphabet(self) -> frozenset:
        return frozenset("".join(self))

    def max_len(self) -> int:
        return max((len(w) for w in self), default=0)


@dataclass(frozen=True)
class BaseSets:
    blocks: WordSet
    starts: frozenset
    ends: frozenset
    units: WordSet

    def __str__(self):
        def fmt(xs):
            return "{" + ",".join(sorted(xs, key=canonical_key)) + "}"
        text = f"B={fmt(self.blocks)} S={fmt(self.starts)} E={fmt(self.ends)}"
        if self.units:
            text += f" U={fmt(self.units)}"
        return text

    def as_dict(self):
        return {"blocks": list(WordSet(self.blocks)), "starts": sorted(self.starts),
                "ends": sorted(self.ends), "units": list(WordSet(self.units))}


def base_of_finite(L: Iterable[str]) -> BaseSets:
    L = FiniteLanguage(L)
    blocks = {w[i:i + 2] for w in L for i in range(len(w) - 1)}
    return BaseSets(WordSet(blocks), frozenset(w[0] for w in L), frozenset(w[-1] for w in L),
                    WordSet(w for w in L if len(w) == 1))


def gsco_lang(L1: Iterable[str], L2: Iterable[str] | None = None, rules: RuleSet = ALL,
              mode: int = 2) -> FiniteLanguage:
    """Union of pair crossovers over all ordered pairs (w1, w2) in L1 × L2."""
    _check_mode(mode)
    L1 = FiniteLanguage(L1)
    L2 = L1 if L2 is None else FiniteLanguage(L2)
    out = set()
    for a in L1:
        for b in L2:
            for t in crossings(a, b, rules, mode):
                out.add(t.output)
    return FiniteLanguage(out)


@dataclass(frozen=True)
class IterationBudget:
    max_word_len: int
    max_rounds: int | None = None
    max_intermediate_len: int | None = None

    def __post_init__(self):
        if self.max_word_len < 0:
            raise ValueError("max_word_len must be non-negative")
        if self.max_intermediate_len is not None and self.max_intermediate_len < self.max_word_len:
            raise ValueError("max_intermediate_len must be at least max_word_len")

    def intermediate_cap(self, axioms: FiniteLanguage, rules: RuleSet) -> int:
        if self.max_intermediate_len is not None:
            return self.max_intermediate_len
        return self.max_word_len + axioms.max_len() + rules.max_len()


@dataclass(frozen=True)
class ClosureRun:
    """Result of a bounded closure.

    ``words`` holds the members up to ``max_word_len``; ``fixpoint`` is true
    when a round added nothing under the intermediate cap; ``truncated`` is
    true when some crossover output was discarded for exceeding the cap.
    """

    axioms: FiniteLanguage
    words: FiniteLanguage
    fixpoint: bool
    truncated: bool
    rounds: int
    cap: int
    origin: Mapping[str, tuple] = field(repr=False, compare=False)

    @property
    def retained(self) -> FiniteLanguage:
        return FiniteLanguage(self.origin)

    def level(self, i: int) -> FiniteLanguage:
        """Words present after ``i`` rounds."""
        return FiniteLanguage(w for w, (r, _) in self.origin.items() if r <= i)

    def trace(self, w: str) -> CrossTrace | None:
        if w not in self.origin:
            raise NotAClosure(f"{format_word(w)} was not derived")
        raw = self.origin[w][1]
        return None if raw is None else _make_trace(*raw)

    def derivation(self, w: str) -> list[CrossTrace]:
        """All traces needed to build ``w`` from axioms, inputs before outputs."""
        out, seen = [], set()

        def visit(v):
            if v in seen:
                return
            seen.add(v)
            t = self.trace(v)
            if t is None:
                return
            visit(t.left)
            visit(t.right)
            out.append(t)

        visit(w)
        return out

    def replay(self, w: str) -> bool:
        """Check that every step is a valid crossover and leaves are axioms."""
        for t in self.derivation(w):
            if not t.is_valid():
                return False
            for src in (t.left, t.right):
                if self.trace(src) is None and src not in self.axioms:
                    return False
        return w in self.axioms or self.trace(w) is not None


def _prepare(L, rules):
    L = FiniteLanguage(L)
    if not L:
        raise EmptyAxioms("at least one axiom is required")
    return L, rules.resolve(L.alphabet)


def _make_trace(x, left, lstart, right, rstart, output):
    def ref(host, start):
        return OccurrenceRef(x, start + 1, _ordinal(host, x, start))
    return CrossTrace(left, right, x, ref(left, lstart), ref(right, rstart), output)


def _ordinal(host, x, start):
    n, i = 0, host.find(x)
    while 0 <= i <= start:
        n += 1
        i = host.find(x, i + 1)
    return n


class _PartIndex:
    """Per-rule heads (u·x) and tails (v) of known words, bucketed by length."""

    def __init__(self, xs):
        self.heads = {x: {} for x in xs}
        self.tails = {x: {} for x in xs}
        self.head_buckets = {x: defaultdict(list) for x in xs}
        self.tail_buckets = {x: defaultdict(list) for x in xs}

    def add(self, w):
        """Register w; return the genuinely new heads and tails per rule."""
        new_heads, new_tails = defaultdict(list), defaultdict(list)
        for x in self.heads:
            i = w.find(x)
            while i >= 0:
                e = i + len(x)
                h, t = w[:e], w[e:]
                if h not in self.heads[x]:
                    self.heads[x][h] = (w, i)
                    new_heads[x].append(h)
                if t not in self.tails[x]:
                    self.tails[x][t] = (w, i)
                    new_tails[x].append(t)
                i = w.find(x, i + 1)
        return new_heads, new_tails

    def commit(self, new_heads, new_tails):
        for x, hs in new_heads.items():
            for h in hs:
                self.head_buckets[x][len(h)].append(h)
        for x, ts in new_tails.items():
            for t in ts:
                self.tail_buckets[x][len(t)].append(t)


def u_closure_bounded(L: Iterable[str], rules: RuleSet = ALL,
                      budget: IterationBudget | None = None) -> ClosureRun:
    """Unrestricted closure: each round crosses every pair of words known so far."""
    L, xs = _prepare(L, rules)
    budget = budget or IterationBudget(max_word_len=L.max_len())
    cap = budget.intermediate_cap(L, rules)
    origin = {w: (0, None) for w in L}
    index = _PartIndex(xs)
    frontier = list(L)
    rounds, truncated, fixpoint = 0, False, False
    while True:
        nh, nt = defaultdict(list), defaultdict(list)
        for w in frontier:
            h, t = index.add(w)
            for x in h:
                nh[x].extend(h[x])
            for x in t:
                nt[x].extend(t[x])
        if budget.max_rounds is not None and rounds >= budget.max_rounds:
            index.commit(nh, nt)
            break
        produced = {}
        for x in xs:
            heads, tails = index.heads[x], index.tails[x]
            hb, tb = index.head_buckets[x], index.tail_buckets[x]
            new_t = defaultdict(list)
            for t in nt.get(x, ()):
                new_t[len(t)].append(t)
            # new heads against old and new tails
            for h in nh.get(x, ()):
                room = cap - len(h)
                for n, ts in list(tb.items()) + list(new_t.items()):
                    if n > room:
                        truncated = True
                        continue
                    for t in ts:
                        _offer(produced, origin, x, h + t, heads[h], tails[t])
            # old heads against new tails
            for m, hs in hb.items():
                for n, ts in new_t.items():
                    if m + n > cap:
                        truncated = True
                        continue
                    for h in hs:
                        for t in ts:
                            _offer(produced, origin, x, h + t, heads[h], tails[t])
        index.commit(nh, nt)
        if not produced:
            fixpoint = True
            break
        rounds += 1
        for w in sorted(produced, key=canonical_key):
            origin[w] = (rounds, produced[w])
        frontier = sorted(produced, key=canonical_key)
    return _finish(L, origin, budget, cap, fixpoint, truncated, rounds)


def _offer(produced, origin, x, w, hsrc, tsrc):
    if w in origin or w in produced:
        return
    # traces are built on demand from this tuple
    produced[w] = (x, hsrc[0], hsrc[1], tsrc[0], tsrc[1], w)


def _finish(L, origin, budget, cap, fixpoint, truncated, rounds):
    words = FiniteLanguage(w for w in origin if len(w) <= budget.max_word_len)
    return ClosureRun(L, words, fixpoint, truncated, rounds, cap, dict(origin))


def r_closure_bounded(L: Iterable[str], rules: RuleSet = ALL,
                      budget: IterationBudget | None = None, mode: int = 2) -> ClosureRun:
    """Restricted closure: each round crosses the words known so far with the axioms only."""
    _check_mode(mode)
    L, xs = _prepare(L, rules)
    budget = budget or IterationBudget(max_word_len=L.max_len())
    cap = budget.intermediate_cap(L, rules)
    axiom_heads = {x: defaultdict(dict) for x in xs}
    axiom_tails = {x: defaultdict(dict) for x in xs}
    for z in L:
        for x in xs:
            i = z.find(x)
            while i >= 0:
                e = i + len(x)
                axiom_heads[x][e].setdefault(z[:e], (z, i))
                axiom_tails[x][len(z) - e].setdefault(z[e:], (z, i))
                i = z.find(x, i + 1)
    origin = {w: (0, None) for w in L}
    # a head (or tail) joined once gives the same outputs again, so skip repeats
    done_heads = {x: set() for x in xs}
    done_tails = {x: set() for x in xs}
    frontier = list(L)
    rounds, truncated, fixpoint = 0, False, False
    while True:
        if budget.max_rounds is not None and rounds >= budget.max_rounds:
            break
        produced = {}
        for w in frontier:
            for x in xs:
                i = w.find(x)
                while i >= 0:
                    e = i + len(x)
                    h, t = w[:e], w[e:]
                    fresh_head = h not in done_heads[x]
                    fresh_tail = mode == 2 and t not in done_tails[x]
                    done_heads[x].add(h)
                    done_tails[x].add(t)
                    for n, tails in (axiom_tails[x].items() if fresh_head else ()):
                        if e + n > cap:
                            truncated = True
                            continue
                        for tail, src in tails.items():
                            _offer(produced, origin, x, h + tail, (w, i), src)
                    if fresh_tail:
                        for m, heads in axiom_heads[x].items():
                            if m + len(t) > cap:
                                truncated = True
                                continue
                            for head, src in heads.items():
                                _offer(produced, origin, x, head + t, src, (w, i))
                    i = w.find(x, i + 1)
        if not produced:
            fixpoint = True
            break
        rounds += 1
        for w in sorted(produced, key=canonical_key):
            origin[w] = (rounds, produced[w])
        frontier = sorted(produced, key=canonical_key)
    return _finish(L, origin, budget, cap, fixpoint, truncated, rounds)

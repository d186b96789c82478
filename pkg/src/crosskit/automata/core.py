"""NFA/DFA types, subset construction, trimming and canonical minimization."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from ..errors import AlphabetTooLarge

MAX_ALPHABET = 64


class Nfa:
    """A finite automaton without ε-transitions. States are ``0..num_states-1``.

    Instances are treated as immutable. ``provenance`` is optional metadata
    that closure constructions attach.
    """

    __slots__ = ("num_states", "alphabet", "starts", "finals", "transitions",
                 "provenance", "_delta")

    def __init__(self, num_states: int, alphabet: Iterable[str], starts: Iterable[int],
                 finals: Iterable[int], transitions: Iterable[tuple[int, str, int]],
                 provenance=None):
        alphabet = frozenset(alphabet)
        transitions = frozenset(transitions)
        if len(alphabet) > MAX_ALPHABET:
            raise AlphabetTooLarge(f"alphabet has {len(alphabet)} symbols, limit is {MAX_ALPHABET}")
        for c in alphabet:
            if not isinstance(c, str) or len(c) != 1:
                raise ValueError(f"symbol {c!r} must be a single character")
        starts, finals = frozenset(starts), frozenset(finals)
        for q in starts | finals:
            if not 0 <= q < num_states:
                raise ValueError(f"state {q} out of range")
        for p, c, q in transitions:
            if not (0 <= p < num_states and 0 <= q < num_states):
                raise ValueError(f"transition {(p, c, q)} has an invalid endpoint")
            if c not in alphabet:
                raise ValueError(f"transition symbol {c!r} not in the alphabet")
        self.num_states = num_states
        self.alphabet = alphabet
        self.starts = starts
        self.finals = finals
        self.transitions = transitions
        self.provenance = provenance
        self._delta = None

    @property
    def delta(self) -> dict:
        """``{state: {symbol: (targets...)}}``, targets sorted."""
        if self._delta is None:
            d = {q: {} for q in range(self.num_states)}
            for p, c, q in sorted(self.transitions):
                d[p].setdefault(c, []).append(q)
            self._delta = {p: {c: tuple(qs) for c, qs in m.items()} for p, m in d.items()}
        return self._delta

    def step_set(self, states, c):
        out = set()
        for p in states:
            out.update(self.delta[p].get(c, ()))
        return out

    def accepts(self, word: str) -> bool:
        cur = set(self.starts)
        for c in word:
            cur = self.step_set(cur, c)
            if not cur:
                return False
        return bool(cur & self.finals)

    def with_provenance(self, provenance):
        return type(self)(self.num_states, self.alphabet, self.starts, self.finals,
                          self.transitions, provenance)

    def is_deterministic(self) -> bool:
        if len(self.starts) > 1:
            return False
        return all(len(ts) == 1 for m in self.delta.values() for ts in m.values())

    def __repr__(self):
        return (f"{type(self).__name__}(states={self.num_states}, alphabet={''.join(sorted(self.alphabet))!r}, "
                f"starts={sorted(self.starts)}, finals={sorted(self.finals)}, "
                f"transitions={len(self.transitions)})")


class Dfa(Nfa):
    """Partial deterministic automaton: at most one start, at most one target per symbol."""

    __slots__ = ()

    def __init__(self, num_states, alphabet, starts, finals, transitions, provenance=None):
        super().__init__(num_states, alphabet, starts, finals, transitions, provenance)
        if len(self.starts) > 1:
            raise ValueError("a Dfa has at most one start state")
        seen = set()
        for p, c, _ in self.transitions:
            if (p, c) in seen:
                raise ValueError(f"state {p} has two {c!r}-transitions")
            seen.add((p, c))

    @property
    def start(self) -> int | None:
        return next(iter(self.starts), None)

    def step(self, p: int, c: str) -> int | None:
        t = self.delta[p].get(c)
        return t[0] if t else None

    def run(self, word: str) -> int | None:
        q = self.start
        for c in word:
            if q is None:
                return None
            q = self.step(q, c)
        return q

    def accepts(self, word: str) -> bool:
        q = self.run(word)
        return q is not None and q in self.finals


def from_epsilon(num_states, alphabet, starts, finals, transitions, epsilon) -> Nfa:
    """Build an Nfa from a machine that may use ε-moves (pairs in ``epsilon``)."""
    eps = {q: set() for q in range(num_states)}
    for p, q in epsilon:
        eps[p].add(q)
    closure = {}
    for q in range(num_states):
        seen, stack = {q}, [q]
        while stack:
            p = stack.pop()
            for r in eps[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        closure[q] = seen
    by_src = {}
    for p, c, q in transitions:
        by_src.setdefault(p, []).append((c, q))
    trans = set()
    for p in range(num_states):
        for m in closure[p]:
            for c, q in by_src.get(m, ()):
                trans.add((p, c, q))
    finals = set(finals)
    new_finals = {p for p in range(num_states) if closure[p] & finals}
    return trim(Nfa(num_states, alphabet, starts, new_finals, trans))


def from_words(words: Iterable[str], alphabet: Iterable[str] = ()) -> Dfa:
    """Trie automaton for a finite set of words."""
    trie = [{}]
    finals = set()
    symbols = set(alphabet)
    for w in sorted(set(words)):
        q = 0
        for c in w:
            symbols.add(c)
            if c not in trie[q]:
                trie.append({})
                trie[q][c] = len(trie) - 1
            q = trie[q][c]
        finals.add(q)
    trans = [(p, c, q) for p, m in enumerate(trie) for c, q in m.items()]
    return Dfa(len(trie), symbols, [0], finals, trans)


def accessible(A: Nfa) -> set:
    seen, stack = set(A.starts), list(A.starts)
    while stack:
        p = stack.pop()
        for ts in A.delta[p].values():
            for q in ts:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
    return seen


def coaccessible(A: Nfa) -> set:
    back = {q: [] for q in range(A.num_states)}
    for p, _, q in A.transitions:
        back[q].append(p)
    seen, stack = set(A.finals), list(A.finals)
    while stack:
        q = stack.pop()
        for p in back[q]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def restrict(A: Nfa, keep: Iterable[int]):
    """Sub-automaton on ``keep``, renumbered in increasing order; same kind as A."""
    keep = sorted(set(keep))
    idx = {q: i for i, q in enumerate(keep)}
    trans = [(idx[p], c, idx[q]) for p, c, q in A.transitions if p in idx and q in idx]
    cls = Dfa if isinstance(A, Dfa) else Nfa
    return cls(len(keep), A.alphabet, [idx[q] for q in A.starts if q in idx],
               [idx[q] for q in A.finals if q in idx], trans)


def trim(A: Nfa):
    """Keep only states that are both accessible and co-accessible."""
    useful = accessible(A) & coaccessible(A)
    if len(useful) == A.num_states:
        return A
    return restrict(A, useful)


def determinize(A: Nfa) -> Dfa:
    """Subset construction; states numbered in breadth-first discovery order."""
    if isinstance(A, Dfa):
        return A
    symbols = sorted(A.alphabet)
    if not A.starts:
        return Dfa(0, A.alphabet, [], [], [])
    first = frozenset(A.starts)
    index = {first: 0}
    order = [first]
    trans = []
    queue = deque([first])
    while queue:
        S = queue.popleft()
        for c in symbols:
            T = frozenset(A.step_set(S, c))
            if not T:
                continue
            if T not in index:
                index[T] = len(order)
                order.append(T)
                queue.append(T)
            trans.append((index[S], c, index[T]))
    finals = [i for i, S in enumerate(order) if S & A.finals]
    return Dfa(len(order), A.alphabet, [0], finals, trans)


def _renumber_bfs(A: Dfa, alphabet) -> Dfa:
    if A.start is None:
        return Dfa(0, alphabet, [], [], [])
    symbols = sorted(alphabet)
    index = {A.start: 0}
    queue = deque([A.start])
    while queue:
        p = queue.popleft()
        for c in symbols:
            q = A.step(p, c)
            if q is not None and q not in index:
                index[q] = len(index)
                queue.append(q)
    trans = [(index[p], c, index[q]) for p, c, q in A.transitions if p in index and q in index]
    return Dfa(len(index), alphabet, [0], [index[q] for q in A.finals if q in index], trans)


def minimize_canonical(A: Nfa) -> Dfa:
    """Minimal trim DFA, states renumbered breadth-first over the sorted alphabet.

    The alphabet is reduced to the symbols that actually occur, so equal
    languages always yield identical automata.
    """
    D = trim(determinize(A))
    if D.start is None:
        return Dfa(0, [], [], [], [])
    symbols = sorted({c for _, c, _ in D.transitions})
    # Moore refinement on the partial DFA; a missing move counts as class -1
    block = [1 if q in D.finals else 0 for q in range(D.num_states)]
    while True:
        sigs = {}
        new = []
        for q in range(D.num_states):
            row = D.delta[q]
            sig = (block[q],) + tuple(block[row[c][0]] if c in row else -1 for c in symbols)
            new.append(sigs.setdefault(sig, len(sigs)))
        if len(sigs) == len(set(block)):
            block = new
            break
        block = new
    trans = {(block[p], c, block[q]) for p, c, q in D.transitions}
    Q = Dfa(max(block) + 1, symbols, [block[D.start]], {block[q] for q in D.finals}, trans)
    return _renumber_bfs(Q, symbols)

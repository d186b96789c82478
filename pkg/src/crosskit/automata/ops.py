"""Language-level operations on automata."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from ..errors import EmptyPattern
from ..verdict import Verdict
from ..words import WordSet
from .core import Dfa, Nfa, accessible, determinize, from_epsilon, trim


def complement(A: Nfa, alphabet: Iterable[str] = ()) -> Dfa:
    """Complement over ``A.alphabet`` plus ``alphabet``; the sink exists only here."""
    symbols = sorted(set(A.alphabet) | set(alphabet))
    D = determinize(A)
    n = D.num_states
    sink = n
    trans = set(D.transitions)
    start = D.start if D.start is not None else sink
    for p in range(n + 1):
        for c in symbols:
            if p == sink or D.step(p, c) is None:
                trans.add((p, c, sink))
    finals = [q for q in range(n + 1) if q not in D.finals]
    return trim(Dfa(n + 1, symbols, [start], finals, trans))


def intersect(A: Nfa, B: Nfa) -> Nfa:
    index, order = {}, []
    queue = deque()
    for s in sorted(A.starts):
        for t in sorted(B.starts):
            index[(s, t)] = len(order)
            order.append((s, t))
            queue.append((s, t))
    trans = []
    while queue:
        p, q = queue.popleft()
        da, db = A.delta[p], B.delta[q]
        for c in sorted(set(da) & set(db)):
            for p2 in da[c]:
                for q2 in db[c]:
                    if (p2, q2) not in index:
                        index[(p2, q2)] = len(order)
                        order.append((p2, q2))
                        queue.append((p2, q2))
                    trans.append((index[(p, q)], c, index[(p2, q2)]))
    finals = [i for i, (p, q) in enumerate(order) if p in A.finals and q in B.finals]
    cls = Dfa if isinstance(A, Dfa) and isinstance(B, Dfa) else Nfa
    nstart = len(A.starts) * len(B.starts)
    return trim(cls(len(order), A.alphabet | B.alphabet, range(nstart), finals, trans))


def union(A: Nfa, B: Nfa) -> Nfa:
    k = A.num_states
    trans = list(A.transitions) + [(p + k, c, q + k) for p, c, q in B.transitions]
    return trim(Nfa(k + B.num_states, A.alphabet | B.alphabet,
                    list(A.starts) + [q + k for q in B.starts],
                    list(A.finals) + [q + k for q in B.finals], trans))


def concat(*parts: Nfa) -> Nfa:
    """Concatenation of the languages, left to right."""
    offset, trans, eps = 0, [], []
    alphabet = set()
    starts = finals = None
    for A in parts:
        trans += [(p + offset, c, q + offset) for p, c, q in A.transitions]
        alphabet |= A.alphabet
        s = [q + offset for q in A.starts]
        if starts is None:
            starts = s
        else:
            eps += [(f, q) for f in finals for q in s]
        finals = [q + offset for q in A.finals]
        offset += A.num_states
    return from_epsilon(offset, alphabet, starts or [], finals or [], trans, eps)


def word_automaton(w: str) -> Dfa:
    return Dfa(len(w) + 1, set(w), [0], [len(w)], [(i, c, i + 1) for i, c in enumerate(w)])


def is_empty(A: Nfa) -> bool:
    return not (accessible(A) & A.finals)


def is_finite(A: Nfa) -> bool:
    """True when the trim automaton has no cycle."""
    T = trim(A)
    color = [0] * T.num_states
    for root in range(T.num_states):
        if color[root]:
            continue
        stack = [(root, iter(sorted({q for ts in T.delta[root].values() for q in ts})))]
        color[root] = 1
        while stack:
            p, it = stack[-1]
            q = next(it, None)
            if q is None:
                color[p] = 2
                stack.pop()
            elif color[q] == 1:
                return False
            elif color[q] == 0:
                color[q] = 1
                stack.append((q, iter(sorted({r for ts in T.delta[q].values() for r in ts}))))
    return True


def enumerate_upto(A: Nfa, n: int) -> WordSet:
    """Accepted words of length at most ``n`` in canonical order."""
    D = trim(determinize(A))
    out = []
    if D.start is None:
        return WordSet()
    symbols = sorted(D.alphabet)
    layer = [("", D.start)]
    for length in range(n + 1):
        out.extend(w for w, q in layer if q in D.finals)
        if length == n:
            break
        nxt = []
        for w, q in layer:
            row = D.delta[q]
            for c in symbols:
                if c in row:
                    nxt.append((w + c, row[c][0]))
        layer = nxt
    return WordSet(out)


def shortest_accepted(A: Nfa) -> str | None:
    """Least accepted word in (length, lexicographic) order."""
    D = trim(determinize(A))
    if D.start is None:
        return None
    symbols = sorted(D.alphabet)
    word = {D.start: ""}
    queue = deque([D.start])
    while queue:
        p = queue.popleft()
        if p in D.finals:
            return word[p]
        for c in symbols:
            q = D.step(p, c)
            if q is not None and q not in word:
                word[q] = word[p] + c
                queue.append(q)
    return None


def _difference_witness(A: Nfa, B: Nfa) -> str | None:
    """Least word of L(A) \\ L(B), by breadth-first search of the product."""
    DA, DB = determinize(A), determinize(B)
    if DA.start is None:
        return None
    symbols = sorted(DA.alphabet)
    first = (DA.start, DB.start)
    word = {first: ""}
    queue = deque([first])
    while queue:
        p, q = queue.popleft()
        if p in DA.finals and (q is None or q not in DB.finals):
            return word[(p, q)]
        for c in symbols:
            p2 = DA.step(p, c)
            if p2 is None:
                continue
            q2 = DB.step(q, c) if q is not None else None
            if (p2, q2) not in word:
                word[(p2, q2)] = word[(p, q)] + c
                queue.append((p2, q2))
    return None


def includes(A: Nfa, B: Nfa) -> Verdict:
    """Whether L(B) ⊆ L(A); the witness is the least word of L(B) outside L(A)."""
    w = _difference_witness(B, A)
    return Verdict(w is None, w)


def counterexample(A: Nfa, B: Nfa) -> str | None:
    """Least word in the symmetric difference, or None when the languages agree."""
    ws = [w for w in (_difference_witness(A, B), _difference_witness(B, A)) if w is not None]
    return min(ws, key=lambda w: (len(w), w)) if ws else None


def equivalent(A: Nfa, B: Nfa) -> bool:
    return counterexample(A, B) is None


def lang_two_blocks(A: Nfa) -> WordSet:
    """Length-2 factors of L(A), plus length-1 members and ε when accepted."""
    T = trim(A)
    out = set()
    for p in range(T.num_states):
        for a, qs in T.delta[p].items():
            for q in qs:
                out.update(a + b for b in T.delta[q])
    out.update(lang_units(T))
    if T.starts & T.finals:
        out.add("")
    return WordSet(out)


def lang_first_symbols(A: Nfa) -> frozenset:
    T = trim(A)
    return frozenset(c for s in T.starts for c in T.delta[s])


def lang_last_symbols(A: Nfa) -> frozenset:
    T = trim(A)
    return frozenset(c for p, c, q in T.transitions if q in T.finals)


def lang_units(A: Nfa) -> WordSet:
    T = trim(A)
    return WordSet(c for s in T.starts for c, qs in T.delta[s].items() if set(qs) & T.finals)


def _x_paths(A: Nfa, x: str, sources):
    """Pairs (p, q) with an x-labelled path from p to q."""
    out = set()
    for p in sources:
        cur = {p}
        for c in x:
            cur = A.step_set(cur, c)
            if not cur:
                break
        out.update((p, q) for q in cur)
    return out


def prefix_lang(A: Nfa, x: str) -> Nfa:
    """Automaton for {u : u x u' ∈ L(A)}."""
    if not x:
        raise EmptyPattern("prefix language needs a non-empty x")
    T = trim(A)
    finals = {p for p, _ in _x_paths(T, x, range(T.num_states))}
    return trim(Nfa(T.num_states, T.alphabet, T.starts, finals, T.transitions))


def suffix_lang(A: Nfa, x: str) -> Nfa:
    """Automaton for {s : s' x s ∈ L(A)}."""
    if not x:
        raise EmptyPattern("suffix language needs a non-empty x")
    T = trim(A)
    starts = {q for _, q in _x_paths(T, x, range(T.num_states))}
    return trim(Nfa(T.num_states, T.alphabet, starts, T.finals, T.transitions))


def factors_of_length(A: Nfa, k: int) -> WordSet:
    """All length-k factors of L(A)."""
    T = trim(A)
    out = set()
    layer = {(p, "") for p in range(T.num_states)}
    for _ in range(k):
        layer = {(q, w + c) for p, w in layer for c, qs in T.delta[p].items() for q in qs}
    out.update(w for _, w in layer)
    return WordSet(out)


def bounded(A: Nfa, n: int) -> Nfa:
    """L(A) restricted to words of length at most n."""
    symbols = sorted(A.alphabet)
    counter = Nfa(n + 1, symbols, [0], range(n + 1), [(i, c, i + 1) for i in range(n) for c in symbols])
    return intersect(A, counter)

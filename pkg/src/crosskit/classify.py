"""Decision procedures for crossover closure and a few sub-regular families."""

from __future__ import annotations

import hashlib
from collections import deque
from itertools import combinations
from typing import Iterable

from .automata import (Dfa, Nfa, complement, counterexample, equivalent, factors_of_length, includes,
                       intersect, is_finite, lang_last_symbols, minimize_canonical, to_json, trim)
from .automata.ops import _difference_witness
from .closure import gsco_once_regular
from .errors import EmptyPattern, EpsilonInLanguage
from .verdict import Verdict
from .words import ALL, RuleSet, canonical_key

__all__ = [
    "Verdict", "is_closed_under", "is_crossover", "is_tsy", "is_sy", "is_constant", "constant_length",
    "is_slt", "is_st_closed", "is_combinational", "is_nilpotent", "is_suffix_closed", "FAMILIES",
    "classify", "language_hash",
]


def _trim_eps_free(A: Nfa) -> Nfa:
    T = trim(A)
    if T.starts & T.finals:
        raise EpsilonInLanguage("the language contains the empty word")
    return T


def _used(T: Nfa) -> set:
    return {c for _, c, _ in T.transitions}


def is_closed_under(A: Nfa, rules: RuleSet = ALL) -> Verdict:
    """Whether one crossover step with ``rules`` stays inside L(A)."""
    T = _trim_eps_free(A)
    v = includes(T, gsco_once_regular(T, rules))
    return Verdict(v.holds, v.witness)


def is_crossover(A: Nfa) -> Verdict:
    return is_closed_under(A, ALL)


def is_tsy(A: Nfa) -> Verdict:
    """Closure under every symbol of the language; same test as :func:`is_crossover`."""
    return is_closed_under(A, ALL)


def is_sy(A: Nfa) -> Verdict:
    """Closure under some non-empty set of single symbols. ``detail`` is the first such set."""
    T = _trim_eps_free(A)
    symbols = sorted(_used(T))
    for size in range(1, len(symbols) + 1):
        for subset in combinations(symbols, size):
            if is_closed_under(T, RuleSet.symbols(subset)):
                return Verdict(True, detail=list(subset))
    return Verdict(False)


def is_st_closed(A: Nfa, rules) -> Verdict:
    if not isinstance(rules, RuleSet):
        rules = RuleSet.strings(rules)
    return is_closed_under(A, rules)


# ---- constants ------------------------------------------------------------

def _access_words(M: Dfa) -> dict:
    """Least word reaching each state."""
    if M.start is None:
        return {}
    word = {M.start: ""}
    queue = deque([M.start])
    symbols = sorted(M.alphabet)
    while queue:
        p = queue.popleft()
        for c in symbols:
            q = M.step(p, c)
            if q is not None and q not in word:
                word[q] = word[p] + c
                queue.append(q)
    return word


def _run_from(M: Dfa, p, w):
    for c in w:
        p = M.step(p, c)
        if p is None:
            return None
    return p


def _from_state(M: Dfa, q) -> Dfa:
    return Dfa(M.num_states, M.alphabet, [q], M.finals, M.transitions)


def is_constant(A: Nfa, c: str) -> Verdict:
    """Whether ``c`` is a constant: wcx, ycz ∈ L imply wcz ∈ L.

    On the minimal trim automaton this means every c-path ends in the same
    state. The witness is a word wcz outside L built from two c-paths that
    end in different states.
    """
    if not c:
        raise EmptyPattern("a constant must be non-empty")
    M = minimize_canonical(A)
    ends = {}
    for p in range(M.num_states):
        q = _run_from(M, p, c)
        if q is not None:
            ends.setdefault(q, []).append(p)
    if len(ends) <= 1:
        return Verdict(True)
    access = _access_words(M)
    best = None
    for qa in ends:
        for qb in ends:
            if qa == qb:
                continue
            z = _difference_witness(_from_state(M, qa), _from_state(M, qb))
            if z is None:
                continue
            w = min((access[p] for p in ends[qb]), key=lambda u: (len(u), u))
            cand = w + c + z
            if best is None or canonical_key(cand) < canonical_key(best):
                best = cand
    return Verdict(False, best)


def _pair_step(M: Dfa, pairs, c):
    out = set()
    for p, q in pairs:
        p2, q2 = M.step(p, c), M.step(q, c)
        if p2 is not None and q2 is not None and p2 != q2:
            out.add((min(p2, q2), max(p2, q2)))
    return out


def _offending_factor(M: Dfa, k: int) -> str | None:
    """Least length-k word that labels two paths ending in different states."""
    symbols = sorted(M.alphabet)
    alive = [{(p, q) for p in range(M.num_states) for q in range(p + 1, M.num_states)}]
    for _ in range(k):
        alive.append({pq for pq in alive[0] if any(_pair_step(M, [pq], c) & alive[-1] for c in symbols)})
    cur = alive[k]
    if not cur:
        return None
    word = ""
    for i in range(k):
        for c in symbols:
            nxt = _pair_step(M, cur, c) & alive[k - i - 1]
            if nxt:
                word += c
                cur = nxt
                break
    return word


def constant_length(A: Nfa, k_max: int | None = None) -> int | None:
    """Smallest k such that every length-k factor of L is a constant, if some k ≤ k_max works."""
    M = minimize_canonical(A)
    n = M.num_states
    if k_max is None:
        k_max = max(1, n * n)
    pairs = {(p, q) for p in range(n) for q in range(p + 1, n)}
    symbols = sorted(M.alphabet)
    for k in range(1, k_max + 1):
        nxt = set()
        for c in symbols:
            nxt |= _pair_step(M, pairs, c)
        if not nxt:
            return k
        if nxt == pairs:
            return None
        pairs = nxt
    return None


def _at_least(symbols, k) -> Nfa:
    trans = [(i, c, i + 1) for i in range(k) for c in symbols] + [(k, c, k) for c in symbols]
    return Nfa(k + 1, symbols, [0], [k], trans)


def _window_hull(M: Dfa, k: int) -> Dfa:
    """Smallest language (UΣ* ∩ Σ*V) minus Σ*WΣ*, with U, V, W ⊆ Σ^k, containing L ∩ Σ^kΣ*."""
    symbols = sorted(M.alphabet)
    layer = {("", M.start)} if M.start is not None else set()
    for _ in range(k):
        layer = {(u + c, M.step(q, c)) for u, q in layer for c in symbols if M.step(q, c) is not None}
    heads = {u for u, _ in layer}
    inner = set(factors_of_length(M, k))
    tails = set()
    for p in range(M.num_states):
        todo = {("", p)}
        for _ in range(k):
            todo = {(v + c, M.step(q, c)) for v, q in todo for c in symbols if M.step(q, c) is not None}
        tails.update(v for v, q in todo if q in M.finals)
    index = {"": 0}
    trans = []
    queue = deque([""])
    while queue:
        s = queue.popleft()
        for c in symbols:
            t = s + c
            if len(s) < k:
                if not any(u.startswith(t) for u in heads):
                    continue
            else:
                t = t[1:]
                if t not in inner:
                    continue
            if t not in index:
                index[t] = len(index)
                queue.append(t)
            trans.append((index[s], c, index[t]))
    finals = [i for s, i in index.items() if len(s) == k and s in tails]
    return Dfa(len(index), symbols, [0], finals, trans)


def _window_order(M: Dfa, k: int) -> bool:
    symbols = sorted(M.alphabet)
    long_part = intersect(M, _at_least(symbols, k))
    return equivalent(long_part, _window_hull(M, k))


def is_slt(A: Nfa, k_max: int | None = None) -> Verdict:
    """Strict local testability.

    A language is strictly locally testable exactly when all its factors of
    some length are constants; that scan decides the property. ``detail`` is
    the least window size k for which L ∩ Σ^kΣ* = (UΣ* ∩ Σ*V) minus Σ*WΣ*
    with U, V, W ⊆ Σ^k. When the scan runs out at ``k_max`` the witness is
    the least non-constant factor of length k_max.
    """
    T = _trim_eps_free(A)
    M = minimize_canonical(T)
    if M.num_states == 0:
        return Verdict(True, detail=1)
    if k_max is None:
        k_max = max(1, M.num_states ** 2)
    kc = constant_length(M, k_max)
    if kc is None:
        return Verdict(False, _offending_factor(M, k_max))
    for k in range(1, kc + 2):
        if _window_order(M, k):
            return Verdict(True, detail=k)
    raise AssertionError("constant factors without a matching window size")


# ---- small families -------------------------------------------------------

def is_combinational(A: Nfa) -> Verdict:
    """Whether L = Σ*U for a set U of symbols; U is forced to be the last-symbol set."""
    T = trim(A)
    symbols = sorted(A.alphabet)
    ends = sorted(lang_last_symbols(T))
    cand = Nfa(2, symbols, [0], [1], [(0, c, 0) for c in symbols] + [(0, c, 1) for c in ends])
    w = counterexample(T, cand)
    return Verdict(w is None, w)


def is_nilpotent(A: Nfa) -> Verdict:
    """Finite or co-finite."""
    T = trim(A)
    return Verdict(is_finite(T) or is_finite(complement(A)))


def is_suffix_closed(A: Nfa) -> Verdict:
    """Whether every non-empty suffix of a member is a member."""
    T = trim(A)
    if T.num_states == 0:
        return Verdict(True)
    symbols = sorted(T.alphabet)
    suffixes = Nfa(T.num_states, T.alphabet, range(T.num_states), T.finals, T.transitions)
    v = includes(T, intersect(suffixes, _at_least(symbols, 1)))
    return Verdict(v.holds, v.witness)


# ---- report ---------------------------------------------------------------

FAMILIES = {
    "crossover": is_crossover,
    "tsy": is_tsy,
    "sy": is_sy,
    "slt": is_slt,
    "combinational": is_combinational,
    "nilpotent": is_nilpotent,
    "suffix-closed": is_suffix_closed,
}


def language_hash(A: Nfa) -> str:
    M = minimize_canonical(A).with_provenance(None)
    return hashlib.sha256(to_json(M)).hexdigest()


def classify(A: Nfa, families: Iterable[str] | None = None, k_max: int | None = None) -> dict:
    """Run the named deciders (all by default) in the fixed family order."""
    wanted = list(FAMILIES) if families is None else list(families)
    unknown = [f for f in wanted if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown families: {', '.join(unknown)}")
    rows = []
    for name in FAMILIES:
        if name not in wanted:
            continue
        v = FAMILIES[name](A, k_max) if name == "slt" else FAMILIES[name](A)
        rows.append({"name": name, **v.as_dict()})
    return {"language": language_hash(A), "families": rows}

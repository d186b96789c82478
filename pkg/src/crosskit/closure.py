"""Exact crossover closures as automata, block profiles and base sets.

The jump construction: read an axiom (or a path of the base automaton)
symbol by symbol; whenever the text read since the last jump ends with a
rule x, control may continue after any occurrence of x in any axiom. The
state remembers the last few symbols of the current window (at most the
longest rule), so a later rule occurrence must lie inside the axiom the
chain is currently copying. Every word in the closure has a derivation of
that shape, so the automaton accepts exactly the closure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable

from .automata import (Dfa, Nfa, concat, counterexample, from_words, intersect, lang_first_symbols,
                       lang_last_symbols, lang_two_blocks, lang_units, prefix_lang, suffix_lang, to_dict,
                       trim, union, word_automaton)
from .automata.core import accessible, coaccessible
from .automata.io import from_dict
from .errors import (EmptyAxioms, EmptyWord, EpsilonAxiom, EpsilonInLanguage, InconsistentProfile,
                     NotAClosure)
from .finlang import BaseSets, FiniteLanguage
from .verdict import Verdict
from .words import ALL, CrossTrace, OccurrenceRef, RuleSet, WordSet, canonical_key, two_blocks

__all__ = [
    "ClosureProvenance", "Segment", "DerivationChain", "Membership", "BlockProfile", "BaseSets",
    "jump_closure_finite", "jump_closure_regular", "gsco_once_regular", "member_with_trace",
    "block_profile", "profile_automaton", "iter_profiles", "count_profiles", "extract_base",
    "verify_decomposition", "closure_from_json_dict",
]


def _accepts_epsilon(A: Nfa) -> bool:
    return bool(A.starts & A.finals)


def _rules_to_dict(rules: RuleSet):
    return {"kind": rules.kind, "items": sorted(rules.items, key=canonical_key)}


@dataclass(frozen=True)
class ClosureProvenance:
    """How a closure automaton was built: the axioms (or base automaton) and the rules.

    ``states`` maps each state of the raw jump automaton to its key
    ``(base state, window)``; it is empty once the automaton has been
    minimized.
    """

    rules: RuleSet
    axioms: tuple | None = None
    base: Nfa | None = None
    states: tuple = ()

    @property
    def kind(self):
        return "finite" if self.axioms is not None else "regular"

    def recipe(self) -> "ClosureProvenance":
        return ClosureProvenance(self.rules, self.axioms, self.base)

    def as_dict(self):
        out = {"kind": self.kind, "rules": _rules_to_dict(self.rules)}
        if self.axioms is not None:
            out["axioms"] = list(self.axioms)
        else:
            out["base"] = to_dict(self.base)
        if self.states:
            out["states"] = [list(s[0]) + [s[1]] if isinstance(s[0], tuple) else [s[0], s[1]]
                             for s in self.states]
        return out


def closure_from_json_dict(data: dict) -> ClosureProvenance:
    """Rebuild a provenance recipe from its ``x-provenance`` JSON entry."""
    try:
        rules = RuleSet(data["rules"]["kind"], data["rules"]["items"])
        if data["kind"] == "finite":
            return ClosureProvenance(rules, axioms=tuple(data["axioms"]))
        if data["kind"] == "regular":
            return ClosureProvenance(rules, base=from_dict(data["base"]))
    except (KeyError, TypeError) as e:
        raise NotAClosure(f"malformed provenance: {e}") from None
    raise NotAClosure(f"unknown provenance kind {data.get('kind')!r}")


class _JumpSystem:
    """Moves of the jump construction over a trim, ε-free base automaton."""

    def __init__(self, base: Nfa, rules: tuple, axioms=None):
        self.base = base
        self.axioms = axioms
        self.rules = rules
        self.m = max((len(x) for x in rules), default=1)
        self.targets = {}
        for x in rules:
            ts = set()
            for p in range(base.num_states):
                cur = {p}
                for c in x:
                    cur = base.step_set(cur, c)
                ts |= cur
            self.targets[x] = sorted(ts)

    def starts(self):
        return [(s, "") for s in sorted(self.base.starts)]

    def moves(self, state, c):
        """Yield (target, rule or None); rule is set for a jump."""
        q, h = state
        h2 = (h + c)[-self.m:]
        for q2 in self.base.delta[q].get(c, ()):
            yield (q2, h2), None
        if not self.base.delta[q].get(c):
            return
        for x in self.rules:
            if h2.endswith(x):
                for t in self.targets[x]:
                    yield (t, x), x

    def is_final(self, state):
        return state[0] in self.base.finals


def _build(system: _JumpSystem, alphabet):
    seen = set(system.starts())
    stack = list(seen)
    edges = set()
    symbols = sorted(alphabet)
    while stack:
        s = stack.pop()
        for c in symbols:
            for t, _ in system.moves(s, c):
                edges.add((s, c, t))
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    keys = sorted(seen, key=_state_order)
    index = {k: i for i, k in enumerate(keys)}
    A = Nfa(len(keys), alphabet, [index[s] for s in system.starts()],
            [index[k] for k in keys if system.is_final(k)],
            [(index[a], c, index[b]) for a, c, b in edges])
    useful = sorted(accessible(A) & coaccessible(A))
    return trim(A), tuple(keys[i] for i in useful)


def _state_order(key):
    q, h = key
    return (q, len(h), h)


def _position_automaton(axioms):
    """One chain of states per axiom; state (k, i) sits before axiom[k][i]."""
    keys = []
    for k, z in enumerate(axioms):
        keys.extend((k, i) for i in range(len(z) + 1))
    index = {key: n for n, key in enumerate(keys)}
    trans = [(index[(k, i)], z[i], index[(k, i + 1)]) for k, z in enumerate(axioms)
             for i in range(len(z))]
    A = Nfa(len(keys), set("".join(axioms)), [index[(k, 0)] for k in range(len(axioms))],
            [index[(k, len(z))] for k, z in enumerate(axioms)], trans)
    return A, keys


def jump_closure_finite(axioms: Iterable[str], rules: RuleSet = ALL) -> Nfa:
    """Automaton accepting the iterated crossover closure of a finite axiom set."""
    axioms = list(axioms)
    if any(w == "" for w in axioms):
        raise EpsilonAxiom("axioms may not contain the empty word")
    axioms = tuple(FiniteLanguage(axioms))
    if not axioms:
        raise EmptyAxioms("at least one axiom is required")
    base, keys = _position_automaton(axioms)
    xs = rules.resolve(base.alphabet)
    system = _JumpSystem(base, xs)
    A, states = _build(system, base.alphabet)
    states = tuple((keys[q], h) for q, h in states)
    return A.with_provenance(ClosureProvenance(rules, axioms=axioms, states=states))


def jump_closure_regular(A: Nfa, rules: RuleSet = ALL) -> Nfa:
    """Automaton accepting the iterated crossover closure of L(A)."""
    if _accepts_epsilon(trim(A)):
        raise EpsilonInLanguage("the language contains the empty word")
    base = trim(A)
    alphabet = {c for _, c, _ in base.transitions}
    base = Nfa(base.num_states, alphabet, base.starts, base.finals, base.transitions)
    system = _JumpSystem(base, rules.resolve(alphabet))
    C, states = _build(system, alphabet)
    return C.with_provenance(ClosureProvenance(rules, base=base, states=states))


def _rebuild_system(prov: ClosureProvenance):
    if prov.axioms is not None:
        base, keys = _position_automaton(prov.axioms)
    else:
        base, keys = prov.base, None
    xs = prov.rules.resolve({c for _, c, _ in base.transitions})
    return _JumpSystem(base, xs, prov.axioms), keys


def gsco_once_regular(A: Nfa, rules: RuleSet = ALL, mode: int = 2) -> Nfa:
    """One crossover step on (L, L): the union over rules x of Prefix_x(L)·x·Suffix_x(L).

    Both modes give the same language when a language is crossed with itself.
    """
    if mode not in (1, 2):
        raise ValueError("mode must be 1 or 2")
    T = trim(A)
    if _accepts_epsilon(T):
        raise EpsilonInLanguage("the language contains the empty word")
    alphabet = {c for _, c, _ in T.transitions}
    out = Nfa(0, alphabet, [], [], [])
    for x in rules.resolve(alphabet):
        out = union(out, concat(prefix_lang(T, x), word_automaton(x), suffix_lang(T, x)))
    return out


@dataclass(frozen=True)
class Segment:
    """A piece of an axiom copied into the derived word.

    The copy starts right after ``cut_in`` (or at the start of the axiom)
    and ends right after ``cut_out`` (or at the end of the axiom).
    """

    axiom: str
    cut_in: OccurrenceRef | None
    cut_out: OccurrenceRef | None

    def __str__(self):
        a = f"[{self.cut_in}" if self.cut_in else "["
        b = f"{self.cut_out}]" if self.cut_out else "]"
        return f"{self.axiom}{a}..{b}"


@dataclass(frozen=True)
class DerivationChain:
    segments: tuple

    def replay(self) -> str:
        """Rebuild the word, checking every cut against its axiom."""
        word = ""
        prev_rule = None
        for n, seg in enumerate(self.segments):
            z = seg.axiom
            for occ in (seg.cut_in, seg.cut_out):
                if occ is not None and z[occ.start:occ.end] != occ.pattern:
                    raise NotAClosure(f"{occ} is not an occurrence in {z}")
            if (seg.cut_in is None) != (n == 0) or (seg.cut_out is None) != (n == len(self.segments) - 1):
                raise NotAClosure("only the first segment starts and only the last ends freely")
            if seg.cut_in is not None:
                if seg.cut_in.pattern != prev_rule:
                    raise NotAClosure("consecutive cuts use different rules")
                begin = seg.cut_in.end
                window = seg.cut_in.start
            else:
                begin = window = 0
            end = len(z) if seg.cut_out is None else seg.cut_out.end
            if seg.cut_out is not None and seg.cut_out.start < window:
                raise NotAClosure("a cut reaches outside the copied part of its axiom")
            word += z[begin:end]
            prev_rule = seg.cut_out.pattern if seg.cut_out else None
        return word

    def steps(self) -> list[CrossTrace]:
        """The chain as successive crossovers of the current word with an axiom."""
        out = []
        current = self.segments[0].axiom
        prefix = ""
        for prev, seg in zip(self.segments, self.segments[1:]):
            begin = prev.cut_in.end if prev.cut_in else 0
            prefix += prev.axiom[begin:prev.cut_out.end]
            x = seg.cut_in.pattern
            e = len(prefix)
            left_cut = OccurrenceRef(x, e - len(x) + 1, _ordinal(current, x, e - len(x)))
            output = current[:e] + seg.axiom[seg.cut_in.end:]
            out.append(CrossTrace(current, seg.axiom, x, left_cut, seg.cut_in, output))
            current = output
        return out

    def __str__(self):
        return " + ".join(str(s) for s in self.segments)


def _ordinal(host, x, start):
    n, i = 0, host.find(x)
    while 0 <= i <= start:
        n += 1
        i = host.find(x, i + 1)
    return n


@dataclass(frozen=True)
class Membership:
    accepted: bool
    chain: DerivationChain | None = None

    def __bool__(self):
        return self.accepted


def _find_path(system: _JumpSystem, w: str):
    """Accepting run with the fewest jumps, ties broken by state order.

    Returns (states, rules): ``states[i]`` is the state before symbol i and
    ``rules[i]`` the rule jumped on while reading symbol i (None for a plain step).
    """
    layer = {s: (0, None) for s in system.starts()}
    history = [layer]
    for c in w:
        nxt = {}
        for s in sorted(layer, key=_state_order):
            jumps = layer[s][0]
            for t, rule in system.moves(s, c):
                cost = jumps + (rule is not None)
                if t not in nxt or cost < nxt[t][0]:
                    nxt[t] = (cost, (s, rule))
        layer = nxt
        history.append(layer)
        if not layer:
            return None
    finals = [s for s in layer if system.is_final(s)]
    if not finals:
        return None
    state = min(finals, key=lambda s: (layer[s][0], _state_order(s)))
    states, rules = [state], []
    for i in range(len(w), 0, -1):
        state, rule = history[i][state][1]
        states.append(state)
        rules.append(rule)
    return states[::-1], rules[::-1]


def _shortest_words_from(base: Nfa, to_finals: bool):
    """Least word from each state to a final (to_finals) or from a start to each state."""
    symbols = sorted(base.alphabet)
    if to_finals:
        back = {}
        for p, c, q in base.transitions:
            back.setdefault(q, []).append((c, p))
        dist = {q: "" for q in base.finals}
        queue = deque(sorted(base.finals))
        while queue:
            q = queue.popleft()
            for c, p in sorted(back.get(q, ())):
                cand = c + dist[q]
                if p not in dist:
                    dist[p] = cand
                    queue.append(p)
        return dist
    dist = {s: "" for s in base.starts}
    queue = deque(sorted(base.starts))
    while queue:
        p = queue.popleft()
        for c in symbols:
            for q in base.delta[p].get(c, ()):
                if q not in dist:
                    dist[q] = dist[p] + c
                    queue.append(q)
    return dist


def _chain_from_path(system, keys, path, w):
    states, rules = path
    # split the run into segments: (entry state, entry rule, last base state, text, exit rule)
    segs = []
    entry, rule_in = states[0][0], None
    last, text = entry, ""
    for i, c in enumerate(w):
        text += c
        if rules[i] is None:
            last = states[i + 1][0]
            continue
        last = system.base.delta[last][c][0]
        segs.append((entry, rule_in, last, text, rules[i]))
        entry, rule_in = states[i + 1][0], rules[i]
        last, text = entry, ""
    segs.append((entry, rule_in, last, text, None))

    out = []
    if keys is not None:
        for entry, rule_in, last, _, rule_out in segs:
            k, j = keys[entry]
            z = system.axioms[k]
            cut_in = None if rule_in is None else _occ(z, rule_in, j - len(rule_in))
            i_end = keys[last][1]
            cut_out = None if rule_out is None else _occ(z, rule_out, i_end - len(rule_out))
            out.append(Segment(z, cut_in, cut_out))
        return DerivationChain(tuple(out))

    base = system.base
    to_final = _shortest_words_from(base, True)
    from_start = _shortest_words_from(base, False)
    for entry, rule_in, last, text, rule_out in segs:
        if rule_in is None:
            pre = ""
        else:
            sources = [p for p in from_start if entry in _walk(base, p, rule_in)]
            p = min(sources, key=lambda p: canonical_key(from_start[p]))
            pre = from_start[p] + rule_in
        post = to_final[last] if rule_out is not None else ""
        z = pre + text + post
        cut_in = None if rule_in is None else _occ(z, rule_in, len(pre) - len(rule_in))
        cut_out = None if rule_out is None else _occ(z, rule_out, len(pre) + len(text) - len(rule_out))
        out.append(Segment(z, cut_in, cut_out))
    return DerivationChain(tuple(out))


def _walk(base, p, x):
    cur = {p}
    for c in x:
        cur = base.step_set(cur, c)
    return cur


def _occ(z, x, start):
    return OccurrenceRef(x, start + 1, _ordinal(z, x, start))


def member_with_trace(C: Nfa, w: str) -> Membership:
    """Decide w ∈ L(C) for a jump closure and, on acceptance, give a derivation chain."""
    prov = C.provenance
    if not isinstance(prov, ClosureProvenance):
        raise NotAClosure("the automaton carries no closure provenance")
    accepted = C.accepts(w)
    system, keys = _rebuild_system(prov)
    path = _find_path(system, w) if w else None
    if w == "" and accepted:
        raise NotAClosure("a closure automaton cannot accept the empty word")
    if (path is not None) != accepted:
        raise NotAClosure("automaton and provenance disagree")
    if not accepted:
        return Membership(False)
    chain = _chain_from_path(system, keys, path, w)
    if chain.replay() != w:
        raise AssertionError("derivation chain does not replay")
    return Membership(True, chain)


# ---- block profiles -------------------------------------------------------

@dataclass(frozen=True)
class BlockProfile:
    first: str
    blocks: frozenset
    last: str

    def __str__(self):
        return f"<{self.first},{{{','.join(WordSet(self.blocks))}}},{self.last}>"


def block_profile(w: str) -> BlockProfile:
    if not w:
        raise EmptyWord("the empty word has no block profile")
    return BlockProfile(w[0], frozenset(two_blocks(w)), w[-1])


def _check_profile(p: BlockProfile):
    lengths = {len(b) for b in p.blocks}
    if not p.blocks or len(lengths) != 1:
        raise InconsistentProfile("blocks must be non-empty and of one length")
    if lengths == {1}:
        if p.blocks != {p.first} or p.first != p.last:
            raise InconsistentProfile("a one-symbol profile is <a,{a},a>")
        return
    if lengths != {2}:
        raise InconsistentProfile("blocks must have length 2")
    if p.first not in {b[0] for b in p.blocks}:
        raise InconsistentProfile(f"no block starts with {p.first!r}")
    if p.last not in {b[1] for b in p.blocks}:
        raise InconsistentProfile(f"no block ends with {p.last!r}")


def profile_automaton(p: BlockProfile, alphabet: Iterable[str] = ()) -> Dfa:
    """DFA for the words whose block profile is exactly ``p``."""
    _check_profile(p)
    symbols = sorted(set(alphabet) | {c for b in p.blocks for c in b})
    if len(next(iter(p.blocks))) == 1:
        return word_automaton(p.first) if not alphabet else Dfa(2, symbols, [0], [1], [(0, p.first, 1)])
    blocks = sorted(p.blocks)
    bit = {b: 1 << i for i, b in enumerate(blocks)}
    full = (1 << len(blocks)) - 1
    index = {("start",): 0, (p.first, 0): 1}
    trans = [(0, p.first, 1)]
    stack = [(p.first, 0)]
    while stack:
        a, used = stack.pop()
        for b in blocks:
            if b[0] != a:
                continue
            nxt = (b[1], used | bit[b])
            if nxt not in index:
                index[nxt] = len(index)
                stack.append(nxt)
            trans.append((index[(a, used)], b[1], index[nxt]))
    finals = [i for k, i in index.items() if k == (p.last, full)]
    return trim(Dfa(len(index), symbols, [0], finals, trans))


def iter_profiles(alphabet: Iterable[str]):
    """Every syntactic profile over the alphabet: the ε class, <a,{a},a>, and
    <s,B,e> for each non-empty B ⊆ Σ² and s, e ∈ Σ."""
    symbols = sorted(set(alphabet))
    yield None
    for a in symbols:
        yield BlockProfile(a, frozenset([a]), a)
    pairs = ["".join(t) for t in product(symbols, repeat=2)]
    for mask in range(1, 1 << len(pairs)):
        blocks = frozenset(b for i, b in enumerate(pairs) if mask >> i & 1)
        for s in symbols:
            for e in symbols:
                yield BlockProfile(s, blocks, e)


def count_profiles(n: int) -> int:
    """Number of profile classes over an n-symbol alphabet: n²(2^(n²)−1) + n + 1."""
    if n < 1:
        raise ValueError("alphabet size must be at least 1")
    return n * n * (2 ** (n * n) - 1) + n + 1


# ---- base sets ------------------------------------------------------------

def extract_base(A: Nfa) -> BaseSets:
    T = trim(A)
    if _accepts_epsilon(T):
        raise EpsilonInLanguage("the language contains the empty word")
    return BaseSets(WordSet(b for b in lang_two_blocks(T) if len(b) == 2),
                    lang_first_symbols(T), lang_last_symbols(T), lang_units(T))


def _framed(starts, ends, alphabet) -> Nfa:
    """S·Σ*·E, words of length at least 2."""
    trans = [(0, s, 1) for s in starts] + [(1, c, 1) for c in alphabet] + [(1, e, 2) for e in ends]
    return Nfa(3, set(alphabet) | set(starts) | set(ends), [0], [2], trans)


def decomposition(A: Nfa) -> Nfa:
    """(closure(B) ∩ SΣ*E) ∪ units for the base sets of L(A)."""
    base = extract_base(A)
    alphabet = {c for _, c, _ in trim(A).transitions}
    parts = from_words(base.units, alphabet)
    if base.blocks:
        closed = jump_closure_finite(base.blocks, ALL)
        parts = union(parts, intersect(closed.with_provenance(None),
                                       _framed(base.starts, base.ends, alphabet)))
    return parts


def verify_decomposition(A: Nfa) -> Verdict:
    w = counterexample(A, decomposition(A))
    return Verdict(w is None, w)



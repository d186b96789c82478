"""Brute-force references and seeded generators.

Everything here favors plain loops over speed. The references are meant
for short words (length 8 to 10 at most); their cost grows exponentially
with length.
"""

from __future__ import annotations

import os
import random
from collections import defaultdict
from typing import Iterable

from .automata.regex import Concat, Opt, Plus, Regex, Star, Sym, Union
from .finlang import FiniteLanguage
from .words import RuleSet, WordSet

__all__ = [
    "naive_gsco_all_substrings", "chain_membership", "bounded_closure_reference", "gen_words",
    "gen_finite_langs", "gen_regexes", "gen_rules", "suite_size",
]

SYMBOLS = "abcdefgh"


def _subwords(w):
    return {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}


def naive_gsco_all_substrings(w1: str, w2: str, mode: int = 2) -> WordSet:
    """Crossover at every common non-empty factor and every pair of its occurrences."""
    out = set()
    for x in _subwords(w1) & _subwords(w2):
        for i in range(len(w1) - len(x) + 1):
            if w1[i:i + len(x)] != x:
                continue
            for j in range(len(w2) - len(x) + 1):
                if w2[j:j + len(x)] != x:
                    continue
                out.add(w1[:i] + x + w2[j + len(x):])
                if mode == 2:
                    out.add(w2[:j] + x + w1[i + len(x):])
    return WordSet(out)


def _rule_list(rules, axioms):
    if isinstance(rules, RuleSet):
        if rules.kind == "all":
            return sorted({c for z in axioms for c in z})
        return sorted(rules.items)
    return sorted(set(rules))


def chain_membership(w: str, axioms: Iterable[str], rules) -> bool:
    """Left-to-right chain check.

    w is accepted when it is an axiom, or when it splits at junctions
    J1 < J2 < ... with a rule x_t ending at each J_t, such that w[:J1] is
    an axiom prefix, each window w[J_t-|x_t| : J_{t+1}] is a factor of some
    axiom, consecutive rule occurrences start in order, and the last window
    w[J_k-|x_k|:] is an axiom suffix.
    """
    axioms = set(axioms)
    if w in axioms:
        return True
    if not w:
        return False
    prefixes = {z[:i] for z in axioms for i in range(1, len(z) + 1)}
    suffixes = {z[i:] for z in axioms for i in range(len(z))}
    inner = set()
    for z in axioms:
        inner |= _subwords(z)
    xs = _rule_list(rules, axioms)
    n = len(w)

    def ends_at(J):
        return [x for x in xs if len(x) <= J and w[J - len(x):J] == x]

    todo = [(J, x) for J in range(1, n + 1) if w[:J] in prefixes for x in ends_at(J)]
    seen = set(todo)
    while todo:
        J, x = todo.pop()
        s = J - len(x)
        if w[s:] in suffixes:
            return True
        for J2 in range(J, n + 1):
            if w[s:J2] not in inner:
                break
            for x2 in ends_at(J2):
                if J2 - len(x2) >= s and (J2, x2) not in seen:
                    seen.add((J2, x2))
                    todo.append((J2, x2))
    return False


def bounded_closure_reference(axioms: Iterable[str], rules, target_len: int, cap: int) -> FiniteLanguage:
    """Iterate crossover on all pairs of known words, dropping words longer than ``cap``.

    For each rule x the round joins every known head u·x (u·x a prefix
    ending at an occurrence of x) with every known tail v (x·v a suffix
    starting at an occurrence of x). Returns the words of length at most
    ``target_len`` once nothing new appears.
    """
    if cap < target_len:
        raise ValueError("cap must be at least target_len")
    axioms = set(axioms)
    xs = _rule_list(rules, axioms)
    known = {z for z in axioms if len(z) <= cap}
    heads = {x: defaultdict(set) for x in xs}
    tails = {x: defaultdict(set) for x in xs}
    fresh = set(known)
    while fresh:
        made = set()
        for x in xs:
            new_h, new_t = set(), set()
            for w in fresh:
                for i in range(len(w) - len(x) + 1):
                    if w[i:i + len(x)] == x:
                        h, t = w[:i + len(x)], w[i + len(x):]
                        if h not in heads[x][len(h)]:
                            heads[x][len(h)].add(h)
                            new_h.add(h)
                        if t not in tails[x][len(t)]:
                            tails[x][len(t)].add(t)
                            new_t.add(t)
            for h in new_h:
                for m, ts in tails[x].items():
                    if len(h) + m <= cap:
                        made.update(h + t for t in ts)
            for t in new_t:
                for m, hs in heads[x].items():
                    if len(t) + m <= cap:
                        made.update(h + t for h in hs if h not in new_h)
        fresh = made - known
        known |= fresh
    return FiniteLanguage(w for w in known if len(w) <= target_len)


# ---- generators -----------------------------------------------------------

def suite_size(name: str, default: int) -> int:
    """Size of a randomized suite, overridable by CROSSKIT_<NAME>."""
    return int(os.environ.get(f"CROSSKIT_{name.upper()}", default))


def _word(rng, alphabet, lo, hi):
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(lo, hi)))


def gen_words(seed: int, alphabet_size: int, max_len: int, count: int, min_len: int = 1) -> list[str]:
    rng = random.Random(seed)
    alphabet = SYMBOLS[:alphabet_size]
    return [_word(rng, alphabet, min_len, max_len) for _ in range(count)]


def gen_finite_langs(seed: int, count: int, alphabet_size: int = 2, max_words: int = 4,
                     max_len: int = 5) -> list[FiniteLanguage]:
    rng = random.Random(seed)
    alphabet = SYMBOLS[:alphabet_size]
    out = []
    for _ in range(count):
        k = rng.randint(1, max_words)
        out.append(FiniteLanguage(_word(rng, alphabet, 1, max_len) for _ in range(k)))
    return out


def gen_rules(rng: random.Random, alphabet: str, max_len: int = 2) -> RuleSet:
    """AllSymbols, a random symbol subset, or random strings up to ``max_len``."""
    kind = rng.randrange(3)
    if kind == 0:
        return RuleSet.all()
    if kind == 1:
        k = rng.randint(1, len(alphabet))
        return RuleSet.symbols(rng.sample(alphabet, k))
    return RuleSet.strings({_word(rng, alphabet, 1, max_len) for _ in range(rng.randint(1, 3))})


def _regex(rng, alphabet, depth, stars):
    if depth == 0 or rng.random() < 0.25:
        return Sym(rng.choice(alphabet))
    pick = rng.random()
    if pick < 0.35:
        return Concat(tuple(_regex(rng, alphabet, depth - 1, stars) for _ in range(2)))
    if pick < 0.6:
        return Union(tuple(_regex(rng, alphabet, depth - 1, stars) for _ in range(2)))
    if stars >= 2:
        return _regex(rng, alphabet, depth - 1, stars)
    inner = _regex(rng, alphabet, depth - 1, stars + 1)
    if pick < 0.8:
        return Plus(inner)
    if pick < 0.9:
        # keep the language free of ε: x*y rather than a bare star
        return Concat((Star(inner), Sym(rng.choice(alphabet))))
    return Concat((Sym(rng.choice(alphabet)), Opt(inner)))


def gen_regexes(seed: int, depth: int, count: int = 100, alphabet_size: int = 2) -> list[Regex]:
    """Random expressions of star height at most 2 that never accept ε."""
    rng = random.Random(seed)
    alphabet = SYMBOLS[:alphabet_size]
    return [_regex(rng, alphabet, depth, 0) for _ in range(count)]

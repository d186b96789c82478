"""Algebraic laws and cross-checks, driven by hypothesis."""

import random

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from crosskit.automata import (Nfa, compile_regex, determinize, enumerate_upto, equivalent,
                               factors_of_length, from_words, includes, minimize_canonical,
                               prefix_lang, suffix_lang, to_json, trim)
from crosskit.automata.ops import bounded
from crosskit.automata.regex import regex_to_nfa
from crosskit.classify import is_combinational, is_constant, is_crossover, is_slt, is_st_closed
from crosskit.closure import (block_profile, gsco_once_regular, jump_closure_finite,
                              jump_closure_regular, member_with_trace, profile_automaton)
from crosskit.finlang import IterationBudget, gsco_lang, r_closure_bounded, u_closure_bounded
from crosskit.oracle import (bounded_closure_reference, chain_membership, gen_regexes,
                             naive_gsco_all_substrings)
from crosskit.splicing import SpliceRule, splice_once
from crosskit.words import ALL, RuleSet, crossings, factors, gsco_pair, gsco_rule

word = st.text(alphabet="abc", min_size=1, max_size=8)
short = st.text(alphabet="ab", min_size=1, max_size=5)
lang = st.sets(short, min_size=1, max_size=4)
rule_word = st.text(alphabet="abc", min_size=1, max_size=2)
rule_sets = st.one_of(
    st.just(ALL),
    st.sets(st.sampled_from("abc"), min_size=1).map(RuleSet.symbols),
    st.sets(rule_word, min_size=1, max_size=3).map(RuleSet.strings),
)
seeds = st.integers(0, 2 ** 32 - 1)


def regex_nfa(seed, depth=3):
    return regex_to_nfa(gen_regexes(seed, depth, count=1)[0])


# ---- word-level laws ------------------------------------------------------

@given(word, word)
def test_symbol_reduction_matches_all_substrings(w1, w2):
    assert gsco_pair(w1, w2, ALL) == naive_gsco_all_substrings(w1, w2)


@given(word, word, rule_sets)
def test_commutativity(w1, w2, rules):
    assert gsco_pair(w1, w2, rules) == gsco_pair(w2, w1, rules)


@given(word, word, rule_sets)
def test_mode_relations(w1, w2, rules):
    one, flipped, two = gsco_pair(w1, w2, rules, 1), gsco_pair(w2, w1, rules, 1), gsco_pair(w1, w2, rules, 2)
    assert one <= two
    assert one | flipped == two


@given(word, word)
def test_length_bound(w1, w2):
    assert all(1 <= len(w) <= len(w1) + len(w2) - 1 for w in gsco_pair(w1, w2))


@given(st.permutations("abcdefg"), st.integers(1, 7))
def test_distinct_symbols_cross_to_themselves(perm, n):
    w = "".join(perm[:n])
    assert gsco_pair(w, w) == {w}


def test_unary_case():
    for i in range(1, 7):
        for j in range(1, 7):
            assert gsco_pair("a" * i, "a" * j) == {"a" * k for k in range(1, i + j)}


@given(word, word, word, st.data())
def test_subword_monotonicity(w1, w2, y, data):
    x = data.draw(st.sampled_from(sorted(factors(y))))
    assert gsco_rule(w1, w2, y) <= gsco_rule(w1, w2, x)


@given(word, word, st.sets(rule_word, min_size=1, max_size=3), st.sets(rule_word, min_size=1, max_size=3))
def test_rule_monotonicity_union_and_intersection(w1, w2, r1, r2):
    g = lambda r: gsco_pair(w1, w2, RuleSet.strings(r)) if r else set()
    assert g(r1) <= g(r1 | r2)
    assert g(r1 | r2) == g(r1) | g(r2)
    assert g(r1 & r2) <= g(r1) & g(r2)


@given(st.text(alphabet="bc", max_size=3), st.text(alphabet="bc", max_size=3),
       st.text(alphabet="bc", max_size=3), st.text(alphabet="bc", max_size=3))
def test_restricted_reversibility(u1, u2, v1, v2):
    u, v = u1 + "a" + u2, v1 + "a" + v2
    x, y = u1 + "a" + v2, v1 + "a" + u2
    assert gsco_rule(u, v, "a") == {x, y}
    assert gsco_rule(x, y, "a") == {u, v}


@given(word, word, rule_sets, st.sampled_from([1, 2]))
def test_traces_replay(w1, w2, rules, mode):
    for t in crossings(w1, w2, rules, mode):
        assert t.replay() == t.output and t.is_valid()


# ---- language-level laws --------------------------------------------------

@given(lang)
def test_mode_equality_on_languages(L):
    assert gsco_lang(L, mode=1) == gsco_lang(L, mode=2)


@given(lang, lang)
def test_union_expansion(L1, L2):
    assert gsco_lang(L1 | L2) == gsco_lang(L1) | gsco_lang(L2) | gsco_lang(L1, L2)


@settings(max_examples=60, deadline=None)
@given(lang, rule_sets)
def test_restricted_equals_unrestricted(L, rules):
    budget = IterationBudget(6)
    u, r = u_closure_bounded(L, rules, budget), r_closure_bounded(L, rules, budget)
    assume(u.fixpoint and r.fixpoint)
    assert u.words == r.words
    for i in range(u.rounds):
        assert u.level(i) <= u.level(i + 1)
    for w in u.words:
        assert u.replay(w) and r.replay(w)


@settings(max_examples=60, deadline=None)
@given(lang, rule_sets)
def test_reference_matches_unrestricted_closure(L, rules):
    run = u_closure_bounded(L, rules, IterationBudget(6))
    assert run.fixpoint
    assert bounded_closure_reference(L, rules, 6, run.cap) == run.words


# ---- automata -------------------------------------------------------------

@settings(max_examples=50, deadline=None)
@given(seeds)
def test_determinize_and_minimize_preserve_language(seed):
    A = regex_nfa(seed)
    words = enumerate_upto(A, 7)
    for B in (determinize(A), minimize_canonical(A), trim(A)):
        assert equivalent(A, B)
        assert enumerate_upto(B, 7) == words


@settings(max_examples=50, deadline=None)
@given(seeds, seeds)
def test_canonical_bytes_decide_equivalence(s1, s2):
    r1, r2 = gen_regexes(s1, 3, count=1)[0], gen_regexes(s2, 3, count=1)[0]
    A, B = regex_to_nfa(r1), regex_to_nfa(r2)
    same = to_json(minimize_canonical(A)) == to_json(minimize_canonical(B))
    assert same == equivalent(A, B)
    # a rewritten copy of the same language must give the same bytes
    C = compile_regex(f"({r1})|({r1})({r1})*({r1})")
    assert to_json(minimize_canonical(C)) == to_json(minimize_canonical(compile_regex(f"({r1})+")))


@settings(max_examples=50, deadline=None)
@given(seeds, st.sampled_from("ab"))
def test_prefix_and_suffix_languages(seed, a):
    A, n = regex_nfa(seed), 4
    ws = enumerate_upto(A, 2 * n + 1)
    pre = {w[:i] for w in ws for i in range(len(w)) if w[i] == a and i <= n}
    suf = {w[i + 1:] for w in ws for i in range(len(w)) if w[i] == a and len(w) - i - 1 <= n}
    assert set(enumerate_upto(prefix_lang(A, a), n)) == pre
    assert set(enumerate_upto(suffix_lang(A, a), n)) == suf


# ---- closures and deciders ------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_crossover_iff_closure_is_itself(seed):
    A = regex_nfa(seed)
    assert bool(is_crossover(A)) == equivalent(jump_closure_regular(A, ALL), A)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_fixpoint_and_class_saturation(seed):
    rng = random.Random(seed)
    L = {"".join(rng.choice("ab") for _ in range(rng.randint(1, 4))) for _ in range(rng.randint(1, 3))}
    C = jump_closure_finite(L, ALL)
    assert includes(C, from_words(L))
    assert includes(C, gsco_once_regular(C))
    for p in {block_profile(w) for w in enumerate_upto(C, 6)}:
        assert includes(C, bounded(profile_automaton(p), 6))


@settings(max_examples=40, deadline=None)
@given(lang, rule_sets)
def test_chain_membership_matches_closure_automaton(L, rules):
    C = jump_closure_finite(L, rules)
    for w in enumerate_upto(C, 6):
        assert chain_membership(w, L, rules)
    for n in range(1, 7):
        for i in range(2 ** n):
            w = format(i, f"0{n}b").replace("0", "a").replace("1", "b")
            m = member_with_trace(C, w)
            assert m.accepted == chain_membership(w, L, rules)
            if m.accepted:
                assert m.chain.replay() == w


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_slt_bridge(seed):
    A = regex_nfa(seed)
    v = is_slt(A)
    assume(v.holds)
    rules = factors_of_length(A, v.detail)
    assume(rules)
    assert is_st_closed(A, rules)


@settings(max_examples=40, deadline=None)
@given(seeds, st.data())
def test_constant_extension(seed, data):
    A = regex_nfa(seed)
    ws = sorted(enumerate_upto(A, 6))
    assume(ws)
    w = data.draw(st.sampled_from(ws))
    i = data.draw(st.integers(0, len(w) - 1))
    j = data.draw(st.integers(i + 1, len(w)))
    c = w[i:j]
    assume(is_constant(A, c))
    lo = data.draw(st.integers(0, i))
    hi = data.draw(st.integers(j, len(w)))
    assert is_constant(A, w[lo:hi])


@given(st.sets(st.sampled_from("abc"), min_size=1), st.sets(st.sampled_from("abc"), min_size=1))
def test_combinational_languages_are_crossover(alphabet, ends):
    ends &= alphabet
    assume(ends)
    symbols = sorted(alphabet)
    A = Nfa(2, symbols, [0], [1], [(0, c, 0) for c in symbols] + [(0, c, 1) for c in ends])
    assert is_combinational(A)
    assert is_crossover(A)


# ---- splicing -------------------------------------------------------------

@given(word, word, st.text(alphabet="abc", max_size=2), st.text(alphabet="abc", max_size=2),
       st.text(alphabet="abc", max_size=2), st.text(alphabet="abc", max_size=2))
def test_splicing_modes(x, y, u1, u2, u3, u4):
    r, flipped = SpliceRule(u1, u2, u3, u4), SpliceRule(u3, u4, u1, u2)
    assert splice_once(x, y, r, 1) | splice_once(y, x, flipped, 1) == splice_once(x, y, r, 2)


@given(word, word, st.sets(st.sampled_from("abc"), min_size=1))
def test_simple_splicing_is_symbol_crossover(x, y, symbols):
    spliced = set()
    for a in symbols:
        spliced |= splice_once(x, y, SpliceRule(a, "", a, ""))
    assert spliced == gsco_pair(x, y, RuleSet.symbols(symbols))

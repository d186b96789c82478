import pytest

from crosskit.errors import BadWord, EmptyPattern, EmptyRule, RuleAbsent
from crosskit.words import (ALL, CrossTrace, OccurrenceRef, RuleSet, WordSet, alphabet_of, cgsco,
                            cross_at, crossings, epsilon_gsco, factors, format_word, gsco_at,
                            gsco_pair, gsco_rule, occurrences, parse_word, prefixes_at, read_words,
                            suffixes_at, two_blocks, write_words)


def S(*ws):
    return WordSet(ws)


def test_wordset_canonical_order():
    assert list(WordSet(["ba", "b", "ab", "a", ""])) == ["", "a", "b", "ab", "ba"]
    assert repr(WordSet(["", "a"])) == "{_, a}"


@pytest.mark.parametrize("w,expected", [("abba", {"a", "b"}), ("", set()), ("abcab", {"a", "b", "c"})])
def test_alphabet_of(w, expected):
    assert alphabet_of(w) == expected


@pytest.mark.parametrize("w,expected", [
    ("ab", {"a", "b", "ab"}),
    ("aa", {"a", "aa"}),
    ("abc", {"a", "b", "c", "ab", "bc", "abc"}),
])
def test_factors(w, expected):
    assert factors(w) == expected


@pytest.mark.parametrize("w,expected", [("abbbc", {"ab", "bb", "bc"}), ("a", {"a"}), ("", {""})])
def test_two_blocks(w, expected):
    assert two_blocks(w) == expected


def test_occurrences():
    assert [o.position for o in occurrences("abab", "ab")] == [1, 3]
    assert [o.position for o in occurrences("aaa", "aa")] == [1, 2]
    assert [o.ordinal for o in occurrences("aaa", "aa")] == [1, 2]
    assert occurrences("abc", "d") == []
    with pytest.raises(EmptyPattern):
        occurrences("abc", "")


def test_prefixes_and_suffixes_at():
    assert prefixes_at("aba", "a") == {"", "ab"}
    assert suffixes_at("aba", "a") == {"ba", ""}
    assert prefixes_at("abab", "ab") == {"", "ab"}
    with pytest.raises(EmptyPattern):
        suffixes_at("ab", "")


def test_gsco_at():
    assert gsco_at("ab", "ba", "a", 1, 1, 2) == {"a", "bab"}
    assert gsco_at("ab", "ba", "a", 1, 1, 1) == {"a"}
    for k in (1, 2):
        assert gsco_at("abab", "abab", "ab", k, k, 2) == {"abab"}
    with pytest.raises(RuleAbsent):
        gsco_at("ab", "ba", "b", 2, 1)
    with pytest.raises(RuleAbsent):
        gsco_at("ab", "ba", "a", OccurrenceRef("a", 2, 1), 1)


def test_cross_at_traces_replay():
    for t in cross_at("abab", "baba", "ab", 2, 1):
        assert t.replay() == t.output
        assert t.is_valid()


def test_gsco_rule_renamed_example():
    # the crossover of c1·aba·c2 with d1·aba·d2, symbols renamed p, q, r, s
    assert gsco_rule("pabaq", "rabas", "aba") == {"pabas", "rabaq"}
    assert gsco_rule("pabaq", "rabas", "a") == {"pabas", "rabaq", "pas", "rababaq", "pababas", "raq"}
    assert gsco_rule("ab", "cd", "a") == set()


def test_gsco_pair_table():
    assert gsco_pair("ab", "ba") == {"a", "b", "aba", "bab"}
    assert gsco_pair("ab", "bb") == {"ab", "bb", "b", "abb"}
    assert gsco_pair("aa", "aaa") == {"a", "aa", "aaa", "aaaa"}


def test_gsco_pair_rule_sets():
    assert gsco_pair("ab", "ba", RuleSet.symbols("a")) == {"a", "bab"}
    assert gsco_pair("ab", "ba", RuleSet.strings(["ab"])) == set()
    assert gsco_pair("ab", "ba", "b") == {"b", "aba"}
    assert gsco_pair("ab", "ba", ALL, 1) == {"a", "aba"}


def test_epsilon_gsco():
    assert epsilon_gsco("a", "b") == {"", "a", "b", "ab", "ba"}
    assert epsilon_gsco("a", "a") == {"", "a", "aa"}
    assert epsilon_gsco("", "") == {""}


def test_cgsco_literal_definition():
    # a listing elsewhere also has ab; the corresponding-occurrence definition does not give it
    assert cgsco("abcab", "abab") == {"abab", "abcab"}
    assert cgsco("ab", "ab") == set()
    assert cgsco("abab", "abab") == {"abab"}


def test_rule_set_validation():
    with pytest.raises(EmptyRule):
        RuleSet.strings(["a", ""])
    with pytest.raises(EmptyRule):
        RuleSet.symbols([""])
    with pytest.raises(ValueError):
        RuleSet.symbols(["ab"])
    assert RuleSet.strings(["b", "a", "b"]).resolve("") == ("a", "b")
    assert ALL.resolve("ba") == ("a", "b")
    assert RuleSet.strings(["ab", "b"]).describe() == "strings{b,ab}"
    with pytest.raises(EmptyRule):
        list(crossings("ab", "ab", ""))


def test_word_text_format():
    assert parse_word("_") == ""
    assert format_word("") == "_"
    with pytest.raises(BadWord):
        parse_word("a_b")
    with pytest.raises(BadWord):
        parse_word("a b")
    assert read_words("# axioms\nab\n\n_\nba\n") == ["ab", "", "ba"]
    assert write_words(["ba", "", "a"]) == "_\na\nba\n"


def test_trace_rejects_bad_ordinal():
    t = CrossTrace("aa", "aa", "a", OccurrenceRef("a", 2, 1), OccurrenceRef("a", 1, 1), "aa")
    assert not t.is_valid()


def test_non_associativity_witness():
    # found by exhaustive search over words of length at most 2
    from crosskit.finlang import gsco_lang
    left = gsco_lang(gsco_lang({"a"}, {"b"}), {"ab"})
    right = gsco_lang({"a"}, gsco_lang({"b"}, {"ab"}))
    assert left == set()
    assert right == {"a", "ab"}

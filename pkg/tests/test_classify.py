import pytest

from crosskit.automata import compile_regex, from_words
from crosskit.classify import (FAMILIES, classify, constant_length, is_closed_under,
                               is_combinational, is_constant, is_crossover, is_nilpotent, is_slt,
                               is_st_closed, is_suffix_closed, is_sy, is_tsy, language_hash)
from crosskit.errors import EmptyPattern, EpsilonInLanguage
from crosskit.words import RuleSet


def R(text):
    return compile_regex(text)


def test_closed_under_symbol_sets():
    assert is_closed_under(R("a+bb"), RuleSet.symbols("a"))
    v = is_closed_under(R("a+bb"), RuleSet.symbols("b"))
    assert not v and v.witness == "ab"
    assert is_closed_under(R("(aa)+bb(aa)+"), RuleSet.strings(["bb"]))
    with pytest.raises(EpsilonInLanguage):
        is_closed_under(R("a*"), RuleSet.symbols("a"))


def test_is_crossover():
    assert is_crossover(R("a+b+"))
    v = is_crossover(R("(aa)+"))
    assert not v and v.witness in ("a", "aaa")
    assert is_crossover(R("(a|b)*b"))


def test_is_tsy():
    assert is_tsy(R("a+b*|b+"))
    assert not is_tsy(R("a+bb"))
    assert is_tsy(R("a|b"))
    assert is_tsy(R("ab+"))
    assert not is_tsy(R("aa|aaa"))
    v = is_tsy(R("ab|ba"))
    assert not v and v.witness in ("a", "aba")


def test_is_sy():
    v = is_sy(R("a+bb"))
    assert v and v.detail == ["a"]
    assert not is_sy(R("(aa)+bb(aa)+"))


def test_is_constant():
    assert is_constant(R("a+b+"), "a")
    assert is_constant(R("a+b+"), "ab")
    v = is_constant(R("(aa)+"), "a")
    assert not v
    # the witness is a spliced word that must fall outside the language
    assert not R("(aa)+").accepts(v.witness)
    with pytest.raises(EmptyPattern):
        is_constant(R("a"), "")


def test_is_slt():
    v = is_slt(R("a+b+"))
    assert v and v.detail == 2
    v = is_slt(R("(aa)+"))
    assert not v and set(v.witness) == {"a"}
    v = is_slt(R("(a|b)+"))
    assert v and v.detail == 1
    assert not is_slt(R("(aa)+"), k_max=3)
    assert is_slt(R("(aa)+"), k_max=3).witness == "aaa"


def test_constant_length_is_at_most_window():
    assert constant_length(R("a+b+")) == 1
    assert constant_length(R("(aa)+")) is None


def test_is_st_closed():
    assert is_st_closed(R("(aa)+bb(aa)+"), ["bb"])
    assert is_st_closed(R("a+bb"), ["bb"])
    # aaaa = a·aa·a crossed with aa gives a·aa
    v = is_st_closed(R("(aa)+"), ["aa"])
    assert not v and v.witness == "aaa"


def test_small_families():
    assert is_combinational(R("(a|b)*b"))
    assert not is_combinational(R("a+b+"))
    assert not is_nilpotent(R("a+b+"))
    v = is_suffix_closed(R("a+b+"))
    assert not v and v.witness == "b"
    assert is_nilpotent(R("a|aa"))
    assert is_nilpotent(R("(a|b)*(a|b)(a|b)"))
    assert is_suffix_closed(R("(a|b)*b"))


def test_incomparability_fixtures():
    A = R("aa|aaa")
    assert is_nilpotent(A) and not is_tsy(A)
    assert is_tsy(R("ab+")) and not is_nilpotent(R("ab+"))


def test_classify_report():
    rep = classify(R("a+b+"))
    assert [f["name"] for f in rep["families"]] == list(FAMILIES)
    assert rep["language"] == language_hash(R("aa*bb*"))
    slt = [f for f in rep["families"] if f["name"] == "slt"][0]
    assert slt == {"name": "slt", "holds": True, "detail": 2}
    sub = classify(R("a+b+"), ["slt", "crossover"])
    assert [f["name"] for f in sub["families"]] == ["crossover", "slt"]
    with pytest.raises(ValueError):
        classify(R("a"), ["nope"])


def test_finite_language_classification():
    rep = classify(from_words(["ab", "ba"]), ["crossover", "nilpotent"])
    assert [f["holds"] for f in rep["families"]] == [False, True]

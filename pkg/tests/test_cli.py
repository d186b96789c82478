import json
import subprocess
import sys

import pytest

from crosskit.automata import compile_regex, from_json, minimize_canonical, to_json
from crosskit.cli import main, parse_rules
from crosskit.oracle import chain_membership
from crosskit.words import ALL, RuleSet


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def ab_axioms(tmp_path):
    p = tmp_path / "ab.txt"
    p.write_text("# axioms\naabb\naaabbb\n")
    return p


def test_parse_rules():
    assert parse_rules("all") == ALL
    assert parse_rules("ab") == RuleSet.symbols("ab")
    assert parse_rules("ab,b") == RuleSet.strings(["ab", "b"])


def test_cross(capsys):
    assert run(capsys, "cross", "ab", "ba") == (0, "a\nb\naba\nbab\n", "")
    assert run(capsys, "cross", "ab", "cd") == (0, "", "")
    code, _, err = run(capsys, "cross", "ab", "_")
    assert code == 3 and err


def test_cross_trace_and_json(capsys):
    code, out, _ = run(capsys, "cross", "ab", "ba", "--rules", "a", "--trace")
    assert out.splitlines() == ["ab[a@1] >-< ba[a@2] -> a", "ba[a@2] >-< ab[a@1] -> bab"]
    code, out, _ = run(capsys, "cross", "ab", "ba", "--format", "json")
    assert json.loads(out) == {"words": ["a", "b", "aba", "bab"]}


def test_lang(capsys, tmp_path):
    a, b = tmp_path / "A.txt", tmp_path / "B.txt"
    a.write_text("ab\naab\n")
    b.write_text("ba\nbb\n")
    _, one, _ = run(capsys, "lang", "--in", str(a), "--in2", str(b))
    _, two, _ = run(capsys, "lang", "--in", str(b), "--in2", str(a))
    assert one == two and one
    code, _, err = run(capsys, "lang", "--in", str(tmp_path / "missing.txt"))
    assert code == 2 and "no such file" in err


def test_close_min_matches_regex(capsys, tmp_path, ab_axioms):
    out = tmp_path / "c.json"
    assert run(capsys, "close", "--axioms", str(ab_axioms), "--min", "--out", str(out))[0] == 0
    C = from_json(out.read_bytes())
    assert to_json(C) == to_json(minimize_canonical(compile_regex("a+b+")))


def test_close_dot_is_deterministic(capsys, tmp_path):
    ax = tmp_path / "a.txt"
    ax.write_text("aa\n")
    g1, g2 = tmp_path / "g1.dot", tmp_path / "g2.dot"
    run(capsys, "close", "--axioms", str(ax), "--dot", str(g1))
    run(capsys, "close", "--axioms", str(ax), "--dot", str(g2))
    assert g1.read_bytes() == g2.read_bytes()
    assert g1.read_text().startswith("digraph automaton {")


def test_close_rejects_epsilon_axiom(capsys, tmp_path):
    ax = tmp_path / "e.txt"
    ax.write_text("_\nab\n")
    assert run(capsys, "close", "--axioms", str(ax))[0] == 3


def test_member_round_trip(capsys, tmp_path, ab_axioms):
    c = tmp_path / "c.json"
    run(capsys, "close", "--axioms", str(ab_axioms), "--rules", "b", "--out", str(c))
    axioms = {"aabb", "aaabbb"}
    for w in ["ab", "aab", "abbb", "ba", "aaab", "abab", "aabbbb"]:
        _, out, _ = run(capsys, "member", "--closure", str(c), w)
        assert out == f"{w}: {'accepted' if chain_membership(w, axioms, RuleSet.symbols('b')) else 'rejected'}\n"
    _, out, _ = run(capsys, "member", "--closure", str(c), "aabbb", "--trace")
    lines = out.splitlines()
    assert lines[0] == "aabbb: accepted" and " + " in lines[1]


def test_member_without_provenance(capsys, tmp_path):
    c = tmp_path / "plain.json"
    c.write_bytes(to_json(minimize_canonical(compile_regex("a+b+"))))
    assert run(capsys, "member", "--closure", str(c), "ab")[1] == "ab: accepted\n"
    assert run(capsys, "member", "--closure", str(c), "ab", "--trace")[0] == 3


def test_once(capsys, tmp_path):
    out = tmp_path / "o.json"
    assert run(capsys, "once", "--lang", "(aa)+", "--out", str(out))[0] == 0
    assert from_json(out.read_bytes()).accepts("aaa")


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--lang", "a+b+", "--families", "crossover,slt")
    assert code == 0 and out == "crossover: holds\nslt: holds k=2\n"
    code, out, _ = run(capsys, "classify", "--lang", "(aa)+", "--families", "crossover", "--assert")
    assert code == 1 and "witness a" in out
    assert run(capsys, "classify", "--lang", "a", "--families", "bogus")[0] == 2
    assert run(capsys, "classify", "--lang", "(a", "--families", "slt")[0] == 3


def test_base(capsys):
    code, out, _ = run(capsys, "base", "--lang", "a+b+", "--verify")
    assert out == "B={aa,ab,bb} S={a} E={b}\ndecomposition: true\n"


def test_language_inputs(capsys, tmp_path):
    (tmp_path / "l.re").write_text("a+b+\n")
    (tmp_path / "w.txt").write_text("ab\nba\n")
    (tmp_path / "d.json").write_bytes(to_json(minimize_canonical(compile_regex("(aa)+"))))
    assert "crossover: holds" in run(capsys, "classify", "--lang", str(tmp_path / "l.re"), "--families", "crossover")[1]
    assert "crossover: fails" in run(capsys, "classify", "--lang", str(tmp_path / "w.txt"), "--families", "crossover")[1]
    assert "crossover: fails" in run(capsys, "classify", "--lang", str(tmp_path / "d.json"), "--families", "crossover")[1]
    assert run(capsys, "base", "--lang", str(tmp_path / "none.json"))[0] == 2


def test_splice(capsys, tmp_path):
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"alphabet": ["a", "b"], "axioms": ["aabb", "aaabbb"],
                             "rules": {"kind": "simple", "items": ["a", "b"]}}))
    code, out, _ = run(capsys, "splice", "--system", str(s), "--maxlen", "4")
    assert out.split() == ["ab", "aab", "abb", "aaab", "aabb", "abbb"]
    assert run(capsys, "splice", "--system", str(s), "--maxlen", "6", "--diff")[1] == "equal: true\n"


def test_check_uses_seed(capsys, monkeypatch):
    monkeypatch.setenv("CROSSKIT_SEED", "5")
    code, out, _ = run(capsys, "check", "--count", "5")
    assert code == 0 and out == "seed 5: 5 instances, 0 mismatches\n"


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["cross", "ab"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "crosskit", "cross", "ab", "ba"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "a\nb\naba\nbab\n"

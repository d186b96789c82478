"""Command-line interface.

Exit codes: 0 success, 1 failed ``--assert`` or ``check``, 2 usage or
missing file, 3 unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .automata import compile_regex, from_json, from_words, minimize_canonical, to_dot, to_json
from .classify import FAMILIES, classify
from .closure import (closure_from_json_dict, extract_base, gsco_once_regular, jump_closure_finite,
                      member_with_trace, verify_decomposition)
from .errors import CrosskitError
from .finlang import gsco_lang
from .splicing import differential_vs_gsco, load_system, sigma_closure_bounded
from .words import ALL, RuleSet, crossings, format_word, parse_word, read_words


class UsageError(Exception):
    pass


def _read(path) -> str:
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _word_file(path):
    return read_words(_read(path))


def parse_rules(text: str) -> RuleSet:
    """``all``, a run of symbols (``ab``), a comma list of strings (``ab,ba``) or ``@file``."""
    if text == "all":
        return ALL
    if text.startswith("@"):
        return RuleSet.strings(_word_file(text[1:]))
    if "," in text:
        return RuleSet.strings(parse_word(s) for s in text.split(","))
    return RuleSet.symbols(parse_word(text))


def load_language(source: str):
    """An automaton JSON file, a regex file (.re/.regex), a word-list file, or an inline regex."""
    p = Path(source)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
        if p.suffix == ".json":
            return from_json(text)
        if p.suffix in (".re", ".regex"):
            return compile_regex(text.strip())
        return from_words(read_words(text))
    if "/" in source or p.suffix in (".json", ".txt", ".re", ".regex"):
        raise UsageError(f"no such file: {source}")
    return compile_regex(source)


def _emit(args, text_lines, payload):
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in text_lines))


def _words_out(args, words, key="words"):
    words = list(words)
    _emit(args, [format_word(w) for w in words], {key: words})


# ---- commands -------------------------------------------------------------

def cmd_cross(args):
    w1, w2 = parse_word(args.w1), parse_word(args.w2)
    if not w1 or not w2:
        raise CrosskitError("crossover needs non-empty words")
    first = {}
    for t in crossings(w1, w2, parse_rules(args.rules), args.mode):
        first.setdefault(t.output, t)
    words = sorted(first, key=lambda w: (len(w), w))
    if args.trace:
        _emit(args, [str(first[w]) for w in words],
              {"words": words, "traces": [str(first[w]) for w in words]})
    else:
        _words_out(args, words)


def cmd_lang(args):
    L1 = _word_file(args.input)
    L2 = _word_file(args.input2) if args.input2 else None
    _words_out(args, gsco_lang(L1, L2, parse_rules(args.rules), args.mode))


def _with_recipe(A, C):
    return A.with_provenance(C.provenance.recipe())


def _write_automaton(args, A):
    if args.dot:
        Path(args.dot).write_text(to_dot(A), encoding="utf-8")
    if args.out:
        Path(args.out).write_bytes(to_json(A))
    if not args.dot and not args.out:
        sys.stdout.write(to_json(A).decode("utf-8"))


def cmd_close(args):
    C = jump_closure_finite(_word_file(args.axioms), parse_rules(args.rules))
    if args.min:
        C = _with_recipe(minimize_canonical(C), C)
    _write_automaton(args, C)


def cmd_member(args):
    raw = _read(args.closure)
    A = from_json(raw)
    prov = json.loads(raw).get("x-provenance")
    w = parse_word(args.word)
    if prov is None:
        if args.trace:
            raise CrosskitError("the automaton has no closure provenance; --trace is unavailable")
        ok, chain = A.accepts(w), None
    else:
        m = member_with_trace(A.with_provenance(closure_from_json_dict(prov)), w)
        ok, chain = m.accepted, m.chain
    lines = [f"{format_word(w)}: {'accepted' if ok else 'rejected'}"]
    payload = {"word": w, "accepted": ok}
    if args.trace and chain is not None:
        lines.append(str(chain))
        lines.extend(str(t) for t in chain.steps())
        payload["chain"] = str(chain)
        payload["steps"] = [str(t) for t in chain.steps()]
    _emit(args, lines, payload)


def cmd_once(args):
    A = minimize_canonical(gsco_once_regular(load_language(args.lang), parse_rules(args.rules), args.mode))
    _write_automaton(args, A)


def cmd_base(args):
    A = load_language(args.lang)
    base = extract_base(A)
    lines = [str(base)]
    payload = {"base": base.as_dict()}
    if args.verify:
        v = verify_decomposition(A)
        lines.append(f"decomposition: {'true' if v.holds else 'false'}"
                     + ("" if v.witness is None else f" (witness {format_word(v.witness)})"))
        payload["decomposition"] = v.as_dict()
    _emit(args, lines, payload)


def _family_line(row):
    s = f"{row['name']}: {'holds' if row['holds'] else 'fails'}"
    if "detail" in row:
        d = row["detail"]
        s += f" k={d}" if row["name"] == "slt" else f" R={{{','.join(d)}}}"
    if "witness" in row:
        s += f" (witness {format_word(row['witness'])})"
    return s


def cmd_classify(args):
    families = args.families.split(",") if args.families else None
    if families:
        bad = [f for f in families if f not in FAMILIES]
        if bad:
            raise UsageError(f"unknown families: {', '.join(bad)}; choose from {', '.join(FAMILIES)}")
    report = classify(load_language(args.lang), families, args.kmax)
    _emit(args, [_family_line(r) for r in report["families"]], report)
    if args.assert_ and not all(r["holds"] for r in report["families"]):
        return 1
    return 0


def cmd_splice(args):
    S = load_system(_read(args.system))
    run = sigma_closure_bounded(S, args.maxlen)
    words = list(run.words)
    lines = [format_word(w) for w in words]
    payload = {"words": words, "fixpoint": run.fixpoint}
    if args.diff:
        if S.kind == "full":
            raise UsageError("--diff needs a simple or null-context system")
        rules = RuleSet.symbols(S.items) if S.kind == "simple" else RuleSet.strings(S.items)
        if S.kind == "simple" and not S.items:
            raise UsageError("--diff needs at least one rule")
        rep = differential_vs_gsco(S.axioms, rules, args.maxlen)
        lines = [f"equal: {'true' if rep['equal'] else 'false'}"]
        lines += [f"only splicing: {format_word(w)}" for w in rep["only_splicing"]]
        lines += [f"only crossover: {format_word(w)}" for w in rep["only_crossover"]]
        payload["diff"] = rep
        _emit(args, lines, payload)
        return 0 if rep["equal"] else 1
    _emit(args, lines, payload)
    return 0


def cmd_check(args):
    """Seeded self-check: closure automaton against the brute-force references."""
    import random

    from .automata import enumerate_upto
    from .oracle import bounded_closure_reference, chain_membership, gen_finite_langs, gen_rules

    seed = int(os.environ.get("CROSSKIT_SEED", "0"))
    rng = random.Random(seed)
    failures = []
    for _ in range(args.count):
        ax = gen_finite_langs(rng.randrange(2 ** 32), 1, max_words=3, max_len=4)[0]
        rules = gen_rules(rng, "".join(sorted(ax.alphabet)))
        got = set(enumerate_upto(jump_closure_finite(ax, rules), args.maxlen))
        cap = args.maxlen + ax.max_len() + rules.max_len()
        ref = set(bounded_closure_reference(ax, rules, args.maxlen, cap))
        if got != ref or not all(chain_membership(w, ax, rules) for w in got):
            failures.append({"axioms": list(ax), "rules": rules.describe()})
    lines = [f"seed {seed}: {args.count} instances, {len(failures)} mismatches"]
    lines += [f"mismatch: {f['axioms']} {f['rules']}" for f in failures]
    _emit(args, lines, {"seed": seed, "instances": args.count, "mismatches": failures})
    return 1 if failures else 0


# ---- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    p = argparse.ArgumentParser(prog="crosskit", description="Sequential crossover of words and languages.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    def rules_mode(sp):
        sp.add_argument("--rules", default="all", help="all, symbols like ab, strings like ab,ba, or @file")
        sp.add_argument("--mode", type=int, choices=[1, 2], default=2)

    def outputs(sp):
        sp.add_argument("--out", help="write automaton JSON here")
        sp.add_argument("--dot", help="write Graphviz DOT here")

    sp = add("cross", cmd_cross, "crossover of two words")
    sp.add_argument("w1")
    sp.add_argument("w2")
    rules_mode(sp)
    sp.add_argument("--trace", action="store_true")

    sp = add("lang", cmd_lang, "crossover of word-list languages")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--in2", dest="input2")
    rules_mode(sp)

    sp = add("close", cmd_close, "closure automaton of a finite axiom set")
    sp.add_argument("--axioms", required=True)
    sp.add_argument("--rules", default="all")
    sp.add_argument("--min", action="store_true")
    outputs(sp)

    sp = add("member", cmd_member, "membership in a saved closure")
    sp.add_argument("--closure", required=True)
    sp.add_argument("word")
    sp.add_argument("--trace", action="store_true")

    sp = add("once", cmd_once, "one crossover step on a regular language")
    sp.add_argument("--lang", required=True)
    rules_mode(sp)
    outputs(sp)

    sp = add("base", cmd_base, "base sets of a language")
    sp.add_argument("--lang", required=True)
    sp.add_argument("--verify", action="store_true")

    sp = add("classify", cmd_classify, "run the family deciders")
    sp.add_argument("--lang", required=True)
    sp.add_argument("--families", help="comma list from: " + ",".join(FAMILIES))
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--assert", dest="assert_", action="store_true")

    sp = add("splice", cmd_splice, "bounded splicing closure")
    sp.add_argument("--system", required=True)
    sp.add_argument("--maxlen", type=int, required=True)
    sp.add_argument("--diff", action="store_true")

    sp = add("check", cmd_check, "seeded self-check (CROSSKIT_SEED)")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--maxlen", type=int, default=6)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UsageError as e:
        print(f"crosskit: {e}", file=sys.stderr)
        return 2
    except (CrosskitError, UnicodeDecodeError, json.JSONDecodeError) as e:
        print(f"crosskit: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Automaton JSON and DOT formats."""

from __future__ import annotations

import json

from ..errors import SchemaError
from .core import Dfa, Nfa

KEYS = ("alphabet", "states", "start", "accept", "transitions")
PROVENANCE_KEY = "x-provenance"


def to_dict(A: Nfa) -> dict:
    out = {
        "alphabet": sorted(A.alphabet),
        "states": list(range(A.num_states)),
        "start": sorted(A.starts),
        "accept": sorted(A.finals),
        "transitions": [{"from": p, "on": c, "to": q} for p, c, q in sorted(A.transitions)],
    }
    if A.provenance is not None:
        out[PROVENANCE_KEY] = A.provenance.as_dict()
    return out


def _dump(v):
    return json.dumps(v, ensure_ascii=False)


def to_json(A: Nfa) -> bytes:
    """Byte-stable JSON: one key per line, one transition per line."""
    d = to_dict(A)
    lines = ["{"]
    for k in KEYS[:-1]:
        lines.append(f" {_dump(k)}: {_dump(d[k])},")
    trans = [f"  {_dump(t)}" for t in d["transitions"]]
    body = ",\n".join(trans)
    tail = "," if PROVENANCE_KEY in d else ""
    lines.append(f' "transitions": [\n{body}\n ]{tail}' if trans else f' "transitions": []{tail}')
    if PROVENANCE_KEY in d:
        lines.append(f" {_dump(PROVENANCE_KEY)}: {_dump(d[PROVENANCE_KEY])}")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def _fail(msg, path):
    raise SchemaError(msg, path)


def from_dict(data) -> Nfa:
    if not isinstance(data, dict):
        _fail("expected an object", "$")
    for k in KEYS:
        if k not in data:
            _fail(f"missing key {k!r}", "$")
    for k in data:
        if k not in KEYS and k != PROVENANCE_KEY:
            _fail(f"unknown key {k!r}", "$")

    alphabet = data["alphabet"]
    if not isinstance(alphabet, list):
        _fail("expected an array", "$.alphabet")
    for i, c in enumerate(alphabet):
        if not isinstance(c, str) or len(c) != 1:
            _fail("expected a one-character string", f"$.alphabet[{i}]")
    if len(set(alphabet)) != len(alphabet):
        _fail("duplicate symbol", "$.alphabet")

    states = data["states"]
    if not isinstance(states, list):
        _fail("expected an array", "$.states")
    index = {}
    for i, s in enumerate(states):
        if not isinstance(s, (int, str)) or isinstance(s, bool):
            _fail("state names are integers or strings", f"$.states[{i}]")
        if s in index:
            _fail("duplicate state", f"$.states[{i}]")
        index[s] = i

    def state_list(key):
        v = data[key]
        if not isinstance(v, list):
            _fail("expected an array", f"$.{key}")
        out = []
        for i, s in enumerate(v):
            if isinstance(s, bool) or s not in index:
                _fail(f"unknown state {s!r}", f"$.{key}[{i}]")
            out.append(index[s])
        if len(set(out)) != len(out):
            _fail("duplicate state", f"$.{key}")
        return out

    starts = state_list("start")
    finals = state_list("accept")
    trans = data["transitions"]
    if not isinstance(trans, list):
        _fail("expected an array", "$.transitions")
    seen = set()
    for i, t in enumerate(trans):
        path = f"$.transitions[{i}]"
        if not isinstance(t, dict) or set(t) != {"from", "on", "to"}:
            _fail("expected an object with keys from, on, to", path)
        for k in ("from", "to"):
            if isinstance(t[k], bool) or t[k] not in index:
                _fail(f"unknown state {t[k]!r}", f"{path}.{k}")
        if t["on"] not in alphabet:
            _fail(f"symbol {t['on']!r} not in the alphabet", f"{path}.on")
        key = (index[t["from"]], t["on"], index[t["to"]])
        if key in seen:
            _fail("duplicate transition", path)
        seen.add(key)

    deterministic = len(starts) <= 1 and len({(p, c) for p, c, _ in seen}) == len(seen)
    cls = Dfa if deterministic else Nfa
    return cls(len(states), alphabet, starts, finals, seen)


def from_json(raw) -> Nfa:
    """Parse automaton JSON. Any ``x-provenance`` entry is ignored."""
    if isinstance(raw, bytes):
        try:
            raw = raw.decode("utf-8")
        except UnicodeDecodeError as e:
            raise SchemaError(f"not UTF-8: {e}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON: {e.msg} (line {e.lineno})") from None
    return from_dict(data)


def _dot_label(c):
    return c.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(A: Nfa) -> str:
    lines = ["digraph automaton {", "  rankdir=LR;", "  node [shape=circle];"]
    for q in range(A.num_states):
        shape = "doublecircle" if q in A.finals else "circle"
        lines.append(f'  {q} [label="{q}", shape={shape}];')
    for i, q in enumerate(sorted(A.starts)):
        lines.append(f"  start{i} [shape=point];")
        lines.append(f"  start{i} -> {q};")
    for p, c, q in sorted(A.transitions):
        lines.append(f'  {p} -> {q} [label="{_dot_label(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

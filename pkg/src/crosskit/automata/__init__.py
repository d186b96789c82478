"""Finite automata: regular expressions, NFA/DFA algorithms, canonical forms, I/O."""

from .core import (MAX_ALPHABET, Dfa, Nfa, accessible, coaccessible, determinize, from_epsilon,
                   from_words, minimize_canonical, trim)
from .io import from_dict, from_json, to_dict, to_dot, to_json
from .ops import (bounded, complement, concat, counterexample, enumerate_upto, equivalent,
                  factors_of_length, includes, intersect, is_empty, is_finite, lang_first_symbols,
                  lang_last_symbols, lang_two_blocks, lang_units, prefix_lang, shortest_accepted,
                  suffix_lang, union, word_automaton)
from .regex import (Concat, Empty, Eps, Opt, Plus, Regex, Star, Sym, Union, compile_regex,
                    parse_regex, regex_to_nfa)

__all__ = [
    "MAX_ALPHABET", "Dfa", "Nfa", "accessible", "coaccessible", "determinize", "from_epsilon",
    "from_words", "minimize_canonical", "trim", "from_dict", "from_json", "to_dict", "to_dot",
    "to_json", "bounded", "complement", "concat", "counterexample", "enumerate_upto",
    "equivalent", "factors_of_length", "includes", "intersect", "is_empty", "is_finite",
    "lang_first_symbols", "lang_last_symbols", "lang_two_blocks", "lang_units", "prefix_lang",
    "shortest_accepted", "suffix_lang", "union", "word_automaton", "Concat", "Empty", "Eps",
    "Opt", "Plus", "Regex", "Star", "Sym", "Union", "compile_regex", "parse_regex",
    "regex_to_nfa",
]

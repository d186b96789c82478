"""Sequential crossover of words and languages: closures, automata and deciders."""

from .automata import Dfa, Nfa, compile_regex, equivalent, includes, minimize_canonical
from .classify import (classify, is_closed_under, is_combinational, is_constant, is_crossover,
                       is_nilpotent, is_slt, is_st_closed, is_suffix_closed, is_sy, is_tsy)
from .closure import (block_profile, count_profiles, extract_base, gsco_once_regular,
                      jump_closure_finite, jump_closure_regular, member_with_trace,
                      verify_decomposition)
from .errors import CrosskitError
from .finlang import FiniteLanguage, IterationBudget, gsco_lang, r_closure_bounded, u_closure_bounded
from .verdict import Verdict
from .words import ALL, RuleSet, WordSet, cgsco, cross_at, gsco_pair, gsco_rule

__version__ = "0.1.0"

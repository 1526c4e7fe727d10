from .automata import (
    Afa,
    Bfa,
    Configuration,
    Nfa,
    Verdict,
    bfa_to_afa,
    config_of,
    is_subset,
    minimize_antichain,
    states_of,
)
from .bre import Bre, Compl, Inter, Leaf, Union_
from .charclass import DEFAULT_ALPHABET_MAX, CharClass, MintermTable, mintermize
from .formula import (
    FALSE,
    TRUE,
    Formula,
    check_polarity,
    conj,
    disj,
    eval_formula,
    neg,
    nnf,
    parse_formula,
    pred,
    var,
)

__all__ = [
    "Afa",
    "Bfa",
    "Bre",
    "CharClass",
    "Compl",
    "Configuration",
    "DEFAULT_ALPHABET_MAX",
    "FALSE",
    "Formula",
    "Inter",
    "Leaf",
    "MintermTable",
    "Nfa",
    "TRUE",
    "Union_",
    "Verdict",
    "bfa_to_afa",
    "check_polarity",
    "config_of",
    "conj",
    "disj",
    "eval_formula",
    "is_subset",
    "minimize_antichain",
    "mintermize",
    "neg",
    "nnf",
    "parse_formula",
    "pred",
    "states_of",
    "var",
]

from .antichain import AntichainSet, Check, antichain_included
from .bisim import reduce_bisim
from .bre import build_bre_dfa, build_bre_nfa, eval_bre
from .hkc import hkc_equivalent
from .ops import (
    Dfa,
    complement,
    determinize,
    dfa_complement,
    dfa_product,
    intersect,
    is_empty,
    minimize,
    trim,
    union,
)

__all__ = [
    "AntichainSet",
    "Check",
    "Dfa",
    "antichain_included",
    "build_bre_dfa",
    "build_bre_nfa",
    "complement",
    "determinize",
    "dfa_complement",
    "dfa_product",
    "eval_bre",
    "hkc_equivalent",
    "intersect",
    "is_empty",
    "minimize",
    "reduce_bisim",
    "trim",
    "union",
]

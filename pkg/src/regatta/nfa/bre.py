"""Bottom-up evaluation of Boolean combinations over NFA leaves."""

from __future__ import annotations

from ..core.automata import Nfa, Verdict
from ..core.bre import Bre, Compl, Inter, Leaf, leaves
from .bisim import reduce_bisim
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


def _check_tables(expr: Bre) -> None:
    tables = {id(a.table): a.table for a in leaves(expr)}
    first = next(iter(tables.values()))
    for t in tables.values():
        if t is not first and t.minterms != first.minterms:
            raise ValueError("BRE leaves must share one minterm table")


def build_bre_nfa(expr: Bre, reduce_every: int = 2) -> Nfa:
    """NFA for ``expr``; determinizes only under complement.

    Results are trimmed after every operation and quotiented by bisimulation
    every ``reduce_every`` operations (0 disables the reduction).
    """
    _check_tables(expr)
    ops = 0

    def step(a: Nfa) -> Nfa:
        nonlocal ops
        ops += 1
        if reduce_every and ops % reduce_every == 0:
            a = reduce_bisim(a)
        return a

    def go(e: Bre) -> Nfa:
        if isinstance(e, Leaf):
            return e.nfa
        if isinstance(e, Compl):
            return step(trim(complement(go(e.child))))
        parts = [go(c) for c in e.children]
        acc = parts[0]
        join = intersect if isinstance(e, Inter) else union
        for p in parts[1:]:
            acc = step(trim(join(acc, p, False)))
        return acc

    return go(expr)


def build_bre_dfa(expr: Bre) -> Dfa:
    """Minimal DFA for ``expr``, minimizing after every operation."""
    _check_tables(expr)

    def go(e: Bre) -> Dfa:
        if isinstance(e, Leaf):
            return minimize(determinize(e.nfa))
        if isinstance(e, Compl):
            return minimize(dfa_complement(go(e.child)))
        parts = [go(c) for c in e.children]
        acc = parts[0]
        for p in parts[1:]:
            acc = minimize(dfa_product(acc, p, union=not isinstance(e, Inter)))
        return acc

    return go(expr)


def eval_bre(expr: Bre, strategy: str = "nfa", reduce_every: int = 2) -> Verdict:
    """Emptiness of a Boolean combination; strategy is "nfa" or "dfa"."""
    if strategy == "nfa":
        return is_empty(build_bre_nfa(expr, reduce_every))
    if strategy == "dfa":
        return is_empty(build_bre_dfa(expr).to_nfa())
    raise ValueError(f"unknown strategy {strategy!r}")

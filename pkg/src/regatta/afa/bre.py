"""Translate a Boolean combination over NFA leaves into one AFA."""

from __future__ import annotations

from ..core import formula as fm
from ..core.automata import Afa, Bfa, Nfa, bfa_to_afa
from ..core.bre import Bre, Compl, Inter, Leaf, has_complement, leaves
from ..core.charclass import CharClass
from ..nfa.ops import common_table


def _leaf_delta(a: Nfa, offset: int) -> list[fm.Formula]:
    out = []
    for q in range(a.num_states):
        by_target: dict[int, CharClass] = {}
        for m, ts in a.delta[q].items():
            for r in ts:
                by_target[r] = by_target.get(r, CharClass()) | a.table.minterms[m]
        out.append(
            fm.disj(fm.conj([fm.pred(cc), fm.var(r + offset)]) for r, cc in sorted(by_target.items()))
        )
    return out


def afa_of_bre(expr: Bre) -> Afa:
    """AFA with the language of ``expr``; leaves are laid side by side.

    Intersection and union become conjunction and disjunction of the leaves'
    initial formulas.  Without complement the final formula requires every
    active state to be final.  With complement the combination is first built
    as a Boolean automaton whose final formula fixes every state exactly
    (final states true, others false); the backward valuation then records
    for each state whether the rest of the word is accepted from it, and
    negating an initial formula complements the leaf.
    """
    nfas = list(leaves(expr))
    table = common_table([a.table for a in nfas])
    if any(a.table is not table and a.table.minterms != table.minterms for a in nfas):
        raise ValueError("BRE leaves must share one minterm table")
    offsets: dict[int, int] = {}
    delta: list[fm.Formula] = []
    finals: list[fm.Formula] = []
    exact = has_complement(expr)
    for a in nfas:
        if id(a) in offsets:
            continue
        base = len(delta)
        offsets[id(a)] = base
        delta += _leaf_delta(a, base)
        for q in range(a.num_states):
            if q in a.final:
                if exact:
                    finals.append(fm.var(q + base))
            else:
                finals.append(fm.neg(fm.var(q + base)))

    def init(e: Bre) -> fm.Formula:
        if isinstance(e, Leaf):
            base = offsets[id(e.nfa)]
            return fm.disj(fm.var(q + base) for q in sorted(e.nfa.initial))
        if isinstance(e, Compl):
            return fm.neg(init(e.child))
        parts = [init(c) for c in e.children]
        return fm.conj(parts) if isinstance(e, Inter) else fm.disj(parts)

    n = len(delta)
    if not exact:
        return Afa(n, delta, init(expr), fm.conj(finals), table)
    return bfa_to_afa(Bfa(n, delta, init(expr), fm.conj(finals), table))

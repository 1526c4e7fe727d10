"""De-alternation: explicit NFAs over AFA configurations."""

from __future__ import annotations

from collections import deque

from .. import budget
from ..core.automata import Afa, Nfa
from .semantics import bw_predecessor, final_configs, fw_successors, initial_configs


def dealternate_fw(a: Afa) -> Nfa:
    """Forward NFA on reachable minimal configurations; finals satisfy F."""
    start = initial_configs(a)
    if not start:
        return Nfa.empty_language(a.table)
    index = {c: i for i, c in enumerate(start)}
    order = list(start)
    edges = []
    nm = len(a.table)
    i = 0
    while i < len(order):
        budget.tick()
        c = order[i]
        for m in range(nm):
            for c2 in fw_successors(a, c, m):
                j = index.get(c2)
                if j is None:
                    j = len(order)
                    index[c2] = j
                    order.append(c2)
                edges.append((i, m, j))
        i += 1
    final = [k for k, c in enumerate(order) if a.is_final(c)]
    return Nfa(len(order), edges, range(len(start)), final, a.table)


def dealternate_bw(a: Afa) -> Nfa:
    """NFA built backwards from the maximal models of F.

    Each configuration c' gets, for every minterm m, the unique largest
    source c = pre(c', m) with an edge c --m--> c'.  Initial states are the
    discovered configurations satisfying I, final states are the seeds, so
    the NFA reads words left to right and is empty iff the AFA is.
    """
    seeds = final_configs(a)
    if not seeds:
        return Nfa.empty_language(a.table)
    index = {c: i for i, c in enumerate(seeds)}
    order = list(seeds)
    edges = []
    nm = len(a.table)
    i = 0
    while i < len(order):
        budget.tick()
        c = order[i]
        for m in range(nm):
            p = bw_predecessor(a, c, m)
            j = index.get(p)
            if j is None:
                j = len(order)
                index[p] = j
                order.append(p)
            edges.append((j, m, i))
        i += 1
    initial = [k for k, c in enumerate(order) if a.is_initial(c)]
    return Nfa(len(order), edges, initial, range(len(seeds)), a.table)

from __future__ import annotations

from .. import budget
from ..core.automata import Nfa


def bisim_partition(a: Nfa) -> list[int]:
    """Block id per state for the coarsest forward bisimulation."""
    block = [int(q in a.final) for q in range(a.num_states)]
    count = len(set(block))
    while True:
        budget.tick()
        sigs: dict[tuple, int] = {}
        nxt = []
        for q in range(a.num_states):
            moves = frozenset((m, block[r]) for m, ts in a.delta[q].items() for r in ts)
            nxt.append(sigs.setdefault((block[q], moves), len(sigs)))
        block = nxt
        if len(sigs) == count:
            return block
        count = len(sigs)


def reduce_bisim(a: Nfa) -> Nfa:
    """Quotient by the coarsest forward bisimulation; the language is preserved."""
    block = bisim_partition(a)
    n = max(block) + 1 if block else 0
    if n == a.num_states:
        return a
    edges = {(block[q], m, block[r]) for q, m, r in a.edges()}
    return Nfa(
        n,
        sorted(edges),
        {block[q] for q in a.initial},
        {block[q] for q in a.final},
        a.table,
    )

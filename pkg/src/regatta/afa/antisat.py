"""Backward antichain emptiness check driven by an incremental SAT solver.

One solver holds, for every state q, the clause set of ``p_q → Δ(q)`` where
``p_q`` marks membership in the predecessor and Δ(q) ranges over the current
configuration variables ``x_q`` and one-hot minterm selectors.  Exploring a
configuration c means solving under the assumptions ¬x_q for q ∉ c and asking
for models that are maximal on the ``p`` variables.  Every discovered
predecessor c' is excluded for good with the clause ⋁_{q∉c'} p_q, so later
models are never subsumed by known configurations.
"""

from __future__ import annotations

from collections import deque

from .. import budget
from ..core import formula as fm
from ..core.automata import Afa, Configuration, Verdict
from ..sat import Solver, exactly_one
from .antichain import FrontierItem, chain_word


def _config(model, variables: list[int]) -> Configuration:
    c = 0
    for q, v in enumerate(variables):
        if model[v]:
            c |= 1 << q
    return c


def _maximal_final_models(a: Afa, seed: int) -> list[Configuration]:
    """All maximal models of F, enumerated with blocking clauses."""
    s = Solver(seed)
    xs = s.new_vars(a.num_states)
    root = s.add_formula(a.final, {q: xs[q] for q in range(a.num_states)})
    s.add_clause([root])
    out = []
    while True:
        budget.tick()
        res = s.maximal_model([], xs)
        if not res.sat:
            return out
        c = _config(res.model, xs)
        out.append(c)
        s.add_clause([xs[q] for q in range(a.num_states) if not c >> q & 1])


def _initial_and_final(a: Afa, seed: int) -> bool:
    s = Solver(seed)
    xs = s.new_vars(a.num_states)
    var_map = {q: xs[q] for q in range(a.num_states)}
    s.add_clause([s.add_formula(a.init, var_map)])
    s.add_clause([s.add_formula(a.final, var_map)])
    return s.solve().sat


def antisat_empty(a: Afa, seed: int = 0, stats: dict | None = None) -> Verdict:
    n = a.num_states
    table = a.table
    if _initial_and_final(a, seed):
        return Verdict(False, (), table)

    s = Solver(seed)
    pred = s.new_vars(n)
    cur = s.new_vars(n)
    sel = s.new_vars(len(table))
    s.add_clauses(exactly_one(sel))
    sel_of = {}

    def on_pred(cc):
        hit = sel_of.get(cc)
        if hit is None:
            hit = fm.disj(fm.var(("sel", m)) for m in sorted(table.minterms_within(cc)))
            sel_of[cc] = hit
        return hit

    var_map = {q: cur[q] for q in range(n)}
    var_map.update({("sel", m): sel[m] for m in range(len(table))})
    for q in range(n):
        g = fm.substitute(a.delta[q], on_pred=on_pred)
        root = s.add_formula(g, var_map)
        s.add_clause([-pred[q], root])

    items: list[FrontierItem] = []
    queue: deque[int] = deque()

    def block(c: Configuration) -> None:
        s.add_clause([pred[q] for q in range(n) if not c >> q & 1])

    def done(found: int | None) -> Verdict:
        if stats is not None:
            stats["explored"] = len(items)
        if found is None:
            return Verdict(True, None, table)
        return Verdict(False, chain_word(items, found, reverse=True), table)

    for c in _maximal_final_models(a, seed):
        items.append(FrontierItem(c))
        queue.append(len(items) - 1)
        block(c)
        if a.is_initial(c):
            return done(len(items) - 1)

    while queue:
        i = queue.popleft()
        c = items[i].config
        assumptions = [-cur[q] for q in range(n) if not c >> q & 1]
        while True:
            budget.tick()
            res = s.maximal_model(assumptions, pred)
            if not res.sat:
                break
            c2 = _config(res.model, pred)
            m = next(k for k, v in enumerate(sel) if res.model[v])
            items.append(FrontierItem(c2, i, m))
            block(c2)
            if a.is_initial(c2):
                return done(len(items) - 1)
            queue.append(len(items) - 1)
    return done(None)

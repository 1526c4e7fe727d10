"""Boolean operations, determinization and emptiness for explicit NFAs."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .. import budget
from ..core.automata import Nfa, Verdict
from ..core.charclass import MintermTable, mintermize


class Dfa:
    """Complete DFA; ``delta[state][minterm]`` is the unique successor.

    ``macrostates`` (when built by subset construction) records the NFA
    state set behind each DFA state.
    """

    __slots__ = ("num_states", "delta", "initial", "final", "table", "macrostates")

    def __init__(self, num_states, delta, initial, final, table, macrostates=None):
        self.num_states = num_states
        self.delta = [list(row) for row in delta]
        self.initial = initial
        self.final = frozenset(final)
        self.table = table
        self.macrostates = macrostates
        nm = len(table)
        for row in self.delta:
            if len(row) != nm:
                raise ValueError("DFA transition function must be total")

    def to_nfa(self) -> Nfa:
        edges = ((q, m, r) for q, row in enumerate(self.delta) for m, r in enumerate(row))
        return Nfa(self.num_states, edges, [self.initial], self.final, self.table)

    def accepts(self, word) -> bool:
        q = self.initial
        for m in word:
            q = self.delta[q][m]
        return q in self.final

    def __repr__(self) -> str:
        return f"Dfa(states={self.num_states}, final={len(self.final)})"


def determinize(a: Nfa) -> Dfa:
    """Subset construction over reachable macro-states; the empty set acts as sink."""
    nm = len(a.table)
    start = frozenset(a.initial)
    index = {start: 0}
    macros = [start]
    delta: list[list[int]] = []
    i = 0
    while i < len(macros):
        budget.tick()
        cur = macros[i]
        row = []
        for m in range(nm):
            nxt = a.post(cur, m)
            j = index.get(nxt)
            if j is None:
                j = len(macros)
                index[nxt] = j
                macros.append(nxt)
            row.append(j)
        delta.append(row)
        i += 1
    final = [k for k, s in enumerate(macros) if s & a.final]
    return Dfa(len(macros), delta, 0, final, a.table, [tuple(sorted(s)) for s in macros])


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on a complete DFA (unreachable states dropped first)."""
    reach = [False] * d.num_states
    reach[d.initial] = True
    stack = [d.initial]
    while stack:
        q = stack.pop()
        for r in d.delta[q]:
            if not reach[r]:
                reach[r] = True
                stack.append(r)
    live = [q for q in range(d.num_states) if reach[q]]
    block = {q: int(q in d.final) for q in live}
    count = len(set(block.values()))
    while True:
        budget.tick()
        budget.work(len(live) * (len(d.table) + 1))
        sigs: dict[tuple, int] = {}
        nxt = {}
        for q in live:
            sig = (block[q], tuple(block[r] for r in d.delta[q]))
            nxt[q] = sigs.setdefault(sig, len(sigs))
        block = nxt
        if len(sigs) == count:
            break
        count = len(sigs)
    # renumber blocks in BFS order from the initial state for a canonical result
    order: dict[int, int] = {block[d.initial]: 0}
    rep: dict[int, int] = {block[d.initial]: d.initial}
    queue = deque([d.initial])
    while queue:
        q = queue.popleft()
        for r in d.delta[q]:
            b = block[r]
            if b not in order:
                order[b] = len(order)
                rep[b] = r
                queue.append(r)
    n = len(order)
    delta = [None] * n
    final = set()
    for b, i in order.items():
        q = rep[b]
        delta[i] = [order[block[r]] for r in d.delta[q]]
        if q in d.final:
            final.add(i)
    return Dfa(n, delta, 0, final, d.table)


def complement(a: Nfa) -> Nfa:
    """Determinize and flip final states; the alphabet is the table's minterms."""
    d = determinize(a)
    final = set(range(d.num_states)) - d.final
    return Dfa(d.num_states, d.delta, d.initial, final, d.table).to_nfa()


def dfa_complement(d: Dfa) -> Dfa:
    return Dfa(d.num_states, d.delta, d.initial, set(range(d.num_states)) - d.final, d.table)


def dfa_product(a: Dfa, b: Dfa, union: bool = False) -> Dfa:
    """Reachable product of complete DFAs; finals by conjunction or disjunction."""
    _same_table(a.table, b.table)
    nm = len(a.table)
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    delta = []
    i = 0
    while i < len(pairs):
        budget.tick()
        p, q = pairs[i]
        row = []
        for m in range(nm):
            nxt = (a.delta[p][m], b.delta[q][m])
            j = index.get(nxt)
            if j is None:
                j = len(pairs)
                index[nxt] = j
                pairs.append(nxt)
            row.append(j)
        delta.append(row)
        i += 1
    if union:
        final = [k for k, (p, q) in enumerate(pairs) if p in a.final or q in b.final]
    else:
        final = [k for k, (p, q) in enumerate(pairs) if p in a.final and q in b.final]
    return Dfa(len(pairs), delta, 0, final, a.table)


def _same_table(t1: MintermTable, t2: MintermTable) -> None:
    if t1 is not t2 and t1.minterms != t2.minterms:
        raise ValueError("automata use incompatible minterm tables")


def common_table(tables: Iterable[MintermTable]) -> MintermTable:
    tables = list(tables)
    first = tables[0]
    if all(t is first or t.minterms == first.minterms for t in tables):
        return first
    preds = [m for t in tables for m in t.minterms]
    return mintermize(preds, residual=any(t.residual for t in tables), alphabet_max=first.alphabet_max)


def align(a: Nfa, b: Nfa, remintermize: bool = True) -> tuple[Nfa, Nfa]:
    if a.table is b.table or a.table.minterms == b.table.minterms:
        return a, b.retarget(a.table) if a.table is not b.table else b
    if not remintermize:
        raise ValueError("automata use incompatible minterm tables")
    t = common_table([a.table, b.table])
    return a.retarget(t), b.retarget(t)


def intersect(a: Nfa, b: Nfa, remintermize: bool = True) -> Nfa:
    """Product automaton restricted to pairs reachable from I×I'."""
    a, b = align(a, b, remintermize)
    index: dict[tuple[int, int], int] = {}
    pairs: list[tuple[int, int]] = []
    for p in sorted(a.initial):
        for q in sorted(b.initial):
            index[(p, q)] = len(pairs)
            pairs.append((p, q))
    initial = list(range(len(pairs)))
    edges = []
    i = 0
    while i < len(pairs):
        budget.tick()
        p, q = pairs[i]
        dq = b.delta[q]
        for m, ps in a.delta[p].items():
            qs = dq.get(m)
            if not qs:
                continue
            for p2 in ps:
                for q2 in qs:
                    j = index.get((p2, q2))
                    if j is None:
                        j = len(pairs)
                        index[(p2, q2)] = j
                        pairs.append((p2, q2))
                    edges.append((i, m, j))
        i += 1
    final = [k for k, (p, q) in enumerate(pairs) if p in a.final and q in b.final]
    if not pairs:
        return Nfa.empty_language(a.table)
    return Nfa(len(pairs), edges, initial, final, a.table)


def union(a: Nfa, b: Nfa, remintermize: bool = True) -> Nfa:
    """Disjoint union; states of ``b`` are shifted by ``a.num_states``."""
    a, b = align(a, b, remintermize)
    k = a.num_states
    edges = list(a.edges()) + [(q + k, m, r + k) for q, m, r in b.edges()]
    return Nfa(
        a.num_states + b.num_states,
        edges,
        list(a.initial) + [q + k for q in b.initial],
        list(a.final) + [q + k for q in b.final],
        a.table,
    )


def is_empty(a: Nfa) -> Verdict:
    """BFS for an accepting run; the witness is a shortest accepted word."""
    parent: dict[int, tuple[int, int] | None] = {}
    queue: deque[int] = deque()
    for q in sorted(a.initial):
        parent[q] = None
        queue.append(q)
    while queue:
        budget.tick()
        q = queue.popleft()
        if q in a.final:
            word = []
            while parent[q] is not None:
                q, m = parent[q]
                word.append(m)
            return Verdict(False, tuple(reversed(word)), a.table)
        for m, ts in a.delta[q].items():
            for r in ts:
                if r not in parent:
                    parent[r] = (q, m)
                    queue.append(r)
    return Verdict(True, None, a.table)


def trim(a: Nfa) -> Nfa:
    """Keep states that are both reachable and co-reachable."""
    reach = a.reachable()
    back: list[list[int]] = [[] for _ in range(a.num_states)]
    for q, _, r in a.edges():
        back[r].append(q)
    co = set(a.final)
    stack = list(co)
    while stack:
        r = stack.pop()
        for q in back[r]:
            if q not in co:
                co.add(q)
                stack.append(q)
    keep = reach & co
    if len(keep) == a.num_states:
        return a
    if not keep:
        return Nfa.empty_language(a.table)
    return a.restrict(keep)

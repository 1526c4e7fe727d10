"""Language equivalence by bisimulation up to congruence (HKC)."""

from __future__ import annotations

from collections import deque

from .. import budget
from ..core.automata import Nfa
from .antichain import Check, _successor_masks, post_mask
from .ops import align


def _normal_form(z: int, rules: list[tuple[int, int]]) -> int:
    """Saturate ``z`` under the rules X→X∪Y, Y→X∪Y of every pair (X, Y)."""
    changed = True
    while changed:
        changed = False
        for x, y in rules:
            u = x | y
            if u & ~z and (x & ~z == 0 or y & ~z == 0):
                z |= u
                changed = True
    return z


def in_congruence(x: int, y: int, rules: list[tuple[int, int]]) -> bool:
    """Whether (x, y) lies in the congruence closure (w.r.t. union) of ``rules``."""
    return _normal_form(x, rules) == _normal_form(y, rules)


def hkc_equivalent(a: Nfa, b: Nfa) -> Check:
    """Decide L(a) = L(b); returns a distinguishing word when they differ."""
    a, b = align(a, b)
    k = a.num_states
    succ = _successor_masks(a) + [
        {m: mask << k for m, mask in row.items()} for row in _successor_masks(b)
    ]
    final = 0
    for q in a.final:
        final |= 1 << q
    for q in b.final:
        final |= 1 << (q + k)
    x0 = 0
    for q in a.initial:
        x0 |= 1 << q
    y0 = 0
    for q in b.initial:
        y0 |= 1 << (q + k)
    nm = len(a.table)
    processed: list[tuple[int, int]] = []
    nodes: list[tuple[int, int, int, int]] = [(x0, y0, -1, -1)]
    todo: deque[int] = deque([0])
    pending: dict[int, tuple[int, int]] = {0: (x0, y0)}

    while todo:
        budget.tick()
        node = todo.popleft()
        x, y, _, _ = nodes[node]
        del pending[node]
        if in_congruence(x, y, processed + list(pending.values())):
            continue
        if bool(x & final) != bool(y & final):
            out = []
            while nodes[node][2] >= 0:
                out.append(nodes[node][3])
                node = nodes[node][2]
            return Check(False, tuple(reversed(out)))
        for m in range(nm):
            nodes.append((post_mask(succ, x, m), post_mask(succ, y, m), node, m))
            todo.append(len(nodes) - 1)
            pending[len(nodes) - 1] = nodes[-1][:2]
        processed.append((x, y))
    return Check(True, None)

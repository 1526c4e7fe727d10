"""Forward antichain emptiness check for AFAs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .. import budget
from ..core.automata import Afa, Configuration, Verdict
from ..nfa.antichain import AntichainSet
from .semantics import fw_successors, initial_configs


@dataclass(frozen=True)
class FrontierItem:
    config: Configuration
    parent: int | None = None
    via_minterm: int | None = None


def chain_word(items: list[FrontierItem], i: int, reverse: bool = False) -> tuple[int, ...]:
    """Minterms along the parent chain of item ``i``."""
    out = []
    while items[i].parent is not None:
        out.append(items[i].via_minterm)
        i = items[i].parent
    return tuple(out) if reverse else tuple(reversed(out))


def antichain_empty_fw(a: Afa, stats: dict | None = None) -> Verdict:
    """BFS over minimal configurations, dropping supersets of retained ones."""
    retained = AntichainSet("min")
    items: list[FrontierItem] = []
    queue: deque[int] = deque()

    def discover(c: Configuration, parent: int | None, m: int | None) -> bool:
        budget.tick()
        if not retained.insert(c):
            return False
        items.append(FrontierItem(c, parent, m))
        queue.append(len(items) - 1)
        return a.is_final(c)

    def done(found: int | None) -> Verdict:
        if stats is not None:
            stats["explored"] = len(items)
            stats["retained"] = len(retained)
        if found is None:
            return Verdict(True, None, a.table)
        return Verdict(False, chain_word(items, found), a.table)

    for c in initial_configs(a):
        if discover(c, None, None):
            return done(len(items) - 1)
    nm = len(a.table)
    while queue:
        budget.tick()
        i = queue.popleft()
        c = items[i].config
        if c not in retained:
            continue
        for m in range(nm):
            for c2 in fw_successors(a, c, m):
                if discover(c2, i, m):
                    return done(len(items) - 1)
    return done(None)

"""Antichain-based language inclusion for NFAs."""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .. import budget
from ..core.automata import Nfa
from .ops import align


class Check(NamedTuple):
    holds: bool
    counterexample: tuple[int, ...] | None = None


class AntichainSet:
    """Pairwise ⊆-incomparable bitmask sets.

    With ``keep="min"`` inserting a superset of a member is refused and
    members that are supersets of the new element are evicted; ``"max"`` is
    the dual.
    """

    def __init__(self, keep: str = "min"):
        if keep not in ("min", "max"):
            raise ValueError(keep)
        self.keep = keep
        self.elements: list[int] = []

    def covers(self, c: int) -> bool:
        budget.work(len(self.elements))
        if self.keep == "min":
            return any(e & ~c == 0 for e in self.elements)
        return any(c & ~e == 0 for e in self.elements)

    def insert(self, c: int) -> bool:
        """Add ``c`` unless subsumed; returns whether it was added."""
        if self.covers(c):
            return False
        budget.work(len(self.elements))
        if self.keep == "min":
            self.elements = [e for e in self.elements if c & ~e != 0]
        else:
            self.elements = [e for e in self.elements if e & ~c != 0]
        self.elements.append(c)
        return True

    def __contains__(self, c: int) -> bool:
        return c in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _successor_masks(b: Nfa) -> list[dict[int, int]]:
    out = []
    for d in b.delta:
        row = {}
        for m, ts in d.items():
            mask = 0
            for r in ts:
                mask |= 1 << r
            row[m] = mask
        out.append(row)
    return out


def post_mask(succ: list[dict[int, int]], s: int, m: int) -> int:
    out = 0
    q = 0
    while s:
        if s & 1:
            out |= succ[q].get(m, 0)
        s >>= 1
        q += 1
    return out


def antichain_included(a: Nfa, b: Nfa) -> Check:
    """Decide L(a) ⊆ L(b) by searching pairs (p, S) with subsumption pruning.

    A pair is dropped when a retained pair (p, S') has S' ⊆ S.  The search is
    FIFO, so the counterexample (if any) is a shortest word in L(a) \\ L(b).
    """
    a, b = align(a, b)
    succ = _successor_masks(b)
    fb = 0
    for q in b.final:
        fb |= 1 << q
    ib = 0
    for q in b.initial:
        ib |= 1 << q
    retained: dict[int, AntichainSet] = {}
    nodes: list[tuple[int, int, int, int]] = []  # (p, S, parent, minterm)
    queue: deque[int] = deque()

    def discover(p: int, s: int, parent: int, m: int) -> int | None:
        budget.tick()
        chain = retained.setdefault(p, AntichainSet("min"))
        if not chain.insert(s):
            return None
        nodes.append((p, s, parent, m))
        node = len(nodes) - 1
        queue.append(node)
        if p in a.final and s & fb == 0:
            return node
        return None

    def word(node: int) -> tuple[int, ...]:
        out = []
        while nodes[node][2] >= 0:
            out.append(nodes[node][3])
            node = nodes[node][2]
        return tuple(reversed(out))

    for p in sorted(a.initial):
        bad = discover(p, ib, -1, -1)
        if bad is not None:
            return Check(False, word(bad))
    while queue:
        budget.tick()
        node = queue.popleft()
        p, s, _, _ = nodes[node]
        if s not in retained[p]:
            continue
        for m, ps in a.delta[p].items():
            s2 = post_mask(succ, s, m)
            for p2 in ps:
                bad = discover(p2, s2, node, m)
                if bad is not None:
                    return Check(False, word(bad))
    return Check(True, None)

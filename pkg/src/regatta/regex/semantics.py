"""Direct recursive membership for regex ASTs, independent of automata.

Used as a test oracle: ``matches`` decides whether a whole sequence of code
points belongs to the language, by splitting the input for concatenation and
iteration.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..core.charclass import DEFAULT_ALPHABET_MAX
from .ast import Alt, And, Class, Concat, Dot, Empty, Epsilon, Neg, Opt, Plus, Regex, Repeat, Star
from .parse import strip_anchors


def matches(r: Regex, word: Sequence[int], alphabet_max: int = DEFAULT_ALPHABET_MAX) -> bool:
    r = strip_anchors(r)
    w = tuple(word)

    @lru_cache(maxsize=None)
    def m(node: Regex, i: int, j: int) -> bool:
        if isinstance(node, Empty):
            return False
        if isinstance(node, Epsilon):
            return i == j
        if isinstance(node, Class):
            return j == i + 1 and w[i] in node.cc
        if isinstance(node, Dot):
            return j == i + 1 and w[i] < alphabet_max
        if isinstance(node, Alt):
            return any(m(c, i, j) for c in node.items)
        if isinstance(node, And):
            return all(m(c, i, j) for c in node.items)
        if isinstance(node, Neg):
            return not m(node.r, i, j)
        if isinstance(node, Opt):
            return i == j or m(node.r, i, j)
        if isinstance(node, Concat):
            return seq(node.items, i, j)
        if isinstance(node, Star):
            return star(node.r, i, j)
        if isinstance(node, Plus):
            return any(m(node.r, i, k) and star(node.r, k, j) for k in range(i, j + 1))
        if isinstance(node, Repeat):
            return rep(node.r, node.min, node.max, i, j)
        raise TypeError(f"unsupported node {node!r}")

    def seq(items: tuple, i: int, j: int) -> bool:
        if not items:
            return i == j
        if len(items) == 1:
            return m(items[0], i, j)
        return any(m(items[0], i, k) and seq(items[1:], k, j) for k in range(i, j + 1))

    @lru_cache(maxsize=None)
    def star(node: Regex, i: int, j: int) -> bool:
        if i == j:
            return True
        # a nonempty first iteration suffices: empty iterations change nothing
        return any(m(node, i, k) and star(node, k, j) for k in range(i + 1, j + 1))

    @lru_cache(maxsize=None)
    def rep(node: Regex, lo: int, hi: int | None, i: int, j: int) -> bool:
        if lo == 0:
            if hi is None:
                return star(node, i, j)
            if i == j:
                return True
            if hi == 0:
                return False
            return any(m(node, i, k) and rep(node, 0, hi - 1, k, j) for k in range(i + 1, j + 1))
        nhi = None if hi is None else hi - 1
        return any(m(node, i, k) and rep(node, lo - 1, nhi, k, j) for k in range(i, j + 1))

    return m(r, 0, len(w))

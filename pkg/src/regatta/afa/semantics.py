"""Forward and backward single steps of an AFA, plus word-level acceptance."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .. import budget
from ..core import formula as fm
from ..core.automata import Afa, Bfa, Configuration, minimize_antichain, positive_min_models


def fw_successors(a: Afa, c: Configuration, m: int) -> list[Configuration]:
    """Subset-minimal c' with (c', m) ⊨ ⋀_{q∈c} Δ(q)."""
    acc = [0]
    q = 0
    while c:
        if c & 1:
            models = a.min_models(q, m)
            if not models:
                return []
            acc = minimize_antichain(x | y for x in acc for y in models)
        c >>= 1
        q += 1
    return acc


def fw_successors_bruteforce(a: Afa, c: Configuration, m: int) -> list[Configuration]:
    """Exhaustive filter over all 2^|Q| targets; exponential, used as a check."""
    qs = [q for q in range(a.num_states) if c >> q & 1]
    models = [t for t in range(1 << a.num_states) if all(a.holds(q, m, t) for q in qs)]
    return minimize_antichain(models)


def bw_predecessor(a: Afa, c: Configuration, m: int) -> Configuration:
    """The largest source: every state whose Δ holds under (c, m)."""
    out = 0
    budget.work(8 * a.num_states)
    for q in range(a.num_states):
        if a.holds(q, m, c):
            out |= 1 << q
    return out


def initial_configs(a: Afa) -> list[Configuration]:
    """Minimal configurations satisfying I."""
    return positive_min_models(a.init)


def final_configs(a: Afa) -> list[Configuration]:
    """Maximal configurations satisfying F.

    F is negative, so F(c) equals P(Q∖c) for the positive formula P obtained by
    turning every ¬q into q; the maximal models of F are complements of the
    minimal models of P.
    """
    flipped = fm.substitute(a.final, on_var=lambda q: fm.neg(fm.var(q)))
    full = a.full
    return sorted(full & ~m for m in positive_min_models(fm.nnf(flipped)))


def accepts(a: Afa, word: Sequence[int]) -> bool:
    """Forward run over minimal configurations (F is downward closed)."""
    cur = initial_configs(a)
    for m in word:
        nxt = []
        for c in cur:
            budget.tick()
            nxt.extend(fw_successors(a, c, m))
        cur = minimize_antichain(nxt)
        if not cur:
            return False
    return any(a.is_final(c) for c in cur)


def bfa_accepts(b: Bfa, word: Sequence[int]) -> bool:
    """Accept iff some valuation satisfying F iterates back to one satisfying I."""
    n = b.num_states
    table = b.table
    for bits in product((0, 1), repeat=n):
        v = sum(bit << q for q, bit in enumerate(bits))
        if not fm.eval_formula(b.final, v):
            continue
        for m in reversed(word):
            v = sum(1 << q for q in range(n) if fm.eval_formula(b.delta[q], v, m, table))
        if fm.eval_formula(b.init, v):
            return True
    return False

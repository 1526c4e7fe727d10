"""Brute-force emptiness by word enumeration, independent of the engines.

Regex atoms are decided by the recursive matcher, NFA atoms by simulation on
code points and AFA atoms by exhaustive backward evaluation from every
valuation satisfying F.  Words range over one representative code point per
minterm of the problem's table, in length-lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from ..core import formula as fm
from ..core.automata import Afa
from ..regex import matches, parse_regex
from .problem import Atom, Instance, Problem, materialize

NONEMPTY, EMPTY_UP_TO_BOUND = "nonempty", "empty_up_to_bound"


@dataclass(frozen=True)
class OracleResult:
    status: str
    witness: tuple[int, ...] | None  # code points
    bound: int

    @property
    def nonempty(self) -> bool:
        return self.status == NONEMPTY


def afa_member(a: Afa, word_minterms) -> bool:
    """Accept iff some valuation satisfying F evaluates back to one satisfying I."""
    n = a.num_states
    for v0 in range(1 << n):
        if not fm.eval_formula(a.final, v0):
            continue
        v = v0
        for m in reversed(word_minterms):
            v = sum(1 << q for q in range(n) if fm.eval_formula(a.delta[q], v, m, a.table))
        if fm.eval_formula(a.init, v):
            return True
    return False


def _atom_member(atom: Atom, alphabet_max: int):
    if atom.kind in ("regex", "xregex"):
        ast = parse_regex(atom.value, "extended" if atom.kind == "xregex" else "basic", alphabet_max)
        return lambda cps: matches(ast, cps, alphabet_max)
    if atom.kind == "nfa":
        return atom.value.accepts
    raise ValueError(f"atom kind {atom.kind} has no code-point oracle")


def word_in(p: Problem, cps, members) -> bool:
    """Whether the word is a witness of nonemptiness for ``p``."""

    def ev(e) -> bool:
        if e[0] == "atom":
            return members[e[1]](cps)
        if e[0] == "not":
            return not ev(e[1])
        if e[0] == "and":
            return all(ev(c) for c in e[1])
        return any(ev(c) for c in e[1])

    if p.kind == "bre_empty":
        return ev(p.query[0])
    x, y = (ev(e) for e in p.query)
    if p.kind == "inclusion":
        return x and not y
    return x != y


def oracle_empty(p: Problem, max_len: int, inst: Instance | None = None, alphabet_max: int | None = None) -> OracleResult:
    inst = inst or (materialize(p) if alphabet_max is None else materialize(p, alphabet_max))
    table = inst.table
    if p.kind == "afa_empty":
        a = inst.afa
        for k in range(max_len + 1):
            for w in product(range(len(table)), repeat=k):
                if afa_member(a, w):
                    return OracleResult(NONEMPTY, table.word(w), max_len)
        return OracleResult(EMPTY_UP_TO_BOUND, None, max_len)
    members = {a.name: _atom_member(a, table.alphabet_max) for a in p.atoms}
    reps = [table.representative(m) for m in range(len(table))]
    for k in range(max_len + 1):
        for cps in product(reps, repeat=k):
            if word_in(p, cps, members):
                return OracleResult(NONEMPTY, cps, max_len)
    return OracleResult(EMPTY_UP_TO_BOUND, None, max_len)


def is_witness(p: Problem, cps, alphabet_max: int | None = None, inst: Instance | None = None) -> bool:
    """Replay check of an engine's witness against direct semantics."""
    if p.kind == "afa_empty":
        inst = inst or materialize(p)
        word = []
        for cp in cps:
            m = inst.table.locate(cp)
            if m is None:
                return False
            word.append(m)
        return afa_member(inst.afa, word)
    amax = alphabet_max if alphabet_max is not None else (inst.table.alphabet_max if inst else 0x110000)
    members = {a.name: _atom_member(a, amax) for a in p.atoms}
    return word_in(p, tuple(cps), members)

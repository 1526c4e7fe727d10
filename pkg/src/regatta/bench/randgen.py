"""Seeded random instances for property tests and the acceptance suites."""

from __future__ import annotations

import random

from ..core import formula as fm
from ..core.automata import Afa, Bfa, Nfa
from ..core.bre import Bre, Compl, Inter, Leaf, Union_
from ..core.charclass import CharClass, MintermTable, mintermize
from .problem import AfaSpec, Atom, LabeledNfa, Problem


def letter_table(letters: str = "ab", residual: bool = False) -> MintermTable:
    """One minterm per letter (plus the rest of the alphabet when ``residual``)."""
    return mintermize([CharClass.of(ch) for ch in letters], residual=residual)


def random_nfa(rng: random.Random, table: MintermTable, max_states: int = 4, density: float = 0.35) -> Nfa:
    n = rng.randint(1, max_states)
    edges = [
        (q, m, r)
        for q in range(n)
        for m in range(len(table))
        for r in range(n)
        if rng.random() < density
    ]
    initial = [q for q in range(n) if rng.random() < 0.3] or [0]
    final = [q for q in range(n) if rng.random() < 0.4]
    return Nfa(n, edges, initial, final, table)


def random_bre(rng: random.Random, table: MintermTable, depth: int = 3, max_states: int = 4) -> Bre:
    if depth == 0 or rng.random() < 0.25:
        return Leaf(random_nfa(rng, table, max_states))
    kind = rng.choice("iuc")
    if kind == "c":
        return Compl(random_bre(rng, table, depth - 1, max_states))
    kids = tuple(random_bre(rng, table, depth - 1, max_states) for _ in range(rng.randint(2, 3)))
    return Inter(kids) if kind == "i" else Union_(kids)


def _random_pred(rng: random.Random, table: MintermTable) -> fm.Formula:
    chosen = [m for m in range(len(table)) if rng.random() < 0.5] or [rng.randrange(len(table))]
    cc = CharClass()
    for m in chosen:
        cc = cc | table.minterms[m]
    return fm.pred(cc)


def _random_delta(rng: random.Random, n: int, table: MintermTable, negation: bool) -> fm.Formula:
    roll = rng.random()
    if roll < 0.05:
        return fm.FALSE
    if roll < 0.1:
        return fm.TRUE
    terms = []
    for _ in range(rng.randint(1, 3)):
        lits = []
        if rng.random() < 0.8:
            lits.append(_random_pred(rng, table))
        for _ in range(rng.randint(1, 2) if rng.random() < 0.85 else 0):
            v = fm.var(rng.randrange(n))
            lits.append(fm.neg(v) if negation and rng.random() < 0.3 else v)
        terms.append(fm.conj(lits))
    return fm.disj(terms)


def random_afa(rng: random.Random, max_states: int = 6, max_minterms: int = 3) -> Afa:
    n = rng.randint(1, max_states)
    table = letter_table("abc"[: rng.randint(1, max_minterms)])
    delta = [_random_delta(rng, n, table, False) for _ in range(n)]
    init = fm.disj(
        fm.conj(fm.var(rng.randrange(n)) for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2))
    )
    cubes = []
    for _ in range(1 if rng.random() < 0.75 else 2):
        cubes.append(fm.conj(fm.neg(fm.var(q)) for q in range(n) if rng.random() < 0.75))
    return Afa(n, delta, init, fm.disj(cubes), table)


def random_bfa(rng: random.Random, max_states: int = 5, letters: str = "ab") -> Bfa:
    n = rng.randint(1, max_states)
    table = letter_table(letters)
    delta = [_random_delta(rng, n, table, True) for _ in range(n)]

    def lit():
        v = fm.var(rng.randrange(n))
        return fm.neg(v) if rng.random() < 0.4 else v

    init = fm.disj(fm.conj(lit() for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2)))
    final = fm.disj(fm.conj(lit() for _ in range(rng.randint(0, 2))) for _ in range(rng.randint(1, 2)))
    return Bfa(n, delta, init, final, table)


def random_cnf(rng: random.Random, num_vars: int, num_clauses: int, width: int = 3) -> list[list[int]]:
    out = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), min(width, num_vars))
        out.append([v if rng.random() < 0.5 else -v for v in vs])
    return out


def afa_problem(a: Afa, pid: str) -> Problem:
    return Problem(pid, "afa_empty", (Atom("a", "afa", AfaSpec.of(a)),), (("atom", "a"),))


def bre_problem(e: Bre, pid: str) -> Problem:
    """Emptiness problem whose atoms are the leaf automata of ``e``."""
    atoms: list[Atom] = []

    def go(x: Bre):
        if isinstance(x, Leaf):
            name = f"n{len(atoms)}"
            atoms.append(Atom(name, "nfa", LabeledNfa.of(x.nfa)))
            return ("atom", name)
        if isinstance(x, Compl):
            return ("not", go(x.child))
        return ("and" if isinstance(x, Inter) else "or", tuple(go(c) for c in x.children))

    query = go(e)
    return Problem(pid, "bre_empty", tuple(atoms), (query,))


def random_suite(kind: str, count: int, seed: int) -> list[Problem]:
    """``count`` seeded problems; ``kind`` is ``afa`` or ``bre``."""
    rng = random.Random(seed)
    if kind == "afa":
        return [afa_problem(random_afa(rng), f"rand-afa-{seed}-{i:04d}") for i in range(count)]
    if kind == "bre":
        table = letter_table("ab")
        return [bre_problem(random_bre(rng, table), f"rand-bre-{seed}-{i:04d}") for i in range(count)]
    raise ValueError(f"unknown random suite kind {kind!r}")

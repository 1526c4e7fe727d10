"""Incremental SAT solving with assumptions and maximal models.

Literals are non-zero ints in DIMACS convention: ``v`` is the positive
literal of variable ``v`` and ``-v`` its negation.  Variables are allocated
with :meth:`Solver.new_var` and start at 1.

The solver is CDCL: two watched literals, first-UIP learning with
backjumping, activity-ordered decisions broken by variable index, phase
saving and Luby restarts.  Every run is deterministic given the same call
history and seed.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from . import budget
from .core import formula as fm
from .core.formula import Formula

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass(frozen=True)
class SolveResult:
    status: str
    model: tuple[bool, ...] | None = None

    @property
    def sat(self) -> bool:
        return self.status == SAT

    def value(self, lit: int) -> bool:
        if self.model is None:
            raise ValueError("no model for an UNSAT result")
        v = self.model[abs(lit)]
        return v if lit > 0 else not v


def _luby(i: int) -> int:
    """i-th element (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        if (1 << (k - 1)) <= i < (1 << k) - 1:
            i = i - (1 << (k - 1)) + 1
            k = 1
            continue
        k += 1


class Solver:
    def __init__(self, seed: int = 0):
        self.nvars = 0
        self.clauses: list[list[int]] = []
        self.original: list[tuple[int, ...]] = []
        self.watches: list[list[int]] = [[], []]
        self.assign: list[int] = [0]
        self.level: list[int] = [0]
        self.reason: list[int | None] = [None]
        self.activity: list[float] = [0.0]
        self.saved_phase: list[bool] = [False]
        self.prefer: list[bool | None] = [None]
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.ok = True
        self.var_inc = 1.0
        self.heap: list[tuple[float, int]] = []
        self.conflicts = 0
        self._rng = random.Random(seed) if seed else None
        self._true: int | None = None
        self._props = 0

    # -- variables and clauses -------------------------------------------

    def new_var(self) -> int:
        self.nvars += 1
        v = self.nvars
        self.watches.append([])
        self.watches.append([])
        self.assign.append(0)
        self.level.append(0)
        self.reason.append(None)
        act = self._rng.random() * 1e-6 if self._rng else 0.0
        self.activity.append(act)
        self.saved_phase.append(False)
        self.prefer.append(None)
        heapq.heappush(self.heap, (-act, v))
        return v

    def new_vars(self, n: int) -> list[int]:
        return [self.new_var() for _ in range(n)]

    def true_lit(self) -> int:
        if self._true is None:
            self._true = self.new_var()
            self.add_clause([self._true])
        return self._true

    def set_preference(self, variables: Iterable[int], value: bool | None = True) -> None:
        """Branching hint: decide listed variables to ``value`` first."""
        for v in variables:
            self.prefer[v] = value

    @staticmethod
    def _idx(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def _value(self, lit: int) -> int:
        a = self.assign[lit if lit > 0 else -lit]
        return a if lit > 0 else -a

    def add_clause(self, clause: Iterable[int]) -> None:
        lits = list(dict.fromkeys(clause))
        for lit in lits:
            if lit == 0 or abs(lit) > self.nvars:
                raise ValueError(f"literal {lit} refers to an unallocated variable")
        self.original.append(tuple(lits))
        if not self.ok:
            return
        self._backtrack(0)
        if any(-lit in lits for lit in lits):
            return
        kept = []
        for lit in lits:
            val = self._value(lit)
            if val == 1:
                return
            if val == 0:
                kept.append(lit)
        if not kept:
            self.ok = False
            return
        if len(kept) == 1:
            self._enqueue(kept[0], None)
            if self._propagate() is not None:
                self.ok = False
            return
        ci = len(self.clauses)
        self.clauses.append(kept)
        self.watches[self._idx(kept[0])].append(ci)
        self.watches[self._idx(kept[1])].append(ci)

    def add_clauses(self, clauses: Iterable[Iterable[int]]) -> None:
        for c in clauses:
            self.add_clause(c)

    def add_formula(self, f: Formula, var_map: Mapping[Hashable, int]) -> int:
        """Tseitin-encode ``f`` into this solver and return its root literal."""
        clauses, root = tseitin(f, var_map, self.new_var, self.true_lit)
        self.add_clauses(clauses)
        return root

    # -- search ----------------------------------------------------------

    def _decision_level(self) -> int:
        return len(self.trail_lim)

    def _enqueue(self, lit: int, reason: int | None) -> None:
        v = lit if lit > 0 else -lit
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _backtrack(self, lvl: int) -> None:
        if len(self.trail_lim) <= lvl:
            return
        stop = self.trail_lim[lvl]
        assign, heap, act, phase = self.assign, self.heap, self.activity, self.saved_phase
        for lit in self.trail[stop:]:
            v = lit if lit > 0 else -lit
            phase[v] = lit > 0
            assign[v] = 0
            self.reason[v] = None
            heapq.heappush(heap, (-act[v], v))
        del self.trail[stop:]
        del self.trail_lim[lvl:]
        self.qhead = min(self.qhead, len(self.trail))

    def _propagate(self) -> int | None:
        start = self.qhead
        confl = self._propagate_all()
        # one work unit per 64 propagated literals
        self._props += self.qhead - start
        if self._props >= 4:
            budget.tick(self._props >> 2)
            self._props &= 3
        return confl

    def _propagate_all(self) -> int | None:
        trail, clauses, watches, assign = self.trail, self.clauses, self.watches, self.assign
        idx = self._idx
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            false_lit = -p
            wi = idx(false_lit)
            ws = watches[wi]
            kept: list[int] = []
            n = len(ws)
            i = 0
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                fv = assign[first] if first > 0 else -assign[-first]
                if fv == 1:
                    kept.append(ci)
                    continue
                moved = False
                for k in range(2, len(c)):
                    lk = c[k]
                    lv = assign[lk] if lk > 0 else -assign[-lk]
                    if lv != -1:
                        c[1], c[k] = lk, false_lit
                        watches[idx(lk)].append(ci)
                        moved = True
                        break
                if moved:
                    continue
                kept.append(ci)
                if fv == -1:
                    kept.extend(ws[i:])
                    watches[wi] = kept
                    self.qhead = len(trail)
                    return ci
                self._enqueue(first, ci)
            watches[wi] = kept
        return None

    def _bump(self, v: int) -> None:
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.nvars + 1) if self.assign[u] == 0]
            heapq.heapify(self.heap)
        elif self.assign[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl: int) -> tuple[list[int], int]:
        seen: set[int] = set()
        learnt: list[int] = []
        counter = 0
        p: int | None = None
        ci: int | None = confl
        idx = len(self.trail) - 1
        cur = self._decision_level()
        level = self.level
        while True:
            c = self.clauses[ci]
            for q in c if p is None else c[1:]:
                v = q if q > 0 else -q
                if v not in seen and level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if level[v] >= cur:
                        counter += 1
                    else:
                        learnt.append(q)
            while True:
                lit = self.trail[idx]
                if (lit if lit > 0 else -lit) in seen:
                    break
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            pv = p if p > 0 else -p
            ci = self.reason[pv]
            seen.discard(pv)
            counter -= 1
            if counter == 0:
                break
        learnt.insert(0, -p)
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, level[abs(learnt[1])]

    def _pick(self) -> int | None:
        heap, assign, act = self.heap, self.assign, self.activity
        while heap:
            neg_act, v = heap[0]
            if assign[v] != 0 or -neg_act != act[v]:
                heapq.heappop(heap)
                continue
            return v
        for v in range(1, self.nvars + 1):
            if assign[v] == 0:
                return v
        return None

    def solve_under(self, assumptions: Sequence[int] = ()) -> SolveResult:
        """Decide the clause set together with the assumption literals."""
        for lit in assumptions:
            if lit == 0 or abs(lit) > self.nvars:
                raise ValueError(f"assumption {lit} refers to an unallocated variable")
        if not self.ok:
            return SolveResult(UNSAT)
        self._backtrack(0)
        if self._propagate() is not None:
            self.ok = False
            return SolveResult(UNSAT)
        restart_no = 1
        budget_left = 100 * _luby(restart_no)
        assumptions = list(assumptions)
        while True:
            confl = self._propagate()
            if confl is not None:
                self.conflicts += 1
                if self.conflicts & 63 == 0:
                    budget.tick(64)
                if self._decision_level() == 0:
                    self.ok = False
                    return SolveResult(UNSAT)
                learnt, back = self._analyze(confl)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[self._idx(learnt[0])].append(ci)
                    self.watches[self._idx(learnt[1])].append(ci)
                    self._enqueue(learnt[0], ci)
                self.var_inc *= 1.0 / 0.95
                budget_left -= 1
                if budget_left <= 0:
                    restart_no += 1
                    budget_left = 100 * _luby(restart_no)
                    self._backtrack(0)
                continue
            lvl = self._decision_level()
            if lvl < len(assumptions):
                a = assumptions[lvl]
                val = self._value(a)
                if val == -1:
                    self._backtrack(0)
                    return SolveResult(UNSAT)
                self.trail_lim.append(len(self.trail))
                if val == 0:
                    self._enqueue(a, None)
                continue
            v = self._pick()
            if v is None:
                model = (False,) + tuple(a == 1 for a in self.assign[1:])
                self._backtrack(0)
                return SolveResult(SAT, model)
            pref = self.prefer[v]
            phase = self.saved_phase[v] if pref is None else pref
            self.trail_lim.append(len(self.trail))
            self._enqueue(v if phase else -v, None)

    def solve(self) -> SolveResult:
        return self.solve_under(())

    def maximal_model(self, assumptions: Sequence[int], maximize_vars: Iterable[int]) -> SolveResult:
        """A model whose true set on ``maximize_vars`` cannot be enlarged.

        Solves with a branching hint toward true, then repeatedly asks for a
        model keeping all currently-true variables and flipping at least one
        currently-false one, until that query is UNSAT.
        """
        targets = sorted(set(maximize_vars))
        saved = [self.prefer[v] for v in targets]
        self.set_preference(targets, True)
        try:
            res = self.solve_under(assumptions)
            if not res.sat:
                return res
            while True:
                on = [v for v in targets if res.model[v]]
                off = [v for v in targets if not res.model[v]]
                if not off:
                    return res
                act = self.new_var()
                self.add_clause([-act, *off])
                better = self.solve_under([*assumptions, *on, act])
                self.add_clause([-act])
                if not better.sat:
                    return res
                res = better
        finally:
            for v, p in zip(targets, saved):
                self.prefer[v] = p

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.nvars} {len(self.original)}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.original]
        return "\n".join(lines) + "\n"


def maximal_model(solver: Solver, assumptions: Sequence[int], maximize_vars: Iterable[int]) -> SolveResult:
    return solver.maximal_model(assumptions, maximize_vars)


def tseitin(
    f: Formula,
    var_map: Mapping[Hashable, int] | Callable[[Hashable], int],
    new_var: Callable[[], int],
    true_lit: Callable[[], int] | None = None,
) -> tuple[list[list[int]], int]:
    """Equisatisfiable CNF for ``f``; returns (clauses, root literal).

    ``var_map`` maps variable keys to solver variables.  Predicate atoms must
    be substituted away beforehand.
    """
    lookup = var_map if callable(var_map) else var_map.__getitem__
    clauses: list[list[int]] = []
    memo: dict[int, int] = {}
    const: list[int] = []

    def truth() -> int:
        if not const:
            if true_lit is not None:
                const.append(true_lit())
            else:
                t = new_var()
                clauses.append([t])
                const.append(t)
        return const[0]

    def go(g: Formula) -> int:
        hit = memo.get(g.uid)
        if hit is not None:
            return hit
        op = g.op
        if op == fm.VAR:
            try:
                out = lookup(g.args[0])
            except KeyError:
                raise ValueError(f"unmapped atom {g.args[0]!r}") from None
        elif op == fm.TRUE_OP:
            out = truth()
        elif op == fm.FALSE_OP:
            out = -truth()
        elif op == fm.NOT:
            out = -go(g.args[0])
        elif op == fm.PRED:
            raise ValueError(f"unmapped atom {g.args[0]!r}")
        else:
            kids = [go(c) for c in g.args]
            t = new_var()
            if op == fm.AND:
                for k in kids:
                    clauses.append([-t, k])
                clauses.append([t, *(-k for k in kids)])
            else:
                for k in kids:
                    clauses.append([t, -k])
                clauses.append([-t, *kids])
            out = t
        memo[g.uid] = out
        return out

    root = go(f)
    return clauses, root


def exactly_one(lits: Sequence[int]) -> list[list[int]]:
    """Pairwise encoding; fine for the small selector sets used here."""
    out = [list(lits)]
    for i in range(len(lits)):
        for j in range(i + 1, len(lits)):
            out.append([-lits[i], -lits[j]])
    return out

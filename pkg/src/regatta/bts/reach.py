"""Bounded model checking interleaved with k-induction."""

from __future__ import annotations

from dataclasses import dataclass

from .. import budget
from ..core import formula as fm
from ..sat import Solver
from .system import Bts, primed

REACHABLE, UNREACHABLE, UNKNOWN = "reachable", "unreachable", "unknown"


@dataclass(frozen=True)
class ReachVerdict:
    """``depth`` is the trace length when reachable and the induction depth when proved."""

    status: str
    depth: int
    states: tuple[dict, ...] = ()
    inputs: tuple[dict, ...] = ()


class _Unroller:
    """Incremental unrolling of a BTS into one solver.

    Frames after the first are kept out of init, and all frames are
    pairwise distinct (simple paths); both restrictions keep every shortest
    path, so they are safe for BMC and strengthen the induction step.
    """

    def __init__(self, b: Bts, with_init: bool, seed: int):
        self.b = b
        self.s = Solver(seed)
        self.frames: list[dict[str, int]] = []
        self.steps: list[dict[str, int]] = []
        self.with_init = with_init
        self.add_frame()
        if with_init:
            self.s.add_clause([self.encode(b.init, 0)])

    def encode(self, f: fm.Formula, k: int) -> int:
        return self.s.add_formula(f, self.frames[k])

    def add_frame(self) -> None:
        s = self.s
        frame = {name: s.new_var() for name in self.b.state_vars}
        k = len(self.frames)
        self.frames.append(frame)
        if k == 0:
            return
        step = {name: s.new_var() for name in self.b.input_vars}
        self.steps.append(step)
        var_map = dict(self.frames[k - 1])
        var_map.update({primed(n): v for n, v in frame.items()})
        var_map.update(step)
        s.add_clause([s.add_formula(self.b.trans, var_map)])
        s.add_clause([-self.encode(self.b.init, k)])
        for j in range(k):
            self._differ(self.frames[j], frame)

    def _differ(self, f1: dict[str, int], f2: dict[str, int]) -> None:
        s = self.s
        diffs = []
        for name in self.b.state_vars:
            x, y = f1[name], f2[name]
            d = s.new_var()
            s.add_clause([-d, x, y])
            s.add_clause([-d, -x, -y])
            diffs.append(d)
        s.add_clause(diffs)

    def trace(self, model, k: int) -> tuple[tuple[dict, ...], tuple[dict, ...]]:
        states = tuple({n: model[v] for n, v in self.frames[i].items()} for i in range(k + 1))
        inputs = tuple({n: model[v] for n, v in self.steps[i].items()} for i in range(k))
        return states, inputs


def check_reach(b: Bts, max_depth: int = 64, seed: int = 0) -> ReachVerdict:
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    fw = _Unroller(b, True, seed)
    step = _Unroller(b, False, seed)
    for k in range(max_depth + 1):
        budget.tick()
        bad_k = fw.encode(b.bad, k)
        res = fw.s.solve_under([bad_k])
        if res.sat:
            states, inputs = fw.trace(res.model, k)
            return ReachVerdict(REACHABLE, k, states, inputs)
        fw.s.add_clause([-bad_k])
        step.s.add_clause([-step.encode(b.bad, k)])
        step.add_frame()
        if not step.s.solve_under([step.encode(b.bad, k + 1)]).sat:
            return ReachVerdict(UNREACHABLE, k + 1)
        fw.add_frame()
        if not fw.s.solve().sat:
            return ReachVerdict(UNREACHABLE, k + 1)
    return ReachVerdict(UNKNOWN, max_depth)


def trace_word(v: ReachVerdict, direction: str) -> tuple[int, ...]:
    """Minterm word read along a reachable trace (reversed for backward systems)."""
    out = []
    for step in v.inputs:
        out.append(next(int(n[1:]) for n, on in step.items() if on and n.startswith("a")))
    return tuple(out) if direction == "fw" else tuple(reversed(out))


def replays(b: Bts, v: ReachVerdict) -> bool:
    """Whether the trace starts in init, ends in bad and follows trans."""
    if v.status != REACHABLE:
        return True
    st = v.states
    if not fm.eval_assignment(b.init, st[0]) or not fm.eval_assignment(b.bad, st[-1]):
        return False
    for i, inp in enumerate(v.inputs):
        env = dict(st[i])
        env.update({primed(n): x for n, x in st[i + 1].items()})
        env.update(inp)
        if not fm.eval_assignment(b.trans, env):
            return False
    return True



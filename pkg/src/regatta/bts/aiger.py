"""ASCII AIGER export of a BTS, and an importer for files written here.

Latches are functional, so the relational transition is encoded with one
free input ``n_q`` per state variable proposing the next state.  Conjuncts
of the form ``q' → X`` (X free of next-state variables) are folded into the
latch function ``next(q) = n_q ∧ X``; every other conjunct is checked by a
validity latch.  Since AIGER latches start at 0, a boot latch marks the first
step, in which the state is loaded from the free inputs and the validity
latch records whether that state satisfies init.
"""

from __future__ import annotations

from ..core import formula as fm
from .system import Bts, primed


class _Aig:
    def __init__(self, num_inputs: int, num_latches: int):
        self.base = num_inputs + num_latches
        self.gates: list[tuple[int, int]] = []
        self.strash: dict[tuple[int, int], int] = {}

    def and_(self, a: int, b: int) -> int:
        if a == 0 or b == 0 or a == b ^ 1:
            return 0
        if a == 1:
            return b
        if b == 1 or a == b:
            return a
        key = (max(a, b), min(a, b))
        hit = self.strash.get(key)
        if hit is None:
            self.gates.append(key)
            hit = 2 * (self.base + len(self.gates))
            self.strash[key] = hit
        return hit

    def or_(self, a: int, b: int) -> int:
        return self.and_(a ^ 1, b ^ 1) ^ 1

    def formula(self, f: fm.Formula, lit_of: dict[str, int], memo: dict[int, int]) -> int:
        hit = memo.get(f.uid)
        if hit is not None:
            return hit
        op = f.op
        if op == fm.VAR:
            name = f.args[0]
            if name not in lit_of:
                raise ValueError(f"unmapped variable {name!r}")
            out = lit_of[name]
        elif op == fm.TRUE_OP:
            out = 1
        elif op == fm.FALSE_OP:
            out = 0
        elif op == fm.NOT:
            out = self.formula(f.args[0], lit_of, memo) ^ 1
        elif op == fm.AND:
            out = 1
            for c in f.args:
                out = self.and_(out, self.formula(c, lit_of, memo))
        elif op == fm.OR:
            out = 0
            for c in f.args:
                out = self.or_(out, self.formula(c, lit_of, memo))
        else:
            raise ValueError(f"cannot export atom {f!r}")
        memo[f.uid] = out
        return out


def _split_trans(b: Bts) -> tuple[dict[str, fm.Formula], list[fm.Formula]]:
    """Separate ``q' → X`` conjuncts (one per state at most) from the rest."""
    nexts = {primed(s): s for s in b.state_vars}
    parts = b.trans.args if b.trans.op == fm.AND else (b.trans,)
    guards: dict[str, fm.Formula] = {}
    rest = []
    for p in parts:
        if p.op == fm.OR:
            heads = [c for c in p.args if c.op == fm.NOT and c.args[0].op == fm.VAR and c.args[0].args[0] in nexts]
            if len(heads) == 1:
                others = [c for c in p.args if c is not heads[0]]
                if not any(v in nexts for o in others for v in fm.variables(o)):
                    s = nexts[heads[0].args[0].args[0]]
                    if s not in guards:
                        guards[s] = fm.disj(others)
                        continue
        rest.append(p)
    return guards, rest


def export_aiger(b: Bts) -> str:
    n = len(b.state_vars)
    choice = [f"n_{s}" for s in b.state_vars]
    inputs = choice + list(b.input_vars)
    latch_names = list(b.state_vars) + ["boot", "ok"]
    aig = _Aig(len(inputs), len(latch_names))
    lit = {name: 2 * (i + 1) for i, name in enumerate(inputs)}
    for j, name in enumerate(latch_names):
        lit[name] = 2 * (len(inputs) + j + 1)
    boot, ok = lit["boot"], lit["ok"]
    cur = {name: lit[name] for name in b.state_vars}
    cur.update({name: lit[name] for name in b.input_vars})
    cur.update({primed(s): lit[f"n_{s}"] for s in b.state_vars})
    memo: dict[int, int] = {}
    guards, rest = _split_trans(b)

    nexts = []
    for s in b.state_vars:
        g = guards.get(s)
        gl = 1 if g is None else aig.or_(boot ^ 1, aig.formula(g, cur, memo))
        nexts.append(aig.and_(lit[f"n_{s}"], gl))
    valid = aig.formula(fm.conj(rest), cur, memo)
    loaded = {s: lit[f"n_{s}"] for s in b.state_vars}
    init_n = aig.formula(b.init, loaded, {})
    ok_next = aig.or_(aig.and_(boot, aig.and_(ok, valid)), aig.and_(boot ^ 1, init_n))
    nexts += [1, ok_next]
    bad = aig.and_(boot, aig.and_(ok, aig.formula(b.bad, cur, memo)))

    ni, nl, na = len(inputs), len(latch_names), len(aig.gates)
    lines = [f"aag {ni + nl + na} {ni} {nl} 1 {na}"]
    lines += [str(2 * (i + 1)) for i in range(ni)]
    lines += [f"{2 * (ni + j + 1)} {nx}" for j, nx in enumerate(nexts)]
    lines.append(str(bad))
    for g, (x, y) in enumerate(aig.gates):
        lines.append(f"{2 * (ni + nl + g + 1)} {x} {y}")
    lines += [f"i{i} {name}" for i, name in enumerate(inputs)]
    lines += [f"l{j} {name}" for j, name in enumerate(latch_names)]
    lines.append("o0 bad")
    lines.append("c")
    lines.append(f"{b.direction} {n}")
    return "\n".join(lines) + "\n"


def import_aiger(text: str) -> Bts:
    """Read an ``aag`` file as a BTS: latches start at 0 and follow their next functions."""
    lines = text.splitlines()
    head = lines[0].split()
    if head[0] != "aag" or len(head) != 6:
        raise ValueError("not an ASCII AIGER header")
    m, ni, nl, no, na = map(int, head[1:])
    if no != 1:
        raise ValueError("expected exactly one output")
    pos = 1
    inputs = [int(lines[pos + i]) for i in range(ni)]
    pos += ni
    latches = [tuple(map(int, lines[pos + j].split())) for j in range(nl)]
    pos += nl
    out = int(lines[pos])
    pos += 1
    gates = {}
    for g in range(na):
        lhs, x, y = map(int, lines[pos + g].split())
        if not (x < lhs and y < lhs):
            raise ValueError(f"gate {lhs} is not topologically ordered")
        gates[lhs] = (x, y)
    names = {}
    for line in lines[pos + na :]:
        if line == "c":
            break
        kind, name = line.split(" ", 1)
        idx = int(kind[1:])
        if kind[0] == "i":
            names[inputs[idx]] = name
        elif kind[0] == "l":
            names[latches[idx][0]] = name
    var_of = {v: names.get(v, f"v{v}") for v in [*inputs, *(l for l, _ in latches)]}
    memo: dict[int, fm.Formula] = {}

    def to_formula(x: int) -> fm.Formula:
        if x in (0, 1):
            return fm.TRUE if x else fm.FALSE
        base = x & ~1
        f = memo.get(base)
        if f is None:
            if base in gates:
                a, b = gates[base]
                f = fm.conj([to_formula(a), to_formula(b)])
            else:
                f = fm.var(var_of[base])
            memo[base] = f
        return fm.neg(f) if x & 1 else f

    state = tuple(var_of[l] for l, _ in latches)
    trans = fm.conj(fm.iff(fm.var(primed(var_of[l])), to_formula(nx)) for l, nx in latches)
    init = fm.conj(fm.neg(fm.var(s)) for s in state)
    return Bts(state, tuple(var_of[i] for i in inputs), init, to_formula(out), trans, "aiger")

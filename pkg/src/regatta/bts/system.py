"""Boolean transition systems obtained from AFAs."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import formula as fm
from ..core.automata import Afa


def state_name(q: int) -> str:
    return f"q{q}"


def primed(name: str) -> str:
    return name + "'"


def selector_name(m: int) -> str:
    return f"a{m}"


@dataclass(frozen=True)
class Bts:
    """State variables, inputs and formulas over them.

    ``trans`` relates unprimed (current) and primed (next) state variables
    and the inputs.  ``direction`` records which AFA reading produced it.
    """

    state_vars: tuple[str, ...]
    input_vars: tuple[str, ...]
    init: fm.Formula
    bad: fm.Formula
    trans: fm.Formula
    direction: str = "fw"

    def __post_init__(self):
        states = set(self.state_vars)
        allowed = states | {primed(s) for s in states} | set(self.input_vars)
        for name, f, scope in (("init", self.init, states), ("bad", self.bad, states), ("trans", self.trans, allowed)):
            extra = fm.variables(f) - scope
            if extra:
                raise ValueError(f"{name} mentions undeclared variables {sorted(map(str, extra))}")
            if fm.predicates(f):
                raise ValueError(f"{name} mentions symbol predicates")


def one_hot(names: list[str]) -> fm.Formula:
    vs = [fm.var(s) for s in names]
    parts = [fm.disj(vs)]
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            parts.append(fm.neg(fm.conj([vs[i], vs[j]])))
    return fm.conj(parts)


def _symbolic_delta(a: Afa, q: int, rename) -> fm.Formula:
    table = a.table

    def on_pred(cc):
        return fm.disj(fm.var(selector_name(m)) for m in table.minterms_within(cc))

    return fm.substitute(a.delta[q], on_var=lambda r: fm.var(rename(r)), on_pred=on_pred)


def _rename(f: fm.Formula, rename) -> fm.Formula:
    return fm.substitute(f, on_var=lambda r: fm.var(rename(r)))


def build_fw_bts(a: Afa) -> Bts:
    """init = I, bad = F, trans = ⋀_q (q → Δ(q) over next states) ∧ one-hot selectors."""
    states = [state_name(q) for q in range(a.num_states)]
    sels = [selector_name(m) for m in range(len(a.table))]
    nxt = lambda r: primed(state_name(r))  # noqa: E731
    trans = fm.conj(
        [*(fm.implies(fm.var(states[q]), _symbolic_delta(a, q, nxt)) for q in range(a.num_states)), one_hot(sels)]
    )
    return Bts(tuple(states), tuple(sels), _rename(a.init, state_name), _rename(a.final, state_name), trans, "fw")


def build_bw_bts(a: Afa) -> Bts:
    """init = F, bad = I, trans = ⋀_q (next q → Δ(q) over current states) ∧ one-hot selectors."""
    states = [state_name(q) for q in range(a.num_states)]
    sels = [selector_name(m) for m in range(len(a.table))]
    trans = fm.conj(
        [
            *(
                fm.implies(fm.var(primed(states[q])), _symbolic_delta(a, q, state_name))
                for q in range(a.num_states)
            ),
            one_hot(sels),
        ]
    )
    return Bts(tuple(states), tuple(sels), _rename(a.final, state_name), _rename(a.init, state_name), trans, "bw")

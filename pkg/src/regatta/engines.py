"""Registry of decision engines under stable names.

Every engine answers the emptiness question behind a problem: for inclusion
X ⊆ Y that is emptiness of X ∩ ¬Y, for equivalence emptiness of the
symmetric difference.  A result is a :class:`~regatta.core.automata.Verdict`.
"""

from __future__ import annotations

from typing import Callable

from .afa import afa_of_bre, antichain_empty_fw, antisat_empty, dealternate_bw, dealternate_fw
from .bench.problem import Instance
from .bts import REACHABLE, UNREACHABLE, build_bw_bts, check_reach, trace_word
from .core.automata import Afa, Nfa, Verdict
from .nfa import build_bre_nfa, eval_bre, hkc_equivalent, is_empty, union

BRE_KINDS = frozenset({"bre_empty", "inclusion", "equivalence"})
ALL_KINDS = BRE_KINDS | {"afa_empty"}


class Unknown(Exception):
    """The engine gave up without an answer (e.g. depth bound reached)."""


class Options:
    def __init__(self, max_depth: int = 64, seed: int = 0):
        self.max_depth = max_depth
        self.seed = seed


def afa_of_instance(inst: Instance) -> Afa:
    """The AFA behind a problem (built from the BRE tree unless given directly)."""
    return inst.afa if inst.afa is not None else afa_of_bre(inst.emptiness_tree())


def _enfa(inst: Instance, opt: Options) -> Verdict:
    return eval_bre(inst.emptiness_tree(), "nfa")


def _dfa(inst: Instance, opt: Options) -> Verdict:
    return eval_bre(inst.emptiness_tree(), "dfa")


def _antichain_fw(inst: Instance, opt: Options) -> Verdict:
    return antichain_empty_fw(afa_of_instance(inst))


def _antisat(inst: Instance, opt: Options) -> Verdict:
    return antisat_empty(afa_of_instance(inst), seed=opt.seed)


def _dealt_fw(inst: Instance, opt: Options) -> Verdict:
    return is_empty(dealternate_fw(afa_of_instance(inst)))


def _dealt_bw(inst: Instance, opt: Options) -> Verdict:
    return is_empty(dealternate_bw(afa_of_instance(inst)))


def _bts_bmc(inst: Instance, opt: Options) -> Verdict:
    b = build_bw_bts(afa_of_instance(inst))
    v = check_reach(b, opt.max_depth, opt.seed)
    if v.status == REACHABLE:
        return Verdict(False, trace_word(v, b.direction), inst.table)
    if v.status == UNREACHABLE:
        return Verdict(True, None, inst.table)
    raise Unknown(f"no verdict within depth {opt.max_depth}")


def _hkc(inst: Instance, opt: Options) -> Verdict:
    kind = inst.problem.kind

    if kind == "bre_empty":
        res = hkc_equivalent(build_bre_nfa(inst.exprs[0]), Nfa.empty_language(inst.table))
    elif kind == "inclusion":
        a, b = (build_bre_nfa(e) for e in inst.exprs)
        res = hkc_equivalent(union(a, b), b)
    else:
        a, b = (build_bre_nfa(e) for e in inst.exprs)
        res = hkc_equivalent(a, b)
    return Verdict(res.holds, res.counterexample, inst.table)


ENGINES: dict[str, tuple[Callable[[Instance, Options], Verdict], frozenset]] = {
    "enfa": (_enfa, BRE_KINDS),
    "dfa": (_dfa, BRE_KINDS),
    "antichain-fw": (_antichain_fw, ALL_KINDS),
    "antisat": (_antisat, ALL_KINDS),
    "dealt-fw": (_dealt_fw, ALL_KINDS),
    "dealt-bw": (_dealt_bw, ALL_KINDS),
    "hkc": (_hkc, BRE_KINDS),
    "bts-bmc": (_bts_bmc, ALL_KINDS),
}
ENGINE_NAMES = tuple(ENGINES)


def applies(engine: str, kind: str) -> bool:
    return kind in ENGINES[engine][1]


def default_engine(kind: str) -> str:
    return "antisat" if kind == "afa_empty" else "enfa"


def run_engine(engine: str, inst: Instance, opt: Options | None = None) -> Verdict:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {', '.join(ENGINE_NAMES)}")
    fn, kinds = ENGINES[engine]
    if inst.problem.kind not in kinds:
        raise ValueError(f"engine {engine} does not handle {inst.problem.kind} problems")
    return fn(inst, opt or Options())

"""Explicit NFAs over minterm ids, alternating and Boolean automata.

Configurations (sets of AFA states) are plain ``int`` bitmasks: bit ``q`` set
means state ``q`` is in the configuration.  Subset tests are word-level
``a & ~b == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .. import budget
from . import formula as fm
from .charclass import MintermTable
from .formula import Formula

Configuration = int


def config_of(states: Iterable[int]) -> Configuration:
    c = 0
    for q in states:
        c |= 1 << q
    return c


def states_of(c: Configuration) -> list[int]:
    out = []
    q = 0
    while c:
        if c & 1:
            out.append(q)
        c >>= 1
        q += 1
    return out


def is_subset(a: Configuration, b: Configuration) -> bool:
    return a & ~b == 0


def minimize_antichain(configs: Iterable[Configuration]) -> list[Configuration]:
    """Keep only the subset-minimal elements (sorted by popcount, then value)."""
    out: list[Configuration] = []
    for c in sorted(set(configs), key=lambda x: (bin(x).count("1"), x)):
        budget.work(len(out) + 1)
        if not any(m & ~c == 0 for m in out):
            out.append(c)
    return out


@dataclass(frozen=True)
class Verdict:
    """Answer of an emptiness engine; ``witness`` is a word of minterm ids."""

    empty: bool
    witness: tuple[int, ...] | None = None
    table: MintermTable | None = field(default=None, compare=False, repr=False)

    def word(self) -> tuple[int, ...] | None:
        if self.witness is None or self.table is None:
            return None
        return self.table.word(self.witness)

    def text(self) -> str:
        w = self.word()
        return "" if w is None else "".join(chr(cp) for cp in w)


class Nfa:
    """Epsilon-free NFA over the minterm alphabet of ``table``.

    Transitions are stored per state as ``{minterm: (sorted targets)}``.
    """

    __slots__ = ("num_states", "delta", "initial", "final", "table")

    def __init__(
        self,
        num_states: int,
        edges: Iterable[tuple[int, int, int]],
        initial: Iterable[int],
        final: Iterable[int],
        table: MintermTable,
    ):
        build: list[dict[int, set[int]]] = [dict() for _ in range(num_states)]
        nm = len(table)
        for q, m, r in edges:
            if not (0 <= q < num_states and 0 <= r < num_states):
                raise ValueError(f"state out of range in edge {(q, m, r)}")
            if not 0 <= m < nm:
                raise ValueError(f"minterm {m} out of range")
            build[q].setdefault(m, set()).add(r)
        self.num_states = num_states
        self.delta = tuple({m: tuple(sorted(ts)) for m, ts in sorted(d.items())} for d in build)
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        self.table = table
        for q in self.initial | self.final:
            if not 0 <= q < num_states:
                raise ValueError(f"state {q} out of range")

    @classmethod
    def from_labeled(cls, num_states, edges, initial, final, table: MintermTable) -> "Nfa":
        """Build from edges labelled by character classes."""
        flat = [(q, m, r) for q, cc, r in edges for m in table.minterms_of(cc)]
        return cls(num_states, flat, initial, final, table)

    @classmethod
    def empty_language(cls, table: MintermTable) -> "Nfa":
        return cls(1, [], [0], [], table)

    @classmethod
    def universal(cls, table: MintermTable) -> "Nfa":
        return cls(1, [(0, m, 0) for m in range(len(table))], [0], [0], table)

    @property
    def transitions(self) -> list[list[tuple[int, int]]]:
        return [[(m, r) for m, ts in d.items() for r in ts] for d in self.delta]

    def edges(self) -> Iterable[tuple[int, int, int]]:
        for q, d in enumerate(self.delta):
            for m, ts in d.items():
                for r in ts:
                    yield q, m, r

    def num_transitions(self) -> int:
        return sum(len(ts) for d in self.delta for ts in d.values())

    def successors(self, q: int, m: int) -> tuple[int, ...]:
        return self.delta[q].get(m, ())

    def post(self, states: Iterable[int], m: int) -> frozenset[int]:
        out: set[int] = set()
        for q in states:
            out.update(self.delta[q].get(m, ()))
        return frozenset(out)

    def accepts(self, word: Sequence[int]) -> bool:
        cur = self.initial
        for m in word:
            cur = self.post(cur, m)
            if not cur:
                return False
        return bool(cur & self.final)

    def accepts_text(self, text: str) -> bool:
        word = []
        for ch in text:
            m = self.table.locate(ord(ch))
            if m is None:
                return False
            word.append(m)
        return self.accepts(word)

    def reachable(self) -> set[int]:
        seen = set(self.initial)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for ts in self.delta[q].values():
                for r in ts:
                    if r not in seen:
                        seen.add(r)
                        stack.append(r)
        return seen

    def restrict(self, keep: Iterable[int]) -> "Nfa":
        """Sub-automaton on ``keep``, renumbered in ascending order."""
        order = sorted(keep)
        idx = {q: i for i, q in enumerate(order)}
        edges = [(idx[q], m, idx[r]) for q, m, r in self.edges() if q in idx and r in idx]
        return Nfa(
            len(order),
            edges,
            (idx[q] for q in self.initial if q in idx),
            (idx[q] for q in self.final if q in idx),
            self.table,
        )

    def trim_unreachable(self) -> "Nfa":
        reach = self.reachable()
        if len(reach) == self.num_states:
            return self
        if not reach:
            return Nfa.empty_language(self.table)
        return self.restrict(reach)

    def retarget(self, table: MintermTable) -> "Nfa":
        """Re-express over a finer minterm table."""
        mapping = [table.minterms_of(cc) for cc in self.table.minterms]
        edges = [(q, m2, r) for q, m, r in self.edges() for m2 in mapping[m]]
        return Nfa(self.num_states, edges, self.initial, self.final, table)

    def __repr__(self) -> str:
        return (
            f"Nfa(states={self.num_states}, transitions={self.num_transitions()}, "
            f"initial={sorted(self.initial)}, final={sorted(self.final)})"
        )


def _check_width(num_states: int, formulas: Iterable[Formula]) -> None:
    for f in formulas:
        for q in fm.variables(f):
            if not isinstance(q, int) or not 0 <= q < num_states:
                raise ValueError(f"state variable {q!r} out of range")


class Bfa:
    """Boolean automaton: any Boolean combination in Δ, I and F. Kept as authored."""

    def __init__(self, num_states: int, delta: Sequence[Formula], init: Formula, final: Formula, table: MintermTable):
        if len(delta) != num_states:
            raise ValueError("one transition formula per state required")
        _check_width(num_states, [*delta, init, final])
        self.num_states = num_states
        self.delta = tuple(delta)
        self.init = init
        self.final = final
        self.table = table


class Afa:
    """Alternating automaton in general form.

    Δ(q) and I must be positive in state variables, F negative.  All three are
    stored in NNF.  Per-(state, minterm) specializations are cached lazily.
    """

    def __init__(self, num_states: int, delta: Sequence[Formula], init: Formula, final: Formula, table: MintermTable):
        if len(delta) != num_states:
            raise ValueError("one transition formula per state required")
        delta = tuple(fm.nnf(f) for f in delta)
        init = fm.nnf(init)
        final = fm.nnf(final)
        _check_width(num_states, [*delta, init, final])
        for q, f in enumerate(delta):
            if not fm.is_positive(f):
                raise ValueError(f"transition formula of q{q} is not positive in states")
        if not fm.is_positive(init):
            raise ValueError("initial formula is not positive in states")
        if not fm.is_negative(final):
            raise ValueError("final formula is not negative in states")
        if fm.predicates(init) or fm.predicates(final):
            raise ValueError("initial/final formulas must not mention symbols")
        self.num_states = num_states
        self.delta = delta
        self.init = init
        self.final = final
        self.table = table
        self._spec: dict[tuple[int, int], Formula] = {}
        self._eval: dict[tuple[int, int], object] = {}
        self._models: dict[tuple[int, int], list[int]] = {}
        self._init_fn = fm.compile_config_predicate(init)
        self._final_fn = fm.compile_config_predicate(final)

    @property
    def full(self) -> Configuration:
        return (1 << self.num_states) - 1

    def specialize(self, q: int, m: int) -> Formula:
        """Δ(q) with symbol predicates decided for minterm ``m``."""
        key = (q, m)
        out = self._spec.get(key)
        if out is None:
            table = self.table
            out = fm.substitute(
                self.delta[q], on_pred=lambda cc: fm.TRUE if table.pred_holds(m, cc) else fm.FALSE
            )
            self._spec[key] = out
        return out

    def holds(self, q: int, m: int, c: Configuration) -> bool:
        """Whether (c, m) satisfies Δ(q)."""
        key = (q, m)
        fn = self._eval.get(key)
        if fn is None:
            fn = fm.compile_config_predicate(self.specialize(q, m))
            self._eval[key] = fn
        return fn(c)

    def min_models(self, q: int, m: int) -> list[Configuration]:
        """Subset-minimal configurations satisfying Δ(q) under minterm ``m``."""
        key = (q, m)
        out = self._models.get(key)
        if out is None:
            out = positive_min_models(self.specialize(q, m))
            self._models[key] = out
        return out

    def is_initial(self, c: Configuration) -> bool:
        return self._init_fn(c)

    def is_final(self, c: Configuration) -> bool:
        return self._final_fn(c)

    def __repr__(self) -> str:
        return f"Afa(states={self.num_states}, minterms={len(self.table)})"


def positive_min_models(f: Formula) -> list[Configuration]:
    """Minimal models of a predicate-free formula positive in states (DNF with absorption)."""
    memo: dict[int, list[int]] = {}

    def go(g: Formula) -> list[int]:
        hit = memo.get(g.uid)
        if hit is not None:
            return hit
        op = g.op
        if op == fm.TRUE_OP:
            out = [0]
        elif op == fm.FALSE_OP:
            out = []
        elif op == fm.VAR:
            out = [1 << g.args[0]]
        elif op == fm.OR:
            out = minimize_antichain(c for child in g.args for c in go(child))
        elif op == fm.AND:
            acc = [0]
            for child in g.args:
                sub = go(child)
                acc = minimize_antichain(a | b for a in acc for b in sub)
                if not acc:
                    break
            out = acc
        else:
            raise ValueError(f"formula not positive/predicate-free: {g!r}")
        memo[g.uid] = out
        return out

    return go(f)


def bfa_to_afa(b: Bfa) -> Afa:
    """Encode a Boolean automaton as an AFA with twice as many states.

    State ``q + n`` is the dual of ``q`` with Δ = ¬Δ(q).  Negative state
    literals in Δ and I become duals; in F a positive literal ``q`` becomes
    ``¬dual(q)``.  If F mentions some state with both polarities, F is first
    Shannon-expanded on those states so that the rewrite stays exact, and F
    finally forbids q together with its dual wherever it would allow it.
    """
    n = b.num_states

    def lit_map(g: Formula) -> Formula:
        op = g.op
        if op == fm.VAR:
            return g
        if op == fm.NOT:
            inner = g.args[0]
            if inner.op == fm.VAR:
                return fm.var(inner.args[0] + n)
            return g
        if op == fm.AND:
            return fm.conj(lit_map(c) for c in g.args)
        if op == fm.OR:
            return fm.disj(lit_map(c) for c in g.args)
        return g

    delta = [lit_map(fm.nnf(f)) for f in b.delta]
    delta += [lit_map(fm.nnf(fm.neg(f))) for f in b.delta]
    init = lit_map(fm.nnf(b.init))
    final = _final_to_negative(fm.nnf(b.final), n)
    # A run may end in a configuration holding both q and its dual, which no
    # valuation matches.  F is downward closed, so it admits such a
    # configuration iff it admits {q, dual(q)}; forbid the pair exactly there.
    guards = [
        fm.disj([fm.neg(fm.var(q)), fm.neg(fm.var(q + n))])
        for q in range(n)
        if fm.eval_formula(final, (1 << q) | (1 << (q + n)))
    ]
    final = fm.conj([final, *guards])
    return Afa(2 * n, delta, init, final, b.table)


def _binate_vars(f: Formula) -> list[int]:
    pos: set[int] = set()
    negs: set[int] = set()
    stack, seen = [f], set()
    while stack:
        g = stack.pop()
        if g.uid in seen:
            continue
        seen.add(g.uid)
        if g.op == fm.VAR:
            pos.add(g.args[0])
        elif g.op == fm.NOT and g.args[0].op == fm.VAR:
            negs.add(g.args[0].args[0])
        elif g.op in (fm.AND, fm.OR):
            stack.extend(g.args)
    return sorted(pos & negs)


def _final_to_negative(f: Formula, n: int) -> Formula:
    def rewrite(g: Formula) -> Formula:
        op = g.op
        if op == fm.VAR:
            return fm.neg(fm.var(g.args[0] + n))
        if op == fm.NOT:
            return g
        if op == fm.AND:
            return fm.conj(rewrite(c) for c in g.args)
        if op == fm.OR:
            return fm.disj(rewrite(c) for c in g.args)
        return g

    binate = _binate_vars(f)
    if not binate:
        return rewrite(f)
    branches = []
    for bits in product((False, True), repeat=len(binate)):
        val = dict(zip(binate, bits))
        rest = fm.nnf(
            fm.substitute(f, on_var=lambda q: (fm.TRUE if val[q] else fm.FALSE) if q in val else fm.var(q))
        )
        if rest is fm.FALSE:
            continue
        cube = [fm.neg(fm.var(q + n)) if v else fm.neg(fm.var(q)) for q, v in val.items()]
        branches.append(fm.conj([*cube, rewrite(rest)]))
    return fm.disj(branches)

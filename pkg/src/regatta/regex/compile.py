"""Thompson-style compilation of regex ASTs to epsilon-free NFAs."""

from __future__ import annotations

from ..core.automata import Nfa
from ..core.charclass import CharClass, MintermTable, mintermize
from ..nfa.ops import complement, intersect, trim
from .ast import (
    Alt,
    And,
    AnchorEnd,
    AnchorStart,
    Class,
    Concat,
    Dot,
    Empty,
    Epsilon,
    Neg,
    Opt,
    Plus,
    Regex,
    Repeat,
    Star,
    is_extended,
)
from .parse import collect_classes, parse_regex, strip_anchors


class _Builder:
    def __init__(self, table: MintermTable):
        self.table = table
        self.eps: list[list[int]] = []
        self.sym: list[list[tuple[int, int]]] = []

    def state(self) -> int:
        self.eps.append([])
        self.sym.append([])
        return len(self.eps) - 1

    def on_class(self, cc: CharClass) -> tuple[int, int]:
        s, e = self.state(), self.state()
        for m in sorted(self.table.minterms_of(cc)):
            self.sym[s].append((m, e))
        return s, e

    def embed(self, a: Nfa) -> tuple[int, int]:
        s, e = self.state(), self.state()
        base = len(self.eps)
        for _ in range(a.num_states):
            self.state()
        for q, m, r in a.edges():
            self.sym[base + q].append((m, base + r))
        for q in a.initial:
            self.eps[s].append(base + q)
        for q in a.final:
            self.eps[base + q].append(e)
        return s, e

    def frag(self, r: Regex) -> tuple[int, int]:
        if isinstance(r, Empty):
            return self.state(), self.state()
        if isinstance(r, Epsilon):
            s, e = self.state(), self.state()
            self.eps[s].append(e)
            return s, e
        if isinstance(r, Class):
            return self.on_class(r.cc)
        if isinstance(r, Dot):
            return self.on_class(CharClass.full(self.table.alphabet_max))
        if isinstance(r, Concat):
            s, e = self.frag(r.items[0])
            for item in r.items[1:]:
                s2, e2 = self.frag(item)
                self.eps[e].append(s2)
                e = e2
            return s, e
        if isinstance(r, Alt):
            s, e = self.state(), self.state()
            for item in r.items:
                s2, e2 = self.frag(item)
                self.eps[s].append(s2)
                self.eps[e2].append(e)
            return s, e
        if isinstance(r, Star):
            s, e = self.state(), self.state()
            s2, e2 = self.frag(r.r)
            self.eps[s] += [s2, e]
            self.eps[e2] += [s2, e]
            return s, e
        if isinstance(r, Plus):
            return self.frag(Concat((r.r, Star(r.r))))
        if isinstance(r, Opt):
            return self.frag(Alt((r.r, Epsilon())))
        if isinstance(r, Repeat):
            parts: list[Regex] = [r.r] * r.min
            if r.max is None:
                parts.append(Star(r.r))
            else:
                parts += [Opt(r.r)] * (r.max - r.min)
            return self.frag(Concat(tuple(parts)) if parts else Epsilon())
        if isinstance(r, And):
            acc = _compile_core(r.items[0], self.table)
            for item in r.items[1:]:
                acc = trim(intersect(acc, _compile_core(item, self.table), False))
            return self.embed(acc)
        if isinstance(r, Neg):
            if not self.table.complete:
                raise ValueError("complement requires a minterm table covering the whole alphabet")
            return self.embed(trim(complement(_compile_core(r.r, self.table))))
        if isinstance(r, (AnchorStart, AnchorEnd)):
            raise ValueError("anchor in the middle of a regex")
        raise TypeError(f"not a regex node: {r!r}")

    def closure(self, q: int) -> list[int]:
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for r in self.eps[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return sorted(seen)

    def eliminate(self, start: int, end: int) -> Nfa:
        """Keep the start state and targets of symbol edges; fold epsilon closures in."""
        index = {start: 0}
        order = [start]
        edges = []
        final = []
        i = 0
        while i < len(order):
            q = order[i]
            for p in self.closure(q):
                if p == end:
                    final.append(i)
                for m, r in self.sym[p]:
                    j = index.get(r)
                    if j is None:
                        j = len(order)
                        index[r] = j
                        order.append(r)
                    edges.append((i, m, j))
            i += 1
        return trim(Nfa(len(order), edges, [0], final, self.table))


def _compile_core(r: Regex, table: MintermTable) -> Nfa:
    b = _Builder(table)
    s, e = b.frag(r)
    return b.eliminate(s, e)


def compile(ast: Regex, table: MintermTable) -> Nfa:
    """Epsilon-free, trimmed NFA for the whole-string language of ``ast``."""
    return _compile_core(strip_anchors(ast), table)


def table_for(asts: list[Regex], alphabet_max: int | None = None, residual: bool | None = None) -> MintermTable:
    """Shared minterm table for several regexes.

    The residual class is added when some regex uses complement, or when
    ``residual`` asks for it explicitly.
    """
    from ..core.charclass import DEFAULT_ALPHABET_MAX

    amax = DEFAULT_ALPHABET_MAX if alphabet_max is None else alphabet_max
    preds: list[CharClass] = []
    for a in asts:
        for cc in collect_classes(a, amax):
            if cc not in preds:
                preds.append(cc)
    if residual is None:
        residual = any(is_extended(a) for a in asts)
    if not preds:
        preds = [CharClass()]
        residual = True
    return mintermize(preds, residual=residual, alphabet_max=amax)


def compile_regex(src: str, dialect: str = "basic", table: MintermTable | None = None) -> Nfa:
    """Parse and compile in one step, building a private table when none is given."""
    ast = parse_regex(src, dialect)
    if table is None:
        table = table_for([ast])
    return compile(ast, table)

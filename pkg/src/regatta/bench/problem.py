"""Benchmark problems: named atoms combined by a Boolean query."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from ..core import formula as fm
from ..core.automata import Afa, Nfa
from ..core.bre import Bre, Compl, Inter, Leaf, Union_
from ..core.charclass import DEFAULT_ALPHABET_MAX, CharClass, MintermTable, mintermize
from ..regex import collect_classes, compile, parse_regex
from ..regex.ast import Neg, children

KINDS = ("bre_empty", "afa_empty", "inclusion", "equivalence")
QUERY_OF_KIND = {"bre_empty": "empty", "afa_empty": "empty", "inclusion": "incl", "equivalence": "equiv"}


@dataclass(frozen=True)
class LabeledNfa:
    """NFA with character-class labels, independent of any minterm table."""

    num_states: int
    edges: tuple[tuple[int, CharClass, int], ...]
    initial: tuple[int, ...]
    final: tuple[int, ...]

    def accepts(self, word: Sequence[int]) -> bool:
        cur = set(self.initial)
        for cp in word:
            cur = {r for q, cc, r in self.edges if q in cur and cp in cc}
            if not cur:
                return False
        return bool(cur & set(self.final))

    @classmethod
    def of(cls, a: Nfa) -> "LabeledNfa":
        merged: dict[tuple[int, int], CharClass] = {}
        for q, m, r in a.edges():
            merged[(q, r)] = merged.get((q, r), CharClass()) | a.table.minterms[m]
        edges = tuple((q, cc, r) for (q, r), cc in sorted(merged.items()))
        return cls(a.num_states, edges, tuple(sorted(a.initial)), tuple(sorted(a.final)))


@dataclass(frozen=True)
class AfaSpec:
    """AFA with predicates over code points; ``alphabet`` is its universe Σ."""

    num_states: int
    delta: tuple[fm.Formula, ...]
    init: fm.Formula
    final: fm.Formula
    alphabet: CharClass

    @classmethod
    def of(cls, a: Afa) -> "AfaSpec":
        return cls(a.num_states, a.delta, a.init, a.final, a.table.universe())

    def build(self) -> Afa:
        preds: list[CharClass] = [self.alphabet]
        for f in self.delta:
            for p in sorted(fm.predicates(f), key=lambda c: c.ranges):
                p = p & self.alphabet
                if p and p not in preds:
                    preds.append(p)
        table = mintermize(preds)
        return Afa(self.num_states, self.delta, self.init, self.final, table)


@dataclass(frozen=True)
class Atom:
    name: str
    kind: str  # regex | xregex | nfa | afa
    value: Union[str, LabeledNfa, AfaSpec]


# query expressions: ("atom", name) | ("and", items) | ("or", items) | ("not", e)
Expr = tuple


@dataclass(frozen=True)
class Problem:
    id: str
    kind: str
    atoms: tuple[Atom, ...]
    query: tuple[Expr, ...]
    expected: str | None = None
    provenance: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        want = 2 if self.kind in ("inclusion", "equivalence") else 1
        if len(self.query) != want:
            raise ValueError(f"{self.kind} needs {want} query operand(s)")
        names = {a.name for a in self.atoms}
        for e in self.query:
            for n in atom_names(e):
                if n not in names:
                    raise ValueError(f"dangling atom reference {n!r}")
        if self.expected not in (None, "empty", "nonempty"):
            raise ValueError(f"bad expected label {self.expected!r}")

    def atom(self, name: str) -> Atom:
        for a in self.atoms:
            if a.name == name:
                return a
        raise KeyError(name)


def atom_names(e: Expr) -> list[str]:
    if e[0] == "atom":
        return [e[1]]
    if e[0] == "not":
        return atom_names(e[1])
    return [n for c in e[1] for n in atom_names(c)]


def has_not(e: Expr) -> bool:
    if e[0] == "atom":
        return False
    if e[0] == "not":
        return True
    return any(has_not(c) for c in e[1])


def parse_query(text: str) -> Expr:
    """``!`` binds tighter than ``&``, which binds tighter than ``|``."""
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()&|!":
            toks.append(ch)
            i += 1
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_-."):
                j += 1
            if j == i:
                raise ValueError(f"unexpected {ch!r} in query")
            toks.append(text[i:j])
            i = j
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of query")
        pos += 1
        return toks[pos - 1]

    def p_or():
        items = [p_and()]
        while peek() == "|":
            take()
            items.append(p_and())
        return items[0] if len(items) == 1 else ("or", tuple(items))

    def p_and():
        items = [p_not()]
        while peek() == "&":
            take()
            items.append(p_not())
        return items[0] if len(items) == 1 else ("and", tuple(items))

    def p_not():
        tok = take()
        if tok == "!":
            return ("not", p_not())
        if tok == "(":
            out = p_or()
            if take() != ")":
                raise ValueError("expected ')' in query")
            return out
        if tok in "()&|":
            raise ValueError(f"unexpected {tok!r} in query")
        return ("atom", tok)

    out = p_or()
    if pos != len(toks):
        raise ValueError(f"trailing {peek()!r} in query")
    return out


def query_text(e: Expr, top: bool = True) -> str:
    if e[0] == "atom":
        return e[1]
    if e[0] == "not":
        return "!" + query_text(e[1], False)
    sep = " & " if e[0] == "and" else " | "
    body = sep.join(query_text(c, False) for c in e[1])
    return body if top else f"({body})"


@dataclass
class Instance:
    """A problem with atoms compiled over one shared minterm table."""

    problem: Problem
    table: MintermTable
    leaves: dict[str, Nfa] = field(default_factory=dict)
    exprs: tuple[Bre, ...] = ()
    afa: Afa | None = None

    def emptiness_tree(self) -> Bre:
        """The Boolean combination whose emptiness answers the problem."""
        if self.problem.kind == "bre_empty":
            return self.exprs[0]
        a, b = self.exprs
        if self.problem.kind == "inclusion":
            return Inter((a, Compl(b)))
        return Union_((Inter((a, Compl(b))), Inter((b, Compl(a)))))


def _regex_ast(atom: Atom, alphabet_max: int):
    return parse_regex(atom.value, "extended" if atom.kind == "xregex" else "basic", alphabet_max)


def _has_neg(r) -> bool:
    return isinstance(r, Neg) or any(_has_neg(c) for c in children(r))


def materialize(p: Problem, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> Instance:
    if p.kind == "afa_empty":
        (e,) = p.query
        if e[0] != "atom" or p.atom(e[1]).kind != "afa":
            raise ValueError("AFA problems query a single afa atom")
        value = p.atom(e[1]).value
        afa = value if isinstance(value, Afa) else value.build()
        return Instance(p, afa.table, afa=afa)
    used = {n for e in p.query for n in atom_names(e)}
    preds: list[CharClass] = []
    asts = {}
    complement = p.kind != "bre_empty" or any(has_not(e) for e in p.query)
    for a in p.atoms:
        if a.name not in used:
            continue
        if a.kind in ("regex", "xregex"):
            ast = _regex_ast(a, alphabet_max)
            asts[a.name] = ast
            complement = complement or _has_neg(ast)
            classes = collect_classes(ast, alphabet_max)
        elif a.kind == "nfa":
            classes = [cc for _, cc, _ in a.value.edges]
        else:
            raise ValueError(f"atom {a.name!r} of kind {a.kind} cannot appear in a Boolean query")
        for cc in classes:
            if cc not in preds:
                preds.append(cc)
    table = mintermize(preds or [CharClass()], residual=complement or not preds, alphabet_max=alphabet_max)
    leaves = {}
    for a in p.atoms:
        if a.name not in used:
            continue
        if a.name in asts:
            leaves[a.name] = compile(asts[a.name], table)
        else:
            v = a.value
            leaves[a.name] = Nfa.from_labeled(v.num_states, v.edges, v.initial, v.final, table)

    def tree(e: Expr) -> Bre:
        if e[0] == "atom":
            return Leaf(leaves[e[1]])
        if e[0] == "not":
            return Compl(tree(e[1]))
        kids = tuple(tree(c) for c in e[1])
        return Inter(kids) if e[0] == "and" else Union_(kids)

    return Instance(p, table, leaves, tuple(tree(e) for e in p.query))

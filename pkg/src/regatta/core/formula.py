"""Hash-consed Boolean formulas over state variables and symbol predicates.

Nodes are interned, so structurally equal formulas are the same object and
compare by identity.  And/Or children are flattened, deduplicated and sorted
by a structural digest, so the representation does not depend on which
formulas were built earlier in the process.
"""

from __future__ import annotations

import hashlib
import itertools
import weakref
from typing import Callable, Hashable, Iterable, Mapping

from .charclass import CharClass

TRUE_OP, FALSE_OP, VAR, PRED, NOT, AND, OR = "true", "false", "var", "pred", "not", "and", "or"

_table: "weakref.WeakValueDictionary[tuple, Formula]" = weakref.WeakValueDictionary()
_uids = itertools.count()


class Formula:
    __slots__ = ("op", "args", "uid", "digest", "__weakref__")

    op: str
    args: tuple
    uid: int
    digest: bytes

    def __new__(cls, op: str, args: tuple = ()):
        key = (op, args)
        node = _table.get(key)
        if node is None:
            node = object.__new__(cls)
            node.op = op
            node.args = args
            node.uid = next(_uids)
            node.digest = _digest(op, args)
            _table[key] = node
        return node

    def __reduce__(self):
        return (Formula, (self.op, self.args))

    def __and__(self, other: "Formula") -> "Formula":
        return conj([self, other])

    def __or__(self, other: "Formula") -> "Formula":
        return disj([self, other])

    def __invert__(self) -> "Formula":
        return neg(self)

    def __repr__(self) -> str:
        return to_text(self)


def _digest(op: str, args: tuple) -> bytes:
    h = hashlib.blake2b(op.encode(), digest_size=12)
    for a in args:
        if isinstance(a, Formula):
            h.update(a.digest)
        elif isinstance(a, CharClass):
            h.update(repr(a.ranges).encode())
        else:
            h.update(repr(a).encode())
        h.update(b"|")
    return h.digest()


TRUE = Formula(TRUE_OP)
FALSE = Formula(FALSE_OP)


def var(key: Hashable) -> Formula:
    return Formula(VAR, (key,))


def pred(cc: CharClass) -> Formula:
    return Formula(PRED, (cc,))


def neg(f: Formula) -> Formula:
    if f is TRUE:
        return FALSE
    if f is FALSE:
        return TRUE
    if f.op == NOT:
        return f.args[0]
    return Formula(NOT, (f,))


def _junction(op: str, unit: Formula, zero: Formula, fs: Iterable[Formula]) -> Formula:
    seen: dict[int, Formula] = {}
    for f in fs:
        if f is zero:
            return zero
        if f is unit:
            continue
        for g in f.args if f.op == op else (f,):
            seen[g.uid] = g
    if not seen:
        return unit
    if len(seen) == 1:
        return next(iter(seen.values()))
    return Formula(op, tuple(sorted(seen.values(), key=lambda g: (g.digest, g.uid))))


def conj(fs: Iterable[Formula]) -> Formula:
    return _junction(AND, TRUE, FALSE, fs)


def disj(fs: Iterable[Formula]) -> Formula:
    return _junction(OR, FALSE, TRUE, fs)


def implies(a: Formula, b: Formula) -> Formula:
    return disj([neg(a), b])


def iff(a: Formula, b: Formula) -> Formula:
    return conj([implies(a, b), implies(b, a)])


def nnf(f: Formula, _memo: dict | None = None) -> Formula:
    """Push negations down to variables and predicate atoms."""
    memo = {} if _memo is None else _memo

    def go(g: Formula, positive: bool) -> Formula:
        key = (g.uid, positive)
        if key in memo:
            return memo[key]
        op = g.op
        if op in (TRUE_OP, FALSE_OP, VAR, PRED):
            out = g if positive else neg(g)
        elif op == NOT:
            out = go(g.args[0], not positive)
        elif (op == AND) == positive:
            out = conj(go(c, positive) for c in g.args)
        else:
            out = disj(go(c, positive) for c in g.args)
        memo[key] = out
        return out

    return go(f, True)


def variables(f: Formula) -> set:
    out: set = set()
    stack, seen = [f], set()
    while stack:
        g = stack.pop()
        if g.uid in seen:
            continue
        seen.add(g.uid)
        if g.op == VAR:
            out.add(g.args[0])
        elif g.op in (NOT, AND, OR):
            stack.extend(g.args)
    return out


def predicates(f: Formula) -> set[CharClass]:
    out: set[CharClass] = set()
    stack, seen = [f], set()
    while stack:
        g = stack.pop()
        if g.uid in seen:
            continue
        seen.add(g.uid)
        if g.op == PRED:
            out.add(g.args[0])
        elif g.op in (NOT, AND, OR):
            stack.extend(g.args)
    return out


def check_polarity(f: Formula) -> str:
    """Classify occurrences of state variables after NNF.

    Returns "positive", "negative", "mixed", or "neutral" when no state
    variable occurs at all (such a formula is both positive and negative).
    """
    pos = neg_ = False
    stack, seen = [nnf(f)], set()
    while stack:
        g = stack.pop()
        if g.uid in seen:
            continue
        seen.add(g.uid)
        if g.op == VAR:
            pos = True
        elif g.op == NOT:
            if g.args[0].op == VAR:
                neg_ = True
        elif g.op in (AND, OR):
            stack.extend(g.args)
    if pos and neg_:
        return "mixed"
    if pos:
        return "positive"
    if neg_:
        return "negative"
    return "neutral"


def is_positive(f: Formula) -> bool:
    return check_polarity(f) in ("positive", "neutral")


def is_negative(f: Formula) -> bool:
    return check_polarity(f) in ("negative", "neutral")


def substitute(
    f: Formula,
    on_var: Callable[[Hashable], Formula] | None = None,
    on_pred: Callable[[CharClass], Formula] | None = None,
) -> Formula:
    """Rebuild ``f`` replacing variables and/or predicate atoms."""
    memo: dict[int, Formula] = {}

    def go(g: Formula) -> Formula:
        hit = memo.get(g.uid)
        if hit is not None:
            return hit
        op = g.op
        if op == VAR:
            out = on_var(g.args[0]) if on_var else g
        elif op == PRED:
            out = on_pred(g.args[0]) if on_pred else g
        elif op == NOT:
            out = neg(go(g.args[0]))
        elif op == AND:
            out = conj(go(c) for c in g.args)
        elif op == OR:
            out = disj(go(c) for c in g.args)
        else:
            out = g
        memo[g.uid] = out
        return out

    return go(f)


def evaluate(
    f: Formula,
    value_of: Callable[[Hashable], bool],
    pred_holds: Callable[[CharClass], bool] | None = None,
) -> bool:
    op = f.op
    if op == VAR:
        return bool(value_of(f.args[0]))
    if op == AND:
        return all(evaluate(c, value_of, pred_holds) for c in f.args)
    if op == OR:
        return any(evaluate(c, value_of, pred_holds) for c in f.args)
    if op == NOT:
        return not evaluate(f.args[0], value_of, pred_holds)
    if op == PRED:
        if pred_holds is None:
            raise ValueError("symbol required")
        return pred_holds(f.args[0])
    return op == TRUE_OP


def eval_formula(f: Formula, config: int, minterm: int | None = None, table=None) -> bool:
    """Evaluate over a configuration bitmask and an optional minterm id.

    ``PredAtom(p)`` holds iff the minterm is contained in ``p``.
    """
    if minterm is None:
        holds = None
    else:
        if table is None:
            raise ValueError("minterm table required to decide predicates")
        holds = lambda cc: table.pred_holds(minterm, cc)  # noqa: E731
    return evaluate(f, lambda q: (config >> q) & 1, holds)


def eval_assignment(f: Formula, assignment: Mapping[Hashable, bool]) -> bool:
    return evaluate(f, lambda k: assignment[k])


def compile_config_predicate(f: Formula) -> Callable[[int], bool]:
    """Compile a predicate-free formula over int state ids into a bitmask test."""
    def emit(g: Formula, depth: int) -> str:
        if depth > 60:
            raise RecursionError
        op = g.op
        if op == VAR:
            return f"(c >> {g.args[0]} & 1)"
        if op == TRUE_OP:
            return "True"
        if op == FALSE_OP:
            return "False"
        if op == NOT:
            return f"(not {emit(g.args[0], depth + 1)})"
        if op == PRED:
            raise ValueError("symbol required")
        sep = " and " if op == AND else " or "
        return "(" + sep.join(emit(c, depth + 1) for c in g.args) + ")"

    try:
        src = emit(f, 0)
        fn = eval(f"lambda c: bool({src})", {})  # noqa: S307 - source built from our own AST
    except (RecursionError, SyntaxError, MemoryError):
        return lambda c: evaluate(f, lambda q: (c >> q) & 1)
    return fn


def to_text(f: Formula) -> str:
    """Render with ``& | ! true false``; variables as ``q<i>`` (or their repr)."""
    op = f.op
    if op == TRUE_OP:
        return "true"
    if op == FALSE_OP:
        return "false"
    if op == VAR:
        k = f.args[0]
        return f"q{k}" if isinstance(k, int) else str(k)
    if op == PRED:
        return "[" + f.args[0].to_hex() + "]"
    if op == NOT:
        return "!" + to_text(f.args[0])
    sep = " & " if op == AND else " | "
    return "(" + sep.join(to_text(c) for c in f.args) + ")"


def parse_formula(text: str) -> Formula:
    """Parse the syntax produced by :func:`to_text` (state vars ``q<i>``, preds ``[hex]``)."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expect=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expect is not None and tok != expect):
            raise ValueError(f"formula syntax error near token {pos}: {text!r}")
        pos += 1
        return tok

    def p_or():
        items = [p_and()]
        while peek() == "|":
            take()
            items.append(p_and())
        return disj(items)

    def p_and():
        items = [p_un()]
        while peek() == "&":
            take()
            items.append(p_un())
        return conj(items)

    def p_un():
        tok = peek()
        if tok == "!":
            take()
            return neg(p_un())
        if tok == "(":
            take()
            out = p_or()
            take(")")
            return out
        tok = take()
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        if tok.startswith("["):
            return pred(CharClass.from_hex(tok[1:-1]) if len(tok) > 2 else CharClass())
        if tok.startswith("q") and tok[1:].isdigit():
            return var(int(tok[1:]))
        raise ValueError(f"unexpected token {tok!r} in formula")

    out = p_or()
    if pos != len(toks):
        raise ValueError(f"trailing input in formula: {text!r}")
    return out


def _tokenize(text: str) -> list[str]:
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()&|!":
            toks.append(ch)
            i += 1
        elif ch == "[":
            j = text.index("]", i)
            toks.append(text[i : j + 1])
            i = j + 1
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            if j == i:
                raise ValueError(f"bad character {ch!r} in formula")
            toks.append(text[i:j])
            i = j
    return toks

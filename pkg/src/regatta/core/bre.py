"""Boolean combinations of regular languages with automata at the leaves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .automata import Nfa


@dataclass(frozen=True)
class Leaf:
    nfa: Nfa


@dataclass(frozen=True)
class Inter:
    children: tuple["Bre", ...]


@dataclass(frozen=True)
class Union_:
    children: tuple["Bre", ...]


@dataclass(frozen=True)
class Compl:
    child: "Bre"


Bre = Union[Leaf, Inter, Union_, Compl]


def inter(*children: Bre) -> Bre:
    return children[0] if len(children) == 1 else Inter(tuple(children))


def union(*children: Bre) -> Bre:
    return children[0] if len(children) == 1 else Union_(tuple(children))


def difference(a: Bre, b: Bre) -> Bre:
    return Inter((a, Compl(b)))


def leaves(e: Bre) -> Iterator[Nfa]:
    if isinstance(e, Leaf):
        yield e.nfa
    elif isinstance(e, Compl):
        yield from leaves(e.child)
    else:
        for c in e.children:
            yield from leaves(c)


def has_complement(e: Bre) -> bool:
    if isinstance(e, Leaf):
        return False
    if isinstance(e, Compl):
        return True
    return any(has_complement(c) for c in e.children)


def size(e: Bre) -> int:
    """Number of Boolean operations in the tree."""
    if isinstance(e, Leaf):
        return 0
    if isinstance(e, Compl):
        return 1 + size(e.child)
    return len(e.children) - 1 + sum(size(c) for c in e.children)


def accepts(e: Bre, word) -> bool:
    if isinstance(e, Leaf):
        return e.nfa.accepts(word)
    if isinstance(e, Compl):
        return not accepts(e.child, word)
    if isinstance(e, Inter):
        return all(accepts(c, word) for c in e.children)
    return any(accepts(c, word) for c in e.children)

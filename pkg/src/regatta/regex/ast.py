from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from ..core.charclass import CharClass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Class:
    cc: CharClass


@dataclass(frozen=True)
class Dot:
    pass


@dataclass(frozen=True)
class Concat:
    items: tuple["Regex", ...]


@dataclass(frozen=True)
class Alt:
    items: tuple["Regex", ...]


@dataclass(frozen=True)
class Star:
    r: "Regex"


@dataclass(frozen=True)
class Plus:
    r: "Regex"


@dataclass(frozen=True)
class Opt:
    r: "Regex"


@dataclass(frozen=True)
class Repeat:
    r: "Regex"
    min: int
    max: int | None  # None is unbounded

    def __post_init__(self):
        if self.min < 0 or (self.max is not None and self.max < self.min):
            raise ValueError(f"bad repeat bounds {{{self.min},{self.max}}}")


@dataclass(frozen=True)
class And:
    items: tuple["Regex", ...]


@dataclass(frozen=True)
class Neg:
    r: "Regex"


@dataclass(frozen=True)
class AnchorStart:
    pass


@dataclass(frozen=True)
class AnchorEnd:
    pass


Regex = Union[Empty, Epsilon, Class, Dot, Concat, Alt, Star, Plus, Opt, Repeat, And, Neg, AnchorStart, AnchorEnd]

EXTENDED = (And, Neg)


def children(r: Regex) -> tuple[Regex, ...]:
    if isinstance(r, (Concat, Alt, And)):
        return r.items
    if isinstance(r, (Star, Plus, Opt, Repeat, Neg)):
        return (r.r,)
    return ()


def is_extended(r: Regex) -> bool:
    return isinstance(r, EXTENDED) or any(is_extended(c) for c in children(r))

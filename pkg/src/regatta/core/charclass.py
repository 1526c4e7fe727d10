"""Character classes over code points and a-priori mintermization."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_ALPHABET_MAX = 0x110000
MAX_ALPHABET = 1 << 32


def _normalize(ranges: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for lo, hi in sorted(ranges):
        if lo > hi:
            raise ValueError(f"bad range {lo:#x}-{hi:#x}")
        if lo < 0:
            raise ValueError("negative code point")
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True)
class CharClass:
    """A set of code points stored as sorted, disjoint, non-adjacent inclusive ranges."""

    ranges: tuple[tuple[int, int], ...] = ()

    def __init__(self, ranges: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "ranges", _normalize(ranges))

    @classmethod
    def of(cls, text: str) -> "CharClass":
        return cls((ord(ch), ord(ch)) for ch in text)

    @classmethod
    def span(cls, lo: str | int, hi: str | int) -> "CharClass":
        lo = ord(lo) if isinstance(lo, str) else lo
        hi = ord(hi) if isinstance(hi, str) else hi
        return cls([(lo, hi)])

    @classmethod
    def full(cls, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> "CharClass":
        return cls([(0, alphabet_max - 1)])

    def __bool__(self) -> bool:
        return bool(self.ranges)

    def __contains__(self, cp: int) -> bool:
        i = bisect_right(self.ranges, (cp, float("inf"))) - 1
        return i >= 0 and self.ranges[i][0] <= cp <= self.ranges[i][1]

    def __len__(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.ranges)

    def __or__(self, other: "CharClass") -> "CharClass":
        return CharClass(self.ranges + other.ranges)

    def __and__(self, other: "CharClass") -> "CharClass":
        out = []
        i = j = 0
        a, b = self.ranges, other.ranges
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo <= hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return CharClass(out)

    def __sub__(self, other: "CharClass") -> "CharClass":
        return self & other.complement(MAX_ALPHABET)

    def complement(self, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> "CharClass":
        out = []
        nxt = 0
        for lo, hi in self.ranges:
            if lo > nxt:
                out.append((nxt, min(lo - 1, alphabet_max - 1)))
            nxt = hi + 1
        if nxt < alphabet_max:
            out.append((nxt, alphabet_max - 1))
        return CharClass(r for r in out if r[0] <= r[1])

    def issubset(self, other: "CharClass") -> bool:
        return (self & other) == self

    def lowest(self) -> int:
        if not self.ranges:
            raise ValueError("empty class has no representative")
        return self.ranges[0][0]

    def max_point(self) -> int:
        return self.ranges[-1][1] if self.ranges else -1

    def check(self, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> None:
        if not 0 < alphabet_max <= MAX_ALPHABET:
            raise ValueError(f"alphabet_max out of range: {alphabet_max}")
        if self.ranges and self.ranges[-1][1] >= alphabet_max:
            raise ValueError(f"code point {self.ranges[-1][1]:#x} beyond alphabet")

    def __repr__(self) -> str:
        return "CharClass[" + ",".join(_fmt_range(lo, hi) for lo, hi in self.ranges) + "]"

    def to_hex(self) -> str:
        return ",".join(f"{lo:x}-{hi:x}" for lo, hi in self.ranges)

    @classmethod
    def from_hex(cls, text: str) -> "CharClass":
        ranges = []
        for part in text.split(","):
            lo, _, hi = part.partition("-")
            ranges.append((int(lo, 16), int(hi or lo, 16)))
        return cls(ranges)


def _fmt_range(lo: int, hi: int) -> str:
    def one(cp: int) -> str:
        ch = chr(cp) if cp < 0x110000 else ""
        return ch if ch.isprintable() and ch not in "[]-,\\" and ch else f"\\x{{{cp:x}}}"

    return one(lo) if lo == hi else f"{one(lo)}-{one(hi)}"


@dataclass(frozen=True)
class MintermTable:
    """Partition of the used alphabet into classes of indistinguishable symbols.

    ``membership[i]`` lists the minterm ids whose union is ``source_predicates[i]``.
    When ``residual`` is set, the last minterm is the complement of all predicates.
    """

    minterms: tuple[CharClass, ...]
    source_predicates: tuple[CharClass, ...]
    membership: tuple[frozenset[int], ...]
    residual: bool = False
    alphabet_max: int = DEFAULT_ALPHABET_MAX
    _index: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __len__(self) -> int:
        return len(self.minterms)

    @property
    def complete(self) -> bool:
        """True when the minterms cover the whole alphabet."""
        return sum(len(m) for m in self.minterms) == self.alphabet_max

    def representative(self, m: int) -> int:
        return self.minterms[m].lowest()

    def locate(self, cp: int) -> int | None:
        for i, m in enumerate(self.minterms):
            if cp in m:
                return i
        return None

    def minterms_of(self, cc: CharClass) -> frozenset[int]:
        """Ids of minterms whose union is exactly ``cc``; raises if cc is not covered."""
        hit = self._index.get(cc)
        if hit is not None:
            return hit
        ids = []
        covered = CharClass()
        for i, m in enumerate(self.minterms):
            common = m & cc
            if not common:
                continue
            if common != m:
                raise ValueError(f"{cc!r} splits minterm {m!r}")
            ids.append(i)
            covered = covered | m
        if covered != cc:
            raise ValueError(f"{cc!r} not covered by minterm table")
        hit = frozenset(ids)
        self._index[cc] = hit
        return hit

    def pred_holds(self, m: int, cc: CharClass) -> bool:
        """Whether minterm ``m`` is contained in predicate ``cc``."""
        mt = self.minterms[m]
        return (mt & cc) == mt

    def minterms_within(self, cc: CharClass) -> list[int]:
        """Ids of minterms contained in ``cc`` (the minterms where the predicate holds)."""
        return [m for m in range(len(self.minterms)) if self.pred_holds(m, cc)]

    def word(self, minterm_ids: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.representative(m) for m in minterm_ids)

    def universe(self) -> CharClass:
        out = CharClass()
        for m in self.minterms:
            out = out | m
        return out


def mintermize(
    predicates: Sequence[CharClass],
    residual: bool = False,
    alphabet_max: int = DEFAULT_ALPHABET_MAX,
) -> MintermTable:
    """Split the alphabet into the coarsest classes that no predicate distinguishes."""
    if not predicates:
        raise ValueError("no predicates")
    preds = tuple(predicates)
    for p in preds:
        p.check(alphabet_max)
    cuts = {0, alphabet_max}
    for p in preds:
        for lo, hi in p.ranges:
            cuts.add(lo)
            cuts.add(hi + 1)
    points = sorted(cuts)
    groups: dict[frozenset[int], list[tuple[int, int]]] = {}
    order: list[frozenset[int]] = []
    for lo, nxt in zip(points, points[1:]):
        sig = frozenset(i for i, p in enumerate(preds) if lo in p)
        if not sig and not residual:
            continue
        if sig not in groups:
            groups[sig] = []
            order.append(sig)
        groups[sig].append((lo, nxt - 1))
    # residual goes last so that tables with and without it agree on shared ids
    real = sorted((s for s in order if s), key=lambda s: groups[s][0][0])
    if residual and frozenset() in groups:
        real.append(frozenset())
    minterms = tuple(CharClass(groups[s]) for s in real)
    membership = tuple(
        frozenset(m for m, s in enumerate(real) if i in s) for i in range(len(preds))
    )
    has_residual = residual and frozenset() in groups
    return MintermTable(minterms, preds, membership, has_residual, alphabet_max)

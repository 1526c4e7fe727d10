"""Parametric problem families and the regex-inclusion problem form."""

from __future__ import annotations

from .problem import Atom, Problem

FAMILY_LABELS = {
    1: "long strings",
    2: "exponential branching",
    3: "exponential paths 1",
    4: "exponential paths 2",
    5: "sat. difference",
    6: "unsat. difference",
    7: "sat. intersection",
    8: "unsat. intersection",
}
EXPECTED = {5: "nonempty", 6: "empty", 7: "nonempty", 8: "empty"}

# parameter grids used by the generator presets
PUBLISHED_GRID = {1: range(50, 501, 50), 2: range(2, 61), 3: range(2, 61), 4: range(2, 61)}
PUBLISHED_GRID.update({f: (50, 100) for f in (5, 6, 7, 8)})
DESK_GRID = {1: range(1, 6), 2: range(2, 6), 3: range(2, 4), 4: range(2, 4)}
DESK_GRID.update({f: range(1, 9) for f in (5, 6, 7, 8)})


def nth_prime(j: int) -> int:
    """The j-th prime, counting 2 as the first."""
    count = 0
    k = 1
    while count < j:
        k += 1
        if all(k % d for d in range(2, int(k**0.5) + 1)):
            count += 1
    return k


def alpha(i: int) -> str:
    """Regex text for the i-th disjoint symbol class (a single code point 'A'+i)."""
    ch = chr(ord("A") + i)
    return ch if ch.isalnum() else "\\" + ch


def _bre(pid: str, regexes: list[str], query: tuple, expected: str | None, provenance: str | None) -> Problem:
    atoms = tuple(Atom(f"r{k + 1}", "regex", r) for k, r in enumerate(regexes))
    return Problem(pid, "bre_empty", atoms, (query,), expected, provenance)


def _all(k: int) -> tuple:
    items = tuple(("atom", f"r{i + 1}") for i in range(k))
    return items[0] if k == 1 else ("and", items)


def _diff() -> tuple:
    return ("and", (("atom", "r1"), ("not", ("atom", "r2"))))


def gen_param(family: int, n: int) -> Problem:
    if family not in FAMILY_LABELS:
        raise ValueError(f"unsupported family {family}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if family in (2, 3, 4) and n > 60:
        raise ValueError(f"family {family} is defined for n <= 60")
    pid = f"param{family}-n{n}"
    if family == 1:
        return _bre(pid, [f"[a-c]a[a-c]{{{n + 1}}}", f"[a-c]a[a-c]{{{n}}}"], _all(2), None, None)
    if family == 2:
        rs = [
            f"([0-1]{{{i - 1}}}0[0-1]{{{n - 1}}}0[0-1]{{{n - i}}}{alpha(i)})"
            f"|([0-1]{{{i - 1}}}1[0-1]{{{n - 1}}}1[0-1]{{{n - i}}}{alpha(i)})"
            for i in range(1, n + 1)
        ]
        return _bre(pid, rs, _all(n), None, None)
    if family == 3:
        rs = [f".*(.{{{nth_prime(10 + i)}}})+{alpha(i)}" for i in range(1, n + 1)]
        return _bre(pid, rs, _all(n), None, None)
    if family == 4:
        rs = [f".+{alpha(i)}0(.{{{nth_prime(10 + i)}}})+" for i in range(1, n + 1)]
        return _bre(pid, rs, _all(n), None, None)
    if family == 5:
        rs = [f"^.[01]*.1.[01]{{{n}}}.$", f"^.[01]*.0.[01]{{{n - 1}}}.$"]
        return _bre(pid, rs, _diff(), EXPECTED[5], "family-label")
    if family == 6:
        rs = [f"^.[01]*.1.1.[01]{{{n}}}.$", f"^.[01]*.0.[01]{{{n + 1}}}.$"]
        return _bre(pid, rs, _diff(), EXPECTED[6], "family-label")
    if family == 7:
        rs = [f"^.[01]*.1.[01]{{{n}}}.$", f"^.[01]*.0.[01]{{{n - 1}}}.$"]
        return _bre(pid, rs, _all(2), EXPECTED[7], "family-label")
    rs = [f"^.[01]*.1.[01]{{{n}}}.$", f"^.[01]*.0.[01]{{{n}}}.$"]
    return _bre(pid, rs, _all(2), EXPECTED[8], "family-label")


def gen_regex_inclusion(regexes: list[str], pid: str = "regex-incl", equivalence: bool = False) -> Problem:
    """Does the filter r5 add anything to r1..r4?  Asked as r5 ⊆ r1∧r2∧r3∧r4.

    With ``equivalence`` the original form r1∧..∧r4 = r1∧..∧r5 is produced instead.
    """
    if len(regexes) != 5:
        raise ValueError("exactly five regexes required")
    atoms = tuple(Atom(f"r{k + 1}", "regex", r) for k, r in enumerate(regexes))
    four = ("and", tuple(("atom", f"r{k}") for k in range(1, 5)))
    if equivalence:
        five = ("and", tuple(("atom", f"r{k}") for k in range(1, 6)))
        return Problem(pid, "equivalence", atoms, (four, five))
    return Problem(pid, "inclusion", atoms, (("atom", "r5"), four))


def preset(name: str) -> list[tuple[int, int]]:
    grid = {"paper-b-param": PUBLISHED_GRID, "desk": DESK_GRID}.get(name)
    if grid is None:
        raise ValueError(f"unknown preset {name!r}")
    return [(f, n) for f in sorted(grid) for n in grid[f]]

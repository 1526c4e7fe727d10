"""Master files, NFA files and AFA files.

A master file is line oriented::

    problem fam5-n3
    expected nonempty family-label
    atom left regex "^.[01]*.1.[01]{3}.$"
    atom right nfa right.nfa
    query empty left & !right

``query incl X ; Y`` asks whether L(X) ⊆ L(Y), ``query equiv X ; Y`` whether
they are equal.  Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..core import formula as fm
from ..core.automata import Afa
from ..core.charclass import CharClass
from .problem import QUERY_OF_KIND, AfaSpec, Atom, LabeledNfa, Problem, parse_query, query_text

KIND_OF_QUERY = {"incl": "inclusion", "equiv": "equivalence"}


class FormatError(ValueError):
    def __init__(self, path, line: int, msg: str):
        self.line = line
        super().__init__(f"{path}:{line}: {msg}")


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def write_nfa_text(a: LabeledNfa) -> str:
    lines = [
        f"@states {a.num_states}",
        "@initial " + ",".join(map(str, a.initial)),
        "@final " + ",".join(map(str, a.final)),
    ]
    lines += [f"{q} {cc.to_hex()} {r}" for q, cc, r in a.edges]
    return "\n".join(lines) + "\n"


def parse_nfa_text(text: str, path="<nfa>") -> LabeledNfa:
    n = None
    initial: tuple[int, ...] = ()
    final: tuple[int, ...] = ()
    edges = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if line.startswith("@states"):
                n = int(line.split()[1])
            elif line.startswith("@initial"):
                initial = _ints(line[len("@initial") :])
            elif line.startswith("@final"):
                final = _ints(line[len("@final") :])
            else:
                q, ranges, r = line.split()
                edges.append((int(q), CharClass.from_hex(ranges), int(r)))
        except ValueError as exc:
            raise FormatError(path, no, f"bad NFA line {line!r} ({exc})") from None
    if n is None:
        raise FormatError(path, 1, "missing @states")
    for q, _, r in edges:
        if not (0 <= q < n and 0 <= r < n):
            raise FormatError(path, 1, f"state out of range in edge {q} -> {r}")
    return LabeledNfa(n, tuple(edges), initial, final)


def write_afa_text(a: AfaSpec | Afa) -> str:
    if isinstance(a, Afa):
        a = AfaSpec.of(a)
    lines = [
        "@afa",
        f"@states {a.num_states}",
        f"@alphabet {a.alphabet.to_hex()}",
        f"@initial {fm.to_text(a.init)}",
        f"@final {fm.to_text(a.final)}",
    ]
    lines += [f"q{q}: {fm.to_text(f)}" for q, f in enumerate(a.delta)]
    return "\n".join(lines) + "\n"


def parse_afa_text(text: str, path="<afa>") -> AfaSpec:
    n = None
    alphabet = None
    init = final = None
    delta: dict[int, fm.Formula] = {}
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#") or line == "@afa":
            continue
        try:
            if line.startswith("@states"):
                n = int(line.split()[1])
            elif line.startswith("@alphabet"):
                alphabet = CharClass.from_hex(line.split(None, 1)[1])
            elif line.startswith("@initial"):
                init = fm.parse_formula(line[len("@initial") :])
            elif line.startswith("@final"):
                final = fm.parse_formula(line[len("@final") :])
            else:
                head, body = line.split(":", 1)
                if not (head.startswith("q") and head[1:].isdigit()):
                    raise ValueError("expected q<i>: <formula>")
                delta[int(head[1:])] = fm.parse_formula(body)
        except ValueError as exc:
            raise FormatError(path, no, f"bad AFA line {line!r} ({exc})") from None
    if n is None or init is None or final is None:
        raise FormatError(path, 1, "AFA file needs @states, @initial and @final")
    if alphabet is None:
        alphabet = CharClass.full()
    return AfaSpec(n, tuple(delta.get(q, fm.FALSE) for q in range(n)), init, final, alphabet)


def _atom_file(atom: Atom) -> str:
    return f"{atom.name}.{'nfa' if atom.kind == 'nfa' else 'afa'}"


def write_master(p: Problem, directory) -> Path:
    """Write ``<dir>/<id>.master`` plus one file per automaton atom; returns the master path."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    lines = [f"problem {p.id}"]
    if p.expected is not None:
        lines.append(f"expected {p.expected} {p.provenance or 'unknown'}")
    for a in p.atoms:
        if a.kind in ("regex", "xregex"):
            lines.append(f"atom {a.name} {a.kind} {json.dumps(a.value, ensure_ascii=False)}")
        else:
            rel = _atom_file(a)
            text = write_nfa_text(a.value) if a.kind == "nfa" else write_afa_text(a.value)
            (d / rel).write_text(text, encoding="utf-8")
            lines.append(f"atom {a.name} {a.kind} {rel}")
    lines.append(f"query {QUERY_OF_KIND[p.kind]} " + " ; ".join(query_text(e) for e in p.query))
    path = d / f"{p.id}.master"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def parse_master(path) -> Problem:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    pid = path.stem
    expected = provenance = None
    atoms: list[Atom] = []
    query = None
    qkind = None
    qline = 1
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "problem":
            pid = rest
        elif word == "expected":
            parts = rest.split()
            if not parts or parts[0] not in ("empty", "nonempty"):
                raise FormatError(path, no, "expected must be 'empty' or 'nonempty'")
            expected = parts[0]
            provenance = parts[1] if len(parts) > 1 else None
        elif word == "atom":
            parts = rest.split(None, 2)
            if len(parts) != 3:
                raise FormatError(path, no, "atom needs a name, a kind and a value")
            name, akind, value = parts
            if any(a.name == name for a in atoms):
                raise FormatError(path, no, f"duplicate atom {name!r}")
            if akind in ("regex", "xregex"):
                try:
                    pattern = json.loads(value)
                except json.JSONDecodeError:
                    raise FormatError(path, no, "regex must be a double-quoted string") from None
                if not isinstance(pattern, str):
                    raise FormatError(path, no, "regex must be a double-quoted string")
                atoms.append(Atom(name, akind, pattern))
            elif akind in ("nfa", "afa"):
                ref = path.parent / value
                if not ref.is_file():
                    raise FormatError(path, no, f"missing atom file {value!r}")
                body = ref.read_text(encoding="utf-8")
                spec = parse_nfa_text(body, ref) if akind == "nfa" else parse_afa_text(body, ref)
                atoms.append(Atom(name, akind, spec))
            else:
                raise FormatError(path, no, f"unknown atom kind {akind!r}")
        elif word == "query":
            if query is not None:
                raise FormatError(path, no, "more than one query line")
            qkind, _, body = rest.partition(" ")
            if qkind == "empty":
                operands = [body]
            elif qkind in KIND_OF_QUERY:
                operands = body.split(";")
                if len(operands) != 2:
                    raise FormatError(path, no, f"{qkind} needs two operands separated by ';'")
            else:
                raise FormatError(path, no, f"unknown query kind {qkind!r}")
            try:
                query = tuple(parse_query(o) for o in operands)
            except ValueError as exc:
                raise FormatError(path, no, str(exc)) from None
            qline = no
        else:
            raise FormatError(path, no, f"unknown directive {word!r}")
    if query is None:
        raise FormatError(path, 1, "missing query line")
    if qkind == "empty":
        e = query[0]
        afa_names = {a.name for a in atoms if a.kind == "afa"}
        kind = "afa_empty" if e[0] == "atom" and e[1] in afa_names else "bre_empty"
    else:
        kind = KIND_OF_QUERY[qkind]
    try:
        return Problem(pid, kind, tuple(atoms), query, expected, provenance)
    except ValueError as exc:
        raise FormatError(path, qline, str(exc)) from None

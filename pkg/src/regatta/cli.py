"""Command-line entry point: solve, gen, bench and export-aiger."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import budget
from .bench.families import gen_param, preset
from .bench.formats import FormatError, parse_afa_text, parse_master, write_master
from .bench.problem import DEFAULT_ALPHABET_MAX, Problem, materialize
from .bench.randgen import afa_problem, random_suite
from .bench.report import emit_cactus, emit_records, emit_stats
from .bench.runner import TIMINGS, check_suite, cross_check, format_word, run_suite
from .bts import build_bw_bts, build_fw_bts, export_aiger
from .engines import ENGINE_NAMES, Options, Unknown, afa_of_instance, default_engine, run_engine

EXIT_EMPTY, EXIT_NONEMPTY, EXIT_ERROR = 0, 1, 2


def _positive(text: str) -> float:
    x = float(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _engines(text: str) -> list[str]:
    names = [e.strip() for e in text.split(",") if e.strip()]
    for e in names:
        if e not in ENGINE_NAMES:
            raise argparse.ArgumentTypeError(f"unknown engine {e!r}; choose from {', '.join(ENGINE_NAMES)}")
    return names


def _span(text: str) -> list[int]:
    lo, sep, hi = text.partition("-")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N or LO-HI") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("REGATTA_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"REGATTA_SEED must be an integer, got {env!r}") from None
    return 0


def load_problem(path) -> Problem:
    """A master file, or a bare AFA file (``.afa``) as an emptiness problem."""
    path = Path(path)
    if path.suffix == ".afa":
        if not path.is_file():
            raise FormatError(path, 0, "no such file")
        spec = parse_afa_text(path.read_text(encoding="utf-8"), path)
        return afa_problem(spec.build(), path.stem)
    if not path.is_file():
        raise FormatError(path, 0, "no such file")
    return parse_master(path)


def cmd_solve(args) -> int:
    try:
        p = load_problem(args.input)
        engine = args.engine[0] if args.engine else default_engine(p.kind)
        with budget.deadline(args.timeout):
            inst = materialize(p, args.alphabet_max)
            v = run_engine(engine, inst, Options(args.max_depth, _seed(args)))
    except FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except budget.Timeout:
        print(f"timeout after {args.timeout:g} s", file=sys.stderr)
        return EXIT_ERROR
    except Unknown as e:
        print(f"unknown: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    if v.empty:
        print("empty")
        return EXIT_EMPTY
    print("nonempty")
    print(f"witness: {format_word(v.word())}")
    return EXIT_NONEMPTY


def _gen_problems(args) -> list[Problem]:
    if args.preset:
        return [gen_param(f, n) for f, n in preset(args.preset)]
    if args.family is None or args.n is None:
        raise SystemExit("gen needs --preset or both --family and --n")
    return [gen_param(args.family, n) for n in args.n]


def cmd_gen(args) -> int:
    for p in _gen_problems(args):
        path = write_master(p, Path(args.out) / p.id)
        print(path)
    return 0


def suite_problems(specs: list[str], seed: int) -> list[Problem]:
    """Expand suite specifications into problems.

    A spec is a master/AFA file, a directory searched for ``*.master``,
    ``param:F:N`` or ``param:F:LO-HI``, ``preset:NAME``, ``random-afa:COUNT``
    or ``random-bre:COUNT`` (random suites use the run seed).
    """
    out: list[Problem] = []
    for spec in specs:
        head, _, rest = spec.partition(":")
        if head == "param":
            fam, _, ns = rest.partition(":")
            out += [gen_param(int(fam), n) for n in _span(ns)]
        elif head == "preset":
            out += [gen_param(f, n) for f, n in preset(rest)]
        elif head in ("random-afa", "random-bre"):
            out += random_suite(head.split("-")[1], int(rest), seed)
        else:
            path = Path(spec)
            if path.is_dir():
                out += [parse_master(m) for m in sorted(path.rglob("*.master"))]
            else:
                out.append(load_problem(path))
    return out


def cmd_bench(args) -> int:
    seed = _seed(args)
    try:
        problems = suite_problems(args.suite, seed)
    except (FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    engines = args.engine or list(ENGINE_NAMES)
    records = run_suite(
        problems,
        engines,
        timeout_s=args.timeout,
        jobs=args.jobs,
        seed=seed,
        max_depth=args.max_depth,
        alphabet_max=args.alphabet_max,
        timing=args.timing,
    )
    stats = emit_stats(records)
    sys.stdout.write(stats)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "stats.tsv").write_text(stats, encoding="utf-8")
        (out / "cactus.csv").write_text(emit_cactus(records), encoding="utf-8")
        header = {"seed": seed, "timing": args.timing, "timeout": f"{args.timeout:g}", "engines": ",".join(engines)}
        (out / "records.tsv").write_text(emit_records(records, header), encoding="utf-8")
    issues = cross_check(problems, records, args.oracle_len, args.alphabet_max)
    for line in issues:
        print(f"cross-check: {line}", file=sys.stderr)
    return 1 if issues else 0


def cmd_export_aiger(args) -> int:
    try:
        p = load_problem(args.input)
        inst = materialize(p, args.alphabet_max)
        a = afa_of_instance(inst)
    except (FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    b = build_fw_bts(a) if args.forward else build_bw_bts(a)
    text = export_aiger(b)
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="regatta", description="Emptiness of alternating automata and Boolean combinations of regexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, engines=True):
        if engines:
            p.add_argument("--engine", type=_engines, default=None, help="engine name(s), comma separated")
        p.add_argument("--timeout", type=_positive, default=60.0, help="seconds per task (default 60)")
        p.add_argument("--seed", type=int, default=None, help="random seed (default $REGATTA_SEED or 0)")
        p.add_argument("--max-depth", type=int, default=64, help="unrolling bound for bts-bmc")
        p.add_argument("--alphabet-max", type=lambda s: int(s, 0), default=DEFAULT_ALPHABET_MAX, help="largest code point")

    p = sub.add_parser("solve", help="decide one problem")
    p.add_argument("input", help="master file or .afa file")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write parametric benchmark problems")
    p.add_argument("--family", type=int, choices=range(1, 9), metavar="1..8")
    p.add_argument("--n", type=_span, help="N or LO-HI")
    p.add_argument("--preset", choices=("paper-b-param", "desk"))
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="run engines over a suite")
    p.add_argument("suite", nargs="+", help="files, directories, param:F:LO-HI, preset:NAME, random-afa:N, random-bre:N")
    common(p)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="directory for stats.tsv, cactus.csv and records.tsv")
    p.add_argument("--timing", choices=TIMINGS, default="ops", help="ops (deterministic, default) or wall")
    p.add_argument("--oracle-len", type=int, default=0, help="also cross-check against word enumeration to this length")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-aiger", help="write the reachability encoding of a problem")
    p.add_argument("input", help="master file or .afa file")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--forward", action="store_true", help="forward encoding instead of backward")
    p.add_argument("--alphabet-max", type=lambda s: int(s, 0), default=DEFAULT_ALPHABET_MAX)
    p.set_defaults(func=cmd_export_aiger)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

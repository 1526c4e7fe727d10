"""Engine sweeps with per-task isolation, timeouts and answer cross-checking.

Each (problem, engine) task runs in a forked worker process.  Two timing
modes exist:

``ops``   (default) cost is the engine's deterministic work counter converted
          to pseudo-seconds at :data:`OPS_PER_SECOND`; the timeout is the
          matching step limit.  Results are reproducible byte for byte.
``wall``  cost is measured wall-clock time; the timeout is a wall deadline.

In both modes a hard watchdog kills a worker that stops responding.
"""

from __future__ import annotations

import multiprocessing as mp
import time
import traceback
from dataclasses import dataclass
from multiprocessing.connection import wait

from .. import budget
from ..engines import ENGINE_NAMES, Options, applies, run_engine
from .oracle import is_witness, oracle_empty
from .problem import DEFAULT_ALPHABET_MAX, Problem, materialize

# ticks per pseudo-second; engines were charged so that this roughly matches
# one wall-clock second on a single desktop core
OPS_PER_SECOND = 12000
WALL_GRACE = 2.0
TIMINGS = ("ops", "wall")

OK, TIMEOUT, ERROR = "ok", "timeout", "error"


@dataclass(frozen=True)
class RunRecord:
    problem: str
    engine: str
    empty: bool | None
    witness: tuple[int, ...] | None  # code points
    seconds: float
    status: str
    msg: str = ""
    ticks: int = 0

    @property
    def verdict(self) -> str | None:
        if self.status != OK:
            return None
        return "empty" if self.empty else "nonempty"


class CrossCheckError(Exception):
    def __init__(self, issues: list[str]):
        super().__init__(f"{len(issues)} cross-check failure(s):\n" + "\n".join(issues))
        self.issues = issues


def _execute(problem: Problem, engine: str, timeout_s: float, timing: str, opt: Options, alphabet_max: int) -> dict:
    """Run one task in the current process; never raises."""
    max_ticks = int(timeout_s * OPS_PER_SECOND) if timing == "ops" else None
    wall = None if timing == "ops" else timeout_s
    start = time.monotonic()
    out = {"status": OK, "empty": None, "witness": None, "msg": "", "ticks": 0}
    with budget.deadline(wall, max_ticks):
        try:
            inst = materialize(problem, alphabet_max)
            v = run_engine(engine, inst, opt)
            out["empty"] = v.empty
            if not v.empty:
                out["witness"] = v.word()
        except budget.Timeout as e:
            out["status"], out["msg"] = TIMEOUT, str(e)
        except RecursionError:
            out["status"], out["msg"] = ERROR, "recursion limit"
        except Exception as e:
            out["status"], out["msg"] = ERROR, f"{type(e).__name__}: {e}"
        out["ticks"] = budget.ticks()
    elapsed = time.monotonic() - start
    if timing == "ops":
        out["seconds"] = timeout_s if out["status"] == TIMEOUT else out["ticks"] / OPS_PER_SECOND
    else:
        out["seconds"] = min(elapsed, timeout_s) if out["status"] == TIMEOUT else elapsed
    return out


def _worker(conn, args) -> None:
    try:
        conn.send(_execute(*args))
    except BaseException:
        conn.send({"status": ERROR, "msg": traceback.format_exc(limit=1), "seconds": 0.0, "ticks": 0})
    finally:
        conn.close()


def _record(pid: str, engine: str, out: dict) -> RunRecord:
    return RunRecord(
        problem=pid,
        engine=engine,
        empty=out.get("empty") if out["status"] == OK else None,
        witness=tuple(out["witness"]) if out.get("witness") is not None else None,
        seconds=round(float(out["seconds"]), 6),
        status=out["status"],
        msg=out.get("msg", ""),
        ticks=out.get("ticks", 0),
    )


def _watchdog_seconds(timeout_s: float, timing: str) -> float:
    # in ops mode the step limit is authoritative; the watchdog only catches hangs
    return timeout_s + WALL_GRACE if timing == "wall" else 4 * timeout_s + 10


def run_suite(
    problems: list[Problem],
    engines: list[str] | tuple[str, ...] = ENGINE_NAMES,
    timeout_s: float = 60.0,
    jobs: int = 1,
    seed: int = 0,
    max_depth: int = 64,
    alphabet_max: int = DEFAULT_ALPHABET_MAX,
    timing: str = "ops",
    isolate: bool = True,
) -> list[RunRecord]:
    """Run every applicable (problem, engine) pair; failures become records."""
    if timeout_s <= 0:
        raise ValueError("timeout must be positive")
    if timing not in TIMINGS:
        raise ValueError(f"timing must be one of {TIMINGS}")
    for e in engines:
        if e not in ENGINE_NAMES:
            raise ValueError(f"unknown engine {e!r}")
    ids = [p.id for p in problems]
    if len(set(ids)) != len(ids):
        raise ValueError("problem ids must be unique")
    opt = Options(max_depth=max_depth, seed=seed)
    tasks = [(p, e) for p in problems for e in engines if applies(e, p.kind)]
    records: list[RunRecord] = []
    if not isolate:
        for p, e in tasks:
            records.append(_record(p.id, e, _execute(p, e, timeout_s, timing, opt, alphabet_max)))
        return sort_records(records)

    ctx = mp.get_context("fork")
    limit = _watchdog_seconds(timeout_s, timing)
    pending = list(reversed(tasks))
    running: dict = {}  # conn -> (proc, pid, engine, started)
    while pending or running:
        while pending and len(running) < max(1, jobs):
            p, e = pending.pop()
            rx, tx = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_worker, args=(tx, (p, e, timeout_s, timing, opt, alphabet_max)))
            proc.start()
            tx.close()
            running[rx] = (proc, p.id, e, time.monotonic())
        now = time.monotonic()
        wake = min(started + limit for _, _, _, started in running.values()) - now
        for conn in wait(list(running), timeout=max(0.0, wake)):
            proc, pid, e, _ = running.pop(conn)
            try:
                out = conn.recv()
            except EOFError:
                out = {"status": ERROR, "msg": f"worker exited with code {proc.exitcode}", "seconds": 0.0}
            conn.close()
            proc.join()
            records.append(_record(pid, e, out))
        now = time.monotonic()
        for conn, (proc, pid, e, started) in list(running.items()):
            if now - started >= limit:
                proc.kill()
                proc.join()
                conn.close()
                del running[conn]
                records.append(
                    _record(pid, e, {"status": TIMEOUT, "msg": "killed by watchdog", "seconds": timeout_s})
                )
    return sort_records(records)


def sort_records(records) -> list[RunRecord]:
    return sorted(records, key=lambda r: (r.problem, r.engine))


def cross_check(
    problems: list[Problem],
    records: list[RunRecord],
    oracle_len: int = 0,
    alphabet_max: int = DEFAULT_ALPHABET_MAX,
) -> list[str]:
    """Problems with the suite's answers, as human-readable lines (empty = all good).

    Checks that ok verdicts agree with each other and with ``expected``, that
    every nonempty witness replays under direct semantics, and (when
    ``oracle_len`` > 0) that a brute-force witness is never contradicted.
    """
    by_id = {p.id: p for p in problems}
    grouped: dict[str, list[RunRecord]] = {}
    for r in records:
        if r.status == OK:
            grouped.setdefault(r.problem, []).append(r)
    issues = []
    for pid in sorted(by_id):
        p = by_id[pid]
        oks = grouped.get(pid, [])
        verdicts = {r.verdict for r in oks}
        if len(verdicts) > 1:
            detail = ", ".join(f"{r.engine}={r.verdict}" for r in oks)
            issues.append(f"{pid}: engines disagree ({detail})")
        if p.expected is not None:
            for r in oks:
                if r.verdict != p.expected:
                    issues.append(f"{pid}: {r.engine} says {r.verdict}, expected {p.expected}")
        inst = None
        for r in oks:
            if r.empty:
                continue
            inst = inst or materialize(p, alphabet_max)
            if not is_witness(p, r.witness, alphabet_max, inst):
                issues.append(f"{pid}: {r.engine} witness {format_word(r.witness)} does not replay")
        if oracle_len > 0 and any(r.empty for r in oks):
            inst = inst or materialize(p, alphabet_max)
            res = oracle_empty(p, oracle_len, inst)
            if res.nonempty:
                for r in oks:
                    if r.empty:
                        issues.append(f"{pid}: {r.engine} says empty, oracle found {format_word(res.witness)}")
    return issues


def check_suite(problems, records, oracle_len: int = 0, alphabet_max: int = DEFAULT_ALPHABET_MAX) -> None:
    issues = cross_check(problems, records, oracle_len, alphabet_max)
    if issues:
        raise CrossCheckError(issues)


def format_word(cps) -> str:
    if cps is None:
        return "-"
    if not cps:
        return "ε"
    return " ".join(f"U+{cp:04X}" for cp in cps)

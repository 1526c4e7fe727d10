"""Summary tables and cactus data computed from run records."""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass

from .runner import ERROR, OK, TIMEOUT, RunRecord, format_word

STATS_COLUMNS = ("engine", "solved", "mean", "median", "timeouts", "errors")
CACTUS_COLUMNS = ("engine", "rank", "cumulative_seconds")
RECORD_COLUMNS = ("problem", "engine", "status", "verdict", "seconds", "ticks", "witness", "msg")


@dataclass(frozen=True)
class EngineStats:
    engine: str
    solved: int
    mean: float | None
    median: float | None
    timeouts: int
    errors: int


def _fmt(x: float | None) -> str:
    return "-" if x is None else f"{x:.6f}"


def engine_stats(records: list[RunRecord]) -> list[EngineStats]:
    """Mean and median over ok runs, plus timeout and error counts, per engine."""
    out = []
    for engine in sorted({r.engine for r in records}):
        mine = [r for r in records if r.engine == engine]
        times = [r.seconds for r in mine if r.status == OK]
        out.append(
            EngineStats(
                engine,
                len(times),
                statistics.fmean(times) if times else None,
                statistics.median(times) if times else None,
                sum(r.status == TIMEOUT for r in mine),
                sum(r.status == ERROR for r in mine),
            )
        )
    return out


def emit_stats(records: list[RunRecord]) -> str:
    """Tab-separated summary, one row per engine in name order."""
    lines = ["\t".join(STATS_COLUMNS)]
    for s in engine_stats(records):
        lines.append("\t".join([s.engine, str(s.solved), _fmt(s.mean), _fmt(s.median), str(s.timeouts), str(s.errors)]))
    return "\n".join(lines) + "\n"


def cactus_rows(records: list[RunRecord]) -> list[tuple[str, int, float]]:
    """(engine, rank, cumulative seconds) over ok runs sorted by runtime; timeouts omitted."""
    rows = []
    for engine in sorted({r.engine for r in records}):
        times = sorted(r.seconds for r in records if r.engine == engine and r.status == OK)
        total = 0.0
        for rank, t in enumerate(times, 1):
            total += t
            rows.append((engine, rank, total))
    return rows


def emit_cactus(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CACTUS_COLUMNS)
    for engine, rank, total in cactus_rows(records):
        w.writerow([engine, rank, _fmt(total)])
    return buf.getvalue()


def emit_records(records: list[RunRecord], header: dict[str, object] | None = None) -> str:
    """Raw records as TSV; ``header`` items become leading ``# key: value`` lines."""
    lines = [f"# {k}: {v}" for k, v in (header or {}).items()]
    lines.append("\t".join(RECORD_COLUMNS))
    for r in records:
        msg = r.msg.replace("\t", " ").replace("\n", " ")
        lines.append(
            "\t".join(
                [r.problem, r.engine, r.status, r.verdict or "-", _fmt(r.seconds), str(r.ticks), format_word(r.witness), msg]
            )
        )
    return "\n".join(lines) + "\n"

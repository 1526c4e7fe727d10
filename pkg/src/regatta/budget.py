"""Cooperative deadlines and a deterministic work counter.

Engines call :func:`tick` inside their main loops.  A tick raises
:class:`Timeout` once the active deadline has passed, and counts work so
that benchmark runs can report a reproducible cost next to wall time.
"""

from __future__ import annotations

import time
from contextlib import contextmanager


class Timeout(Exception):
    pass


_deadline: float | None = None
_max_ticks: int | None = None
_ticks = 0
_work = 0

# elementary steps (set comparisons, table cells) that make up one tick
WORK_PER_TICK = 256


def tick(n: int = 1) -> None:
    global _ticks
    _ticks += n
    if _max_ticks is not None and _ticks > _max_ticks:
        raise Timeout(f"step limit {_max_ticks} exceeded")
    if _deadline is not None and time.monotonic() > _deadline:
        raise Timeout(f"deadline exceeded after {_ticks} steps")


def work(n: int) -> None:
    """Charge ``n`` elementary steps; every :data:`WORK_PER_TICK` of them is a tick."""
    global _work
    _work += n
    if _work >= WORK_PER_TICK:
        k, _work = divmod(_work, WORK_PER_TICK)
        tick(k)


def ticks() -> int:
    return _ticks


@contextmanager
def deadline(seconds: float | None, max_ticks: int | None = None):
    """Activate a deadline ``seconds`` from now and/or a limit on counted steps.

    The step counter restarts at zero inside the block; nested blocks keep
    the tighter wall deadline.  A step limit applies to its own block only.
    """
    global _deadline, _ticks, _max_ticks, _work
    saved, saved_ticks, saved_max, saved_work = _deadline, _ticks, _max_ticks, _work
    if seconds is not None:
        until = time.monotonic() + seconds
        _deadline = until if saved is None else min(saved, until)
    _max_ticks = max_ticks
    _ticks = 0
    _work = 0
    try:
        yield
    finally:
        _deadline = saved
        _max_ticks = saved_max
        _ticks = saved_ticks + _ticks
        _work = saved_work

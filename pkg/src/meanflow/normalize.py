"""Schedule transformations that never increase ``sum C_j``.

All operations work on per-job time sets and rebuild the machine layout
with the canonical assignment, so they accept any valid schedule (integral
or rational). Jobs are compared by index, which follows release order.

Set the ``meanflow.normalize`` logger to DEBUG for one line per reduction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from . import _intervals as iv
from .model import (
    Block,
    Schedule,
    ScheduleError,
    decompose_blocks,
    blocks_to_supports,
    check_busy,
    require_valid,
    segments,
)

log = logging.getLogger(__name__)

Mode = Literal["integral", "continuous"]


@dataclass(frozen=True)
class Potential:
    """Per-job potential vector; ordered lexicographically."""

    mode: Mode
    values: tuple[Fraction, ...]

    def __lt__(self, other: "Potential") -> bool:
        return self.values < other.values

    def __le__(self, other: "Potential") -> bool:
        return self.values <= other.values


def potential(schedule: Schedule, mode: Mode = "continuous") -> Potential:
    """``integral``: sum of the integer times in each job's set (integral schedules only).
    ``continuous``: half the integral of ``t`` over each job's set.
    """
    if mode == "integral":
        if not schedule.is_integral:
            raise ScheduleError("integral", "integral potential needs integer preemption times")
        vals = tuple(
            sum((Fraction((a + b - 1) * (b - a), 2) for a, b in s), Fraction(0)) for s in schedule.supports
        )
    elif mode == "continuous":
        vals = tuple(iv.integral_moment(s) / 2 for s in schedule.supports)
    else:
        raise ValueError(f"unknown potential mode {mode!r}")
    return Potential(mode, vals)


def _auto_mode(schedule: Schedule) -> Mode:
    return "integral" if schedule.is_integral and schedule.instance.is_integral else "continuous"


@dataclass(frozen=True)
class ReductionTrace:
    i: int
    j: int
    T: tuple[iv.Span, ...]
    t0: Fraction
    before: Potential
    after: Potential

    @property
    def changed(self) -> bool:
        return self.before != self.after

    def __str__(self) -> str:
        fmt = lambda v: ", ".join(str(x) for x in v.values)  # noqa: E731
        return f"reduce ({self.i},{self.j}) t0={self.t0} H=({fmt(self.before)}) -> ({fmt(self.after)})"


def _reduced_supports(sets: list[list[iv.Span]], i: int, j: int) -> tuple[list[iv.Span], list[iv.Span], list[iv.Span], Fraction]:
    si, sj = sets[i - 1], sets[j - 1]
    common = iv.intersection(si, sj)
    T = iv.union(iv.difference(si, sj), iv.difference(sj, si))
    half = iv.measure(T) / 2
    t0 = iv.split_at_measure(T, half) if T else Fraction(0)
    new_i = iv.union(common, iv.clip(T, hi=t0))
    new_j = iv.union(common, iv.clip(T, lo=t0))
    return new_i, new_j, T, t0


def in_order(schedule: Schedule, i: int, j: int) -> bool:
    """True when the ``(i, j)``-reduction would leave the schedule unchanged."""
    sets = list(schedule.supports)
    new_i, new_j, _, _ = _reduced_supports(sets, i, j)
    return new_i == sets[i - 1] and new_j == sets[j - 1]


def reduce_pair_traced(schedule: Schedule, i: int, j: int, mode: Mode | None = None) -> tuple[Schedule, ReductionTrace]:
    n = schedule.instance.n
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got i={i}, j={j}")
    mode = mode or _auto_mode(schedule)
    sets = list(schedule.supports)
    new_i, new_j, T, t0 = _reduced_supports(sets, i, j)
    before = potential(schedule, mode)
    if new_i == sets[i - 1] and new_j == sets[j - 1]:
        return schedule, ReductionTrace(i, j, tuple(T), t0, before, before)
    sets[i - 1], sets[j - 1] = new_i, new_j
    out = Schedule.from_supports(schedule.instance, sets)
    trace = ReductionTrace(i, j, tuple(T), t0, before, potential(out, mode))
    log.debug("%s", trace)
    return out, trace


def reduce_pair(schedule: Schedule, i: int, j: int) -> Schedule:
    """Give the earlier half of the times where exactly one of ``i < j`` runs to ``i``.

    Let ``T`` be the times where exactly one of the two jobs runs and ``t0``
    the smallest point splitting ``T`` into halves of equal measure. Job
    ``i`` takes ``T`` before ``t0``, job ``j`` the rest; the times where
    both run are untouched. For integral schedules ``t0`` is an integer.
    """
    return reduce_pair_traced(schedule, i, j)[0]


def _pieces(sets: list[list[iv.Span]], extra: set[Fraction]) -> list[tuple[Fraction, Fraction, frozenset[int]]]:
    points = sorted({t for s in sets for span in s for t in span} | extra)
    out = []
    for a, b in zip(points, points[1:]):
        prof = frozenset(k + 1 for k, s in enumerate(sets) if any(x <= a < y for x, y in s))
        out.append((a, b, prof))
    return out


def make_busy(schedule: Schedule) -> Schedule:
    """Move work of late jobs into earlier idle capacity until the schedule is busy.

    Repeatedly takes the earliest span where a machine idles while some
    released job runs only later, and moves as much of that job's final
    interval as fits into the idle span. The job with the latest completion
    goes first.
    """
    require_valid(schedule)
    inst = schedule.instance
    sets = [list(s) for s in schedule.supports]
    releases = set(inst.releases)
    moves = 0
    while True:
        comp = [s[-1][1] for s in sets]
        hi = max(comp)
        move = None
        for a, b, prof in _pieces(sets, {r for r in releases if r < hi}):
            if len(prof) >= inst.m:
                continue
            cands = [
                j for j in range(1, inst.n + 1)
                if j not in prof and inst.release(j) <= a and comp[j - 1] > a
            ]
            if cands:
                j = max(cands, key=lambda k: (comp[k - 1], -k))
                move = (a, b, j)
                break
        if move is None:
            break
        a, b, j = move
        c, end = sets[j - 1][-1]
        delta = min(b - a, end - c)
        sets[j - 1] = iv.union(iv.difference(sets[j - 1], [(end - delta, end)]), [(a, a + delta)])
        moves += 1
    if moves == 0:
        return schedule
    log.debug("make_busy: %d moves", moves)
    return Schedule.from_supports(inst, sets)


def _sorted(values) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def order_completions(schedule: Schedule, max_rounds: int = 1000) -> Schedule:
    """Reduce job 1 with jobs 2..n, then job 2 with 3..n, and so on, until ``C_1 <= ... <= C_n``.

    One sweep is not always enough: reducing ``(2, j)`` can pull ``C_2``
    below ``C_1``. Sweeps repeat until the completions are sorted; each
    changing reduction lowers the potential.
    """
    n = schedule.instance.n
    rounds = 0
    while not _sorted(schedule.completion):
        if rounds == max_rounds:
            raise RuntimeError("order_completions exceeded its sweep budget")
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                schedule = reduce_pair(schedule, i, j)
        rounds += 1
    if rounds > 1:
        log.debug("order_completions: %d sweeps", rounds)
    return schedule


def first_out_of_order(schedule: Schedule) -> tuple[int, int] | None:
    n = schedule.instance.n
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if not in_order(schedule, i, j):
                return i, j
    return None


def make_irreducible_traced(schedule: Schedule, mode: Mode | None = None, max_steps: int = 1_000_000) -> tuple[Schedule, list[ReductionTrace]]:
    require_valid(schedule)
    if not check_busy(schedule):
        raise ScheduleError("busy", "make_irreducible needs a busy schedule; run make_busy first")
    mode = mode or _auto_mode(schedule)
    traces: list[ReductionTrace] = []
    while True:
        pair = first_out_of_order(schedule)
        if pair is None:
            return schedule, traces
        schedule, trace = reduce_pair_traced(schedule, *pair, mode=mode)
        if not trace.after < trace.before:
            raise AssertionError(f"potential did not decrease: {trace}")
        traces.append(trace)
        if len(traces) > max_steps:
            raise RuntimeError("make_irreducible exceeded its step budget")


def make_irreducible(schedule: Schedule, mode: Mode | None = None) -> Schedule:
    """Apply reductions to out-of-order pairs (lowest ``i``, then lowest ``j``) until none is left.

    The potential vector drops lexicographically with every reduction, so the
    loop ends; the result is busy with every pair in order.
    """
    return make_irreducible_traced(schedule, mode)[0]


def _lex_key(block: Block, n: int) -> tuple[int, ...]:
    prof = set(block.profile)
    return tuple(0 if j in prof else 1 for j in range(1, n + 1))


def make_tidy(schedule: Schedule) -> Schedule:
    """Sort the blocks of every segment into lexicographic profile order.

    Needs ordered completion times bounded by the horizon ``r_n + n p``.
    Sorting is the end state of repeatedly swapping adjacent out-of-order
    blocks; no completion time increases.
    """
    require_valid(schedule)
    inst = schedule.instance
    comp = schedule.completion
    if not _sorted(comp):
        raise ScheduleError("ordered", "make_tidy needs C_1 <= ... <= C_n; run order_completions first")
    if max(comp) > inst.horizon:
        raise ScheduleError("horizon", f"completion {max(comp)} beyond horizon {inst.horizon}")
    blocks = decompose_blocks(schedule, validate=False)
    out: list[Block] = []
    for lo, hi in segments(inst):
        inside = [b for b in blocks if lo <= b.start and b.end <= hi]
        clock = lo
        for b in sorted(inside, key=lambda b: _lex_key(b, inst.n)):
            out.append(Block(clock, clock + b.length, b.profile))
            clock += b.length
    sets = blocks_to_supports(inst.n, out)
    if sets == list(schedule.supports):
        return schedule
    return Schedule.from_supports(inst, sets)

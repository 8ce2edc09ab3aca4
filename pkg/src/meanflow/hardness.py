"""3-Partition reduction instances and exhaustive optimum oracles.

:func:`generate` maps a 3-Partition instance ``(n, y, x_1..x_3n)`` to a
preemptive scheduling instance with arbitrary processing times on ``n``
machines plus a threshold ``D``; a 3-partition exists exactly when some
schedule reaches ``sum C_j <= D``. With ``A = 6ny`` and ``B = 18 n^2 y^2``:

* x-jobs ``1..3n``: release 0, processing ``A x_j``
* B-jobs ``3n+1..4n``: release ``Ay``, processing ``B``
* 1-jobs ``4n+1..4n+An``: release ``Ay + B``, processing 1

and ``D = 3nAy + n(Ay + B) + n * sum_{i=1..A} (Ay + B + i)``.

Only the constructive direction is executable here (:func:`yes_schedule`).
The converse rests on three lower bounds for schedules of a no-instance:
an x-job finishing after ``Ay + B``, a B-job finishing after ``Ay + 2B``,
or otherwise some machine idling for ``A`` units before ``Ay``, which
pushes ``A`` unit jobs to ``Ay + A + B`` or later. Each bound exceeds ``D``.

The oracles at the bottom search unit-time slot assignments exhaustively and
are the ground truth the LP pipeline is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .model import ExecInterval, Instance, InstanceError, Schedule
from .rational import RationalLike, as_rational


class OracleSizeError(ValueError):
    """Raised when an exhaustive search would be too large."""

    def __init__(self, dimension: str, value, limit) -> None:
        self.dimension = dimension
        self.value = value
        self.limit = limit
        super().__init__(f"oracle refused: {dimension} = {value} exceeds limit {limit}")


@dataclass(frozen=True)
class ThreePartition:
    n: int
    y: int
    x: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(self.x))
        if self.n < 1:
            raise InstanceError("3-Partition needs n >= 1")
        if len(self.x) != 3 * self.n:
            raise InstanceError(f"expected {3 * self.n} numbers, got {len(self.x)}")
        if sum(self.x) != self.n * self.y:
            raise InstanceError(f"sum of x is {sum(self.x)}, expected n*y = {self.n * self.y}")
        for i, v in enumerate(self.x, start=1):
            # y/4 < x_i < y/2, kept in integers
            if not (self.y < 4 * v and 2 * v < self.y):
                raise InstanceError(f"x_{i} = {v} not strictly between y/4 and y/2 (y = {self.y})")


@dataclass(frozen=True)
class GeneralInstance:
    """Jobs with individual ``(release, processing)`` on ``m`` identical machines."""

    m: int
    jobs: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self) -> None:
        jobs = tuple((as_rational(r), as_rational(p)) for r, p in self.jobs)
        object.__setattr__(self, "jobs", jobs)
        if self.m < 1 or not jobs:
            raise InstanceError("need m >= 1 and at least one job")
        if any(r < 0 or p <= 0 for r, p in jobs):
            raise InstanceError("releases must be >= 0 and processing times > 0")

    @classmethod
    def of(cls, m: int, jobs: Sequence[tuple[RationalLike, RationalLike]]) -> "GeneralInstance":
        return cls(m, tuple((as_rational(r), as_rational(p)) for r, p in jobs))

    @property
    def n(self) -> int:
        return len(self.jobs)

    @property
    def releases(self) -> tuple[Fraction, ...]:
        return tuple(r for r, _ in self.jobs)

    def release(self, job: int) -> Fraction:
        return self.jobs[job - 1][0]

    def processing(self, job: int) -> Fraction:
        return self.jobs[job - 1][1]

    @property
    def horizon(self) -> Fraction:
        return max(self.releases) + sum(p for _, p in self.jobs)


@dataclass(frozen=True)
class HardnessInstance:
    source: ThreePartition
    A: int
    B: int
    m: int
    N: int
    instance: GeneralInstance
    D: int


def threshold(n: int, y: int) -> int:
    A = 6 * n * y
    B = 18 * n * n * y * y
    return 3 * n * A * y + n * (A * y + B) + n * sum(A * y + B + i for i in range(1, A + 1))


def generate(tp: ThreePartition) -> HardnessInstance:
    n, y = tp.n, tp.y
    A = 6 * n * y
    B = 18 * n * n * y * y
    jobs: list[tuple[int, int]] = [(0, A * x) for x in tp.x]
    jobs += [(A * y, B)] * n
    jobs += [(A * y + B, 1)] * (A * n)
    inst = GeneralInstance.of(n, jobs)
    return HardnessInstance(tp, A, B, n, 4 * n + A * n, inst, threshold(n, y))


def yes_schedule(tp: ThreePartition, partition: Sequence[Sequence[int]]) -> Schedule:
    """Schedule reaching ``sum C_j <= D`` from a 3-partition (1-based indices into ``x``).

    Machine ``k`` runs the three x-jobs of triple ``k`` back to back in
    ``[0, Ay)``, then B-job ``3n + k`` and then ``A`` unit jobs.
    """
    n, y = tp.n, tp.y
    triples = [tuple(sorted(t)) for t in partition]
    used = sorted(i for t in triples for i in t)
    if len(triples) != n or used != list(range(1, 3 * n + 1)):
        raise InstanceError("partition must split 1..3n into n groups")
    for t in triples:
        if sum(tp.x[i - 1] for i in t) != y:
            raise InstanceError(f"triple {t} sums to {sum(tp.x[i - 1] for i in t)}, not {y}")
    h = generate(tp)
    A, B = h.A, h.B
    out = []
    for k, t in enumerate(triples, start=1):
        clock = 0
        for i in t:
            out.append(ExecInterval(i, k, clock, clock + A * tp.x[i - 1]))
            clock += A * tp.x[i - 1]
        out.append(ExecInterval(3 * n + k, k, A * y, A * y + B))
        base = 4 * n + (k - 1) * A
        for i in range(1, A + 1):
            out.append(ExecInterval(base + i, k, A * y + B + i - 1, A * y + B + i))
    return Schedule(h.instance, tuple(out))  # type: ignore[arg-type]


def find_partition(tp: ThreePartition) -> list[tuple[int, int, int]] | None:
    """Exhaustive search for a 3-partition; only meant for tiny test inputs."""
    idx = list(range(1, 3 * tp.n + 1))

    def rec(left: list[int]) -> list[tuple[int, int, int]] | None:
        if not left:
            return []
        first, rest = left[0], left[1:]
        for a, b in combinations(rest, 2):
            if tp.x[first - 1] + tp.x[a - 1] + tp.x[b - 1] == tp.y:
                sub = rec([i for i in rest if i not in (a, b)])
                if sub is not None:
                    return [(first, a, b), *sub]
        return None

    return rec(idx)


# --- oracles ----------------------------------------------------------------

MAX_JOBS_EQUAL = 6
MAX_HORIZON_EQUAL = 24
MAX_JOBS_GENERAL = 5
MAX_WORK_GENERAL = 20


def _slot_search(m: int, releases: Sequence[int], work: Sequence[int]) -> int:
    """Minimum ``sum C_j`` over schedules that preempt only at integer times.

    In each unit slot ``min(m, #available)`` released unfinished jobs run.
    Leaving a machine idle while an available job waits never helps: moving
    one unit of that job's last slot into the idle one keeps the schedule
    feasible and cannot delay anything. Released jobs with equal remaining
    work are interchangeable, so states store that remaining work as a
    sorted tuple.
    """
    order = sorted(range(len(releases)), key=lambda k: releases[k])
    rel = [releases[k] for k in order]
    wk = [work[k] for k in order]
    n = len(rel)

    def arrivals(t: int, start: int) -> tuple[int, list[int]]:
        nxt = start
        added = []
        while nxt < n and rel[nxt] <= t:
            added.append(wk[nxt])
            nxt += 1
        return nxt, added

    @lru_cache(maxsize=None)
    def best(t: int, nxt: int, rem: tuple[int, ...]) -> int:
        if not rem:
            if nxt == n:
                return 0
            t = rel[nxt]
            nxt2, added = arrivals(t, nxt)
            return best(t, nxt2, tuple(sorted(added)))
        k = min(m, len(rem))
        nxt2, added = arrivals(t + 1, nxt)
        result = None
        seen = set()
        for pick in combinations(range(len(rem)), k):
            vals = tuple(rem[i] for i in pick)
            if vals in seen:
                continue
            seen.add(vals)
            chosen = set(pick)
            cost = 0
            left = list(added)
            for i, r in enumerate(rem):
                if i in chosen:
                    if r == 1:
                        cost += t + 1
                    else:
                        left.append(r - 1)
                else:
                    left.append(r)
            total = cost + best(t + 1, nxt2, tuple(sorted(left)))
            if result is None or total < result:
                result = total
        return result

    nxt, added = arrivals(rel[0], 0)
    return best(rel[0], nxt, tuple(sorted(added)))


def brute_force_equal_p(instance: Instance, integral_only: bool = True) -> Fraction:
    """Exact optimum of an integral equal-length instance by exhaustive slot search.

    With ``integral_only`` the search preempts at integer times only, which
    loses nothing because an integral optimum always exists. Otherwise it
    searches half-integer slots, a strictly larger family of schedules; the
    two answers agree whenever that existence result holds.
    """
    if not instance.is_integral:
        raise InstanceError("the oracle needs integer p and releases")
    if instance.n > MAX_JOBS_EQUAL:
        raise OracleSizeError("n", instance.n, MAX_JOBS_EQUAL)
    if instance.horizon > MAX_HORIZON_EQUAL:
        raise OracleSizeError("horizon", instance.horizon, MAX_HORIZON_EQUAL)
    scale = 1 if integral_only else 2
    rel = [int(r) * scale for r in instance.releases]
    work = [int(instance.p) * scale] * instance.n
    return Fraction(_slot_search(instance.m, rel, work), scale)


def brute_force_general(instance: GeneralInstance) -> Fraction:
    """Exact optimum for integer data with arbitrary processing times.

    Restricting preemptions to integer times is safe for integer data by the
    same flow argument as in the equal-length case.
    """
    if any(r.denominator != 1 or p.denominator != 1 for r, p in instance.jobs):
        raise InstanceError("the oracle needs integer releases and processing times")
    if instance.n > MAX_JOBS_GENERAL:
        raise OracleSizeError("n", instance.n, MAX_JOBS_GENERAL)
    total = sum(p for _, p in instance.jobs)
    if total > MAX_WORK_GENERAL:
        raise OracleSizeError("total processing", total, MAX_WORK_GENERAL)
    rel = [int(r) for r, _ in instance.jobs]
    work = [int(p) for _, p in instance.jobs]
    return Fraction(_slot_search(instance.m, rel, work))

"""Open shop with unit operations and release dates, minimising ``sum C_i``.

Every job needs one unit of work on each of ``m`` machines, in any order,
never on two machines at once. Forgetting which machine does what leaves a
parallel-machine problem with ``p = m`` that preempts at integer times only,
so the equal-length pipeline solves it; machines are then put back by
colouring the bipartite graph of (slot, job) units with ``m`` colours.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import flow, lp
from .model import Instance, InstanceError, Schedule, ScheduleError, require_valid


@dataclass(frozen=True)
class OpenShopInstance:
    m: int
    releases: tuple[int, ...]

    def __post_init__(self) -> None:
        rel = tuple(self.releases)
        object.__setattr__(self, "releases", rel)
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise InstanceError(f"machine count must be a positive integer, got {self.m!r}")
        if not rel:
            raise InstanceError("an instance needs at least one job")
        for r in rel:
            if isinstance(r, bool) or not isinstance(r, int) or r < 0:
                raise InstanceError(f"open-shop releases must be non-negative integers, got {r!r}")

    @property
    def n(self) -> int:
        return len(self.releases)


@dataclass(frozen=True, order=True)
class Operation:
    job: int
    machine: int
    slot: int


@dataclass(frozen=True)
class OpenShopSchedule:
    instance: OpenShopInstance
    assignments: tuple[Operation, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignments", tuple(sorted(self.assignments)))

    def completion(self, job: int) -> int:
        return max(op.slot for op in self.assignments if op.job == job) + 1

    @property
    def objective(self) -> Fraction:
        return Fraction(sum(self.completion(j) for j in range(1, self.instance.n + 1)))

    def violations(self) -> list[str]:
        inst = self.instance
        out = []
        pairs: dict[tuple[int, int], int] = {}
        machine_slots: set[tuple[int, int]] = set()
        job_slots: set[tuple[int, int]] = set()
        for op in self.assignments:
            if not (1 <= op.job <= inst.n and 1 <= op.machine <= inst.m):
                out.append(f"index: {op} out of range")
                continue
            if op.slot < inst.releases[op.job - 1]:
                out.append(f"release: job {op.job} starts slot {op.slot} before r = {inst.releases[op.job - 1]}")
            pairs[(op.job, op.machine)] = pairs.get((op.job, op.machine), 0) + 1
            if (op.machine, op.slot) in machine_slots:
                out.append(f"machine: machine {op.machine} runs two jobs in slot {op.slot}")
            machine_slots.add((op.machine, op.slot))
            if (op.job, op.slot) in job_slots:
                out.append(f"job: job {op.job} runs on two machines in slot {op.slot}")
            job_slots.add((op.job, op.slot))
        for j in range(1, inst.n + 1):
            for q in range(1, inst.m + 1):
                if pairs.get((j, q), 0) != 1:
                    out.append(f"once: job {j} on machine {q} appears {pairs.get((j, q), 0)} times")
        return out


def to_parallel(instance: OpenShopInstance) -> tuple[Instance, tuple[int, ...]]:
    """Parallel-machine instance with ``p = m``; ``perm`` maps sorted jobs back to input order."""
    return Instance.from_unsorted(instance.m, instance.m, instance.releases)


def _perfect_matching(left: int, adj: list[dict[int, int]], right: int) -> list[int]:
    """Kuhn's augmenting paths on a multigraph given by edge multiplicities."""
    match_r = [-1] * right

    def augment(u: int, seen: list[bool]) -> bool:
        for v in sorted(adj[u]):
            if adj[u][v] and not seen[v]:
                seen[v] = True
                if match_r[v] < 0 or augment(match_r[v], seen):
                    match_r[v] = u
                    return True
        return False

    for u in range(left):
        if not augment(u, [False] * right):
            raise AssertionError("regular bipartite multigraph without a perfect matching")
    match_l = [-1] * left
    for v, u in enumerate(match_r):
        if u >= 0:
            match_l[u] = v
    return match_l


def color_operations(instance: OpenShopInstance, integral: Schedule, perm: Sequence[int] | None = None) -> OpenShopSchedule:
    """Give every (job, slot) unit of ``integral`` a machine so no slot repeats a machine.

    Each job has ``m`` units and each slot at most ``m``, so the graph pads
    to an ``m``-regular bipartite multigraph (dummy jobs soak up spare slot
    capacity) whose edges split into ``m`` perfect matchings, one per machine.
    ``perm`` maps job indices of ``integral`` to ``instance`` order.
    """
    require_valid(integral)
    if not integral.is_integral:
        raise ScheduleError("integral", "colouring needs a schedule that preempts at integer times only")
    m, n = instance.m, instance.n
    if integral.instance.n != n or integral.instance.m != m or integral.instance.p != m:
        raise InstanceError("schedule does not belong to the parallel form of this open-shop instance")
    perm = tuple(perm) if perm is not None else tuple(range(1, n + 1))
    units: dict[int, list[int]] = {}
    for j, spans in enumerate(integral.supports, start=1):
        for a, b in spans:
            for t in range(int(a), int(b)):
                units.setdefault(t, []).append(j)
    slots = sorted(units)
    # left: slots; right: jobs 0..n-1, then dummies
    adj: list[dict[int, int]] = [{j - 1: 1 for j in units[t]} for t in slots]
    dummies = len(slots) - n
    spare = [(k, m - len(units[t])) for k, t in enumerate(slots)]
    d, room = n, m
    for k, gap in spare:
        while gap:
            take = min(gap, room)
            adj[k][d] = adj[k].get(d, 0) + take
            gap -= take
            room -= take
            if room == 0:
                d, room = d + 1, m
    assert d == n + dummies and room == m
    ops = []
    for machine in range(1, m + 1):
        match = _perfect_matching(len(slots), adj, n + dummies)
        for k, v in enumerate(match):
            adj[k][v] -= 1
            if v < n:
                orig = perm[v]
                if slots[k] < instance.releases[orig - 1]:
                    raise ScheduleError("s2", f"job {orig} runs before its release")
                ops.append(Operation(orig, machine, slots[k]))
    out = OpenShopSchedule(instance, tuple(ops))
    bad = out.violations()
    if bad:
        raise AssertionError(bad[0])
    return out


def solve_openshop(instance: OpenShopInstance) -> tuple[OpenShopSchedule, Fraction]:
    """Optimal open-shop schedule and its ``sum C_i``."""
    par, perm = to_parallel(instance)
    schedule, value = lp.solve(par)
    integral = flow.integralize(par, schedule)
    out = color_operations(instance, integral, perm)
    if out.objective > value:
        raise AssertionError(f"open-shop objective {out.objective} exceeds parallel optimum {value}")
    return out, out.objective

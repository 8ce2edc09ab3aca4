"""Rounding a schedule to integer preemption times through a min-cost flow.

Given a valid schedule for integer ``p`` and releases, take the time points
``{r_j} U {floor C_j, ceil C_j}`` as breakpoints ``t_1 < ... < t_k``. The
network has

* ``source -> u_j`` with capacity ``p`` for every job,
* ``v_i -> sink`` with capacity ``m (t_{i+1} - t_i)`` for every interval,
* ``u_j -> v_i`` with capacity ``t_{i+1} - t_i`` when
  ``[t_i, t_{i+1})`` lies inside ``[r_j, floor C_j)``, and
* ``u_j -> v_i`` with capacity 1 and cost 1 when ``C_j`` is fractional
  and ``t_i = floor C_j``. No other arc costs anything.

The schedule itself induces a flow of value ``np``; an integral min-cost
flow is packed back into machines to give an integral schedule that is
no worse.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from . import _intervals as iv
from .model import ExecInterval, Instance, InstanceError, Schedule, objective, require_valid


class FlowInfeasibleError(RuntimeError):
    """The network cannot carry ``np`` units."""


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: int
    cost: int
    job: int = 0  # job of a u -> v arc, else 0
    interval: int = 0  # 1-based interval of a u -> v arc, else 0


@dataclass(frozen=True)
class FlowNetwork:
    """Node ids: source 0, job ``j`` is ``j``, interval ``i`` is ``n + i``, sink ``n + k``."""

    n: int
    m: int
    p: int
    breakpoints: tuple[int, ...]
    arcs: tuple[Arc, ...]

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.n + len(self.breakpoints)

    @property
    def num_nodes(self) -> int:
        return self.sink + 1

    def interval(self, i: int) -> tuple[int, int]:
        return self.breakpoints[i - 1], self.breakpoints[i]

    def node_name(self, v: int) -> str:
        if v == self.source:
            return "source"
        if v == self.sink:
            return "sink"
        if v <= self.n:
            return f"u{v}"
        return f"v{v - self.n}"

    def to_dot(self, flow: "FlowResult | None" = None) -> str:
        lines = ["digraph integralize {", "  rankdir=LR;"]
        for v in range(self.num_nodes):
            label = self.node_name(v)
            if self.n < v < self.sink:
                a, b = self.interval(v - self.n)
                label += f"\\n[{a},{b})"
            lines.append(f'  n{v} [label="{label}"];')
        for k, arc in enumerate(self.arcs):
            text = f"cap {arc.capacity}" + (f", cost {arc.cost}" if arc.cost else "")
            if flow is not None:
                text = f"{flow.flows[k]}/" + text
            style = ", style=dashed" if arc.cost else ""
            lines.append(f'  n{arc.tail} -> n{arc.head} [label="{text}"{style}];')
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class FlowResult:
    flows: tuple[int, ...]
    value: int
    cost: int


def _require_integral(instance: Instance) -> None:
    if not instance.is_integral:
        raise InstanceError(
            "integralization needs integer p and integer release times; "
            "scale the instance to a common denominator first"
        )


def build_network(instance: Instance, schedule: Schedule) -> FlowNetwork:
    _require_integral(instance)
    require_valid(schedule)
    n, m, p = instance.n, instance.m, int(instance.p)
    comp = schedule.completion
    pts = {int(r) for r in instance.releases}
    for c in comp:
        pts.add(math.floor(c))
        pts.add(math.ceil(c))
    bps = tuple(sorted(pts))
    k = len(bps)
    arcs: list[Arc] = [Arc(0, j, p, 0) for j in range(1, n + 1)]
    for j in range(1, n + 1):
        r = int(instance.release(j))
        fl = math.floor(comp[j - 1])
        for i in range(1, k):
            a, b = bps[i - 1], bps[i]
            if r <= a and b <= fl:
                arcs.append(Arc(j, n + i, b - a, 0, j, i))
            elif comp[j - 1].denominator != 1 and a == fl:
                arcs.append(Arc(j, n + i, 1, 1, j, i))
    for i in range(1, k):
        arcs.append(Arc(n + i, n + k, m * (bps[i] - bps[i - 1]), 0))
    return FlowNetwork(n, m, p, bps, tuple(arcs))


def induced_flow(network: FlowNetwork, schedule: Schedule) -> tuple[Fraction, ...]:
    """Per-arc flow of the schedule: the time job ``j`` spends in interval ``i``."""
    sets = schedule.supports
    per_interval: dict[int, Fraction] = {}
    out = []
    for arc in network.arcs:
        if arc.job:
            a, b = network.interval(arc.interval)
            f = iv.measure(iv.clip(sets[arc.job - 1], Fraction(a), Fraction(b)))
            per_interval[arc.interval] = per_interval.get(arc.interval, Fraction(0)) + f
            out.append(f)
        elif arc.tail == network.source:
            out.append(Fraction(network.p))
        else:
            out.append(Fraction(0))
    for k, arc in enumerate(network.arcs):
        if arc.head == network.sink:
            out[k] = per_interval.get(arc.tail - network.n, Fraction(0))
    return tuple(out)


def min_cost_flow(network: FlowNetwork) -> FlowResult:
    """Integral min-cost flow of value ``np`` by successive shortest paths.

    Shortest paths come from a label-correcting (queue-based Bellman-Ford)
    search on the residual graph, which tolerates the negative residual
    costs of cancelled unit arcs.
    """
    N = network.num_nodes
    # residual edges: (head, cap, cost, reverse index, arc index or -1)
    graph: list[list[list[int]]] = [[] for _ in range(N)]
    where: list[tuple[int, int]] = []
    for k, arc in enumerate(network.arcs):
        fwd = [arc.head, arc.capacity, arc.cost, len(graph[arc.head]), k]
        rev = [arc.tail, 0, -arc.cost, len(graph[arc.tail]), -1]
        graph[arc.tail].append(fwd)
        graph[arc.head].append(rev)
        where.append((arc.tail, len(graph[arc.tail]) - 1))
    s, t = network.source, network.sink
    target = network.n * network.p
    value = cost = 0
    while value < target:
        dist = [None] * N
        prev: list[tuple[int, int] | None] = [None] * N
        dist[s] = 0
        queue = deque([s])
        queued = [False] * N
        queued[s] = True
        while queue:
            u = queue.popleft()
            queued[u] = False
            for e, (v, cap, c, _, _) in enumerate(graph[u]):
                if cap > 0 and (dist[v] is None or dist[u] + c < dist[v]):
                    dist[v] = dist[u] + c
                    prev[v] = (u, e)
                    if not queued[v]:
                        queued[v] = True
                        queue.append(v)
        if dist[t] is None:
            raise FlowInfeasibleError(f"maximum flow {value} < required {target}")
        push = target - value
        v = t
        while v != s:
            u, e = prev[v]
            push = min(push, graph[u][e][1])
            v = u
        v = t
        while v != s:
            u, e = prev[v]
            edge = graph[u][e]
            edge[1] -= push
            graph[v][edge[3]][1] += push
            v = u
        value += push
        cost += push * dist[t]
    flows = tuple(network.arcs[k].capacity - graph[u][e][1] for k, (u, e) in enumerate(where))
    return FlowResult(flows, value, cost)


def pack(instance: Instance, network: FlowNetwork, flows) -> Schedule:
    """Lay each interval's job amounts out machine by machine, left to right, jobs in index order.

    Within an interval of length ``l`` the machines form one timeline of
    length ``m l``; a job gets at most ``l`` of it, so a job wrapping from
    machine ``q`` to ``q + 1`` occupies a tail of ``q`` and a head of
    ``q + 1`` that do not overlap in time.
    """
    amount: dict[tuple[int, int], Fraction] = {}
    for arc, f in zip(network.arcs, flows):
        if arc.job and f:
            key = (arc.interval, arc.job)
            amount[key] = amount.get(key, 0) + Fraction(f)
    pieces: dict[tuple[int, int], list[iv.Span]] = {}
    for i in range(1, len(network.breakpoints)):
        a, b = network.interval(i)
        ell = Fraction(b - a)
        pos = Fraction(0)
        for j in range(1, network.n + 1):
            f = amount.get((i, j), Fraction(0))
            end = pos + f
            while pos < end:
                q = int(pos // ell)
                stop = min(end, (q + 1) * ell)
                pieces.setdefault((j, q + 1), []).append((a + pos - q * ell, a + stop - q * ell))
                pos = stop
    out = [ExecInterval(j, q, x, y) for (j, q), spans in pieces.items() for x, y in iv.normalize(spans)]
    return Schedule(instance, tuple(out))


@dataclass(frozen=True)
class Integralization:
    """Result plus the quantities of the objective bound chain.

    The bound chain belongs to the first flow pass::

        objective(first_pass) <= floor_sum + flow.cost <= floor_sum + induced_cost
                              <= floor_sum + fractional_sum == source_objective

    ``schedule`` is the fixed point reached by repeating the pass on its own
    (integral) output, so ``objective(schedule) <= objective(first_pass)``.
    """

    schedule: Schedule
    first_pass: Schedule
    passes: int
    network: FlowNetwork
    flow: FlowResult
    floor_sum: int
    induced_cost: Fraction
    fractional_sum: Fraction
    source_objective: Fraction


def _one_pass(instance: Instance, schedule: Schedule) -> tuple[Schedule, FlowNetwork, FlowResult]:
    net = build_network(instance, schedule)
    res = min_cost_flow(net)
    return pack(instance, net, res.flows), net, res


def integralize_detailed(instance: Instance, schedule: Schedule) -> Integralization:
    first, net, res = _one_pass(instance, schedule)
    comp = schedule.completion
    induced = induced_flow(net, schedule)
    induced_cost = sum((f * a.cost for f, a in zip(induced, net.arcs)), Fraction(0))
    floor_sum = sum(math.floor(c) for c in comp)
    frac_sum = sum((c - math.floor(c) for c in comp), Fraction(0))
    # On an integral schedule a pass never delays a job, so completion
    # vectors only decrease and the loop stops.
    cur, passes = first, 1
    while True:
        nxt, _, _ = _one_pass(instance, cur)
        passes += 1
        if nxt.completion == cur.completion:
            break
        cur = nxt
    return Integralization(cur, first, passes, net, res, floor_sum, induced_cost, frac_sum, objective(schedule))


def integralize(instance: Instance, schedule: Schedule) -> Schedule:
    """Integral schedule with ``sum C_j`` no larger than the input's.

    Idempotent: applying it to its own output leaves every completion time
    unchanged.
    """
    return integralize_detailed(instance, schedule).schedule

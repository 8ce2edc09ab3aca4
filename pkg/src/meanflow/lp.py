"""Linear program over normal schedules.

A schedule is *normal* when every job ``j`` runs on every machine ``q`` in a
single, possibly empty, interval ``[S[j,q], C[j,q])`` such that

* ``C[j,q] <= S[j+1,q]``: on each machine jobs appear in index order, and
* ``C[j,q] <= S[j,q-1]``: each job moves to lower-numbered machines over time.

Minimising ``sum_j C[j,1]`` over these variables gives the optimal total
completion time, and any optimal vertex can be read back as a schedule.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import ExecInterval, Instance, Schedule, ScheduleError
from .simplex import Constraint, LinearProgram, Sense, SimplexResult, Status, solve_simplex

FAMILIES = ("release", "length", "interval", "machine-order", "job-order")


def _s(j: int, q: int, m: int) -> int:
    return 2 * ((j - 1) * m + (q - 1))


def _c(j: int, q: int, m: int) -> int:
    return _s(j, q, m) + 1


def family_sizes(n: int, m: int) -> dict[str, int]:
    return {
        "release": n,
        "length": n,
        "interval": n * m,
        "machine-order": n * (m - 1),
        "job-order": (n - 1) * m,
    }


def build_lp(instance: Instance) -> LinearProgram:
    """LP whose feasible points are the normal schedules of ``instance``."""
    n, m, p = instance.n, instance.m, instance.p
    names = []
    for j in range(1, n + 1):
        for q in range(1, m + 1):
            names += [f"S[{j},{q}]", f"C[{j},{q}]"]
    one, neg = Fraction(1), Fraction(-1)
    zero = Fraction(0)
    rows: list[Constraint] = []
    for j in range(1, n + 1):
        rows.append(Constraint(((_s(j, m, m), neg),), Sense.LE, -instance.release(j), "release"))
    for j in range(1, n + 1):
        coeffs = []
        for q in range(1, m + 1):
            coeffs += [(_c(j, q, m), one), (_s(j, q, m), neg)]
        rows.append(Constraint(tuple(coeffs), Sense.EQ, p, "length"))
    for j in range(1, n + 1):
        for q in range(1, m + 1):
            rows.append(Constraint(((_s(j, q, m), one), (_c(j, q, m), neg)), Sense.LE, zero, "interval"))
    for j in range(1, n + 1):
        for q in range(2, m + 1):
            rows.append(Constraint(((_c(j, q, m), one), (_s(j, q - 1, m), neg)), Sense.LE, zero, "machine-order"))
    for j in range(1, n):
        for q in range(1, m + 1):
            rows.append(Constraint(((_c(j, q, m), one), (_s(j + 1, q, m), neg)), Sense.LE, zero, "job-order"))
    objective = [zero] * (2 * n * m)
    for j in range(1, n + 1):
        objective[_c(j, 1, m)] = one
    return LinearProgram(tuple(names), tuple(objective), tuple(rows))


@dataclass(frozen=True)
class NormalSolution:
    """Start and completion times; ``S[j-1][q-1]`` belongs to job ``j`` on machine ``q``."""

    S: tuple[tuple[Fraction, ...], ...]
    C: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_vector(cls, instance: Instance, x: Sequence[Fraction]) -> "NormalSolution":
        n, m = instance.n, instance.m
        S = tuple(tuple(x[_s(j, q, m)] for q in range(1, m + 1)) for j in range(1, n + 1))
        C = tuple(tuple(x[_c(j, q, m)] for q in range(1, m + 1)) for j in range(1, n + 1))
        return cls(S, C)

    def to_vector(self) -> list[Fraction]:
        out = []
        for srow, crow in zip(self.S, self.C):
            for s, c in zip(srow, crow):
                out += [s, c]
        return out

    @property
    def lp_objective(self) -> Fraction:
        return sum((row[0] for row in self.C), Fraction(0))

    def violations(self, instance: Instance) -> list[str]:
        n, m = instance.n, instance.m
        S, C = self.S, self.C
        out = []
        if len(S) != n or any(len(r) != m for r in S) or len(C) != n or any(len(r) != m for r in C):
            return [f"shape must be {n}x{m}"]
        for j in range(n):
            if S[j][m - 1] < instance.releases[j]:
                out.append(f"release: S[{j + 1},{m}] = {S[j][m - 1]} < r = {instance.releases[j]}")
            total = sum((C[j][q] - S[j][q] for q in range(m)), Fraction(0))
            if total != instance.p:
                out.append(f"length: job {j + 1} gets {total}, expected {instance.p}")
            for q in range(m):
                if S[j][q] > C[j][q]:
                    out.append(f"interval: S[{j + 1},{q + 1}] > C[{j + 1},{q + 1}]")
                if q > 0 and C[j][q] > S[j][q - 1]:
                    out.append(f"machine-order: C[{j + 1},{q + 1}] > S[{j + 1},{q}]")
                if j < n - 1 and C[j][q] > S[j + 1][q]:
                    out.append(f"job-order: C[{j + 1},{q + 1}] > S[{j + 2},{q + 1}]")
        return out


def extract_schedule(instance: Instance, sol: NormalSolution) -> Schedule:
    """Run job ``j`` on machine ``q`` during ``[S[j,q], C[j,q])``, dropping empty intervals."""
    bad = sol.violations(instance)
    if bad:
        name, _, detail = bad[0].partition(": ")
        raise ScheduleError(name, detail)
    out = [
        ExecInterval(j, q, sol.S[j - 1][q - 1], sol.C[j - 1][q - 1])
        for j in range(1, instance.n + 1)
        for q in range(1, instance.m + 1)
        if sol.S[j - 1][q - 1] < sol.C[j - 1][q - 1]
    ]
    return Schedule(instance, tuple(out))


def read_normal_solution(schedule: Schedule) -> NormalSolution:
    """Read ``(S, C)`` off a schedule that is normal as laid out on its machines.

    Empty intervals get the least positions consistent with the ordering
    constraints. Raises :class:`ScheduleError` if the layout is not normal.
    """
    inst = schedule.instance
    n, m = inst.n, inst.m
    S: list[list[Fraction | None]] = [[None] * m for _ in range(n)]
    C: list[list[Fraction | None]] = [[None] * m for _ in range(n)]
    for e in schedule.intervals:
        if S[e.job - 1][e.machine - 1] is not None:
            raise ScheduleError("normal", f"job {e.job} has two intervals on machine {e.machine}")
        S[e.job - 1][e.machine - 1] = e.start
        C[e.job - 1][e.machine - 1] = e.end
    for j in range(n):
        for q in reversed(range(m)):
            if S[j][q] is not None:
                continue
            lows = [Fraction(0)]
            if q == m - 1:
                lows.append(inst.releases[j])
            else:
                lows.append(C[j][q + 1])
            if j > 0:
                lows.append(C[j - 1][q])
            S[j][q] = C[j][q] = max(lows)
    sol = NormalSolution(tuple(map(tuple, S)), tuple(map(tuple, C)))  # type: ignore[arg-type]
    bad = sol.violations(inst)
    if bad:
        raise ScheduleError("normal", bad[0])
    return sol


def solve_normal(instance: Instance) -> tuple[NormalSolution, SimplexResult]:
    lp = build_lp(instance)
    res = solve_simplex(lp)
    if res.status is not Status.OPTIMAL:
        # cannot happen: running the jobs one after another after r_n is feasible
        raise AssertionError(f"normal-schedule LP reported {res.status.value}")
    return NormalSolution.from_vector(instance, res.x), res


def solve(instance: Instance) -> tuple[Schedule, Fraction]:
    """Optimal schedule and the optimal total completion time."""
    sol, res = solve_normal(instance)
    return extract_schedule(instance, sol), res.value

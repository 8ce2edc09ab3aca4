"""Instances, schedules, and the structural checks on them.

Jobs and machines are numbered from 1. ``Instance.releases[j - 1]`` is the
release time of job ``j`` and job indices follow release order, with ties
broken by input order. All times are exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import groupby
from typing import Iterable, Sequence

from . import _intervals as iv
from .rational import RationalLike, as_rational, format_rational


class InstanceError(ValueError):
    """An instance violates its invariants."""


class ScheduleError(ValueError):
    """A schedule is malformed; ``condition`` names the first violated check."""

    def __init__(self, condition: str, detail: str) -> None:
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}")


@dataclass(frozen=True)
class Instance:
    """``n`` jobs of common length ``p`` with sorted release times on ``m`` machines."""

    m: int
    p: Fraction
    releases: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", as_rational(self.p))
        object.__setattr__(self, "releases", tuple(as_rational(r) for r in self.releases))
        if not isinstance(self.m, int) or self.m < 1:
            raise InstanceError(f"machine count must be a positive integer, got {self.m!r}")
        if not self.releases:
            raise InstanceError("an instance needs at least one job")
        if self.p <= 0:
            raise InstanceError(f"processing time must be positive, got {self.p}")
        if any(r < 0 for r in self.releases):
            raise InstanceError("release times must be non-negative")
        if any(a > b for a, b in zip(self.releases, self.releases[1:])):
            raise InstanceError("release times must be sorted; use Instance.from_unsorted")

    @classmethod
    def from_unsorted(
        cls, m: int, p: RationalLike, releases: Sequence[RationalLike]
    ) -> tuple["Instance", tuple[int, ...]]:
        """Sort jobs by release time (stable) and return ``(instance, perm)``.

        ``perm[k - 1]`` is the original 1-based index of sorted job ``k``.
        """
        rs = [as_rational(r) for r in releases]
        order = sorted(range(len(rs)), key=lambda k: rs[k])
        inst = cls(m, as_rational(p), tuple(rs[k] for k in order))
        return inst, tuple(k + 1 for k in order)

    @property
    def n(self) -> int:
        return len(self.releases)

    def release(self, job: int) -> Fraction:
        return self.releases[job - 1]

    def processing(self, job: int) -> Fraction:
        return self.p

    @property
    def horizon(self) -> Fraction:
        """Upper bound ``r_n + n p`` on the last completion of any sensible schedule."""
        return self.releases[-1] + self.n * self.p

    @property
    def is_integral(self) -> bool:
        return self.p.denominator == 1 and all(r.denominator == 1 for r in self.releases)

    def shifted(self) -> "Instance":
        """Same instance translated so the first release is 0."""
        r0 = self.releases[0]
        return Instance(self.m, self.p, tuple(r - r0 for r in self.releases))


@dataclass(frozen=True, order=True)
class ExecInterval:
    """Job ``job`` runs on machine ``machine`` during ``[start, end)``."""

    job: int
    machine: int
    start: Fraction
    end: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", as_rational(self.start))
        object.__setattr__(self, "end", as_rational(self.end))

    @property
    def length(self) -> Fraction:
        return self.end - self.start


@dataclass(frozen=True)
class Block:
    """Maximal span ``[start, end)`` with a constant profile and no release inside."""

    start: Fraction
    end: Fraction
    profile: tuple[int, ...]

    @property
    def length(self) -> Fraction:
        return self.end - self.start


@dataclass(frozen=True)
class Schedule:
    """Explicit execution intervals for every job.

    ``instance`` is normally an :class:`Instance`; the hardness module also
    attaches a ``GeneralInstance`` with per-job processing times, which the
    verifier and block machinery accept as well.
    """

    instance: Instance
    intervals: tuple[ExecInterval, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "intervals", tuple(sorted(self.intervals)))

    @classmethod
    def from_supports(cls, instance: Instance, supports: Sequence[Iterable[iv.Span]]) -> "Schedule":
        """Build a schedule from per-job time sets using the canonical machine assignment.

        ``supports[j - 1]`` is the set of times job ``j`` runs. On every
        constant-profile piece the jobs are put on machines ``1, 2, ...`` in
        increasing job order.
        """
        sets = [iv.normalize(s) for s in supports]
        if len(sets) != instance.n:
            raise ScheduleError("indices", f"expected {instance.n} supports, got {len(sets)}")
        points = sorted({t for s in sets for span in s for t in span})
        # machine -> job -> list of spans, merged afterwards
        pieces: dict[tuple[int, int], list[iv.Span]] = {}
        cursor = [0] * len(sets)
        for a, b in zip(points, points[1:]):
            running = []
            for k, s in enumerate(sets):
                c = cursor[k]
                while c < len(s) and s[c][1] <= a:
                    c += 1
                cursor[k] = c
                if c < len(s) and s[c][0] <= a:
                    running.append(k + 1)
            if len(running) > instance.m:
                raise ScheduleError("s1", f"{len(running)} jobs run during [{a}, {b}) on {instance.m} machines")
            for q, job in enumerate(running, start=1):
                pieces.setdefault((job, q), []).append((a, b))
        out = [
            ExecInterval(job, q, a, b)
            for (job, q), spans in pieces.items()
            for a, b in iv.normalize(spans)
        ]
        return cls(instance, tuple(out))

    @cached_property
    def supports(self) -> tuple[list[iv.Span], ...]:
        """Per-job merged time sets (index ``j - 1`` for job ``j``)."""
        acc: list[list[iv.Span]] = [[] for _ in range(self.instance.n)]
        for e in self.intervals:
            if 1 <= e.job <= self.instance.n:
                acc[e.job - 1].append((e.start, e.end))
        return tuple(iv.normalize(s) for s in acc)

    @cached_property
    def completion(self) -> tuple[Fraction | None, ...]:
        """``C_j`` per job; ``None`` for a job that never runs."""
        return tuple(s[-1][1] if s else None for s in self.supports)

    @property
    def is_integral(self) -> bool:
        return all(e.start.denominator == 1 and e.end.denominator == 1 for e in self.intervals)

    def profile_at(self, t: Fraction) -> tuple[int, ...]:
        return tuple(
            j for j, s in enumerate(self.supports, start=1) if any(a <= t < b for a, b in s)
        )

    def by_machine(self) -> dict[int, list[ExecInterval]]:
        out: dict[int, list[ExecInterval]] = {}
        for e in sorted(self.intervals, key=lambda e: (e.machine, e.start)):
            out.setdefault(e.machine, []).append(e)
        return out

    def with_canonical_machines(self) -> "Schedule":
        return Schedule.from_supports(self.instance, self.supports)


# --- verification ---------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    objective: Fraction | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        if self.objective is not None:
            lines.append(f"objective {format_rational(self.objective)}")
        return "\n".join(lines)


def _overlaps(spans: list[tuple[Fraction, Fraction, int]]) -> tuple[int, int, Fraction] | None:
    """First pair of overlapping tagged spans, as ``(tag1, tag2, time)``."""
    spans = sorted(spans)
    for (a1, b1, t1), (a2, b2, t2) in zip(spans, spans[1:]):
        if a2 < b1:
            return t1, t2, a2
    return None


def verify(schedule: Schedule) -> VerificationReport:
    """Check (s1)-(s4) and machine disjointness; never raises."""
    inst = schedule.instance
    n, m = inst.n, inst.m
    checks: list[Check] = []

    bad_idx = [e for e in schedule.intervals if not (1 <= e.job <= n and 1 <= e.machine <= m)]
    checks.append(
        Check("indices", not bad_idx, f"job {bad_idx[0].job} / machine {bad_idx[0].machine} out of range" if bad_idx else "")
    )

    bad_iv = [e for e in schedule.intervals if not e.start < e.end]
    checks.append(
        Check("s3", not bad_iv, f"job {bad_iv[0].job} has empty or reversed interval [{bad_iv[0].start}, {bad_iv[0].end})" if bad_iv else "")
    )

    early = [e for e in schedule.intervals if 1 <= e.job <= n and e.start < inst.release(e.job) and e.start < e.end]
    checks.append(
        Check("s2", not early, f"job {early[0].job} runs at {early[0].start} before its release {inst.release(early[0].job)}" if early else "")
    )

    per_job: dict[int, list] = {}
    per_machine: dict[int, list] = {}
    for e in schedule.intervals:
        if e.start < e.end:
            per_job.setdefault(e.job, []).append((e.start, e.end, e.machine))
            per_machine.setdefault(e.machine, []).append((e.start, e.end, e.job))

    detail = ""
    for q in sorted(per_machine):
        hit = _overlaps(per_machine[q])
        if hit:
            detail = f"machine {q} runs jobs {hit[0]} and {hit[1]} at {hit[2]}"
            break
    checks.append(Check("machine-disjoint", not detail, detail))

    detail = ""
    for j in sorted(per_job):
        hit = _overlaps(per_job[j])
        if hit:
            detail = f"job {j} runs on machines {hit[0]} and {hit[1]} at {hit[2]}"
            break
    checks.append(Check("job-disjoint", not detail, detail))

    # (s1): count distinct jobs at each elementary piece
    sets = schedule.supports
    points = sorted({t for s in sets for span in s for t in span})
    detail = ""
    for a in points[:-1]:
        k = sum(1 for s in sets if any(x <= a < y for x, y in s))
        if k > m:
            detail = f"{k} jobs run at time {a} on {m} machines"
            break
    checks.append(Check("s1", not detail, detail))

    detail = ""
    for j, s in enumerate(sets, start=1):
        total = iv.measure(s)
        if total != inst.processing(j):
            detail = f"job {j} runs for {total}, expected {inst.processing(j)}"
            break
    checks.append(Check("s4", not detail, detail))

    comp = schedule.completion
    obj = sum(comp, Fraction(0)) if all(c is not None for c in comp) else None
    return VerificationReport(checks, obj)


def require_valid(schedule: Schedule) -> None:
    report = verify(schedule)
    if not report.ok:
        c = report.failures()[0]
        raise ScheduleError(c.name, c.detail)


def objective(schedule: Schedule) -> Fraction:
    """Exact ``sum_j C_j``."""
    comp = schedule.completion
    if any(c is None for c in comp):
        missing = [j for j, c in enumerate(comp, start=1) if c is None]
        raise ScheduleError("s4", f"jobs {missing} never run")
    return sum(comp, Fraction(0))


# --- blocks ---------------------------------------------------------------


def decompose_blocks(schedule: Schedule, validate: bool = True) -> list[Block]:
    """Split ``[min r_j, max C_j)`` into blocks.

    A block boundary sits wherever the profile changes or a release time
    falls. Idle spans appear as blocks with an empty profile.
    """
    if validate:
        require_valid(schedule)
    inst = schedule.instance
    sets = schedule.supports
    lo = min(inst.releases)
    hi = max(c for c in schedule.completion if c is not None)
    releases = set(inst.releases)
    points = sorted({lo, hi} | {r for r in releases if lo < r < hi} | {t for s in sets for span in s for t in span})
    blocks: list[Block] = []
    cursor = [0] * len(sets)
    for a, b in zip(points, points[1:]):
        running = []
        for k, s in enumerate(sets):
            c = cursor[k]
            while c < len(s) and s[c][1] <= a:
                c += 1
            cursor[k] = c
            if c < len(s) and s[c][0] <= a:
                running.append(k + 1)
        prof = tuple(running)
        if blocks and blocks[-1].profile == prof and a not in releases:
            blocks[-1] = Block(blocks[-1].start, b, prof)
        else:
            blocks.append(Block(a, b, prof))
    return blocks


def blocks_to_supports(n: int, blocks: Iterable[Block]) -> list[list[iv.Span]]:
    acc: list[list[iv.Span]] = [[] for _ in range(n)]
    for blk in blocks:
        for j in blk.profile:
            acc[j - 1].append((blk.start, blk.end))
    return [iv.normalize(s) for s in acc]


def segments(instance: Instance) -> list[tuple[Fraction, Fraction]]:
    """Spans between consecutive distinct releases, closed by the horizon."""
    rs = [k for k, _ in groupby(instance.releases)]
    return list(zip(rs, rs[1:] + [instance.horizon]))


# --- structural predicates ------------------------------------------------


def _busy_violation(schedule: Schedule, blocks: list[Block]) -> tuple[Block, Block, int] | None:
    inst = schedule.instance
    for a, sb in enumerate(blocks):
        if len(sb.profile) >= inst.m:
            continue
        present = set(sb.profile)
        for tb in blocks[a + 1:]:
            for j in tb.profile:
                if j not in present and inst.release(j) <= sb.start:
                    return sb, tb, j
    return None


def check_busy(schedule: Schedule) -> bool:
    """True iff no released job runs later while some machine idles earlier."""
    return _busy_violation(schedule, decompose_blocks(schedule)) is None


def _eq1_holds(s_prof: Iterable[int], t_prof: Iterable[int]) -> bool:
    s, t = set(s_prof), set(t_prof)
    left = s - t
    right = t - s
    return not left or not right or max(left) < min(right)


def irreducibility_violation(schedule: Schedule) -> tuple[Block, Block] | None:
    blocks = decompose_blocks(schedule)
    for a, sb in enumerate(blocks):
        for tb in blocks[a + 1:]:
            if not _eq1_holds(sb.profile, tb.profile):
                return sb, tb
    return None


def check_irreducible(schedule: Schedule) -> bool:
    """Busy and ``max(X(s) - X(t)) < min(X(t) - X(s))`` for every pair ``s < t``."""
    if not check_busy(schedule):
        return False
    return irreducibility_violation(schedule) is None


def check_lemma4(schedule: Schedule) -> VerificationReport:
    """Check the three before/after counting properties of irreducible schedules.

    For a job ``k`` and times ``r_k <= u < t``, with ``bef``/``aft`` the jobs
    of lower/higher index running alongside:

    (a) ``k`` in X(u) only: ``|bef(t)| <= |bef(u)|``
    (b) ``k`` in X(t) only: ``|X(u)| = m``, ``|aft(t)| >= |aft(u)|``, ``|bef(t)| < |bef(u)|``
    (c) ``k`` in both: ``|bef(t)| <= |bef(u)|`` and ``|aft(t)| >= |aft(u)|``

    Any failure is reported as a counterexample rather than raised.
    """
    if not check_irreducible(schedule):
        raise ScheduleError("irreducible", "check_lemma4 needs an irreducible schedule")
    inst = schedule.instance
    blocks = decompose_blocks(schedule)
    found = {"a": "", "b": "", "c": ""}
    for x, ub in enumerate(blocks):
        u = set(ub.profile)
        for tb in blocks[x + 1:]:
            t = set(tb.profile)
            for k in range(1, inst.n + 1):
                if inst.release(k) > ub.start:
                    continue
                bef_u = sum(1 for i in u if i < k)
                bef_t = sum(1 for i in t if i < k)
                aft_u = sum(1 for i in u if i > k)
                aft_t = sum(1 for i in t if i > k)
                where = f"job {k}, u in [{ub.start},{ub.end}), t in [{tb.start},{tb.end})"
                if k in u and k not in t:
                    if not bef_t <= bef_u and not found["a"]:
                        found["a"] = where
                elif k in t and k not in u:
                    if not (len(u) == inst.m and aft_t >= aft_u and bef_t < bef_u) and not found["b"]:
                        found["b"] = where
                elif k in u and k in t:
                    if not (bef_t <= bef_u and aft_t >= aft_u) and not found["c"]:
                        found["c"] = where
    checks = [Check(f"lemma4-{case}", not msg, msg) for case, msg in found.items()]
    return VerificationReport(checks, objective(schedule))


def check_tidy(schedule: Schedule) -> bool:
    """Within every segment, block profiles are lexicographically non-decreasing.

    Profile ``P`` precedes ``Q`` when ``min(P - Q) <= min(Q - P)``.
    """
    blocks = decompose_blocks(schedule)
    for lo, hi in segments(schedule.instance):
        inside = [b for b in blocks if lo <= b.start and b.end <= hi]
        for x, sb in enumerate(inside):
            for tb in inside[x + 1:]:
                s, t = set(sb.profile), set(tb.profile)
                left = min(s - t, default=float("inf"))
                right = min(t - s, default=float("inf"))
                if not left <= right:
                    return False
    return True

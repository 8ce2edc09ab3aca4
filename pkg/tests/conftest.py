import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from meanflow.model import Instance, Schedule

sys.path.insert(0, str(Path(__file__).parent))


def random_instance(rng: random.Random, n_max=5, m_max=3, p_max=3, r_max=4) -> Instance:
    n = rng.randint(1, n_max)
    return Instance(
        rng.randint(1, m_max),
        Fraction(rng.randint(1, p_max)),
        tuple(sorted(Fraction(rng.randint(0, r_max)) for _ in range(n))),
    )


def random_schedule(inst: Instance, rng: random.Random, grains=(1, 2, 3, 4)) -> Schedule:
    """Valid, usually fractional schedule from an event simulation.

    At each step a random subset of the released unfinished jobs runs for a
    random rational duration, cut at the next release. Idle steps are
    allowed while releases are pending, so outputs are often not busy.
    """
    n, m = inst.n, inst.m
    rem = [inst.p] * n
    spans = [[] for _ in range(n)]
    t = inst.releases[0]
    while any(rem):
        avail = [j for j in range(n) if rem[j] > 0 and inst.releases[j] <= t]
        nxt = [r for r in inst.releases if r > t]
        if not avail:
            t = min(nxt)
            continue
        k = rng.randint(0 if nxt else 1, min(m, len(avail)))
        pick = rng.sample(avail, k)
        g = rng.choice(grains)
        d = Fraction(rng.randint(1, 3 * g), g)
        if pick:
            d = min([d] + [rem[j] for j in pick])
        if nxt:
            d = min(d, min(nxt) - t)
        for j in pick:
            spans[j].append((t, t + d))
            rem[j] -= d
        t += d
    return Schedule.from_supports(inst, spans)


@st.composite
def instances(draw, n_max=5, m_max=3, p_max=3, r_max=4):
    n = draw(st.integers(1, n_max))
    rel = sorted(draw(st.lists(st.integers(0, r_max), min_size=n, max_size=n)))
    return Instance(draw(st.integers(1, m_max)), Fraction(draw(st.integers(1, p_max))), tuple(Fraction(r) for r in rel))


@st.composite
def schedules(draw, integral=False, **kw):
    inst = draw(instances(**kw))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_schedule(inst, random.Random(seed), grains=(1,) if integral else (1, 2, 3, 4))


@pytest.fixture
def rng():
    return random.Random(20261015)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

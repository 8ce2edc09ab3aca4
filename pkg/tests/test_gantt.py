import random
import xml.etree.ElementTree as ET
from fractions import Fraction as F

from conftest import random_instance
from meanflow import lp
from meanflow.gantt import LANE, GAP, LEFT, TOP, emit_gantt, render_gantt
from meanflow.model import Instance, Schedule

NS = "{http://www.w3.org/2000/svg}"


def groups(svg, cls):
    root = ET.fromstring(svg)
    return [g for g in root.iter() if g.get("class") == cls]


def test_single_job():
    inst = Instance(2, F(3), (F(1),))
    s = Schedule.from_supports(inst, [[(F(1), F(4))]])
    svg = render_gantt(s)
    boxes = groups(svg, "interval")
    assert len(boxes) == 1
    rect = boxes[0].find(f"{NS}rect")
    assert float(rect.get("x")) == LEFT + 20 and float(rect.get("width")) == 60
    assert boxes[0].find(f"{NS}text").text == "1"
    # the idle second machine still gets a lane
    assert len(groups(svg, "lane")) == 2
    assert [g.get("data-time") for g in groups(svg, "release")] == ["1/1"]


def test_deterministic_and_scaled(tmp_path):
    inst = Instance(1, F(2), (F(0), F(1)))
    s, _ = lp.solve(inst)
    a = emit_gantt(s, tmp_path / "a.svg")
    assert (tmp_path / "a.svg").read_text() == a == render_gantt(s)
    wide = render_gantt(s, 40)
    r = groups(wide, "interval")[1].find(f"{NS}rect")
    assert float(r.get("x")) == LEFT + 2 * 40


def test_lp_schedules_render_as_staircase():
    rng = random.Random(2)
    for _ in range(25):
        inst = random_instance(rng)
        s, _ = lp.solve(inst)
        svg = render_gantt(s)
        per_job = {}
        for g in groups(svg, "interval"):
            rect = g.find(f"{NS}rect")
            x0 = float(rect.get("x"))
            x1 = x0 + float(rect.get("width"))
            lane = (float(rect.get("y")) - TOP) / (LANE + GAP) + 1
            assert lane == int(g.get("data-machine"))
            per_job.setdefault(int(g.get("data-job")), []).append((x0, x1, lane))
        for boxes in per_job.values():
            boxes.sort()
            # no overlap in time, and machines descend as time advances
            assert all(a[1] <= b[0] + 1e-9 for a, b in zip(boxes, boxes[1:]))
            assert all(a[2] > b[2] for a, b in zip(boxes, boxes[1:]))

import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from conftest import schedules
from meanflow import formats as fm
from meanflow import hardness as hd
from meanflow.model import Instance, objective, verify
from meanflow.openshop import OpenShopInstance, solve_openshop


def test_instance_shorthand_and_sorting():
    inst, perm = fm.instance_from_json({"m": 2, "p": 3, "releases": ["5/2", 0, "1"]})
    assert inst.releases == (0, 1, F(5, 2)) and perm == (2, 3, 1)
    assert fm.instance_to_json(inst) == {"m": 2, "p": "3/1", "releases": ["0/1", "1/1", "5/2"]}


@pytest.mark.parametrize(
    "obj",
    [{"m": 1, "p": 1.5, "releases": [0]}, {"m": 1, "releases": [0]}, {"m": "2", "p": 1, "releases": [0]}, [1, 2],
     {"m": 1, "p": 1, "releases": [-1]}, {"m": 1, "p": "x", "releases": [0]}],
)
def test_instance_errors(obj):
    with pytest.raises(fm.FormatError):
        fm.instance_from_json(obj)


@settings(max_examples=40, deadline=None)
@given(schedules())
def test_schedule_round_trip(s):
    text = json.dumps(fm.schedule_to_json(s))
    back = fm.schedule_from_json(json.loads(text))
    assert back == s
    assert json.loads(text)["objective"] == fm.format_rational(objective(s))


def test_schedule_with_separate_instance():
    inst = Instance(1, F(2), (F(0),))
    obj = {"intervals": [{"job": 1, "machine": 1, "start": "0/1", "end": "2/1"}]}
    assert verify(fm.schedule_from_json(obj, inst)).ok
    with pytest.raises(fm.FormatError):
        fm.schedule_from_json(obj)


def test_openshop_round_trip():
    inst = fm.openshop_instance_from_json({"m": 2, "releases": [0, 1]})
    s, _ = solve_openshop(inst)
    back = fm.openshop_schedule_from_json(json.loads(json.dumps(fm.openshop_schedule_to_json(s))), inst)
    assert back == s
    with pytest.raises(fm.FormatError):
        fm.openshop_instance_from_json({"m": 2, "releases": ["1/2"]})


def test_hardness_json():
    tp = fm.three_partition_from_json({"n": 1, "y": 12, "x": [4, 4, 4]})
    h = hd.generate(tp)
    obj = fm.hardness_to_json(h)
    assert obj["D"] == 257508 and len(obj["instance"]["jobs"]) == 76
    assert fm.general_instance_from_json(obj["instance"]) == h.instance
    with pytest.raises(fm.FormatError):
        fm.three_partition_from_json({"n": 1, "y": 12, "x": [3, 4, 5]})


def test_general_schedule_round_trip():
    tp = hd.ThreePartition(1, 12, (4, 4, 4))
    s = hd.yes_schedule(tp, [(1, 2, 3)])
    back = fm.schedule_from_json(json.loads(json.dumps(fm.schedule_to_json(s))))
    assert back == s


def test_bad_json_file(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{nope")
    with pytest.raises(fm.FormatError):
        fm.read_json(p)

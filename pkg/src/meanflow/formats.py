"""JSON encodings. Rationals are written as ``"num/den"`` strings; plain integers are read too."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .hardness import GeneralInstance, HardnessInstance, ThreePartition
from .model import ExecInterval, Instance, InstanceError, Schedule, objective
from .openshop import OpenShopInstance, OpenShopSchedule, Operation
from .rational import as_rational, format_rational


class FormatError(ValueError):
    """Input does not match the expected JSON shape."""


def _int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise FormatError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _rat(v: Any, what: str) -> Fraction:
    if isinstance(v, float):
        raise FormatError(f"{what}: floats are not accepted, write {v!r} as a 'num/den' string")
    try:
        return as_rational(v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{what}: {exc}") from None


def _need(obj: Any, *keys: str) -> dict:
    if not isinstance(obj, dict):
        raise FormatError(f"expected a JSON object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")
    return obj


# --- equal-length instances and schedules -----------------------------------

def instance_to_json(inst: Instance) -> dict:
    return {"m": inst.m, "p": format_rational(inst.p), "releases": [format_rational(r) for r in inst.releases]}


def instance_from_json(obj: Any) -> tuple[Instance, tuple[int, ...]]:
    """Instance with jobs sorted by release, plus the sort permutation."""
    obj = _need(obj, "m", "p", "releases")
    if not isinstance(obj["releases"], list):
        raise FormatError("field 'releases' must be a list")
    rel = [_rat(r, "release") for r in obj["releases"]]
    try:
        return Instance.from_unsorted(_int(obj, "m"), _rat(obj["p"], "p"), rel)
    except InstanceError as exc:
        raise FormatError(str(exc)) from None


def schedule_to_json(schedule: Schedule, with_instance: bool = True) -> dict:
    out: dict[str, Any] = {}
    if with_instance:
        inst = schedule.instance
        out["instance"] = general_instance_to_json(inst) if isinstance(inst, GeneralInstance) else instance_to_json(inst)
    out["intervals"] = [
        {"job": e.job, "machine": e.machine, "start": format_rational(e.start), "end": format_rational(e.end)}
        for e in schedule.intervals
    ]
    try:
        out["objective"] = format_rational(objective(schedule))
    except ValueError:
        pass
    return out


def schedule_from_json(obj: Any, instance: Instance | None = None) -> Schedule:
    """Read a schedule; the instance comes from ``instance`` or the embedded ``"instance"`` field."""
    obj = _need(obj, "intervals")
    if instance is None:
        if "instance" not in obj:
            raise FormatError("schedule carries no instance; supply one")
        if isinstance(obj["instance"], dict) and "jobs" in obj["instance"]:
            return _read_intervals(obj, general_instance_from_json(obj["instance"]))
        instance, perm = instance_from_json(obj["instance"])
        if perm != tuple(range(1, instance.n + 1)):
            raise FormatError("embedded instance must list releases in sorted order")
    return _read_intervals(obj, instance)


def _read_intervals(obj: dict, instance) -> Schedule:
    if not isinstance(obj["intervals"], list):
        raise FormatError("field 'intervals' must be a list")
    out = []
    for e in obj["intervals"]:
        e = _need(e, "job", "machine", "start", "end")
        out.append(ExecInterval(_int(e, "job"), _int(e, "machine"), _rat(e["start"], "start"), _rat(e["end"], "end")))
    return Schedule(instance, tuple(out))


# --- open shop --------------------------------------------------------------

def openshop_instance_to_json(inst: OpenShopInstance) -> dict:
    return {"m": inst.m, "releases": list(inst.releases)}


def openshop_instance_from_json(obj: Any) -> OpenShopInstance:
    obj = _need(obj, "m", "releases")
    try:
        return OpenShopInstance(_int(obj, "m"), tuple(obj["releases"]))
    except (InstanceError, TypeError) as exc:
        raise FormatError(str(exc)) from None


def openshop_schedule_to_json(schedule: OpenShopSchedule) -> list[dict]:
    return [{"job": op.job, "machine": op.machine, "slot": op.slot} for op in schedule.assignments]


def openshop_schedule_from_json(obj: Any, instance: OpenShopInstance) -> OpenShopSchedule:
    if not isinstance(obj, list):
        raise FormatError("open-shop schedule must be a list of assignments")
    ops = []
    for e in obj:
        e = _need(e, "job", "machine", "slot")
        ops.append(Operation(_int(e, "job"), _int(e, "machine"), _int(e, "slot")))
    return OpenShopSchedule(instance, tuple(ops))


# --- hardness ---------------------------------------------------------------

def three_partition_from_json(obj: Any) -> ThreePartition:
    obj = _need(obj, "n", "y", "x")
    if not isinstance(obj["x"], list) or any(isinstance(v, bool) or not isinstance(v, int) for v in obj["x"]):
        raise FormatError("field 'x' must be a list of integers")
    try:
        return ThreePartition(_int(obj, "n"), _int(obj, "y"), tuple(obj["x"]))
    except InstanceError as exc:
        raise FormatError(str(exc)) from None


def three_partition_to_json(tp: ThreePartition) -> dict:
    return {"n": tp.n, "y": tp.y, "x": list(tp.x)}


def general_instance_to_json(inst: GeneralInstance) -> dict:
    return {
        "m": inst.m,
        "jobs": [{"release": format_rational(r), "processing": format_rational(p)} for r, p in inst.jobs],
    }


def general_instance_from_json(obj: Any) -> GeneralInstance:
    obj = _need(obj, "m", "jobs")
    jobs = []
    for e in obj["jobs"]:
        e = _need(e, "release", "processing")
        jobs.append((_rat(e["release"], "release"), _rat(e["processing"], "processing")))
    try:
        return GeneralInstance(_int(obj, "m"), tuple(jobs))
    except InstanceError as exc:
        raise FormatError(str(exc)) from None


def hardness_to_json(h: HardnessInstance) -> dict:
    return {
        "instance": general_instance_to_json(h.instance),
        "D": h.D,
        "A": h.A,
        "B": h.B,
        "N": h.N,
        "source": three_partition_to_json(h.source),
    }


# --- files ------------------------------------------------------------------

def read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def write_json(obj: Any, path: str | Path | None) -> str:
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text

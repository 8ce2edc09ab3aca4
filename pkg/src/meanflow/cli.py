"""Command-line front end.

Exit status: 0 success, 1 usage or parse error, 2 failed verification,
3 oracle size-guard refusal. Errors are reported on stderr as a single
``error: <code>: <message>`` line.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from typing import Sequence

from . import flow, formats, gantt, hardness, lp, normalize, openshop
from .model import Instance, InstanceError, ScheduleError, verify
from .rational import as_rational, format_rational

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_GUARD = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: str, message: str, status: int = EXIT_USAGE) -> None:
        super().__init__(message)
        self.code = code
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise CliError("usage", message)


def _emit(obj, out: str | None) -> None:
    text = formats.write_json(obj, out)
    if out is None:
        sys.stdout.write(text)


def _load_schedule(args):
    instance = None
    if getattr(args, "instance", None):
        instance, perm = formats.instance_from_json(formats.read_json(args.instance))
        if perm != tuple(range(1, instance.n + 1)):
            raise CliError("schema", "instance for a schedule must list releases in sorted order")
    return formats.schedule_from_json(formats.read_json(args.input), instance)


def _with_perm(obj: dict, perm: tuple[int, ...]) -> dict:
    if perm != tuple(range(1, len(perm) + 1)):
        obj["original_index"] = list(perm)
    return obj


def cmd_solve(args) -> int:
    inst, perm = formats.instance_from_json(formats.read_json(args.input))
    schedule, value = lp.solve(inst)
    if args.integral:
        schedule = flow.integralize(inst, schedule)
    _emit(_with_perm(formats.schedule_to_json(schedule), perm), args.output)
    if args.output is not None:
        print(format_rational(value))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify(_load_schedule(args))
    print(report)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _require_ok(schedule, equal_length: bool = False) -> None:
    if equal_length and not isinstance(schedule.instance, Instance):
        raise CliError("schema", "this command needs an equal-length instance")
    report = verify(schedule)
    if not report.ok:
        bad = report.failures()[0]
        raise CliError("verify", f"input schedule fails {bad.name}: {bad.detail}", EXIT_VERIFY)


def cmd_normalize(args) -> int:
    schedule = _load_schedule(args)
    _require_ok(schedule, equal_length=True)
    busy = normalize.make_busy(schedule)
    result, traces = normalize.make_irreducible_traced(busy)
    print(f"reductions: {len(traces)}", file=sys.stderr)
    _emit(formats.schedule_to_json(result), args.output)
    return EXIT_OK


def cmd_integralize(args) -> int:
    schedule = _load_schedule(args)
    _require_ok(schedule, equal_length=True)
    _emit(formats.schedule_to_json(flow.integralize(schedule.instance, schedule)), args.output)
    return EXIT_OK


def cmd_openshop(args) -> int:
    inst = formats.openshop_instance_from_json(formats.read_json(args.input))
    schedule, value = openshop.solve_openshop(inst)
    _emit(formats.openshop_schedule_to_json(schedule), args.output)
    print(format_rational(value), file=sys.stderr if args.output is None else sys.stdout)
    return EXIT_OK


def cmd_generate_hard(args) -> int:
    tp = formats.three_partition_from_json(formats.read_json(args.input))
    h = hardness.generate(tp)
    _emit(formats.hardness_to_json(h), args.output)
    if args.output is not None:
        print(h.D)
    return EXIT_OK


def cmd_oracle(args) -> int:
    obj = formats.read_json(args.input)
    if isinstance(obj, dict) and "jobs" in obj:
        value = hardness.brute_force_general(formats.general_instance_from_json(obj))
    else:
        inst, _ = formats.instance_from_json(obj)
        value = hardness.brute_force_equal_p(inst)
    print(format_rational(value))
    return EXIT_OK


def cmd_gantt(args) -> int:
    schedule = _load_schedule(args)
    _require_ok(schedule)
    gantt.emit_gantt(schedule, args.output, args.scale)
    return EXIT_OK


def _scale(text: str) -> Fraction:
    try:
        v = as_rational(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid scale {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("scale must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="meanflow", description="Exact preemptive equal-length scheduling with release times.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, input_help, output_required=False):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("input", help=input_help)
        p.add_argument("-o", "--output", required=output_required, help="output file (default: stdout)")
        p.add_argument("--trace", action="store_true", help="log every reduction to stderr")
        p.set_defaults(func=func)
        return p

    p = add("solve", cmd_solve, "optimal schedule and objective", "instance JSON")
    p.add_argument("--integral", action="store_true", help="round the optimum to integer preemption times")
    for name, func, text in [
        ("verify", cmd_verify, "check a schedule against every feasibility condition"),
        ("normalize", cmd_normalize, "make a schedule busy and irreducible"),
        ("integralize", cmd_integralize, "round a schedule to integer preemption times"),
    ]:
        p = add(name, func, text, "schedule JSON")
        p.add_argument("--instance", help="instance JSON, if the schedule does not embed one")
    add("openshop", cmd_openshop, "solve a unit-operation open shop", "open-shop instance JSON")
    add("generate-hard", cmd_generate_hard, "3-Partition reduction instance and threshold D", "3-Partition JSON")
    add("oracle", cmd_oracle, "exact optimum by exhaustive search (small inputs only)", "instance JSON")
    p = add("gantt", cmd_gantt, "draw a schedule as SVG", "schedule JSON", output_required=True)
    p.add_argument("--instance", help="instance JSON, if the schedule does not embed one")
    p.add_argument("--scale", type=_scale, default=Fraction(20), help="pixels per time unit (default 20)")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.trace:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter("%(message)s"))
            log = logging.getLogger("meanflow.normalize")
            if not any(getattr(h, "_meanflow_trace", False) for h in log.handlers):
                handler._meanflow_trace = True  # type: ignore[attr-defined]
                log.addHandler(handler)
            log.setLevel(logging.DEBUG)
        return args.func(args)
    except CliError as exc:
        code, msg, status = exc.code, str(exc), exc.status
    except hardness.OracleSizeError as exc:
        code, msg, status = "size-guard", str(exc), EXIT_GUARD
    except formats.FormatError as exc:
        code, msg, status = "parse", str(exc), EXIT_USAGE
    except ScheduleError as exc:
        code, msg, status = "schedule", str(exc), EXIT_VERIFY
    except InstanceError as exc:
        code, msg, status = "instance", str(exc), EXIT_USAGE
    except OSError as exc:
        code, msg, status = "io", f"{exc.strerror}: {exc.filename}", EXIT_USAGE
    print(f"error: {code}: {msg}", file=sys.stderr)
    return status


def main() -> None:
    sys.exit(run())

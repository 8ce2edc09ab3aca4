"""Static SVG Gantt charts: one lane per machine, one labelled box per interval."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .model import Schedule, require_valid
from .rational import format_rational

LANE = 30
GAP = 6
LEFT = 40
TOP = 24
PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd")


def _px(x: Fraction) -> str:
    # fixed precision keeps output byte-identical across runs
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def render_gantt(schedule: Schedule, scale: Fraction | int = 20) -> str:
    require_valid(schedule)
    scale = Fraction(scale)
    inst = schedule.instance
    releases = sorted(set(inst.releases))
    end = max([e.end for e in schedule.intervals] + [releases[-1]])
    width = LEFT + end * scale + 20
    height = TOP + inst.m * (LANE + GAP) + 20
    x = lambda t: LEFT + t * scale  # noqa: E731
    lane_y = lambda q: TOP + (q - 1) * (LANE + GAP)  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_px(width)}" height="{_px(height)}" '
        f'font-family="monospace" font-size="11">'
    ]
    for q in range(1, inst.m + 1):
        y = lane_y(q)
        out.append(
            f'<g class="lane" data-machine="{q}">'
            f'<text x="4" y="{y + LANE // 2 + 4}">M{q}</text>'
            f'<line x1="{LEFT}" y1="{y + LANE}" x2="{_px(x(end))}" y2="{y + LANE}" stroke="#999"/></g>'
        )
    for e in schedule.intervals:
        y = lane_y(e.machine)
        x0, x1 = x(e.start), x(e.end)
        color = PALETTE[(e.job - 1) % len(PALETTE)]
        out.append(
            f'<g class="interval" data-job="{e.job}" data-machine="{e.machine}" '
            f'data-start="{format_rational(e.start)}" data-end="{format_rational(e.end)}">'
            f'<rect x="{_px(x0)}" y="{y}" width="{_px(x1 - x0)}" height="{LANE}" fill="{color}" stroke="#333"/>'
            f'<text x="{_px((x0 + x1) / 2)}" y="{y + LANE // 2 + 4}" text-anchor="middle">{e.job}</text></g>'
        )
    bottom = TOP + inst.m * (LANE + GAP)
    for r in releases:
        out.append(
            f'<line class="release" data-time="{format_rational(r)}" x1="{_px(x(r))}" y1="{TOP - 8}" '
            f'x2="{_px(x(r))}" y2="{bottom}" stroke="#c00" stroke-dasharray="3,2"/>'
        )
        out.append(f'<text x="{_px(x(r))}" y="{TOP - 10}" text-anchor="middle" fill="#c00">{r}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_gantt(schedule: Schedule, out: str | Path, scale: Fraction | int = 20) -> str:
    """Write the chart to ``out`` and return the SVG text."""
    text = render_gantt(schedule, scale)
    Path(out).write_text(text, encoding="utf-8")
    return text

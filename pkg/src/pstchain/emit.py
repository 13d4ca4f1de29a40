"""Deterministic emitters: 12-significant-digit JSON and CSV, hand-built SVG.

The standard json module formats floats with shortest round-trip digits,
which is not the fixed 12-significant-digit decimal contract needed for
byte-stable, human-diffable artifacts; this emitter walks the structure
itself and keeps dictionary insertion order.
"""

from __future__ import annotations

import json
import math

import numpy as np


def fmt(x: float) -> str:
    """Decimal form of a float with 12 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("cannot serialize non-finite numbers")
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".12g")


def _emit(value, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if value is None:
        out.append("null")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(fmt(value))
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            out.append(f"{pad}  {json.dumps(str(key))}: ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(value) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(value, (list, tuple, np.ndarray)):
        items = list(value)
        if not items:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(items):
            out.append(pad + "  ")
            _emit(item, out, indent + 1)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(value) -> str:
    """JSON text with fixed key order and 12-significant-digit floats."""
    out: list[str] = []
    _emit(value, out, 0)
    out.append("\n")
    return "".join(out)


def csv_text(header: list[str], columns: list[np.ndarray]) -> str:
    """CSV with the given column order, floats at 12 significant digits."""
    if len(header) != len(columns):
        raise ValueError("header and column counts differ")
    rows = [",".join(header)]
    length = len(columns[0])
    for i in range(length):
        rows.append(",".join(fmt(col[i]) for col in columns))
    return "\n".join(rows) + "\n"


_WIDTH, _HEIGHT = 800, 480
_LEFT, _RIGHT, _TOP, _BOTTOM = 70, 20, 20, 50
_Y_MAX = 1.05


def _px(t: float, t0: float, t1: float) -> float:
    return _LEFT + (t - t0) / (t1 - t0) * (_WIDTH - _LEFT - _RIGHT)


def _py(y: float) -> float:
    return _TOP + (1.0 - y / _Y_MAX) * (_HEIGHT - _TOP - _BOTTOM)


def _polyline(times, values, t0, t1, cls: str, style: str) -> str:
    points = " ".join(
        f"{_px(float(t), t0, t1):.2f},{_py(min(float(v), _Y_MAX)):.2f}"
        for t, v in zip(times, values)
    )
    return f'<polyline class="{cls}" points="{points}" fill="none" {style}/>'


def amplitude_svg(
    times,
    abs_x0,
    abs_xN,
    ese_times,
    transfer_time: float | None,
) -> str:
    """Standalone SVG: |x0| solid, |xN| dashed, markers at zeros and T0."""
    t0, t1 = float(times[0]), float(times[-1])
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" '
        f'height="{_HEIGHT}" viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    axis = 'stroke="black" stroke-width="1"'
    x_axis_y = _py(0.0)
    parts.append(
        f'<line x1="{_LEFT}" y1="{x_axis_y:.2f}" x2="{_WIDTH - _RIGHT}" '
        f'y2="{x_axis_y:.2f}" {axis}/>'
    )
    parts.append(
        f'<line x1="{_LEFT}" y1="{_py(_Y_MAX):.2f}" x2="{_LEFT}" '
        f'y2="{x_axis_y:.2f}" {axis}/>'
    )
    for tick in np.linspace(t0, t1, 6):
        x = _px(float(tick), t0, t1)
        parts.append(
            f'<line x1="{x:.2f}" y1="{x_axis_y:.2f}" x2="{x:.2f}" '
            f'y2="{x_axis_y + 6:.2f}" {axis}/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{x_axis_y + 20:.2f}" font-size="12" '
            f'text-anchor="middle">{format(float(tick), ".4g")}</text>'
        )
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _py(tick)
        parts.append(
            f'<line x1="{_LEFT - 6}" y1="{y:.2f}" x2="{_LEFT}" y2="{y:.2f}" {axis}/>'
        )
        parts.append(
            f'<text x="{_LEFT - 10}" y="{y + 4:.2f}" font-size="12" '
            f'text-anchor="end">{format(tick, ".3g")}</text>'
        )
    parts.append(
        f'<text x="{(_LEFT + _WIDTH - _RIGHT) / 2:.2f}" y="{_HEIGHT - 8}" '
        'font-size="13" text-anchor="middle">t</text>'
    )
    parts.append(
        _polyline(times, abs_x0, t0, t1, "x0-curve", 'stroke="#1f3b70" stroke-width="1.5"')
    )
    parts.append(
        _polyline(
            times,
            abs_xN,
            t0,
            t1,
            "xN-curve",
            'stroke="#b3442c" stroke-width="1.5" stroke-dasharray="6 4"',
        )
    )
    parts.append(
        f'<text x="{_WIDTH - 180}" y="{_TOP + 16}" font-size="13" '
        'fill="#1f3b70">|x0| (solid)</text>'
    )
    parts.append(
        f'<text x="{_WIDTH - 180}" y="{_TOP + 34}" font-size="13" '
        'fill="#b3442c">|xN| (dashed)</text>'
    )
    for t_zero in ese_times:
        if not t0 <= t_zero <= t1:
            continue
        x = _px(float(t_zero), t0, t1)
        parts.append(
            f'<line class="ese-guide" x1="{x:.2f}" y1="{_py(_Y_MAX):.2f}" '
            f'x2="{x:.2f}" y2="{x_axis_y:.2f}" stroke="#777777" '
            'stroke-width="0.8" stroke-dasharray="2 3"/>'
        )
        parts.append(
            f'<circle class="ese-marker" data-t="{fmt(float(t_zero))}" '
            f'cx="{x:.2f}" cy="{x_axis_y:.2f}" r="4" fill="#1f3b70"/>'
        )
    if transfer_time is not None and t0 <= transfer_time <= t1:
        x = _px(float(transfer_time), t0, t1)
        parts.append(
            f'<line class="pst-marker" data-t="{fmt(float(transfer_time))}" '
            f'x1="{x:.2f}" y1="{_py(_Y_MAX):.2f}" x2="{x:.2f}" '
            f'y2="{x_axis_y:.2f}" stroke="#b3442c" stroke-width="1" '
            'stroke-dasharray="4 3"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

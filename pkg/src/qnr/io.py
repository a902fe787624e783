"""Point-cloud serialization (CSV, JSON) and static SVG scatter rendering.

CSV rows carry the two eigenvalues of one pair as re_W, im_W, re_Wt, im_Wt
with 17 significant digits, enough for a lossless double round trip.  The
JSON document mirrors the cloud's point arrays plus run metadata.  SVG output
is a fixed-style diagnostic scatter: W in one color, W_tilde in another,
equal-aspect axes, 5% viewport margin.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .grid import PointCloud

CSV_HEADER = "re_W,im_W,re_Wt,im_Wt"
W_COLOR = "#1f77b4"
WT_COLOR = "#d62728"
MARKER_FRACTION = 0.003  # marker radius as a fraction of the larger extent
CANVAS = 720.0  # pixel size of the larger image side


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_cloud_csv(cloud: PointCloud, path) -> None:
    """One row per pair: both eigenvalues, 17 significant digits."""
    lines = [CSV_HEADER]
    for w, wt in zip(cloud.W, cloud.W_tilde):
        lines.append(f"{_fmt(w.real)},{_fmt(w.imag)},{_fmt(wt.real)},{_fmt(wt.imag)}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_cloud_csv(path) -> PointCloud:
    """Parse a cloud CSV written by :func:`write_cloud_csv`."""
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: not a cloud CSV (bad header)")
    w, wt = [], []
    for line in lines[1:]:
        a, b, c, d = (float(f) for f in line.split(","))
        w.append(complex(a, b))
        wt.append(complex(c, d))
    return PointCloud(np.array(w, dtype=complex), np.array(wt, dtype=complex))


def write_cloud_json(cloud: PointCloud, path, metadata: dict | None = None) -> None:
    """Cloud points plus run metadata as a deterministic JSON document."""
    doc = dict(metadata or {})
    doc["count"] = len(cloud)
    doc["W"] = [[float(z.real), float(z.imag)] for z in cloud.W]
    doc["W_tilde"] = [[float(z.real), float(z.imag)] for z in cloud.W_tilde]
    Path(path).write_text(json.dumps(doc, sort_keys=True))


def scatter_svg(groups: list[tuple[np.ndarray, str]]) -> str:
    """Equal-aspect SVG scatter of point groups, one fill color per group."""
    pts = np.concatenate([np.asarray(g, dtype=complex).reshape(-1) for g, _ in groups])
    if pts.size == 0:
        raise ValueError("cannot render an empty point set")
    x_min, x_max = float(pts.real.min()), float(pts.real.max())
    y_min, y_max = float(pts.imag.min()), float(pts.imag.max())
    span_x, span_y = x_max - x_min, y_max - y_min
    span = max(span_x, span_y)
    if span == 0.0:
        span = span_x = span_y = 1.0
    mx, my = 0.05 * span, 0.05 * span
    width, height = span_x + 2 * mx, span_y + 2 * my
    # SVG's y axis points down; emit cy = -Im so the picture is upright
    view = f"{x_min - mx:.10g} {-(y_max + my):.10g} {width:.10g} {height:.10g}"
    scale = CANVAS / max(width, height)
    radius = MARKER_FRACTION * span
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width * scale:.0f}" '
        f'height="{height * scale:.0f}" viewBox="{view}">',
    ]
    for points, color in groups:
        arr = np.asarray(points, dtype=complex).reshape(-1)
        parts.append(f'<g fill="{color}" fill-opacity="0.7">')
        for z in arr:
            parts.append(f'<circle cx="{z.real:.8g}" cy="{-z.imag:.8g}" r="{radius:.8g}"/>')
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)


def render_svg(cloud: PointCloud, path) -> None:
    """Render a cloud as an SVG scatter: W then W_tilde, fixed colors."""
    if len(cloud) == 0:
        raise ValueError("cannot render an empty cloud")
    svg = scatter_svg([(cloud.W, W_COLOR), (cloud.W_tilde, WT_COLOR)])
    Path(path).write_text(svg)


def parse_duration(text: str) -> float:
    """Duration strings like '250ms', '60s', '5m', '1h', or plain seconds."""
    raw = text.strip().lower()
    for suffix, factor in (("ms", 1e-3), ("s", 1.0), ("m", 60.0), ("h", 3600.0)):
        if raw.endswith(suffix):
            number = raw[: -len(suffix)]
            break
    else:
        number, factor = raw, 1.0
    try:
        value = float(number) * factor
    except ValueError:
        raise ValueError(f"cannot parse duration {text!r}") from None
    if value <= 0:
        raise ValueError(f"duration must be positive, got {text!r}")
    return value

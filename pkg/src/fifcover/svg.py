"""Standalone SVG figures of coverings, with optional attractor overlay.

No plotting dependency: the document is assembled as text with a fixed
element order (rhombi in word order, then data markers, then sample dots),
so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .covering import Covering
from .model import InterpolationData

_WIDTH = 800.0
_PAD_FRACTION = 0.05

_RHOMBUS_FILL = "#4878a8"
_RHOMBUS_STROKE = "#1f3f66"
_DATA_MARKER = "#c03030"
_SAMPLE_DOT = "#202020"


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def emit_svg(covering: Covering,
             sample: np.ndarray | None = None,
             data: InterpolationData | None = None) -> str:
    """Render the covering as an SVG document string.

    The viewBox is the bounding box of all rhombus vertices padded by 5%;
    the y-axis is flipped so larger ordinates render upward.  Sample points,
    when given, are drawn as sub-pixel dots on top of the rhombi.
    """
    verts = np.array([v for r in covering.rhombi for v in r.vertices()])
    xmin, ymin = verts.min(axis=0)
    xmax, ymax = verts.max(axis=0)
    pad_x = (xmax - xmin) * _PAD_FRACTION or 1.0
    pad_y = (ymax - ymin) * _PAD_FRACTION or 1.0
    xmin, xmax = xmin - pad_x, xmax + pad_x
    ymin, ymax = ymin - pad_y, ymax + pad_y
    height = _WIDTH * (ymax - ymin) / (xmax - xmin)
    sx = _WIDTH / (xmax - xmin)
    sy = height / (ymax - ymin)

    def to_screen(x: float, y: float) -> tuple[float, float]:
        return ((x - xmin) * sx, (ymax - y) * sy)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(_WIDTH)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(_WIDTH)} {_fmt(height)}">',
        f'<rect width="{_fmt(_WIDTH)}" height="{_fmt(height)}" fill="white"/>',
    ]
    for r in covering.rhombi:
        pts = " ".join("{},{}".format(*map(_fmt, to_screen(x, y)))
                       for x, y in r.vertices())
        parts.append(
            f'<polygon points="{pts}" fill="{_RHOMBUS_FILL}" '
            f'fill-opacity="0.15" stroke="{_RHOMBUS_STROKE}" '
            f'stroke-width="1"/>')
    if sample is not None and len(sample):
        dots = []
        for x, y in np.asarray(sample, dtype=float).reshape(-1, 2):
            px, py = to_screen(x, y)
            dots.append(f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="0.4"/>')
        parts.append(f'<g fill="{_SAMPLE_DOT}">' + "".join(dots) + "</g>")
    if data is not None:
        for x, y in zip(data.xs, data.ys):
            px, py = to_screen(x, y)
            parts.append(
                f'<circle cx="{_fmt(px)}" cy="{_fmt(py)}" r="4" '
                f'fill="{_DATA_MARKER}" stroke="white" stroke-width="1"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"

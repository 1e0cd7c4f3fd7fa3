"""File formats: input JSON, covering JSON, sample CSV, reference tables.

All numbers are written with 17 significant digits so every binary64 value
round-trips exactly, with a locale-independent decimal point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any

import numpy as np

from .covering import Covering, RangeBounds, Rhombus
from .errors import MalformedDocument
from .model import InterpolationData, validate_data

FORMAT_VERSION = 1

#: Datasets bundled with the package (see ``fifcover/data``).
BUNDLED_DATASETS = ("dataset1", "dataset2", "dataset3")


@dataclass(frozen=True)
class InputDocument:
    """Parsed form of the input JSON {x, y, d, name?}."""

    x: tuple[float, ...]
    y: tuple[float, ...]
    d: tuple[float, ...]
    name: str | None = None

    def to_data(self) -> InterpolationData:
        return validate_data(
            InterpolationData(self.x, self.y, self.d, self.name))


def _num(x: float) -> str:
    return format(float(x), ".17g")


def _write_json(obj: Any) -> str:
    """Serialize with explicit float formatting (17 significant digits)."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {_write_json(v)}"
                          for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_write_json(v) for v in obj) + "]"
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _number_list(doc: dict, key: str, length: int | None = None) -> tuple:
    if key not in doc:
        raise MalformedDocument(f"missing required field {key!r}")
    value = doc[key]
    if not isinstance(value, list) or not value:
        raise MalformedDocument(f"field {key!r} must be a non-empty array")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise MalformedDocument(
                f"field {key!r}[{i}] must be a number, got {v!r}")
        out.append(float(v))
    return tuple(out)


def parse_input(text: str) -> InputDocument:
    """Parse the input JSON; errors carry the offending field."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedDocument("top-level value must be an object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise MalformedDocument("field 'name' must be a string")
    return InputDocument(x=_number_list(doc, "x"), y=_number_list(doc, "y"),
                         d=_number_list(doc, "d"), name=name)


def input_to_json(doc: InputDocument) -> str:
    body: dict[str, Any] = {"format_version": FORMAT_VERSION,
                            "x": doc.x, "y": doc.y, "d": doc.d}
    if doc.name is not None:
        body["name"] = doc.name
    return _write_json(body) + "\n"


def covering_to_json(c: Covering) -> str:
    body = {
        "format_version": FORMAT_VERSION,
        "mode": c.mode,
        "depth": c.depth,
        "theta": c.theta,
        "diameter_bound": c.diameter_bound,
        "bounds": {"lower": c.bounds.lower, "upper": c.bounds.upper},
        "x_span": c.x_span,
        "mode_notes": list(c.mode_notes),
        "rhombi": [
            {"word": list(r.word), "center": [r.center.u, r.center.v],
             "radius": r.radius, "lipschitz": r.lipschitz,
             "vertices": [list(v) for v in r.vertices()]}
            for r in c.rhombi
        ],
    }
    return _write_json(body) + "\n"


def covering_from_json(text: str) -> Covering:
    """Rebuild a Covering from its JSON document (for verification)."""
    from .analysis import FixedPoint  # local to avoid cycle at import time

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    try:
        theta = float(doc["theta"])
        rhombi = tuple(
            Rhombus(center=FixedPoint(*map(float, r["center"])),
                    radius=float(r["radius"]), theta=theta,
                    word=tuple(int(k) for k in r["word"]),
                    lipschitz=float(r["lipschitz"]))
            for r in doc["rhombi"]
        )
        return Covering(
            depth=int(doc["depth"]), mode=doc["mode"], theta=theta,
            rhombi=rhombi,
            diameter_bound=float(doc["diameter_bound"]),
            lipschitz_sorted=tuple(sorted(r.lipschitz for r in rhombi)),
            bounds=RangeBounds(float(doc["bounds"]["lower"]),
                               float(doc["bounds"]["upper"])),
            x_span=tuple(map(float, doc["x_span"])),
            mode_notes=tuple(doc.get("mode_notes", ())),
            centers_u=np.array([r.center.u for r in rhombi]),
            centers_v=np.array([r.center.v for r in rhombi]),
            radii=np.array([r.radius for r in rhombi]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad covering document: {exc}") from exc


def sample_to_csv(points: np.ndarray) -> str:
    lines = ["x,y"]
    for x, y in np.asarray(points, dtype=float).reshape(-1, 2):
        lines.append(f"{_num(x)},{_num(y)}")
    return "\n".join(lines) + "\n"


def covering_to_csv(c: Covering) -> str:
    lines = ["word,center_x,center_y,radius,lipschitz"]
    for r in c.rhombi:
        word = "-".join(str(k) for k in r.word)
        lines.append(f"{word},{_num(r.center.u)},{_num(r.center.v)},"
                     f"{_num(r.radius)},{_num(r.lipschitz)}")
    return "\n".join(lines) + "\n"


def parse_reference(text: str) -> dict[int, tuple[float, float]]:
    """Parse a reference range table {depth: [lower, upper]}."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "bounds" not in doc:
        raise MalformedDocument("reference table must contain 'bounds'")
    out: dict[int, tuple[float, float]] = {}
    try:
        for depth, pair in doc["bounds"].items():
            lo, hi = (float(v) for v in pair)
            out[int(depth)] = (lo, hi)
    except (TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad reference table: {exc}") from exc
    return out


def load_bundled(name: str) -> str:
    """Text of a bundled data file, e.g. ``dataset1.json``."""
    return (resources.files("fifcover") / "data" / name).read_text()


def load_bundled_dataset(name: str) -> InterpolationData:
    return parse_input(load_bundled(f"{name}.json")).to_data()


def load_bundled_reference(name: str) -> dict[int, tuple[float, float]]:
    return parse_reference(load_bundled(f"{name}_range_reference.json"))

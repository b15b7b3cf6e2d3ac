"""JSON (de)serialization.  Exact numbers always travel as strings."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .carpet import CarpetGluing, Verdict
from .exactnum import CycloNum, PiRational
from .prototiles import TurtlePolygon, WheelMeta
from .wang import WangTileSet


def rational_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    return Fraction(str(text).strip())


def cyclo_to_json(x: CycloNum) -> dict:
    return {"order": x.order, "coeffs": [rational_str(c) for c in x.coeffs]}


def cyclo_from_json(d: dict) -> CycloNum:
    return CycloNum(int(d["order"]), [parse_rational(c) for c in d["coeffs"]])


def angle_str(a: PiRational) -> str:
    return str(a)


def parse_angle(text: str) -> PiRational:
    return PiRational.parse(text)


def _plain(value: Any) -> Any:
    """Make metadata JSON-safe."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        return rational_str(value)
    if isinstance(value, PiRational):
        return str(value)
    if isinstance(value, CycloNum):
        return cyclo_to_json(value)
    return value


def polygon_to_json(p: TurtlePolygon) -> dict:
    return {
        "name": p.name,
        "order": p.order,
        "startHeading": str(p.start_heading),
        "instructions": [{"len": cyclo_to_json(length), "turn": str(turn)} for length, turn in p.instructions],
        "meta": _plain(p.meta),
    }


def polygon_from_json(d: dict) -> TurtlePolygon:
    order = int(d["order"])
    ins = [(cyclo_from_json(i["len"]), PiRational.parse(i["turn"])) for i in d["instructions"]]
    return TurtlePolygon(d["name"], ins, order, PiRational.parse(d.get("startHeading", "0/1 pi")), d.get("meta"))


def wheel_meta_to_json(m: WheelMeta) -> dict:
    return {
        "n": m.n,
        "b": m.b,
        "margin": rational_str(m.params.margin),
        "gap": rational_str(m.params.gap),
        "sideGlues": [g.to_json() for g in m.side_glues],
        "sideWords": list(m.side_words),
        "sideLength": rational_str(m.side_length),
        "offsets": [rational_str(o) for o in m.offsets],
        "cornerIndex": list(m.corner_index),
        "order": m.order,
        "width": cyclo_to_json(m.width) if m.width is not None else None,
    }


def gluing_to_json(g: CarpetGluing) -> dict:
    return {
        "prototiles": [polygon_to_json(p) for p in g.prototiles],
        "tiles": [{"prototile": p, "reflected": r} for p, r in g.tiles],
        "vertexClasses": [[[t, v] for t, v in c] for c in g.vertex_classes],
        "edgeOverlaps": [[[None if x is None else [x[0], x[1]] for x in seq] for seq in edges]
                         for edges in g.edge_overlaps],
        "anchor": g.anchor,
    }


def gluing_from_json(d: dict) -> CarpetGluing:
    protos = [polygon_from_json(p) for p in d["prototiles"]]
    tiles = [(t["prototile"], t["reflected"]) for t in d["tiles"]]
    classes = [[(m[0], m[1]) for m in c] for c in d["vertexClasses"]]
    overlaps = [[[None if x is None else (x[0], x[1]) for x in seq] for seq in edges]
                for edges in d["edgeOverlaps"]]
    return CarpetGluing(protos, tiles, classes, overlaps, d.get("anchor", 0))


def verdict_to_json(v: Verdict) -> dict:
    return v.to_json()


def wangset_from_json(d: dict) -> WangTileSet:
    return WangTileSet.from_json(d)


def load(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dump(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=1, sort_keys=False)
        fh.write("\n")


def schema(name: str) -> dict:
    """A JSON schema shipped with the package, by base name."""
    text = resources.files("threetile").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)

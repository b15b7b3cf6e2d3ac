"""Deterministic hand-written SVG for prototiles and carpets."""

from __future__ import annotations

import math
from typing import Sequence

from .carpet import CarpetGluing, Layout
from .exactnum import CycloNum, approx_real
from .prototiles import TurtlePolygon

COLORS = {"wheel": "#3b6ea8", "shuriken": "#d98c2b", "staple": "#5a9e4b"}
DEFAULT_COLOR = "#8c8c8c"
CANVAS = 800


class InvalidLayout(ValueError):
    pass


def _coords(points: Sequence[CycloNum], bits: int) -> list[tuple[float, float]]:
    out = []
    for p in points:
        x = approx_real(p.real_part(), bits).mid()
        y = approx_real(p.imag_part(), bits).mid()
        out.append((float(x), float(y)))
    return out


def _fmt(v: float, digits: int) -> str:
    s = f"{v:.{digits}f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _document(paths: list[tuple[list[tuple[float, float]], str]], bits: int) -> str:
    xs = [x for pts, _ in paths for x, _ in pts]
    ys = [-y for pts, _ in paths for _, y in pts]  # screen y points down
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = max(x1 - x0, 1e-12), max(y1 - y0, 1e-12)
    mx, my = 0.05 * w, 0.05 * h
    vb = (x0 - mx, y0 - my, w + 2 * mx, h + 2 * my)
    stroke = 0.002 * max(w, h)
    digits = max(3, min(15, math.ceil(bits * math.log10(2)) - int(math.log10(max(w, h, 1)))))
    scale = CANVAS / max(vb[2], vb[3])
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(vb[2] * scale, 2)}" height="{_fmt(vb[3] * scale, 2)}" '
        f'viewBox="{" ".join(_fmt(v, digits) for v in vb)}">',
        f'<g stroke="#000000" stroke-width="{_fmt(stroke, digits)}" stroke-linejoin="round">',
    ]
    for pts, color in paths:
        d = "M " + " L ".join(f"{_fmt(x, digits)} {_fmt(-y, digits)}" for x, y in pts) + " Z"
        lines.append(f'<path fill="{color}" d="{d}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def svg_polygon(p: TurtlePolygon, bits: int = 24) -> str:
    return _document([(_coords(p.vertices, bits), COLORS.get(p.name, DEFAULT_COLOR))], bits)


def svg_carpet(g: CarpetGluing, L: Layout, bits: int = 24) -> str:
    """One filled path per tile, colored by prototile name."""
    if len(L.placements) != len(g.tiles):
        raise InvalidLayout("layout does not cover every tile")
    paths = []
    for t in range(len(g.tiles)):
        if L.placements[t].reflected != g.tiles[t][1]:
            raise InvalidLayout(f"tile {t} reflection flag disagrees with the gluing")
        world = L.world(g, t)
        for j, p in enumerate(world):
            c = g.class_of[(t, j)]
            if c in L.points and L.points[c] != p:
                raise InvalidLayout(f"vertex class {c} is not where tile {t} puts it")
        name = g.prototiles[g.tiles[t][0]].name
        paths.append((_coords(world, bits), COLORS.get(name, DEFAULT_COLOR)))
    return _document(paths, bits)

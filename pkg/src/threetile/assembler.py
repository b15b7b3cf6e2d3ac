"""Lay out the intended wheel/shuriken/staple carpet for a block of Wang tiles."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .carpet import CarpetGluing, Placement, gluing_from_placements
from .exactnum import CycloNum, PiRational, zeta_exponent
from .prototiles import PrototileSet, shuriken_center, wheel_center
from .wang import WangTileSet

WHEEL, SHURIKEN, STAPLE = 0, 1, 2


class MismatchedBlock(ValueError):
    pass


@dataclass(frozen=True)
class WangBlock:
    """grid[row][col] indexes the padded signed tile set; row 0 is the top row."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(int(x) for x in row) for row in self.grid)
        if not grid or not grid[0] or any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("block must be a nonempty rectangle")
        object.__setattr__(self, "grid", grid)

    @property
    def rows(self) -> int:
        return len(self.grid)

    @property
    def cols(self) -> int:
        return len(self.grid[0])

    def mismatches(self, s: WangTileSet) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        bad = []
        for r in range(self.rows):
            for c in range(self.cols):
                t = s.tiles[self.grid[r][c]]
                if c + 1 < self.cols and not t.east.matches(s.tiles[self.grid[r][c + 1]].west):
                    bad.append(((r, c), (r, c + 1)))
                if r + 1 < self.rows and not t.south.matches(s.tiles[self.grid[r + 1][c]].north):
                    bad.append(((r, c), (r + 1, c)))
        return bad

    def to_json(self) -> dict:
        return {"grid": [list(r) for r in self.grid]}

    @classmethod
    def from_json(cls, d: dict) -> WangBlock:
        return cls(tuple(tuple(r) for r in d["grid"]))


def wheel_orientation(i: int, n: int) -> PiRational:
    """Rotation that brings side i of the wheel to the top."""
    if not 0 <= i < n:
        raise ValueError("tile index out of range")
    return PiRational(i, 2 * n)


def _fit_rotation(src: CycloNum, dst: CycloNum, order: int) -> PiRational:
    """The rotation zeta**k with zeta**k * src == dst (exact check)."""
    zs, zd = complex(src), complex(dst)
    k = round(cmath.phase(zd / zs) / (2 * math.pi) * order) % order
    if src.times_zeta(k) != dst:
        raise ValueError("segments are not related by a clean rotation")
    return PiRational(Fraction(2 * k, order))


def wheel_center_at(r: int, c: int, width: CycloNum) -> CycloNum:
    """Grid cell (r, c) has its wheel centre at c*W - r*W*i."""
    order = width.order
    return width * c - width.times_zeta(order // 4) * r


@dataclass
class Assembly:
    gluing: CarpetGluing
    placements: list[Placement]
    centers: list[CycloNum]  # wheel centres, row-major
    counts: dict


def facing_sides(t: int, n: int) -> dict[str, range]:
    """Clockwise side numbers of a wheel carrying tile t that face each diagonal neighbour."""
    return {
        "NE": range(t + 1, n + t),
        "SE": range(n + t + 1, 2 * n + t),
        "SW": range(2 * n + t + 1, 3 * n + t),
        "NW": range(3 * n + t + 1, 4 * n + t),
    }


def assemble(block: WangBlock, protos: PrototileSet, check: bool = True) -> Assembly:
    s = protos.tileset
    meta = protos.meta
    n, order = meta.n, meta.order
    if any(not 0 <= x < n for row in block.grid for x in row):
        raise ValueError("block uses a tile index outside the padded set")
    if check:
        bad = block.mismatches(s)
        if bad:
            raise MismatchedBlock(f"glues do not match between cells {bad[0][0]} and {bad[0][1]}")
    W = meta.width
    wheel_c = wheel_center(protos.wheel, meta)
    tiles: list[tuple[int, bool]] = []
    placements: list[Placement] = []
    centers: list[CycloNum] = []
    wheel_id: dict[tuple[int, int], int] = {}
    for r in range(block.rows):
        for c in range(block.cols):
            rot = wheel_orientation(block.grid[r][c], n)
            k = zeta_exponent(rot, order)
            target = wheel_center_at(r, c, W)
            wheel_id[(r, c)] = len(tiles)
            tiles.append((WHEEL, False))
            placements.append(Placement(rot, target - wheel_c.times_zeta(k)))
            centers.append(target)

    # shurikens at interior square centres, one tip pointing north
    sh = protos.shuriken
    sc = shuriken_center(sh)
    tip0 = sh.vertices[sh.meta["tips"][0]] - sc
    reach = (W - CycloNum.from_rational(meta.side_length, order)) * Fraction(1, 2)
    sh_rot = _fit_rotation(tip0, reach.times_zeta(order // 4), order)
    ks = zeta_exponent(sh_rot, order)
    n_sh = 0
    for r in range(block.rows - 1):
        for c in range(block.cols - 1):
            S = (wheel_center_at(r, c, W) + wheel_center_at(r + 1, c + 1, W)) * Fraction(1, 2)
            tiles.append((SHURIKEN, False))
            placements.append(Placement(sh_rot, S - sc.times_zeta(ks)))
            n_sh += 1

    # staples against every gadget on a wheel side that faces a shuriken
    st = protos.staple
    sv = st.vertices
    wv = protos.wheel.vertices
    n_st = 0
    for r in range(block.rows - 1):
        for c in range(block.cols - 1):
            around = [((r, c), "SE"), ((r, c + 1), "SW"), ((r + 1, c + 1), "NW"), ((r + 1, c), "NE")]
            for cell, quadrant in around:
                w = wheel_id[cell]
                t = block.grid[cell[0]][cell[1]]
                pl = placements[w]
                kw = zeta_exponent(pl.rotation, order)
                for side in facing_sides(t, n)[quadrant]:
                    for slot in range(meta.slots):
                        e = meta.gadget_edge(side % (4 * n), slot)
                        a = pl.translation + wv[e].times_zeta(kw)
                        b = pl.translation + wv[(e + 1) % len(wv)].times_zeta(kw)
                        rot = _fit_rotation(sv[3] - sv[2], a - b, order)
                        k = zeta_exponent(rot, order)
                        tiles.append((STAPLE, False))
                        placements.append(Placement(rot, b - sv[2].times_zeta(k)))
                        n_st += 1

    gluing = gluing_from_placements(protos.as_list(), tiles, placements, anchor=0)
    counts = {"wheels": block.rows * block.cols, "shurikens": n_sh, "staples": n_st}
    return Assembly(gluing, placements, centers, counts)


def expected_counts(rows: int, cols: int, n: int, b: int) -> dict:
    inner = max(rows - 1, 0) * max(cols - 1, 0)
    return {"wheels": rows * cols, "shurikens": inner, "staples": inner * 4 * (n - 1) * (b + 4)}

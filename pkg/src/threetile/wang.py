"""Wang tiles: signing, glue-word codec and a small torus solver."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

UNSIGNED = "unsigned-translation-only"
SIGNED = "signed-free"


class ValueTooLarge(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class Glue:
    sign: Optional[str]  # "+", "-" or None for unsigned
    value: int

    def matches(self, other: Glue) -> bool:
        if self.sign is None and other.sign is None:
            return self.value == other.value
        if self.sign is None or other.sign is None:
            return False
        return self.value == other.value and self.sign != other.sign

    def to_json(self) -> dict:
        return {"sign": self.sign, "value": self.value}

    @classmethod
    def from_json(cls, d: dict) -> Glue:
        sign = d.get("sign")
        if sign not in ("+", "-", None):
            raise ValueError(f"bad glue sign {sign!r}")
        return cls(sign, int(d["value"]))


@dataclass(frozen=True)
class WangTile:
    north: Glue
    east: Glue
    south: Glue
    west: Glue

    def to_json(self) -> dict:
        return {k[0]: getattr(self, k).to_json() for k in ("north", "east", "south", "west")}

    @classmethod
    def from_json(cls, d: dict) -> WangTile:
        return cls(*(Glue.from_json(d[k]) for k in "nesw"))


def unsigned_tile(n: int, e: int, s: int, w: int) -> WangTile:
    return WangTile(Glue(None, n), Glue(None, e), Glue(None, s), Glue(None, w))


@dataclass(frozen=True)
class WangTileSet:
    tiles: tuple[WangTile, ...]
    kind: str = UNSIGNED

    def __post_init__(self):
        if not self.tiles:
            raise ValueError("tile set must be nonempty")
        if self.kind not in (UNSIGNED, SIGNED):
            raise ValueError(f"unknown kind {self.kind!r}")
        object.__setattr__(self, "tiles", tuple(self.tiles))
        for t in self.tiles:
            for g in (t.north, t.east, t.south, t.west):
                if (g.sign is None) != (self.kind == UNSIGNED):
                    raise ValueError("glue signs inconsistent with tile set kind")

    def __len__(self) -> int:
        return len(self.tiles)

    def glue_values(self) -> set[int]:
        return {g.value for t in self.tiles for g in (t.north, t.east, t.south, t.west)}

    def to_json(self) -> dict:
        return {"kind": self.kind, "tiles": [t.to_json() for t in self.tiles]}

    @classmethod
    def from_json(cls, d: dict) -> WangTileSet:
        return cls(tuple(WangTile.from_json(t) for t in d["tiles"]), d.get("kind", UNSIGNED))


def make_signed_free(s: WangTileSet) -> WangTileSet:
    """Separate vertical and horizontal glue names, then sign them.

    North/east glues become positive, south/west negative.  Vertical glue
    names are numbered first, so all values end up in 0..G-1.
    """
    if s.kind != UNSIGNED:
        raise ValueError("make_signed_free expects an unsigned tile set")
    vert = sorted({g.value for t in s.tiles for g in (t.north, t.south)})
    horiz = sorted({g.value for t in s.tiles for g in (t.east, t.west)})
    vmap = {v: i for i, v in enumerate(vert)}
    hmap = {v: len(vert) + i for i, v in enumerate(horiz)}
    tiles = tuple(
        WangTile(
            Glue("+", vmap[t.north.value]),
            Glue("+", hmap[t.east.value]),
            Glue("-", vmap[t.south.value]),
            Glue("-", hmap[t.west.value]),
        )
        for t in s.tiles
    )
    return WangTileSet(tiles, SIGNED)


def bits_for(s: WangTileSet) -> int:
    """Payload width b = max(1, ceil(log2 G))."""
    g = len(s.glue_values())
    return max(1, math.ceil(math.log2(g))) if g > 1 else 1


# --------------------------------------------------------------------------
# Glue words
# --------------------------------------------------------------------------


def encode_glue(value: int, sign: str, b: int) -> str:
    if b < 1:
        raise ValueError("b must be positive")
    if value < 0 or value >= 1 << b:
        raise ValueTooLarge(f"value {value} does not fit in {b} bits")
    word = "00" + format(value, f"0{b}b") + "01"
    if sign == "+":
        return word
    if sign == "-":
        return word[::-1]
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def decode_glue(word: str) -> tuple[int, str]:
    """Inverse of encode_glue.  Raises ValueError on an unframed word."""
    if len(word) < 5 or set(word) - {"0", "1"}:
        raise ValueError(f"not a glue word: {word!r}")
    if word.startswith("00") and word.endswith("01"):
        return int(word[2:-2], 2), "+"
    if word.startswith("10") and word.endswith("00"):
        return int(word[::-1][2:-2], 2), "-"
    raise ValueError(f"bad framing: {word!r}")


def reflect_word(word: str) -> str:
    """The word read off a mirrored side: reversed with every bit flipped."""
    return "".join("1" if c == "0" else "0" for c in reversed(word))


def words_match(w1: str, w2: str) -> bool:
    if len(w1) != len(w2):
        raise LengthMismatch(f"{len(w1)} != {len(w2)}")
    return w2 == w1[::-1]


# --------------------------------------------------------------------------
# Torus tilings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TorusTiling:
    k1: int  # width
    k2: int  # height
    assignment: tuple[tuple[int, ...], ...]  # assignment[row][col], row 0 on top

    def to_json(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "assignment": [list(r) for r in self.assignment]}


def _h_ok(s: WangTileSet, left: int, right: int) -> bool:
    return s.tiles[left].east.matches(s.tiles[right].west)


def _v_ok(s: WangTileSet, top: int, bottom: int) -> bool:
    return s.tiles[top].south.matches(s.tiles[bottom].north)


def check_wang_tiling(s: WangTileSet, t: TorusTiling) -> bool:
    grid = t.assignment
    if len(grid) != t.k2 or any(len(r) != t.k1 for r in grid):
        return False
    for r in range(t.k2):
        for c in range(t.k1):
            cur = grid[r][c]
            if not _h_ok(s, cur, grid[r][(c + 1) % t.k1]):
                return False
            if not _v_ok(s, cur, grid[(r + 1) % t.k2][c]):
                return False
    return True


def _cyclic_rows(s: WangTileSet, k1: int) -> Iterator[tuple[int, ...]]:
    """All horizontally consistent rows of width k1, lexicographic order."""
    m = len(s)
    row: list[int] = []

    def rec():
        if len(row) == k1:
            if _h_ok(s, row[-1], row[0]):
                yield tuple(row)
            return
        for t in range(m):
            if row and not _h_ok(s, row[-1], t):
                continue
            row.append(t)
            yield from rec()
            row.pop()

    yield from rec()


def solve_torus(s: WangTileSet, k1: int, k2: int, budget: int = 1_000_000) -> Optional[TorusTiling]:
    """Depth-first search for a k1 x k2 periodic tiling.

    Rows are built one at a time from the horizontally valid cyclic rows.
    Returns None when the space is exhausted; raises BudgetExceeded when
    the node budget runs out first.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError("torus dimensions must be positive")
    rows = list(_cyclic_rows(s, k1))
    nodes = 0

    def compatible(top: tuple[int, ...], bottom: tuple[int, ...]) -> bool:
        return all(_v_ok(s, a, b) for a, b in zip(top, bottom))

    succ = {r: [q for q in rows if compatible(r, q)] for r in rows}
    dead: set[tuple[tuple[int, ...], int]] = set()  # (last row, rows left) that cannot close
    chosen: list[tuple[int, ...]] = []

    def rec() -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if len(chosen) == k2:
            return compatible(chosen[-1], chosen[0])
        key = (chosen[0], chosen[-1], k2 - len(chosen))
        if key in dead:
            return False
        for q in succ[chosen[-1]]:
            chosen.append(q)
            if rec():
                return True
            chosen.pop()
        dead.add(key)
        return False

    for first in rows:
        chosen[:] = [first]
        if rec():
            return TorusTiling(k1, k2, tuple(chosen))
    return None


def brute_force_torus(s: WangTileSet, k1: int, k2: int) -> bool:
    """Naive enumeration of every assignment; used as an oracle in tests."""
    for cells in itertools.product(range(len(s)), repeat=k1 * k2):
        grid = tuple(tuple(cells[r * k1:(r + 1) * k1]) for r in range(k2))
        if check_wang_tiling(s, TorusTiling(k1, k2, grid)):
            return True
    return False

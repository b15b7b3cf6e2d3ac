"""The wheel, shuriken and staple prototiles and their angle algebra.

Polygons are described turtle-style: a list of ``(length, turn)`` steps,
each step drawing an edge and then turning left by ``turn`` (negative is a
right turn).  All prototiles are traversed counterclockwise, so the
interior lies to the left of every edge and the turns sum to 2*pi.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .exactnum import (
    PI,
    TWO_PI,
    CycloNum,
    PiRational,
    cos_of,
    sin_of,
    sign_real,
    zeta_exponent,
)
from .geometry import polygon_is_simple
from .wang import Glue, WangTileSet, bits_for, encode_glue

# Gadget angles for eps = pi/16.
EPS = PiRational(1, 16)
ALPHA = PI / 2 - EPS * 2  # 3pi/8
BETA = PI / 2 - EPS  # 7pi/16
TURN_A = PI / 2 + EPS * 2  # pi - alpha
TURN_B = PI / 2 + EPS  # pi - beta
HALF = Fraction(1, 2)


class LayoutOverflow(ValueError):
    """Margins/gaps too small: the adorned polygon is not simple."""


class FlatVertex(ValueError):
    pass


class NotClosed(ValueError):
    pass


def _num(x, order: int) -> CycloNum:
    if isinstance(x, CycloNum):
        return x if x.order == order else x.promote(order)
    return CycloNum.from_rational(Fraction(x), order)


def tweedle_long(order: int = 32) -> CycloNum:
    """2 - cos(eps) + sin(2 eps), the outer edges of every gadget."""
    return 2 - cos_of(EPS, order) + sin_of(EPS * 2, order)


def tweedle_middle(order: int = 32) -> CycloNum:
    """2 (cos(2 eps) + sin(eps)), the middle edge of a tweedle."""
    return (cos_of(EPS * 2, order) + sin_of(EPS, order)) * 2


# --------------------------------------------------------------------------
# Polygons
# --------------------------------------------------------------------------


class TurtlePolygon:
    """A closed polygon drawn by a turtle starting at the origin."""

    def __init__(
        self,
        name: str,
        instructions: Sequence[tuple],
        order: int,
        start_heading: PiRational = PiRational(0),
        meta: Optional[dict] = None,
    ):
        self.name = name
        self.order = order
        self.start_heading = start_heading
        self.instructions: tuple[tuple[CycloNum, PiRational], ...] = tuple(
            (_num(length, order), turn if isinstance(turn, PiRational) else PiRational(turn))
            for length, turn in instructions
        )
        self.meta = dict(meta or {})

    def __len__(self) -> int:
        return len(self.instructions)

    def __repr__(self) -> str:
        return f"TurtlePolygon({self.name!r}, {len(self)} edges, order={self.order})"

    @cached_property
    def headings(self) -> tuple[PiRational, ...]:
        """Heading of each edge, normalized into [0, 2pi)."""
        out = []
        h = self.start_heading
        for _, turn in self.instructions:
            out.append(h.normalized())
            h = h + turn
        return tuple(out)

    def turn_sum(self) -> PiRational:
        total = PiRational(0)
        for _, t in self.instructions:
            total = total + t
        return total

    @cached_property
    def _trace(self) -> tuple[CycloNum, ...]:
        pts = [CycloNum.zero(self.order)]
        for (length, _), h in zip(self.instructions, self.headings):
            pts.append(pts[-1] + length.times_zeta(zeta_exponent(h, self.order)))
        return tuple(pts)

    @property
    def vertices(self) -> tuple[CycloNum, ...]:
        """Vertex j is where edge j starts; vertex 0 is the origin."""
        return self._trace[:-1]

    def endpoint(self) -> CycloNum:
        return self._trace[-1]

    def is_closed(self) -> bool:
        return self.turn_sum() == TWO_PI and self.endpoint().is_zero()

    @cached_property
    def interior_angles(self) -> tuple[PiRational, ...]:
        n = len(self.instructions)
        out = [PiRational(0)] * n
        for j, (_, turn) in enumerate(self.instructions):
            out[(j + 1) % n] = PI - turn
        return tuple(out)

    def edge(self, j: int) -> tuple[CycloNum, CycloNum]:
        v = self.vertices
        return v[j], v[(j + 1) % len(v)]

    def lengths_real(self) -> bool:
        return all(length.is_real() and sign_real(length) > 0 for length, _ in self.instructions)

    def is_simple(self) -> bool:
        return polygon_is_simple(self.vertices)

    def centroid(self) -> CycloNum:
        return self._centroid

    def area(self) -> CycloNum:
        return self._area2 * HALF

    @cached_property
    def _area2(self) -> CycloNum:
        v = self.vertices
        total = CycloNum.zero(self.order)
        for i in range(len(v)):
            total = total + (v[i].conj() * v[(i + 1) % len(v)]).imag_part()
        return total

    @cached_property
    def _centroid(self) -> CycloNum:
        """Area centroid (exact)."""
        v = self.vertices
        n = len(v)
        area2 = CycloNum.zero(self.order)
        acc = CycloNum.zero(self.order)
        for i in range(n):
            p, q = v[i], v[(i + 1) % n]
            c = (p.conj() * q).imag_part()  # cross(p, q)
            area2 = area2 + c
            acc = acc + (p + q) * c
        return acc * Fraction(1, 3) / area2

    def mirror(self) -> TurtlePolygon:
        """Reflection across the x-axis, re-traversed so it stays counterclockwise."""
        ins = self.instructions
        n = len(ins)
        new = [(ins[n - 1 - k][0], ins[(n - 2 - k) % n][1]) for k in range(n)]
        last_heading = self.headings[-1]
        start = (-(last_heading + PI)).normalized()
        meta = dict(self.meta)
        meta["mirrored"] = not meta.get("mirrored", False)
        return TurtlePolygon(self.name, new, self.order, start, meta)

    def promote(self, order: int) -> TurtlePolygon:
        if order == self.order:
            return self
        ins = [(length.promote(order), t) for length, t in self.instructions]
        return TurtlePolygon(self.name, ins, order, self.start_heading, self.meta)


# --------------------------------------------------------------------------
# Gadgets (open paths: (length, turn after), last turn 0)
# --------------------------------------------------------------------------


def tweedle_path(bit: int, order: int = 32) -> list[tuple[CycloNum, PiRational]]:
    """Seven-edge zig-zag; bit 0 first dips outward (to the right)."""
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    A, C = tweedle_long(order), tweedle_middle(order)
    one = CycloNum.from_rational(1, order)
    turns = [-TURN_A, TURN_B, TURN_B, -TURN_B, -TURN_B, TURN_A]
    if bit:
        turns = [-t for t in turns]
    lengths = [A, one, one, C, one, one, A]
    return list(zip(lengths, turns + [PiRational(0)]))


def notch_path(order: int = 32) -> list[tuple[CycloNum, PiRational]]:
    """Symmetric indentation that accepts either tweedle plus one staple."""
    A = tweedle_long(order)
    one = CycloNum.from_rational(1, order)
    turns = [TURN_A, -TURN_B, -EPS * 2, -TURN_B, TURN_A, PiRational(0)]
    lengths = [A, one, one, one, one, A]
    return list(zip(lengths, turns))


def path_points(path, order: int, heading: PiRational = PiRational(0), start=None) -> list[CycloNum]:
    pts = [start if start is not None else CycloNum.zero(order)]
    for length, turn in path:
        pts.append(pts[-1] + _num(length, order).times_zeta(zeta_exponent(heading, order)))
        heading = heading + turn
    return pts


def path_turn(path) -> PiRational:
    total = PiRational(0)
    for _, t in path:
        total = total + t
    return total


def build_staple(order: int = 32) -> TurtlePolygon:
    """Five-gon: four convex beta corners and one reflex corner (vertex 0)."""
    C = tweedle_middle(order)
    ins = [(1, TURN_B), (1, TURN_B), (C, TURN_B), (1, TURN_B), (1, -EPS * 4)]
    return TurtlePolygon("staple", ins, order)


# --------------------------------------------------------------------------
# Wheel and shuriken
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SideParams:
    margin: Fraction = Fraction(5)
    gap: Fraction = Fraction(4)

    def __post_init__(self):
        object.__setattr__(self, "margin", Fraction(self.margin))
        object.__setattr__(self, "gap", Fraction(self.gap))

    def side_length(self, slots: int) -> Fraction:
        return 2 * self.margin + 4 * slots + self.gap * (slots - 1)

    def offsets(self, slots: int) -> list[Fraction]:
        """Distance from the side's start corner to the start of each gadget."""
        return [self.margin + j * (4 + self.gap) for j in range(slots)]


@dataclass
class WheelMeta:
    n: int
    b: int
    params: SideParams
    side_glues: tuple[Glue, ...]
    side_words: tuple[str, ...]
    side_length: Fraction
    offsets: tuple[Fraction, ...]
    corner_index: tuple[int, ...]  # vertex index of the corner starting each CCW side
    order: int
    width: Optional[CycloNum] = field(default=None, repr=False)

    @property
    def slots(self) -> int:
        return self.b + 4

    def ccw_position(self, side: int) -> int:
        """Sides are numbered clockwise from the top; CCW traversal starts on top."""
        return (-side) % (4 * self.n)

    def gadget_edge(self, side: int, slot: int) -> int:
        """Index of the middle (long) edge of a gadget on a numbered side."""
        return self.corner_index[self.ccw_position(side)] + 6 * slot + 3


def pad_tileset(s: WangTileSet) -> WangTileSet:
    tiles = list(s.tiles)
    while len(tiles) < 5 or len(tiles) % 2 == 0:
        tiles.append(tiles[-1])
    return WangTileSet(tuple(tiles), s.kind)


def side_glue(s: WangTileSet, side: int) -> Glue:
    n = len(s)
    q, i = divmod(side, n)
    t = s.tiles[i]
    return (t.north, t.east, t.south, t.west)[q]


def _adorned_side(words: str, params: SideParams, order: int, gadget) -> list[tuple]:
    """Steps for one side minus its final corner turn, collinear pieces merged."""
    steps: list[list] = []
    pending = CycloNum.from_rational(params.margin, order)
    for j, bit in enumerate(words):
        path = gadget(bit)
        # first edge of a gadget lies on the baseline
        steps.append([pending + path[0][0], path[0][1]])
        steps.extend([length, turn] for length, turn in path[1:-1])
        pending = path[-1][0] + (params.gap if j + 1 < len(words) else params.margin)
    steps.append([pending, PiRational(0)])
    for length, _ in steps:
        if sign_real(_num(length, order)) <= 0:
            raise LayoutOverflow("margin or gap too small: gadgets overrun each other")
    return steps


def _check_simple(poly: TurtlePolygon) -> TurtlePolygon:
    if not poly.is_closed():
        raise NotClosed(f"{poly.name} does not close")
    if not poly.is_simple():
        raise LayoutOverflow(f"{poly.name} is not simple with the chosen margins")
    return poly


def build_wheel(s: WangTileSet, params: SideParams = SideParams(), b: Optional[int] = None,
                check: bool = True) -> tuple[TurtlePolygon, WheelMeta]:
    """Regular 4n-gon whose sides carry the framed glue words.

    Vertex 0 is the top-right corner; the top side (side 0) is traversed
    first, heading west.  Side k (numbered clockwise) carries glue k.
    """
    n = len(s)
    if n < 5 or n % 2 == 0:
        raise ValueError("wheel needs an odd number >= 5 of tiles (use pad_tileset)")
    if b is None:
        b = bits_for(s)
    order = 32 * n
    slots = b + 4
    corner_turn = PiRational(1, 2 * n)
    glues, words, steps, corners = [], [], [], []
    for side in range(4 * n):
        g = side_glue(s, side)
        glues.append(g)
        words.append(encode_glue(g.value, g.sign, b))
    for p in range(4 * n):
        side = (-p) % (4 * n)
        corners.append(len(steps))
        part = _adorned_side(words[side], params, order, lambda bit: tweedle_path(int(bit), order))
        part[-1][1] = corner_turn
        steps.extend(part)
    L = params.side_length(slots)
    meta = WheelMeta(n, b, params, tuple(glues), tuple(words), L,
                     tuple(params.offsets(slots)), tuple(corners), order)
    poly = TurtlePolygon("wheel", [tuple(st) for st in steps], order, PI, {"n": n, "b": b})
    if check:
        _check_simple(poly)
    meta.width = wheel_width(poly, meta)
    return poly, meta


def wheel_center(poly: TurtlePolygon, meta: WheelMeta) -> CycloNum:
    v = poly.vertices
    total = CycloNum.zero(poly.order)
    for c in meta.corner_index:
        total = total + v[c]
    return total * Fraction(1, len(meta.corner_index))


def wheel_width(poly: TurtlePolygon, meta: WheelMeta) -> CycloNum:
    """Distance between opposite sides of the base 4n-gon."""
    v = poly.vertices
    top_mid = (v[meta.corner_index[0]] + v[meta.corner_index[1]]) * HALF
    return ((top_mid - wheel_center(poly, meta)) * 2).imag_part()


def build_shuriken(n: int, b: int, params: SideParams = SideParams(), check: bool = True) -> TurtlePolygon:
    """Four concave chains of n-1 notched sides meeting at four sharp tips.

    Vertex 0 is a tip.  Notches are placed at the same offsets as the
    wheel's gadgets, which are symmetric about each side's midpoint.
    """
    if n < 5 or n % 2 == 0:
        raise ValueError("n must be odd and >= 5")
    order = 32 * n
    slots = b + 4
    tip_turn = PI - PI / n
    anti_turn = -PiRational(1, 2 * n)
    steps: list[list] = []
    tips, anticorners, side_starts = [], [], []
    for _chain in range(4):
        for k in range(n - 1):
            side_starts.append(len(steps))
            if k == 0:
                tips.append(len(steps))
            else:
                anticorners.append(len(steps))
            part = _adorned_side("x" * slots, params, order, lambda _: notch_path(order))
            part[-1][1] = tip_turn if k == n - 2 else anti_turn
            steps.extend(part)
    meta = {"n": n, "b": b, "tips": tips, "anticorners": anticorners, "side_starts": side_starts,
            "margin": str(params.margin), "gap": str(params.gap)}
    poly = TurtlePolygon("shuriken", [tuple(st) for st in steps], order, PiRational(0), meta)
    if check:
        _check_simple(poly)
    return poly


def shuriken_center(poly: TurtlePolygon) -> CycloNum:
    v = poly.vertices
    total = CycloNum.zero(poly.order)
    for t in poly.meta["tips"]:
        total = total + v[t]
    return total * Fraction(1, 4)


@dataclass
class PrototileSet:
    wheel: TurtlePolygon
    shuriken: TurtlePolygon
    staple: TurtlePolygon
    meta: WheelMeta
    tileset: WangTileSet

    def as_list(self) -> list[TurtlePolygon]:
        return [self.wheel, self.shuriken, self.staple]


def build_prototiles(s: WangTileSet, params: SideParams = SideParams(), check: bool = True) -> PrototileSet:
    """Pad a signed set and build all three prototiles in one field."""
    padded = pad_tileset(s)
    b = bits_for(padded)
    wheel, meta = build_wheel(padded, params, b, check)
    shuriken = build_shuriken(meta.n, b, params, check)
    staple = build_staple(meta.order)
    return PrototileSet(wheel, shuriken, staple, meta, padded)


# --------------------------------------------------------------------------
# Angle algebra
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AngleInventory:
    convex: Counter
    reflex: Counter  # keyed by defect 2pi - interior

    def classes(self) -> tuple[frozenset, frozenset]:
        return frozenset(self.convex), frozenset(self.reflex)


def angle_inventory(p: TurtlePolygon) -> AngleInventory:
    convex: Counter = Counter()
    reflex: Counter = Counter()
    for j, a in enumerate(p.interior_angles):
        if a == PI:
            raise FlatVertex(f"vertex {j} of {p.name} is flat")
        if a < PI:
            convex[a] += 1
        else:
            reflex[TWO_PI - a] += 1
    return AngleInventory(convex, reflex)


def expected_inventory(name: str, n: int) -> tuple[frozenset, frozenset]:
    """Angle classes (convex, reflex defects) each prototile must use."""
    corner = PI - PiRational(1, 2 * n)
    if name == "wheel":
        return frozenset({ALPHA, BETA, corner}), frozenset({ALPHA, BETA})
    if name == "shuriken":
        return frozenset({ALPHA, PI / n}), frozenset({BETA, BETA * 2, corner})
    if name == "staple":
        return frozenset({BETA}), frozenset({ALPHA * 2})
    raise KeyError(name)


def is_clean(a: PiRational, n: int) -> bool:
    """Whether a is an integer multiple of pi/(2n)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (a.frac * 2 * n).denominator == 1


def sum_range(k: int, angles: Sequence[PiRational] = (ALPHA, BETA)) -> tuple[PiRational, PiRational]:
    """Smallest and largest sum of k angles drawn from ``angles``."""
    lo, hi = min(angles), max(angles)
    return lo * k, hi * k


def fill_options(
    target: PiRational,
    inventory: Mapping[str, PiRational],
    allow_flat: bool = False,
) -> set[frozenset]:
    """Every multiset of inventory angles (unbounded multiplicity) summing to target.

    Each option is a frozenset of ``(label, count)`` pairs.
    """
    items = sorted(inventory.items(), key=lambda kv: (kv[1].frac, kv[0]))
    if allow_flat:
        items.append(("flat", PI))
    for label, a in items:
        if a.frac <= 0:
            raise ValueError(f"angle {label} must be positive")
    goal = target.frac
    found: set[frozenset] = set()
    counts: list[tuple[str, int]] = []

    def rec(i: int, left: Fraction):
        if left == 0:
            found.add(frozenset(counts))
            return
        if i == len(items):
            return
        label, a = items[i]
        q = a.frac
        k = 0
        while k * q <= left:
            if k:
                counts.append((label, k))
            rec(i + 1, left - k * q)
            if k:
                counts.pop()
            k += 1

    rec(0, goal)
    return found


def table_inventory(n: int) -> dict[str, PiRational]:
    """All interior angles the three prototiles use, labeled."""
    corner = PI - PiRational(1, 2 * n)
    return {
        "alpha": ALPHA,
        "beta": BETA,
        "wheel_corner": corner,
        "tip": PI / n,
        "wheel_reflex_alpha": TWO_PI - ALPHA,
        "wheel_reflex_beta": TWO_PI - BETA,
        "notch_reflex_2beta": TWO_PI - BETA * 2,
        "anticorner": TWO_PI - corner,
        "staple_reflex": TWO_PI - ALPHA * 2,
    }

"""Finite glued tile complexes ("carpets"): topology, layout and validity.

A gluing lists, for each placed tile, which prototile it copies and whether
it is mirrored.  Vertex and edge indices always refer to the effective
polygon (``prototile.mirror()`` when the tile is reflected).

``edge_overlaps[t][e]`` is the ordered list of what lies across edge ``e``
of tile ``t``, walking in the tile's own direction: each entry is either
``(t2, e2)`` (a positive-length overlap with an oppositely directed edge)
or ``None`` (a stretch of carpet boundary).  Consecutive entries meet at a
breakpoint strictly inside the edge, where tile ``t`` contributes a flat
angle.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .exactnum import PI, TWO_PI, CycloNum, PiRational, compare_real, zeta_exponent
from .geometry import PolygonIndex, interiors_overlap, on_segment, orient, sign_dot
from .prototiles import TurtlePolygon

Entry = Optional[tuple[int, int]]


class CarpetError(ValueError):
    def __init__(self, code: str, message: str, **detail):
        super().__init__(message)
        self.code = code
        self.detail = detail

    def reason(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        out.update(self.detail)
        return out


class TopologyError(CarpetError):
    pass


class Inconsistent(CarpetError):
    def __init__(self, message: str, **detail):
        super().__init__("inconsistent_layout", message, **detail)


class Underdetermined(CarpetError):
    def __init__(self, message: str, **detail):
        super().__init__("underdetermined", message, **detail)


@dataclass
class CarpetGluing:
    prototiles: list[TurtlePolygon]
    tiles: list[tuple[int, bool]]
    vertex_classes: list[list[tuple[int, int]]]
    edge_overlaps: list[list[list[Entry]]]
    anchor: int = 0

    def __post_init__(self):
        orders = {p.order for p in self.prototiles}
        if len(orders) > 1:
            m = math.lcm(*orders)
            self.prototiles = [p.promote(m) for p in self.prototiles]
        self.tiles = [(int(p), bool(r)) for p, r in self.tiles]
        self.vertex_classes = [[(int(t), int(v)) for t, v in c] for c in self.vertex_classes]
        self.edge_overlaps = [
            [[None if x is None else (int(x[0]), int(x[1])) for x in seq] for seq in edges]
            for edges in self.edge_overlaps
        ]

    @property
    def order(self) -> int:
        return self.prototiles[0].order

    @cached_property
    def _mirrors(self) -> dict[int, TurtlePolygon]:
        return {}

    def poly(self, t: int) -> TurtlePolygon:
        p, refl = self.tiles[t]
        if not refl:
            return self.prototiles[p]
        if p not in self._mirrors:
            self._mirrors[p] = self.prototiles[p].mirror()
        return self._mirrors[p]

    @cached_property
    def class_of(self) -> dict[tuple[int, int], int]:
        out = {}
        for ci, members in enumerate(self.vertex_classes):
            for m in members:
                if m in out:
                    raise TopologyError("bad_partition", f"vertex {m} in two classes", vertex=list(m))
                out[m] = ci
        return out


# --------------------------------------------------------------------------
# Combinatorial structure
# --------------------------------------------------------------------------


@dataclass
class Topology:
    """Derived incidence data shared by the checks."""

    wedges: dict[int, list[tuple]] = field(default_factory=dict)  # class -> wedges
    wedge_angle: dict[tuple, PiRational] = field(default_factory=dict)
    succ: dict[tuple, Optional[tuple]] = field(default_factory=dict)
    boundary_classes: set[int] = field(default_factory=set)
    breakpoints: dict[tuple[int, int], list[int]] = field(default_factory=dict)
    in_piece: dict[tuple, tuple] = field(default_factory=dict)  # wedge -> piece arriving at it
    out_piece: dict[tuple, tuple] = field(default_factory=dict)  # wedge -> piece leaving it
    piece_ends: dict[tuple, tuple[int, int]] = field(default_factory=dict)  # piece -> (start, end) class
    partner: dict[tuple, Optional[tuple]] = field(default_factory=dict)
    n_pieces_boundary: int = 0
    n_pieces_glued: int = 0

    def boundary_ends(self, c: int) -> tuple[tuple, tuple]:
        """(incoming, outgoing) boundary pieces at a boundary vertex class."""
        ws = self.wedges[c]
        has_pred = {self.succ[w] for w in ws if self.succ[w] is not None}
        first = next(w for w in ws if w not in has_pred)
        last = first
        while self.succ[last] is not None:
            last = self.succ[last]
        return self.in_piece[first], self.out_piece[last]

    def is_interior(self, c: int) -> bool:
        return c not in self.boundary_classes


def _partner_index(g: CarpetGluing, t: int, e: int, t2: int, e2: int) -> int:
    try:
        seq = g.edge_overlaps[t2][e2]
    except IndexError:
        raise TopologyError("bad_overlap", f"edge ({t2},{e2}) does not exist", edge=[t, e])
    hits = [k for k, x in enumerate(seq) if x == (t, e)]
    if len(hits) != 1:
        raise TopologyError(
            "asymmetric_overlap",
            f"edge ({t},{e}) overlaps ({t2},{e2}) but not conversely",
            edge=[t, e],
            other=[t2, e2],
        )
    return hits[0]


def analyze_topology(g: CarpetGluing) -> Topology:
    """Check that the gluing describes a topological disk; raise TopologyError if not."""
    nt = len(g.tiles)
    if nt == 0:
        raise TopologyError("empty", "carpet has no tiles")
    if not 0 <= g.anchor < nt:
        raise TopologyError("bad_anchor", "anchor out of range")
    if len(g.edge_overlaps) != nt:
        raise TopologyError("bad_overlap", "edge_overlaps must list every tile")
    for p, _ in g.tiles:
        if not 0 <= p < len(g.prototiles):
            raise TopologyError("bad_tile", f"prototile index {p} out of range")
    cls = g.class_of
    sizes = [len(g.poly(t)) for t in range(nt)]
    expected = {(t, v) for t in range(nt) for v in range(sizes[t])}
    if set(cls) != expected:
        missing = sorted(expected - set(cls))
        raise TopologyError("bad_partition", "vertex classes must cover every tile vertex exactly",
                            vertex=list(missing[0]) if missing else None)
    if any(not c for c in g.vertex_classes):
        raise TopologyError("bad_partition", "empty vertex class")

    topo = Topology()
    # breakpoint classes
    for t in range(nt):
        if len(g.edge_overlaps[t]) != sizes[t]:
            raise TopologyError("bad_overlap", f"tile {t} needs one overlap list per edge", tile=t)
        for e, seq in enumerate(g.edge_overlaps[t]):
            if not seq:
                raise TopologyError("bad_overlap", f"edge ({t},{e}) has no entries", edge=[t, e])
            bps = []
            for k in range(len(seq) - 1):
                prev, nxt = seq[k], seq[k + 1]
                if prev is None and nxt is None:
                    raise TopologyError("bad_overlap", "adjacent boundary stretches", edge=[t, e])
                cands = set()
                if prev is not None:
                    cands.add(cls[(prev[0], prev[1])])  # start vertex of the reversed edge
                if nxt is not None:
                    n2 = sizes[nxt[0]]
                    cands.add(cls[(nxt[0], (nxt[1] + 1) % n2)])
                if len(cands) != 1:
                    raise TopologyError("breakpoint_mismatch",
                                        f"neighbours across edge ({t},{e}) disagree at breakpoint {k}",
                                        edge=[t, e])
                bps.append(cands.pop())
            topo.breakpoints[(t, e)] = bps

    def piece_start(t, e, k):
        return cls[(t, e)] if k == 0 else topo.breakpoints[(t, e)][k - 1]

    def piece_end(t, e, k):
        if k == len(g.edge_overlaps[t][e]) - 1:
            return cls[(t, (e + 1) % sizes[t])]
        return topo.breakpoints[(t, e)][k]

    # wedges and their in/out pieces
    in_piece_of: dict[tuple, tuple] = {}
    out_piece: dict[tuple, tuple] = {}
    for t in range(nt):
        poly = g.poly(t)
        angles = poly.interior_angles
        n = sizes[t]
        for j in range(n):
            w = ("c", t, j)
            c = cls[(t, j)]
            topo.wedges.setdefault(c, []).append(w)
            topo.wedge_angle[w] = angles[j]
            prev_e = (j - 1) % n
            in_piece_of[(t, prev_e, len(g.edge_overlaps[t][prev_e]) - 1)] = w
            out_piece[w] = (t, j, 0)
        for e in range(n):
            for k, c in enumerate(topo.breakpoints[(t, e)]):
                w = ("f", t, e, k)
                topo.wedges.setdefault(c, []).append(w)
                topo.wedge_angle[w] = PI
                in_piece_of[(t, e, k)] = w
                out_piece[w] = (t, e, k + 1)

    # gluing pieces
    partner: dict[tuple, Optional[tuple]] = {}
    for t in range(nt):
        for e, seq in enumerate(g.edge_overlaps[t]):
            for k, x in enumerate(seq):
                if x is None:
                    partner[(t, e, k)] = None
                    topo.n_pieces_boundary += 1
                    continue
                if x[0] == t:
                    raise TopologyError("self_glue", f"tile {t} glued to itself", edge=[t, e])
                k2 = _partner_index(g, t, e, x[0], x[1])
                q = (x[0], x[1], k2)
                if piece_start(t, e, k) != piece_end(*q) or piece_end(t, e, k) != piece_start(*q):
                    raise TopologyError("glue_endpoints",
                                        f"overlap of ({t},{e}) and {x} has mismatched endpoints",
                                        edge=[t, e], other=list(x))
                partner[(t, e, k)] = q
                topo.n_pieces_glued += 1

    topo.partner = partner
    topo.out_piece = out_piece
    topo.in_piece = {w: p for p, w in in_piece_of.items()}
    topo.piece_ends = {p: (piece_start(*p), piece_end(*p)) for p in partner}

    # links at every vertex class
    pred: dict[tuple, tuple] = {}
    for w, p in out_piece.items():
        q = partner[p]
        s = None if q is None else in_piece_of[q]
        topo.succ[w] = s
        if s is not None:
            pred[s] = w
    for c, ws in topo.wedges.items():
        starts = [w for w in ws if w not in pred]
        if len(starts) > 1:
            raise TopologyError("pinch", f"vertex class {c} is a pinch point", vertex_class=c)
        if starts:
            topo.boundary_classes.add(c)
            w, seen = starts[0], 0
            while w is not None:
                seen += 1
                w = topo.succ[w]
            if seen != len(ws):
                raise TopologyError("pinch", f"vertex class {c} has a detached fan", vertex_class=c)
        else:
            w, seen = ws[0], 0
            while True:
                seen += 1
                w = topo.succ[w]
                if w == ws[0]:
                    break
            if seen != len(ws):
                raise TopologyError("pinch", f"vertex class {c} has several fans", vertex_class=c)

    # boundary cycles
    boundary_pieces = [p for p, q in partner.items() if q is None]
    if not boundary_pieces:
        raise TopologyError("closed_surface", "carpet has no boundary")
    seen_pieces: set = set()
    cycles = 0
    for p0 in boundary_pieces:
        if p0 in seen_pieces:
            continue
        cycles += 1
        p = p0
        while p not in seen_pieces:
            seen_pieces.add(p)
            w = in_piece_of[p]
            while topo.succ[w] is not None:
                w = topo.succ[w]
            p = out_piece[w]
    if cycles != 1:
        raise TopologyError("boundary_cycles", f"carpet boundary has {cycles} components", cycles=cycles)

    # connectivity through glued pieces
    parent = list(range(nt))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in partner.items():
        if q is not None:
            parent[find(p[0])] = find(q[0])
    if len({find(t) for t in range(nt)}) != 1:
        raise TopologyError("disconnected", "carpet is not connected")

    euler = len(g.vertex_classes) - (topo.n_pieces_boundary + topo.n_pieces_glued // 2) + nt
    if euler != 1:
        raise TopologyError("euler", f"Euler characteristic {euler} != 1", euler=euler)
    return topo


def check_disk_topology(g: CarpetGluing) -> bool:
    try:
        analyze_topology(g)
    except TopologyError:
        return False
    return True


def is_seamless(g: CarpetGluing) -> bool:
    """Tiles sharing a vertex class are adjacent; the carpet is seamless iff this graph is connected."""
    nt = len(g.tiles)
    parent = list(range(nt))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for members in g.vertex_classes:
        ts = {t for t, _ in members}
        first = next(iter(ts))
        for t in ts:
            parent[find(t)] = find(first)
    return len({find(t) for t in range(nt)}) == 1


# --------------------------------------------------------------------------
# Layout
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    rotation: PiRational
    translation: CycloNum
    reflected: bool = False


@dataclass
class Layout:
    placements: list[Placement]
    points: dict[int, CycloNum]  # vertex class -> point
    order: int

    def world(self, g: CarpetGluing, t: int) -> list[CycloNum]:
        pl = self.placements[t]
        k = zeta_exponent(pl.rotation, self.order)
        return [pl.translation + v.times_zeta(k) for v in g.poly(t).vertices]


def _rotation_from_points(a0: CycloNum, a1: CycloNum, b0: CycloNum, b1: CycloNum, order: int) -> Optional[PiRational]:
    """The rotation taking segment a0a1 to b0b1, if it is a power of zeta."""
    u = (b1 - b0) / (a1 - a0)
    z, _ = u.fapprox()
    k = round(math.atan2(z.imag, z.real) / (2 * math.pi) * order) % order
    if u != CycloNum.zeta(order, k):
        return None
    return PiRational(Fraction(2 * k, order)).normalized()


def layout_anchored(g: CarpetGluing) -> Layout:
    """Place every tile exactly, starting from the anchor (centroid at the origin)."""
    order = g.order
    nt = len(g.tiles)
    cls = g.class_of
    anchor_poly = g.poly(g.anchor)
    placements: dict[int, Placement] = {
        g.anchor: Placement(PiRational(0), -anchor_poly.centroid(), g.tiles[g.anchor][1])
    }
    points: dict[int, CycloNum] = {}
    owner: dict[int, tuple[int, int]] = {}

    def commit(t: int):
        pl = placements[t]
        k = zeta_exponent(pl.rotation, order)
        for j, v in enumerate(g.poly(t).vertices):
            p = pl.translation + v.times_zeta(k)
            c = cls[(t, j)]
            if c in points:
                if points[c] != p:
                    o = owner[c]
                    raise Inconsistent(
                        f"vertex class {c} placed at two different points",
                        vertex_class=c,
                        tiles=[o[0], t],
                    )
            else:
                points[c] = p
                owner[c] = (t, j)

    commit(g.anchor)
    tile_classes = [[cls[(t, j)] for j in range(len(g.poly(t)))] for t in range(nt)]
    progress = True
    while progress and len(placements) < nt:
        progress = False
        for t in range(nt):
            if t in placements:
                continue
            poly = g.poly(t)
            known = [j for j, c in enumerate(tile_classes[t]) if c in points]
            if not known:
                continue
            rot = None
            for e, seq in enumerate(g.edge_overlaps[t]):
                for x in seq:
                    if x is not None and x[0] in placements:
                        t1, e1 = x
                        rot = (placements[t1].rotation + g.poly(t1).headings[e1] + PI - poly.headings[e]).normalized()
                        break
                if rot is not None:
                    break
            if rot is None and len(known) >= 2:
                j0, j1 = known[0], known[1]
                v = poly.vertices
                rot = _rotation_from_points(v[j0], v[j1], points[tile_classes[t][j0]],
                                            points[tile_classes[t][j1]], order)
                if rot is None:
                    raise Inconsistent(f"tile {t} cannot be rotated onto its known corners", tile=t)
            if rot is None:
                continue
            j = known[0]
            k = zeta_exponent(rot, order)
            trans = points[tile_classes[t][j]] - poly.vertices[j].times_zeta(k)
            placements[t] = Placement(rot, trans, g.tiles[t][1])
            commit(t)
            progress = True
    if len(placements) < nt:
        missing = min(set(range(nt)) - set(placements))
        raise Underdetermined(f"placement of tile {missing} is not forced", tile=missing)
    return Layout([placements[t] for t in range(nt)], points, order)


def _check_edges(g: CarpetGluing, L: Layout, topo: Topology) -> Optional[dict]:
    """Overlaps must be collinear, opposite, ordered and within both edges."""
    worlds = {t: L.world(g, t) for t in range(len(g.tiles))}
    for t, edges in enumerate(g.edge_overlaps):
        W = worlds[t]
        n = len(W)
        heads = g.poly(t).headings
        for e, seq in enumerate(edges):
            P, Q = W[e], W[(e + 1) % n]
            bps = [L.points[c] for c in topo.breakpoints[(t, e)]]
            marks = [P] + bps + [Q]
            for b in bps:
                if not on_segment(b, P, Q, strict=True):
                    return {"code": "edge_path", "message": f"breakpoint off edge ({t},{e})", "edge": [t, e]}
            for a, b in zip(marks, marks[1:]):
                if sign_dot(P, Q, a, b) <= 0:
                    return {"code": "edge_path", "message": f"breakpoints out of order on edge ({t},{e})",
                            "edge": [t, e]}
            for k, x in enumerate(seq):
                if x is None:
                    continue
                t2, e2 = x
                h1 = (L.placements[t].rotation + heads[e]).normalized()
                h2 = (L.placements[t2].rotation + g.poly(t2).headings[e2]).normalized()
                if (h1 - h2).normalized() != PI:
                    return {"code": "edge_path", "message": f"edges ({t},{e}) and {x} are not antiparallel",
                            "edge": [t, e], "other": [t2, e2]}
                W2 = worlds[t2]
                P2, Q2 = W2[e2], W2[(e2 + 1) % len(W2)]
                a, b = marks[k], marks[k + 1]
                if not (on_segment(a, Q2, P2) and on_segment(b, Q2, P2) and orient(P, Q, P2) == 0):
                    return {"code": "edge_length", "message": f"overlap of ({t},{e}) with {x} exceeds an edge",
                            "edge": [t, e], "other": [t2, e2]}
    return None


@dataclass
class Verdict:
    status: str
    reason: Optional[dict] = None
    layout: Optional[Layout] = field(default=None, repr=False)
    topology: Optional[Topology] = field(default=None, repr=False)

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    def to_json(self) -> dict:
        return {"status": self.status, "reason": self.reason}


def _vertex_sum(topo: Topology, c: int) -> PiRational:
    total = PiRational(0)
    for w in topo.wedges[c]:
        total = total + topo.wedge_angle[w]
    return total


def validate(g: CarpetGluing) -> Verdict:
    """Topology, seamlessness, vertex sums, then exact layout and edge paths."""
    try:
        topo = analyze_topology(g)
    except CarpetError as exc:
        return Verdict("invalid", exc.reason())
    if not is_seamless(g):
        return Verdict("invalid", {"code": "not_seamless", "message": "tile incidence graph is disconnected"},
                       topology=topo)
    for c in sorted(topo.wedges):
        s = _vertex_sum(topo, c)
        if topo.is_interior(c) and s != TWO_PI:
            return Verdict("invalid", {"code": "vertex_sum", "message": f"angles at class {c} sum to {s}",
                                       "vertex_class": c, "sum": str(s)}, topology=topo)
    try:
        L = layout_anchored(g)
    except CarpetError as exc:
        return Verdict("invalid", exc.reason(), topology=topo)
    bad = _check_edges(g, L, topo)
    if bad:
        return Verdict("invalid", bad, layout=L, topology=topo)
    return Verdict("valid", None, layout=L, topology=topo)


def _fan_is_flat(topo: Topology, c: int) -> bool:
    return _vertex_sum(topo, c) == PI


def is_neat_within(
    g: CarpetGluing,
    L: Layout,
    r: CycloNum | int | Fraction | None = None,
    *,
    r_squared: CycloNum | int | Fraction | None = None,
    topo: Optional[Topology] = None,
) -> bool:
    """Every vertex class strictly within distance r of the origin is neat."""
    if (r is None) == (r_squared is None):
        raise ValueError("give exactly one of r and r_squared")
    if r_squared is None:
        if isinstance(r, CycloNum):
            r_squared = r * r
        else:
            r_squared = Fraction(r) ** 2
    if topo is None:
        topo = analyze_topology(g)
    for c, p in L.points.items():
        if compare_real(p.norm_squared(), r_squared) >= 0:
            continue
        s = _vertex_sum(topo, c)
        if topo.is_interior(c):
            if s != TWO_PI:
                return False
        elif s != PI:  # the boundary fan is contiguous by the topology check
            return False
    return True


def check_patch_nonoverlap(g: CarpetGluing, L: Layout) -> bool:
    """True iff no two tiles share interior points."""
    idx = [PolygonIndex(L.world(g, t)) for t in range(len(g.tiles))]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if interiors_overlap(idx[a], idx[b]):
                return False
    return True


def unused_classes(g: CarpetGluing) -> list[int]:
    return [c for c, m in enumerate(g.vertex_classes) if not m]


def vertex_sums(g: CarpetGluing, topo: Optional[Topology] = None) -> dict[int, tuple[PiRational, bool]]:
    """Class -> (angle sum, is interior)."""
    topo = topo or analyze_topology(g)
    return {c: (_vertex_sum(topo, c), topo.is_interior(c)) for c in topo.wedges}


# --------------------------------------------------------------------------
# Deriving a gluing from exact placements
# --------------------------------------------------------------------------


def _world_headings(poly: TurtlePolygon, rot: PiRational) -> list[PiRational]:
    return [(rot + h).normalized() for h in poly.headings]


def gluing_from_placements(
    prototiles: Sequence[TurtlePolygon],
    tiles: Sequence[tuple[int, bool]],
    placements: Sequence[Placement],
    anchor: int = 0,
) -> CarpetGluing:
    """Read off vertex classes and edge overlaps from exactly placed tiles.

    Coincident corners share a class; antiparallel collinear edges with a
    positive-length common stretch overlap.
    """
    import numpy as np

    from .geometry import edge_boxes

    g = CarpetGluing(list(prototiles), list(tiles), [], [[[None]] * len(prototiles[p]) for p, _ in tiles], anchor)
    order = g.order
    L = Layout(list(placements), {}, order)
    worlds = [L.world(g, t) for t in range(len(tiles))]
    class_index: dict[tuple, int] = {}
    classes: list[list[tuple[int, int]]] = []
    for t, W in enumerate(worlds):
        for j, p in enumerate(W):
            c = class_index.setdefault(p.key(), len(classes))
            if c == len(classes):
                classes.append([])
            classes[c].append((t, j))

    by_heading: dict[PiRational, list[tuple[int, int]]] = defaultdict(list)
    heads = []
    boxes = []
    for t, W in enumerate(worlds):
        hs = _world_headings(g.poly(t), placements[t].rotation)
        heads.append(hs)
        boxes.append(edge_boxes(W))
        for e, h in enumerate(hs):
            by_heading[h].append((t, e))

    found: dict[tuple[int, int], list[tuple]] = defaultdict(list)
    for h, group in by_heading.items():
        opp = (h + PI).normalized()
        if opp not in by_heading or h.frac >= 1:
            continue  # each antiparallel pair is handled once, from the heading in [0, pi)
        others = by_heading[opp]
        ba = np.array([boxes[t][e] for t, e in group])
        bb = np.array([boxes[t][e] for t, e in others])
        ov = ((ba[:, None, 0] <= bb[None, :, 1]) & (bb[None, :, 0] <= ba[:, None, 1])
              & (ba[:, None, 2] <= bb[None, :, 3]) & (bb[None, :, 2] <= ba[:, None, 3]))
        for i, j in np.argwhere(ov):
            t, e = group[i]
            t2, e2 = others[j]
            if t == t2:
                continue
            W, W2 = worlds[t], worlds[t2]
            P, Q = W[e], W[(e + 1) % len(W)]
            P2, Q2 = W2[e2], W2[(e2 + 1) % len(W2)]
            if orient(P, Q, P2) != 0:
                continue
            if sign_dot(P, Q, Q2, Q) <= 0 or sign_dot(P, Q, P, P2) <= 0:
                continue
            start = Q2 if sign_dot(P, Q, P, Q2) > 0 else P
            end = P2 if sign_dot(P, Q, P2, Q) > 0 else Q
            found[(t, e)].append((start, end, (t2, e2)))
            found[(t2, e2)].append((end, start, (t, e)))

    from functools import cmp_to_key

    overlaps: list[list[list[Entry]]] = []
    for t, W in enumerate(worlds):
        n = len(W)
        per_tile = []
        for e in range(n):
            P, Q = W[e], W[(e + 1) % n]
            items = sorted(found.get((t, e), []),
                           key=cmp_to_key(lambda a, b: sign_dot(P, Q, b[0], a[0])))
            seq: list[Entry] = []
            cursor = P
            for s_pt, e_pt, other in items:
                if s_pt != cursor:
                    seq.append(None)
                seq.append(other)
                cursor = e_pt
            if cursor != Q:
                seq.append(None)
            per_tile.append(seq)
        overlaps.append(per_tile)
    return CarpetGluing(list(prototiles), list(tiles), classes, overlaps, anchor)

"""Bounded depth-first growth of seamless carpets, looking for a neat one."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .carpet import (
    CarpetError,
    CarpetGluing,
    Layout,
    Placement,
    Topology,
    analyze_topology,
    gluing_from_placements,
    is_neat_within,
    is_seamless,
    validate,
    vertex_sums,
)
from .exactnum import PI, TWO_PI, CycloNum, PiRational, compare_real, zeta_exponent
from .prototiles import TurtlePolygon, fill_options

FOUND = "found"
NONE_WITHIN = "none_within"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SearchResult:
    status: str
    nodes: int
    witness: Optional[CarpetGluing] = None
    layout: Optional[Layout] = field(default=None, repr=False)
    max_tiles: int = 0
    tile_bound: float = math.inf  # crude N(r) estimate, metadata only

    def to_json(self) -> dict:
        from .jsonio import gluing_to_json

        out = {"status": self.status, "nodesExplored": self.nodes, "maxTiles": self.max_tiles,
               "tileBound": None if math.isinf(self.tile_bound) else self.tile_bound}
        if self.witness is not None:
            out["witness"] = gluing_to_json(self.witness)
        return out


class _Budget(Exception):
    pass


def tile_count_bound(prototiles: Sequence[TurtlePolygon], r: float) -> float:
    """pi (r + 2 rho)^2 / A_min with rho the largest circumradius about the centroid."""
    rho = 0.0
    amin = math.inf
    for p in prototiles:
        c = complex(p.centroid())
        rho = max(rho, max(abs(complex(v) - c) for v in p.vertices))
        amin = min(amin, float(p.area()))
    return math.pi * (r + 2 * rho) ** 2 / amin


class _Searcher:
    def __init__(self, prototiles, max_tiles, r_squared, budget, allow_reflections, prune):
        self.protos = list(prototiles)
        self.order = math.lcm(*(p.order for p in self.protos))
        self.protos = [p.promote(self.order) for p in self.protos]
        self.variants: list[tuple[int, bool, TurtlePolygon]] = []
        for i, p in enumerate(self.protos):
            self.variants.append((i, False, p))
            if allow_reflections:
                self.variants.append((i, True, p.mirror()))
        self.max_tiles = max_tiles
        self.r2 = r_squared
        self.budget = budget
        self.prune = prune
        self.nodes = 0
        self.seen: set = set()
        inv = {}
        for i, p in enumerate(self.protos):
            for j, a in enumerate(sorted(set(p.interior_angles))):
                inv[f"{i}:{a}"] = a
        self.inventory = inv
        self._fill_cache: dict[PiRational, bool] = {}

    def fillable(self, gap: PiRational) -> bool:
        if gap.frac <= 0:
            return gap.frac == 0
        if gap >= TWO_PI:
            return False
        if gap not in self._fill_cache:
            self._fill_cache[gap] = bool(fill_options(gap, self.inventory, allow_flat=True))
        return self._fill_cache[gap]

    def _targets(self, L: Layout, topo: Topology, sums):
        """Non-neat boundary classes within the radius as (gap, class); None if one is hopeless."""
        out = []
        for c, p in L.points.items():
            s, interior = sums[c]
            if interior or s == PI:
                continue
            if compare_real(p.norm_squared(), self.r2) >= 0:
                continue
            gap = TWO_PI - s
            if self.prune:
                ok = self.fillable(gap) or (s < PI and self.fillable(PI - s))
                if not ok:
                    return None
            out.append((gap, c))
        out.sort(key=lambda x: (x[0], x[1]))
        return out

    def _wedge_ok(self, s: PiRational, angle: PiRational) -> bool:
        """Can a wedge of this angle be added at a vertex whose angles sum to s?"""
        if not self.prune:
            return True
        rest = TWO_PI - s - angle
        if rest.frac >= 0 and self.fillable(rest):
            return True
        rest = PI - s - angle
        return rest.frac >= 0 and self.fillable(rest)

    def _children(self, state, g: CarpetGluing, L: Layout, topo: Topology, c: int, s: PiRational):
        order = self.order
        p_in, p_out = topo.boundary_ends(c)
        P = L.points[c]
        t_out, e_out, _ = p_out
        t_in, e_in, _ = p_in
        d_out = (L.placements[t_out].rotation + g.poly(t_out).headings[e_out]).normalized()
        d_in = (L.placements[t_in].rotation + g.poly(t_in).headings[e_in]).normalized()
        q_out = L.points[topo.piece_ends[p_out][1]]
        q_in = L.points[topo.piece_ends[p_in][0]]
        flat_ok = self._wedge_ok(s, PI)
        for proto, refl, poly in self.variants:
            n = len(poly)
            v, h, ang = poly.vertices, poly.headings, poly.interior_angles
            for j in range(n):
                cands = []
                if self._wedge_ok(s, ang[j]):
                    cands.append((d_out + PI - h[j - 1], P, j))  # corner at P along the outgoing boundary
                    cands.append((d_in + PI - h[j], P, j))  # corner at P along the incoming boundary
                if flat_ok:
                    cands.append((d_out + PI - h[j], q_out, j))  # edge through P, corner at the far end
                    cands.append((d_in + PI - h[j], q_in, (j + 1) % n))
                for rot, anchor_pt, vj in cands:
                    rot = rot.normalized()
                    k = zeta_exponent(rot, order)
                    T = anchor_pt - v[vj].times_zeta(k)
                    yield state + ((proto, refl, Placement(rot, T, refl)),)

    def _key(self, state) -> frozenset:
        return frozenset((p, r, pl.rotation, pl.translation.key()) for p, r, pl in state)

    def run_from(self, anchor: int) -> tuple[str, Optional[CarpetGluing], Optional[Layout]]:
        poly = self.protos[anchor]
        start = ((anchor, False, Placement(PiRational(0), -poly.centroid(), False)),)
        return self._dfs(start)

    def _dfs(self, state):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _Budget()
        tiles = [(p, r) for p, r, _ in state]
        placements = [pl for _, _, pl in state]
        g = gluing_from_placements(self.protos, tiles, placements, anchor=0)
        # the placements are exact, so intermediate states only need the combinatorial checks
        try:
            topo = analyze_topology(g)
        except CarpetError:
            return NONE_WITHIN, None, None
        if not is_seamless(g):
            return NONE_WITHIN, None, None
        sums = vertex_sums(g, topo)
        if any(interior and s != TWO_PI for s, interior in sums.values()):
            return NONE_WITHIN, None, None
        L = Layout(placements, {}, self.order)
        for t in range(len(state)):
            for j, p in enumerate(L.world(g, t)):
                L.points.setdefault(g.class_of[(t, j)], p)
        targets = self._targets(L, topo, sums)
        if targets is None:
            return NONE_WITHIN, None, None
        if not targets:
            v = validate(g)
            if v.valid and is_neat_within(g, v.layout, r_squared=self.r2, topo=v.topology):
                return FOUND, g, v.layout
            return NONE_WITHIN, None, None
        if len(state) >= self.max_tiles:
            return NONE_WITHIN, None, None
        _, c = targets[0]
        for child in self._children(state, g, L, topo, c, sums[c][0]):
            key = self._key(child)
            if key in self.seen:
                continue
            self.seen.add(key)
            status, wit, lay = self._dfs(child)
            if status == FOUND:
                return status, wit, lay
        return NONE_WITHIN, None, None


def _r_squared(r, r_squared):
    if (r is None) == (r_squared is None):
        raise ValueError("give exactly one of r and r_squared")
    if r_squared is not None:
        return r_squared
    if isinstance(r, CycloNum):
        return r * r
    return Fraction(r) ** 2


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("THREETILE_THREADS", "1")))
    except ValueError:
        return 1


def grow_neat_carpets(
    prototiles: Sequence[TurtlePolygon],
    max_tiles: int,
    r: CycloNum | int | Fraction | None = None,
    budget: int = 10_000,
    *,
    r_squared: CycloNum | int | Fraction | None = None,
    allow_reflections: bool = True,
    prune: bool = True,
    threads: Optional[int] = None,
) -> SearchResult:
    """Grow carpets from each prototile (as unreflected anchor) up to max_tiles.

    The budget counts search nodes per anchor subtree, so results do not
    depend on the thread count.
    """
    if max_tiles < 1:
        raise ValueError("max_tiles must be positive")
    r2 = _r_squared(r, r_squared)
    r_float = math.sqrt(float(r2))
    bound = tile_count_bound(prototiles, r_float)
    threads = threads or default_threads()

    def one(anchor: int):
        s = _Searcher(prototiles, max_tiles, r2, budget, allow_reflections, prune)
        try:
            status, wit, lay = s.run_from(anchor)
        except _Budget:
            return BUDGET_EXCEEDED, s.nodes, None, None
        return status, s.nodes, wit, lay

    anchors = range(len(prototiles))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(one, anchors))
    else:
        results = []
        for a in anchors:
            results.append(one(a))
            if results[-1][0] == FOUND:
                break
    nodes = sum(res[1] for res in results)
    for status, _, wit, lay in results:
        if status == FOUND:
            return SearchResult(FOUND, nodes, wit, lay, max_tiles, bound)
    if any(res[0] == BUDGET_EXCEEDED for res in results):
        return SearchResult(BUDGET_EXCEEDED, nodes, None, None, max_tiles, bound)
    return SearchResult(NONE_WITHIN, nodes, None, None, max_tiles, bound)

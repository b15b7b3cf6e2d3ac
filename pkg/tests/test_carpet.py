from fractions import Fraction

import pytest

from conftest import SQUARE_ORDER, isosceles, square_grid, triangle_fan
from threetile.carpet import (
    CarpetGluing,
    Placement,
    analyze_topology,
    check_disk_topology,
    check_patch_nonoverlap,
    gluing_from_placements,
    is_neat_within,
    is_seamless,
    layout_anchored,
    validate,
    vertex_sums,
)
from threetile.exactnum import PI, TWO_PI, CycloNum, PiRational, make_point, sin_of
from threetile.prototiles import TurtlePolygon, build_staple

GRID_2 = [(0, 0), (1, 0), (0, 1), (1, 1)]
GRID_3 = [(x, y) for y in range(3) for x in range(3)]
ANNULUS = [(x, y) for y in range(3) for x in range(3) if (x, y) != (1, 1)]


def brick_row(k, anchor=0):
    brick = TurtlePolygon("brick", [(2, PI / 2), (1, PI / 2)] * 2, SQUARE_ORDER)
    pls = [Placement(PiRational(0), make_point(2 * i, 0, SQUARE_ORDER)) for i in range(k)]
    return gluing_from_placements([brick], [(0, False)] * k, pls, anchor=anchor)


def test_seamless():
    assert is_seamless(square_grid([(0, 0), (1, 0)]))
    assert is_seamless(square_grid([(0, 0)]))
    brick = TurtlePolygon("brick", [(2, PI / 2), (1, PI / 2)] * 2, SQUARE_ORDER)
    offset = [Placement(PiRational(0), make_point(0, 0, 4)), Placement(PiRational(0), make_point(1, 1, 4))]
    g = gluing_from_placements([brick], [(0, False)] * 2, offset)
    assert not is_seamless(g)
    assert validate(g).reason["code"] == "not_seamless"


@pytest.mark.parametrize("cells,disk", [(GRID_2, True), (GRID_3, True), (ANNULUS, False), ([(0, 0), (1, 1)], False)])
def test_disk_topology(cells, disk):
    assert check_disk_topology(square_grid(cells)) == disk


def test_topology_diagnostics():
    assert validate(square_grid(ANNULUS)).reason["code"] == "boundary_cycles"
    assert validate(square_grid([(0, 0), (1, 1)])).reason["code"] == "pinch"


def test_gluing_invariants():
    g = square_grid(GRID_3)
    members = [m for c in g.vertex_classes for m in c]
    assert len(members) == len(set(members)) == 9 * 4
    for t, edges in enumerate(g.edge_overlaps):
        for e, seq in enumerate(edges):
            for other in seq:
                if other is not None:
                    assert (t, e) in g.edge_overlaps[other[0]][other[1]]


@pytest.mark.parametrize("cells", [[(0, 0)], GRID_2, GRID_3])
def test_square_blocks_valid(cells):
    g = square_grid(cells)
    v = validate(g)
    assert v.valid, v.reason
    sums = vertex_sums(g, v.topology)
    assert all(s == TWO_PI for s, interior in sums.values() if interior)


def test_single_staple_layout():
    st = build_staple()
    g = gluing_from_placements([st], [(0, False)], [Placement(PiRational(0), -st.centroid())])
    L = layout_anchored(g)
    assert L.placements[0].rotation == PiRational(0)
    assert L.placements[0].translation == -st.centroid()
    assert list(L.world(g, 0)) == [v - st.centroid() for v in st.vertices]


def test_triangle_fan():
    v = validate(triangle_fan(PI * Fraction(2, 3), 12))
    assert v.valid
    bad = validate(triangle_fan(PiRational(119, 300), 1200))
    assert not bad.valid
    assert bad.reason["code"] == "vertex_sum"


def test_inconsistent_layout():
    # apex 120 degrees, but the two legs differ so neighbours disagree on shared vertices
    a0, a1, a2 = PI * Fraction(2, 3), PI / 4, PI / 12
    scalene = TurtlePolygon("scalene", [(sin_of(a2, 24), PI - a1), (sin_of(a0, 24), PI - a2), (sin_of(a1, 24), PI - a0)], 24)
    base = triangle_fan(PI * Fraction(2, 3), 12)
    g = CarpetGluing([scalene], base.tiles, base.vertex_classes, base.edge_overlaps, 0)
    v = validate(g)
    assert v.reason["code"] == "inconsistent_layout"


def test_corrupted_class_is_rejected():
    g = square_grid(GRID_2)
    classes = [[(t, {1: 2, 2: 1}.get(v, v)) if t == 3 else (t, v) for t, v in c] for c in g.vertex_classes]
    v = validate(CarpetGluing(g.prototiles, g.tiles, classes, g.edge_overlaps, 0))
    assert not v.valid


def test_rotated_description_same_verdict():
    for k in range(4):
        sq = TurtlePolygon("square", [(1, PI / 2)] * 4, SQUARE_ORDER, PI / 2 * k)
        g = square_grid(GRID_3)
        g2 = CarpetGluing([sq], g.tiles, g.vertex_classes, g.edge_overlaps, g.anchor)
        assert validate(g2).status == validate(g).status == "valid"
    fan = triangle_fan(PI * Fraction(2, 3), 12)
    tri = isosceles(PI * Fraction(2, 3), 12)
    turned = TurtlePolygon(tri.name, tri.instructions, tri.order, PiRational(1, 6))
    assert validate(CarpetGluing([turned], fan.tiles, fan.vertex_classes, fan.edge_overlaps, 0)).valid


def test_layout_independent_of_tile_order():
    cells = GRID_3
    g = square_grid(cells)
    perm = [4, 0, 8, 2, 6, 1, 3, 5, 7]  # keep the centre tile first as anchor
    h = square_grid([cells[i] for i in perm])
    g.anchor, h.anchor = 4, 0
    lg, lh = validate(g).layout, validate(h).layout
    for new, old in enumerate(perm):
        assert lh.world(h, new) == lg.world(g, old)


def test_neatness():
    g = square_grid(GRID_3)
    g.anchor = 4
    v = validate(g)
    assert is_neat_within(g, v.layout, 0)
    assert is_neat_within(g, v.layout, Fraction(1, 2))
    assert is_neat_within(g, v.layout, Fraction(6, 5))  # the centre tile's corners are interior
    assert not is_neat_within(g, v.layout, 3)
    single = square_grid([(0, 0)])
    assert not is_neat_within(single, validate(single).layout, 1)


def test_brick_row_flat_boundary_is_neat():
    g = brick_row(3, anchor=1)
    v = validate(g)
    assert v.valid
    assert is_neat_within(g, v.layout, 2)
    assert not is_neat_within(g, v.layout, 4)


def test_nonoverlap():
    g = square_grid(GRID_2)
    assert check_patch_nonoverlap(g, validate(g).layout)
    # an open fan of five right-angled wedges winds past a full turn
    exact = isosceles(PI / 3, 12)
    pls = [Placement(PI * Fraction(2 * k, 6), CycloNum.zero(12)) for k in range(5)]
    fan = gluing_from_placements([exact], [(0, False)] * 5, pls)
    v = validate(fan)
    assert v.valid and check_patch_nonoverlap(fan, v.layout)
    wide = CarpetGluing([isosceles(PI / 2, 8)], fan.tiles, fan.vertex_classes, fan.edge_overlaps, 0)
    v = validate(wide)
    assert v.valid
    assert not check_patch_nonoverlap(wide, v.layout)


def test_topology_counts_single_boundary():
    topo = analyze_topology(square_grid(GRID_3))
    boundary = [c for c in topo.wedges if not topo.is_interior(c)]
    assert len(boundary) == 12

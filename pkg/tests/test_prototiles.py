import itertools
from collections import Counter
from fractions import Fraction

import pytest

from threetile.exactnum import PI, TWO_PI, CycloNum, PiRational
from threetile.prototiles import (
    ALPHA,
    BETA,
    FlatVertex,
    LayoutOverflow,
    SideParams,
    TurtlePolygon,
    angle_inventory,
    build_prototiles,
    build_shuriken,
    build_staple,
    build_wheel,
    expected_inventory,
    fill_options,
    is_clean,
    notch_path,
    pad_tileset,
    path_points,
    path_turn,
    sum_range,
    table_inventory,
    tweedle_path,
)
from threetile.wang import WangTileSet, make_signed_free, unsigned_tile

M = 32
FOUR = CycloNum.from_rational(4, M)


def signed(k):
    return make_signed_free(WangTileSet(tuple(unsigned_tile(i, i, i, i) for i in range(k))))


def test_angles_are_fixed():
    assert ALPHA == PiRational(3, 8)
    assert BETA == PiRational(7, 16)


@pytest.mark.parametrize("k,want", [(1, 5), (6, 7), (5, 5), (7, 7), (8, 9)])
def test_pad_tileset(k, want):
    s = signed(k)
    p = pad_tileset(s)
    assert len(p) == want
    assert p.tiles[:k] == s.tiles
    assert all(t == s.tiles[-1] for t in p.tiles[k:])


@pytest.mark.parametrize("bit", [0, 1])
def test_tweedle_displacement(bit):
    path = tweedle_path(bit, M)
    assert len(path) == 7
    pts = path_points(path, M)
    assert pts[-1] == FOUR
    assert path_turn(path) == PiRational(0)
    assert float(path[0][0]) == pytest.approx(1.4018981519618594, abs=1e-12)


def test_tweedles_share_endpoints_and_are_centrally_symmetric():
    p0 = path_points(tweedle_path(0, M), M)
    p1 = path_points(tweedle_path(1, M), M)
    assert p0[0] == p1[0] and p0[-1] == p1[-1]
    # each tweedle maps to itself under the half-turn about its midpoint
    for pts in (p0, p1):
        assert {(FOUR - p).key() for p in pts} == {p.key() for p in pts}
    # and the two kinds are mirror images across the side
    assert {p.conj().key() for p in p0} == {p.key() for p in p1}


def test_notch():
    path = notch_path(M)
    pts = path_points(path, M)
    assert pts[-1] == FOUR
    assert path_turn(path) == PiRational(0)
    # reflection symmetry about the perpendicular bisector
    assert {(FOUR - p.conj()).key() for p in pts} == {p.key() for p in pts}


def _segments(pts):
    return {frozenset((pts[i].key(), pts[i + 1].key())) for i in range(len(pts) - 1)}


@pytest.mark.parametrize("bit", [0, 1])
def test_staple_fills_gap_between_tweedle_and_notch(bit):
    tw = path_points(tweedle_path(bit, M), M)
    # a notch on the facing side runs the opposite way
    no = [FOUR - p for p in path_points(notch_path(M), M)]
    points = {p.key(): p for p in tw + no}
    left = _segments(tw) ^ _segments(no)
    assert len(left) == 5
    degree = Counter(k for seg in left for k in seg)
    assert set(degree.values()) == {2}
    gap = {points[k].key() for k in degree}
    staple = build_staple(M)
    fits = False
    for refl, k in itertools.product((False, True), range(M)):
        base = staple.mirror() if refl else staple
        vs = [v.times_zeta(k) for v in base.vertices]
        for anchor in degree:
            shift = points[anchor] - vs[0]
            if {(v + shift).key() for v in vs} == gap:
                fits = True
    assert fits


def test_staple():
    s = build_staple()
    assert len(s) == 5
    assert s.is_closed() and s.is_simple()
    assert s.turn_sum() == TWO_PI
    inv = angle_inventory(s)
    assert inv.convex == Counter({BETA: 4})
    assert inv.reflex == Counter({ALPHA * 2: 1})
    total = sum((a.frac for a in s.interior_angles), Fraction(0))
    assert total == 3


def test_square_inventory_and_bowtie():
    sq = TurtlePolygon("square", [(1, PI / 2)] * 4, 4)
    assert angle_inventory(sq).convex == Counter({PI / 2: 4})
    bowtie = TurtlePolygon("bowtie", [(1, PI * Fraction(3, 4)), (CycloNum.zeta(8, 1) + CycloNum.zeta(8, 7), PI * Fraction(5, 4)),
                                      (1, PI * Fraction(3, 4)), (CycloNum.zeta(8, 1) + CycloNum.zeta(8, 7), -PI * Fraction(3, 4))], 8)
    assert not bowtie.is_simple()


def test_flat_vertex_rejected():
    flat = TurtlePolygon("flat", [(1, PiRational(0)), (1, PI / 2), (2, PI / 2), (2, PI / 2), (2, PI / 2)], 4)
    with pytest.raises(FlatVertex):
        angle_inventory(flat)


@pytest.mark.parametrize("b", [1, 2])
def test_wheel_n5(b):
    s = pad_tileset(signed(1))
    poly, meta = build_wheel(s, b=b)
    n = 5
    assert len(poly) == 4 * n * (1 + 6 * (b + 4))
    assert poly.turn_sum() == TWO_PI and poly.is_closed() and poly.is_simple()
    assert angle_inventory(poly).classes() == expected_inventory("wheel", n)
    assert meta.n == n and meta.b == b
    for i in range(n):
        assert meta.side_glues[i] == s.tiles[i].north
        assert meta.side_glues[n + i] == s.tiles[i].east
        assert meta.side_glues[2 * n + i] == s.tiles[i].south
        assert meta.side_glues[3 * n + i] == s.tiles[i].west


def test_shuriken_n5():
    sh = build_shuriken(5, 1)
    assert sh.turn_sum() == TWO_PI and sh.is_closed() and sh.is_simple()
    inv = angle_inventory(sh)
    assert inv.classes() == expected_inventory("shuriken", 5)
    assert inv.classes()[1] >= {PI * Fraction(9, 10)}
    # four-fold rotational symmetry about the centre
    from threetile.prototiles import shuriken_center

    c = shuriken_center(sh)
    keys = {(v - c).key() for v in sh.vertices}
    assert {((v - c).times_zeta(sh.order // 4)).key() for v in sh.vertices} == keys


def test_layout_overflow_on_tiny_margins():
    s = pad_tileset(signed(1))
    build_wheel(s, SideParams(0, 0), b=1)  # gadgets may touch the corners and each other
    with pytest.raises(LayoutOverflow):
        build_wheel(s, SideParams(-1, 4), b=1)  # corner gadgets collide
    with pytest.raises(LayoutOverflow):
        build_wheel(s, SideParams(5, -3), b=1)  # gadgets overrun each other
    with pytest.raises(LayoutOverflow):
        build_shuriken(5, 1, SideParams(5, -3))


def test_prototile_set_shared_order():
    p = build_prototiles(signed(2))
    assert p.meta.order == 32 * p.meta.n
    assert {q.order for q in p.as_list()} == {p.meta.order}


def test_mirror_is_involution_and_preserves_angles():
    s = build_staple()
    m = s.mirror()
    assert m.is_closed() and m.is_simple()
    assert Counter(m.interior_angles) == Counter(s.interior_angles)
    assert m.mirror().vertices == s.vertices


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 15])
def test_no_construction_angle_is_clean(n):
    for a in (ALPHA, BETA, ALPHA * 2, BETA * 2, ALPHA + BETA):
        assert not is_clean(a, n)
    assert is_clean(PI - PiRational(1, 2 * n), n)
    assert is_clean(PI / n, n)


def test_sum_ranges_disjoint():
    ranges = [sum_range(k) for k in (1, 2, 3)]
    assert ranges == [(PiRational(3, 8), PiRational(7, 16)), (PiRational(3, 4), PiRational(7, 8)),
                      (PiRational(9, 8), PiRational(21, 16))]
    for (lo1, hi1), (lo2, hi2) in zip(ranges, ranges[1:]):
        assert hi1 < lo2
    for k in (1, 2, 3):
        lo, hi = ranges[k - 1]
        for combo in itertools.product((ALPHA, BETA), repeat=k):
            total = sum(combo, PiRational(0))
            assert lo <= total <= hi


def test_fill_options_basic():
    inv = {"half": PI / 2, "third": PI / 3}
    got = fill_options(TWO_PI, inv)
    assert frozenset({("half", 4)}) in got
    assert frozenset({("third", 6)}) in got
    assert frozenset({("half", 2), ("third", 3)}) in got
    assert fill_options(PiRational(1, 7), inv) == set()
    assert fill_options(PI, {}, allow_flat=True) == {frozenset({("flat", 1)})}


def test_table_inventory_covers_prototiles():
    n = 5
    table = set(table_inventory(n).values())
    for poly in build_prototiles(signed(1)).as_list():
        assert set(poly.interior_angles) <= table

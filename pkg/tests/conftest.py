from fractions import Fraction

import pytest

from threetile.assembler import WangBlock, assemble
from threetile.carpet import Placement, gluing_from_placements, validate
from threetile.exactnum import PI, CycloNum, PiRational, make_point, sin_of
from threetile.prototiles import TurtlePolygon, build_prototiles
from threetile.wang import WangTileSet, make_signed_free, solve_torus, unsigned_tile

SQUARE_ORDER = 4


def square() -> TurtlePolygon:
    return TurtlePolygon("square", [(1, PI / 2)] * 4, SQUARE_ORDER)


def square_grid(cells, proto=None):
    proto = proto or square()
    pts = [Placement(PiRational(0), make_point(Fraction(x), Fraction(y), SQUARE_ORDER)) for x, y in cells]
    return gluing_from_placements([proto], [(0, False)] * len(cells), pts)


def isosceles(apex: PiRational, order: int) -> TurtlePolygon:
    """Unit-legged isosceles triangle with the apex at vertex 0 (the origin)."""
    base = (PI - apex) / 2
    return TurtlePolygon("triangle", [(1, PI - base), (sin_of(apex / 2, order) * 2, PI - base), (1, PI - apex)], order)


def triangle_fan(apex: PiRational, order: int, copies: int = 3):
    """Copies of the triangle rotated about the shared apex by 2pi/copies."""
    from threetile.carpet import CarpetGluing

    exact = isosceles(PI * Fraction(2, copies), 4 * copies)
    pls = [Placement(PI * Fraction(2 * k, copies), CycloNum.zero(4 * copies)) for k in range(copies)]
    g = gluing_from_placements([exact], [(0, False)] * copies, pls)
    # same combinatorics, possibly different apex
    return CarpetGluing([isosceles(apex, order)], g.tiles, g.vertex_classes, g.edge_overlaps, 0)


# two tiles solvable on a 2x2 torus, alternating vertically
TILE_A = unsigned_tile(0, 2, 1, 2)
TILE_B = unsigned_tile(1, 2, 0, 2)


@pytest.fixture(scope="session")
def pair_set():
    return WangTileSet((TILE_A, TILE_B))


@pytest.fixture(scope="session")
def signed_pair(pair_set):
    return make_signed_free(pair_set)


@pytest.fixture(scope="session")
def pair_prototiles(signed_pair):
    return build_prototiles(signed_pair)


@pytest.fixture(scope="session")
def torus_witness(pair_set):
    return solve_torus(pair_set, 2, 2)


@pytest.fixture(scope="session")
def block_assembly(torus_witness, pair_prototiles):
    return assemble(WangBlock(torus_witness.assignment), pair_prototiles)


@pytest.fixture(scope="session")
def block_verdict(block_assembly):
    return validate(block_assembly.gluing)

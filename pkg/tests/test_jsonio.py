import jsonschema
from hypothesis import given
from hypothesis import strategies as st

from conftest import square_grid
from threetile import jsonio
from threetile.exactnum import CycloNum, PiRational
from threetile.prototiles import build_shuriken, build_staple


@given(st.lists(st.fractions(max_denominator=50), min_size=16, max_size=16), st.sampled_from([8, 16, 32]))
def test_cyclo_round_trip(coeffs, order):
    x = CycloNum(order, coeffs[: order // 2])  # phi of a power of two is half the order
    assert jsonio.cyclo_from_json(jsonio.cyclo_to_json(x)) == x


def test_angle_strings():
    assert jsonio.angle_str(PiRational(-3, 8)) == "-3/8 pi"
    assert jsonio.parse_angle("-3/8 pi") == PiRational(-3, 8)
    assert jsonio.rational_str(2) == "2/1"


def test_polygon_round_trip():
    for p in (build_staple(), build_shuriken(5, 1)):
        d = jsonio.polygon_to_json(p)
        jsonschema.validate(d, jsonio.schema("prototile"))
        q = jsonio.polygon_from_json(d)
        assert q.vertices == p.vertices
        assert q.meta == jsonio.polygon_to_json(q)["meta"]


def test_gluing_round_trip():
    g = square_grid([(0, 0), (1, 0), (0, 1)])
    d = jsonio.gluing_to_json(g)
    jsonschema.validate(d, jsonio.schema("carpet"))
    h = jsonio.gluing_from_json(d)
    assert jsonio.gluing_to_json(h) == d


def test_no_floats_in_artifacts():
    d = jsonio.gluing_to_json(square_grid([(0, 0), (1, 0)]))

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(x)
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)

    walk(d)

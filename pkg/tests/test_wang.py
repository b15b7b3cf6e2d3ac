import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threetile.wang import (
    SIGNED,
    BudgetExceeded,
    Glue,
    LengthMismatch,
    TorusTiling,
    ValueTooLarge,
    WangTile,
    WangTileSet,
    bits_for,
    brute_force_torus,
    check_wang_tiling,
    decode_glue,
    encode_glue,
    make_signed_free,
    reflect_word,
    solve_torus,
    unsigned_tile,
    words_match,
)


def tset(*tiles):
    return WangTileSet(tuple(unsigned_tile(*t) for t in tiles))


def test_sign_one_tile_all_same_glue():
    s = make_signed_free(tset((3, 3, 3, 3)))
    (t,) = s.tiles
    assert s.kind == SIGNED
    assert (t.north.sign, t.east.sign, t.south.sign, t.west.sign) == ("+", "+", "-", "-")
    assert t.north.value == t.south.value
    assert t.east.value == t.west.value
    assert t.north.value != t.east.value
    assert s.glue_values() == {0, 1}


def test_signed_namespaces_disjoint():
    s = make_signed_free(tset((0, 1, 2, 0), (1, 1, 0, 2)))
    vert = {g.value for t in s.tiles for g in (t.north, t.south)}
    horiz = {g.value for t in s.tiles for g in (t.east, t.west)}
    assert not vert & horiz


@given(st.lists(st.tuples(*[st.integers(0, 4)] * 4), min_size=1, max_size=5))
def test_sign_glue_count_bound(tiles):
    u = tset(*tiles)
    s = make_signed_free(u)
    assert len(s.glue_values()) <= 2 * len(u.glue_values())


def test_encode_examples():
    assert encode_glue(5, "+", 4) == "00010101"
    assert encode_glue(5, "-", 4) == "10101000"
    assert encode_glue(0, "+", 1) == "00001"
    with pytest.raises(ValueTooLarge):
        encode_glue(16, "+", 4)


def test_words_match_examples():
    assert words_match(encode_glue(5, "+", 4), encode_glue(5, "-", 4))
    assert not words_match(encode_glue(5, "+", 4), encode_glue(5, "+", 4))
    with pytest.raises(LengthMismatch):
        words_match("00001", "000001")


@pytest.mark.parametrize("b", range(1, 13))
def test_codec_round_trip(b):
    values = range(1 << b) if b <= 8 else [0, 1, (1 << b) - 2, (1 << b) - 1, 1 << (b - 1)]
    for v in values:
        for sign in "+-":
            assert decode_glue(encode_glue(v, sign, b)) == (v, sign)


@pytest.mark.parametrize("b", [1, 2, 3, 4, 5])
def test_match_iff_equal_values(b):
    for v, w in itertools.product(range(1 << b), repeat=2):
        assert words_match(encode_glue(v, "+", b), encode_glue(w, "-", b)) == (v == w)


@given(st.text("01", min_size=5, max_size=12), st.text("01", min_size=5, max_size=12))
def test_match_symmetric_under_reversal(w1, w2):
    if len(w1) != len(w2):
        return
    assert words_match(w1, w2) == words_match(w1[::-1], w2[::-1])


def test_reflected_positive_word_starts_01():
    for v in range(16):
        assert reflect_word(encode_glue(v, "+", 4)).startswith("01")


def test_solver_examples():
    self_match = tset((0, 1, 0, 1))
    assert check_wang_tiling(self_match, solve_torus(self_match, 1, 1))
    ns = tset((0, 1, 1, 1))
    for k1, k2 in itertools.product(range(1, 4), repeat=2):
        assert solve_torus(ns, k1, k2) is None
    alternating = tset((0, 2, 1, 2), (1, 2, 0, 2))
    assert solve_torus(alternating, 1, 1) is None
    t = solve_torus(alternating, 1, 2)
    assert t is not None and check_wang_tiling(alternating, t)


def test_solver_deterministic_and_budgeted():
    s = tset((0, 2, 1, 2), (1, 2, 0, 2))
    assert solve_torus(s, 2, 2) == solve_torus(s, 2, 2)
    hard = tset(*[(i % 3, i % 2, (i + 1) % 3, (i + 1) % 2) for i in range(6)])
    with pytest.raises(BudgetExceeded):
        solve_torus(hard, 6, 6, budget=3)


def test_check_rejects_swapped_cell():
    s = tset((0, 2, 1, 2), (1, 2, 0, 2))
    t = solve_torus(s, 2, 2)
    grid = [list(r) for r in t.assignment]
    grid[0][0] = 1 - grid[0][0]
    assert not check_wang_tiling(s, TorusTiling(2, 2, tuple(map(tuple, grid))))


def test_signed_glue_matching():
    assert Glue("+", 3).matches(Glue("-", 3))
    assert not Glue("+", 3).matches(Glue("+", 3))
    assert not Glue("+", 3).matches(Glue("-", 2))
    assert Glue(None, 1).matches(Glue(None, 1))


def test_bits_for():
    assert bits_for(make_signed_free(tset((0, 0, 0, 0)))) == 1
    assert bits_for(make_signed_free(tset((0, 2, 1, 2), (1, 2, 0, 2)))) == 2


def test_tileset_json_round_trip():
    s = make_signed_free(tset((0, 1, 2, 0), (1, 1, 0, 2)))
    assert WangTileSet.from_json(s.to_json()) == s


def test_kind_consistency_enforced():
    with pytest.raises(ValueError):
        WangTileSet((WangTile(Glue("+", 0), Glue(None, 0), Glue("-", 0), Glue("-", 0)),), SIGNED)


ALL_TILES_3 = list(itertools.product(range(3), repeat=4))


def test_signing_preserves_satisfiability_exhaustive_pairs():
    for size in (1, 2):
        for combo in itertools.combinations(ALL_TILES_3, size):
            u = tset(*combo)
            s = make_signed_free(u)
            for k1, k2 in itertools.product((1, 2), repeat=2):
                assert (solve_torus(u, k1, k2) is None) == (solve_torus(s, k1, k2) is None)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.sampled_from(ALL_TILES_3), min_size=1, max_size=3, unique=True),
       st.integers(1, 3), st.integers(1, 3))
def test_signing_and_oracle_agree(tiles, k1, k2):
    u = tset(*tiles)
    s = make_signed_free(u)
    want = brute_force_torus(u, k1, k2)
    for ts in (u, s):
        got = solve_torus(ts, k1, k2)
        assert (got is not None) == want
        if got is not None:
            assert check_wang_tiling(ts, got)

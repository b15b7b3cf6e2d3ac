import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from threetile.exactnum import (
    PI,
    CycloNum,
    IncompatibleOrder,
    PiRational,
    approx,
    approx_real,
    compare_real,
    cos_of,
    sign_real,
    sin_of,
    unit_from_angle,
    zeta_exponent,
)

# Independent oracles: nested radicals evaluated in floating point, frozen here.
COS_EPS = 0.5 * math.sqrt(2 + math.sqrt(2 + math.sqrt(2)))
SIN_EPS = 0.5 * math.sqrt(2 - math.sqrt(2 + math.sqrt(2)))
COS_2EPS = 0.5 * math.sqrt(2 + math.sqrt(2))
SIN_2EPS = 0.5 * math.sqrt(2 - math.sqrt(2))
LONG_EDGE = 2 - COS_EPS + SIN_2EPS
MIDDLE_EDGE = 2 * (COS_2EPS + SIN_EPS)

EPS = PiRational(1, 16)


def test_frozen_oracles_sanity():
    assert COS_EPS == pytest.approx(0.98078528040323, abs=1e-13)
    assert LONG_EDGE == pytest.approx(1.4018981519618594, abs=1e-13)


def test_pirational_canonical():
    assert PiRational(2, 4) == PiRational(1, 2)
    assert PiRational(3, -6) == PiRational(-1, 2)
    assert str(PiRational(3, 8)) == "3/8 pi"
    assert PiRational.parse("3/8 pi") == PiRational(3, 8)
    assert PiRational(5, 2).normalized() == PiRational(1, 2)
    assert PiRational(-1, 2).normalized() == PiRational(3, 2)


@given(st.fractions(), st.fractions(), st.fractions())
def test_pirational_addition_laws(a, b, c):
    x, y, z = PiRational(a), PiRational(b), PiRational(c)
    assert x + y == y + x
    assert (x + y) + z == x + (y + z)
    assert x.normalized().normalized() == x.normalized()


def test_unit_from_angle():
    assert unit_from_angle(PI / 2, 32) == CycloNum.zeta(32, 8)
    assert unit_from_angle(EPS, 32) == CycloNum.zeta(32)
    assert unit_from_angle(PiRational(0), 7) == CycloNum.from_rational(1, 7)
    assert unit_from_angle(EPS, 32) * unit_from_angle(EPS, 32) == unit_from_angle(PI / 8, 32)
    with pytest.raises(IncompatibleOrder):
        unit_from_angle(EPS, 12)
    assert zeta_exponent(-PI / 2, 32) == 24


def test_cos_eps_enclosure():
    iv = approx_real(unit_from_angle(EPS, 32).real_part(), 20)
    assert iv.width() <= Fraction(1, 2**20)
    assert iv.contains(Fraction(COS_EPS))


def test_edge_lengths_enclosure():
    a = CycloNum.from_rational(2, 32) - cos_of(EPS, 32) + sin_of(EPS * 2, 32)
    c = (cos_of(EPS * 2, 32) + sin_of(EPS, 32)) * 2
    for x, want in ((a, LONG_EDGE), (c, MIDDLE_EDGE)):
        assert x.is_real()
        iv = approx_real(x, 40)
        assert abs(float(iv.mid()) - want) < 1e-12
    assert sign_real(a) == 1
    assert sign_real(cos_of(EPS, 32) - 1) == -1
    assert sign_real(CycloNum.zero(32)) == 0


def test_approx_examples():
    one = CycloNum.from_rational(1, 32)
    assert approx_real(one, 10) == (1, 1)
    i = CycloNum.zeta(32, 8)
    re, im = approx(i, 4)
    assert re.lo == re.hi == 0 and im.lo == im.hi == 1


def test_promotion_and_orders():
    x = CycloNum.zeta(8, 1)
    y = x.promote(32)
    assert y == CycloNum.zeta(32, 4)
    assert float((y * y).imag_part()) == pytest.approx(1.0)
    with pytest.raises(IncompatibleOrder):
        CycloNum.zeta(8) + CycloNum.zeta(12)


def test_exact_identities():
    # sin^2 + cos^2 = 1 for every angle multiple of pi/16
    for k in range(32):
        a = PiRational(k, 16)
        s, c = sin_of(a, 32), cos_of(a, 32)
        assert s * s + c * c == CycloNum.from_rational(1, 32)
    z = CycloNum.zeta(32, 3)
    assert z * z.inverse() == CycloNum.from_rational(1, 32)
    assert z.conj() == z.inverse()


ORDERS = st.sampled_from([8, 12, 16, 32])
small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclo(draw, order=None):
    m = order or draw(ORDERS)
    terms = draw(st.lists(st.tuples(small, st.integers(0, 63)), min_size=1, max_size=4))
    x = CycloNum.zero(m)
    for q, k in terms:
        x = x + CycloNum.zeta(m, k) * q
    return x


@st.composite
def triple(draw):
    m = draw(ORDERS)
    return draw(cyclo(m)), draw(cyclo(m)), draw(cyclo(m))


@given(triple())
def test_ring_axioms(t):
    x, y, z = t
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x - x).is_zero()
    assert all(c == 0 for c in (x - x).coeffs)


@given(cyclo(), st.integers(-40, 40))
def test_conjugate_sum_is_real(x, k):
    a = PiRational(k, 16)
    m = 32
    assert (unit_from_angle(a, m) + unit_from_angle(-a, m)) == cos_of(a, m) * 2
    assert (x + x.conj()).is_real()
    assert x.norm_squared().is_real()


@settings(max_examples=1000, deadline=None)
@given(cyclo())
def test_sign_agrees_with_intervals(x):
    r = (x + x.conj())
    s = sign_real(r)
    if r.is_zero():
        assert s == 0
        return
    bits = 8
    while True:
        iv = approx_real(r, bits)
        if iv.lo > 0 or iv.hi < 0:
            break
        bits *= 2
    assert s == (1 if iv.lo > 0 else -1)
    assert compare_real(r, 0) == s


@given(cyclo(), st.integers(1, 60))
def test_approx_width_and_containment(x, bits):
    r = x + x.conj()
    iv = approx_real(r, bits)
    assert iv.width() <= Fraction(1, 2**bits)
    assert iv.lo <= Fraction(float(r)) + Fraction(1, 2**40) and Fraction(float(r)) - Fraction(1, 2**40) <= iv.hi

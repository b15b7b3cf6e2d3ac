"""Exact angles and exact cyclotomic numbers.

Angles are rational multiples of pi (:class:`PiRational`).  Lengths and
planar coordinates are elements of the cyclotomic field Q(zeta_M)
(:class:`CycloNum`), stored in the power basis modulo the M-th cyclotomic
polynomial.  A planar point is a single complex ``CycloNum``; its x and y
coordinates are the real elements ``real_part()`` and ``imag_part()``.

Zero testing is free (canonical coefficients).  Signs of real elements are
decided by interval refinement after the symbolic zero test, so every
comparison terminates.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Iterable, NamedTuple, Sequence

from mpmath.libmp import from_int, libmpi, to_str

__all__ = [
    "IncompatibleOrder",
    "PiRational",
    "PI",
    "TWO_PI",
    "CycloNum",
    "Interval",
    "ComplexInterval",
    "unit_from_angle",
    "cos_of",
    "sin_of",
    "sign_real",
    "compare_real",
    "approx",
    "approx_real",
    "make_point",
]


class IncompatibleOrder(ValueError):
    """Two cyclotomic numbers (or an angle and a field) do not share a field."""


# --------------------------------------------------------------------------
# Angles
# --------------------------------------------------------------------------


@total_ordering
class PiRational:
    """The angle ``(num/den) * pi`` in canonical reduced form."""

    __slots__ = ("_q",)

    def __init__(self, num: int | Fraction = 0, den: int = 1):
        q = Fraction(num, den)
        object.__setattr__(self, "_q", q)

    def __setattr__(self, name, value):
        raise AttributeError("PiRational is immutable")

    @property
    def num(self) -> int:
        return self._q.numerator

    @property
    def den(self) -> int:
        return self._q.denominator

    @property
    def frac(self) -> Fraction:
        """The multiple of pi as a Fraction."""
        return self._q

    @classmethod
    def parse(cls, text: str) -> PiRational:
        s = text.strip().replace(" ", "")
        if s.endswith("pi"):
            s = s[:-2]
            if s.endswith("*"):
                s = s[:-1]
            if s in ("", "+"):
                s = "1"
            elif s == "-":
                s = "-1"
        return cls(Fraction(s))

    def __str__(self) -> str:
        return f"{self.num}/{self.den} pi"

    def __repr__(self) -> str:
        return f"PiRational({self.num}, {self.den})"

    def __hash__(self) -> int:
        return hash(("pi", self._q))

    def __eq__(self, other) -> bool:
        if isinstance(other, PiRational):
            return self._q == other._q
        return NotImplemented

    def __lt__(self, other: PiRational) -> bool:
        if not isinstance(other, PiRational):
            return NotImplemented
        return self._q < other._q

    def __add__(self, other: PiRational) -> PiRational:
        if not isinstance(other, PiRational):
            return NotImplemented
        return PiRational(self._q + other._q)

    def __sub__(self, other: PiRational) -> PiRational:
        if not isinstance(other, PiRational):
            return NotImplemented
        return PiRational(self._q - other._q)

    def __neg__(self) -> PiRational:
        return PiRational(-self._q)

    def __mul__(self, k: int | Fraction) -> PiRational:
        if isinstance(k, (int, Fraction)):
            return PiRational(self._q * k)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, k: int | Fraction) -> PiRational:
        if isinstance(k, (int, Fraction)):
            return PiRational(self._q / k)
        return NotImplemented

    def normalized(self) -> PiRational:
        """Representative in [0, 2pi)."""
        return PiRational(self._q % 2)

    def radians(self) -> float:
        return float(self._q) * math.pi


PI = PiRational(1)
TWO_PI = PiRational(2)


# --------------------------------------------------------------------------
# Cyclotomic fields
# --------------------------------------------------------------------------

_EPS = 2.0**-52


class _Field:
    """Reduction tables for Q(zeta_M) in the power basis."""

    def __init__(self, order: int):
        from sympy import cyclotomic_poly

        coeffs = cyclotomic_poly(order, polys=True).all_coeffs()[::-1]
        coeffs = [int(c) for c in coeffs]
        phi = len(coeffs) - 1
        self.order = order
        self.phi = phi
        low = coeffs[:phi]
        dense: list[list[int]] = []
        for j in range(max(order, 2 * phi)):
            if j < phi:
                v = [0] * phi
                v[j] = 1
            else:
                prev = dense[j - 1]
                top = prev[-1]
                v = [0] + prev[:-1]
                if top:
                    for i, c in enumerate(low):
                        v[i] -= top * c
            dense.append(v)
        self.dense = [tuple(v) for v in dense[:order]]
        self.sparse = [tuple((i, c) for i, c in enumerate(v) if c) for v in dense]
        # float tables of cos/sin(2 pi k / M), correctly rounded from 80 bits
        self.cos = []
        self.sin = []
        for k in range(phi):
            c, s = _cos_sin_interval(Fraction(2 * k, order), 80)
            self.cos.append(float(_mid(c)))
            self.sin.append(float(_mid(s)))


@lru_cache(maxsize=None)
def _field(order: int) -> _Field:
    if order < 1:
        raise ValueError("field order must be positive")
    return _Field(order)


def _phi(order: int) -> int:
    return _field(order).phi


def _mid(iv) -> Fraction:
    a, b = iv
    return (_mpf_to_fraction(a) + _mpf_to_fraction(b)) / 2


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if not man:
        return Fraction(0)
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _cos_sin_interval(multiple_of_pi: Fraction, prec: int):
    pi = libmpi.mpi_pi(prec)
    p = from_int(multiple_of_pi.numerator)
    q = from_int(multiple_of_pi.denominator)
    t = libmpi.mpi_div((p, p), (q, q), prec)
    arg = libmpi.mpi_mul(pi, t, prec)
    return libmpi.mpi_cos_sin(arg, prec)


class CycloNum:
    """An exact element of Q(zeta_M), M = ``order``.

    Stored as integer numerators over a common positive denominator in the
    basis 1, zeta, ..., zeta^(phi(M)-1).  Instances are immutable.
    """

    __slots__ = ("order", "num", "den", "_f")

    def __init__(self, order: int, coeffs: Sequence[int | Fraction]):
        phi = _phi(order)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for order {order}")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [int(c * den) for c in fr]
        self._init(order, num, den)

    def _init(self, order: int, num: list[int], den: int) -> None:
        g = math.gcd(den, *num)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_f", None)

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int) -> CycloNum:
        obj = object.__new__(cls)
        if den < 0:
            num = [-c for c in num]
            den = -den
        obj._init(order, num, den)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> CycloNum:
        return cls._raw(order, [0] * _phi(order), 1)

    @classmethod
    def from_rational(cls, q: int | Fraction, order: int) -> CycloNum:
        q = Fraction(q)
        num = [0] * _phi(order)
        num[0] = q.numerator
        return cls._raw(order, num, q.denominator)

    @classmethod
    def zeta(cls, order: int, k: int = 1) -> CycloNum:
        """zeta_M ** k with zeta_M = exp(2 pi i / M)."""
        F = _field(order)
        return cls._raw(order, list(F.dense[k % order]), 1)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return Fraction(self.num[0], self.den)

    def key(self) -> tuple:
        """Hashable canonical key."""
        return (self.order, self.den, self.num)

    # arithmetic
    def _coerce(self, other) -> CycloNum:
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise IncompatibleOrder(
                    f"orders {self.order} and {other.order}; promote explicitly"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.from_rational(other, self.order)
        raise TypeError(f"cannot combine CycloNum with {type(other).__name__}")

    def __add__(self, other) -> CycloNum:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycloNum._raw(self.order, [a + b for a, b in zip(self.num, o.num)], self.den)
        da, db = self.den, o.den
        return CycloNum._raw(
            self.order, [a * db + b * da for a, b in zip(self.num, o.num)], da * db
        )

    __radd__ = __add__

    def __neg__(self) -> CycloNum:
        return CycloNum._raw(self.order, [-a for a in self.num], self.den)

    def __sub__(self, other) -> CycloNum:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> CycloNum:
        return (-self) + other

    def __mul__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum._raw(
                self.order, [a * q.numerator for a in self.num], self.den * q.denominator
            )
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        F = _field(self.order)
        phi = F.phi
        a = [(i, c) for i, c in enumerate(self.num) if c]
        b = [(i, c) for i, c in enumerate(o.num) if c]
        if not a or not b:
            return CycloNum.zero(self.order)
        if len(a) > len(b):
            a, b = b, a
        raw = [0] * (2 * phi - 1)
        for i, ai in a:
            for j, bj in b:
                raw[i + j] += ai * bj
        out = raw[:phi]
        sparse = F.sparse
        for k in range(phi, 2 * phi - 1):
            c = raw[k]
            if c:
                for idx, rc in sparse[k]:
                    out[idx] += c * rc
        return CycloNum._raw(self.order, out, self.den * o.den)

    __rmul__ = __mul__

    def times_zeta(self, k: int) -> CycloNum:
        """Multiply by zeta_M ** k (a rotation); cheaper than general ``*``."""
        F = _field(self.order)
        M, phi = self.order, F.phi
        out = [0] * phi
        sparse = F.sparse
        for i, c in enumerate(self.num):
            if c:
                for idx, rc in sparse[(i + k) % M]:
                    out[idx] += c * rc
        return CycloNum._raw(M, out, self.den)

    def __pow__(self, e: int) -> CycloNum:
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNum.from_rational(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, k: int) -> CycloNum:
        """Apply the automorphism zeta -> zeta**k (gcd(k, M) = 1)."""
        M = self.order
        if math.gcd(k, M) != 1:
            raise ValueError("Galois exponent must be coprime to the order")
        F = _field(M)
        out = [0] * F.phi
        for i, c in enumerate(self.num):
            if c:
                for idx, rc in F.sparse[(i * k) % M]:
                    out[idx] += c * rc
        return CycloNum._raw(M, out, self.den)

    def conj(self) -> CycloNum:
        return self.galois(-1 % self.order) if self.order > 2 else self

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> CycloNum:
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> CycloNum:
        # (z - conj z) / (2i) = (z - conj z) * (-i) / 2
        if self.order % 4:
            if self.is_real():
                return CycloNum.zero(self.order)
            raise IncompatibleOrder("imaginary part needs an order divisible by 4")
        d = self - self.conj()
        return d.times_zeta(-(self.order // 4)) * Fraction(1, 2)

    def norm_squared(self) -> CycloNum:
        """|z|^2 as a real element."""
        return self * self.conj()

    def inverse(self) -> CycloNum:
        """Multiplicative inverse via the product of the other Galois conjugates."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNum.from_rational(1 / self.rational_value(), self.order)
        M = self.order
        prod = CycloNum.from_rational(1, M)
        for k in range(2, M):
            if math.gcd(k, M) == 1:
                prod = prod * self.galois(k)
        norm = (self * prod).rational_value()
        return prod * (1 / norm)

    def __truediv__(self, other) -> CycloNum:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def promote(self, order: int) -> CycloNum:
        """Embed into Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise IncompatibleOrder(f"{self.order} does not divide {order}")
        step = order // self.order
        F = _field(order)
        out = [0] * F.phi
        for i, c in enumerate(self.num):
            if c:
                for idx, rc in F.sparse[(i * step) % order]:
                    out[idx] += c * rc
        return CycloNum._raw(order, out, self.den)

    # comparison / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, CycloNum):
            return self.order == other.order and self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        terms = [f"{Fraction(c, self.den)}*z^{i}" for i, c in enumerate(self.num) if c]
        return f"CycloNum[{self.order}]({' + '.join(terms) or '0'})"

    # floating filter
    def fapprox(self) -> tuple[complex, float]:
        """Float value and a rigorous bound on its absolute error."""
        if self._f is None:
            F = _field(self.order)
            den = self.den
            try:
                nz = [(float(c), i) for i, c in enumerate(self.num) if c]
                re = math.fsum(c * F.cos[i] for c, i in nz) / den
                im = math.fsum(c * F.sin[i] for c, i in nz) / den
                s = math.fsum(abs(c) for c, _ in nz) / den
                err = 4 * _EPS * (s + abs(re) + abs(im)) + 1e-300
            except OverflowError:
                re = im = 0.0
                err = math.inf
            if not (math.isfinite(re) and math.isfinite(im) and math.isfinite(err)):
                re, im, err = 0.0, 0.0, math.inf
            object.__setattr__(self, "_f", (complex(re, im), err))
        return self._f

    def __float__(self) -> float:
        v, _ = self.fapprox()
        return v.real

    def __complex__(self) -> complex:
        return self.fapprox()[0]


def make_point(x: int | Fraction | CycloNum, y: int | Fraction | CycloNum, order: int) -> CycloNum:
    """The complex number x + i y in Q(zeta_order); order must be a multiple of 4."""
    if order % 4:
        raise IncompatibleOrder("points need an order divisible by 4")
    xs = x if isinstance(x, CycloNum) else CycloNum.from_rational(x, order)
    ys = y if isinstance(y, CycloNum) else CycloNum.from_rational(y, order)
    return xs + ys.times_zeta(order // 4)


# --------------------------------------------------------------------------
# Angle -> unit complex number
# --------------------------------------------------------------------------


def unit_from_angle(a: PiRational, order: int) -> CycloNum:
    """exp(i a) as an element of Q(zeta_order)."""
    k2 = a.num * order
    if k2 % (2 * a.den):
        raise IncompatibleOrder(f"angle {a} is not a power of zeta_{order}")
    return CycloNum.zeta(order, k2 // (2 * a.den))


def zeta_exponent(a: PiRational, order: int) -> int:
    """The k with exp(i a) = zeta_order ** k (k in [0, order))."""
    k2 = a.num * order
    if k2 % (2 * a.den):
        raise IncompatibleOrder(f"angle {a} is not a power of zeta_{order}")
    return (k2 // (2 * a.den)) % order


def cos_of(a: PiRational, order: int) -> CycloNum:
    return (unit_from_angle(a, order) + unit_from_angle(-a, order)) * Fraction(1, 2)


def sin_of(a: PiRational, order: int) -> CycloNum:
    return (unit_from_angle(a, order) - unit_from_angle(-a, order)).times_zeta(
        -(order // 4)
    ) * Fraction(1, 2)


# --------------------------------------------------------------------------
# Intervals and signs
# --------------------------------------------------------------------------


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


class ComplexInterval(NamedTuple):
    real: Interval
    imag: Interval


def _real_interval(x: CycloNum, prec: int):
    """Interval enclosure (mpi) of sum c_k cos(2 pi k / M) at working precision."""
    F = _field(x.order)
    zero = from_int(0)
    acc = (zero, zero)
    for k, c in enumerate(x.num):
        if not c:
            continue
        cs, _ = _cos_sin_interval(Fraction(2 * k, x.order), prec)
        cc = from_int(c)
        acc = libmpi.mpi_add(acc, libmpi.mpi_mul((cc, cc), cs, prec), prec)
    d = from_int(x.den)
    return libmpi.mpi_div(acc, (d, d), prec)


def _outward_dyadic(iv, bits: int) -> Interval:
    lo = _mpf_to_fraction(iv[0])
    hi = _mpf_to_fraction(iv[1])
    scale = 1 << (bits + 2)
    return Interval(
        Fraction(math.floor(lo * scale), scale), Fraction(math.ceil(hi * scale), scale)
    )


def approx_real(x: CycloNum, bits: int) -> Interval:
    """Dyadic interval of width <= 2**-bits containing the real element x."""
    if x.is_rational():
        q = x.rational_value()
        return Interval(q, q)
    if not x.is_real():
        raise ValueError("approx_real needs a real element")
    target = Fraction(1, 1 << bits)
    v, err = x.fapprox()
    if err * 4 < float(target) and err > 0:
        scale = 1 << (bits + 2)
        lo = Fraction(v.real) - Fraction(err)
        hi = Fraction(v.real) + Fraction(err)
        iv = Interval(
            Fraction(math.floor(lo * scale), scale), Fraction(math.ceil(hi * scale), scale)
        )
        if iv.width() <= target:
            return iv
    prec = bits + 32 + sum(abs(c) for c in x.num).bit_length()
    while True:
        iv = _outward_dyadic(_real_interval(x, prec), bits)
        if iv.width() <= target:
            return iv
        prec *= 2


def approx(x: CycloNum, bits: int) -> ComplexInterval:
    """Component-wise dyadic enclosure of x with widths <= 2**-bits."""
    return ComplexInterval(approx_real(x.real_part(), bits), approx_real(x.imag_part(), bits))


def sign_real(x: CycloNum) -> int:
    """Exact sign of a real cyclotomic number."""
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.num[0] > 0 else -1
    v, err = x.fapprox()
    if abs(v.real) > err:
        if not x.is_real():
            raise ValueError("sign_real needs a real element")
        return 1 if v.real > 0 else -1
    if not x.is_real():
        raise ValueError("sign_real needs a real element")
    prec = 64
    while True:
        lo, hi = _real_interval(x, prec)
        if _mpf_to_fraction(lo) > 0:
            return 1
        if _mpf_to_fraction(hi) < 0:
            return -1
        prec *= 2


def compare_real(a: CycloNum, b: CycloNum | int | Fraction) -> int:
    """sign(a - b) for real elements."""
    if isinstance(b, (int, Fraction)):
        b = CycloNum.from_rational(b, a.order)
    va, ea = a.fapprox()
    vb, eb = b.fapprox()
    d = va.real - vb.real
    if abs(d) > (ea + eb) * 1.01 + 4 * _EPS * abs(d):
        return 1 if d > 0 else -1
    return sign_real(a - b)


def interval_str(iv: Interval, digits: int = 12) -> str:
    return f"[{float(iv.lo):.{digits}g}, {float(iv.hi):.{digits}g}]"


def to_decimal_str(x: Fraction, digits: int) -> str:
    from mpmath.libmp import from_rational

    return to_str(from_rational(x.numerator, x.denominator, digits * 4 + 10), digits)


def sum_nums(values: Iterable[CycloNum], order: int) -> CycloNum:
    total = CycloNum.zero(order)
    for v in values:
        total = total + v
    return total

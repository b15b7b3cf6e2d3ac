"""Exact planar predicates over cyclotomic points, with a float filter.

Every predicate first evaluates in floating point with a rigorous error
bound and falls back to exact arithmetic (``sign_real``) only when the
float result is too close to zero to be trusted.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from fractions import Fraction

from .exactnum import CycloNum, sign_real

_EPS = 2.0**-52
_HALF = Fraction(1, 2)

Point = CycloNum


def cross(u: Point, v: Point) -> CycloNum:
    """Exact u.x * v.y - u.y * v.x (a real element)."""
    return (u.conj() * v).imag_part()


def dot(u: Point, v: Point) -> CycloNum:
    return (u.conj() * v).real_part()


def _sign_cross(u: Point, v: Point, fu, fv) -> int:
    (zu, eu), (zv, ev) = fu, fv
    det = zu.real * zv.imag - zu.imag * zv.real
    mu = abs(zu.real) + abs(zu.imag)
    mv = abs(zv.real) + abs(zv.imag)
    err = mu * ev + mv * eu + 2 * eu * ev + 4 * _EPS * (mu * mv)
    if abs(det) > 2 * err:
        return 1 if det > 0 else -1
    return sign_real(cross(u, v))


def _diff(a: Point, b: Point):
    (za, ea), (zb, eb) = a.fapprox(), b.fapprox()
    d = zb - za
    return d, ea + eb + 2 * _EPS * (abs(d.real) + abs(d.imag))


def orient(a: Point, b: Point, c: Point) -> int:
    """+1 if a, b, c turn counterclockwise, -1 clockwise, 0 collinear."""
    return _sign_cross(b - a, c - a, _diff(a, b), _diff(a, c))


def sign_dot(a: Point, b: Point, c: Point, d: Point) -> int:
    """Sign of dot(b - a, d - c)."""
    (zu, eu), (zv, ev) = _diff(a, b), _diff(c, d)
    val = zu.real * zv.real + zu.imag * zv.imag
    mu = abs(zu.real) + abs(zu.imag)
    mv = abs(zv.real) + abs(zv.imag)
    err = mu * ev + mv * eu + 2 * eu * ev + 4 * _EPS * (mu * mv)
    if abs(val) > 2 * err:
        return 1 if val > 0 else -1
    return sign_real(dot(b - a, d - c))


def compare_y(a: Point, b: Point) -> int:
    """sign(a.y - b.y)."""
    (za, ea), (zb, eb) = a.fapprox(), b.fapprox()
    d = za.imag - zb.imag
    if abs(d) > 2 * (ea + eb) + 4 * _EPS * abs(d):
        return 1 if d > 0 else -1
    return sign_real(a.imag_part() - b.imag_part())


def on_segment(p: Point, a: Point, b: Point, strict: bool = False) -> bool:
    """Whether p lies on the closed (or open, if strict) segment ab."""
    if orient(a, b, p) != 0:
        return False
    s1 = sign_dot(a, b, a, p)  # dot(b - a, p - a)
    s2 = sign_dot(b, a, b, p)  # dot(a - b, p - b)
    if strict:
        return s1 > 0 and s2 > 0
    return s1 >= 0 and s2 >= 0


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Closed-segment intersection test."""
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    if o1 == 0 and on_segment(q1, p1, p2):
        return True
    if o2 == 0 and on_segment(q2, p1, p2):
        return True
    if o3 == 0 and on_segment(p1, q1, q2):
        return True
    if o4 == 0 and on_segment(p2, q1, q2):
        return True
    return False


def segments_cross_properly(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Transversal crossing at a point interior to both segments."""
    o1 = orient(p1, p2, q1)
    o2 = orient(p1, p2, q2)
    if o1 * o2 >= 0:
        return False
    o3 = orient(q1, q2, p1)
    o4 = orient(q1, q2, p2)
    return o3 * o4 < 0


def collinear_overlap_same_direction(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Collinear segments pointing the same way with positive-length overlap."""
    if orient(p1, p2, q1) != 0 or orient(p1, p2, q2) != 0:
        return False
    if sign_dot(p1, p2, q1, q2) <= 0:
        return False
    # overlap iff q1 before p2 and p1 before q2 (along the common direction)
    return sign_dot(q1, p2, p1, p2) > 0 and sign_dot(p1, q2, p1, p2) > 0


# --------------------------------------------------------------------------
# Bounding boxes
# --------------------------------------------------------------------------


def float_coords(points: Sequence[Point]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    xs = np.empty(len(points))
    ys = np.empty(len(points))
    es = np.empty(len(points))
    for i, p in enumerate(points):
        z, e = p.fapprox()
        xs[i], ys[i], es[i] = z.real, z.imag, e
    return xs, ys, es


def edge_boxes(points: Sequence[Point]) -> np.ndarray:
    """(n, 4) array of [xmin, xmax, ymin, ymax] per closed-polygon edge, padded by errors."""
    xs, ys, es = float_coords(points)
    xn, yn, en = np.roll(xs, -1), np.roll(ys, -1), np.roll(es, -1)
    pad = es + en + 1e-9 * (1 + np.abs(xs) + np.abs(ys))
    return np.stack(
        [
            np.minimum(xs, xn) - pad,
            np.maximum(xs, xn) + pad,
            np.minimum(ys, yn) - pad,
            np.maximum(ys, yn) + pad,
        ],
        axis=1,
    )


def box_pairs(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Index pairs (i, j) whose boxes overlap."""
    if len(a) == 0 or len(b) == 0:
        return np.empty((0, 2), dtype=int)
    ov = (
        (a[:, None, 0] <= b[None, :, 1])
        & (b[None, :, 0] <= a[:, None, 1])
        & (a[:, None, 2] <= b[None, :, 3])
        & (b[None, :, 2] <= a[:, None, 3])
    )
    return np.argwhere(ov)


def polygon_box(points: Sequence[Point]) -> np.ndarray:
    e = edge_boxes(points)
    return np.array([e[:, 0].min(), e[:, 1].max(), e[:, 2].min(), e[:, 3].max()])


# --------------------------------------------------------------------------
# Polygons
# --------------------------------------------------------------------------


def polygon_is_simple(points: Sequence[Point]) -> bool:
    """Exact simplicity test for a closed polygon given by its vertices."""
    n = len(points)
    if n < 3:
        return False
    keys = {p.key() for p in points}
    if len(keys) != n:
        return False
    # adjacent edges must not fold back onto each other
    for i in range(n):
        a, b, c = points[i - 1], points[i], points[(i + 1) % n]
        if orient(a, b, c) == 0 and sign_dot(a, b, b, c) < 0:
            return False
    boxes = edge_boxes(points)
    for i, j in box_pairs(boxes, boxes):
        if j <= i + 1 or (i == 0 and j == n - 1):
            continue
        if segments_intersect(points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]):
            return False
    return True


class PolygonIndex:
    """Point-location helper for one simple polygon (vertices in CCW order)."""

    def __init__(self, points: Sequence[Point]):
        self.points = list(points)
        self.vertex_keys = {p.key() for p in self.points}
        n = len(self.points)
        self.mids = [(self.points[i] + self.points[(i + 1) % n]) * _HALF for i in range(n)]
        self.mid_keys = {m.key() for m in self.mids}
        self.xs, self.ys, self.es = float_coords(self.points)
        mx, my, _ = float_coords(self.mids)
        # vertices and edge midpoints, probed against other polygons
        self.samples = self.points + self.mids
        self.sample_xy = np.stack([np.concatenate([self.xs, mx]), np.concatenate([self.ys, my])], axis=1)
        self.box = polygon_box(self.points)
        self.edge_box = edge_boxes(self.points)

    def classify(self, p: Point) -> int:
        """1 strictly inside, 0 on the boundary, -1 strictly outside."""
        k = p.key()
        if k in self.vertex_keys or k in self.mid_keys:
            return 0
        z, pe = p.fapprox()
        px, py = z.real, z.imag
        b = self.box
        if px < b[0] or px > b[1] or py < b[2] or py > b[3]:
            return -1
        n = len(self.points)
        xa, ya, ea = self.xs, self.ys, self.es
        xb, yb, eb = np.roll(xa, -1), np.roll(ya, -1), np.roll(ea, -1)
        tol_a = 2 * (ea + pe) + 4 * _EPS * np.abs(ya - py)
        tol_b = 2 * (eb + pe) + 4 * _EPS * np.abs(yb - py)
        da, db = ya - py, yb - py
        amb_y = (np.abs(da) <= tol_a) | (np.abs(db) <= tol_b)
        ux, uy = xb - xa, yb - ya
        vx, vy = px - xa, py - ya
        det = ux * vy - uy * vx
        eu = ea + eb
        ev = ea + pe
        mu = np.abs(ux) + np.abs(uy)
        mv = np.abs(vx) + np.abs(vy)
        err = 2 * (mu * ev + mv * eu + 2 * eu * ev + 4 * _EPS * mu * mv) + 1e-300
        amb_o = np.abs(det) <= err
        # only edges whose y-range can reach p matter
        reach = (np.minimum(ya, yb) - tol_a - tol_b <= py) & (py <= np.maximum(ya, yb) + tol_a + tol_b)
        winding = 0
        sure = reach & ~amb_y & ~amb_o
        up = sure & (da <= 0) & (db > 0) & (det > 0)
        down = sure & (db <= 0) & (da > 0) & (det < 0)
        winding += int(up.sum()) - int(down.sum())
        for i in np.nonzero(reach & (amb_y | amb_o))[0]:
            a, bb = self.points[i], self.points[(i + 1) % n]
            o = orient(a, bb, p)
            if o == 0 and on_segment(p, a, bb):
                return 0
            ca = compare_y(a, p)
            cb = compare_y(bb, p)
            if ca <= 0 < cb and o > 0:
                winding += 1
            elif cb <= 0 < ca and o < 0:
                winding -= 1
        return 1 if winding != 0 else -1




def interiors_overlap(pa: PolygonIndex, pb: PolygonIndex) -> bool:
    """Whether two simple polygons share interior points (exact, filtered)."""
    a, b = pa.box, pb.box
    if a[1] < b[0] or b[1] < a[0] or a[3] < b[2] or b[3] < a[2]:
        return False
    A, B = pa.points, pb.points
    na, nb = len(A), len(B)
    for i, j in box_pairs(pa.edge_box, pb.edge_box):
        p1, p2 = A[i], A[(i + 1) % na]
        q1, q2 = B[j], B[(j + 1) % nb]
        if segments_cross_properly(p1, p2, q1, q2):
            return True
        if collinear_overlap_same_direction(p1, p2, q1, q2):
            return True
    for src, dst in ((pa, pb), (pb, pa)):
        b = dst.box
        xy = src.sample_xy
        near = (xy[:, 0] >= b[0]) & (xy[:, 0] <= b[1]) & (xy[:, 1] >= b[2]) & (xy[:, 1] <= b[3])
        for i in np.nonzero(near)[0]:
            if dst.classify(src.samples[i]) == 1:
                return True
    return False

"""Planar primitives with exact sign predicates.

``orient`` evaluates the 2x2 determinant in floating point and only falls back
to exact rational arithmetic when the result is within the forward error bound
of the float evaluation (the static filter from Shewchuk's orient2d).  Every
planarity verdict built on top of it is therefore exact for the given doubles.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from gmpy2 import mpq

from .errors import ElrError

_EPS = 2.0**-53
# Shewchuk's ccwerrboundA
ORIENT_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point


class Triangle(NamedTuple):
    a: Point
    b: Point
    c: Point


def _exact_orient(p, q, r) -> int:
    # gmpy2 rationals: exact like Fraction, an order of magnitude faster
    px, py = mpq(p[0]), mpq(p[1])
    det = (mpq(q[0]) - px) * (mpq(r[1]) - py) - (mpq(q[1]) - py) * (mpq(r[0]) - px)
    return (det > 0) - (det < 0)


_RATIONAL = (Fraction, type(mpq(0)))


def _is_exact(*pts) -> bool:
    return any(type(c) in _RATIONAL for pt in pts for c in pt)


def orient_relative(p: np.ndarray, q: np.ndarray, r: np.ndarray, slack: float = 0.0) -> np.ndarray:
    """Orientation signs for rows of points given relative to some origin; 0 where undecided.

    Each coordinate must be an exact value rounded once to double (relative
    error at most 2^-53), e.g. ``float(x - origin)`` for rational x.  The
    determinant is evaluated around each of the three points in turn and a sign
    is accepted if any pivot decides it, so points near the origin keep tight
    bounds.  ``slack`` widens the bound for inputs that may in addition be off by
    up to that much per coordinate.  Undecided rows need an exact evaluation.
    """
    out = np.zeros(len(p), dtype=np.int8)
    m = [np.abs(a[:, 0]) + np.abs(a[:, 1]) for a in (p, q, r)]
    for a, b, c, ma, mb, mc in ((p, q, r, *m), (q, r, p, m[1], m[2], m[0]), (r, p, q, m[2], m[0], m[1])):
        u, w = b - a, c - a
        du, dw = np.abs(u[:, 0]) + np.abs(u[:, 1]), np.abs(w[:, 0]) + np.abs(w[:, 1])
        det = u[:, 0] * w[:, 1] - u[:, 1] * w[:, 0]
        err = 4 * _EPS * ((ma + mb + du) * dw + du * (ma + mc + dw)) + 1e-300
        if slack:
            err = err + 8 * slack * (du + dw + 8 * slack)
        out = np.where(out != 0, out, np.where(det > err, 1, np.where(-det > err, -1, 0))).astype(np.int8)
    return out


def orient(p, q, r) -> int:
    """+1 if p, q, r turn counterclockwise, -1 if clockwise, 0 if collinear.

    Coordinates may be floats or ``Fraction``s; rationals go straight to the
    exact path.
    """
    if _is_exact(p, q, r):
        return _exact_orient(p, q, r)
    left = (q[0] - p[0]) * (r[1] - p[1])
    right = (q[1] - p[1]) * (r[0] - p[0])
    det = left - right
    bound = ORIENT_ERRBOUND * (abs(left) + abs(right))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    return _exact_orient(p, q, r)


class PointTable:
    """Vertex coordinates prepared for vectorised exact orientation tests.

    ``approx`` holds the coordinates rounded to doubles.  When the source
    coordinates are rationals the float filter uses a bound that also covers
    the input rounding, and undecided signs are settled on the exact values.
    """

    def __init__(self, coords):
        self.exact = list(coords)
        self.approx = np.array([[float(x), float(y)] for x, y in self.exact], dtype=float).reshape(
            -1, 2
        )
        self.inexact_input = _is_exact(*self.exact)

    def orient(self, i, j, k) -> np.ndarray:
        i, j, k = np.broadcast_arrays(np.asarray(i), np.asarray(j), np.asarray(k))
        P = self.approx
        p, q, r = P[i], P[j], P[k]
        left = (q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1])
        right = (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0])
        det = left - right
        if self.inexact_input:
            s = np.maximum.reduce([np.abs(p).max(-1), np.abs(q).max(-1), np.abs(r).max(-1)])
            bound = 128.0 * _EPS * s * s
        else:
            bound = ORIENT_ERRBOUND * (np.abs(left) + np.abs(right))
        out = np.where(det > bound, 1, np.where(-det > bound, -1, 0)).astype(np.int8)
        unsure = np.flatnonzero((np.abs(det) <= bound).ravel())
        if unsure.size:
            flat = out.reshape(-1)
            fi, fj, fk = i.reshape(-1), j.reshape(-1), k.reshape(-1)
            E = self.exact
            for t in unsure:
                flat[t] = _exact_orient(E[fi[t]], E[fj[t]], E[fk[t]])
        return out


def _same(p, q) -> bool:
    return p[0] == q[0] and p[1] == q[1]


def _within_box(p, a, b) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(
        a[1], b[1]
    )


def on_segment(p, a, b, strict: bool = True) -> bool:
    """Whether p lies on segment ab; with ``strict`` the endpoints are excluded."""
    if strict and (_same(p, a) or _same(p, b)):
        return False
    return orient(a, b, p) == 0 and _within_box(p, a, b)


def segments_conflict(s1, s2) -> bool:
    """True iff the segments meet anywhere other than at a common endpoint.

    Proper crossings, collinear overlaps and an endpoint lying in the relative
    interior of the other segment all count as conflicts.
    """
    a, b = s1
    c, d = s2
    shared = [(x, y) for x in (a, b) for y in (c, d) if _same(x, y)]
    if len(shared) >= 2:
        return True
    if shared:
        x, _ = shared[0]
        u = b if _same(x, a) else a
        w = d if _same(x, c) else c
        if orient(x, u, w) != 0:
            return False
        return (u[0] - x[0]) * (w[0] - x[0]) + (u[1] - x[1]) * (w[1] - x[1]) > 0
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _within_box(c, a, b))
        or (o2 == 0 and _within_box(d, a, b))
        or (o3 == 0 and _within_box(a, c, d))
        or (o4 == 0 and _within_box(b, c, d))
    )


def dist(p, q) -> float:
    return math.hypot(q[0] - p[0], q[1] - p[1])


def point_segment_distance(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    den = dx * dx + dy * dy
    t = 0.0 if den == 0 else ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / den
    t = min(1.0, max(0.0, t))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def segment_distance(a, b, c, d) -> float:
    if segments_conflict((a, b), (c, d)):
        return 0.0
    return min(
        point_segment_distance(a, c, d),
        point_segment_distance(b, c, d),
        point_segment_distance(c, a, b),
        point_segment_distance(d, a, b),
    )


def _check_triangle(t) -> None:
    if orient(*t) == 0:
        raise ElrError("collinear", f"degenerate triangle {tuple(t)}")


def perimeter(t) -> float:
    a, b, c = t
    return dist(a, b) + dist(b, c) + dist(c, a)


def _angle(at, u, w) -> float:
    v1 = (u[0] - at[0], u[1] - at[1])
    v2 = (w[0] - at[0], w[1] - at[1])
    cross = v1[0] * v2[1] - v1[1] * v2[0]
    dot = v1[0] * v2[0] + v1[1] * v2[1]
    return math.degrees(math.atan2(abs(cross), dot))


def triangle_metrics(t) -> dict:
    """Perimeter, per-side x-extensions (ab, bc, ca), y-extension and angles at a, b, c."""
    _check_triangle(t)
    a, b, c = t
    xs = [p[0] for p in t]
    ys = [p[1] for p in t]
    return {
        "perimeter": perimeter(t),
        "side_x_extensions": (abs(a[0] - b[0]), abs(b[0] - c[0]), abs(c[0] - a[0])),
        "x_extension": max(xs) - min(xs),
        "y_extension": max(ys) - min(ys),
        "angles": (_angle(a, b, c), _angle(b, c, a), _angle(c, a, b)),
    }


def point_in_triangle(p, t, strict: bool = True) -> bool:
    _check_triangle(t)
    a, b, c = t
    o = orient(a, b, c)
    s = (orient(a, b, p) * o, orient(b, c, p) * o, orient(c, a, p) * o)
    if strict:
        return min(s) > 0
    return min(s) >= 0


def centroid(pts) -> Point:
    pts = list(pts)
    return Point(sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from elratio.errors import ElrError
from elratio.geometry import (
    PointTable,
    on_segment,
    orient,
    orient_relative,
    perimeter,
    point_in_triangle,
    point_segment_distance,
    segments_conflict,
    triangle_metrics,
)

coord = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)
small = st.integers(-50, 50)
ipoint = st.tuples(small, small)


def test_orient_basic():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (0, 1), (1, 0)) == -1
    assert orient((0, 0), (1, 1), (2, 2)) == 0


def test_orient_near_degenerate_float():
    # exactly collinear doubles that a naive determinant gets wrong
    p, q = (0.5, 0.5), (12.0, 12.0)
    r = (24.0, 24.0)
    assert orient(p, q, r) == 0
    r2 = (24.0, math.nextafter(24.0, 25.0))
    assert orient(p, q, r2) == 1


def test_orient_fractions():
    third = Fraction(1, 3)
    assert orient((0, 0), (third, third), (1, 1)) == 0
    assert orient((0, 0), (third, third), (1, Fraction(1) + Fraction(1, 10**40))) == 1


@given(point, point, point)
def test_orient_antisymmetric(p, q, r):
    assert orient(p, q, r) == -orient(q, p, r)
    assert orient(p, q, r) == orient(q, r, p)


@given(ipoint, ipoint, ipoint)
def test_orient_matches_integer_determinant(p, q, r):
    det = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    assert orient(p, q, r) == (det > 0) - (det < 0)


@given(st.lists(ipoint, min_size=3, max_size=12), st.data())
def test_point_table_agrees_with_scalar(pts, data):
    table = PointTable([(float(x), float(y)) for x, y in pts])
    n = len(pts)
    i, j, k = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert int(table.orient(np.array([i]), np.array([j]), np.array([k]))[0]) == orient(pts[i], pts[j], pts[k])


def test_segments_conflict_cases():
    assert segments_conflict(((0, 0), (2, 2)), ((0, 2), (2, 0)))  # proper crossing
    assert not segments_conflict(((0, 0), (1, 0)), ((1, 0), (1, 1)))  # shared endpoint
    assert segments_conflict(((0, 0), (2, 0)), ((1, 0), (1, 1)))  # T-junction
    assert segments_conflict(((0, 0), (2, 0)), ((1, 0), (3, 0)))  # collinear overlap
    assert not segments_conflict(((0, 0), (1, 0)), ((2, 0), (3, 0)))  # collinear, apart
    assert segments_conflict(((0, 0), (2, 0)), ((0, 0), (1, 0)))  # overlap from a shared end


@given(ipoint, ipoint, ipoint, ipoint)
def test_segments_conflict_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    assert segments_conflict((a, b), (c, d)) == segments_conflict((c, d), (a, b))
    assert segments_conflict((a, b), (c, d)) == segments_conflict((b, a), (d, c))


def test_on_segment():
    assert on_segment((1, 1), (0, 0), (2, 2))
    assert not on_segment((0, 0), (0, 0), (2, 2))
    assert on_segment((0, 0), (0, 0), (2, 2), strict=False)
    assert not on_segment((3, 3), (0, 0), (2, 2))


def test_triangle_metrics_equilateral():
    t = ((0, 0), (1, 0), (0.5, math.sqrt(3) / 2))
    m = triangle_metrics(t)
    assert perimeter(t) == pytest.approx(3)
    assert all(a == pytest.approx(60) for a in m["angles"])


def test_degenerate_triangle_rejected():
    with pytest.raises(ElrError) as err:
        triangle_metrics(((0, 0), (1, 1), (2, 2)))
    assert err.value.kind == "collinear"


def test_point_in_triangle():
    t = ((0, 0), (4, 0), (0, 4))
    assert point_in_triangle((1, 1), t)
    assert not point_in_triangle((2, 2), t)  # on the hypotenuse
    assert point_in_triangle((2, 2), t, strict=False)
    assert not point_in_triangle((5, 5), t, strict=False)


@given(point, point, point)
def test_point_segment_distance_bounded_by_endpoints(p, a, b):
    d = point_segment_distance(p, a, b)
    assert d <= min(math.dist(p, a), math.dist(p, b)) + 1e-6


@given(st.lists(st.tuples(ipoint, ipoint, ipoint), min_size=1, max_size=30), st.integers(1, 40))
def test_orient_relative_never_contradicts_exact(triples, shift):
    # tiny offsets around a far-away origin, where plain doubles lose the sign
    origin = (Fraction(10**6, 3), Fraction(-(10**6), 7))
    scale = Fraction(1, 2**shift)
    pts = [[(origin[0] + x * scale, origin[1] + y * scale) for x, y in tri] for tri in triples]
    rel = [np.array([(float(p[k][0] - origin[0]), float(p[k][1] - origin[1])) for p in pts]) for k in range(3)]
    got = orient_relative(*rel)
    for sign, (a, b, c) in zip(got, pts):
        assert sign == 0 or sign == orient(a, b, c)
    # collinear triples never get a sign
    exact = [orient(a, b, c) for a, b, c in pts]
    assert all(g == e for g, e in zip(got, exact) if e == 0)


@given(st.lists(st.tuples(point, point, point), min_size=1, max_size=20), st.floats(0, 1e-3))
def test_orient_relative_slack_is_sound(triples, slack):
    # inputs perturbed by up to `slack` must not flip a decided sign
    rng = np.random.default_rng(0)
    P, Q, R = (np.array([t[k] for t in triples], dtype=float) for k in range(3))
    got = orient_relative(P + rng.uniform(-slack, slack, P.shape), Q, R, slack=slack)
    for sign, (a, b, c) in zip(got, triples):
        assert sign == 0 or sign == orient(a, b, c)

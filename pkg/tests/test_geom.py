import math

import numpy as np
import pytest
from hypothesis import assume, given, settings

from conftest import anchor_sets, exact_distances, points
from hybridloc.geom import (
    AnchorSet,
    DegenerateGeometry,
    DistanceTriple,
    InvalidDistance,
    Point2D,
    trilaterate,
)


def lstsq_oracle(anchors, dists):
    """Independent route: linearize against anchor A for both B and C and solve numerically."""
    a = anchors.a
    rows, rhs = [], []
    for q, dq in zip((anchors.b, anchors.c), dists[1:]):
        rows.append([2 * (q.x - a.x), 2 * (q.y - a.y)])
        rhs.append(dists[0] ** 2 - dq**2 + q.x**2 - a.x**2 + q.y**2 - a.y**2)
    return np.linalg.solve(np.array(rows), np.array(rhs))


def test_recovers_point_3_4(right_triangle):
    d = DistanceTriple(5.0, math.sqrt(65.0), math.sqrt(45.0))
    p = trilaterate(right_triangle, d)
    assert p.x == pytest.approx(3.0, abs=1e-9)
    assert p.y == pytest.approx(4.0, abs=1e-9)


def test_circumcenter(right_triangle):
    r = math.sqrt(50.0)
    p = trilaterate(right_triangle, DistanceTriple(r, r, r))
    assert p.x == pytest.approx(5.0, abs=1e-9)
    assert p.y == pytest.approx(5.0, abs=1e-9)


@pytest.mark.parametrize("dists", [(1.0, 2.0, 3.0), (5.0, 5.0, 5.0)])
def test_collinear_anchors_are_degenerate(dists):
    anchors = AnchorSet(Point2D(0, 0), Point2D(5, 0), Point2D(10, 0))
    with pytest.raises(DegenerateGeometry):
        trilaterate(anchors, DistanceTriple(*dists))


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_invalid_distance(right_triangle, bad):
    with pytest.raises(InvalidDistance):
        trilaterate(right_triangle, DistanceTriple(1.0, bad, 2.0))


def test_inconsistent_distances_still_solved(right_triangle):
    # no point has ranges (1, 1, 1) to these anchors; the closed form answers anyway
    p = trilaterate(right_triangle, DistanceTriple(1.0, 1.0, 1.0))
    assert p == Point2D(5.0, 5.0)


def test_anchor_validation():
    with pytest.raises(DegenerateGeometry):
        AnchorSet(Point2D(1, 1), Point2D(1, 1), Point2D(2, 3)).validate()
    AnchorSet(Point2D(0, 0), Point2D(1, 0), Point2D(0, 1)).validate()


@settings(max_examples=1000, deadline=None)
@given(anchor_sets(), points)
def test_exact_recovery(anchors, p):
    assume(min(exact_distances(anchors, p)) > 1e-3)
    got = trilaterate(anchors, DistanceTriple(*exact_distances(anchors, p)))
    assert got.distance_to(p) < 1e-9


@settings(max_examples=300, deadline=None)
@given(anchor_sets(), points)
def test_agrees_with_independent_linear_solve(anchors, p):
    dists = exact_distances(anchors, p)
    assume(min(dists) > 1e-3)
    noisy = tuple(d * f for d, f in zip(dists, (1.1, 0.9, 1.05)))
    got = trilaterate(anchors, DistanceTriple(*noisy))
    ref = lstsq_oracle(anchors, noisy)
    scale = max(1.0, abs(ref[0]), abs(ref[1]))
    assert abs(got.x - ref[0]) < 1e-7 * scale
    assert abs(got.y - ref[1]) < 1e-7 * scale


@settings(max_examples=300, deadline=None)
@given(anchor_sets(), points, points)
def test_translation_equivariance(anchors, p, shift):
    assume(min(exact_distances(anchors, p)) > 1e-3)
    moved = AnchorSet(*(q + shift for q in anchors))
    base = trilaterate(anchors, DistanceTriple(*exact_distances(anchors, p)))
    got = trilaterate(moved, DistanceTriple(*exact_distances(moved, p + shift)))
    assert got.distance_to(base + shift) < 1e-9


def test_deterministic(right_triangle):
    d = DistanceTriple(4.2, 7.7, 6.1)
    first = trilaterate(right_triangle, d)
    assert all(trilaterate(right_triangle, d) == first for _ in range(10))

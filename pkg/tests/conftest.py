import math

import pytest
from hypothesis import assume
from hypothesis import strategies as st

from hybridloc.geom import AnchorSet, Point2D

coord = st.floats(min_value=0.0, max_value=100.0, allow_nan=False, allow_infinity=False)
points = st.builds(Point2D, coord, coord)


def triangle_area(anchors: AnchorSet) -> float:
    return abs(anchors.cross()) / 2.0


@st.composite
def anchor_sets(draw, min_area=1.0):
    a, b, c = draw(points), draw(points), draw(points)
    anchors = AnchorSet(a, b, c)
    assume(triangle_area(anchors) > min_area)
    return anchors


@pytest.fixture
def right_triangle():
    return AnchorSet(Point2D(0.0, 0.0), Point2D(10.0, 0.0), Point2D(0.0, 10.0))


def exact_distances(anchors, p):
    return tuple(math.hypot(p.x - q.x, p.y - q.y) for q in anchors)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

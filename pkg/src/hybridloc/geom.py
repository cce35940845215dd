"""Closed-form trilateration from three anchor distances."""

from __future__ import annotations

import math
from dataclasses import dataclass

# Denominators below this magnitude (m^2) mean the anchors are (nearly) collinear.
COLLINEARITY_TOL = 1e-9


class DegenerateGeometry(ValueError):
    """Anchors are collinear (or coincident), so the closed form has no solution."""


class InvalidDistance(ValueError):
    """A range is non-positive or non-finite."""


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def __sub__(self, other: Point2D) -> Point2D:
        return Point2D(self.x - other.x, self.y - other.y)

    def __add__(self, other: Point2D) -> Point2D:
        return Point2D(self.x + other.x, self.y + other.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def distance_to(self, other: Point2D) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y)


@dataclass(frozen=True)
class AnchorSet:
    """Positions of access points A, B and C."""

    a: Point2D
    b: Point2D
    c: Point2D

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def cross(self) -> float:
        """z-component of (b - a) x (c - a); twice the signed triangle area."""
        u, v = self.b - self.a, self.c - self.a
        return u.x * v.y - u.y * v.x

    def validate(self) -> None:
        pts = (self.a, self.b, self.c)
        if not all(p.is_finite() for p in pts):
            raise DegenerateGeometry("anchor coordinates must be finite")
        if self.a == self.b or self.b == self.c or self.a == self.c:
            raise DegenerateGeometry("anchors must be pairwise distinct")
        if abs(self.cross()) <= COLLINEARITY_TOL:
            raise DegenerateGeometry("anchors are collinear")


@dataclass(frozen=True)
class DistanceTriple:
    d1: float
    d2: float
    d3: float

    def validate(self) -> None:
        for name, d in (("d1", self.d1), ("d2", self.d2), ("d3", self.d3)):
            if not math.isfinite(d) or d <= 0.0:
                raise InvalidDistance(f"{name}={d!r} must be positive and finite")


def trilaterate(anchors: AnchorSet, dists: DistanceTriple) -> Point2D:
    """Solve for the position whose ranges to A, B, C are ``dists``.

    Subtracting the circle equations pairwise (A-B, B-C) gives a 2x2 linear
    system, solved here by Cramer's rule exactly as written in closed form.
    Noisy, mutually inconsistent ranges are not rejected: the formula still
    returns a point, and judging its plausibility is left to the caller.

    Raises:
        InvalidDistance: if any range is non-positive or non-finite.
        DegenerateGeometry: if the system determinant is below
            ``COLLINEARITY_TOL``.
    """
    dists.validate()
    (xa, ya), (xb, yb), (xc, yc) = ((p.x, p.y) for p in anchors)
    d1, d2, d3 = dists.d1, dists.d2, dists.d3

    c1 = d1**2 - d2**2 - xa**2 + xb**2 - ya**2 + yb**2
    c2 = d2**2 - d3**2 - xb**2 + xc**2 - yb**2 + yc**2
    ax1, ay1 = -2 * xa + 2 * xb, -2 * ya + 2 * yb
    ax2, ay2 = -2 * xb + 2 * xc, -2 * yb + 2 * yc

    den_x = ay2 * ax1 - ay1 * ax2
    den_y = ay1 * ax2 - ay2 * ax1
    if abs(den_x) < COLLINEARITY_TOL or abs(den_y) < COLLINEARITY_TOL:
        raise DegenerateGeometry(f"anchor determinant {den_x:.3g} is below tolerance")

    x = (c1 * ay2 - c2 * ay1) / den_x
    y = (c1 * ax2 - c2 * ax1) / den_y
    return Point2D(x, y)

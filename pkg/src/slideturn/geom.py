"""Angles, points, directed lines and points of the cylinder R^2 x S^1.

Directions are plain floats (radians).  ``canonical_angle`` maps any angle
into ``[-pi, pi)``; comparisons that need an orientation go through
``ccw_diff``, which measures the counterclockwise turn from one direction
to another in ``[0, 2*pi)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

PI = math.pi
TWO_PI = 2.0 * math.pi

#: absolute tolerance for On/Left/Right decisions on inexact bodies
TAU = 1e-9

#: two edge directions closer than this are considered equal
ANGLE_TOL = 1e-12


class Point(NamedTuple):
    x: float
    y: float

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])

    def __mul__(self, k):  # type: ignore[override]
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self):
        return Point(-self.x, -self.y)

    def dot(self, other) -> float:
        return self.x * other[0] + self.y * other[1]

    def cross(self, other) -> float:
        return self.x * other[1] - self.y * other[0]

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinates: {p!r}")
    return Point(x, y)


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def midpoint(a, b) -> Point:
    return Point(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))


def canonical_angle(theta: float) -> float:
    """Reduce ``theta`` modulo 2*pi into ``[-pi, pi)``."""
    r = math.fmod(theta + PI, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    out = r - PI
    if out >= PI:
        out = -PI
    return out


def ccw_diff(a: float, b: float) -> float:
    """Counterclockwise turn from direction ``a`` to ``b``, in ``[0, 2*pi)``."""
    r = math.fmod(b - a, TWO_PI)
    if r < 0.0:
        r += TWO_PI
    if r >= TWO_PI:
        r = 0.0
    return r


def ccw_between(a: float, b: float, c: float) -> bool:
    """True when ``b`` lies on the closed counterclockwise arc from ``a`` to ``c``."""
    return ccw_diff(a, b) <= ccw_diff(a, c)


def angle_dist(a: float, b: float) -> float:
    """Unsigned distance between two directions on S^1, in ``[0, pi]``."""
    d = ccw_diff(a, b)
    return min(d, TWO_PI - d)


def angles_close(a: float, b: float, tol: float = ANGLE_TOL) -> bool:
    return angle_dist(a, b) <= tol


def unit(theta: float) -> Point:
    """The embedding of a direction into the unit circle."""
    return Point(math.cos(theta), math.sin(theta))


embed = unit


def right_normal(theta: float) -> Point:
    """Unit vector pointing to the right of direction ``theta``."""
    return Point(math.sin(theta), -math.cos(theta))


def left_normal(theta: float) -> Point:
    return Point(-math.sin(theta), math.cos(theta))


def direction_of(v) -> float:
    return canonical_angle(math.atan2(v[1], v[0]))


def cross3(o, a, b) -> float:
    """Orientation of the triple; positive for a left turn."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class DirectedLine:
    base: Point
    dir: float

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "dir", canonical_angle(float(self.dir)))

    @classmethod
    def through(cls, a, b) -> "DirectedLine":
        return cls(as_point(a), direction_of((b[0] - a[0], b[1] - a[1])))

    @property
    def unit(self) -> Point:
        return unit(self.dir)

    @property
    def left_normal(self) -> Point:
        return left_normal(self.dir)

    def signed_side(self, X) -> float:
        u = self.unit
        return u.x * (X[1] - self.base.y) - u.y * (X[0] - self.base.x)

    def offset(self) -> float:
        """Signed distance of the origin-facing offset: ``<left normal, base>``."""
        return self.left_normal.dot(self.base)

    def reversed(self) -> "DirectedLine":
        return DirectedLine(self.base, self.dir + PI)

    def point_at(self, t: float) -> Point:
        return self.base + self.unit * t

    def same_line(self, other: "DirectedLine", tol: float = TAU) -> bool:
        return (
            angles_close(self.dir, other.dir, tol)
            and abs(self.signed_side(other.base)) <= tol
            and abs(other.signed_side(self.base)) <= tol
        )


def signed_side(line: DirectedLine, X) -> float:
    """Signed perpendicular distance from ``X`` to ``line``; positive on the left."""
    return line.signed_side(X)


def line_gap(a: DirectedLine, b: DirectedLine) -> float:
    """Distance between two non-directed lines.

    Max of the angular gap and the offset gap, minimised over the two
    orientations of ``b``.
    """

    def directed(p: DirectedLine, q: DirectedLine) -> float:
        return max(angle_dist(p.dir, q.dir), abs(p.offset() - q.offset()))

    return min(directed(a, b), directed(a, b.reversed()))


@dataclass(frozen=True)
class CylinderPoint:
    """A point ``(P, theta)`` of R^2 x S^1, viewed in R^4 as (x, y, cos, sin)."""

    point: Point
    dir: float

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.point))
        object.__setattr__(self, "dir", canonical_angle(float(self.dir)))

    def embed(self) -> tuple[float, float, float, float]:
        return (self.point.x, self.point.y, math.cos(self.dir), math.sin(self.dir))

    @property
    def line(self) -> DirectedLine:
        return DirectedLine(self.point, self.dir)


def manhattan4(a: CylinderPoint, b: CylinderPoint) -> float:
    """Sum of the planar distance and the chord distance of the directions."""
    return dist(a.point, b.point) + dist(unit(a.dir), unit(b.dir))


def euclid4(a: CylinderPoint, b: CylinderPoint) -> float:
    ea, eb = a.embed(), b.embed()
    return math.sqrt(sum((p - q) ** 2 for p, q in zip(ea, eb)))

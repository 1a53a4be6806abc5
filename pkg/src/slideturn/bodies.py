"""Nonempty compact convex sets in the plane.

Five representations are supported: convex polygons, discs, segments,
single points and generic bodies given by a support function together
with an extreme-point callback.  Polygons, segments and points share the
:class:`Polytope` machinery (a cyclic vertex list with edge directions).

The support value of a body for direction ``alpha`` is
``max <X, right_normal(alpha)>`` over the body: the unique supporting line
of direction ``alpha`` is ``{X : <X, right_normal(alpha)> = support(alpha)}``
and the body lies on its left.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import InteriorRequired, InvalidBody
from .geom import (
    ANGLE_TOL,
    PI,
    TAU,
    TWO_PI,
    Point,
    angles_close,
    as_point,
    canonical_angle,
    ccw_diff,
    dist,
    direction_of,
    right_normal,
    unit,
)

logger = logging.getLogger(__name__)


class Location(enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class Single:
    point: Point

    @property
    def first(self) -> Point:
        return self.point

    @property
    def points(self) -> tuple[Point, ...]:
        return (self.point,)


@dataclass(frozen=True)
class Edge:
    """A face ``start -> end`` traversed in the supporting line's direction."""

    start: Point
    end: Point

    @property
    def first(self) -> Point:
        return self.start

    @property
    def points(self) -> tuple[Point, ...]:
        return (self.start, self.end)


ExtremeSet = Single | Edge


def project_to_segment(p, a, b) -> Point:
    ax, ay = a
    dx, dy = b[0] - ax, b[1] - ay
    den = dx * dx + dy * dy
    if den == 0.0:
        return Point(ax, ay)
    t = ((p[0] - ax) * dx + (p[1] - ay) * dy) / den
    if t <= 0.0:
        return Point(ax, ay)
    if t >= 1.0:
        return Point(b[0], b[1])
    return Point(ax + t * dx, ay + t * dy)


class ConvexBody:
    """Common interface.  Subclasses are immutable."""

    has_interior: bool = True

    def support(self, alpha: float) -> float:
        raise NotImplementedError

    def extreme_set(self, alpha: float) -> ExtremeSet:
        raise NotImplementedError

    def contains(self, X, tol: float = TAU) -> Location:
        raise NotImplementedError

    def perimeter(self) -> float:
        raise NotImplementedError

    def nearest_point(self, X) -> Point:
        raise NotImplementedError

    def interior_point(self) -> Point:
        raise NotImplementedError

    def boundary_samples(self, n: int) -> np.ndarray:
        """``(n, 2)`` array of boundary points in counterclockwise order."""
        raise NotImplementedError

    def ray_boundary_hit(self, O, d: float) -> Point:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def distance_to(self, X) -> float:
        return dist(X, self.nearest_point(X))

    def width(self, alpha: float) -> float:
        return self.support(alpha) + self.support(alpha + PI)


# ---------------------------------------------------------------------------
# polytopes


class Polytope(ConvexBody):
    """Cyclic vertex list; edge ``i`` runs from vertex ``i`` to vertex ``i+1``."""

    def __init__(self, vertices: Sequence[Point]):
        self.vertices: tuple[Point, ...] = tuple(vertices)
        k = len(self.vertices)
        if k >= 2:
            self.edge_dirs = tuple(
                direction_of(self.vertices[(i + 1) % k] - self.vertices[i]) for i in range(k)
            )
        else:
            self.edge_dirs = ()

    def __repr__(self):
        return f"{type(self).__name__}({list(map(tuple, self.vertices))})"

    def __eq__(self, other):
        return type(self) is type(other) and self.vertices == other.vertices

    def __hash__(self):
        return hash((type(self).__name__, self.vertices))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        k = self.n
        return self.vertices[i % k], self.vertices[(i + 1) % k]

    def exterior_angle(self, i: int) -> float:
        """Turn at vertex ``i`` from the incoming to the outgoing edge direction."""
        if self.n == 1:
            return TWO_PI
        return ccw_diff(self.edge_dirs[i - 1], self.edge_dirs[i])

    def support(self, alpha: float) -> float:
        r = right_normal(alpha)
        return max(v.dot(r) for v in self.vertices)

    def extreme_set(self, alpha: float) -> ExtremeSet:
        k = self.n
        if k == 1:
            return Single(self.vertices[0])
        for i, phi in enumerate(self.edge_dirs):
            if angles_close(alpha, phi):
                a, b = self.edge(i)
                return Edge(a, b)
        for i in range(k):
            prev = self.edge_dirs[i - 1]
            turn = ccw_diff(prev, alpha)
            if 0.0 < turn < ccw_diff(prev, self.edge_dirs[i]):
                return Single(self.vertices[i])
        # alpha sits within ANGLE_TOL-scale rounding of an edge direction
        i = max(range(k), key=lambda j: self.vertices[j].dot(right_normal(alpha)))
        return Single(self.vertices[i])

    def vertex_index(self, P, tol: float = TAU) -> int | None:
        for i, v in enumerate(self.vertices):
            if dist(v, P) <= tol:
                return i
        return None

    def perimeter(self) -> float:
        if self.n == 1:
            return 0.0
        return math.fsum(dist(*self.edge(i)) for i in range(self.n))

    def boundary_samples(self, n: int) -> np.ndarray:
        if self.n == 1:
            return np.repeat(np.array([self.vertices[0]], dtype=float), n, axis=0)
        lengths = np.array([dist(*self.edge(i)) for i in range(self.n)])
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        s = np.linspace(0.0, cum[-1], n, endpoint=False)
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, self.n - 1)
        V = np.array(self.vertices, dtype=float)
        W = np.roll(V, -1, axis=0)
        frac = (s - cum[idx]) / lengths[idx]
        return V[idx] + (W[idx] - V[idx]) * frac[:, None]


class Polygon(Polytope):
    """Convex polygon with at least three strictly counterclockwise vertices.

    Input may be clockwise and may contain repeated or collinear vertices;
    those are removed.  Non-convex input raises :class:`InvalidBody`.
    """

    def __init__(self, vertices: Sequence):
        super().__init__(_canonical_ccw([as_point(v) for v in vertices]))

    def contains(self, X, tol: float = TAU) -> Location:
        m = min(self._edge_signed(i, X) for i in range(self.n))
        if m > tol:
            return Location.INTERIOR
        if m < -tol:
            return Location.OUTSIDE
        return Location.BOUNDARY

    def _edge_signed(self, i: int, X) -> float:
        a, b = self.edge(i)
        ex, ey = b.x - a.x, b.y - a.y
        return (ex * (X[1] - a.y) - ey * (X[0] - a.x)) / math.hypot(ex, ey)

    def nearest_point(self, X) -> Point:
        X = as_point(X)
        if all(self._edge_signed(i, X) >= 0.0 for i in range(self.n)):
            return X
        return min(
            (project_to_segment(X, *self.edge(i)) for i in range(self.n)),
            key=lambda q: dist(q, X),
        )

    def area(self) -> float:
        V = self.vertices
        return 0.5 * math.fsum(V[i].cross(V[(i + 1) % self.n]) for i in range(self.n))

    def interior_point(self) -> Point:
        """Area centroid."""
        V = self.vertices
        a = cx = cy = 0.0
        for i in range(self.n):
            p, q = V[i], V[(i + 1) % self.n]
            c = p.cross(q)
            a += c
            cx += (p.x + q.x) * c
            cy += (p.y + q.y) * c
        return Point(cx / (3.0 * a), cy / (3.0 * a))

    def ray_boundary_hit(self, O, d: float) -> Point:
        O = as_point(O)
        if self.contains(O) is not Location.INTERIOR:
            raise InteriorRequired(f"{tuple(O)} is not an interior point")
        u = unit(d)
        best = math.inf
        for i in range(self.n):
            nrm = right_normal(self.edge_dirs[i])
            den = nrm.dot(u)
            if den > 0.0:
                best = min(best, nrm.dot(self.vertices[i] - O) / den)
        return O + u * best

    def to_json(self) -> dict:
        return {"type": "polygon", "vertices": [list(v) for v in self.vertices]}


class Segment(Polytope):
    has_interior = False

    def __init__(self, a, b):
        a, b = as_point(a), as_point(b)
        if a == b:
            raise InvalidBody("segment endpoints coincide; use SinglePoint")
        super().__init__((a, b))

    @property
    def a(self) -> Point:
        return self.vertices[0]

    @property
    def b(self) -> Point:
        return self.vertices[1]

    def contains(self, X, tol: float = TAU) -> Location:
        if dist(X, project_to_segment(X, self.a, self.b)) <= tol:
            return Location.BOUNDARY
        return Location.OUTSIDE

    def nearest_point(self, X) -> Point:
        return project_to_segment(X, self.a, self.b)

    def interior_point(self) -> Point:
        return Point(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))

    def ray_boundary_hit(self, O, d: float) -> Point:
        raise InteriorRequired("a segment has empty interior")

    def to_json(self) -> dict:
        return {"type": "segment", "a": list(self.a), "b": list(self.b)}


class SinglePoint(Polytope):
    has_interior = False

    def __init__(self, p):
        super().__init__((as_point(p),))

    @property
    def p(self) -> Point:
        return self.vertices[0]

    def contains(self, X, tol: float = TAU) -> Location:
        return Location.BOUNDARY if dist(X, self.p) <= tol else Location.OUTSIDE

    def nearest_point(self, X) -> Point:
        return self.p

    def interior_point(self) -> Point:
        return self.p

    def ray_boundary_hit(self, O, d: float) -> Point:
        raise InteriorRequired("a single point has empty interior")

    def to_json(self) -> dict:
        return {"type": "point", "p": list(self.p)}


def _canonical_ccw(pts: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in pts:
        if not out or p != out[-1]:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    if len(out) < 3:
        raise InvalidBody("a polygon needs at least three distinct vertices")
    area2 = math.fsum(out[i].cross(out[(i + 1) % len(out)]) for i in range(len(out)))
    if area2 < 0.0:
        out.reverse()
    elif area2 == 0.0:
        raise InvalidBody("polygon has zero area")

    changed = True
    while changed and len(out) >= 3:
        changed = False
        k = len(out)
        for i in range(k):
            o, a, b = out[i - 1], out[i], out[(i + 1) % k]
            e1, e2 = a - o, b - a
            c = e1.cross(e2)
            if abs(c) <= 1e-12 * e1.norm() * e2.norm():
                if e1.dot(e2) < 0.0:
                    raise InvalidBody("polygon doubles back on itself")
                del out[i]
                changed = True
                break
    if len(out) < 3:
        raise InvalidBody("polygon is degenerate after dropping collinear vertices")
    k = len(out)
    turning = 0.0
    for i in range(k):
        o, a, b = out[i - 1], out[i], out[(i + 1) % k]
        if (a - o).cross(b - a) <= 0.0:
            raise InvalidBody("polygon is not convex")
        turning += ccw_diff(direction_of(a - o), direction_of(b - a))
    if abs(turning - TWO_PI) > 1e-9:
        raise InvalidBody("polygon winds more than once")
    return out


# ---------------------------------------------------------------------------
# discs


class Disc(ConvexBody):
    def __init__(self, center, radius: float):
        self.center = as_point(center)
        self.radius = float(radius)
        if not self.radius > 0.0 or not math.isfinite(self.radius):
            raise InvalidBody("disc radius must be positive; radius 0 is a SinglePoint")

    def __repr__(self):
        return f"Disc({tuple(self.center)}, {self.radius})"

    def __eq__(self, other):
        return isinstance(other, Disc) and (self.center, self.radius) == (other.center, other.radius)

    def __hash__(self):
        return hash(("Disc", self.center, self.radius))

    def support(self, alpha: float) -> float:
        return self.center.dot(right_normal(alpha)) + self.radius

    def extreme_set(self, alpha: float) -> ExtremeSet:
        return Single(self.center + right_normal(alpha) * self.radius)

    def contains(self, X, tol: float = TAU) -> Location:
        g = dist(X, self.center) - self.radius
        if g < -tol:
            return Location.INTERIOR
        if g > tol:
            return Location.OUTSIDE
        return Location.BOUNDARY

    def perimeter(self) -> float:
        return TWO_PI * self.radius

    def nearest_point(self, X) -> Point:
        X = as_point(X)
        d = dist(X, self.center)
        if d <= self.radius:
            return X
        return self.center + (X - self.center) * (self.radius / d)

    def interior_point(self) -> Point:
        return self.center

    def boundary_samples(self, n: int) -> np.ndarray:
        # counterclockwise, starting at the tangency point of direction 0
        th = np.linspace(0.0, TWO_PI, n, endpoint=False)
        return np.column_stack(
            [self.center.x + self.radius * np.sin(th), self.center.y - self.radius * np.cos(th)]
        )

    def ray_boundary_hit(self, O, d: float) -> Point:
        O = as_point(O)
        if self.contains(O) is not Location.INTERIOR:
            raise InteriorRequired(f"{tuple(O)} is not an interior point")
        u = unit(d)
        w = O - self.center
        b = u.dot(w)
        t = -b + math.sqrt(b * b - (w.dot(w) - self.radius**2))
        return O + u * t

    def to_json(self) -> dict:
        return {"type": "disc", "center": list(self.center), "radius": self.radius}


# ---------------------------------------------------------------------------
# generic bodies


class Generic(ConvexBody):
    """Body given by ``support(alpha)`` and ``extreme(alpha)`` callbacks.

    Both callbacks use the same convention as every other body: the
    supporting line of direction ``alpha`` carries the extreme point and
    the body lies on its left.  Queries that have no closed form are
    answered by sampling ``resolution`` directions followed by a bounded
    scalar refinement, so they are accurate to roughly ``1e-9``.
    """

    def __init__(
        self,
        support: Callable[[float], float],
        extreme: Callable[[float], Sequence[float]],
        resolution: int = 720,
        name: str = "generic",
    ):
        self._support = support
        self._extreme = extreme
        self.resolution = int(resolution)
        self.name = name
        self._check()
        probe = np.linspace(-PI, PI, 64, endpoint=False)
        self.has_interior = min(self.width(a) for a in probe) > TAU

    def __repr__(self):
        return f"Generic({self.name})"

    def _check(self) -> None:
        probe = np.linspace(-PI, PI, 64, endpoint=False)
        for a in probe:
            h = self.support(a)
            e = self.extreme(a)
            if abs(e.dot(right_normal(a)) - h) > 1e-7 * max(1.0, abs(h)):
                raise InvalidBody(f"extreme point inconsistent with support value at {a:.6g}")
        # sublinearity of the support function on sampled normal pairs
        rng = np.random.default_rng(0)
        for a, b in rng.uniform(-PI, PI, size=(64, 2)):
            n1, n2 = right_normal(a), right_normal(b)
            s = n1 + n2
            ns = s.norm()
            if ns < 1e-6:
                continue
            c = math.atan2(s.x, -s.y)  # direction whose right normal is s / |s|
            lhs = self.support(a) + self.support(b)
            rhs = ns * self.support(c)
            if rhs > lhs + 1e-7 * max(1.0, abs(lhs)):
                raise InvalidBody("support function is not sublinear")

    def support(self, alpha: float) -> float:
        return float(self._support(canonical_angle(alpha)))

    def extreme(self, alpha: float) -> Point:
        return as_point(self._extreme(canonical_angle(alpha)))

    def extreme_set(self, alpha: float) -> ExtremeSet:
        return Single(self.extreme(alpha))

    def _refine_max(self, fn: Callable[[float], float]) -> tuple[float, float]:
        grid = np.linspace(-PI, PI, self.resolution, endpoint=False)
        vals = [fn(a) for a in grid]
        j = int(np.argmax(vals))
        step = TWO_PI / self.resolution
        res = minimize_scalar(
            lambda a: -fn(a),
            bounds=(grid[j] - step, grid[j] + step),
            method="bounded",
            options={"xatol": 1e-12},
        )
        if -res.fun >= vals[j]:
            return float(res.x), float(-res.fun)
        return float(grid[j]), float(vals[j])

    def margin(self, X) -> float:
        """``max_alpha <X, right_normal(alpha)> - support(alpha)``.

        Negative inside, positive outside (equal to the distance there).
        """
        X = as_point(X)
        return self._refine_max(lambda a: X.dot(right_normal(a)) - self.support(a))[1]

    def contains(self, X, tol: float = TAU) -> Location:
        m = self.margin(X)
        if m < -tol:
            return Location.INTERIOR
        if m > tol:
            return Location.OUTSIDE
        return Location.BOUNDARY

    def nearest_point(self, X) -> Point:
        X = as_point(X)
        a, m = self._refine_max(lambda a: X.dot(right_normal(a)) - self.support(a))
        if m <= 0.0:
            return X
        return self.extreme(a)

    def interior_point(self) -> Point:
        pts = [self.extreme(a) for a in np.linspace(-PI, PI, 64, endpoint=False)]
        return Point(sum(p.x for p in pts) / len(pts), sum(p.y for p in pts) / len(pts))

    def boundary_samples(self, n: int) -> np.ndarray:
        return np.array([self.extreme(a) for a in np.linspace(0.0, TWO_PI, n, endpoint=False)])

    def perimeter(self, n: int = 4096) -> float:
        """Inscribed-polygon length, Richardson-extrapolated from ``n`` and ``2n``."""

        def inscribed(m):
            P = self.boundary_samples(m)
            return float(np.sum(np.hypot(*(np.roll(P, -1, axis=0) - P).T)))

        p1, p2 = inscribed(n), inscribed(2 * n)
        est = p2 + (p2 - p1) / 3.0
        if abs(p2 - p1) > 1e-6 * max(1.0, p2):
            logger.warning("generic perimeter converging slowly: %.3g", abs(p2 - p1))
        return est

    def ray_boundary_hit(self, O, d: float) -> Point:
        O = as_point(O)
        if self.contains(O) is not Location.INTERIOR:
            raise InteriorRequired(f"{tuple(O)} is not an interior point")
        u = unit(d)

        def neg_exit(a):
            den = right_normal(a).dot(u)
            if den <= 1e-12:
                return -math.inf
            return -(self.support(a) - right_normal(a).dot(O)) / den

        _, best = self._refine_max(neg_exit)
        return O + u * (-best)

    def to_json(self) -> dict:
        raise TypeError("generic bodies have no JSON form")


# ---------------------------------------------------------------------------
# constructors


def polygon(vertices: Sequence) -> Polygon:
    return Polygon(vertices)


def disc(center, radius: float) -> ConvexBody:
    """A disc; radius 0 yields a :class:`SinglePoint`."""
    if radius == 0:
        return SinglePoint(center)
    return Disc(center, radius)


def segment(a, b) -> ConvexBody:
    """A segment; coincident endpoints yield a :class:`SinglePoint`."""
    a, b = as_point(a), as_point(b)
    if a == b:
        return SinglePoint(a)
    return Segment(a, b)


def point(p) -> SinglePoint:
    return SinglePoint(p)


def ellipse(center, a: float, b: float, resolution: int = 720) -> Generic:
    """Axis-aligned ellipse as a :class:`Generic` body (handy for tests and demos)."""
    cx, cy = as_point(center)

    def h(alpha):
        s, c = math.sin(alpha), math.cos(alpha)
        return cx * s - cy * c + math.sqrt((a * s) ** 2 + (b * c) ** 2)

    def e(alpha):
        s, c = math.sin(alpha), math.cos(alpha)
        k = math.sqrt((a * s) ** 2 + (b * c) ** 2)
        return (cx + a * a * s / k, cy - b * b * c / k)

    return Generic(h, e, resolution=resolution, name=f"ellipse({a},{b})")


def body_from_json(obj: dict) -> ConvexBody:
    """Build a body from the JSON schema used by the CLI."""
    try:
        kind = obj["type"]
        if kind == "polygon":
            return Polygon(obj["vertices"])
        if kind == "disc":
            return disc(obj["center"], float(obj["radius"]))
        if kind == "segment":
            return segment(obj["a"], obj["b"])
        if kind == "point":
            return SinglePoint(obj["p"])
    except (KeyError, TypeError, IndexError) as exc:
        raise InvalidBody(f"malformed body: {exc}") from exc
    raise InvalidBody(f"unknown body type {obj.get('type')!r}")


# module-level spellings of the body queries


def extreme_set(H: ConvexBody, alpha: float) -> ExtremeSet:
    return H.extreme_set(alpha)


def contains(H: ConvexBody, X, tol: float = TAU) -> Location:
    return H.contains(X, tol)


def ray_boundary_hit(H: ConvexBody, O, d: float) -> Point:
    return H.ray_boundary_hit(O, d)


def perimeter(H: ConvexBody) -> float:
    return H.perimeter()


__all__ = [
    "ANGLE_TOL",
    "ConvexBody",
    "Disc",
    "Edge",
    "ExtremeSet",
    "Generic",
    "Location",
    "Polygon",
    "Polytope",
    "Segment",
    "Single",
    "SinglePoint",
    "body_from_json",
    "contains",
    "disc",
    "ellipse",
    "extreme_set",
    "perimeter",
    "point",
    "polygon",
    "ray_boundary_hit",
    "segment",
]

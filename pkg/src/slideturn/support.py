"""Supporting lines, semitangents and strict separation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .bodies import (
    ConvexBody,
    Disc,
    Generic,
    Location,
    Polytope,
    SinglePoint,
    project_to_segment,
)
from .errors import DegenerateBody, NotDisjoint, NotOnBoundary
from .geom import (
    PI,
    TAU,
    TWO_PI,
    DirectedLine,
    Point,
    ccw_diff,
    cross3,
    dist,
    direction_of,
    midpoint,
    right_normal,
)


@dataclass(frozen=True)
class PointedSupportingLine:
    point: Point
    line: DirectedLine


@dataclass(frozen=True)
class SemitangentPair:
    first: DirectedLine
    last: DirectedLine

    @property
    def is_corner(self) -> bool:
        return self.first.dir != self.last.dir

    @property
    def fan(self) -> float:
        """Counterclockwise opening of the fan of supporting directions."""
        return ccw_diff(self.first.dir, self.last.dir)


def supporting_line(H: ConvexBody, alpha: float) -> PointedSupportingLine:
    """The unique supporting line of direction ``alpha``.

    The witness point is the counterclockwise-first point of the face
    ``line & H``.
    """
    p = H.extreme_set(alpha).first
    return PointedSupportingLine(p, DirectedLine(p, alpha))


def semitangents(H: ConvexBody, P, tol: float = TAU) -> SemitangentPair:
    """First and last semitangent of ``H`` through the boundary point ``P``."""
    if not H.has_interior:
        raise DegenerateBody("semitangents need a body with nonempty interior")
    P = Point(float(P[0]), float(P[1]))
    if H.contains(P, tol) is not Location.BOUNDARY:
        raise NotOnBoundary(f"{tuple(P)} is not on the boundary")

    if isinstance(H, Polytope):
        i = H.vertex_index(P, tol)
        if i is not None:
            return SemitangentPair(
                DirectedLine(P, H.edge_dirs[i - 1]), DirectedLine(P, H.edge_dirs[i])
            )
        for i in range(H.n):
            a, b = H.edge(i)
            if dist(P, project_to_segment(P, a, b)) <= tol:
                line = DirectedLine(P, H.edge_dirs[i])
                return SemitangentPair(line, line)
        raise NotOnBoundary(f"{tuple(P)} is not on the boundary")

    if isinstance(H, Disc):
        line = DirectedLine(P, direction_of(P - H.center) + PI / 2)
        return SemitangentPair(line, line)

    return _generic_semitangents(H, P)


def _generic_semitangents(H: Generic, P: Point, fan_tol: float = 1e-13) -> SemitangentPair:
    # gap(a) >= 0 everywhere, and vanishes exactly on the fan of supporting directions.
    # Near a regular point gap is quadratic, so fans narrower than 1e-5 count as regular.
    def gap(a):
        return H.support(a) - P.dot(right_normal(a))

    grid = np.linspace(-PI, PI, H.resolution, endpoint=False)
    j = int(np.argmin([gap(a) for a in grid]))
    step = TWO_PI / H.resolution
    res = minimize_scalar(
        gap, bounds=(grid[j] - step, grid[j] + step), method="bounded", options={"xatol": 1e-12}
    )
    mid = float(res.x)

    def edge_of_fan(sign):
        lo, hi = 0.0, PI / 2
        if gap(mid + sign * lo) > fan_tol:
            return mid
        for _ in range(60):
            m = 0.5 * (lo + hi)
            if gap(mid + sign * m) <= fan_tol:
                lo = m
            else:
                hi = m
        return mid + sign * lo

    first, last = edge_of_fan(-1.0), edge_of_fan(1.0)
    if last - first < 1e-5:
        first = last = mid
    return SemitangentPair(DirectedLine(P, first), DirectedLine(P, last))


# ---------------------------------------------------------------------------
# distance between bodies


def _segments_intersection(a, b, c, d):
    d1, d2 = cross3(c, d, a), cross3(c, d, b)
    d3, d4 = cross3(a, b, c), cross3(a, b, d)
    if ((d1 > 0 > d2) or (d1 < 0 < d2)) and ((d3 > 0 > d4) or (d3 < 0 < d4)):
        t = d1 / (d1 - d2)
        return Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))
    return None


def _segment_pair(a, b, c, d) -> tuple[Point, Point, float]:
    x = _segments_intersection(a, b, c, d)
    if x is not None:
        return x, x, 0.0
    cands = []
    for p in (a, b):
        q = project_to_segment(p, c, d)
        cands.append((Point(*p), q, dist(p, q)))
    for q in (c, d):
        p = project_to_segment(q, a, b)
        cands.append((p, Point(*q), dist(p, q)))
    return min(cands, key=lambda t: t[2])


def _polytope_edges(H: Polytope):
    if H.n == 1:
        return [(H.vertices[0], H.vertices[0])]
    if H.n == 2:
        return [H.edge(0)]
    return [H.edge(i) for i in range(H.n)]


def _polytope_pair(A: Polytope, B: Polytope) -> tuple[Point, Point, float]:
    for X, Y in ((A, B), (B, A)):
        if Y.has_interior:
            for v in X.vertices:
                if Y.contains(v, 0.0) is not Location.OUTSIDE:
                    return v, v, 0.0
    best = None
    for a, b in _polytope_edges(A):
        for c, d in _polytope_edges(B):
            cand = _segment_pair(a, b, c, d)
            if best is None or cand[2] < best[2]:
                best = cand
                if best[2] == 0.0:
                    return best
    return best


def _core(H: ConvexBody) -> tuple[Polytope, float]:
    if isinstance(H, Disc):
        return SinglePoint(H.center), H.radius
    return H, 0.0


def _generic_pair(H1: ConvexBody, H2: ConvexBody, resolution: int = 1440):
    # separation along right_normal(a): min over H2 minus max over H1
    def sep(a):
        return -H2.support(a + PI) - H1.support(a)

    grid = np.linspace(-PI, PI, resolution, endpoint=False)
    vals = [sep(a) for a in grid]
    j = int(np.argmax(vals))
    step = TWO_PI / resolution
    res = minimize_scalar(
        lambda a: -sep(a), bounds=(grid[j] - step, grid[j] + step), method="bounded",
        options={"xatol": 1e-12},
    )
    a = float(res.x) if -res.fun >= vals[j] else float(grid[j])
    p = H1.extreme_set(a).first
    q = H2.extreme_set(a + PI).first
    d = sep(a)
    if d <= 0.0:
        m = midpoint(p, q)
        return m, m, 0.0
    return p, q, d


def closest_pair(H1: ConvexBody, H2: ConvexBody) -> tuple[Point, Point, float]:
    """Points ``a`` in ``H1`` and ``b`` in ``H2`` realising the distance.

    Exact (edge-pair minimisation) for polytopes and discs.  Distance 0
    means the bodies meet and ``a == b`` is a common point.
    """
    if isinstance(H1, Generic) or isinstance(H2, Generic):
        return _generic_pair(H1, H2)
    A, r1 = _core(H1)
    B, r2 = _core(H2)
    a0, b0, d0 = _polytope_pair(A, B)
    if r1 == 0.0 and r2 == 0.0:
        return a0, b0, d0
    if d0 <= r1 + r2:
        if d0 == 0.0:
            return a0, a0, 0.0
        t = min(r1, d0) / d0
        m = a0 + (b0 - a0) * t
        return m, m, 0.0
    u = (b0 - a0) * (1.0 / d0)
    return a0 + u * r1, b0 - u * r2, d0 - r1 - r2


def separating_line(H1: ConvexBody, H2: ConvexBody, tol: float = TAU) -> DirectedLine:
    """Directed line with ``H1`` strictly on its left and ``H2`` strictly on its right.

    It is the perpendicular bisector of a closest pair.
    """
    a, b, d = closest_pair(H1, H2)
    if d <= tol:
        raise NotDisjoint(f"bodies are not disjoint (distance {d:.3g})")
    n = a - b  # left normal of the wanted direction
    return DirectedLine(midpoint(a, b), math.atan2(-n.x, n.y))


def supports(H: ConvexBody, line: DirectedLine, tol: float = TAU) -> bool:
    """True when ``H`` is in the closed left halfplane of ``line`` and touches it."""
    gap = H.support(line.dir) - line.base.dot(right_normal(line.dir))
    return abs(gap) <= tol


__all__ = [
    "PointedSupportingLine",
    "SemitangentPair",
    "closest_pair",
    "semitangents",
    "separating_line",
    "supporting_line",
    "supports",
]

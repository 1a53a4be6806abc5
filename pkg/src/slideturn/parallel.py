"""Parallel bodies and the correspondence between their boundary and the slide curve.

``H^(r) = {P : dist(P, H) <= r}``.  Its boundary is traced by pushing each
pointed supporting line ``(P, theta)`` of ``H`` a distance ``r`` to its
right; that push is ``g`` (:func:`slide_to_boundary`) and the nearest-point
map back is ``f`` (:func:`boundary_to_slide`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody, Disc, Generic, Location, Polytope, SinglePoint
from .errors import NotOnParallelBoundary, NotOnSlideCurve
from .geom import (
    PI,
    TAU,
    CylinderPoint,
    Point,
    as_point,
    ccw_diff,
    direction_of,
    dist,
    right_normal,
)
from .slide_curve import DiscArc, EdgeSlide, SlideCurve, SmoothArc, VertexTurn, slide_curve
from .support import supports

#: witnesses of the Lipschitz-in-the-small property of f and g
DELTA = 1 / 5
LIPSCHITZ_L = 9


@dataclass(frozen=True)
class OffsetEdge:
    start: Point
    end: Point
    dir: float

    @property
    def length(self) -> float:
        return dist(self.start, self.end)


@dataclass(frozen=True)
class CornerArc:
    """Counterclockwise circular arc from direction ``dir_from`` through ``sweep``."""

    center: Point
    radius: float
    dir_from: float
    sweep: float

    @property
    def length(self) -> float:
        return self.radius * self.sweep

    def point(self, t: float) -> Point:
        return self.center + right_normal(self.dir_from + t) * self.radius


@dataclass(frozen=True)
class SampledBoundary:
    points: np.ndarray

    @property
    def length(self) -> float:
        return float(np.sum(np.hypot(*np.diff(self.points, axis=0).T)))


class ParallelBody:
    """``H^(r)`` with its boundary stored as the image of the slide curve under ``g``."""

    def __init__(self, source: ConvexBody, r: float, resolution: int = 4096):
        if not r > 0:
            raise ValueError("parallel distance must be positive")
        self.source = source
        self.r = float(r)
        self.curve: SlideCurve = slide_curve(source, resolution)
        pieces = []
        for p in self.curve.pieces:
            if isinstance(p, EdgeSlide):
                n = right_normal(p.dir) * self.r
                pieces.append(OffsetEdge(p.start + n, p.end + n, p.dir))
            elif isinstance(p, VertexTurn):
                pieces.append(CornerArc(p.at, self.r, p.dir_from, p.sweep))
            elif isinstance(p, DiscArc):
                pieces.append(CornerArc(p.center, p.radius + self.r, p.dir_from, p.sweep))
            elif isinstance(p, SmoothArc):
                th = p.dir_from + p.turns
                pts = p.points + self.r * np.column_stack([np.sin(th), -np.cos(th)])
                pieces.append(SampledBoundary(pts))
        self.boundary: tuple = tuple(pieces)

    def __repr__(self):
        return f"ParallelBody({self.source!r}, r={self.r:g})"

    @property
    def perimeter(self) -> float:
        return math.fsum(p.length for p in self.boundary)

    def support(self, alpha: float) -> float:
        return self.source.support(alpha) + self.r

    def as_body(self) -> ConvexBody:
        """The parallel body as a convex body in its own right."""
        H = self.source
        if isinstance(H, Disc):
            return Disc(H.center, H.radius + self.r)
        if isinstance(H, SinglePoint):
            return Disc(H.vertices[0], self.r)
        r = self.r
        return Generic(
            lambda a: H.support(a) + r,
            lambda a: H.extreme_set(a).first + right_normal(a) * r,
            name=f"parallel({H!r}, {r:g})",
        )

    def distance_to_source(self, P) -> float:
        return dist(P, self.source.nearest_point(P))

    def on_boundary(self, P, tol: float = TAU) -> bool:
        return abs(self.distance_to_source(P) - self.r) <= tol

    def boundary_points(self, s) -> np.ndarray:
        """Points ``g(eval(s))`` for an array of slide-curve parameters."""
        x, y, t = self.curve.sample_turn(np.asarray(s, dtype=float))
        th = self.curve.start_dir + t
        return np.column_stack([x + self.r * np.sin(th), y - self.r * np.cos(th)])


def parallel_body(H: ConvexBody, r: float = 1.0) -> ParallelBody:
    return ParallelBody(H, r)


def slide_to_boundary(H: ConvexBody, q: CylinderPoint, r: float = 1.0, tol: float = TAU) -> Point:
    """``g``: push the pointed supporting line ``q`` a distance ``r`` to its right."""
    if H.contains(q.point, tol) is Location.OUTSIDE or not supports(H, q.line, tol):
        raise NotOnSlideCurve(f"{q} is not a pointed supporting line of the body")
    return q.point + right_normal(q.dir) * r


def boundary_to_slide(H: ConvexBody, P, r: float = 1.0, tol: float = TAU) -> CylinderPoint:
    """``f``: the nearest point ``P*`` of ``H`` and the supporting direction perpendicular to ``P - P*``."""
    P = as_point(P)
    Ps = H.nearest_point(P)
    d = dist(P, Ps)
    if abs(d - r) > tol:
        raise NotOnParallelBoundary(f"{tuple(P)} is at distance {d:.12g}, not {r:g}")
    return CylinderPoint(Ps, direction_of(P - Ps) + PI / 2)


def turning_angle(H: ConvexBody, P, Q) -> float:
    """The angle at ``P*`` between ``P`` and ``Q`` (``P*`` the nearest point to ``P``)."""
    Ps = H.nearest_point(P)
    a = direction_of(Point(*P) - Ps)
    b = direction_of(Point(*Q) - Ps)
    d = ccw_diff(a, b)
    return min(d, 2 * PI - d)


def sine_ratio_bounds(delta: float = DELTA) -> tuple[float, float]:
    """``(sin(delta)/delta, delta/sin(delta))``."""
    s = math.sin(delta)
    return s / delta, delta / s


@dataclass(frozen=True)
class LipschitzReport:
    samples: int
    delta: float
    L: float
    max_f_ratio: float
    max_g_ratio: float
    f_pairs: int
    g_pairs: int

    @property
    def passed(self) -> bool:
        return self.max_f_ratio <= self.L and self.max_g_ratio <= self.L


def _nearest_batch(H: ConvexBody, P: np.ndarray) -> np.ndarray:
    """Nearest points of ``H`` to points ``P`` outside it, row by row."""
    if isinstance(H, Disc):
        c = np.asarray(H.center, float)
        v = P - c
        return c + H.radius * v / np.hypot(v[:, 0], v[:, 1])[:, None]
    if isinstance(H, Polytope):
        V = np.asarray(H.vertices, float)
        A, B = V, np.roll(V, -1, axis=0)
        D = B - A
        den = np.where(np.sum(D * D, axis=1) > 0, np.sum(D * D, axis=1), 1.0)
        t = np.clip(np.einsum("nkj,kj->nk", P[:, None, :] - A[None], D) / den, 0.0, 1.0)
        Q = A[None] + t[..., None] * D[None]
        j = np.argmin(np.sum((Q - P[:, None, :]) ** 2, axis=2), axis=1)
        return Q[np.arange(len(P)), j]
    return np.array([H.nearest_point(p) for p in P])


def _f_embed(H: ConvexBody, P: np.ndarray) -> np.ndarray:
    """R^4 embeddings of ``f(P)`` for the rows of ``P``."""
    Ps = _nearest_batch(H, P)
    v = P - Ps
    n = np.hypot(v[:, 0], v[:, 1])[:, None]
    # direction of P - P* turned by +pi/2
    return np.column_stack([Ps, -v[:, 1:2] / n, v[:, 0:1] / n])


def _close_pairs(curve: SlideCurve, n: int, rng: np.random.Generator, span: float):
    s = rng.uniform(0.0, curve.total_length, n)
    ds = rng.uniform(0.0, span, n) * rng.choice([-1.0, 1.0], n)
    return s, s + ds


def lipschitz_small_certificate(
    H: ConvexBody,
    samples: int = 10_000,
    seed: int = 0,
    delta: float = DELTA,
    L: float = LIPSCHITZ_L,
    r: float = 1.0,
) -> LipschitzReport:
    """Check ``f`` and ``g`` are ``L``-Lipschitz on random pairs closer than ``delta``.

    Pairs are drawn as nearby parameters on the slide curve, so corners and
    faces are both represented; pairs farther apart than ``delta`` in the
    relevant metric are discarded.
    """
    rng = np.random.default_rng(seed)
    pb = ParallelBody(H, r)
    sc = pb.curve

    # f: pairs of boundary points of H^(r)
    s1, s2 = _close_pairs(sc, samples, rng, delta)
    P1, P2 = pb.boundary_points(s1), pb.boundary_points(s2)
    gamma = np.hypot(*(P1 - P2).T)
    keep = (gamma > 0) & (gamma <= delta)
    F1, F2 = _f_embed(H, P1[keep]), _f_embed(H, P2[keep])
    f_ratios = np.sqrt(np.sum((F1 - F2) ** 2, axis=1)) / gamma[keep]
    max_f = float(f_ratios.max()) if f_ratios.size else 0.0
    n_f = int(keep.sum())

    # g: pairs of slide-curve points
    t1, t2 = _close_pairs(sc, samples, rng, delta)
    E1, E2 = sc.sample(t1), sc.sample(t2)
    gam = np.sqrt(np.sum((E1 - E2) ** 2, axis=1))
    G1 = E1[:, :2] + r * np.column_stack([E1[:, 3], -E1[:, 2]])
    G2 = E2[:, :2] + r * np.column_stack([E2[:, 3], -E2[:, 2]])
    ok = (gam > 0) & (gam <= delta)
    ratios = np.hypot(*(G1 - G2).T)[ok] / gam[ok]
    max_g = float(ratios.max()) if ratios.size else 0.0

    return LipschitzReport(samples, delta, L, max_f, max_g, n_f, int(ok.sum()))


__all__ = [
    "CornerArc",
    "DELTA",
    "LIPSCHITZ_L",
    "LipschitzReport",
    "OffsetEdge",
    "ParallelBody",
    "SampledBoundary",
    "boundary_to_slide",
    "lipschitz_small_certificate",
    "parallel_body",
    "sine_ratio_bounds",
    "slide_to_boundary",
    "turning_angle",
]

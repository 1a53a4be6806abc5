"""Slow, direct reference computations used to cross-check the fast paths."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .bodies import ConvexBody, Disc, Polytope
from .convex_fn import DPoint, PLConvexFunction, t_range
from .errors import OutOfRange
from .geom import PI, DirectedLine, Point, line_gap, right_normal
from .slide_curve import SlideCurve
from .support import supporting_line


def brute_supporting_line(H: ConvexBody, alpha: float, samples: int = 4096) -> DirectedLine:
    """Supporting line through the argmax of ``<X, right_normal(alpha)>``.

    Candidates are the polygon vertices, or ``samples`` boundary samples.
    """
    n = right_normal(alpha)
    if isinstance(H, Polytope):
        best = max(H.vertices, key=lambda v: v[0] * n[0] + v[1] * n[1])
        return DirectedLine(best, alpha)
    pts = H.boundary_samples(samples)
    p = pts[int(np.argmax(pts @ np.array(n)))]
    return DirectedLine(Point(float(p[0]), float(p[1])), alpha)


def support_grid(H: ConvexBody, alphas: np.ndarray) -> np.ndarray:
    """Support values ``max <X, right_normal(a)>`` straight from the definition."""
    alphas = np.asarray(alphas, float)
    N = np.column_stack([np.sin(alphas), -np.cos(alphas)])
    if isinstance(H, Polytope):
        return (N @ np.asarray(H.vertices, float).T).max(axis=1)
    if isinstance(H, Disc):
        return N @ np.asarray(H.center, float) + H.radius
    return np.array([H.support(float(a)) for a in alphas])


def _roots(fn: Callable[[float], float], grid: np.ndarray, vals, tol: float = 1e-13) -> list[float]:
    out = []
    for j in range(len(grid)):
        a, b = vals[j], vals[(j + 1) % len(grid)]
        lo, hi = grid[j], grid[j + 1] if j + 1 < len(grid) else grid[0] + 2 * PI
        if a == 0.0:
            out.append(float(lo))
        elif a * b < 0.0:
            while hi - lo > tol:
                mid = 0.5 * (lo + hi)
                if fn(mid) * a > 0.0:
                    lo = mid
                else:
                    hi = mid
            out.append(0.5 * (lo + hi))
    return out


def _cluster(angles: list[float], gap: float) -> list[float]:
    angles = sorted(a % (2 * PI) for a in angles)
    reps: list[float] = []
    for a in angles:
        if not reps or a - reps[-1] > gap:
            reps.append(a)
    if len(reps) > 1 and reps[0] + 2 * PI - reps[-1] <= gap:
        reps.pop()
    return reps


def brute_common_tangents(H1: ConvexBody, H2: ConvexBody, directions: int = 20_000) -> list[DirectedLine]:
    """Common supporting lines found by scanning directions.

    ``supporting_line(H1, a)`` also touches ``H2`` exactly where
    ``h1(a) + h2(a + pi)`` (``H2`` touching from the right) or
    ``h1(a) - h2(a)`` (from the left) vanishes.  Sign changes on the grid
    are bisected and nearby hits merged.
    """
    grid = np.linspace(-PI, PI, directions, endpoint=False)

    def right(a):
        return H1.support(a) + H2.support(a + PI)

    def left(a):
        return H1.support(a) - H2.support(a)

    h1 = support_grid(H1, grid)
    right_vals = h1 + support_grid(H2, grid + PI)
    left_vals = h1 - support_grid(H2, grid)
    hits = _cluster(_roots(right, grid, right_vals), 1e-6) + _cluster(_roots(left, grid, left_vals), 1e-6)
    return [supporting_line(H1, a).line for a in hits]


def hausdorff_lines(A: Sequence[DirectedLine], B: Sequence[DirectedLine]) -> float:
    """Hausdorff distance between two finite sets of non-directed lines."""
    if not A or not B:
        return math.inf
    ab = max(min(line_gap(a, b) for b in B) for a in A)
    ba = max(min(line_gap(a, b) for a in A) for b in B)
    return max(ab, ba)


def polyline_length(
    sampler: SlideCurve | Callable[[np.ndarray], np.ndarray],
    N: int,
    period: float | None = None,
    extra: Sequence[float] = (),
) -> float:
    """Length of the closed inscribed polyline through ``N`` samples.

    ``sampler`` maps an array of parameters in ``[0, period)`` to points
    (one per row).  For a slide curve the piece junctions are added to the
    uniform grid, so every vertex of the inscribed polyline sits on the
    curve's own corners as well.
    """
    if isinstance(sampler, SlideCurve):
        period = sampler.total_length
        extra = list(extra) + list(sampler.cum_length[:-1])
        fn = sampler.sample
    else:
        if period is None:
            raise ValueError("period is required for callable samplers")
        fn = sampler
    s = np.union1d(np.linspace(0.0, period, N, endpoint=False), np.asarray(extra, float))
    pts = np.asarray(fn(s), float)
    closed = np.vstack([pts, pts[:1]])
    return float(np.sum(np.sqrt(np.sum(np.diff(closed, axis=0) ** 2, axis=1))))


def grid_invert_t(f: PLConvexFunction, v, s, resolution: int = 10_000) -> DPoint:
    """Scan ``x`` on a grid over ``[-v, v]`` and keep the best ``(x, clamp(s - x))``."""
    w1, w2 = t_range(f, v)
    if not (w1 <= s <= w2):
        raise OutOfRange(f"s = {float(s)} outside [{float(w1)}, {float(w2)}]")
    v, s = float(v), float(s)
    xs = np.linspace(-v, v, resolution + 1)
    if isinstance(f, PLConvexFunction):
        knots = np.array([float(k) for k in f.xs])
        slopes = np.array([float(m) for m in f.slopes])
        last = len(slopes) - 1
        lo = slopes[np.clip(np.searchsorted(knots, xs, side="left") - 1, 0, last)]
        hi = slopes[np.clip(np.searchsorted(knots, xs, side="right") - 1, 0, last)]
    else:
        subs = [f.subdiff(float(x)) for x in xs]
        lo = np.array([float(q.lo) for q in subs])
        hi = np.array([float(q.hi) for q in subs])
    d = np.clip(s - xs, lo, hi)
    j = int(np.argmin(np.abs(xs + d - s)))
    return DPoint(float(xs[j]), float(d[j]))


def brute_nearest_point(H: ConvexBody, X, samples: int = 20_000) -> Point:
    pts = H.boundary_samples(samples)
    j = int(np.argmin(np.hypot(pts[:, 0] - X[0], pts[:, 1] - X[1])))
    return Point(float(pts[j, 0]), float(pts[j, 1]))


def brute_distance(H1: ConvexBody, H2: ConvexBody, samples: int = 2000) -> float:
    """Smallest distance between boundary samples of the two bodies."""
    A = H1.boundary_samples(samples)
    B = H2.boundary_samples(samples)
    d, _ = cKDTree(B).query(A)
    return float(d.min())


__all__ = [
    "brute_common_tangents",
    "brute_distance",
    "brute_nearest_point",
    "brute_supporting_line",
    "grid_invert_t",
    "hausdorff_lines",
    "polyline_length",
    "support_grid",
]

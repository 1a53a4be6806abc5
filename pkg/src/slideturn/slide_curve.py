"""The slide curve of a convex body as an arclength-parameterised closed path.

A pointed supporting line ``(P, l)`` is stored as the cylinder point
``(P, dir l)`` in R^2 x S^1, a subset of R^4.  Traversing the body
counterclockwise, the curve slides along faces with the direction frozen
(:class:`EdgeSlide`), turns at corners with the point frozen
(:class:`VertexTurn`), or does both at once on smooth arcs
(:class:`DiscArc`, :class:`SmoothArc`).  The parameter is Euclidean
arclength in R^4, so a turn of angle ``phi`` has length ``phi``.
"""

from __future__ import annotations

import bisect
import logging
import math
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Sequence

import numpy as np

from .bodies import ConvexBody, Disc, Edge, Generic, Polytope, project_to_segment
from .errors import NotOnBoundary
from .geom import (
    ANGLE_TOL,
    TAU,
    TWO_PI,
    CylinderPoint,
    Point,
    angle_dist,
    canonical_angle,
    ccw_diff,
    dist,
    direction_of,
    right_normal,
)

logger = logging.getLogger(__name__)

DEFAULT_RESOLUTION = 4096
MAX_RESOLUTION = 1 << 17


@dataclass(frozen=True)
class EdgeSlide:
    start: Point
    end: Point
    dir: float

    @property
    def length(self) -> float:
        return dist(self.start, self.end)

    sweep = 0.0

    @property
    def dir_from(self) -> float:
        return self.dir

    @property
    def dir_to(self) -> float:
        return self.dir

    def evaluate(self, u: float) -> tuple[Point, float, float]:
        """``(point, canonical direction, turn so far)`` at local parameter ``u``."""
        L = self.length
        if u <= 0.0:
            return self.start, self.dir, 0.0
        if u >= L:
            return self.end, self.dir, 0.0
        t = u / L
        return self.start + (self.end - self.start) * t, self.dir, 0.0

    def sample(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        t = np.clip(u / self.length, 0.0, 1.0) if self.length > 0 else np.zeros_like(u)
        x = self.start.x + (self.end.x - self.start.x) * t
        y = self.start.y + (self.end.y - self.start.y) * t
        return x, y, np.zeros_like(u)

    def trim(self, u0: float, u1: float) -> "EdgeSlide":
        return EdgeSlide(self.evaluate(u0)[0], self.evaluate(u1)[0], self.dir)

    def param_for_turn(self, turn: float) -> float:
        return 0.0

    def param_of(self, P, theta: float, tol: float) -> float | None:
        if angle_dist(theta, self.dir) > tol:
            return None
        q = project_to_segment(P, self.start, self.end)
        if dist(P, q) > tol:
            return None
        return dist(self.start, q)

    def point_interval(self, P, tol: float) -> tuple[float, float] | None:
        q = project_to_segment(P, self.start, self.end)
        if dist(P, q) > tol:
            return None
        u = dist(self.start, q)
        return u, u


@dataclass(frozen=True)
class VertexTurn:
    at: Point
    dir_from: float
    dir_to: float
    sweep: float

    @property
    def length(self) -> float:
        return self.sweep

    def evaluate(self, u: float) -> tuple[Point, float, float]:
        if u <= 0.0:
            return self.at, self.dir_from, 0.0
        if u >= self.sweep:
            return self.at, self.dir_to, self.sweep
        return self.at, canonical_angle(self.dir_from + u), u

    def sample(self, u: np.ndarray):
        u = np.clip(u, 0.0, self.sweep)
        return np.full_like(u, self.at.x), np.full_like(u, self.at.y), u

    def trim(self, u0: float, u1: float) -> "VertexTurn":
        d0 = self.evaluate(u0)[1]
        d1 = self.evaluate(u1)[1]
        return VertexTurn(self.at, d0, d1, max(0.0, min(u1, self.sweep) - max(u0, 0.0)))

    def param_for_turn(self, turn: float) -> float:
        return min(max(turn, 0.0), self.sweep)

    def param_of(self, P, theta: float, tol: float) -> float | None:
        if dist(P, self.at) > tol:
            return None
        t = ccw_diff(self.dir_from, theta)
        if t <= self.sweep + tol:
            return min(t, self.sweep)
        if TWO_PI - t <= tol:
            return 0.0
        return None

    def point_interval(self, P, tol: float) -> tuple[float, float] | None:
        if dist(P, self.at) > tol:
            return None
        return 0.0, self.sweep


@dataclass(frozen=True)
class DiscArc:
    """Exact slide curve of a disc: a helix of constant speed ``sqrt(1 + r^2)``."""

    center: Point
    radius: float
    dir_from: float
    sweep: float
    dir_to: float

    @property
    def speed(self) -> float:
        return math.sqrt(1.0 + self.radius * self.radius)

    @property
    def length(self) -> float:
        return self.sweep * self.speed

    def _point(self, theta: float) -> Point:
        return self.center + right_normal(theta) * self.radius

    def evaluate(self, u: float) -> tuple[Point, float, float]:
        if u <= 0.0:
            return self._point(self.dir_from), self.dir_from, 0.0
        if u >= self.length:
            return self._point(self.dir_to), self.dir_to, self.sweep
        t = u / self.speed
        th = self.dir_from + t
        return self._point(th), canonical_angle(th), t

    def sample(self, u: np.ndarray):
        t = np.clip(u / self.speed, 0.0, self.sweep)
        th = self.dir_from + t
        return (
            self.center.x + self.radius * np.sin(th),
            self.center.y - self.radius * np.cos(th),
            t,
        )

    def trim(self, u0: float, u1: float) -> "DiscArc":
        d0 = self.evaluate(u0)[1]
        d1 = self.evaluate(u1)[1]
        t0 = max(u0, 0.0) / self.speed
        t1 = min(u1, self.length) / self.speed
        return DiscArc(self.center, self.radius, d0, max(0.0, t1 - t0), d1)

    def param_for_turn(self, turn: float) -> float:
        return min(max(turn, 0.0), self.sweep) * self.speed

    def _turn_of_point(self, P) -> float:
        return ccw_diff(self.dir_from, direction_of(Point(*P) - self.center) + math.pi / 2)

    def param_of(self, P, theta: float, tol: float) -> float | None:
        t = ccw_diff(self.dir_from, theta)
        if t > self.sweep + tol:
            return None
        t = min(t, self.sweep)
        if dist(self._point(self.dir_from + t), P) > tol:
            return None
        return t * self.speed

    def point_interval(self, P, tol: float) -> tuple[float, float] | None:
        if abs(dist(P, self.center) - self.radius) > tol:
            return None
        t = self._turn_of_point(P)
        if t > self.sweep + tol:
            if TWO_PI - t <= tol:
                t = 0.0
            else:
                return None
        u = min(t, self.sweep) * self.speed
        return u, u


@dataclass(frozen=True)
class SmoothArc:
    """Polyline through sampled cylinder points (generic bodies).

    ``turns`` holds the direction of each sample unwrapped relative to
    ``dir_from``; the point moves linearly between samples.
    """

    points: np.ndarray = field(repr=False)
    turns: np.ndarray = field(repr=False)
    dir_from: float = 0.0
    dir_to: float = 0.0
    cum: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        th = self.dir_from + self.turns
        E = np.column_stack([self.points, np.cos(th), np.sin(th)])
        seg = np.sqrt(np.sum(np.diff(E, axis=0) ** 2, axis=1))
        object.__setattr__(self, "cum", np.concatenate([[0.0], np.cumsum(seg)]))

    @property
    def sweep(self) -> float:
        return float(self.turns[-1])

    @property
    def length(self) -> float:
        return float(self.cum[-1])

    def _locate(self, u: float) -> tuple[int, float]:
        j = int(np.searchsorted(self.cum, u, side="right")) - 1
        j = min(max(j, 0), len(self.cum) - 2)
        span = self.cum[j + 1] - self.cum[j]
        return j, 0.0 if span == 0 else (u - self.cum[j]) / span

    def evaluate(self, u: float) -> tuple[Point, float, float]:
        if u <= 0.0:
            return Point(*self.points[0]), self.dir_from, 0.0
        if u >= self.length:
            return Point(*self.points[-1]), self.dir_to, self.sweep
        j, f = self._locate(u)
        p = self.points[j] + (self.points[j + 1] - self.points[j]) * f
        t = float(self.turns[j] + (self.turns[j + 1] - self.turns[j]) * f)
        return Point(float(p[0]), float(p[1])), canonical_angle(self.dir_from + t), t

    def sample(self, u: np.ndarray):
        u = np.clip(u, 0.0, self.length)
        j = np.clip(np.searchsorted(self.cum, u, side="right") - 1, 0, len(self.cum) - 2)
        span = self.cum[j + 1] - self.cum[j]
        f = np.where(span > 0, (u - self.cum[j]) / np.where(span > 0, span, 1.0), 0.0)
        p = self.points[j] + (self.points[j + 1] - self.points[j]) * f[:, None]
        t = self.turns[j] + (self.turns[j + 1] - self.turns[j]) * f
        return p[:, 0], p[:, 1], t

    def trim(self, u0: float, u1: float) -> "SmoothArc":
        u0, u1 = max(u0, 0.0), min(u1, self.length)
        inner = (self.cum > u0) & (self.cum < u1)
        p0, d0, t0 = self.evaluate(u0)
        p1, d1, t1 = self.evaluate(u1)
        pts = np.vstack([[p0], self.points[inner], [p1]])
        turns = np.concatenate([[t0], self.turns[inner], [t1]]) - t0
        return SmoothArc(pts, turns, d0, d1)

    def param_for_turn(self, turn: float) -> float:
        turn = min(max(turn, 0.0), self.sweep)
        j = int(np.searchsorted(self.turns, turn, side="right")) - 1
        j = min(max(j, 0), len(self.turns) - 2)
        span = self.turns[j + 1] - self.turns[j]
        f = 0.0 if span == 0 else (turn - self.turns[j]) / span
        return float(self.cum[j] + f * (self.cum[j + 1] - self.cum[j]))

    def _nearest(self, P) -> tuple[float, float]:
        A, B = self.points[:-1], self.points[1:]
        D = B - A
        den = np.sum(D * D, axis=1)
        t = np.clip(np.sum((np.asarray(P) - A) * D, axis=1) / np.where(den > 0, den, 1.0), 0, 1)
        Q = A + D * t[:, None]
        dd = np.hypot(*(Q - np.asarray(P)).T)
        j = int(np.argmin(dd))
        return float(dd[j]), float(self.cum[j] + t[j] * (self.cum[j + 1] - self.cum[j]))

    def param_of(self, P, theta: float, tol: float) -> float | None:
        u = self.param_for_turn(ccw_diff(self.dir_from, theta))
        p, _, _ = self.evaluate(u)
        return u if dist(p, P) <= max(tol, 1e-6) else None

    def point_interval(self, P, tol: float) -> tuple[float, float] | None:
        d, u = self._nearest(P)
        if d > max(tol, 1e-6):
            return None
        return u, u


Piece = EdgeSlide | VertexTurn | DiscArc | SmoothArc


class SlideCurve:
    """Ordered pieces with a prefix table of R^4 arclengths."""

    def __init__(self, pieces: Sequence[Piece], closed: bool = True):
        self.pieces: tuple[Piece, ...] = tuple(pieces)
        self.closed = closed
        self.cum_length: list[float] = [0.0, *accumulate(p.length for p in self.pieces)]
        self.cum_turn: list[float] = [0.0, *accumulate(p.sweep for p in self.pieces)]
        self.total_length: float = self.cum_length[-1]

    def __repr__(self):
        kinds = {}
        for p in self.pieces:
            kinds[type(p).__name__] = kinds.get(type(p).__name__, 0) + 1
        return f"SlideCurve({kinds}, length={self.total_length:.12g})"

    def __len__(self):
        return len(self.pieces)

    @property
    def start_dir(self) -> float:
        return self.pieces[0].dir_from

    @property
    def winding(self) -> float:
        return self.cum_turn[-1]

    def _wrap(self, s: float) -> float:
        L = self.total_length
        if self.closed:
            s = math.fmod(s, L)
            if s < 0.0:
                s += L
            return 0.0 if s >= L else s
        return min(max(s, 0.0), L)

    def _locate(self, s: float) -> tuple[int, float]:
        i = bisect.bisect_right(self.cum_length, s) - 1
        i = min(max(i, 0), len(self.pieces) - 1)
        return i, s - self.cum_length[i]

    def eval(self, s: float) -> CylinderPoint:
        i, u = self._locate(self._wrap(s))
        p, d, _ = self.pieces[i].evaluate(u)
        return CylinderPoint(p, d)

    __call__ = eval

    def turn_at(self, s: float) -> float:
        """Total direction change from the start up to parameter ``s``."""
        i, u = self._locate(self._wrap(s))
        return self.cum_turn[i] + self.pieces[i].evaluate(u)[2]

    def start(self) -> CylinderPoint:
        p, d, _ = self.pieces[0].evaluate(0.0)
        return CylinderPoint(p, d)

    def end(self) -> CylinderPoint:
        last = self.pieces[-1]
        p, d, _ = last.evaluate(last.length)
        return CylinderPoint(p, d)

    def sample_turn(self, s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Vectorised evaluation: ``(x, y, turn)`` arrays."""
        s = np.asarray(s, dtype=float)
        L = self.total_length
        if self.closed:
            s = np.mod(s, L)
            s = np.where(s >= L, 0.0, s)
        else:
            s = np.clip(s, 0.0, L)
        cum = np.asarray(self.cum_length)
        idx = np.clip(np.searchsorted(cum, s, side="right") - 1, 0, len(self.pieces) - 1)
        x = np.empty_like(s)
        y = np.empty_like(s)
        t = np.empty_like(s)
        for i in np.unique(idx):
            m = idx == i
            px, py, pt = self.pieces[i].sample(s[m] - cum[i])
            x[m], y[m], t[m] = px, py, pt + self.cum_turn[i]
        return x, y, t

    def sample(self, s) -> np.ndarray:
        """``(n, 4)`` array of R^4 embeddings ``(x, y, cos, sin)``."""
        x, y, t = self.sample_turn(s)
        th = self.start_dir + t
        return np.column_stack([x, y, np.cos(th), np.sin(th)])

    def param_at_direction(self, theta: float) -> float:
        """First parameter whose direction component equals ``theta``."""
        want = ccw_diff(self.start_dir, theta)
        if want > self.winding - ANGLE_TOL and self.closed:
            want = 0.0 if TWO_PI - want <= ANGLE_TOL else want
        for i, p in enumerate(self.pieces):
            t0 = self.cum_turn[i]
            if p.sweep == 0.0:
                if abs(want - t0) <= ANGLE_TOL:
                    return self.cum_length[i]
            elif t0 <= want <= t0 + p.sweep:
                return self.cum_length[i] + p.param_for_turn(want - t0)
        raise ValueError(f"direction {theta!r} not reached by this curve")

    def param_of(self, q: CylinderPoint, tol: float = 1e-7) -> float:
        """A parameter ``s`` with ``eval(s) == q`` (within ``tol``)."""
        for i, p in enumerate(self.pieces):
            u = p.param_of(q.point, q.dir, tol)
            if u is not None:
                return self.cum_length[i] + u
        raise NotOnBoundary(f"{q} is not on the slide curve")

    def point_params(self, P, tol: float = TAU) -> tuple[float, float]:
        """``(arrive, leave)``: the first and last parameter at which the point is ``P``.

        For a corner these bracket the turn; on a face or smooth arc they
        coincide.  A turn split across the curve's start is reassembled, so
        ``arrive`` may exceed ``leave``.
        """
        hits = []
        for i, p in enumerate(self.pieces):
            iv = p.point_interval(P, tol)
            if iv is not None:
                hits.append((i, self.cum_length[i] + iv[0], self.cum_length[i] + iv[1]))
        if not hits:
            raise NotOnBoundary(f"{tuple(P)} is not on the boundary")
        turns = [h for h in hits if isinstance(self.pieces[h[0]], VertexTurn)]
        if turns:
            hits = turns
        if len(hits) == 1:
            return hits[0][1], hits[0][2]
        first, last = hits[0], hits[-1]
        if first[0] == 0 and last[0] == len(self.pieces) - 1:
            return last[1], first[2]
        return first[1], last[2]

    def subpath(self, s0: float, length: float) -> "SlideCurve":
        """Open curve following this one for ``length`` from parameter ``s0``."""
        L = self.total_length
        s0 = self._wrap(s0)
        length = min(max(length, 0.0), L if self.closed else L - s0)
        out: list[Piece] = []
        remaining = length
        i, u = self._locate(s0)
        while remaining > 0.0 or not out:
            p = self.pieces[i]
            take = min(p.length - u, remaining)
            if take > 0.0 or not out:
                out.append(p.trim(u, u + take))
            remaining -= take
            if remaining <= 1e-15:
                break
            i = (i + 1) % len(self.pieces)
            u = 0.0
        return SlideCurve(out, closed=False)


# ---------------------------------------------------------------------------
# construction


def _close_exactly(pieces: list[Piece]) -> list[Piece]:
    """Adjust the last turn by rounding error so the sweeps add up to exactly 2*pi."""
    partial = 0.0
    for p in pieces[:-1]:
        partial += p.sweep
    last = pieces[-1]
    sweep = TWO_PI - partial
    for _ in range(8):
        total = partial + sweep
        if total == TWO_PI:
            break
        sweep = math.nextafter(sweep, math.inf if total < TWO_PI else -math.inf)
    pieces[-1] = VertexTurn(last.at, last.dir_from, last.dir_to, sweep)
    return pieces


def _polytope_pieces(H: Polytope) -> list[Piece]:
    V, phi, k = H.vertices, H.edge_dirs, H.n
    if k == 1:
        return [VertexTurn(V[0], 0.0, 0.0, TWO_PI)]
    es = H.extreme_set(0.0)
    pieces: list[Piece] = []
    if isinstance(es, Edge):
        i = V.index(es.start)
        for j in range(k):
            e = (i + j) % k
            a, b = H.edge(e)
            nxt = (e + 1) % k
            pieces.append(EdgeSlide(a, b, phi[e]))
            pieces.append(VertexTurn(b, phi[e], phi[nxt], H.exterior_angle(nxt)))
        return _close_exactly(pieces)
    i = V.index(es.point)
    pieces.append(VertexTurn(V[i], 0.0, phi[i], ccw_diff(0.0, phi[i])))
    for j in range(k):
        e = (i + j) % k
        a, b = H.edge(e)
        nxt = (e + 1) % k
        pieces.append(EdgeSlide(a, b, phi[e]))
        if nxt == i:
            pieces.append(VertexTurn(b, phi[e], 0.0, ccw_diff(phi[e], 0.0)))
        else:
            pieces.append(VertexTurn(b, phi[e], phi[nxt], H.exterior_angle(nxt)))
    return _close_exactly(pieces)


def _sampled_arc(H: Generic, n: int) -> SmoothArc:
    turns = np.linspace(0.0, TWO_PI, n + 1)
    pts = np.array([H.extreme(t) for t in turns[:-1]])
    pts = np.vstack([pts, pts[:1]])
    return SmoothArc(pts, turns, 0.0, 0.0)


def slide_curve(H: ConvexBody, resolution: int = DEFAULT_RESOLUTION) -> SlideCurve:
    """Build the slide curve of ``H``, starting at the supporting line of direction 0.

    Polytopes (including segments and points) are exact; discs use the
    closed-form helix; generic bodies are sampled, doubling ``resolution``
    until the length changes by less than ``1e-9``.
    """
    if isinstance(H, Polytope):
        return SlideCurve(_polytope_pieces(H))
    if isinstance(H, Disc):
        return SlideCurve([DiscArc(H.center, H.radius, 0.0, TWO_PI, 0.0)])
    if isinstance(H, Generic):
        n = resolution
        arc = _sampled_arc(H, n)
        while n < MAX_RESOLUTION:
            finer = _sampled_arc(H, 2 * n)
            change = abs(finer.length - arc.length)
            arc, n = finer, 2 * n
            if change < 1e-9:
                break
        else:
            logger.info("sampled slide curve stopped refining at N=%d", n)
        return SlideCurve([arc])
    raise TypeError(f"unsupported body {H!r}")


def length(sc: SlideCurve) -> float:
    return sc.total_length


def eval_curve(sc: SlideCurve, s: float) -> CylinderPoint:
    return sc.eval(s)


def arc_restriction(sc: SlideCurve, a, b, tol: float = TAU) -> SlideCurve:
    """Part of ``sc`` over the counterclockwise boundary arc from ``a`` to ``b``.

    The fragment leaves ``a`` and stops on arrival at ``b``, so the turns at
    the two end corners are not included.  ``a == b`` returns the whole
    curve, starting where it arrives at ``a``.
    """
    L = sc.total_length
    arrive_a, leave_a = sc.point_params(a, tol)
    if dist(a, b) <= tol:
        return sc.subpath(arrive_a, L)
    arrive_b, _ = sc.point_params(b, tol)
    span = math.fmod(arrive_b - leave_a, L)
    if span < 0.0:
        span += L
    return sc.subpath(leave_a, span)


__all__ = [
    "DiscArc",
    "EdgeSlide",
    "Piece",
    "SmoothArc",
    "SlideCurve",
    "VertexTurn",
    "arc_restriction",
    "eval_curve",
    "length",
    "slide_curve",
]

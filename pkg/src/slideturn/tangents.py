"""Common supporting lines of two disjoint convex bodies by slide-turning.

A pointed supporting line of ``H1`` starts parallel to a separating line,
so ``H2`` is strictly on its right, and makes one full turn along the slide
curve of ``H1``.  Along the way ``H2`` passes from the right to the left of
the line and back; the four boundary moments of that passage are the four
common supporting lines.

Along the curve, with ``(P, theta)`` the current pointed line,

* ``M = h2(theta + pi) + <P, n>`` is the largest signed side of ``H2``,
* ``m = <P, n> - h2(theta)`` is the smallest,

where ``n`` is the right normal of ``theta``.  Both are constant on face
slides, so changes happen only while the line turns.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bodies import ConvexBody, Disc, Polytope
from .errors import DegenerateBody
from .geom import PI, TAU, DirectedLine, Point, line_gap, right_normal
from .slide_curve import DiscArc, SlideCurve, VertexTurn, slide_curve
from .support import separating_line, supporting_line


class Side(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"
    CROSSING = "Crossing"
    TOUCHING = "Touching"


class EventKind(enum.Enum):
    RIGHT_TO_TOUCH = "RightToTouch"
    TOUCH_TO_LEFT = "TouchToLeft"
    LEFT_TO_TOUCH = "LeftToTouch"
    TOUCH_TO_RIGHT = "TouchToRight"


def side_extremes(l: DirectedLine, H: ConvexBody) -> tuple[float, float]:
    """``(min, max)`` of the signed side of ``l`` over ``H``."""
    c = l.base.dot(right_normal(l.dir))
    return c - H.support(l.dir), H.support(l.dir + PI) + c


def side_of(l: DirectedLine, H: ConvexBody, tol: float = TAU) -> Side:
    lo, hi = side_extremes(l, H)
    if lo > tol:
        return Side.LEFT
    if hi < -tol:
        return Side.RIGHT
    if abs(lo) <= tol or abs(hi) <= tol:
        return Side.TOUCHING
    return Side.CROSSING


@dataclass(frozen=True)
class TangentEvent:
    """One common supporting line met during the turn.

    ``t`` is the slide-curve parameter, unwrapped so that
    ``t0 <= t < t0 + L``.
    """

    t: float
    line: DirectedLine
    touch1: Point
    touch2: Point
    kind: EventKind


@dataclass(frozen=True)
class CommonTangentReport:
    t0: float
    separator: DirectedLine
    events: tuple[TangentEvent, ...]

    @property
    def lines(self) -> list[DirectedLine]:
        return [e.line for e in self.events]


class _Sweep:
    """``M`` and ``m`` along the slide curve of ``H1`` against ``H2``."""

    def __init__(self, H1: ConvexBody, H2: ConvexBody, sc: SlideCurve):
        self.H1, self.H2, self.sc = H1, H2, sc

    def values(self, s: float) -> tuple[float, float]:
        q = self.sc.eval(s)
        c = q.point.dot(right_normal(q.dir))
        return c - self.H2.support(q.dir), self.H2.support(q.dir + PI) + c

    def state(self, s: float, tol: float) -> str:
        m, M = self.values(s)
        if M < -tol:
            return "R"
        if m > tol:
            return "L"
        if abs(M) <= tol:
            return "TR"
        if abs(m) <= tol:
            return "TL"
        return "C"


def _sites(H: ConvexBody) -> list[tuple[Point, float]] | None:
    if isinstance(H, Polytope):
        return [(v, 0.0) for v in H.vertices]
    if isinstance(H, Disc):
        return [(H.center, H.radius)]
    return None


def _turn_candidates(piece, sites) -> list[float]:
    """Turn amounts inside ``piece`` at which the line touches a site circle."""
    if isinstance(piece, VertexTurn):
        K, a = piece.at, 0.0
    else:
        K, a = piece.center, piece.radius
    out = []
    for C, rho in sites:
        D = C - K
        nD = D.norm()
        if nD == 0.0:
            continue
        phi = D.angle()
        # signed side of C is |D| sin(phi - theta) + a; touching means it equals -rho or +rho
        for c in (-a - rho, -a + rho):
            x = c / nD
            if abs(x) > 1.0:
                continue
            b = math.asin(x)
            for theta in (phi - b, phi - PI + b):
                t = (theta - piece.dir_from) % (2 * PI)
                if t <= piece.sweep:
                    out.append(t)
    return out


def _candidates(sweep: _Sweep, grid: int) -> list[float]:
    """Sorted parameters splitting the curve into runs of constant state."""
    sc = sweep.sc
    sites = _sites(sweep.H2)
    cands: list[float] = list(sc.cum_length)
    for i, p in enumerate(sc.pieces):
        base = sc.cum_length[i]
        if p.sweep == 0.0:
            continue
        if sites is not None and isinstance(p, (VertexTurn, DiscArc)):
            cands.extend(base + p.param_for_turn(t) for t in _turn_candidates(p, sites))
            continue
        # no closed form: grid then bisection on sign changes of M and m
        us = np.linspace(0.0, p.length, max(8, int(grid * p.length / sc.total_length)) + 1)
        vals = [sweep.values(base + u) for u in us]
        for k in (0, 1):
            for j in range(len(us) - 1):
                a, b = vals[j][k], vals[j + 1][k]
                if a == 0.0:
                    cands.append(base + us[j])
                elif a * b < 0.0:
                    lo, hi = us[j], us[j + 1]
                    while hi - lo > 1e-12:
                        mid = 0.5 * (lo + hi)
                        if sweep.values(base + mid)[k] * a > 0.0:
                            lo = mid
                        else:
                            hi = mid
                    cands.append(base + 0.5 * (lo + hi))
    return sorted(set(cands))


def _runs(sweep: _Sweep, t0: float, tol: float, grid: int) -> list[tuple[float, str]]:
    """``(start, state)`` runs over one turn starting at ``t0``, unwrapped."""
    L = sweep.sc.total_length
    cands = [c for c in _candidates(sweep, grid) if c < L]
    shifted = sorted({(c - t0) % L for c in cands} | {0.0})
    bounds = [t0 + c for c in shifted] + [t0 + L]
    runs = []
    for a, b in zip(bounds, bounds[1:]):
        if b - a <= 0.0:
            continue
        st = sweep.state(0.5 * (a + b), tol)
        if not runs or runs[-1][1] != st:
            runs.append((a, st))
    return runs


def common_supporting_lines(
    H1: ConvexBody, H2: ConvexBody, tol: float = TAU, grid: int = 8192
) -> CommonTangentReport:
    """The four common supporting lines of two disjoint bodies with interior."""
    if not (H1.has_interior and H2.has_interior):
        raise DegenerateBody("common tangents need bodies with nonempty interior")
    sep = separating_line(H1, H2, tol)
    sc = slide_curve(H1)
    t0 = sc.param_at_direction(sep.dir)
    sweep = _Sweep(H1, H2, sc)
    runs = _runs(sweep, t0, tol, grid)

    def first(start: float, pred) -> float:
        for a, st in runs:
            if a >= start and pred(st):
                return a
        raise RuntimeError("slide-turn sweep ended early; bodies may touch")

    t1 = first(t0, lambda st: st not in ("R", "TR"))
    t2 = first(t1, lambda st: st in ("TL", "L"))
    t3 = first(t2, lambda st: st not in ("TL", "L"))
    t4 = first(t3, lambda st: st in ("TR", "R"))

    events = []
    for t, kind in (
        (t1, EventKind.RIGHT_TO_TOUCH),
        (t2, EventKind.TOUCH_TO_LEFT),
        (t3, EventKind.LEFT_TO_TOUCH),
        (t4, EventKind.TOUCH_TO_RIGHT),
    ):
        theta = sc.eval(t).dir
        p1 = supporting_line(H1, theta).point
        right = kind in (EventKind.RIGHT_TO_TOUCH, EventKind.TOUCH_TO_RIGHT)
        p2 = supporting_line(H2, theta + PI if right else theta).point
        events.append(TangentEvent(t, DirectedLine(p1, theta), p1, p2, kind))
    return CommonTangentReport(t0, sep, tuple(events))


def pairwise_distinct(lines: list[DirectedLine], tol: float = 1e-9) -> bool:
    return all(
        line_gap(a, b) > tol for i, a in enumerate(lines) for b in lines[i + 1 :]
    )


@dataclass(frozen=True)
class SweepHistogram:
    counts: dict
    transitions: int
    pattern: tuple[str, ...]


def tangent_count_sweep(H1: ConvexBody, H2: ConvexBody, steps: int = 10_000, tol: float = TAU) -> SweepHistogram:
    """Classify ``H2`` against the turning line at ``steps`` even parameters.

    States are folded into right, crossing and left; a disjoint pair shows
    exactly four changes over the closed loop.
    """
    if not (H1.has_interior and H2.has_interior):
        raise DegenerateBody("common tangents need bodies with nonempty interior")
    sep = separating_line(H1, H2, tol)
    sc = slide_curve(H1)
    t0 = sc.param_at_direction(sep.dir)
    sweep = _Sweep(H1, H2, sc)
    counts: dict[str, int] = {}
    folded = []
    fold = {"R": "right", "TR": "right", "C": "crossing", "TL": "left", "L": "left"}
    for k in range(steps):
        st = sweep.state(t0 + sc.total_length * k / steps, tol)
        counts[st] = counts.get(st, 0) + 1
        f = fold[st]
        if not folded or folded[-1] != f:
            folded.append(f)
    cyc = folded[:-1] if len(folded) > 1 and folded[0] == folded[-1] else folded
    transitions = len(cyc) if len(cyc) > 1 else 0
    return SweepHistogram(counts, transitions, tuple(folded))


__all__ = [
    "CommonTangentReport",
    "EventKind",
    "Side",
    "SweepHistogram",
    "TangentEvent",
    "common_supporting_lines",
    "pairwise_distinct",
    "side_extremes",
    "side_of",
    "tangent_count_sweep",
]

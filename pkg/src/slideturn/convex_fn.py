"""Convex functions of one variable, their subdifferentials, and local charts.

A :class:`PLConvexFunction` keeps its knots and values as
:class:`fractions.Fraction`, so slopes, the map ``t(x, d) = x + d`` and its
inverse are computed without rounding.  Float inputs are converted exactly.

Near a boundary point ``P0`` of a body with interior, :func:`chart_at`
rotates and translates the plane so that an interior point ``O`` sits
straight above ``P0``; the lower boundary over a narrow strip is then the
graph of a convex function.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from .bodies import ConvexBody, Disc, Location, Polygon, Polytope
from .errors import DegenerateBody, NotOnBoundary, OutOfDomain, OutOfRange
from .geom import PI, TAU, Point, as_point, direction_of, right_normal

Number = Union[Fraction, float, int]


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class DPoint:
    """A point ``(x, d)`` of the set D, ``d`` in the subdifferential at ``x``.

    Field order gives the lexicographic order.
    """

    x: Number
    d: Number


@dataclass(frozen=True)
class SubdiffInterval:
    lo: Number
    hi: Number

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty subdifferential [{self.lo}, {self.hi}]")

    def __contains__(self, d) -> bool:
        return self.lo <= d <= self.hi

    def clamp(self, d):
        return min(max(d, self.lo), self.hi)

    @property
    def width(self):
        return self.hi - self.lo


class PLConvexFunction:
    """Piecewise-linear convex function on ``[-u, u]``.

    ``xs`` runs from ``-u`` to ``u`` and includes every breakpoint;
    consecutive slopes strictly increase (collinear knots are merged).
    """

    def __init__(self, xs: Sequence[Number], ys: Sequence[Number], slope_tol: Number = 0):
        xs = [_frac(x) for x in xs]
        ys = [_frac(y) for y in ys]
        if len(xs) != len(ys) or len(xs) < 2:
            raise ValueError("need at least two knots with matching values")
        if xs[0] != -xs[-1] or xs[0] >= 0:
            raise ValueError("knots must span a symmetric interval [-u, u]")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("knots must be strictly increasing")
        tol = _frac(slope_tol)
        kx, ky = [xs[0]], [ys[0]]
        for x, y in zip(xs[1:], ys[1:]):
            while len(kx) >= 2:
                m_prev = (ky[-1] - ky[-2]) / (kx[-1] - kx[-2])
                m_new = (y - ky[-1]) / (x - kx[-1])
                if m_new - m_prev > tol:
                    break
                if m_prev - m_new > tol:
                    raise ValueError("knots do not describe a convex function")
                kx.pop()
                ky.pop()
            kx.append(x)
            ky.append(y)
        self.xs: tuple[Fraction, ...] = tuple(kx)
        self.ys: tuple[Fraction, ...] = tuple(ky)
        self.slopes: tuple[Fraction, ...] = tuple(
            (b - a) / (q - p) for p, q, a, b in zip(kx, kx[1:], ky, ky[1:])
        )
        self.u: Fraction = kx[-1]

    @classmethod
    def from_knots(cls, xs, ys, slope_tol: Number = 0) -> "PLConvexFunction":
        return cls(xs, ys, slope_tol)

    @classmethod
    def from_max_of_affine(cls, lines: Sequence[tuple[Number, Number]], u: Number) -> "PLConvexFunction":
        """``max(m*x + b)`` over ``(m, b)`` pairs, restricted to ``[-u, u]``."""
        u = _frac(u)
        best: dict[Fraction, Fraction] = {}
        for m, b in lines:
            m, b = _frac(m), _frac(b)
            best[m] = max(best.get(m, b), b)
        ls = sorted(best.items())
        hull: list[tuple[Fraction, Fraction]] = []
        for m, b in ls:
            while len(hull) >= 2:
                (m1, b1), (m2, b2) = hull[-2], hull[-1]
                # hull[-1] is useless if the new line overtakes hull[-2] no later than hull[-1] does
                if (b1 - b) * (m2 - m1) <= (b1 - b2) * (m - m1):
                    hull.pop()
                else:
                    break
            hull.append((m, b))
        cuts = [(b1 - b2) / (m2 - m1) for (m1, b1), (m2, b2) in zip(hull, hull[1:])]
        xs = [-u] + [c for c in cuts if -u < c < u] + [u]

        def value(x):
            return max(m * x + b for m, b in hull)

        return cls(xs, [value(x) for x in xs])

    def __repr__(self):
        return f"PLConvexFunction(u={float(self.u):g}, knots={len(self.xs)})"

    def _check(self, x: Fraction, closed: bool = True) -> None:
        if closed and not (-self.u <= x <= self.u):
            raise OutOfDomain(f"x = {x} outside [-{self.u}, {self.u}]")
        if not closed and not (-self.u < x < self.u):
            raise OutOfDomain(f"x = {x} outside (-{self.u}, {self.u})")

    def _segment(self, x: Fraction) -> int:
        i = bisect.bisect_right(self.xs, x) - 1
        return min(max(i, 0), len(self.slopes) - 1)

    def __call__(self, x: Number) -> Fraction:
        x = _frac(x)
        self._check(x)
        i = self._segment(x)
        return self.ys[i] + self.slopes[i] * (x - self.xs[i])

    def left_deriv(self, x: Number) -> Fraction:
        x = _frac(x)
        i = bisect.bisect_left(self.xs, x) - 1
        return self.slopes[min(max(i, 0), len(self.slopes) - 1)]

    def right_deriv(self, x: Number) -> Fraction:
        return self.slopes[self._segment(_frac(x))]

    def subdiff(self, x: Number) -> SubdiffInterval:
        x = _frac(x)
        self._check(x)
        return SubdiffInterval(self.left_deriv(x), self.right_deriv(x))

    def kinks(self) -> tuple[Fraction, ...]:
        return self.xs[1:-1]

    def staircase(self, v: Number) -> tuple[list, list, list]:
        """Step points ``-v``, inner kinks, ``v`` with ``x + f'_-(x)`` and ``f'_+(x)`` there."""
        v = _frac(v)
        cache = self.__dict__.setdefault("_stairs", {})
        if v not in cache:
            pts = [-v] + [k for k in self.kinks() if -v < k < v] + [v]
            cache[v] = (pts, [p + self.left_deriv(p) for p in pts], [self.right_deriv(p) for p in pts])
        return cache[v]


class CallableConvexFunction:
    """A convex function given by callbacks for ``f`` and its one-sided derivatives.

    Missing derivative callbacks are replaced by one-sided difference
    quotients with step ``h``.
    """

    def __init__(
        self,
        f: Callable[[float], float],
        u: float,
        left_deriv: Callable[[float], float] | None = None,
        right_deriv: Callable[[float], float] | None = None,
        h: float = 1e-7,
    ):
        self.f = f
        self.u = float(u)
        self._ld = left_deriv or (lambda x: (f(x) - f(x - h)) / h)
        self._rd = right_deriv or (lambda x: (f(x + h) - f(x)) / h)

    def __call__(self, x: float) -> float:
        if not (-self.u <= x <= self.u):
            raise OutOfDomain(f"x = {x} outside [-{self.u}, {self.u}]")
        return self.f(x)

    def left_deriv(self, x: float) -> float:
        return self._ld(x)

    def right_deriv(self, x: float) -> float:
        return self._rd(x)

    def subdiff(self, x: float) -> SubdiffInterval:
        if not (-self.u <= x <= self.u):
            raise OutOfDomain(f"x = {x} outside [-{self.u}, {self.u}]")
        lo, hi = self._ld(x), self._rd(x)
        return SubdiffInterval(min(lo, hi), max(lo, hi))


ConvexFunction = Union[PLConvexFunction, CallableConvexFunction]


def one_sided_derivs(f: ConvexFunction, x0: Number) -> SubdiffInterval:
    """``[f'_-(x0), f'_+(x0)]`` for ``x0`` strictly inside the domain."""
    if not (-f.u < x0 < f.u):
        raise OutOfDomain(f"x0 = {x0} outside (-{f.u}, {f.u})")
    return f.subdiff(x0)


def t_map(p: DPoint):
    return p.x + p.d


def _check_v(f: ConvexFunction, v: Number) -> None:
    if not (0 < v < f.u):
        raise OutOfDomain(f"v = {v} must satisfy 0 < v < {f.u}")


def t_range(f: ConvexFunction, v: Number) -> tuple:
    """Range ``[w1, w2]`` of ``t`` on D restricted to ``[-v, v]``."""
    _check_v(f, v)
    if isinstance(f, PLConvexFunction):
        v = _frac(v)
    return -v + f.left_deriv(-v), v + f.right_deriv(v)


def _invert_pl(f: PLConvexFunction, v: Fraction, s: Fraction) -> DPoint:
    # x + df(x) over [-v, v] is a monotone staircase: a vertical step at each
    # kink and a unit-slope ramp on each linear piece.
    pts, bottoms, hi = f.staircase(v)
    j = bisect.bisect_right(bottoms, s) - 1
    k = pts[j]
    if s <= k + hi[j]:
        return DPoint(k, s - k)
    m = hi[j]
    return DPoint(s - m, m)


def _invert_callable(f: CallableConvexFunction, v: float, s: float) -> DPoint:
    # x0 = sup { x : x + f'_-(x) <= s }; x + f'_- is increasing and left-continuous
    a, b = -v, v
    if b + f.left_deriv(b) <= s:
        x0 = b
    else:
        for _ in range(200):
            m = 0.5 * (a + b)
            if m <= a or m >= b:
                break
            if m + f.left_deriv(m) <= s:
                a = m
            else:
                b = m
        x0 = a
    sub = f.subdiff(x0)
    return DPoint(x0, sub.clamp(s - x0))


def invert_t(f: ConvexFunction, v: Number, s: Number) -> DPoint:
    """The unique ``(x0, d0)`` in D with ``x0 + d0 = s``."""
    w1, w2 = t_range(f, v)
    if isinstance(f, PLConvexFunction):
        s, v = _frac(s), _frac(v)
    if not (w1 <= s <= w2):
        raise OutOfRange(f"s = {float(s)} outside [{float(w1)}, {float(w2)}]")
    if isinstance(f, PLConvexFunction):
        return _invert_pl(f, v, s)
    return _invert_callable(f, float(v), float(s))


def dpoint_manhattan(p: DPoint, q: DPoint):
    return abs(p.x - q.x) + abs(p.d - q.d)


def dpoint_euclid(p: DPoint, q: DPoint) -> float:
    return math.hypot(float(p.x - q.x), float(p.d - q.d))


def sample_dpoints(
    f: PLConvexFunction, v: Number, n: int, rng: np.random.Generator, grid: int = 10**6
) -> list[DPoint]:
    """Random members of D over ``[-v, v]``, with kinks over-represented.

    Coordinates are drawn from a rational grid of spacing ``1/grid`` (relative
    to ``v`` and to the subdifferential width), keeping denominators small.
    """
    v = _frac(v)
    kinks = [k for k in f.kinks() if -v <= k <= v] + [-v, v]
    out = []
    for _ in range(n):
        if rng.random() < 0.3:
            x = kinks[int(rng.integers(len(kinks)))]
        else:
            x = v * Fraction(int(rng.integers(-grid, grid + 1)), grid)
        sub = f.subdiff(x)
        d = sub.lo + (sub.hi - sub.lo) * Fraction(int(rng.integers(0, grid + 1)), grid)
        out.append(DPoint(x, d))
    return out


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Chart:
    """Local graph representation of the boundary near ``p0``.

    World point ``P`` maps to chart coordinates ``rot(psi) (P - p0)``; the
    boundary inside the strip ``|x| <= u`` is the graph of ``f`` and ``O``
    sits on the positive y-axis.  ``max_error`` bounds the deviation of the
    graph from the true boundary (0 for polygons).
    """

    p0: Point
    psi: float
    f: ConvexFunction
    u: float
    v: float
    o_point: Point
    max_error: float = 0.0

    def to_chart(self, P) -> Point:
        c, s = math.cos(self.psi), math.sin(self.psi)
        dx, dy = P[0] - self.p0.x, P[1] - self.p0.y
        return Point(c * dx - s * dy, s * dx + c * dy)

    def to_world(self, x: float, y: float) -> Point:
        c, s = math.cos(self.psi), math.sin(self.psi)
        return Point(self.p0.x + c * x + s * y, self.p0.y - s * x + c * y)

    def world_direction(self, slope) -> float:
        return math.atan(float(slope)) - self.psi

    def graph_point(self, x) -> Point:
        return self.to_world(float(x), float(self.f(x)))

    def cylinder_point(self, p: DPoint):
        """The pointed supporting line encoded by ``p``, in world coordinates."""
        from .geom import CylinderPoint

        return CylinderPoint(self.graph_point(p.x), self.world_direction(p.d))

    def fan_at(self, x) -> tuple[float, float]:
        """World directions bounding the supporting fan at the graph point over ``x``."""
        sub = self.f.subdiff(x)
        return self.world_direction(sub.lo), self.world_direction(sub.hi)


def _boundary_distance(H: ConvexBody, O: Point) -> float:
    if isinstance(H, Disc):
        return H.radius - math.dist(O, H.center)
    if isinstance(H, Polygon):
        return min(H._edge_signed(i, O) for i in range(H.n))
    grid = np.linspace(-PI, PI, 2048, endpoint=False)
    return min(H.support(a) - O.dot(right_normal(a)) for a in grid)


def chart_at(H: ConvexBody, P0, samples: int = 512) -> Chart:
    """Chart of ``H`` around the boundary point ``P0``.

    ``O = H.interior_point()``, ``u = dist(O, boundary) / 4`` and
    ``v = u / 2``.  Polygons give an exact PL graph; other bodies a PL
    interpolant through ``samples + 1`` exact boundary points.
    """
    if not H.has_interior:
        raise DegenerateBody("charts need a body with nonempty interior")
    P0 = as_point(P0)
    if H.contains(P0) is not Location.BOUNDARY:
        raise NotOnBoundary(f"{tuple(P0)} is not on the boundary")
    O = H.interior_point()
    r = _boundary_distance(H, O)
    eps = r / 4.0
    psi = PI / 2 - math.atan2(O.y - P0.y, O.x - P0.x)
    proto = Chart(P0, psi, None, eps, eps / 2, O)  # type: ignore[arg-type]
    yO = proto.to_chart(O).y
    down = direction_of((proto.to_world(0.0, -1.0) - proto.to_world(0.0, 0.0)))

    def lower(x: float) -> float:
        return proto.to_chart(H.ray_boundary_hit(proto.to_world(x, yO), down)).y

    if isinstance(H, Polytope):
        xs, ys = [-eps], [lower(-eps)]
        inner = []
        for V in H.vertices:
            c = proto.to_chart(V)
            if -eps < c.x < eps and c.y < yO:
                inner.append(c)
        for c in sorted(inner):
            xs.append(c.x)
            ys.append(c.y)
        xs.append(eps)
        ys.append(lower(eps))
        f = PLConvexFunction(xs, ys, slope_tol=Fraction(1, 10**9))
        max_error = 0.0
    else:
        grid = np.linspace(-eps, eps, samples + 1)
        grid[0], grid[-1] = -eps, eps
        ys = [lower(float(x)) for x in grid]
        f = PLConvexFunction(list(grid), ys, slope_tol=Fraction(1, 10**9))
        mids = 0.5 * (grid[1:] + grid[:-1])
        max_error = max(abs(float(f(float(m))) - lower(float(m))) for m in mids)
    chart = Chart(P0, psi, f, eps, eps / 2, O, max_error)
    _validate(chart, H)
    return chart


def _validate(chart: Chart, H: ConvexBody) -> None:
    # every supporting line meeting the arc must be non-vertical in the chart
    if not all(math.isfinite(float(m)) for m in chart.f.slopes):
        raise DegenerateBody("chart graph is not a function")
    tol = max(TAU, 10 * chart.max_error)
    for x in chart.f.xs:
        if H.contains(chart.graph_point(x), tol) is not Location.BOUNDARY:
            raise NotOnBoundary("chart graph left the boundary")


__all__ = [
    "CallableConvexFunction",
    "Chart",
    "DPoint",
    "PLConvexFunction",
    "SubdiffInterval",
    "chart_at",
    "dpoint_euclid",
    "dpoint_manhattan",
    "invert_t",
    "one_sided_derivs",
    "sample_dpoints",
    "t_map",
    "t_range",
]

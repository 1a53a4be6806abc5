"""SVG figures built with :mod:`xml.etree.ElementTree`.

Every geometric primitive (body outline, line, circle, marked point) is a
single ``<path>`` element.  World coordinates are kept as is inside a
group flipped vertically, so y points up as in the plane.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Iterable, Sequence

import numpy as np

from .bodies import ConvexBody, Disc, Polytope
from .geom import DirectedLine, Point
from .parallel import ParallelBody, boundary_to_slide
from .slide_curve import SlideCurve, slide_curve
from .tangents import CommonTangentReport

SVG_NS = "http://www.w3.org/2000/svg"


def _f(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _polyline(pts: Iterable[Sequence[float]], closed: bool) -> str:
    pts = list(pts)
    d = "M " + " L ".join(f"{_f(p[0])} {_f(p[1])}" for p in pts)
    return d + (" Z" if closed else "")


def _circle(c, r: float) -> str:
    x, y = c[0], c[1]
    return (
        f"M {_f(x + r)} {_f(y)} A {_f(r)} {_f(r)} 0 1 1 {_f(x - r)} {_f(y)} "
        f"A {_f(r)} {_f(r)} 0 1 1 {_f(x + r)} {_f(y)} Z"
    )


def body_path(H: ConvexBody, samples: int = 360) -> str:
    if isinstance(H, Disc):
        return _circle(H.center, H.radius)
    if isinstance(H, Polytope):
        return _polyline(H.vertices, closed=True)
    return _polyline(H.boundary_samples(samples), closed=True)


class Figure:
    """Accumulates paths and computes a padded view box on output."""

    def __init__(self, title: str = ""):
        self.title = title
        self.items: list[tuple[str, dict]] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def extend_box(self, pts) -> None:
        for p in pts:
            self.xs.append(float(p[0]))
            self.ys.append(float(p[1]))

    def path(self, d: str, **style) -> None:
        self.items.append((d, style))

    def body(self, H: ConvexBody, **style) -> None:
        style.setdefault("fill", "#dddddd")
        style.setdefault("stroke", "black")
        self.extend_box(H.boundary_samples(64))
        self.path(body_path(H), **style)

    def point(self, P, r: float = 0.03, **style) -> None:
        style.setdefault("fill", "black")
        self.extend_box([P])
        self.path(_circle(P, r), **style)

    def circle(self, c, r: float, **style) -> None:
        style.setdefault("fill", "none")
        style.setdefault("stroke", "gray")
        self.extend_box([(c[0] - r, c[1] - r), (c[0] + r, c[1] + r)])
        self.path(_circle(c, r), **style)

    def line(self, l: DirectedLine, half: float, **style) -> None:
        style.setdefault("stroke", "black")
        style.setdefault("fill", "none")
        self.path(_polyline([l.point_at(-half), l.point_at(half)], closed=False), **style)

    def curve(self, pts, closed: bool = False, **style) -> None:
        style.setdefault("stroke", "black")
        style.setdefault("fill", "none")
        pts = list(pts)
        self.extend_box(pts)
        self.path(_polyline(pts, closed), **style)

    def to_string(self, width: int = 480) -> str:
        x0, x1 = min(self.xs, default=0.0), max(self.xs, default=1.0)
        y0, y1 = min(self.ys, default=0.0), max(self.ys, default=1.0)
        pad = 0.1 * max(x1 - x0, y1 - y0, 1e-9)
        x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
        w, h = x1 - x0, y1 - y0
        stroke = _f(max(w, h) / 400)
        root = ET.Element(
            "svg",
            {
                "xmlns": SVG_NS,
                "width": str(width),
                "height": str(max(1, round(width * h / w))),
                "viewBox": f"{_f(x0)} {_f(-y1)} {_f(w)} {_f(h)}",
            },
        )
        if self.title:
            ET.SubElement(root, "title").text = self.title
        g = ET.SubElement(root, "g", {"transform": "scale(1,-1)", "stroke-width": stroke})
        for d, style in self.items:
            attrs = {"d": d}
            attrs.update({k.replace("_", "-"): str(v) for k, v in style.items()})
            ET.SubElement(g, "path", attrs)
        ET.indent(root)
        return ET.tostring(root, encoding="unicode") + "\n"


def _diameter(*bodies: ConvexBody) -> float:
    pts = np.vstack([B.boundary_samples(64) for B in bodies])
    span = pts.max(axis=0) - pts.min(axis=0)
    return float(max(span.max(), 1.0))


def fan_figure(H: ConvexBody, k: int = 12, sc: SlideCurve | None = None) -> str:
    """The body with pointed supporting lines at ``k`` evenly spaced curve parameters."""
    sc = sc or slide_curve(H)
    fig = Figure("supporting lines")
    fig.body(H)
    half = 0.35 * _diameter(H)
    for j in range(k):
        q = sc.eval(sc.total_length * j / k)
        fig.line(q.line, half, stroke="steelblue")
        fig.point(q.point, r=half / 40)
    return fig.to_string()


def unrolled_figure(sc: SlideCurve, n: int = 2048) -> str:
    """Boundary position against accumulated direction, both starting at 0."""
    s = np.union1d(np.linspace(0.0, sc.total_length, n + 1), sc.cum_length)
    x, y, turn = sc.sample_turn(s)
    x[-1], y[-1] = x[0], y[0]
    turn[-1] = sc.winding
    pos = np.concatenate([[0.0], np.cumsum(np.hypot(np.diff(x), np.diff(y)))])
    fig = Figure("unrolled slide curve")
    fig.curve(np.column_stack([pos, turn]), stroke="darkred")
    return fig.to_string()


def parallel_figure(pb: ParallelBody, at: float = 0.3) -> str:
    """``H``, the boundary of ``H^(r)``, and one pair ``P, P*`` with its circles.

    ``at`` is the fraction of the slide curve where ``P`` is taken.
    """
    H, r, sc = pb.source, pb.r, pb.curve
    fig = Figure("parallel body")
    s = np.union1d(np.linspace(0.0, sc.total_length, 721), sc.cum_length)
    fig.curve(pb.boundary_points(s), closed=True, stroke="navy")
    fig.body(H)
    P = Point(*pb.boundary_points([at * sc.total_length])[0])
    q = boundary_to_slide(H, P, r, tol=1e-6)
    half = 0.5 * _diameter(H) + r
    fig.line(q.line, half, stroke="steelblue")
    fig.line(DirectedLine(P, q.dir), half, stroke="steelblue", stroke_dasharray="0.05")
    fig.circle(q.point, r)
    fig.circle(P, r)
    fig.point(P, r=r / 25)
    fig.point(q.point, r=r / 25)
    return fig.to_string()


def tangents_figure(H1: ConvexBody, H2: ConvexBody, report: CommonTangentReport) -> str:
    """Both bodies, the separating line, the four common lines and their touch points."""
    fig = Figure("common supporting lines")
    fig.body(H1)
    fig.body(H2)
    half = 1.2 * _diameter(H1, H2)
    fig.line(report.separator, half, stroke="gray", stroke_dasharray="0.1")
    for e in report.events:
        fig.line(e.line, half, stroke="darkgreen")
        fig.point(e.touch1, r=half / 80)
        fig.point(e.touch2, r=half / 80)
    return fig.to_string()


__all__ = [
    "Figure",
    "body_path",
    "fan_figure",
    "parallel_figure",
    "tangents_figure",
    "unrolled_figure",
]

"""Command-line front end.

Output is one record per line with tab-separated fields; floats use
twelve digits after the point.  Exit status is 0 on success, 2 on a
geometric failure (the error name goes to stderr) and 1 on unreadable
input or bad arguments.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .bodies import ConvexBody, Disc, Polytope, body_from_json
from .convex_fn import chart_at
from .errors import GeometryError, InvalidBody
from .geom import PI, TWO_PI, euclid4
from .oracles import brute_common_tangents, brute_supporting_line, hausdorff_lines, polyline_length
from .parallel import ParallelBody, boundary_to_slide, slide_to_boundary
from .slide_curve import slide_curve
from .support import semitangents, separating_line, supporting_line
from .svg import fan_figure, parallel_figure, tangents_figure, unrolled_figure
from .tangents import common_supporting_lines

logger = logging.getLogger("slideturn")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is reserved for geometric failures
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fmt(x: float) -> str:
    s = f"{x:.12f}"
    return f"{0.0:.12f}" if float(s) == 0.0 else s


def emit(out, *fields) -> None:
    out.write("\t".join(fmt(f) if isinstance(f, float) else str(f) for f in fields) + "\n")


def load_body(path: str) -> ConvexBody:
    # an unreadable or invalid body file is an input error, not a geometric one
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    try:
        return body_from_json(obj)
    except InvalidBody as exc:
        raise UsageError(f"{path}: {exc}") from None


def parse_point(text: str) -> tuple[float, float]:
    try:
        x, y = (float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected x,y but got {text!r}") from None
    return x, y


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("SLIDETURN_SEED", "0"))


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_support(args, out) -> int:
    H = load_body(args.body)
    pl = supporting_line(H, args.alpha)
    emit(out, "line", pl.line.base.x, pl.line.base.y, pl.line.dir)
    es = H.extreme_set(args.alpha)
    for p in es.points:
        emit(out, "extreme", p.x, p.y)
    return 0


def cmd_semitangent(args, out) -> int:
    H = load_body(args.body)
    st = semitangents(H, parse_point(args.point), args.tol)
    emit(out, "first", st.first.dir)
    emit(out, "last", st.last.dir)
    emit(out, "corner", "true" if st.is_corner else "false")
    return 0


def cmd_slidecurve(args, out) -> int:
    H = load_body(args.body)
    sc = slide_curve(H, args.resolution)
    emit(out, "length", sc.total_length)
    emit(out, "pieces", len(sc.pieces))
    emit(out, "winding", sc.winding)
    for j in range(args.samples):
        s = sc.total_length * j / args.samples
        q = sc.eval(s)
        emit(out, "sample", s, q.point.x, q.point.y, q.dir)
    _write(args.svg, fan_figure(H, args.fan, sc))
    _write(args.unrolled, unrolled_figure(sc))
    return 0


def cmd_parallel(args, out) -> int:
    H = load_body(args.body)
    if not args.r > 0:
        raise UsageError("--r must be positive")
    pb = ParallelBody(H, args.r, args.resolution)
    emit(out, "perimeter", pb.perimeter)
    emit(out, "source_perimeter", H.perimeter())
    emit(out, "pieces", len(pb.boundary))
    _write(args.svg, parallel_figure(pb))
    return 0


def cmd_tangents(args, out) -> int:
    H1, H2 = load_body(args.body1), load_body(args.body2)
    rep = common_supporting_lines(H1, H2, args.tol)
    emit(out, "start", rep.t0, rep.separator.dir)
    for e in rep.events:
        emit(
            out, "tangent", e.kind.value, e.t, e.line.dir,
            e.touch1.x, e.touch1.y, e.touch2.x, e.touch2.y,
        )
    _write(args.svg, tangents_figure(H1, H2, rep))
    return 0


def cmd_separate(args, out) -> int:
    H1, H2 = load_body(args.body1), load_body(args.body2)
    l = separating_line(H1, H2, args.tol)
    emit(out, "separator", l.base.x, l.base.y, l.dir)
    return 0


def cmd_chart(args, out) -> int:
    H = load_body(args.body)
    c = chart_at(H, parse_point(args.point))
    emit(out, "frame", c.p0.x, c.p0.y, c.psi)
    emit(out, "interior", c.o_point.x, c.o_point.y)
    emit(out, "strip", c.u, c.v, c.max_error)
    if len(c.f.xs) <= 64:
        for x, y in zip(c.f.xs, c.f.ys):
            emit(out, "knot", float(x), float(y))
    else:
        emit(out, "knots", len(c.f.xs))
    lo, hi = c.fan_at(0)
    sub = c.f.subdiff(0)
    emit(out, "subdiff", float(sub.lo), float(sub.hi))
    emit(out, "fan", lo, hi)
    return 0


def _checks(H: ConvexBody, rng: np.random.Generator, resolution: int):
    sc = slide_curve(H, resolution)
    yield "closure", euclid4(sc.start(), sc.end()), 1e-9
    yield "winding", abs(sc.winding - TWO_PI), 1e-9
    oracle = polyline_length(sc, 2**14)
    yield "length_oracle", abs(oracle - sc.total_length), 1e-4
    if isinstance(H, (Polytope, Disc)):
        worst = 0.0
        for a in np.linspace(-PI, PI, 720, endpoint=False):
            fast = supporting_line(H, float(a)).line
            slow = brute_supporting_line(H, float(a))
            worst = max(worst, abs(fast.signed_side(slow.base)))
        # boundary sampling of a disc limits the oracle to about 3e-7
        yield "support_oracle", worst, 1e-9 if isinstance(H, Polytope) else 1e-6
        pb = ParallelBody(H, 1.0)
        yield "parallel_perimeter", abs(pb.perimeter - H.perimeter() - TWO_PI), 1e-9
    worst = 0.0
    for s in rng.uniform(0.0, sc.total_length, 200):
        q = sc.eval(float(s))
        back = boundary_to_slide(H, slide_to_boundary(H, q, tol=1e-6), tol=1e-6)
        worst = max(worst, math.dist(back.point, q.point))
    yield "reciprocity", worst, 1e-6


def cmd_check(args, out) -> int:
    rng = np.random.default_rng(_seed(args))
    bodies = [(p, load_body(p)) for p in args.bodies]
    ok = True
    for path, H in bodies:
        for name, value, bound in _checks(H, rng, args.resolution):
            passed = value <= bound
            ok &= passed
            emit(out, "check", Path(path).name, name, "pass" if passed else "FAIL", float(value))
    for (p1, H1), (p2, H2) in zip(bodies, bodies[1:]):
        if not (H1.has_interior and H2.has_interior):
            continue
        try:
            rep = common_supporting_lines(H1, H2, args.tol)
        except GeometryError:
            continue
        gap = hausdorff_lines(rep.lines, brute_common_tangents(H1, H2))
        passed = gap <= 1e-6
        ok &= passed
        emit(out, "check", f"{Path(p1).name}+{Path(p2).name}", "tangent_oracle",
             "pass" if passed else "FAIL", float(gap))
    return 0 if ok else 2


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--resolution", type=int, default=4096, help="samples for smooth arcs (>= 64)")
    common.add_argument("--tol", type=float, default=1e-9, help="classification tolerance (> 0)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomised checks")

    p = _Parser(prog="slideturn", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("support", parents=[common], help="supporting line of a direction")
    s.add_argument("body")
    s.add_argument("--alpha", type=float, required=True)
    s.set_defaults(func=cmd_support)

    s = sub.add_parser("semitangent", parents=[common], help="first and last semitangent")
    s.add_argument("body")
    s.add_argument("--point", required=True)
    s.set_defaults(func=cmd_semitangent)

    s = sub.add_parser("slidecurve", parents=[common], help="slide curve summary")
    s.add_argument("body")
    s.add_argument("--samples", type=int, default=0)
    s.add_argument("--svg")
    s.add_argument("--fan", type=int, default=12, help="supporting lines drawn in --svg")
    s.add_argument("--unrolled", help="write the unrolled curve as SVG")
    s.set_defaults(func=cmd_slidecurve)

    s = sub.add_parser("parallel", parents=[common], help="parallel body")
    s.add_argument("body")
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_parallel)

    s = sub.add_parser("tangents", parents=[common], help="four common supporting lines")
    s.add_argument("body1")
    s.add_argument("body2")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_tangents)

    s = sub.add_parser("separate", parents=[common], help="strictly separating line")
    s.add_argument("body1")
    s.add_argument("body2")
    s.set_defaults(func=cmd_separate)

    s = sub.add_parser("chart", parents=[common], help="local convex-function chart")
    s.add_argument("body")
    s.add_argument("--point", required=True)
    s.set_defaults(func=cmd_chart)

    s = sub.add_parser("check", parents=[common], help="cross-check against the oracles")
    s.add_argument("bodies", nargs="+")
    s.set_defaults(func=cmd_check)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.resolution < 64:
            raise UsageError("--resolution must be at least 64")
        if not args.tol > 0:
            raise UsageError("--tol must be positive")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args, out)
    except GeometryError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except (UsageError, OSError, ValueError, KeyError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

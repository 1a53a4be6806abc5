import math

import numpy as np
import pytest

from slideturn import DirectedLine, OutOfRange, PLConvexFunction, disc, point, polygon, slide_curve
from slideturn.convex_fn import DPoint
from slideturn.geom import PI, TWO_PI
from slideturn.oracles import (
    brute_common_tangents,
    brute_distance,
    brute_nearest_point,
    brute_supporting_line,
    grid_invert_t,
    hausdorff_lines,
    polyline_length,
    support_grid,
)


def test_brute_supporting_line_examples(unit_square, unit_disc):
    l = brute_supporting_line(unit_square, 0.0)
    assert l.base[1] == 0 and l.dir == 0.0
    assert brute_supporting_line(unit_disc, 0.0).base == pytest.approx((0, -1), abs=1e-6)
    assert brute_supporting_line(unit_square, PI / 4).base == (1, 0)


def test_support_grid_matches_definition(unit_square, unit_disc):
    a = np.linspace(-PI, PI, 64, endpoint=False)
    assert support_grid(unit_disc, a) == pytest.approx(np.ones(64))
    expect = [max(math.sin(t) * x - math.cos(t) * y for x, y in unit_square.vertices) for t in a]
    assert support_grid(unit_square, a) == pytest.approx(expect, abs=1e-15)


def test_brute_common_tangents_cluster_counts(unit_square):
    assert len(brute_common_tangents(disc((0, 0), 1), disc((4, 0), 1))) == 4
    assert len(brute_common_tangents(unit_square, polygon([(3, 0), (4, 0), (4, 1), (3, 1)]))) == 4


def test_polyline_length_examples_and_monotone(unit_square, unit_disc):
    sq = slide_curve(unit_square)
    assert polyline_length(sq, 1 << 14) == pytest.approx(4 + TWO_PI, abs=1e-4)
    dc = slide_curve(unit_disc)
    lengths = [polyline_length(dc, n) for n in (64, 256, 1024, 1 << 14)]
    assert all(a <= b for a, b in zip(lengths, lengths[1:]))
    assert lengths[-1] == pytest.approx(TWO_PI * math.sqrt(2), abs=1e-4)
    assert polyline_length(slide_curve(point((1, 1))), 1 << 12) == pytest.approx(TWO_PI, abs=1e-6)


def test_polyline_length_callable_needs_period():
    circle = lambda s: np.column_stack([np.cos(s), np.sin(s)])  # noqa: E731
    assert polyline_length(circle, 4096, period=TWO_PI) == pytest.approx(TWO_PI, abs=1e-5)
    with pytest.raises(ValueError):
        polyline_length(circle, 16)


def test_grid_invert_t_examples():
    zero = PLConvexFunction([-2, 2], [0, 0])
    p = grid_invert_t(zero, 1, 0.3)
    assert p.x == pytest.approx(0.3) and p.d == 0
    ab = PLConvexFunction([-2, 0, 2], [2, 0, 2])
    assert grid_invert_t(ab, 1, -2) == DPoint(-1.0, -1.0)
    assert grid_invert_t(ab, 1, 0.5) == DPoint(0.0, 0.5)
    with pytest.raises(OutOfRange):
        grid_invert_t(ab, 1, 3)


def test_hausdorff_lines_is_non_directed():
    a = [DirectedLine((0, 0), 0.0), DirectedLine((0, 1), 0.0)]
    b = [l.reversed() for l in a]
    assert hausdorff_lines(a, b) == pytest.approx(0.0, abs=1e-15)
    assert hausdorff_lines(a, a[:1]) == pytest.approx(1.0)
    assert hausdorff_lines(a, []) == math.inf


def test_nearest_and_distance_oracles(unit_square):
    assert brute_nearest_point(unit_square, (0.5, -1)) == pytest.approx((0.5, 0), abs=1e-3)
    assert brute_distance(unit_square, polygon([(3, 0), (4, 0), (4, 1), (3, 1)])) == pytest.approx(2.0)

import math

import pytest
from conftest import random_disjoint_pair

from slideturn import (
    DirectedLine,
    NotDisjoint,
    Side,
    common_supporting_lines,
    disc,
    length,
    polygon,
    segment,
    side_of,
    slide_curve,
    tangent_count_sweep,
)
from slideturn.errors import DegenerateBody
from slideturn.geom import line_gap
from slideturn.oracles import brute_common_tangents, hausdorff_lines
from slideturn.tangents import EventKind, pairwise_distinct

SQUARE_FAR = polygon([(3, 0), (4, 0), (4, 1), (3, 1)])
D1, D2 = disc((0, 0), 1), disc((4, 0), 1)


def through(a, b):
    return DirectedLine(a, math.atan2(b[1] - a[1], b[0] - a[0]))


def matches(lines, expected, tol):
    return hausdorff_lines(lines, expected) <= tol


def test_side_of_examples(unit_square):
    assert side_of(DirectedLine((0, 0), 0.0), unit_square) is Side.TOUCHING
    assert side_of(DirectedLine((0, -5), 0.0), unit_square) is Side.LEFT
    assert side_of(DirectedLine((0, 0.5), 0.0), unit_square) is Side.CROSSING
    assert side_of(DirectedLine((0, 5), 0.0), unit_square) is Side.RIGHT


def test_two_unit_discs_closed_form():
    rep = common_supporting_lines(D1, D2)
    m = 1 / math.sqrt(3)
    expected = [
        DirectedLine((0, 1), 0.0),
        DirectedLine((0, -1), 0.0),
        DirectedLine((2, 0), math.atan(m)),
        DirectedLine((2, 0), -math.atan(m)),
    ]
    assert len(rep.events) == 4
    assert matches(rep.lines, expected, 1e-9)


def test_two_unit_squares():
    rep = common_supporting_lines(polygon([(0, 0), (1, 0), (1, 1), (0, 1)]), SQUARE_FAR)
    expected = [
        DirectedLine((0, 0), 0.0),
        DirectedLine((0, 1), 0.0),
        through((1, 1), (3, 0)),
        through((1, 0), (3, 1)),
    ]
    assert matches(rep.lines, expected, 1e-12)


def test_disc_and_square_against_oracle():
    rep = common_supporting_lines(D1, SQUARE_FAR)
    assert len(rep.lines) == 4 and pairwise_distinct(rep.lines)
    assert hausdorff_lines(rep.lines, brute_common_tangents(D1, SQUARE_FAR)) <= 1e-9


def test_events_touch_both_and_are_ordered(rng):
    for kinds in (("polygon", "polygon"), ("disc", "polygon"), ("polygon", "disc")):
        for _ in range(5):
            A, B = random_disjoint_pair(rng, kinds=kinds)
            rep = common_supporting_lines(A, B)
            ts = [e.t for e in rep.events]
            assert rep.t0 <= ts[0] < ts[1] < ts[2] < ts[3] < rep.t0 + length(slide_curve(A))
            assert [e.kind for e in rep.events] == list(EventKind)
            for e in rep.events:
                assert side_of(e.line, A, 1e-9) is Side.TOUCHING
                assert side_of(e.line, B, 1e-9) is Side.TOUCHING
                assert abs(e.line.signed_side(e.touch2)) <= 1e-9
            assert pairwise_distinct(rep.lines)


def test_orientation_coherence():
    rep = common_supporting_lines(D1, D2)
    inner = {EventKind.RIGHT_TO_TOUCH, EventKind.TOUCH_TO_RIGHT}
    for e in rep.events:
        centre = e.line.signed_side(D2.center)
        if e.kind in inner:
            assert centre < 0  # opposite side from H1
            assert abs(math.tan(e.line.dir)) == pytest.approx(1 / math.sqrt(3), abs=1e-9)
        else:
            assert centre > 0
            assert math.sin(e.line.dir) == pytest.approx(0.0, abs=1e-9)


def test_sweep_transition_counts(unit_square):
    assert tangent_count_sweep(D1, D2, 10_000).transitions == 4
    assert tangent_count_sweep(unit_square, SQUARE_FAR, 10_000).transitions == 4


def test_errors(unit_square):
    with pytest.raises(NotDisjoint):
        common_supporting_lines(unit_square, unit_square)
    with pytest.raises(NotDisjoint):
        tangent_count_sweep(D1, D1)
    with pytest.raises(DegenerateBody):
        common_supporting_lines(segment((0, 0), (1, 0)), SQUARE_FAR)


def test_agreement_with_oracle_on_random_pairs(rng):
    for _ in range(10):
        A, B = random_disjoint_pair(rng)
        rep = common_supporting_lines(A, B)
        assert hausdorff_lines(rep.lines, brute_common_tangents(A, B)) <= 1e-6


def test_separator_splits_the_pair_and_lines_are_distinct(rng):
    A, B = random_disjoint_pair(rng)
    rep = common_supporting_lines(A, B)
    for e in rep.events:
        assert side_of(e.line, A) is Side.TOUCHING
        assert min(line_gap(e.line, f.line) for f in rep.events if f is not e) > 1e-9
    assert side_of(rep.separator, A) is Side.LEFT and side_of(rep.separator, B) is Side.RIGHT

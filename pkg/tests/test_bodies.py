import math

import numpy as np
import pytest
from conftest import random_convex_polygon
from hypothesis import given, settings
from hypothesis import strategies as st

from slideturn import (
    Edge,
    Location,
    Single,
    SinglePoint,
    body_from_json,
    contains,
    disc,
    ellipse,
    extreme_set,
    perimeter,
    point,
    polygon,
    ray_boundary_hit,
    segment,
)
from slideturn.bodies import Generic, Polygon
from slideturn.errors import InteriorRequired, InvalidBody
from slideturn.geom import PI, DirectedLine, right_normal, signed_side


def test_extreme_set_square_bottom_edge(unit_square):
    assert unit_square.extreme_set(0.0) == Edge((0, 0), (1, 0))


def test_extreme_set_disc_single(unit_disc):
    for a in (0.0, 1.0, -2.5):
        es = extreme_set(unit_disc, a)
        assert isinstance(es, Single)
        assert es.point == pytest.approx((math.sin(a), -math.cos(a)), abs=1e-15)


def test_extreme_set_square_diagonal(unit_square):
    # frozen from the vertex argmax of <v, right_normal(pi/4)>
    assert extreme_set(unit_square, PI / 4) == Single((1, 0))


def test_contains_examples(unit_square, unit_disc):
    assert contains(unit_square, (0.5, 0.5)) is Location.INTERIOR
    assert contains(unit_square, (1, 0.5)) is Location.BOUNDARY
    assert contains(unit_disc, (2, 0)) is Location.OUTSIDE
    assert contains(unit_disc, (0, 1)) is Location.BOUNDARY


def test_ray_boundary_hit_examples(unit_square, unit_disc):
    assert ray_boundary_hit(unit_disc, (0, 0), 0.0) == pytest.approx((1, 0))
    assert ray_boundary_hit(unit_square, (0.5, 0.5), 0.0) == pytest.approx((1, 0.5))
    assert ray_boundary_hit(unit_square, (0.5, 0.5), PI / 4) == pytest.approx((1, 1), abs=1e-12)


def test_ray_boundary_hit_bisection_oracle(unit_square):
    # bisection along the ray against contains()
    O, d = (0.5, 0.5), 0.3
    lo, hi = 0.0, 2.0
    for _ in range(100):
        m = 0.5 * (lo + hi)
        p = (O[0] + m * math.cos(d), O[1] + m * math.sin(d))
        if contains(unit_square, p, 0.0) is Location.OUTSIDE:
            hi = m
        else:
            lo = m
    hit = ray_boundary_hit(unit_square, O, d)
    assert math.dist(hit, O) == pytest.approx(lo, abs=1e-12)


def test_ray_boundary_hit_requires_interior(unit_square):
    with pytest.raises(InteriorRequired):
        ray_boundary_hit(unit_square, (2, 2), 0.0)


def test_perimeters(unit_square, unit_disc):
    assert perimeter(unit_square) == 4.0
    assert perimeter(unit_disc) == pytest.approx(2 * PI, abs=1e-15)
    assert perimeter(segment((0, 0), (3, 0))) == 6.0
    assert perimeter(point((1, 1))) == 0.0


def test_generic_ellipse_perimeter():
    # Ramanujan's second approximation is accurate to ~1e-10 for a = 2, b = 1
    a, b = 2.0, 1.0
    h = ((a - b) / (a + b)) ** 2
    ram = PI * (a + b) * (1 + 3 * h / (10 + math.sqrt(4 - 3 * h)))
    assert perimeter(ellipse((0, 0), a, b)) == pytest.approx(ram, abs=1e-7)


def test_polygon_canonicalization_reorients_and_drops_collinear():
    H = polygon([(0, 1), (1, 1), (1, 0), (0.5, 0), (0, 0)])
    assert H.vertices == ((0, 0), (1, 0), (1, 1), (0, 1))


def test_polygon_rejects_nonconvex():
    with pytest.raises(InvalidBody):
        polygon([(0, 0), (2, 0), (1, 0.2), (1, 2)])


def test_degenerate_constructors():
    assert isinstance(disc((1, 2), 0), SinglePoint)
    assert isinstance(segment((1, 2), (1, 2)), SinglePoint)
    assert not segment((0, 0), (1, 0)).has_interior


def test_body_from_json():
    assert isinstance(body_from_json({"type": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]}), Polygon)
    assert body_from_json({"type": "disc", "center": [0, 0], "radius": 2}).radius == 2
    assert body_from_json({"type": "point", "p": [1, 2]}).vertices == ((1, 2),)
    with pytest.raises(InvalidBody):
        body_from_json({"type": "blob"})
    with pytest.raises(InvalidBody):
        body_from_json({"type": "disc"})


def test_generic_consistency_check():
    with pytest.raises(InvalidBody):
        Generic(lambda a: 1.0, lambda a: (0.0, 0.0))


def test_supporting_property_on_random_polygons(rng):
    for _ in range(20):
        H = random_convex_polygon(rng)
        for a in np.linspace(-PI, PI, 720, endpoint=False):
            es = H.extreme_set(float(a))
            n = right_normal(float(a))
            assert es.first.dot(n) == max(v.dot(n) for v in H.vertices)
            l = DirectedLine(es.first, float(a))
            sides = [signed_side(l, v) for v in H.vertices]
            assert min(sides) >= -1e-12
            assert min(abs(s) for s in sides) <= 1e-12


def test_extreme_set_returns_full_edge_on_tie(rng):
    for _ in range(20):
        H = random_convex_polygon(rng)
        for i in range(H.n):
            es = H.extreme_set(H.edge_dirs[i])
            assert es == Edge(*H.edge(i))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.floats(-1, 2), st.floats(-1, 2), st.floats(-1, 2), st.floats(-1, 2))
def test_convexity_of_membership(seed, x1, y1, x2, y2):
    H = random_convex_polygon(np.random.default_rng(seed))
    X, Y = (x1, y1), (x2, y2)
    if H.contains(X) is not Location.OUTSIDE and H.contains(Y) is not Location.OUTSIDE:
        assert H.contains(((x1 + x2) / 2, (y1 + y2) / 2)) is not Location.OUTSIDE


def test_nearest_point_polygon(unit_square):
    assert unit_square.nearest_point((0.5, -1)) == (0.5, 0)
    assert unit_square.nearest_point((2, 2)) == (1, 1)

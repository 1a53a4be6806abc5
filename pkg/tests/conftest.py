import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slideturn import PLConvexFunction, disc, polygon  # noqa: E402

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def random_convex_polygon(rng: np.random.Generator, n: int | None = None, scale: float = 1.0, center=(0.0, 0.0)):
    """Vertices at sorted random angles on a random ellipse, rotated and shifted."""
    n = int(rng.integers(3, 41)) if n is None else n
    while True:
        ang = np.sort(rng.uniform(0.0, 2 * math.pi, n))
        if np.min(np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))) > 1e-3:
            break
    a, b = rng.uniform(0.5, 1.5, 2) * scale
    rot = rng.uniform(0, 2 * math.pi)
    c, s = math.cos(rot), math.sin(rot)
    pts = []
    for t in ang:
        x, y = a * math.cos(t), b * math.sin(t)
        pts.append((center[0] + c * x - s * y, center[1] + s * x + c * y))
    return polygon(pts)


def random_disjoint_pair(rng: np.random.Generator, gap: float = 0.1, kinds=("polygon", "polygon")):
    """Two bodies whose bounding circles are at least ``gap`` apart."""

    def make(kind, center):
        if kind == "disc":
            return disc(center, float(rng.uniform(0.3, 1.5)))
        return random_convex_polygon(rng, center=center)

    A = make(kinds[0], (0.0, 0.0))
    rA = max(math.dist(p, (0.0, 0.0)) for p in A.boundary_samples(64))
    phi = rng.uniform(0, 2 * math.pi)
    B0 = make(kinds[1], (0.0, 0.0))
    rB = max(math.dist(p, (0.0, 0.0)) for p in B0.boundary_samples(64))
    d = rA + rB + gap + float(rng.uniform(0.0, 2.0))
    center = (d * math.cos(phi), d * math.sin(phi))
    if kinds[1] == "disc":
        B = disc(center, B0.radius)
    else:
        B = polygon([(p[0] + center[0], p[1] + center[1]) for p in B0.vertices])
    return A, B


def random_pl_function(rng: np.random.Generator, kinks: int | None = None) -> PLConvexFunction:
    """Rational knots on ``[-u, u]`` with strictly increasing rational slopes."""
    k = int(rng.integers(1, 12)) if kinks is None else kinks
    u = Fraction(int(rng.integers(1, 5)))
    inner = sorted({Fraction(int(n), 1000) * u for n in rng.integers(-999, 1000, k)})
    xs = [-u, *inner, u]
    slopes = sorted({Fraction(int(n), 64) for n in rng.integers(-256, 257, len(xs) + 4)})
    start = int(rng.integers(0, len(slopes) - len(xs) + 2))
    slopes = slopes[start : start + len(xs) - 1]
    while len(slopes) < len(xs) - 1:
        slopes.append(slopes[-1] + 1)
    ys = [Fraction(int(rng.integers(-10, 11)), 7)]
    for a, b, m in zip(xs, xs[1:], slopes):
        ys.append(ys[-1] + m * (b - a))
    return PLConvexFunction(xs, ys)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_square():
    return polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def unit_disc():
    return disc((0, 0), 1)


@pytest.fixture
def acceptance():
    """Record ``(criterion, description, passed)`` for the terminal summary."""

    def record(number: int, description: str, passed: bool) -> None:
        _ACCEPTANCE[number] = (description, bool(passed))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_ACCEPTANCE):
        desc, ok = _ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {desc}")

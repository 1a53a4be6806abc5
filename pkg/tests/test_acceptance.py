"""The seven acceptance criteria, each at its stated tolerance and time budget."""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from conftest import random_convex_polygon, random_disjoint_pair, random_pl_function
from golden_cases import CASES, GOLDEN, SVG_CASES, run_case, run_svg_case

from slideturn import (
    CylinderPoint,
    DirectedLine,
    NotDisjoint,
    Side,
    boundary_to_slide,
    common_supporting_lines,
    disc,
    euclid4,
    invert_t,
    lipschitz_small_certificate,
    parallel_body,
    perimeter,
    polygon,
    separating_line,
    side_of,
    slide_curve,
    slide_to_boundary,
    supporting_line,
    t_map,
    t_range,
)
from slideturn.convex_fn import dpoint_euclid, dpoint_manhattan, sample_dpoints
from slideturn.geom import PI, TWO_PI
from slideturn.oracles import (
    brute_common_tangents,
    brute_supporting_line,
    grid_invert_t,
    hausdorff_lines,
    polyline_length,
)
from slideturn.parallel import DELTA, LIPSCHITZ_L, sine_ratio_bounds
from slideturn.tangents import side_extremes

SEED = 20240611


def report(acceptance, k, desc, passed, detail=""):
    acceptance(k, desc, passed)
    print(f"criterion {k}: {'PASS' if passed else 'FAIL'}  {desc}  {detail}".rstrip())
    assert passed, detail


def test_criterion_1_slide_curve_closed_simple_rectifiable(acceptance):
    rng = np.random.default_rng(SEED + 1)
    start = time.perf_counter()
    bodies = [(random_convex_polygon(rng), 0.0) for _ in range(50)]
    bodies += [(disc((0, 0), 1), 1e-9), (disc((1.5, -2), 0.3), 1e-9), (disc((-1, 4), 2.5), 1e-9)]
    worst_closure = worst_len = 0.0
    closed = simple = winding = rectifiable = True
    for H, closure_tol in bodies:
        sc = slide_curve(H)
        gap = euclid4(sc.start(), sc.end())
        worst_closure = max(worst_closure, gap)
        closed &= gap <= closure_tol
        winding &= sc.winding == TWO_PI
        L = sc.total_length
        s1, s2 = rng.uniform(0, L, 10_000), rng.uniform(0, L, 10_000)
        sep = np.abs(s1 - s2)
        keep = np.minimum(sep, L - sep) > 1e-6
        d = np.linalg.norm(sc.sample(s1[keep]) - sc.sample(s2[keep]), axis=1)
        simple &= bool(np.all(d > 0))
        err = abs(polyline_length(sc, 1 << 14) - L)
        worst_len = max(worst_len, err)
        rectifiable &= math.isfinite(L) and err <= 1e-4
    elapsed = time.perf_counter() - start
    ok = closed and simple and winding and rectifiable and elapsed <= 10.0
    detail = f"closure={worst_closure:.1e} length_err={worst_len:.1e} time={elapsed:.2f}s"
    report(acceptance, 1, "slide curve closed, simple, winding 2pi, rectifiable", ok, detail)


def test_criterion_2_length_law(acceptance):
    rng = np.random.default_rng(SEED + 2)
    polys = [polygon([(0, 0), (1, 0), (1, 1), (0, 1)])] + [random_convex_polygon(rng) for _ in range(50)]
    poly_err = max(abs(slide_curve(H).total_length - (perimeter(H) + TWO_PI)) for H in polys)
    disc_err = max(
        abs(slide_curve(disc((0.3, -0.7), r)).total_length - TWO_PI * math.sqrt(1 + r * r))
        for r in (0.1, 0.5, 1.0, 2.0, 7.5)
    )
    ok = poly_err <= 1e-9 and disc_err <= 1e-9
    report(acceptance, 2, "length = perimeter + 2pi; disc 2pi sqrt(1+r^2)", ok,
           f"polygon_err={poly_err:.1e} disc_err={disc_err:.1e}")


def test_criterion_3_first_proof_machinery(acceptance):
    rng = np.random.default_rng(SEED + 3)
    start = time.perf_counter()
    dissipative = identity = chain = round_trip = grid_ok = True
    for _ in range(20):
        f = random_pl_function(rng)
        v = f.u / 2
        # (a) neighbouring breakpoints and the midpoints between them
        xs = list(f.xs)
        for a, b in zip(xs, xs[1:]):
            m = (a + b) / 2
            for x1, x2 in ((a, m), (m, b), (a, b)):
                dissipative &= f.subdiff(x1).hi <= f.subdiff(x2).lo
        pts = sample_dpoints(f, v, 400, rng)
        idx = rng.integers(0, len(pts), (10_000, 2))
        # (b) exact identity on lex-ordered pairs
        for i, j in idx[:1000]:
            p, q = sorted((pts[i], pts[j]))
            identity &= dpoint_manhattan(p, q) == t_map(q) - t_map(p)
        # (c) 1/2 manhattan <= |dt| = manhattan <= 2 euclid, exactly, on a
        # common denominator
        den = math.lcm(*(c.denominator for p in pts for c in (p.x, p.d)))
        X = [int(p.x * den) for p in pts]
        D = [int(p.d * den) for p in pts]
        Tm = [int(t_map(p) * den) for p in pts]
        for i, j in idx:
            m = abs(X[i] - X[j]) + abs(D[i] - D[j])
            dt = abs(Tm[i] - Tm[j])
            chain &= m <= 2 * dt and dt == m
        for i, j in idx[:500]:
            chain &= dpoint_manhattan(pts[i], pts[j]) * den == abs(X[i] - X[j]) + abs(D[i] - D[j])
        F = np.array([[float(p.x), float(p.d)] for p in pts])
        man = np.abs(F[idx[:, 0]] - F[idx[:, 1]]).sum(axis=1)
        euc = np.hypot(*(F[idx[:, 0]] - F[idx[:, 1]]).T)
        chain &= bool(np.all(man <= 2 * euc * (1 + 1e-15)))
        chain &= all(
            float(dpoint_manhattan(pts[i], pts[j])) <= 2 * dpoint_euclid(pts[i], pts[j]) for i, j in idx[:500]
        )
        # (d) t(invert_t(s)) = s exactly
        w1, w2 = t_range(f, v)
        ss = [w1 + (w2 - w1) * Fraction(int(n), 10**9) for n in rng.integers(0, 10**9 + 1, 1000)]
        for s in ss:
            round_trip &= t_map(invert_t(f, v, s)) == s
        # (e) grid oracle at its resolution
        h = 2 * float(v) / 10_000
        kinks = [float(k) for k in f.kinks()]
        for s in ss[:25]:
            p = invert_t(f, v, s)
            q = grid_invert_t(f, v, s)
            x0 = float(p.x)
            grid_ok &= abs(x0 - q.x) <= h * (1 + 1e-9)
            if all(abs(x0 - k) > 2 * h for k in kinks):
                grid_ok &= abs(float(p.d) - q.d) <= h * (1 + 1e-9)
    elapsed = time.perf_counter() - start
    ok = dissipative and identity and chain and round_trip and grid_ok and elapsed <= 5.0
    detail = f"a={dissipative} b={identity} c={chain} d={round_trip} e={grid_ok} time={elapsed:.2f}s"
    report(acceptance, 3, "dissipativity, isometry, norm chain, exact inversion, grid agreement", ok, detail)


def test_criterion_4_second_proof_machinery(acceptance):
    rng = np.random.default_rng(SEED + 4)
    start = time.perf_counter()
    bodies = [polygon([(0, 0), (1, 0), (1, 1), (0, 1)]), disc((0, 0), 1)]
    bodies += [random_convex_polygon(rng) for _ in range(10)]
    per_err = recip_err = 0.0
    certified = True
    ratios = []
    for H in bodies:
        pb = parallel_body(H, 1.0)
        per_err = max(per_err, abs(pb.perimeter - (perimeter(H) + TWO_PI)))
        sc = pb.curve
        for s in rng.uniform(0, sc.total_length, 1000):
            q = sc.eval(float(s))
            P = slide_to_boundary(H, q)
            back = boundary_to_slide(H, P)
            recip_err = max(recip_err, euclid4(back, q), math.dist(slide_to_boundary(H, back), P))
        rep = lipschitz_small_certificate(H, samples=10_000, seed=int(rng.integers(1 << 31)))
        certified &= rep.passed and rep.delta == 1 / 5 and rep.L == 9
        ratios.append(max(rep.max_f_ratio, rep.max_g_ratio))
    lo, hi = sine_ratio_bounds(DELTA)
    sines = 99 / 100 < lo < 101 / 100 and 99 / 100 < hi < 101 / 100
    elapsed = time.perf_counter() - start
    ok = per_err <= 1e-9 and recip_err <= 1e-9 and certified and sines and elapsed <= 10.0
    detail = (f"perimeter_err={per_err:.1e} reciprocity_err={recip_err:.1e} "
              f"max_ratio={max(ratios):.3f}/{LIPSCHITZ_L} sin_ratios=({lo:.5f}, {hi:.5f}) time={elapsed:.2f}s")
    report(acceptance, 4, "parallel perimeter, f/g reciprocity, Lipschitz certificate, sine bounds", ok, detail)


def test_criterion_5_four_common_tangents(acceptance):
    rng = np.random.default_rng(SEED + 5)
    start = time.perf_counter()
    pairs = [random_disjoint_pair(rng) for _ in range(100)]
    pairs += [random_disjoint_pair(rng, kinds=("disc", "polygon") if k % 2 else ("polygon", "disc")) for k in range(20)]
    four = touching = True
    worst = 0.0
    for A, B in pairs:
        lines = common_supporting_lines(A, B).lines
        four &= len(lines) == 4 and all(
            hausdorff_lines([a], [b]) > 1e-9 for i, a in enumerate(lines) for b in lines[i + 1 :]
        )
        touching &= all(side_of(l, A) is Side.TOUCHING and side_of(l, B) is Side.TOUCHING for l in lines)
        worst = max(worst, hausdorff_lines(lines, brute_common_tangents(A, B)))
    lines = common_supporting_lines(disc((0, 0), 1), disc((4, 0), 1)).lines
    m = math.atan(1 / math.sqrt(3))
    closed_form = [DirectedLine((0, 1), 0.0), DirectedLine((0, -1), 0.0),
                   DirectedLine((2, 0), m), DirectedLine((2, 0), -m)]
    disc_gap = hausdorff_lines(lines, closed_form)
    elapsed = time.perf_counter() - start
    ok = four and touching and worst <= 1e-6 and disc_gap <= 1e-9 and elapsed <= 30.0
    detail = f"oracle_gap={worst:.1e} closed_form_gap={disc_gap:.1e} time={elapsed:.2f}s"
    report(acceptance, 5, "exactly four common tangents, touching both, oracle agreement", ok, detail)


def test_criterion_6_uniqueness_and_separation(acceptance):
    rng = np.random.default_rng(SEED + 6)
    mismatches = 0
    alphas = np.linspace(-PI, PI, 720, endpoint=False)
    for _ in range(50):
        H = random_convex_polygon(rng)
        for a in alphas:
            fast = supporting_line(H, float(a))
            slow = brute_supporting_line(H, float(a))
            mismatches += not (fast.point == slow.base and fast.line.dir == slow.dir)
    separated = True
    for k in range(120):
        kinds = ("polygon", "polygon") if k < 100 else ("disc", "polygon")
        A, B = random_disjoint_pair(rng, kinds=kinds)
        l = separating_line(A, B)
        separated &= side_extremes(l, A)[0] > 0 and side_extremes(l, B)[1] < 0
    raised = 0
    for _ in range(20):
        A = random_convex_polygon(rng)
        B = random_convex_polygon(rng, center=A.vertices[int(rng.integers(A.n))])
        try:
            separating_line(A, B)
        except NotDisjoint:
            raised += 1
    ok = mismatches == 0 and separated and raised == 20
    report(acceptance, 6, "supporting line matches oracle, strict separation, NotDisjoint", ok,
           f"mismatches={mismatches}/36000 separated={separated} not_disjoint={raised}/20")


def test_criterion_7_cli_determinism(acceptance, tmp_path, monkeypatch):
    monkeypatch.setenv("SLIDETURN_SEED", "0")
    equal = True
    for name, argv in CASES.items():
        first, second = run_case(argv), run_case(argv)
        golden = (GOLDEN / name).read_text(encoding="utf-8")
        equal &= first == second == (0, golden)
    for name, argv in SVG_CASES.items():
        first, second = run_svg_case(argv, tmp_path), run_svg_case(argv, tmp_path)
        golden = (GOLDEN / name).read_text(encoding="utf-8")
        equal &= first == second == (0, golden)
    report(acceptance, 7, "CLI golden files reproduced across two runs", equal,
           f"cases={len(CASES) + len(SVG_CASES)}")


@pytest.mark.parametrize("r", [1.0])
def test_disc_cylinder_point_roundtrip_sanity(r):
    # g then f on the disc is the identity, which criterion 4 relies on
    q = CylinderPoint((0.0, -1.0), 0.0)
    assert euclid4(boundary_to_slide(disc((0, 0), 1), slide_to_boundary(disc((0, 0), 1), q, r), r), q) < 1e-15

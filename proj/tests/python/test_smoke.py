import json
import math

import pytest

import discpoly


def test_two_points_make_a_spindle():
    h = discpoly.r_hull([(0.0, 0.0), (0.5, 0.0)])
    assert h.f0 == 2
    assert sorted(h.vertex_indices) == [0, 1]
    assert json.loads(h.to_json())["f0"] == 2


def test_hull_matches_oracle():
    pts = discpoly.sample_uniform(discpoly.regular_disc_polygon(3, 1.0), 40, seed=3)
    h = discpoly.r_hull(pts)
    assert sorted(h.vertex_indices) == discpoly.oracle_vertex_set(pts)
    assert all(h.hull.contains(p, 1e-9) for p in pts)


def test_regions():
    r = discpoly.regular_disc_polygon(3, 1.0)
    assert r.f0 == 3
    assert r.area == pytest.approx((math.pi - math.sqrt(3)) / 2)
    c = discpoly.SmoothDisc.circle(0.5)
    assert c.area == pytest.approx(math.pi / 4)
    region, scale = discpoly.parse_region_json(r.to_json(2.0))
    assert scale == 2.0
    assert region.f0 == 3


def test_errors_are_value_errors():
    with pytest.raises(discpoly.GeometryError):
        discpoly.r_hull([(-1.5, 0.0), (1.5, 0.0)])
    with pytest.raises(ValueError):
        discpoly.regular_disc_polygon(7, 0.9)


def test_sampling_is_reproducible():
    r = discpoly.regular_disc_polygon(5, 1.0)
    assert discpoly.sample_uniform(r, 100, seed=1) == discpoly.sample_uniform(r, 100, seed=1)
    assert discpoly.sample_uniform(r, 100, seed=1) != discpoly.sample_uniform(r, 100, seed=2)
    pts = discpoly.sample_uniform(discpoly.SmoothDisc.circle(0.5), 100, seed=1)
    assert all(math.hypot(x, y) <= 0.5 for x, y in pts)


def test_experiments():
    r = discpoly.regular_disc_polygon(3, 1.0)
    a = discpoly.run_vertex_experiment(r, [20, 80], trials=20, seed=4, threads=1)
    b = discpoly.run_vertex_experiment(r, [20, 80], trials=20, seed=4, threads=3)
    assert a == b
    assert [row["n"] for row in a["rows"]] == [20, 80]
    e = discpoly.efron_check(r, 1, 10)
    assert e["lhs"] == 2.0
    assert e["rhs"] == pytest.approx(2.0)
    est, se = discpoly.pair_integral_estimator(r, 2, 100)
    assert est == pytest.approx(2.0)


def test_smooth_constant():
    assert discpoly.c_of_K(discpoly.SmoothDisc.circle(0.5), 1.0, 1e-12) == pytest.approx(math.pi, abs=1e-10)
    lim = discpoly.smooth_limits(discpoly.SmoothDisc.circle(0.5))
    assert lim["c"] == pytest.approx(math.pi)


def test_lemma_suite_runs():
    checks = discpoly.lemma_suite(discpoly.regular_disc_polygon(3, 1.0), seed=1, caps=200, pairs=200)
    assert "cap_area_bounds" in checks
    assert all(c["informational"] or c["failures"] == 0 for c in checks.values())

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "discpoly/hull.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace discpoly;

namespace {

std::vector<Point> random_points(std::mt19937_64& gen, std::size_t n, double rho) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  while (pts.size() < n) {
    const Point q{u(gen), u(gen)};
    if (norm(q) <= 1.0) pts.push_back(rho * q);
  }
  return pts;
}

// Random centers of unit discs containing every point: the hull must lie in
// each such disc.
std::vector<Point> random_containing_centers(std::mt19937_64& gen, const std::vector<Point>& pts,
                                             std::size_t want) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<Point> out;
  for (std::size_t tries = 0; out.size() < want && tries < 200000; ++tries) {
    const Point c{u(gen), u(gen)};
    if (std::all_of(pts.begin(), pts.end(), [&](Point p) { return dist(p, c) <= 1.0; })) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("two points give a spindle with two vertices") {
  const std::vector<Point> pts{{-0.3, 0.0}, {0.3, 0.0}};
  const HullResult h = r_hull(pts);
  CHECK(h.f0 == 2);
  CHECK(h.hull.is_spindle());
  CHECK(sorted(h.vertex_indices) == std::vector<std::size_t>{0, 1});
  CHECK(area(h.hull) == doctest::Approx(2.0 * segment_area(0.6)));
}

TEST_CASE("single point and duplicates") {
  const std::vector<Point> one{{0.2, 0.1}};
  const HullResult h = r_hull(one);
  CHECK(h.f0 == 1);
  CHECK(h.hull.is_point());
  CHECK(area(h.hull) == 0.0);

  const std::vector<Point> dup{{0.2, 0.1}, {0.2, 0.1}, {0.2, 0.1}};
  const HullResult d = r_hull(dup);
  CHECK(d.f0 == 1);
  CHECK(d.vertex_indices == std::vector<std::size_t>{0});

  const std::vector<Point> dup2{{0.0, 0.0}, {0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
  CHECK(r_hull(dup2).f0 == 2);
  CHECK(sorted(r_hull(dup2).vertex_indices) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("collinear points: only the extremes are vertices") {
  std::vector<Point> pts;
  for (int i = 0; i <= 10; ++i) pts.push_back({-0.5 + 0.1 * i, 0.25 * (-0.5 + 0.1 * i)});
  std::shuffle(pts.begin(), pts.end(), std::mt19937_64(4));
  const HullResult h = r_hull(pts);
  CHECK(h.f0 == 2);
  for (const std::size_t i : h.vertex_indices) CHECK(std::abs(std::abs(pts[i].x) - 0.5) < 1e-12);
}

TEST_CASE("no unit disc contains the points") {
  const std::vector<Point> far{{-1.2, 0.0}, {1.2, 0.0}};
  try {
    r_hull(far);
    FAIL("expected NotInUnitDisc");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::NotInUnitDisc);
  }
  const std::vector<Point> tri{{1.0, 0.0}, {-0.5, 0.9}, {-0.5, -0.9}};  // circumradius > 1
  CHECK_THROWS_AS(r_hull(tri), GeometryError);
  CHECK_THROWS_AS(r_hull(std::vector<Point>{}), GeometryError);
}

TEST_CASE("vertex set matches the per-point oracle") {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 3 + trial % 20;
    const auto pts = random_points(gen, n, 0.95);
    if (min_enclosing_circle(pts).radius > 1.0) continue;
    const HullResult h = r_hull(pts);
    CHECK(sorted(h.vertex_indices) == oracle_vertex_set(pts));
    CHECK(h.f0 == h.hull.size());
    for (std::size_t j = 0; j < h.f0; ++j) CHECK(pts[h.vertex_indices[j]] == h.hull.vertex(j));
  }
}

TEST_CASE("hull is the intersection of containing unit discs") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto pts = random_points(gen, 4 + trial % 12, 0.7);
    const HullResult h = r_hull(pts);
    // contains every input point
    for (const Point p : pts) CHECK(contains(h.hull, p, 1e-9));
    // every arc center is a containing disc, so hull is no larger than needed
    for (const Point c : h.hull.arc_centers()) {
      for (const Point p : pts) CHECK(dist(p, c) <= 1.0 + 1e-9);
    }
    // and it lies inside any other containing disc
    const auto centers = random_containing_centers(gen, pts, 50);
    for (const Point q : oracle::boundary_samples(h.hull, 32)) {
      for (const Point c : centers) CHECK(dist(q, c) <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("hull of points inside P lies in P; area grows with more points") {
  const DiscPolygon p = regular_disc_polygon(5, 1.0);
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts;
  double prev = 0.0;
  while (pts.size() < 200) {
    const Point q{u(gen), u(gen)};
    if (!oracle::in_all_discs(p, q)) continue;
    pts.push_back(q);
    if (pts.size() < 3) continue;
    const HullResult h = r_hull(pts);
    const double a = area(h.hull);
    CHECK(a >= prev - 1e-12);
    prev = a;
    for (const Point v : h.hull.vertices()) CHECK(oracle::in_all_discs(p, v));
    CHECK(missed_area(p, h) == doctest::Approx(area(p) - a));
  }
  CHECK(prev < area(p));
}

TEST_CASE("rigid motions move the hull and keep its vertex set") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto pts = random_points(gen, 10, 0.8);
    const HullResult h = r_hull(pts);
    const double th = 0.37 * trial;
    const Point shift{0.3 * std::cos(trial), -0.2 * std::sin(trial)};
    std::vector<Point> moved;
    for (const Point p : pts) {
      moved.push_back(Point{std::cos(th) * p.x - std::sin(th) * p.y, std::sin(th) * p.x + std::cos(th) * p.y} +
                      shift);
    }
    const HullResult g = r_hull(moved);
    CHECK(sorted(g.vertex_indices) == sorted(h.vertex_indices));
    CHECK(area(g.hull) == doctest::Approx(area(h.hull)).epsilon(1e-10));
  }
}

TEST_CASE("points on one unit circle are all vertices") {
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(unit_vector(0.1 + 0.5 * i));
  const HullResult h = r_hull(pts);
  CHECK(h.f0 == 12);
  CHECK(area(h.hull) == doctest::Approx(std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("euclidean convex hull indices") {
  const std::vector<Point> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0}, {1, 0}};
  const auto idx = convex_hull_indices(pts);
  CHECK(sorted(idx) == std::vector<std::size_t>{0, 1, 2, 3});
}

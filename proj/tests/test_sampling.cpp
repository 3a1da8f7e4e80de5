#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "discpoly/sampling.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace discpoly;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    differ_c |= x != c.next_u64();
    differ_d |= x != d.next_u64();
  }
  CHECK(differ_c);
  CHECK(differ_d);
  RngStream e(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double u = e.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("neighbouring streams are uncorrelated") {
  RngStream a(5, 1), b(5, 2);
  const int n = 200000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.uniform(), y = b.uniform();
    sa += x; sb += y; sab += x * y; saa += x * x; sbb += y * y;
  }
  const double cov = sab / n - (sa / n) * (sb / n);
  const double rho = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  CHECK(std::abs(rho) < 0.01);
}

TEST_CASE("same stream gives the same sample") {
  const Region r = regular_disc_polygon(4, 1.0);
  RngStream a(9, 3), b(9, 3);
  CHECK(sample_uniform(r, a, 500) == sample_uniform(r, b, 500));
}

TEST_CASE("disc samples: containment, mean and acceptance rate") {
  const Region r = SmoothDisc::circle(0.5);
  RngStream rng(1, 0);
  std::uint64_t draws = 0;
  const std::size_t n = 100000;
  const auto pts = sample_uniform(r, rng, n, draws);
  Point mean{};
  double r2 = 0.0;
  for (const Point p : pts) {
    CHECK(norm(p) <= 0.5);
    mean += p;
    r2 += dot(p, p);
  }
  mean *= 1.0 / n;
  CHECK(norm(mean) < 4.0 * 0.5 / std::sqrt(n));
  // E|X|^2 = rho^2 / 2 for a uniform disc
  CHECK(r2 / n == doctest::Approx(0.125).epsilon(0.01));
  const double rate = static_cast<double>(n) / static_cast<double>(draws);
  CHECK(rate == doctest::Approx(kPi / 4).epsilon(0.01));
}

TEST_CASE("uniformity in a disc-polygon: chi-square on a grid") {
  const DiscPolygon p = regular_disc_polygon(3, 1.0);
  const Box box = bounding_box(p);
  const int g = 10;
  // cell areas by Monte Carlo, independent of the sampler
  std::vector<double> cell(g * g, 0.0);
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> ux(box.min.x, box.max.x), uy(box.min.y, box.max.y);
  const int m = 2000000;
  for (int i = 0; i < m; ++i) {
    const Point q{ux(gen), uy(gen)};
    if (!oracle::in_all_discs(p, q)) continue;
    const int cx = std::min(g - 1, static_cast<int>((q.x - box.min.x) / (box.max.x - box.min.x) * g));
    const int cy = std::min(g - 1, static_cast<int>((q.y - box.min.y) / (box.max.y - box.min.y) * g));
    cell[cy * g + cx] += 1.0;
  }
  double tot = 0.0;
  for (double c : cell) tot += c;

  RngStream rng(3, 3);
  const std::size_t n = 200000;
  std::vector<double> obs(g * g, 0.0);
  for (const Point q : sample_uniform(Region{p}, rng, n)) {
    const int cx = std::min(g - 1, static_cast<int>((q.x - box.min.x) / (box.max.x - box.min.x) * g));
    const int cy = std::min(g - 1, static_cast<int>((q.y - box.min.y) / (box.max.y - box.min.y) * g));
    obs[cy * g + cx] += 1.0;
  }
  double chi2 = 0.0;
  int dof = -1;
  for (int i = 0; i < g * g; ++i) {
    const double e = n * cell[i] / tot;
    if (e < 20.0) continue;  // partial boundary cells with tiny mass
    chi2 += (obs[i] - e) * (obs[i] - e) / e;
    ++dof;
  }
  // the expected counts are themselves estimated from m reference points,
  // which inflates the statistic by about (1 + n/m)
  const double inflate = 1.0 + static_cast<double>(n) / m;
  MESSAGE("chi2 = " << chi2 << " dof = " << dof);
  CHECK(chi2 < inflate * (dof + 6.0 * std::sqrt(2.0 * dof)));
}

TEST_CASE("bounding box is tight") {
  for (const DiscPolygon& p : {regular_disc_polygon(3, 1.0), regular_disc_polygon(5, 0.7), spindle({0, 0}, {1.2, 0.4})}) {
    const Box b = bounding_box(p);
    Point lo{INFINITY, INFINITY}, hi{-INFINITY, -INFINITY};
    for (const Point q : oracle::boundary_samples(p, 20000)) {
      lo = {std::min(lo.x, q.x), std::min(lo.y, q.y)};
      hi = {std::max(hi.x, q.x), std::max(hi.y, q.y)};
    }
    CHECK(b.min.x <= lo.x + 1e-12);
    CHECK(b.min.y <= lo.y + 1e-12);
    CHECK(b.max.x >= hi.x - 1e-12);
    CHECK(b.max.y >= hi.y - 1e-12);
    CHECK(lo.x - b.min.x < 1e-6);
    CHECK(lo.y - b.min.y < 1e-6);
    CHECK(b.max.x - hi.x < 1e-6);
    CHECK(b.max.y - hi.y < 1e-6);
  }
  const Box e = bounding_box(SmoothDisc::ellipse(0.6, 0.3));
  CHECK(e.max.x == doctest::Approx(0.6));
  CHECK(e.min.y == doctest::Approx(-0.3));
}

TEST_CASE("zero-area regions cannot be sampled") {
  RngStream rng(1, 1);
  try {
    sample_uniform(Region{DiscPolygon::point({0.1, 0.2})}, rng, 5);
    FAIL("expected ZeroArea");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::ZeroArea);
  }
  const Box b = bounding_box(DiscPolygon::point({0.1, 0.2}));
  CHECK(b.min == b.max);
}

TEST_CASE("smooth discs: area and curvature") {
  const SmoothDisc c = SmoothDisc::circle(0.4);
  CHECK(c.area() == doctest::Approx(kPi * 0.16));
  CHECK(c.curvature(1.3) == doctest::Approx(2.5));
  CHECK(c.min_curvature() == doctest::Approx(2.5));
  const SmoothDisc e = SmoothDisc::ellipse(0.8, 0.5);
  CHECK(e.area() == doctest::Approx(kPi * 0.4));
  CHECK(e.curvature(0.0) == doctest::Approx(0.8 / 0.25));
  CHECK(e.curvature(kPi / 2) == doctest::Approx(0.5 / 0.64));
  CHECK(e.min_curvature() == doctest::Approx(0.5 / 0.64));
  // curvature against a finite-difference oracle on the boundary parametrization
  for (double th : {0.3, 1.1, 2.5, 4.0}) {
    const double h = 1e-4;
    const Point p0 = e.boundary(th - h), p1 = e.boundary(th), p2 = e.boundary(th + h);
    const Point d1 = (1.0 / (2 * h)) * (p2 - p0);
    const Point d2 = (1.0 / (h * h)) * (p2 - 2.0 * p1 + p0);
    const double k = cross(d1, d2) / std::pow(norm(d1), 3);
    CHECK(e.curvature(th) == doctest::Approx(k).epsilon(1e-6));
    CHECK(e.speed(th) == doctest::Approx(norm(d1)).epsilon(1e-7));
  }
  CHECK(e.scaled(2.0).a() == doctest::Approx(1.6));
  CHECK_THROWS_AS(SmoothDisc::circle(-1.0), GeometryError);
}

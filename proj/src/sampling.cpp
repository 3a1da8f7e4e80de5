#include "discpoly/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace discpoly {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

// ---------------------------------------------------------------------------

SmoothDisc SmoothDisc::circle(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw GeometryError(ErrorKind::InvalidArgument, "circle radius must be positive");
  }
  return SmoothDisc(Kind::Circle, radius, radius);
}

SmoothDisc SmoothDisc::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipse semi-axes must be positive");
  }
  return SmoothDisc(Kind::Ellipse, a, b);
}

double SmoothDisc::area() const { return std::numbers::pi * a_ * b_; }

bool SmoothDisc::contains(Point q) const {
  const double u = q.x / a_;
  const double v = q.y / b_;
  return u * u + v * v <= 1.0;
}

Point SmoothDisc::boundary(double theta) const { return {a_ * std::cos(theta), b_ * std::sin(theta)}; }

double SmoothDisc::speed(double theta) const {
  return std::hypot(a_ * std::sin(theta), b_ * std::cos(theta));
}

double SmoothDisc::curvature(double theta) const {
  const double s = speed(theta);
  return a_ * b_ / (s * s * s);
}

double SmoothDisc::min_curvature() const {
  const double lo = std::min(a_, b_);
  const double hi = std::max(a_, b_);
  return lo / (hi * hi);
}

SmoothDisc SmoothDisc::scaled(double s) const { return SmoothDisc(kind_, a_ * s, b_ * s); }

// ---------------------------------------------------------------------------

double region_area(const Region& r) {
  return std::visit([](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DiscPolygon>) return area(x);
    else return x.area();
  }, r);
}

bool region_contains(const Region& r, Point q) {
  return std::visit([q](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DiscPolygon>) return contains(x, q, 0.0);
    else return x.contains(q);
  }, r);
}

Box bounding_box(const DiscPolygon& p) {
  Box b{p.vertex(0), p.vertex(0)};
  auto grow = [&b](Point q) {
    b.min = {std::min(b.min.x, q.x), std::min(b.min.y, q.y)};
    b.max = {std::max(b.max.x, q.x), std::max(b.max.y, q.y)};
  };
  for (const Point v : p.vertices()) grow(v);
  if (p.size() < 2) return b;
  constexpr std::array<double, 4> kAxis{0.0, 0.5 * std::numbers::pi, std::numbers::pi, 1.5 * std::numbers::pi};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point c = p.center(i);
    const double s = direction_angle(p.vertex(i) - c);
    const double w = p.arc_width(i);
    for (const double q : kAxis) {
      if (wrap_angle(q - s) <= w) grow(c + unit_vector(q));
    }
  }
  return b;
}

Box bounding_box(const SmoothDisc& k) { return {{-k.a(), -k.b()}, {k.a(), k.b()}}; }

Box bounding_box(const Region& r) {
  return std::visit([](const auto& x) { return bounding_box(x); }, r);
}

std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n,
                                  std::uint64_t& draws) {
  if (!(region_area(region) > 0.0)) throw GeometryError(ErrorKind::ZeroArea, "cannot sample a region of zero area");
  const Box box = bounding_box(region);
  std::vector<Point> out;
  out.reserve(n);
  draws = 0;
  while (out.size() < n) {
    const Point q{rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
    ++draws;
    if (region_contains(region, q)) out.push_back(q);
  }
  return out;
}

std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n) {
  std::uint64_t draws = 0;
  return sample_uniform(region, rng, n, draws);
}

}  // namespace discpoly

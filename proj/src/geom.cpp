#include "discpoly/geom.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace discpoly {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateChord: return "DegenerateChord";
    case ErrorKind::ChordTooLong: return "ChordTooLong";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotUnit: return "NotUnit";
    case ErrorKind::HeightOutOfRange: return "HeightOutOfRange";
    case ErrorKind::PointsOutside: return "PointsOutside";
    case ErrorKind::NotInUnitDisc: return "NotInUnitDisc";
    case ErrorKind::ZeroArea: return "ZeroArea";
    case ErrorKind::NotRConvex: return "NotRConvex";
    case ErrorKind::DegenerateCap: return "DegenerateCap";
    case ErrorKind::InvalidPolygon: return "InvalidPolygon";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2*pi
  if (w >= kTwoPi) w = 0.0;
  return w;
}

double direction_angle(Point v) { return wrap_angle(std::atan2(v.y, v.x)); }

double angle_of(Point u) {
  if (!is_finite(u) || std::abs(norm(u) - 1.0) > kTestEps) {
    throw GeometryError(ErrorKind::NotUnit, "angle_of expects a unit vector");
  }
  return direction_angle(u);
}

std::pair<Point, Point> unit_disc_centers_through(Point x, Point y) {
  const double d = dist(x, y);
  if (!(d > kDegenerateChord)) {
    throw GeometryError(ErrorKind::DegenerateChord, "endpoints coincide");
  }
  if (d > 2.0 + kGeomEps) {
    throw GeometryError(ErrorKind::ChordTooLong, "chord longer than the unit diameter");
  }
  const Point mid = 0.5 * (x + y);
  const double half = std::min(0.5 * d, 1.0);
  const double h = std::sqrt(std::max(0.0, (1.0 - half) * (1.0 + half)));
  const Point n = perp_left((y - x) * (1.0 / d));
  return {mid + h * n, mid - h * n};
}

Point left_center(Point x, Point y) { return unit_disc_centers_through(x, y).first; }

double chord_angle(double chord) {
  if (chord < 0.0 || chord > 2.0 + kGeomEps) {
    throw GeometryError(ErrorKind::OutOfRange, "chord must lie in [0, 2]");
  }
  return 2.0 * std::asin(std::min(0.5 * chord, 1.0));
}

double segment_area(double chord) {
  const double theta = chord_angle(chord);
  return 0.5 * (theta - std::sin(theta));
}

namespace {

Circle circle_from(Point a, Point b) {
  const Point c = 0.5 * (a + b);
  return {c, std::max(dist(a, c), dist(b, c))};
}

Circle circle_from(Point a, Point b, Point c) {
  const Point ab = b - a;
  const Point ac = c - a;
  const double d = 2.0 * cross(ab, ac);
  if (std::abs(d) < 1e-300) {
    // Collinear: the two farthest points span the circle.
    Circle best = circle_from(a, b);
    for (const Circle cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double ab2 = dot(ab, ab);
  const double ac2 = dot(ac, ac);
  const Point off{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
  const Point center = a + off;
  return {center, std::max({dist(center, a), dist(center, b), dist(center, c)})};
}

bool inside(const Circle& c, Point p) {
  return dist(p, c.center) <= c.radius * (1.0 + 1e-14) + 1e-15;
}

}  // namespace

Circle min_enclosing_circle(std::span<const Point> points) {
  if (points.empty()) {
    throw GeometryError(ErrorKind::EmptyInput, "min_enclosing_circle of an empty set");
  }
  std::vector<Point> pts(points.begin(), points.end());
  std::mt19937_64 shuffle_rng(0x9e3779b97f4a7c15ULL);
  std::shuffle(pts.begin(), pts.end(), shuffle_rng);

  Circle c{pts[0], 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (inside(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (inside(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (inside(c, pts[k])) continue;
        c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

}  // namespace discpoly

#pragma once

// Scalar and circle primitives for unit-radius geometry.
//
// Every routine in the kernel works with circles of radius 1. Inputs with a
// different generating radius are rescaled at the system boundary (file
// loaders, CLI) before they reach this layer.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace discpoly {

// Tolerances. Constructions are checked against kGeomEps, membership and
// consistency tests against kTestEps.
inline constexpr double kGeomEps = 1e-12;
inline constexpr double kTestEps = 1e-9;
inline constexpr double kDegenerateChord = 1e-14;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
  DegenerateChord,
  ChordTooLong,
  OutOfRange,
  EmptyInput,
  NotUnit,
  HeightOutOfRange,
  PointsOutside,
  NotInUnitDisc,
  ZeroArea,
  NotRConvex,
  DegenerateCap,
  InvalidPolygon,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  constexpr Point& operator+=(Point o) { x += o.x; y += o.y; return *this; }
  constexpr Point& operator-=(Point o) { x -= o.x; y -= o.y; return *this; }
  constexpr Point& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
// Orientation of c relative to the directed line a->b; positive when c is on the left.
constexpr double orient(Point a, Point b, Point c) { return cross(b - a, c - a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double dist(Point a, Point b) { return norm(a - b); }
constexpr Point perp_left(Point a) { return {-a.y, a.x}; }
inline Point unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point center;
  double radius = 0.0;

  bool contains(Point p, double eps = kGeomEps) const { return dist(p, center) <= radius + eps; }
};

// Reduce an angle to [0, 2*pi).
double wrap_angle(double a);

// Inverse of the standard parametrisation t -> (cos t, sin t); result in [0, 2*pi).
double angle_of(Point u);

// Atan2-based direction of an arbitrary nonzero vector, in [0, 2*pi).
double direction_angle(Point v);

// Centers of the two unit circles through x and y. The first lies to the left of
// the directed line x->y; for |x-y| = 2 both coincide with the midpoint.
std::pair<Point, Point> unit_disc_centers_through(Point x, Point y);

// Center of the unit circle through x and y lying left of x->y.
Point left_center(Point x, Point y);

// Area between a unit circular arc and its chord (minor arc).
double segment_area(double chord);

// Central angle subtended by a chord of the unit circle.
double chord_angle(double chord);

// Smallest enclosing circle (Welzl, move-to-front). The input order is
// shuffled with a fixed internal seed so the result depends only on the set.
Circle min_enclosing_circle(std::span<const Point> points);

}  // namespace discpoly

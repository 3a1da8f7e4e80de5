#pragma once

// Reproducible uniform sampling in disc-polygons and smooth convex discs.

#include <cstdint>
#include <random>
#include <utility>
#include <variant>
#include <vector>

#include "discpoly/disc_polygon.hpp"

namespace discpoly {

/// Seedable random stream.
///
/// Each (seed, stream_id) pair seeds its own std::mt19937_64 through
/// std::seed_seq over the four 32-bit halves {seed_lo, seed_hi, id_lo, id_hi}.
/// Both the engine and seed_seq are fully specified by the C++ standard, and
/// doubles are formed from the top 53 bits of each draw, so a stream yields the
/// same sequence on every conforming platform. Experiments give every trial its
/// own stream; no state is shared between trials.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Origin-centred smooth convex disc with a closed-form boundary.
class SmoothDisc {
 public:
  enum class Kind { Circle, Ellipse };

  static SmoothDisc circle(double radius);
  static SmoothDisc ellipse(double a, double b);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }

  double area() const;
  bool contains(Point q) const;
  /// Boundary point for parameter theta in [0, 2*pi).
  Point boundary(double theta) const;
  /// |d boundary / d theta|.
  double speed(double theta) const;
  double curvature(double theta) const;
  double min_curvature() const;

  /// Same shape with all lengths multiplied by s.
  SmoothDisc scaled(double s) const;

 private:
  SmoothDisc(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}
  Kind kind_;
  double a_;
  double b_;
};

using Region = std::variant<DiscPolygon, SmoothDisc>;

double region_area(const Region& r);
bool region_contains(const Region& r, Point q);

struct Box {
  Point min;
  Point max;
};

Box bounding_box(const DiscPolygon& p);
Box bounding_box(const SmoothDisc& k);
Box bounding_box(const Region& r);

/// n independent uniform points by rejection from the tight bounding box.
std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n);

/// Same as sample_uniform, also reporting how many box draws were needed.
std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n,
                                  std::uint64_t& draws);

}  // namespace discpoly

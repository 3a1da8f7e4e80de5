#pragma once

// Disc-polygons: compact convex regions bounded by unit circular arcs, and the
// cap geometry built on top of them.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "discpoly/geom.hpp"

namespace discpoly {

/// A convex disc-polygon of unit radius.
///
/// Vertices are stored counterclockwise, starting from the lexicographically
/// smallest one. `arc_centers()[i]` is the center of the unit arc running
/// counterclockwise from `vertices()[i]` to `vertices()[i + 1]`. Degenerate
/// shapes are ordinary values: one vertex is a single point, two vertices form
/// a spindle (the full unit disc when the chord is a diameter).
class DiscPolygon {
 public:
  /// Single-point disc-polygon.
  static DiscPolygon point(Point p);

  /// Builds a disc-polygon from counterclockwise vertices. Every arc is the
  /// outward-bulging unit arc (center left of the directed chord). Throws
  /// InvalidPolygon when the result violates the disc-polygon invariants.
  static DiscPolygon from_vertices(std::vector<Point> ccw_vertices);

  /// Low-level constructor from matching vertex/center lists; the lists are
  /// rotated into canonical order but otherwise trusted.
  static DiscPolygon from_parts(std::vector<Point> vertices, std::vector<Point> centers);

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Point> arc_centers() const { return centers_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t f0() const { return vertices_.size(); }
  bool is_point() const { return vertices_.size() == 1; }
  bool is_spindle() const { return vertices_.size() == 2; }

  Point vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  Point center(std::size_t i) const { return centers_[i % centers_.size()]; }

  /// Central angle of edge arc i, in [0, pi].
  double arc_width(std::size_t i) const;

  /// Throws InvalidPolygon if any invariant fails.
  void validate() const;

  friend bool operator==(const DiscPolygon&, const DiscPolygon&) = default;

 private:
  DiscPolygon(std::vector<Point> v, std::vector<Point> c);
  void canonicalize();

  std::vector<Point> vertices_;
  std::vector<Point> centers_;
};

struct NormalCone {
  std::size_t vertex_index = 0;
  double alpha = 0.0;  // in [0, 2*pi); normal of the incoming arc at the vertex
  double beta = 0.0;   // alpha + cone width; may exceed 2*pi
  double width() const { return beta - alpha; }
};

/// A cap P \ int(B + p) with outer normal u and height t.
struct DiscCap {
  double normal_angle = 0.0;
  Point normal;
  Point vertex;          // farthest point of P from the cutting center
  double height = 0.0;
  double area = 0.0;
  double chord_arc_length = 0.0;  // angle of the cutting circle inside P
  double chord_start = 0.0;       // start angle of that arc, counterclockwise around the cutting center
  Point cutting_center;
  std::optional<DiscPolygon> remainder;  // P intersected with the cutting disc

  Point chord_begin() const { return cutting_center + unit_vector(chord_start); }
  Point chord_end() const { return cutting_center + unit_vector(chord_start + chord_arc_length); }
};

struct CapPair {
  double a_minus = 0.0;
  double a_plus = 0.0;
  Point minus_center;
  Point plus_center;
};

/// Geometry of a small cap whose normal lies in the cone of a single vertex,
/// split along the segment from the vertex to the cutting circle.
struct VertexCapSplit {
  std::size_t vertex_index = 0;
  double beta = 0.0;   // angle between the cap normal and the incoming edge normal
  double ell1 = 0.0;   // arc of the cutting circle on the incoming-edge side
  double ell2 = 0.0;   // arc on the outgoing-edge side; negative when z falls outside P
  Point y;             // cutting circle meets the incoming edge
  Point z;             // cutting circle meets the segment to the vertex
  Point w;             // cutting circle meets the outgoing edge
  double a1 = 0.0;
  double a2 = 0.0;
  bool single_vertex = false;  // chord endpoints lie on the two edges at the vertex
};

/// One arc of the boundary of an intersection of unit discs.
struct DiscArc {
  std::size_t disc = 0;  // index into the input center list
  double start = 0.0;    // angle around that center, [0, 2*pi)
  double width = 0.0;
};

struct DiscIntersection {
  DiscPolygon polygon;
  std::vector<DiscArc> arcs;  // aligned with polygon vertices: arcs[i] starts at vertex i
};

double area(const DiscPolygon& p);
bool contains(const DiscPolygon& p, Point q, double eps = kTestEps);
DiscPolygon spindle(Point x, Point y);

/// Regular k-gon of the given side with unit arcs; k = 2 is a spindle.
DiscPolygon regular_disc_polygon(std::size_t k, double side);
/// Intersection of unit discs. Empty when the intersection has no interior.
std::optional<DiscIntersection> intersect_unit_discs(std::span<const Point> centers);
/// True when the unit discs share at least one point (tangency counts).
bool unit_discs_meet(std::span<const Point> centers);

std::optional<DiscPolygon> intersect_with_disc(const DiscPolygon& p, Point c);

std::vector<NormalCone> normal_cones(const DiscPolygon& p);
Point support_point(const DiscPolygon& p, Point u);
/// Index of the vertex whose cone contains angle, or nullopt for edge normals.
std::optional<std::size_t> vertex_cone_index(const DiscPolygon& p, double angle);

double t_star(const DiscPolygon& p, Point u);
DiscCap disc_cap(const DiscPolygon& p, Point u, double t);
CapPair cap_pair(const DiscPolygon& p, Point x1, Point x2);

/// Splits a vertex cap at the segment vertex--cutting circle.
VertexCapSplit split_vertex_cap(const DiscPolygon& p, const DiscCap& cap);

/// LHS - RHS of the exact relation between the cap normal angle beta, height t
/// and the arc ell1 near a vertex.
double ell1_relation_residual(double beta, double t, double ell1);

/// Solves ell1_relation_residual(beta, t, ell1) = 0 for ell1 in (0, pi/2).
double solve_ell1(double beta, double t);

}  // namespace discpoly

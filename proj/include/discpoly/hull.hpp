#pragma once

// Unit-radius hulls of finite point sets.

#include <cstddef>
#include <span>
#include <vector>

#include "discpoly/disc_polygon.hpp"

namespace discpoly {

struct HullResult {
  DiscPolygon hull = DiscPolygon::point({});
  std::vector<std::size_t> vertex_indices;  // input indices, aligned with hull.vertices()
  std::size_t f0 = 0;
};

/// Counterclockwise convex hull (monotone chain) as input indices. Collinear
/// and duplicate points are dropped; for duplicates the lowest index is kept.
std::vector<std::size_t> convex_hull_indices(std::span<const Point> points);

/// Intersection of all closed unit discs containing the points.
/// Throws EmptyInput, or NotInUnitDisc when no unit disc contains them.
HullResult r_hull(std::span<const Point> points);

/// Exact vertex test: does some unit circle through points[i] enclose all points?
bool oracle_is_vertex(std::span<const Point> points, std::size_t i);

/// Indices i with oracle_is_vertex(points, i), ascending.
std::vector<std::size_t> oracle_vertex_set(std::span<const Point> points);

double missed_area(const DiscPolygon& p, const HullResult& hull);

}  // namespace discpoly

#include "discpoly/hull.hpp"

#include <algorithm>
#include <numeric>

namespace discpoly {

namespace {

void check_points(std::span<const Point> points) {
  if (points.empty()) throw GeometryError(ErrorKind::EmptyInput, "hull of an empty point set");
  for (const Point p : points) {
    if (!is_finite(p)) throw GeometryError(ErrorKind::InvalidArgument, "non-finite input point");
  }
}

void check_enclosable(std::span<const Point> points, std::span<const std::size_t> subset) {
  std::vector<Point> pts;
  pts.reserve(subset.size());
  for (const std::size_t i : subset) pts.push_back(points[i]);
  if (min_enclosing_circle(pts).radius > 1.0 + kGeomEps) {
    throw GeometryError(ErrorKind::NotInUnitDisc, "points do not fit in a unit disc");
  }
}

}  // namespace

std::vector<std::size_t> convex_hull_indices(std::span<const Point> points) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Point p = points[a];
    const Point q = points[b];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return a < b;
  });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return points[a] == points[b]; }),
            idx.end());
  if (idx.size() <= 2) return idx;

  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (const std::size_t i : idx) {
    while (k >= 2 && orient(points[h[k - 2]], points[h[k - 1]], points[i]) <= 0.0) --k;
    h[k++] = i;
  }
  for (std::size_t j = idx.size() - 1, lower = k + 1; j-- > 0;) {
    const std::size_t i = idx[j];
    while (k >= lower && orient(points[h[k - 2]], points[h[k - 1]], points[i]) <= 0.0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

HullResult r_hull(std::span<const Point> points) {
  check_points(points);
  std::vector<std::size_t> cyc = convex_hull_indices(points);
  check_enclosable(points, cyc);

  // Drop b when it lies strictly inside the disc that would carry an edge a->c;
  // such a point sits in the spindle of a and c.
  bool changed = true;
  while (changed && cyc.size() > 2) {
    changed = false;
    for (std::size_t i = 0; i < cyc.size() && cyc.size() > 2;) {
      const std::size_t m = cyc.size();
      const Point a = points[cyc[(i + m - 1) % m]];
      const Point b = points[cyc[i]];
      const Point c = points[cyc[(i + 1) % m]];
      if (dist(b, left_center(a, c)) < 1.0 - kGeomEps) {
        cyc.erase(cyc.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
      } else {
        ++i;
      }
    }
  }

  std::vector<Point> verts;
  verts.reserve(cyc.size());
  for (const std::size_t i : cyc) verts.push_back(points[i]);

  HullResult out;
  if (verts.size() == 1) {
    out.hull = DiscPolygon::point(verts[0]);
  } else {
    std::vector<Point> centers(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      centers[i] = left_center(verts[i], verts[(i + 1) % verts.size()]);
    }
    out.hull = DiscPolygon::from_parts(verts, std::move(centers));
  }
  // from_parts rotates to the canonical start; keep the index list aligned.
  const auto first = std::find(verts.begin(), verts.end(), out.hull.vertex(0));
  std::rotate(cyc.begin(), cyc.begin() + (first - verts.begin()), cyc.end());
  out.vertex_indices = std::move(cyc);
  out.f0 = out.vertex_indices.size();
  return out;
}

bool oracle_is_vertex(std::span<const Point> points, std::size_t i) {
  check_points(points);
  if (i >= points.size()) throw GeometryError(ErrorKind::InvalidArgument, "index out of range");
  std::vector<std::size_t> all(points.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  check_enclosable(points, all);

  // Centers on the unit circle around points[i] that keep points[j] within
  // distance 1 form the closed arc of half-width acos(|pj - pi| / 2) around
  // the direction of pj - pi. Sweep the arcs, tracking the running intersection.
  const Point pi = points[i];
  bool first = true;
  double start = 0.0;
  double width = kTwoPi;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == i) continue;
    const Point d = points[j] - pi;
    const double len = norm(d);
    if (len == 0.0) {
      if (j < i) return false;  // duplicates are represented by their first index
      continue;
    }
    const double half = std::acos(std::min(0.5 * len, 1.0));
    const double s = direction_angle(d) - half;
    const double w = 2.0 * half;
    if (first) {
      start = wrap_angle(s);
      width = w;
      first = false;
      continue;
    }
    const double delta = wrap_angle(s - start);
    double best_start = 0.0;
    double best_width = -1.0;
    if (delta <= width) {
      best_start = start + delta;
      best_width = std::min(width, delta + w) - delta;
    }
    if (delta + w >= kTwoPi) {
      const double hi = std::min(width, delta + w - kTwoPi);
      if (hi > best_width) {
        best_start = start;
        best_width = hi;
      }
    }
    if (best_width < 0.0) return false;
    start = wrap_angle(best_start);
    width = best_width;
  }
  return true;
}

std::vector<std::size_t> oracle_vertex_set(std::span<const Point> points) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (oracle_is_vertex(points, i)) out.push_back(i);
  }
  return out;
}

double missed_area(const DiscPolygon& p, const HullResult& hull) { return area(p) - area(hull.hull); }

}  // namespace discpoly

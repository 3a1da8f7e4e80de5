#include "discpoly/disc_polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace discpoly {

namespace {

constexpr double kPi = std::numbers::pi;
// Arcs narrower than this are absorbed into the neighbouring vertex.
constexpr double kMinArc = 1e-12;
constexpr double kCenterMerge = 1e-12;

// Counterclockwise angle from a to b for directions known to be at most pi
// apart, robust to rounding on both ends of [0, pi].
double ccw_angle_upto_pi(Point a, Point b) {
  double w = std::atan2(cross(a, b), dot(a, b));
  if (w < 0.0) w = (w < -0.5 * kPi) ? w + kTwoPi : 0.0;
  return w;
}

std::size_t canonical_offset(std::span<const Point> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].x < v[best].x || (v[i].x == v[best].x && v[i].y < v[best].y)) best = i;
  }
  return best;
}

// Closed angular interval [start, start + width] on the circle.
struct AngularInterval {
  double start = 0.0;
  double width = kTwoPi;
  bool full = true;

  // Intersects with [s, s + w], w <= pi. Returns false when the result is empty.
  bool clip(double s, double w) {
    if (full) {
      start = wrap_angle(s);
      width = w;
      full = false;
      return true;
    }
    const double delta = wrap_angle(s - start);
    double best_start = 0.0;
    double best_width = -1.0;
    if (delta <= width + kGeomEps) {
      const double hi = std::min(width, delta + w);
      best_start = start + delta;
      best_width = hi - delta;
    }
    if (delta + w - kTwoPi >= -kGeomEps) {
      const double hi = std::min(width, delta + w - kTwoPi);
      if (hi > best_width) {
        best_start = start;
        best_width = hi;
      }
    }
    if (best_width < -kGeomEps) return false;
    start = wrap_angle(best_start);
    width = std::max(best_width, 0.0);
    return true;
  }
};

struct UniqueCenters {
  std::vector<Point> pts;
  std::vector<std::size_t> origin;  // input index of each unique center
};

UniqueCenters dedupe(std::span<const Point> centers) {
  UniqueCenters u;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    bool seen = false;
    for (const Point q : u.pts) {
      if (dist(q, centers[i]) <= kCenterMerge) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      u.pts.push_back(centers[i]);
      u.origin.push_back(i);
    }
  }
  return u;
}

// Arc of circle j lying in all other discs; nullopt when empty or when two
// discs are disjoint.
std::optional<AngularInterval> arc_inside_others(const std::vector<Point>& c, std::size_t j,
                                                 bool* disjoint) {
  AngularInterval iv;
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (m == j) continue;
    const Point d = c[m] - c[j];
    const double len = norm(d);
    if (len > 2.0 + kGeomEps) {
      if (disjoint) *disjoint = true;
      return std::nullopt;
    }
    const double half = std::acos(std::min(0.5 * len, 1.0));
    if (!iv.clip(direction_angle(d) - half, 2.0 * half)) return std::nullopt;
  }
  return iv;
}

DiscPolygon full_disc(Point c) {
  return DiscPolygon::from_parts({c + Point{-1.0, 0.0}, c + Point{1.0, 0.0}}, {c, c});
}


double segment_from_angle(double theta) { return 0.5 * (theta - std::sin(theta)); }

}  // namespace

// ---------------------------------------------------------------------------
// DiscPolygon

DiscPolygon::DiscPolygon(std::vector<Point> v, std::vector<Point> c)
    : vertices_(std::move(v)), centers_(std::move(c)) {
  canonicalize();
}

void DiscPolygon::canonicalize() {
  if (vertices_.size() < 2) return;
  const std::size_t off = canonical_offset(vertices_);
  std::rotate(vertices_.begin(), vertices_.begin() + static_cast<std::ptrdiff_t>(off), vertices_.end());
  std::rotate(centers_.begin(), centers_.begin() + static_cast<std::ptrdiff_t>(off), centers_.end());
}

DiscPolygon DiscPolygon::point(Point p) {
  if (!is_finite(p)) throw GeometryError(ErrorKind::InvalidPolygon, "non-finite point");
  return DiscPolygon({p}, {});
}

DiscPolygon DiscPolygon::from_parts(std::vector<Point> vertices, std::vector<Point> centers) {
  if (vertices.empty()) throw GeometryError(ErrorKind::InvalidPolygon, "no vertices");
  if (vertices.size() == 1) centers.clear();
  if (vertices.size() > 1 && centers.size() != vertices.size()) {
    throw GeometryError(ErrorKind::InvalidPolygon, "vertex/center count mismatch");
  }
  return DiscPolygon(std::move(vertices), std::move(centers));
}

DiscPolygon DiscPolygon::from_vertices(std::vector<Point> ccw_vertices) {
  if (ccw_vertices.empty()) throw GeometryError(ErrorKind::EmptyInput, "no vertices");
  for (const Point p : ccw_vertices) {
    if (!is_finite(p)) throw GeometryError(ErrorKind::InvalidPolygon, "non-finite vertex");
  }
  if (ccw_vertices.size() == 1) return point(ccw_vertices[0]);
  const std::size_t k = ccw_vertices.size();
  std::vector<Point> centers(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Point a = ccw_vertices[i];
    const Point b = ccw_vertices[(i + 1) % k];
    if (dist(a, b) > 2.0 + kGeomEps) {
      throw GeometryError(ErrorKind::InvalidPolygon, "consecutive vertices farther apart than 2");
    }
    centers[i] = left_center(a, b);
  }
  DiscPolygon p(std::move(ccw_vertices), std::move(centers));
  p.validate();
  return p;
}

double DiscPolygon::arc_width(std::size_t i) const {
  if (vertices_.size() < 2) return 0.0;
  const Point c = center(i);
  return ccw_angle_upto_pi(vertex(i) - c, vertex(i + 1) - c);
}

void DiscPolygon::validate() const {
  const std::size_t k = vertices_.size();
  if (k == 0) throw GeometryError(ErrorKind::InvalidPolygon, "no vertices");
  for (const Point p : vertices_) {
    if (!is_finite(p)) throw GeometryError(ErrorKind::InvalidPolygon, "non-finite vertex");
  }
  if (k == 1) return;
  for (std::size_t i = 0; i < k; ++i) {
    if (dist(vertex(i), vertex(i + 1)) > 2.0 + kTestEps) {
      throw GeometryError(ErrorKind::InvalidPolygon, "edge chord longer than 2");
    }
    for (const Point v : vertices_) {
      if (dist(v, centers_[i]) > 1.0 + kTestEps) {
        throw GeometryError(ErrorKind::InvalidPolygon, "vertex outside an edge disc");
      }
    }
    if (vertices_.size() >= 3 && orient(vertex(i), vertex(i + 1), centers_[i]) <= 0.0) {
      throw GeometryError(ErrorKind::InvalidPolygon, "arc does not bulge outward");
    }
  }
  if (k >= 3) {
    double twice_area = 0.0;
    for (std::size_t i = 0; i < k; ++i) twice_area += cross(vertex(i), vertex(i + 1));
    if (twice_area <= 0.0) throw GeometryError(ErrorKind::InvalidPolygon, "vertices not counterclockwise");
    Point centroid{};
    for (const Point v : vertices_) centroid += v;
    centroid *= 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (orient(centroid, vertex(i), vertex(i + 1)) <= 0.0) {
        throw GeometryError(ErrorKind::InvalidPolygon, "vertices not strictly counterclockwise");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Basic queries

double area(const DiscPolygon& p) {
  const std::size_t k = p.size();
  if (k < 2) return 0.0;
  double twice = 0.0;
  double segments = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    twice += cross(p.vertex(i), p.vertex(i + 1));
    segments += segment_from_angle(p.arc_width(i));
  }
  return std::max(0.0, 0.5 * twice + segments);
}

bool contains(const DiscPolygon& p, Point q, double eps) {
  if (p.is_point()) return dist(p.vertex(0), q) <= eps;
  const double lim = (1.0 + eps) * (1.0 + eps);
  for (const Point c : p.arc_centers()) {
    const Point d = q - c;
    if (dot(d, d) > lim) return false;
  }
  return true;
}

DiscPolygon spindle(Point x, Point y) {
  const double d = dist(x, y);
  if (d > 2.0 + kGeomEps) throw GeometryError(ErrorKind::ChordTooLong, "spindle chord longer than 2");
  if (d <= kDegenerateChord) return DiscPolygon::point(x);
  return DiscPolygon::from_vertices({x, y});
}

DiscPolygon regular_disc_polygon(std::size_t k, double side) {
  if (k < 2) throw GeometryError(ErrorKind::InvalidArgument, "regular disc-polygon needs k >= 2");
  if (!(side > 0.0) || side > 2.0 + kGeomEps) {
    throw GeometryError(ErrorKind::OutOfRange, "side must lie in (0, 2]");
  }
  if (k == 2) return spindle({-0.5 * side, 0.0}, {0.5 * side, 0.0});
  const double circumradius = side / (2.0 * std::sin(kPi / static_cast<double>(k)));
  std::vector<Point> v(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double a = 0.5 * kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(k);
    v[j] = circumradius * unit_vector(a);
  }
  // The unit arcs must contain every vertex; large sides on many vertices fail.
  const Point c = left_center(v[0], v[1]);
  for (const Point q : v) {
    if (dist(q, c) > 1.0 + kTestEps) {
      throw GeometryError(ErrorKind::OutOfRange, "side too large for a " + std::to_string(k) + "-vertex disc-polygon");
    }
  }
  return DiscPolygon::from_vertices(std::move(v));
}

// ---------------------------------------------------------------------------
// Intersections of unit discs

bool unit_discs_meet(std::span<const Point> centers) {
  const UniqueCenters u = dedupe(centers);
  if (u.pts.size() <= 1) return !u.pts.empty();
  for (std::size_t j = 0; j < u.pts.size(); ++j) {
    bool disjoint = false;
    if (arc_inside_others(u.pts, j, &disjoint)) return true;
    if (disjoint) return false;
  }
  return false;
}

std::optional<DiscIntersection> intersect_unit_discs(std::span<const Point> centers) {
  const UniqueCenters u = dedupe(centers);
  if (u.pts.empty()) return std::nullopt;
  if (u.pts.size() == 1) {
    const std::size_t idx = u.origin[0];
    return DiscIntersection{full_disc(u.pts[0]), {{idx, kPi, kPi}, {idx, 0.0, kPi}}};
  }
  std::vector<DiscArc> arcs;
  for (std::size_t j = 0; j < u.pts.size(); ++j) {
    bool disjoint = false;
    const auto iv = arc_inside_others(u.pts, j, &disjoint);
    if (disjoint) return std::nullopt;
    if (iv && iv->width > kMinArc) arcs.push_back({u.origin[j], iv->start, iv->width});
  }
  if (arcs.size() < 2) return std::nullopt;
  std::sort(arcs.begin(), arcs.end(), [](const DiscArc& a, const DiscArc& b) { return a.start < b.start; });

  std::vector<Point> verts(arcs.size());
  std::vector<Point> cs(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    cs[i] = centers[arcs[i].disc];
    verts[i] = cs[i] + unit_vector(arcs[i].start);
  }
  const std::size_t off = canonical_offset(verts);
  std::rotate(arcs.begin(), arcs.begin() + static_cast<std::ptrdiff_t>(off), arcs.end());
  DiscPolygon poly = DiscPolygon::from_parts(std::move(verts), std::move(cs));
  return DiscIntersection{std::move(poly), std::move(arcs)};
}

std::optional<DiscPolygon> intersect_with_disc(const DiscPolygon& p, Point c) {
  if (p.is_point()) return std::nullopt;
  for (const Point q : p.arc_centers()) {
    if (dist(q, c) <= kGeomEps) return p;
  }
  std::vector<Point> centers(p.arc_centers().begin(), p.arc_centers().end());
  centers.push_back(c);
  auto inter = intersect_unit_discs(centers);
  if (!inter) return std::nullopt;
  return std::move(inter->polygon);
}

// ---------------------------------------------------------------------------
// Normals and support

std::vector<NormalCone> normal_cones(const DiscPolygon& p) {
  const std::size_t k = p.size();
  if (k < 2) throw GeometryError(ErrorKind::InvalidArgument, "normal cones need at least two vertices");
  std::vector<NormalCone> cones(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Point v = p.vertex(i);
    const Point n_in = v - p.center(i + k - 1);
    const Point n_out = v - p.center(i);
    const double alpha = direction_angle(n_in);
    cones[i] = {i, alpha, alpha + ccw_angle_upto_pi(n_in, n_out)};
  }
  return cones;
}

std::optional<std::size_t> vertex_cone_index(const DiscPolygon& p, double angle) {
  for (const NormalCone& c : normal_cones(p)) {
    if (c.width() <= 0.0) continue;
    if (wrap_angle(angle - c.alpha) <= c.width()) return c.vertex_index;
  }
  return std::nullopt;
}

Point support_point(const DiscPolygon& p, Point u) {
  if (p.is_point()) return p.vertex(0);
  const double phi = angle_of(u);
  if (auto i = vertex_cone_index(p, phi)) return p.vertex(*i);
  const std::size_t k = p.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point c = p.center(i);
    if (wrap_angle(phi - direction_angle(p.vertex(i) - c)) <= p.arc_width(i)) return c + u;
  }
  // Rounding can leave phi in a hairline gap between a cone and an arc.
  std::size_t nearest = 0;
  double nearest_gap = kTwoPi;
  for (const NormalCone& c : normal_cones(p)) {
    const double off = wrap_angle(phi - c.alpha);
    const double gap = std::min(std::max(0.0, off - c.width()), kTwoPi - off);
    if (gap < nearest_gap) {
      nearest_gap = gap;
      nearest = c.vertex_index;
    }
  }
  return p.vertex(nearest);
}

// ---------------------------------------------------------------------------
// Caps

namespace {

std::vector<Point> centers_with(const DiscPolygon& p, Point extra) {
  std::vector<Point> c(p.arc_centers().begin(), p.arc_centers().end());
  c.push_back(extra);
  return c;
}

double area_inside_disc(const DiscPolygon& p, Point c) {
  const auto clipped = intersect_with_disc(p, c);
  return clipped ? area(*clipped) : 0.0;
}

}  // namespace

double t_star(const DiscPolygon& p, Point u) {
  if (p.size() < 2) throw GeometryError(ErrorKind::InvalidArgument, "t_star needs at least two vertices");
  const Point xu = support_point(p, u);
  auto meets = [&](double t) { return unit_discs_meet(centers_with(p, xu - (1.0 + t) * u)); };
  double lo = 0.0;
  double hi = 2.5;
  while (meets(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    (meets(mid) ? lo : hi) = mid;
  }
  return lo;
}

DiscCap disc_cap(const DiscPolygon& p, Point u, double t) {
  if (p.size() < 2) throw GeometryError(ErrorKind::InvalidArgument, "caps need at least two vertices");
  if (!(t > 0.0) || !std::isfinite(t)) throw GeometryError(ErrorKind::HeightOutOfRange, "cap height must be positive");
  DiscCap cap;
  cap.normal_angle = angle_of(u);
  cap.normal = u;
  cap.height = t;
  cap.vertex = support_point(p, u);
  cap.cutting_center = cap.vertex - (1.0 + t) * u;

  const std::vector<Point> centers = centers_with(p, cap.cutting_center);
  if (!unit_discs_meet(centers)) {
    throw GeometryError(ErrorKind::HeightOutOfRange, "cutting disc misses the polygon (t > t*)");
  }
  const double total = area(p);
  auto inter = intersect_unit_discs(centers);
  if (!inter) {
    cap.area = total;
    return cap;
  }
  const std::size_t cut = centers.size() - 1;
  for (const DiscArc& a : inter->arcs) {
    if (a.disc == cut) {
      cap.chord_arc_length = a.width;
      cap.chord_start = a.start;
    }
  }
  cap.area = std::max(0.0, total - area(inter->polygon));
  cap.remainder = std::move(inter->polygon);
  return cap;
}

CapPair cap_pair(const DiscPolygon& p, Point x1, Point x2) {
  if (!contains(p, x1) || !contains(p, x2)) {
    throw GeometryError(ErrorKind::PointsOutside, "cap_pair points must lie in the polygon");
  }
  const auto [left, right] = unit_disc_centers_through(x1, x2);
  const double total = area(p);
  const double a_left = std::max(0.0, total - area_inside_disc(p, left));
  const double a_right = std::max(0.0, total - area_inside_disc(p, right));
  if (a_left <= a_right) return {a_left, a_right, left, right};
  return {a_right, a_left, right, left};
}

VertexCapSplit split_vertex_cap(const DiscPolygon& p, const DiscCap& cap) {
  const std::size_t k = p.size();
  const auto idx = vertex_cone_index(p, cap.normal_angle);
  if (!idx || dist(p.vertex(*idx), cap.vertex) > kGeomEps) {
    throw GeometryError(ErrorKind::InvalidArgument, "cap normal is not in a vertex cone");
  }
  const std::size_t i = *idx;
  const NormalCone cone = normal_cones(p)[i];
  const Point v = p.vertex(i);
  const Point c_in = p.center(i + k - 1);
  const Point c_out = p.center(i);

  VertexCapSplit s;
  s.vertex_index = i;
  s.beta = wrap_angle(cap.normal_angle - cone.alpha);
  s.y = cap.chord_begin();
  s.w = cap.chord_end();
  s.z = cap.cutting_center + cap.normal;
  // Signed: when the cone is wider than pi/2, z can lie beyond w (outside P)
  // and ell2 goes negative; the split formulas below stay valid as signed areas.
  s.ell1 = wrap_angle(cap.normal_angle - cap.chord_start);
  if (s.ell1 > kPi) s.ell1 -= kTwoPi;
  s.ell2 = cap.chord_arc_length - s.ell1;

  auto on_edge = [&](Point q, std::size_t e) {
    const Point c = p.center(e);
    if (std::abs(dist(q, c) - 1.0) > kTestEps) return false;
    const double off = wrap_angle(direction_angle(q - c) - direction_angle(p.vertex(e) - c));
    return off <= p.arc_width(e) + kTestEps || kTwoPi - off <= kTestEps;
  };
  s.single_vertex = cap.chord_arc_length > 0.0 && on_edge(s.y, i + k - 1) && on_edge(s.w, i);

  const double arc_vy = ccw_angle_upto_pi(s.y - c_in, v - c_in);
  const double arc_vw = ccw_angle_upto_pi(v - c_out, s.w - c_out);
  s.a1 = 0.5 * orient(s.y, v, s.z) + segment_from_angle(arc_vy) - segment_from_angle(s.ell1);
  s.a2 = 0.5 * orient(v, s.w, s.z) + segment_from_angle(arc_vw) - segment_from_angle(s.ell2);
  return s;
}

double ell1_relation_residual(double beta, double t, double ell1) {
  const double sl = std::sin(ell1);
  const double sb = std::sin(beta);
  const double cl = std::cos(ell1);
  const double cb = std::cos(beta);
  const double q = sl * sb;
  const double lhs = (q / t) * (1.0 + q / ((1.0 + cl) * (1.0 + cb)));
  const double rhs = cb + cl - 1.0 - 0.5 * t;
  return lhs - rhs;
}

double solve_ell1(double beta, double t) {
  if (!(beta > 0.0) || beta > 0.5 * kPi || !(t > 0.0)) {
    throw GeometryError(ErrorKind::OutOfRange, "solve_ell1 needs beta in (0, pi/2] and t > 0");
  }
  double lo = 0.0;
  double hi = 0.5 * kPi;
  if (ell1_relation_residual(beta, t, hi) < 0.0) {
    throw GeometryError(ErrorKind::OutOfRange, "no root of the ell1 relation below pi/2");
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ell1_relation_residual(beta, t, mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace discpoly

#include "discpoly/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "parallel.hpp"

namespace discpoly {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPairBlock = 4096;
constexpr std::uint64_t kPairStreamTag = std::uint64_t{1} << 63;

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

template <class Range, class Proj>
MeanSe mean_se(const Range& values, Proj proj) {
  const std::size_t n = std::size(values);
  if (n == 0) return {};
  double sum = 0.0;
  for (const auto& v : values) sum += proj(v);
  const double mean = sum / static_cast<double>(n);
  if (n == 1) return {mean, 0.0};
  double ss = 0.0;
  for (const auto& v : values) {
    const double d = proj(v) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

double binomial2(std::size_t n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

void fit_slopes(ExperimentResult& res, std::size_t min_n) {
  std::vector<double> x, yf, yf_se, ya, ya_se;
  auto collect = [&](std::size_t lower) {
    x.clear(); yf.clear(); yf_se.clear(); ya.clear(); ya_se.clear();
    for (const ExperimentRow& r : res.rows) {
      if (r.n < lower) continue;
      const double n = static_cast<double>(r.n);
      x.push_back(std::log(n));
      yf.push_back(r.mean_f0);
      yf_se.push_back(r.se_f0);
      ya.push_back(n * r.mean_missed_area);
      ya_se.push_back(n * r.se_area);
    }
  };
  collect(min_n);
  if (x.size() < 2) collect(0);
  if (x.size() < 2) {
    res.slope_f0 = res.slope_area = std::numeric_limits<double>::quiet_NaN();
    res.slope_f0_se = res.slope_area_se = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const LinearFit f = ols_fit(x, yf, yf_se);
  const LinearFit a = ols_fit(x, ya, ya_se);
  res.slope_f0 = f.slope;
  res.slope_f0_se = f.slope_se;
  res.slope_area = a.slope;
  res.slope_area_se = a.slope_se;
}

// Rejection sampler with the bounding box computed once.
class PolygonSampler {
 public:
  explicit PolygonSampler(const DiscPolygon& p) : p_(p), box_(bounding_box(p)) {
    if (!(area(p) > 0.0)) throw GeometryError(ErrorKind::ZeroArea, "cannot sample a region of zero area");
  }
  Point operator()(RngStream& rng) const {
    for (;;) {
      const Point q{rng.uniform(box_.min.x, box_.max.x), rng.uniform(box_.min.y, box_.max.y)};
      if (contains(p_, q, 0.0)) return q;
    }
  }

 private:
  const DiscPolygon& p_;
  Box box_;
};

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Vertex: return "vertex";
    case ExperimentKind::Efron: return "efron";
    case ExperimentKind::Pairs: return "pairs";
    case ExperimentKind::Smooth: return "smooth";
    case ExperimentKind::Jacobian: return "jacobian";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const ExperimentKind k : {ExperimentKind::Vertex, ExperimentKind::Efron, ExperimentKind::Pairs,
                                 ExperimentKind::Smooth, ExperimentKind::Jacobian}) {
    if (name == to_string(k)) return k;
  }
  throw GeometryError(ErrorKind::InvalidArgument, "unknown experiment kind '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (n_values.empty()) throw GeometryError(ErrorKind::InvalidArgument, "n_values must be nonempty");
  for (const std::size_t n : n_values) {
    if (n < 1) throw GeometryError(ErrorKind::InvalidArgument, "every n must be >= 1");
  }
  if (trials < 1) throw GeometryError(ErrorKind::InvalidArgument, "trials must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError(ErrorKind::InvalidArgument, "r must be positive");
}

ExperimentResult ExperimentResult::rescaled(double r) const {
  ExperimentResult out = *this;
  const double s = r * r;
  for (ExperimentRow& row : out.rows) {
    row.mean_missed_area *= s;
    row.se_area *= s;
  }
  out.slope_area *= s;
  out.slope_area_se *= s;
  return out;
}

LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& y_se) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || y_se.size() != n) {
    throw GeometryError(ErrorKind::InvalidArgument, "ols_fit needs at least two matching points");
  }
  const double xm = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double ym = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (!(sxx > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "ols_fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (x[i] - xm) / sxx;
    var += w * w * y_se[i] * y_se[i];
  }
  f.slope_se = std::sqrt(var);
  return f;
}

std::uint64_t trial_stream_id(std::size_t n, std::size_t trial) {
  return (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(trial);
}

TrialOutcome run_trial(const Region& region, std::size_t n, RngStream& rng) {
  const std::vector<Point> pts = sample_uniform(region, rng, n);
  const HullResult h = r_hull(pts);
  return {h.f0, region_area(region) - area(h.hull)};
}

std::vector<ExperimentRow> run_rows(const Region& region, const std::vector<std::size_t>& n_values,
                                    std::size_t trials, std::uint64_t seed, unsigned threads) {
  std::vector<std::size_t> ns = n_values;
  std::sort(ns.begin(), ns.end());
  std::vector<ExperimentRow> rows;
  rows.reserve(ns.size());
  std::vector<TrialOutcome> out(trials);
  for (const std::size_t n : ns) {
    detail::parallel_for(trials, threads, [&](std::size_t t) {
      RngStream rng(seed, trial_stream_id(n, t));
      out[t] = run_trial(region, n, rng);
    });
    const MeanSe f0 = mean_se(out, [](const TrialOutcome& o) { return static_cast<double>(o.f0); });
    const MeanSe ma = mean_se(out, [](const TrialOutcome& o) { return o.missed_area; });
    rows.push_back({n, trials, f0.mean, f0.se, ma.mean, ma.se});
  }
  return rows;
}

ExperimentResult run_vertex_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!std::holds_alternative<DiscPolygon>(cfg.region)) {
    throw GeometryError(ErrorKind::InvalidArgument, "vertex experiment needs a disc-polygon region");
  }
  ExperimentResult res;
  res.experiment = to_string(ExperimentKind::Vertex);
  res.region = cfg.region_name;
  res.rows = run_rows(cfg.region, cfg.n_values, cfg.trials, cfg.seed, cfg.threads);
  fit_slopes(res, cfg.slope_min_n);
  return res;
}

// ---------------------------------------------------------------------------

double EfronResult::combined_se() const { return std::hypot(se_lhs, se_rhs); }

EfronResult efron_check(const DiscPolygon& p, std::size_t n, std::size_t trials, std::uint64_t seed,
                        unsigned threads, std::optional<std::uint64_t> rhs_seed) {
  if (n < 1 || trials < 1) throw GeometryError(ErrorKind::InvalidArgument, "efron_check needs n >= 1 and trials >= 1");
  const Region region{p};
  const double a = area(p);
  const ExperimentRow big = run_rows(region, {n + 1}, trials, seed, threads).front();
  const ExperimentRow small = run_rows(region, {n}, trials, rhs_seed.value_or(seed), threads).front();
  const double scale = static_cast<double>(n + 1) / a;
  return {big.mean_f0, scale * small.mean_missed_area, big.se_f0, scale * small.se_area};
}

PairEstimate pair_integral_estimator(const DiscPolygon& p, std::size_t n, std::size_t pairs, std::uint64_t seed,
                                     unsigned threads) {
  if (n < 2) throw GeometryError(ErrorKind::InvalidArgument, "pair estimator needs n >= 2");
  if (pairs < 1) throw GeometryError(ErrorKind::InvalidArgument, "pair estimator needs pairs >= 1");
  const double a = area(p);
  const double exponent = static_cast<double>(n - 2);
  const std::size_t blocks = (pairs + kPairBlock - 1) / kPairBlock;
  std::vector<std::array<double, 2>> sums(blocks);
  const PolygonSampler random_in(p);
  detail::parallel_for(blocks, threads, [&](std::size_t b) {
    RngStream rng(seed, kPairStreamTag | b);
    const std::size_t count = std::min(kPairBlock, pairs - b * kPairBlock);
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const Point x1 = random_in(rng);
      const Point x2 = random_in(rng);
      const CapPair cp = cap_pair(p, x1, x2);
      const double v = std::pow(std::max(0.0, 1.0 - cp.a_minus / a), exponent) +
                       std::pow(std::max(0.0, 1.0 - cp.a_plus / a), exponent);
      s += v;
      s2 += v * v;
    }
    sums[b] = {s, s2};
  });
  double s = 0.0;
  double s2 = 0.0;
  for (const auto& [bs, bs2] : sums) {
    s += bs;
    s2 += bs2;
  }
  const double m = static_cast<double>(pairs);
  const double mean = s / m;
  const double var = pairs > 1 ? std::max(0.0, (s2 - m * mean * mean) / (m - 1.0)) : 0.0;
  const double c = binomial2(n);
  return {c * mean, c * std::sqrt(var / m), pairs};
}

// ---------------------------------------------------------------------------

double JacobianCheck::relative_error() const {
  if (cross < 1e-10) throw GeometryError(ErrorKind::DegenerateCap, "|u1 x u2| below 1e-10");
  return std::abs(numeric - analytic) / analytic;
}

std::pair<Point, Point> pair_map(const DiscPolygon& p, double u_angle, double t, double u1_angle, double u2_angle) {
  const Point u = unit_vector(u_angle);
  const Point base = support_point(p, u) - (1.0 + t) * u;
  return {base + unit_vector(u1_angle), base + unit_vector(u2_angle)};
}

namespace {

double abs_det4(std::array<std::array<double, 4>, 4> m) {
  double det = 1.0;
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (m[piv][col] == 0.0) return 0.0;
    std::swap(m[piv], m[col]);
    det *= m[col][col];
    for (std::size_t r = col + 1; r < 4; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return std::abs(det);
}

bool on_arc(double angle, double start, double width) {
  return wrap_angle(angle - start) <= width + kTestEps || kTwoPi - wrap_angle(angle - start) <= kTestEps;
}

}  // namespace

JacobianCheck jacobian_check(const DiscPolygon& p, double u_angle, double t, double u1_angle, double u2_angle,
                             double step) {
  const DiscCap cap = disc_cap(p, unit_vector(u_angle), t);
  if (!on_arc(u1_angle, cap.chord_start, cap.chord_arc_length) ||
      !on_arc(u2_angle, cap.chord_start, cap.chord_arc_length)) {
    throw GeometryError(ErrorKind::InvalidArgument, "u1 and u2 must lie on the chord arc of the cap");
  }
  const std::array<double, 4> x0{u_angle, t, u1_angle, u2_angle};
  std::array<std::array<double, 4>, 4> jac{};
  for (std::size_t c = 0; c < 4; ++c) {
    std::array<double, 4> lo = x0;
    std::array<double, 4> hi = x0;
    lo[c] -= step;
    hi[c] += step;
    const auto [a1, a2] = pair_map(p, lo[0], lo[1], lo[2], lo[3]);
    const auto [b1, b2] = pair_map(p, hi[0], hi[1], hi[2], hi[3]);
    const double inv = 1.0 / (2.0 * step);
    jac[0][c] = (b1.x - a1.x) * inv;
    jac[1][c] = (b1.y - a1.y) * inv;
    jac[2][c] = (b2.x - a2.x) * inv;
    jac[3][c] = (b2.y - a2.y) * inv;
  }
  JacobianCheck out;
  out.cross = std::abs(std::sin(u2_angle - u1_angle));
  out.vertex_cone = vertex_cone_index(p, wrap_angle(u_angle)).has_value();
  out.analytic = (out.vertex_cone ? 1.0 + t : t) * out.cross;
  out.numeric = abs_det4(jac);
  return out;
}

std::vector<JacobianSample> jacobian_samples(const DiscPolygon& p, std::size_t per_class, double t,
                                             std::uint64_t seed) {
  if (p.size() < 2) throw GeometryError(ErrorKind::InvalidArgument, "jacobian samples need at least two vertices");
  if (!(t > 0.0)) throw GeometryError(ErrorKind::HeightOutOfRange, "t must be positive");
  double cone_total = 0.0;
  for (const NormalCone& c : normal_cones(p)) cone_total += c.width();
  if (cone_total < 1e-6 || kTwoPi - cone_total < 1e-6) {
    throw GeometryError(ErrorKind::InvalidArgument, "both normal classes need positive measure");
  }
  std::vector<JacobianSample> out;
  out.reserve(2 * per_class);
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    const bool want_vertex = i < per_class;
    RngStream rng(seed, i);
    JacobianSample s;
    for (;;) {
      s.u_angle = rng.uniform(0.0, kTwoPi);
      if (vertex_cone_index(p, s.u_angle).has_value() != want_vertex) continue;
      s.t = std::min(t, 0.5 * t_star(p, unit_vector(s.u_angle)));
      const DiscCap cap = disc_cap(p, unit_vector(s.u_angle), s.t);
      s.u1_angle = cap.chord_start + rng.uniform(0.05, 0.95) * cap.chord_arc_length;
      s.u2_angle = cap.chord_start + rng.uniform(0.05, 0.95) * cap.chord_arc_length;
      if (std::abs(std::sin(s.u2_angle - s.u1_angle)) >= 1e-3) break;
    }
    s.check = jacobian_check(p, s.u_angle, s.t, s.u1_angle, s.u2_angle);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------

double c_of_K_fixed(const SmoothDisc& k, double r, std::size_t panels) {
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  if (!(r > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "r must be positive");
  if (!(k.min_curvature() > inv_r)) {
    throw GeometryError(ErrorKind::NotRConvex, "minimum curvature must exceed 1/r");
  }
  if (panels < 2 || panels % 2 != 0) throw GeometryError(ErrorKind::InvalidArgument, "Simpson needs an even panel count");
  auto f = [&](double th) { return std::cbrt(k.curvature(th) - inv_r) * k.speed(th); };
  const double h = kTwoPi / static_cast<double>(panels);
  double s = f(0.0) + f(kTwoPi);
  for (std::size_t i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
  return s * h / 3.0;
}

double c_of_K(const SmoothDisc& k, double r, double tol) {
  std::size_t panels = 16;
  double prev = c_of_K_fixed(k, r, panels);
  while (panels < (std::size_t{1} << 24)) {
    panels *= 2;
    const double cur = c_of_K_fixed(k, r, panels);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

SmoothLimits smooth_limits(const SmoothDisc& k) {
  SmoothLimits l;
  const double a = k.area();
  const double g = std::tgamma(5.0 / 3.0);
  l.c = c_of_K(k, 1.0, 1e-12);
  l.vertex_limit = std::cbrt(2.0 / (3.0 * a)) * g * l.c;
  l.area_limit = std::cbrt(2.0 * a * a / 3.0) * g * l.c;
  return l;
}

SmoothResult smooth_case_experiment(const SmoothDisc& k, const ExperimentConfig& cfg) {
  cfg.validate();
  if (!(k.min_curvature() > 1.0)) throw GeometryError(ErrorKind::NotRConvex, "minimum curvature must exceed 1");
  SmoothResult out;
  out.limits = smooth_limits(k);
  out.result.experiment = to_string(ExperimentKind::Smooth);
  out.result.region = cfg.region_name;
  out.result.rows = run_rows(Region{k}, cfg.n_values, cfg.trials, cfg.seed, cfg.threads);
  fit_slopes(out.result, cfg.slope_min_n);
  for (const ExperimentRow& r : out.result.rows) {
    const double n = static_cast<double>(r.n);
    const double sf = std::cbrt(1.0 / n);
    const double sa = std::cbrt(n * n);
    out.scaled_f0.push_back(r.mean_f0 * sf);
    out.scaled_f0_se.push_back(r.se_f0 * sf);
    out.scaled_area.push_back(r.mean_missed_area * sa);
    out.scaled_area_se.push_back(r.se_area * sa);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Point> hull_oracle_instance(std::uint64_t seed, std::size_t index, std::size_t max_points) {
  if (max_points < 1) throw GeometryError(ErrorKind::InvalidArgument, "max_points must be >= 1");
  RngStream rng(seed, index);
  for (;;) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(max_points));
    std::vector<Point> pts;
    switch (index % 3) {
      case 0: {
        const double rho = rng.uniform(0.3, 1.0);
        while (pts.size() < n) {
          const Point q{rng.uniform(-rho, rho), rng.uniform(-rho, rho)};
          if (norm(q) <= rho) pts.push_back(q);
        }
        break;
      }
      case 1: {
        // Near-cocircular sets stress the pruning test.
        const double rho = rng.uniform(0.9, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
          const double jitter = rng.uniform(-1e-3, 0.0);
          pts.push_back(unit_vector(rng.uniform(0.0, kTwoPi)) * (rho + jitter));
        }
        break;
      }
      default:
        for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7)});
        break;
    }
    if (min_enclosing_circle(pts).radius <= 1.0) return pts;
  }
}

HullOracleReport hull_oracle_check(std::size_t instances, std::uint64_t seed, std::size_t max_points) {
  HullOracleReport rep;
  for (std::size_t i = 0; i < instances; ++i) {
    const std::vector<Point> pts = hull_oracle_instance(seed, i, max_points);
    std::vector<std::size_t> got = r_hull(pts).vertex_indices;
    std::sort(got.begin(), got.end());
    ++rep.instances;
    if (got != oracle_vertex_set(pts)) {
      ++rep.mismatches;
      rep.failed.push_back(i);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lemma suite

bool LemmaReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.informational || c.failures == 0; });
}

const LemmaCheck* LemmaReport::find(const std::string& name) const {
  for (const LemmaCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PairDecomposition pair_decomposition(const DiscPolygon& p, Point x1, Point x2) {
  const CapPair cp = cap_pair(p, x1, x2);
  PairDecomposition d;
  d.area = area(p);
  d.a_minus = cp.a_minus;
  d.a_plus = cp.a_plus;
  d.spindle_area = area(spindle(x1, x2));
  // |P n D1 n D2| by clipping twice; with |P n Di| = A - A_i, inclusion-exclusion
  // gives the part of P outside both discs.
  std::vector<Point> centers(p.arc_centers().begin(), p.arc_centers().end());
  centers.push_back(cp.minus_center);
  centers.push_back(cp.plus_center);
  const auto both = intersect_unit_discs(centers);
  const double in_both = both ? area(both->polygon) : 0.0;
  d.overlap = d.a_minus + d.a_plus - d.area + in_both;
  return d;
}

std::optional<double> nonadjacent_edge_distance(const DiscPolygon& p) {
  const std::size_t k = p.size();
  if (k < 4) return std::nullopt;
  constexpr std::size_t kSamples = 2048;
  std::vector<std::vector<Point>> samples(k);
  std::vector<double> spacing(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Point c = p.center(i);
    const double s = direction_angle(p.vertex(i) - c);
    const double w = p.arc_width(i);
    spacing[i] = w / static_cast<double>(kSamples);
    for (std::size_t j = 0; j <= kSamples; ++j) {
      samples[i].push_back(c + unit_vector(s + w * static_cast<double>(j) / static_cast<double>(kSamples)));
    }
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      double m = std::numeric_limits<double>::infinity();
      for (const Point a : samples[i]) {
        for (const Point b : samples[j]) m = std::min(m, dist(a, b));
      }
      best = std::min(best, m - spacing[i] - spacing[j]);
    }
  }
  return best;
}

namespace {

LemmaCheck named(const char* name) {
  LemmaCheck c;
  c.name = name;
  return c;
}

double log_uniform(RngStream& rng, double lo, double hi) {
  return std::exp(rng.uniform(std::log(lo), std::log(hi)));
}

std::size_t vertices_in_cap(const DiscPolygon& p, const DiscCap& cap) {
  std::size_t n = 0;
  for (const Point v : p.vertices()) {
    if (dist(v, cap.cutting_center) > 1.0 + kGeomEps) ++n;
  }
  return n;
}

LemmaCheck check_cap_bounds(const DiscPolygon& p, RngStream& rng, const LemmaSuiteOptions& opt) {
  LemmaCheck c = named("cap_area_bounds");
  const double small = opt.small_cap_fraction * area(p);
  for (std::size_t attempts = 0; c.trials < opt.caps && attempts < 100 * opt.caps; ++attempts) {
    const Point u = unit_vector(rng.uniform(0.0, kTwoPi));
    const double ts = t_star(p, u);
    const double t = ts * log_uniform(rng, 1e-6, 1.0);
    const DiscCap cap = disc_cap(p, u, t);
    if (cap.area > small) continue;
    ++c.trials;
    const double lo = t * cap.chord_arc_length / kTwoPi;
    const double hi = 2.0 * t * cap.chord_arc_length;
    if (!(lo < cap.area && cap.area < hi)) ++c.failures;
    c.worst = std::max({c.worst, cap.area / hi, lo / cap.area});
  }
  c.note = "worst = max(A / (2 t l), t l / (2 pi A)); must stay below 1";
  return c;
}

std::pair<LemmaCheck, LemmaCheck> check_decomposition(const DiscPolygon& p, RngStream& rng,
                                                      const LemmaSuiteOptions& opt) {
  LemmaCheck cover = named("cap_covering_identity");
  LemmaCheck disjoint = named("cap_disjoint_sum");
  disjoint.informational = true;
  const double a = area(p);
  const PolygonSampler random_in(p);
  for (std::size_t i = 0; i < opt.pairs; ++i) {
    const Point x1 = random_in(rng);
    const Point x2 = random_in(rng);
    const PairDecomposition d = pair_decomposition(p, x1, x2);
    ++cover.trials;
    ++disjoint.trials;
    const double rc = std::abs(d.covering_residual()) / a;
    const double rd = std::abs(d.disjoint_residual()) / a;
    if (rc > 1e-9) ++cover.failures;
    if (rd > 1e-9) ++disjoint.failures;
    cover.worst = std::max(cover.worst, rc);
    disjoint.worst = std::max(disjoint.worst, rd);
  }
  cover.note = "|A - (A- + A+ + spindle - overlap)| / A <= 1e-9";
  disjoint.note = "|A - (A- + A+ + spindle)| / A; nonzero whenever the two caps overlap";
  return {cover, disjoint};
}

// Single-vertex cap with normal at angle beta from the incoming edge normal.
std::optional<VertexCapSplit> vertex_cap(const DiscPolygon& p, std::size_t vertex, double beta, double t) {
  const NormalCone cone = normal_cones(p)[vertex];
  if (!(beta > 0.0 && beta < cone.width())) return std::nullopt;
  const DiscCap cap = disc_cap(p, unit_vector(cone.alpha + beta), t);
  VertexCapSplit s = split_vertex_cap(p, cap);
  if (!s.single_vertex || s.vertex_index != vertex) return std::nullopt;
  return s;
}

std::pair<LemmaCheck, LemmaCheck> check_ell1(const DiscPolygon& p, RngStream& rng, const LemmaSuiteOptions& opt) {
  LemmaCheck rel = named("ell1_relation");
  LemmaCheck asym = named("ell1_asymptotic");
  const std::vector<NormalCone> cones = normal_cones(p);
  std::vector<std::size_t> usable;
  for (const NormalCone& c : cones) {
    if (c.width() > 0.04) usable.push_back(c.vertex_index);
  }
  if (usable.empty()) {
    rel.note = asym.note = "no vertex cone wider than 0.04";
    return {rel, asym};
  }
  for (std::size_t attempts = 0; rel.trials < opt.ell1_triples && attempts < 100 * opt.ell1_triples; ++attempts) {
    const std::size_t v = usable[static_cast<std::size_t>(rng.uniform() * static_cast<double>(usable.size()))];
    const double hi = std::min(cones[v].width() - 0.02, 0.5 * kPi);
    const double beta = rng.uniform(0.02, hi);
    const double t = log_uniform(rng, 1e-6, 1e-2);
    const auto s = vertex_cap(p, v, beta, t);
    if (!s) continue;
    ++rel.trials;
    const double r = std::abs(ell1_relation_residual(s->beta, t, s->ell1));
    if (r > 1e-8) ++rel.failures;
    rel.worst = std::max(rel.worst, r);
  }
  rel.note = "|residual| <= 1e-8";

  double worst_dev = 0.0;
  for (std::size_t attempts = 0; asym.trials < opt.ell1_triples && attempts < 100 * opt.ell1_triples; ++attempts) {
    const std::size_t v = usable[static_cast<std::size_t>(rng.uniform() * static_cast<double>(usable.size()))];
    const double hi = std::min(1.0, cones[v].width() - 1e-3);
    if (hi <= 0.1) break;
    const double beta = rng.uniform(0.1, hi);
    const double t = log_uniform(rng, 1e-7, 1e-4);
    const auto s = vertex_cap(p, v, beta, t);
    if (!s) continue;
    ++asym.trials;
    const double ratio = s->ell1 / (t / std::tan(s->beta));
    if (ratio < 0.99 || ratio > 1.01) ++asym.failures;
    worst_dev = std::max(worst_dev, std::abs(ratio - 1.0));
  }
  asym.worst = worst_dev;
  asym.note = asym.trials ? "l1 / (t cot beta) in [0.99, 1.01] for t <= 1e-4, beta in [0.1, 1.0]"
                          : "no vertex cone wider than 0.1";
  return {rel, asym};
}

std::pair<LemmaCheck, LemmaCheck> check_vertex_split(const DiscPolygon& p, const LemmaSuiteOptions& opt) {
  LemmaCheck bounds = named("a1_area_bounds");
  LemmaCheck split = named("a1_a2_split_consistency");
  constexpr std::array<double, 5> kBetaFrac{0.1, 0.25, 0.5, 0.75, 0.99};
  constexpr std::array<double, 5> kTFrac{0.001, 0.01, 0.1, 0.5, 1.0};
  const std::vector<NormalCone> cones = normal_cones(p);
  for (const NormalCone& cone : cones) {
    for (const double bf : kBetaFrac) {
      const double beta = bf * opt.split_delta;
      if (beta >= cone.width()) continue;
      for (const double tf : kTFrac) {
        const double t = tf * opt.split_delta * beta;
        const auto s = vertex_cap(p, cone.vertex_index, beta, t);
        if (!s) continue;
        const DiscCap cap = disc_cap(p, unit_vector(cone.alpha + beta), t);
        ++bounds.trials;
        const double ref = 0.5 * t * s->ell1;
        const double ratio = s->a1 / ref;
        if (ratio < 1.0 - opt.split_eps || ratio > 1.0 + opt.split_eps) ++bounds.failures;
        bounds.worst = std::max(bounds.worst, std::abs(ratio - 1.0));
        ++split.trials;
        const double gap = std::abs(s->a1 + s->a2 - cap.area);
        if (gap > 1e-6 * cap.area + 1e-14) ++split.failures;
        split.worst = std::max(split.worst, gap / cap.area);
      }
    }
  }
  bounds.note = "A1 / (t l1 / 2) within 1 +- eps";
  split.note = "A1 + A2 matches the clipped cap area";
  return {bounds, split};
}

LemmaCheck check_multi_vertex_caps(const DiscPolygon& p, RngStream& rng, const LemmaSuiteOptions& opt) {
  LemmaCheck c = named("multi_vertex_cap_bounds");
  const auto c0 = nonadjacent_edge_distance(p);
  if (!c0) {
    c.informational = true;
    c.note = "fewer than four edges: no non-adjacent edge pair";
    return c;
  }
  const double small = opt.small_cap_fraction * area(p);
  for (std::size_t attempts = 0; c.trials < opt.caps / 10 && attempts < 100 * opt.caps; ++attempts) {
    const Point u = unit_vector(rng.uniform(0.0, kTwoPi));
    const double t = t_star(p, u) * log_uniform(rng, 1e-6, 1.0);
    const DiscCap cap = disc_cap(p, u, t);
    if (cap.area > small || vertices_in_cap(p, cap) < 2) continue;
    ++c.trials;
    if (!(cap.chord_arc_length > *c0) || !(cap.area > *c0 * t / kTwoPi)) ++c.failures;
    c.worst = std::max(c.worst, *c0 / cap.chord_arc_length);
  }
  c.note = "l > c0 and A > c0 t / (2 pi); worst = c0 / l";
  return c;
}

// A(u, .) must grow on all of (0, t*]. l(u, .) is only monotone while the cap
// holds a single vertex: once the cutting circle passes a second vertex the
// chord behaves like an edge cap, whose l starts at the arc width and shrinks,
// and every l reaches 0 at t*. Edge-normal decreases are reported, not failed.
std::pair<LemmaCheck, LemmaCheck> check_monotone(const DiscPolygon& p, RngStream& rng, const LemmaSuiteOptions& opt) {
  LemmaCheck mono = named("cap_monotonicity");
  LemmaCheck edge = named("edge_normal_ell_decrease");
  edge.informational = true;
  const double small = opt.small_cap_fraction * area(p);
  constexpr std::size_t kGrid = 200;
  for (std::size_t m = 0; m < opt.monotone_normals; ++m) {
    const double angle = rng.uniform(0.0, kTwoPi);
    const Point u = unit_vector(angle);
    const bool vertex_normal = vertex_cone_index(p, angle).has_value();
    const double ts = t_star(p, u);
    double prev_area = 0.0;
    double prev_len = 0.0;
    bool area_ok = true;
    bool len_ok = true;
    for (std::size_t j = 1; j <= kGrid; ++j) {
      const double t = ts * static_cast<double>(j) / static_cast<double>(kGrid);
      const DiscCap cap = disc_cap(p, u, t);
      if (cap.area < prev_area - 1e-12) area_ok = false;
      const bool tracked = cap.area <= small && (!vertex_normal || vertices_in_cap(p, cap) == 1);
      if (j > 1 && tracked && cap.chord_arc_length < prev_len - 1e-12) len_ok = false;
      mono.worst = std::max(mono.worst, prev_area - cap.area);
      prev_area = cap.area;
      prev_len = cap.chord_arc_length;
    }
    ++mono.trials;
    if (!area_ok || (vertex_normal && !len_ok)) ++mono.failures;
    if (!vertex_normal) {
      ++edge.trials;
      if (!len_ok) ++edge.failures;
    }
  }
  mono.note = "A(u, .) nondecreasing on (0, t*]; l(u, .) nondecreasing for vertex normals while the cap is small and holds one vertex";
  edge.note = "edge normals whose l(u, .) decreases while the cap is small";
  return {mono, edge};
}

LemmaCheck check_gauss_map(const DiscPolygon& p) {
  LemmaCheck c = named("gauss_map_partition");
  double total = 0.0;
  for (const NormalCone& cone : normal_cones(p)) total += cone.width();
  for (std::size_t i = 0; i < p.size(); ++i) total += p.arc_width(i);
  c.trials = 1;
  c.worst = std::abs(total - kTwoPi);
  if (c.worst > 1e-9) c.failures = 1;
  c.note = "cone widths + arc widths = 2 pi";
  return c;
}

}  // namespace

LemmaReport lemma_suite(const DiscPolygon& p, std::uint64_t seed, const LemmaSuiteOptions& opt) {
  if (p.size() < 2) throw GeometryError(ErrorKind::InvalidArgument, "lemma suite needs at least two vertices");
  LemmaReport rep;
  // Independent streams per check so adding a check never perturbs the others.
  RngStream caps_rng(seed, 1);
  RngStream pairs_rng(seed, 2);
  RngStream ell_rng(seed, 3);
  RngStream cor_rng(seed, 4);
  RngStream mono_rng(seed, 5);

  rep.checks.push_back(check_cap_bounds(p, caps_rng, opt));
  auto [cover, disjoint] = check_decomposition(p, pairs_rng, opt);
  rep.checks.push_back(cover);
  rep.checks.push_back(disjoint);
  auto [rel, asym] = check_ell1(p, ell_rng, opt);
  rep.checks.push_back(rel);
  rep.checks.push_back(asym);
  auto [bounds, split] = check_vertex_split(p, opt);
  rep.checks.push_back(bounds);
  rep.checks.push_back(split);
  rep.checks.push_back(check_multi_vertex_caps(p, cor_rng, opt));
  auto [mono, edge] = check_monotone(p, mono_rng, opt);
  rep.checks.push_back(mono);
  rep.checks.push_back(edge);
  rep.checks.push_back(check_gauss_map(p));
  return rep;
}

}  // namespace discpoly

#pragma once

// Monte Carlo experiments on random unit-radius hulls.
//
// Every trial draws its points from its own RngStream, keyed by (seed, n,
// trial), and per-trial results are reduced in trial order. The thread count
// therefore changes wall time only, never the numbers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "discpoly/disc_polygon.hpp"
#include "discpoly/hull.hpp"
#include "discpoly/sampling.hpp"

namespace discpoly {

enum class ExperimentKind { Vertex, Efron, Pairs, Smooth, Jacobian };

const char* to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
  Region region = DiscPolygon::point({});
  std::string region_name = "region";
  std::vector<std::size_t> n_values{100, 400, 1600, 6400, 25600};
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  double r = 1.0;  // generating radius of the caller's units; the region is already scaled to r = 1
  ExperimentKind kind = ExperimentKind::Vertex;
  unsigned threads = 1;
  std::size_t slope_min_n = 100;  // rows with smaller n are left out of the slope fits
  std::size_t pairs = 1'000'000;

  void validate() const;
};

struct ExperimentRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double mean_f0 = 0.0;
  double se_f0 = 0.0;
  double mean_missed_area = 0.0;
  double se_area = 0.0;
};

struct ExperimentResult {
  std::string experiment;
  std::string region;
  std::vector<ExperimentRow> rows;  // sorted by n
  double slope_f0 = 0.0;            // d mean_f0 / d ln n
  double slope_f0_se = 0.0;
  double slope_area = 0.0;          // d (n * mean_missed_area) / d ln n
  double slope_area_se = 0.0;

  /// Copy with areas converted to a generating radius r (areas scale by r^2).
  ExperimentResult rescaled(double r) const;
};

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // propagated from the per-point standard errors
};

/// Ordinary least squares of y on x; slope_se propagates independent y errors.
LinearFit ols_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& y_se);

std::uint64_t trial_stream_id(std::size_t n, std::size_t trial);

struct TrialOutcome {
  std::size_t f0 = 0;
  double missed_area = 0.0;
};

TrialOutcome run_trial(const Region& region, std::size_t n, RngStream& rng);

/// Mean and standard error of f0 and missed area for each n.
std::vector<ExperimentRow> run_rows(const Region& region, const std::vector<std::size_t>& n_values,
                                    std::size_t trials, std::uint64_t seed, unsigned threads);

ExperimentResult run_vertex_experiment(const ExperimentConfig& cfg);

struct EfronResult {
  double lhs = 0.0;  // E f0 of the hull of n + 1 points
  double rhs = 0.0;  // (n + 1) E missed area of the hull of n points / area
  double se_lhs = 0.0;
  double se_rhs = 0.0;
  double combined_se() const;
};

EfronResult efron_check(const DiscPolygon& p, std::size_t n, std::size_t trials, std::uint64_t seed,
                        unsigned threads = 1, std::optional<std::uint64_t> rhs_seed = std::nullopt);

struct PairEstimate {
  double estimate = 0.0;  // of E f0 for n points
  double se = 0.0;
  std::size_t pairs = 0;
};

/// E f0 through the pair integral: C(n,2) times the mean over uniform pairs of
/// (1 - A_-/A)^(n-2) + (1 - A_+/A)^(n-2).
PairEstimate pair_integral_estimator(const DiscPolygon& p, std::size_t n, std::size_t pairs, std::uint64_t seed,
                                     unsigned threads = 1);

struct JacobianCheck {
  double analytic = 0.0;
  double numeric = 0.0;
  double cross = 0.0;  // |u1 x u2|
  bool vertex_cone = false;
  /// |numeric - analytic| / analytic; throws DegenerateCap when |u1 x u2| < 1e-10.
  double relative_error() const;
};

/// Pair map (u, t, u1, u2) -> (x_u - (1+t)u + u1, x_u - (1+t)u + u2).
std::pair<Point, Point> pair_map(const DiscPolygon& p, double u_angle, double t, double u1_angle, double u2_angle);

/// Compares the closed-form Jacobian of pair_map against a central-difference
/// determinant. u1 and u2 must lie on the chord arc of the cap D(u, t).
JacobianCheck jacobian_check(const DiscPolygon& p, double u_angle, double t, double u1_angle, double u2_angle,
                             double step = 1e-5);

struct JacobianSample {
  double u_angle = 0.0;
  double t = 0.0;
  double u1_angle = 0.0;
  double u2_angle = 0.0;
  JacobianCheck check;
};

/// per_class random configurations with u in a vertex cone, then per_class
/// with u on an edge-normal arc. Heights are min(t, t*(u) / 2); u1, u2 are
/// drawn from the inner 90% of the chord arc with |u1 x u2| >= 1e-3.
std::vector<JacobianSample> jacobian_samples(const DiscPolygon& p, std::size_t per_class, double t,
                                             std::uint64_t seed);

/// Boundary integral of (kappa - 1/r)^(1/3); r may be +infinity.
double c_of_K(const SmoothDisc& k, double r, double tol = 1e-8);
/// Composite Simpson with a fixed, even number of panels.
double c_of_K_fixed(const SmoothDisc& k, double r, std::size_t panels);

struct SmoothLimits {
  double c = 0.0;             // c(K, 1)
  double vertex_limit = 0.0;  // lim E f0 * n^(-1/3)
  double area_limit = 0.0;    // lim E missed area * n^(2/3)
};

SmoothLimits smooth_limits(const SmoothDisc& k);

struct SmoothResult {
  ExperimentResult result;
  SmoothLimits limits;
  std::vector<double> scaled_f0;    // mean_f0 * n^(-1/3) per row
  std::vector<double> scaled_f0_se;
  std::vector<double> scaled_area;  // mean missed area * n^(2/3) per row
  std::vector<double> scaled_area_se;
};

SmoothResult smooth_case_experiment(const SmoothDisc& k, const ExperimentConfig& cfg);

struct HullOracleReport {
  std::size_t instances = 0;
  std::size_t mismatches = 0;
  std::vector<std::size_t> failed;  // instance indices
};

/// Random point sets of 1..max_points points with enclosing radius <= 1,
/// drawn in three families (uniform in a disc, near a circle, uniform in a
/// square); compares r_hull's vertex set with the exact oracle on each.
std::vector<Point> hull_oracle_instance(std::uint64_t seed, std::size_t index, std::size_t max_points = 12);
HullOracleReport hull_oracle_check(std::size_t instances, std::uint64_t seed, std::size_t max_points = 12);

// ---------------------------------------------------------------------------
// Randomized lemma checks on a fixed disc-polygon.

struct LemmaCheck {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // check-specific extreme value, for reporting
  bool informational = false;  // reported but never counted as a failure
  std::string note;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool passed() const;
  const LemmaCheck* find(const std::string& name) const;
};

struct LemmaSuiteOptions {
  std::size_t caps = 10'000;
  std::size_t pairs = 10'000;
  std::size_t ell1_triples = 1'000;
  std::size_t monotone_normals = 100;
  double small_cap_fraction = 0.1;  // caps with A <= fraction * area(P) count as small
  // Vertex-cap split: A1 must be within (1 +- split_eps) * t * l1 / 2 for
  // beta < split_delta and t < split_delta * beta.
  double split_eps = 0.05;
  double split_delta = 0.01;
};

/// Identity |P| = |D_-| + |D_+| + |[x1,x2]_S| - |D_- n D_+| for the two caps
/// through x1, x2; returns the terms so callers can inspect both forms.
struct PairDecomposition {
  double area = 0.0;
  double a_minus = 0.0;
  double a_plus = 0.0;
  double spindle_area = 0.0;
  double overlap = 0.0;  // area of D_- n D_+, i.e. of P outside both discs
  double disjoint_residual() const { return area - (a_minus + a_plus + spindle_area); }
  double covering_residual() const { return area - (a_minus + a_plus + spindle_area - overlap); }
};

PairDecomposition pair_decomposition(const DiscPolygon& p, Point x1, Point x2);

/// Lower bound on the distance between non-adjacent edges (k >= 4).
std::optional<double> nonadjacent_edge_distance(const DiscPolygon& p);

LemmaReport lemma_suite(const DiscPolygon& p, std::uint64_t seed, const LemmaSuiteOptions& opt = {});

}  // namespace discpoly

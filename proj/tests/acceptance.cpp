// Acceptance run: one PASS/FAIL line per criterion. With no argument every
// criterion runs; "C3" etc. selects one. Exit status is nonzero if any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "discpoly/experiments.hpp"
#include "discpoly/io.hpp"

using namespace discpoly;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20240601;

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Named {
  const char* name;
  DiscPolygon p;
};

std::vector<Named> test_regions() {
  return {{"spindle", spindle({0.0, 0.0}, {1.0, 0.0})},
          {"reuleaux", regular_disc_polygon(3, 1.0)},
          {"regular-5", regular_disc_polygon(5, 1.0)}};
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void add(std::string& s, const std::string& part) {
  if (!s.empty()) s += "; ";
  s += part;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome c1() {
  const HullOracleReport r = hull_oracle_check(1000, kSeed);
  return {r.mismatches == 0 && r.instances == 1000, fmt("%zu instances, %zu mismatches", r.instances, r.mismatches)};
}

Outcome c2() {
  Outcome o;
  for (const auto& [name, p] : test_regions()) {
    RngStream rng(kSeed, 2);
    const auto pts = sample_uniform(Region{p}, rng, 20000);
    const double a = area(p);
    std::size_t violations = 0;
    double worst = 0.0, worst_cover = 0.0;
    for (std::size_t i = 0; i < pts.size(); i += 2) {
      const PairDecomposition d = pair_decomposition(p, pts[i], pts[i + 1]);
      const double r = std::abs(d.disjoint_residual());
      if (r > 1e-9 * a) ++violations;
      worst = std::max(worst, r / a);
      worst_cover = std::max(worst_cover, std::abs(d.covering_residual()) / a);
    }
    if (violations) o.pass = false;
    add(o.detail, fmt("%s: %zu/10000 pairs violate the disjoint sum (worst %.3g A); with the overlap term "
                      "subtracted the worst residual is %.2g A",
                      name, violations, worst, worst_cover));
  }
  return o;
}

LemmaSuiteOptions suite_options() {
  LemmaSuiteOptions opt;
  opt.caps = 10'000;
  opt.pairs = 100;  // the pair checks are covered by C2
  opt.ell1_triples = 1'000;
  return opt;
}

Outcome lemma_checks(std::initializer_list<const char*> names) {
  Outcome o;
  for (const auto& [region, p] : test_regions()) {
    const LemmaReport r = lemma_suite(p, kSeed, suite_options());
    for (const char* n : names) {
      const LemmaCheck* c = r.find(n);
      if (!c) {
        o.pass = false;
        add(o.detail, fmt("%s: %s missing", region, n));
        continue;
      }
      if (c->failures) o.pass = false;
      add(o.detail, fmt("%s %s: %zu/%zu violations, worst %.3g", region, n, c->failures, c->trials, c->worst));
    }
  }
  return o;
}

Outcome c3() { return lemma_checks({"cap_area_bounds"}); }
Outcome c4() { return lemma_checks({"ell1_relation", "ell1_asymptotic"}); }

Outcome c5() {
  Outcome o;
  const double t = 0.05;
  for (const auto& [name, p] : test_regions()) {
    double worst[2] = {0.0, 0.0};
    double wrong_best = INFINITY;
    std::size_t count[2] = {0, 0};
    for (const JacobianSample& s : jacobian_samples(p, 200, t, kSeed)) {
      const int cls = s.check.vertex_cone ? 0 : 1;
      ++count[cls];
      worst[cls] = std::max(worst[cls], s.check.relative_error());
      // the other class's factor, for the same angles
      const double wrong = (s.check.vertex_cone ? s.t : 1.0 + s.t) * s.check.cross;
      wrong_best = std::min(wrong_best, std::abs(s.check.numeric - wrong) / wrong);
    }
    if (count[0] != 200 || count[1] != 200 || worst[0] > 1e-4 || worst[1] > 1e-4 || wrong_best <= 1e-4) o.pass = false;
    add(o.detail, fmt("%s: N1 %zu worst %.2g, N2 %zu worst %.2g, swapped factor best %.3g", name, count[0], worst[0],
                      count[1], worst[1], wrong_best));
  }
  return o;
}

Outcome c6() {
  const EfronResult e = efron_check(regular_disc_polygon(3, 1.0), 100, 2000, kSeed, threads());
  const double z = (e.lhs - e.rhs) / e.combined_se();
  return {std::abs(z) <= 3.0, fmt("lhs %.5f rhs %.5f se %.4f z %.2f", e.lhs, e.rhs, e.combined_se(), z)};
}

Outcome c7() {
  const DiscPolygon p = regular_disc_polygon(3, 1.0);
  const PairEstimate pe = pair_integral_estimator(p, 50, 1'000'000, kSeed, threads());
  const auto rows = run_rows(Region{p}, {50}, 2000, kSeed, threads());
  const double se = std::hypot(pe.se, rows[0].se_f0);
  const double z = (pe.estimate - rows[0].mean_f0) / se;
  return {std::abs(z) <= 3.0,
          fmt("reuleaux n=50: direct %.4f +- %.4f, pair %.4f +- %.4f, z %.2f", rows[0].mean_f0, rows[0].se_f0,
              pe.estimate, pe.se, z)};
}

Outcome c8() {
  Outcome o;
  for (const auto& [name, p] : test_regions()) {
    ExperimentConfig cfg;
    cfg.region = p;
    cfg.region_name = name;
    cfg.n_values = {100, 400, 1600, 6400, 25600};
    cfg.trials = 500;
    cfg.seed = kSeed;
    cfg.threads = threads();
    const ExperimentResult r = run_vertex_experiment(cfg);
    const double target_f0 = 2.0 / 3.0 * static_cast<double>(p.f0());
    const double target_area = target_f0 * area(p);
    const double ef = r.slope_f0 / target_f0 - 1.0;
    const double ea = r.slope_area / target_area - 1.0;
    if (std::abs(ef) > 0.20 || std::abs(ea) > 0.25) o.pass = false;
    add(o.detail, fmt("%s: f0 slope %.4f (target %.4f, %+.1f%%), area slope %.4f (target %.4f, %+.1f%%)", name,
                      r.slope_f0, target_f0, 100 * ef, r.slope_area, target_area, 100 * ea));
  }
  return o;
}

Outcome c9() {
  const SmoothDisc k = SmoothDisc::circle(0.5);
  ExperimentConfig cfg;
  cfg.region = k;
  cfg.region_name = "circle-0.5";
  cfg.n_values = {100000};
  cfg.trials = 200;
  cfg.seed = kSeed;
  cfg.threads = threads();
  cfg.kind = ExperimentKind::Smooth;
  const SmoothResult s = smooth_case_experiment(k, cfg);
  const double constant = std::cbrt(8.0 / (3.0 * kPi)) * std::tgamma(5.0 / 3.0) * kPi;
  const double rel = s.scaled_f0[0] / constant - 1.0;
  double quad_err = 0.0;
  for (double rho : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const double closed = 2.0 * kPi * rho * std::cbrt(1.0 / rho - 1.0);
    quad_err = std::max(quad_err, std::abs(c_of_K(SmoothDisc::circle(rho), 1.0, 1e-12) - closed));
  }
  const bool pass = std::abs(rel) <= 0.15 && quad_err <= 1e-10 && std::abs(s.limits.vertex_limit - constant) <= 1e-10;
  return {pass, fmt("E f0 n^(-1/3) = %.4f +- %.4f vs %.4f (%+.2f%%); quadrature error %.2g", s.scaled_f0[0],
                    s.scaled_f0_se[0], constant, 100 * rel, quad_err)};
}

// Every experiment's output rendered to text at the given thread count.
std::string all_outputs(unsigned t) {
  std::string out;
  ExperimentConfig cfg;
  cfg.region = regular_disc_polygon(5, 1.0);
  cfg.region_name = "regular-5";
  cfg.n_values = {50, 200, 800};
  cfg.trials = 100;
  cfg.seed = 7;
  cfg.threads = t;
  out += results_csv({run_vertex_experiment(cfg)});
  const EfronResult e = efron_check(std::get<DiscPolygon>(cfg.region), 50, 200, 7, t);
  out += format_double(e.lhs) + ',' + format_double(e.rhs) + '\n';
  const PairEstimate pe = pair_integral_estimator(std::get<DiscPolygon>(cfg.region), 50, 20000, 7, t);
  out += format_double(pe.estimate) + ',' + format_double(pe.se) + '\n';
  cfg.region = SmoothDisc::circle(0.5);
  cfg.n_values = {1000};
  out += results_csv({smooth_case_experiment(SmoothDisc::circle(0.5), cfg).result});
  return out;
}

Outcome c10() {
  const std::string one = all_outputs(1);
  for (unsigned t : {2u, 4u, 7u}) {
    if (all_outputs(t) != one) return {false, fmt("output differs between 1 and %u threads", t)};
  }
  return {true, fmt("vertex, efron, pairs and smooth outputs identical for 1, 2, 4, 7 threads (%zu bytes)", one.size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> all{
      {"C1", c1}, {"C2", c2}, {"C3", c3}, {"C4", c4}, {"C5", c5},
      {"C6", c6}, {"C7", c7}, {"C8", c8}, {"C9", c9}, {"C10", c10}};
  std::vector<std::string> want(argv + 1, argv + argc);
  bool ok = true;
  for (const auto& [name, run] : all) {
    if (!want.empty() && std::find(want.begin(), want.end(), name) == want.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}

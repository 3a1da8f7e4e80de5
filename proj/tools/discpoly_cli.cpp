// discpoly: unit-radius hulls, disc-polygon regions and Monte Carlo runs.
//
// Exit codes: 0 success, 1 a check failed, 2 invalid arguments or input,
// 3 a geometric precondition was violated.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "discpoly/experiments.hpp"
#include "discpoly/io.hpp"
#include "json.hpp"

namespace {

using namespace discpoly;
using json = nlohmann::ordered_json;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;

struct CommonOptions {
  std::string input = "-";
  std::string output = "-";
  std::string region_path;
  std::string config_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t trials = 500;
  std::vector<std::size_t> n_list;
  double r = 1.0;
  unsigned threads = 1;
  std::size_t pairs = 1'000'000;
  std::size_t slope_min_n = 100;
  double t = 0.05;
  std::size_t instances = 1000;
};

struct RegionOptions {
  std::string shape;
  double side = 1.0;
  std::size_t k = 3;
  double rho = 0.5;
  double a = 0.7;
  double b = 0.5;
  double r = 1.0;
  std::string output = "-";
};

std::string region_name(const std::string& path) {
  if (path == "-" || path.empty()) return "stdin";
  return std::filesystem::path(path).stem().string();
}

// Loads a region, applying --r when given on the command line.
LoadedRegion load_region(const std::string& path, std::optional<double> r_override) {
  if (path.empty()) throw GeometryError(ErrorKind::InvalidArgument, "--region is required");
  std::string text = read_text(path);
  if (r_override) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw GeometryError(ErrorKind::InvalidArgument, "malformed region JSON");
    j["r"] = *r_override;
    text = j.dump();
  }
  return parse_region_json(text);
}

const DiscPolygon& require_polygon(const LoadedRegion& l) {
  if (!std::holds_alternative<DiscPolygon>(l.region)) {
    throw GeometryError(ErrorKind::InvalidArgument, "this experiment needs a disc-polygon region");
  }
  const DiscPolygon& p = std::get<DiscPolygon>(l.region);
  if (p.size() < 2) throw GeometryError(ErrorKind::ZeroArea, "region has zero area");
  return p;
}

std::string csv_line(std::initializer_list<std::string> fields) {
  std::string s;
  for (const std::string& f : fields) {
    if (!s.empty()) s += ',';
    s += f;
  }
  return s + '\n';
}

json rows_json(const ExperimentResult& res) {
  json rows = json::array();
  for (const ExperimentRow& r : res.rows) {
    rows.push_back({{"n", r.n}, {"trials", r.trials}, {"mean_f0", r.mean_f0}, {"se_f0", r.se_f0},
                    {"mean_missed_area", r.mean_missed_area}, {"se_area", r.se_area}});
  }
  return rows;
}

bool within(double value, double target, double rel_tol) { return std::abs(value - target) <= rel_tol * std::abs(target); }

// --- experiments ------------------------------------------------------------

std::string run_vertex(const CommonOptions& o, const ExperimentConfig& cfg, const LoadedRegion& l) {
  const DiscPolygon& p = require_polygon(l);
  const ExperimentResult res = run_vertex_experiment(cfg).rescaled(l.r);
  if (o.format == "csv") return results_csv({res});
  const double f0 = static_cast<double>(p.f0());
  const double target_f0 = 2.0 / 3.0 * f0;
  const double target_area = target_f0 * area(p) * l.r * l.r;
  json j = {{"experiment", res.experiment}, {"region", res.region}, {"r", l.r}, {"seed", cfg.seed},
            {"trials", cfg.trials}, {"f0_region", p.f0()}, {"slope_min_n", cfg.slope_min_n},
            {"slope_f0", res.slope_f0}, {"slope_f0_se", res.slope_f0_se}, {"target_f0", target_f0},
            {"tolerance_f0", 0.20}, {"pass_f0", within(res.slope_f0, target_f0, 0.20)},
            {"slope_area", res.slope_area}, {"slope_area_se", res.slope_area_se}, {"target_area", target_area},
            {"tolerance_area", 0.25}, {"pass_area", within(res.slope_area, target_area, 0.25)},
            {"rows", rows_json(res)}};
  return j.dump(2) + "\n";
}

std::string run_efron(const CommonOptions& o, const ExperimentConfig& cfg, const LoadedRegion& l) {
  const DiscPolygon& p = require_polygon(l);
  std::string csv = csv_line({"experiment", "region", "n", "trials", "lhs", "rhs", "combined_se", "z"});
  json rows = json::array();
  for (const std::size_t n : cfg.n_values) {
    const EfronResult e = efron_check(p, n, cfg.trials, cfg.seed, cfg.threads);
    const double se = e.combined_se();
    const double z = se > 0.0 ? (e.lhs - e.rhs) / se : 0.0;
    csv += csv_line({"efron", cfg.region_name, std::to_string(n), std::to_string(cfg.trials), format_double(e.lhs),
                     format_double(e.rhs), format_double(se), format_double(z)});
    rows.push_back({{"n", n}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"se_lhs", e.se_lhs}, {"se_rhs", e.se_rhs},
                    {"combined_se", se}, {"pass", std::abs(e.lhs - e.rhs) <= 3.0 * se}});
  }
  if (o.format == "csv") return csv;
  json j = {{"experiment", "efron"}, {"region", cfg.region_name}, {"seed", cfg.seed}, {"trials", cfg.trials},
            {"tolerance_se", 3.0}, {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string run_pairs(const CommonOptions& o, const ExperimentConfig& cfg, const LoadedRegion& l) {
  const DiscPolygon& p = require_polygon(l);
  std::string csv = csv_line({"experiment", "region", "n", "trials", "pairs", "direct_f0", "direct_se",
                              "pair_f0", "pair_se", "z"});
  json rows = json::array();
  for (const std::size_t n : cfg.n_values) {
    const PairEstimate pe = pair_integral_estimator(p, n, cfg.pairs, cfg.seed, cfg.threads);
    const ExperimentRow direct = run_rows(l.region, {n}, cfg.trials, cfg.seed, cfg.threads).front();
    const double se = std::hypot(pe.se, direct.se_f0);
    const double z = se > 0.0 ? (pe.estimate - direct.mean_f0) / se : 0.0;
    csv += csv_line({"pairs", cfg.region_name, std::to_string(n), std::to_string(cfg.trials), std::to_string(cfg.pairs),
                     format_double(direct.mean_f0), format_double(direct.se_f0), format_double(pe.estimate),
                     format_double(pe.se), format_double(z)});
    rows.push_back({{"n", n}, {"direct_f0", direct.mean_f0}, {"direct_se", direct.se_f0}, {"pair_f0", pe.estimate},
                    {"pair_se", pe.se}, {"pass", std::abs(pe.estimate - direct.mean_f0) <= 3.0 * se}});
  }
  if (o.format == "csv") return csv;
  json j = {{"experiment", "pairs"}, {"region", cfg.region_name}, {"seed", cfg.seed}, {"trials", cfg.trials},
            {"pairs", cfg.pairs}, {"tolerance_se", 3.0}, {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string run_smooth(const CommonOptions& o, const ExperimentConfig& cfg, const LoadedRegion& l) {
  if (!std::holds_alternative<SmoothDisc>(l.region)) {
    throw GeometryError(ErrorKind::InvalidArgument, "the smooth experiment needs a circle or ellipse region");
  }
  const SmoothResult sr = smooth_case_experiment(std::get<SmoothDisc>(l.region), cfg);
  const ExperimentResult res = sr.result.rescaled(l.r);
  if (o.format == "csv") return results_csv({res});
  json rows = rows_json(res);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i]["scaled_f0"] = sr.scaled_f0[i];
    rows[i]["scaled_f0_se"] = sr.scaled_f0_se[i];
    rows[i]["scaled_area"] = sr.scaled_area[i];
    rows[i]["scaled_area_se"] = sr.scaled_area_se[i];
    rows[i]["pass_f0"] = within(sr.scaled_f0[i], sr.limits.vertex_limit, 0.15);
  }
  // Limits are for the region at r = 1; scaled areas are too.
  json j = {{"experiment", "smooth"}, {"region", cfg.region_name}, {"r", l.r}, {"seed", cfg.seed},
            {"trials", cfg.trials}, {"c", sr.limits.c}, {"vertex_limit", sr.limits.vertex_limit},
            {"area_limit", sr.limits.area_limit}, {"tolerance_f0", 0.15}, {"rows", rows}};
  return j.dump(2) + "\n";
}

std::string run_jacobian(const CommonOptions& o, const ExperimentConfig& cfg, const LoadedRegion& l) {
  const DiscPolygon& p = require_polygon(l);
  const std::vector<JacobianSample> samples = jacobian_samples(p, cfg.trials, o.t, cfg.seed);
  std::string csv = csv_line({"experiment", "region", "class", "u", "t", "u1", "u2", "analytic", "numeric", "rel_error"});
  double worst[2] = {0.0, 0.0};
  for (const JacobianSample& s : samples) {
    const double err = s.check.relative_error();
    const int cls = s.check.vertex_cone ? 0 : 1;
    worst[cls] = std::max(worst[cls], err);
    csv += csv_line({"jacobian", cfg.region_name, cls == 0 ? "N1" : "N2", format_double(s.u_angle), format_double(s.t),
                     format_double(s.u1_angle), format_double(s.u2_angle), format_double(s.check.analytic),
                     format_double(s.check.numeric), format_double(err)});
  }
  if (o.format == "csv") return csv;
  json j = {{"experiment", "jacobian"}, {"region", cfg.region_name}, {"seed", cfg.seed},
            {"per_class", cfg.trials}, {"t", o.t}, {"tolerance", 1e-4},
            {"worst_N1", worst[0]}, {"worst_N2", worst[1]},
            {"pass", worst[0] <= 1e-4 && worst[1] <= 1e-4}};
  return j.dump(2) + "\n";
}

int cmd_experiment(const std::string& kind_name, const CommonOptions& cli, const CLI::App& sub) {
  CommonOptions o = cli;
  std::optional<double> r_flag;
  if (sub.count("--r")) r_flag = o.r;
  if (!o.config_path.empty()) {
    const ConfigFile c = parse_config_json(read_text(o.config_path));
    auto take = [&](const char* flag, auto& dst, const auto& src) {
      if (src && !sub.count(flag)) dst = *src;
    };
    take("--region", o.region_path, c.region);
    take("--n-list", o.n_list, c.n_values);
    take("--trials", o.trials, c.trials);
    take("--seed", o.seed, c.seed);
    take("--threads", o.threads, c.threads);
    take("--pairs", o.pairs, c.pairs);
    take("--slope-min-n", o.slope_min_n, c.slope_min_n);
    if (c.r && !r_flag) r_flag = *c.r;
    if (c.kind && *c.kind != kind_name) {
      throw GeometryError(ErrorKind::InvalidArgument, "config kind '" + *c.kind + "' does not match '" + kind_name + "'");
    }
  }
  const ExperimentKind kind = parse_experiment_kind(kind_name);
  const LoadedRegion l = load_region(o.region_path, r_flag);

  ExperimentConfig cfg;
  cfg.region = l.region;
  cfg.region_name = region_name(o.region_path);
  if (!o.n_list.empty()) {
    cfg.n_values = o.n_list;
  } else if (kind == ExperimentKind::Efron) {
    cfg.n_values = {100};
  } else if (kind == ExperimentKind::Pairs) {
    cfg.n_values = {50};
  } else if (kind == ExperimentKind::Smooth) {
    cfg.n_values = {1000, 10000, 100000};
  }
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.r = l.r;
  cfg.kind = kind;
  cfg.threads = o.threads;
  cfg.slope_min_n = o.slope_min_n;
  cfg.pairs = o.pairs;
  cfg.validate();

  std::string out;
  switch (kind) {
    case ExperimentKind::Vertex: out = run_vertex(o, cfg, l); break;
    case ExperimentKind::Efron: out = run_efron(o, cfg, l); break;
    case ExperimentKind::Pairs: out = run_pairs(o, cfg, l); break;
    case ExperimentKind::Smooth: out = run_smooth(o, cfg, l); break;
    case ExperimentKind::Jacobian: out = run_jacobian(o, cfg, l); break;
  }
  write_atomic(o.output, out);
  return 0;
}

// --- other commands -----------------------------------------------------------

int cmd_hull(const CommonOptions& o) {
  if (!(o.r > 0.0) || !std::isfinite(o.r)) throw GeometryError(ErrorKind::InvalidArgument, "--r must be positive");
  std::vector<Point> pts = parse_points_csv(read_text(o.input));
  for (Point& q : pts) q = q * (1.0 / o.r);
  write_atomic(o.output, hull_json(r_hull(pts), o.r));
  return 0;
}

int cmd_check(const CommonOptions& o, const CLI::App& sub) {
  std::optional<double> r_flag;
  if (sub.count("--r")) r_flag = o.r;
  const LoadedRegion l = load_region(o.region_path, r_flag);
  const DiscPolygon& p = require_polygon(l);
  const LemmaReport rep = lemma_suite(p, o.seed);
  const HullOracleReport hull = hull_oracle_check(o.instances, o.seed);
  json checks = json::array();
  for (const LemmaCheck& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"trials", c.trials}, {"failures", c.failures}, {"worst", c.worst},
                      {"informational", c.informational}, {"note", c.note}});
  }
  const bool ok = rep.passed() && hull.mismatches == 0;
  json j = {{"region", region_name(o.region_path)}, {"seed", o.seed}, {"lemma_checks", checks},
            {"hull_oracle", {{"instances", hull.instances}, {"mismatches", hull.mismatches}}}, {"passed", ok}};
  write_atomic(o.output, j.dump(2) + "\n");
  return ok ? 0 : kExitCheckFailed;
}

int cmd_make_region(const RegionOptions& o) {
  if (!(o.r > 0.0) || !std::isfinite(o.r)) throw GeometryError(ErrorKind::InvalidArgument, "--r must be positive");
  const double s = 1.0 / o.r;
  Region region = DiscPolygon::point({});
  if (o.shape == "reuleaux") {
    region = regular_disc_polygon(3, o.side * s);
  } else if (o.shape == "regular-k") {
    region = regular_disc_polygon(o.k, o.side * s);
  } else if (o.shape == "spindle") {
    region = regular_disc_polygon(2, o.side * s);
  } else if (o.shape == "circle") {
    region = SmoothDisc::circle(o.rho * s);
  } else if (o.shape == "ellipse") {
    region = SmoothDisc::ellipse(o.a * s, o.b * s);
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "unknown shape '" + o.shape + "'");
  }
  write_atomic(o.output, region_json(region, o.r));
  return 0;
}

int exit_code_for(const GeometryError& e) {
  return e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::OutOfRange ? kExitUsage : kExitPrecondition;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random unit-radius hulls in disc-polygons"};
  app.require_subcommand(1, 1);

  CommonOptions o;
  RegionOptions ro;
  std::string experiment_kind;

  auto* hull = app.add_subcommand("hull", "Unit-radius hull of a point set (CSV) as JSON");
  hull->add_option("--input", o.input, "Points CSV, '-' for stdin")->capture_default_str();
  hull->add_option("--output", o.output, "Output path, '-' for stdout")->capture_default_str();
  hull->add_option("--r", o.r, "Generating radius")->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "Monte Carlo experiment");
  exp->add_option("kind", experiment_kind, "vertex | efron | pairs | smooth | jacobian")
      ->required()
      ->check(CLI::IsMember({"vertex", "efron", "pairs", "smooth", "jacobian"}));
  exp->add_option("--region", o.region_path, "Region JSON");
  exp->add_option("--output", o.output, "Output path, '-' for stdout")->capture_default_str();
  exp->add_option("--config", o.config_path, "Config JSON; explicit flags take precedence");
  exp->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  exp->add_option("--trials", o.trials, "Trials per n (per normal class for jacobian)")->capture_default_str();
  exp->add_option("--n-list", o.n_list, "Comma-separated sample sizes")->delimiter(',');
  exp->add_option("--r", o.r, "Generating radius (overrides the region file)");
  exp->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  exp->add_option("--threads", o.threads, "Worker threads; never changes results")->capture_default_str();
  exp->add_option("--pairs", o.pairs, "Pairs for the pair-integral estimator")->capture_default_str();
  exp->add_option("--slope-min-n", o.slope_min_n, "Smallest n used in slope fits")->capture_default_str();
  exp->add_option("--t", o.t, "Cap height for the jacobian experiment")->capture_default_str();

  auto* check = app.add_subcommand("check", "Lemma suite and hull-vs-oracle checks; exit 1 on failure");
  check->add_option("--region", o.region_path, "Region JSON")->required();
  check->add_option("--output", o.output, "Report path, '-' for stdout")->capture_default_str();
  check->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  check->add_option("--r", o.r, "Generating radius (overrides the region file)");
  check->add_option("--instances", o.instances, "Hull oracle instances")->capture_default_str();

  auto* make = app.add_subcommand("make-region", "Write a region JSON");
  make->add_option("shape", ro.shape, "reuleaux | regular-k | spindle | circle | ellipse")
      ->required()
      ->check(CLI::IsMember({"reuleaux", "regular-k", "spindle", "circle", "ellipse"}));
  make->add_option("--side", ro.side, "Side length (chord of the spindle)")->capture_default_str();
  make->add_option("--k", ro.k, "Vertex count for regular-k")->capture_default_str();
  make->add_option("--rho", ro.rho, "Circle radius")->capture_default_str();
  make->add_option("--a", ro.a, "Ellipse semi-axis along x")->capture_default_str();
  make->add_option("--b", ro.b, "Ellipse semi-axis along y")->capture_default_str();
  make->add_option("--r", ro.r, "Generating radius")->capture_default_str();
  make->add_option("--output", ro.output, "Output path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*hull) return cmd_hull(o);
    if (*exp) return cmd_experiment(experiment_kind, o, *exp);
    if (*check) return cmd_check(o, *check);
    if (*make) return cmd_make_region(ro);
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

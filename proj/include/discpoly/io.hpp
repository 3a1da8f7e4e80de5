#pragma once

// File formats. Everything on disk is in the caller's units (generating
// radius r); loaders divide by r so the kernel always sees r = 1, writers
// multiply back.
//
//   disc-polygon  {"r": 1, "vertices": [[x, y], ...]}         arc centers recomputed on load
//   smooth disc   {"r": 1, "kind": "circle", "rho": 0.5}
//                 {"r": 1, "kind": "ellipse", "a": 0.7, "b": 0.5}
//   hull          disc-polygon JSON plus "vertex_indices" and "f0"
//   points        CSV, one "x,y" per line, '#' starts a comment
//   config        JSON object, keys as in ExperimentConfig (see README)

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "discpoly/experiments.hpp"
#include "discpoly/hull.hpp"
#include "discpoly/sampling.hpp"

namespace discpoly {

/// Whole file, or stdin for "-".
std::string read_text(const std::string& path);

/// Writes via a temporary file in the same directory and renames it into
/// place. Path "-" writes to stdout.
void write_atomic(const std::string& path, std::string_view content);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

struct LoadedRegion {
  Region region;
  double r = 1.0;
};

/// Parses either region form; the result is scaled to r = 1.
LoadedRegion parse_region_json(std::string_view text);
DiscPolygon parse_polygon_json(std::string_view text, double* r_out = nullptr);

std::string polygon_json(const DiscPolygon& p, double r = 1.0);
std::string smooth_json(const SmoothDisc& k, double r = 1.0);
std::string region_json(const Region& region, double r = 1.0);
std::string hull_json(const HullResult& h, double r = 1.0);

std::vector<Point> parse_points_csv(std::istream& in);
std::vector<Point> parse_points_csv(std::string_view text);

inline constexpr std::string_view kResultsHeader =
    "experiment,region,n,trials,mean_f0,se_f0,mean_missed_area,se_area";

/// Header line plus one line per row, in the order given.
std::string results_csv(const std::vector<ExperimentResult>& results);

/// Optional fields of a config file; unset fields keep their defaults.
struct ConfigFile {
  std::optional<std::string> region;  // path of a region JSON file
  std::optional<std::vector<std::size_t>> n_values;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> r;
  std::optional<std::string> kind;
  std::optional<unsigned> threads;
  std::optional<std::size_t> slope_min_n;
  std::optional<std::size_t> pairs;
};

ConfigFile parse_config_json(std::string_view text);

}  // namespace discpoly

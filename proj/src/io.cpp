#include "discpoly/io.hpp"

#include <unistd.h>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "json.hpp"

namespace discpoly {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad_input(const std::string& what) { throw GeometryError(ErrorKind::InvalidArgument, what); }

double positive_r(const json& j) {
  const double r = j.value("r", 1.0);
  if (!(r > 0.0) || !std::isfinite(r)) bad_input("\"r\" must be a positive number");
  return r;
}

json point_json(Point p, double r) { return json::array({p.x * r, p.y * r}); }

json points_json(std::span<const Point> pts, double r) {
  json a = json::array();
  for (const Point p : pts) a.push_back(point_json(p, r));
  return a;
}

json polygon_object(const DiscPolygon& p, double r) {
  json j;
  j["r"] = r;
  j["vertices"] = points_json(p.vertices(), r);
  j["arc_centers"] = points_json(p.arc_centers(), r);
  j["f0"] = p.f0();
  return j;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    bad_input(std::string("malformed JSON: ") + e.what());
  }
}

DiscPolygon polygon_from(const json& j, double r) {
  if (!j.contains("vertices") || !j["vertices"].is_array()) bad_input("region JSON needs a \"vertices\" array");
  std::vector<Point> v;
  for (const json& p : j["vertices"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      bad_input("every vertex must be an [x, y] pair");
    }
    v.push_back(Point{p[0].get<double>(), p[1].get<double>()} * (1.0 / r));
  }
  if (v.size() == 1) return DiscPolygon::point(v[0]);
  return DiscPolygon::from_vertices(std::move(v));
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) bad_input(std::string("missing numeric field \"") + key + "\"");
  return j[key].get<double>();
}

}  // namespace

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_input("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_atomic(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) bad_input("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      bad_input("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    bad_input("cannot rename into '" + path + "'");
  }
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

LoadedRegion parse_region_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) bad_input("region JSON must be an object");
  const double r = positive_r(j);
  const std::string kind = j.value("kind", std::string("disc-polygon"));
  if (kind == "disc-polygon") return {polygon_from(j, r), r};
  if (kind == "circle") return {SmoothDisc::circle(number_field(j, "rho") / r), r};
  if (kind == "ellipse") return {SmoothDisc::ellipse(number_field(j, "a") / r, number_field(j, "b") / r), r};
  bad_input("unknown region kind '" + kind + "'");
}

DiscPolygon parse_polygon_json(std::string_view text, double* r_out) {
  LoadedRegion l = parse_region_json(text);
  if (!std::holds_alternative<DiscPolygon>(l.region)) bad_input("expected a disc-polygon region");
  if (r_out) *r_out = l.r;
  return std::get<DiscPolygon>(std::move(l.region));
}

std::string polygon_json(const DiscPolygon& p, double r) { return polygon_object(p, r).dump(2) + "\n"; }

std::string smooth_json(const SmoothDisc& k, double r) {
  json j;
  j["r"] = r;
  if (k.kind() == SmoothDisc::Kind::Circle) {
    j["kind"] = "circle";
    j["rho"] = k.a() * r;
  } else {
    j["kind"] = "ellipse";
    j["a"] = k.a() * r;
    j["b"] = k.b() * r;
  }
  return j.dump(2) + "\n";
}

std::string region_json(const Region& region, double r) {
  return std::visit([r](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, DiscPolygon>) return polygon_json(x, r);
    else return smooth_json(x, r);
  }, region);
}

std::string hull_json(const HullResult& h, double r) {
  json j = polygon_object(h.hull, r);
  j["vertex_indices"] = h.vertex_indices;
  j["f0"] = h.f0;
  return j.dump(2) + "\n";
}

std::vector<Point> parse_points_csv(std::istream& in) {
  std::vector<Point> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto comma = line.find(',');
    auto parse = [&](std::string s) {
      std::istringstream ss(s);
      double v;
      std::string rest;
      if (!(ss >> v) || (ss >> rest)) bad_input("points line " + std::to_string(lineno) + ": expected \"x,y\"");
      return v;
    };
    if (comma == std::string::npos) bad_input("points line " + std::to_string(lineno) + ": expected \"x,y\"");
    pts.push_back({parse(line.substr(0, comma)), parse(line.substr(comma + 1))});
  }
  return pts;
}

std::vector<Point> parse_points_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_points_csv(in);
}

std::string results_csv(const std::vector<ExperimentResult>& results) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const ExperimentResult& res : results) {
    for (const ExperimentRow& row : res.rows) {
      out += res.experiment + ',' + res.region + ',' + std::to_string(row.n) + ',' + std::to_string(row.trials) + ',' +
             format_double(row.mean_f0) + ',' + format_double(row.se_f0) + ',' + format_double(row.mean_missed_area) +
             ',' + format_double(row.se_area) + '\n';
    }
  }
  return out;
}

ConfigFile parse_config_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) bad_input("config must be a JSON object");
  static const char* const kKeys[] = {"region", "n_values", "trials", "seed", "r",
                                      "kind",   "threads",  "slope_min_n", "pairs"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) bad_input("unknown config key '" + key + "'");
  }
  ConfigFile c;
  try {
    if (j.contains("region")) c.region = j["region"].get<std::string>();
    if (j.contains("n_values")) c.n_values = j["n_values"].get<std::vector<std::size_t>>();
    if (j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("r")) c.r = j["r"].get<double>();
    if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    if (j.contains("slope_min_n")) c.slope_min_n = j["slope_min_n"].get<std::size_t>();
    if (j.contains("pairs")) c.pairs = j["pairs"].get<std::size_t>();
  } catch (const json::exception& e) {
    bad_input(std::string("config: ") + e.what());
  }
  return c;
}

}  // namespace discpoly

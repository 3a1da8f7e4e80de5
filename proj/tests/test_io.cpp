#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "discpoly/io.hpp"
#include "doctest.h"

using namespace discpoly;

TEST_CASE("format_double round-trips") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 20) - 10);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("polygon json round-trips with radius scaling") {
  const DiscPolygon p = regular_disc_polygon(5, 0.8);
  const std::string text = polygon_json(p, 2.5);
  double r = 0.0;
  const DiscPolygon q = parse_polygon_json(text, &r);
  CHECK(r == 2.5);
  REQUIRE(q.size() == p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(dist(q.vertex(i), p.vertex(i)) < 1e-15);
    CHECK(dist(q.center(i), p.center(i)) < 1e-12);
  }
  // the file holds caller units
  CHECK(text.find("\"r\"") != std::string::npos);
  const LoadedRegion lr = parse_region_json(text);
  CHECK(lr.r == 2.5);
  CHECK(std::get<DiscPolygon>(lr.region).size() == 5);
}

TEST_CASE("smooth region json") {
  const LoadedRegion c = parse_region_json(R"({"r": 2, "kind": "circle", "rho": 1})");
  const SmoothDisc& k = std::get<SmoothDisc>(c.region);
  CHECK(k.a() == doctest::Approx(0.5));
  const LoadedRegion e = parse_region_json(smooth_json(SmoothDisc::ellipse(0.6, 0.4), 3.0));
  CHECK(e.r == 3.0);
  CHECK(std::get<SmoothDisc>(e.region).b() == doctest::Approx(0.4));
  CHECK(region_json(Region{SmoothDisc::circle(0.3)}).find("circle") != std::string::npos);
}

TEST_CASE("malformed region json is rejected") {
  for (const char* bad : {"", "[]", "{\"vertices\": 3}", "{\"kind\": \"square\"}", "{\"r\": -1, \"vertices\": [[0,0]]}",
                          "{\"vertices\": [[0,0],[5,0]]}", "{\"kind\": \"circle\"}"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_region_json(bad), GeometryError);
  }
}

TEST_CASE("hull json carries indices and f0") {
  const std::vector<Point> pts{{0, 0}, {0.5, 0}, {0.25, 0.3}, {0.25, 0.1}};
  const HullResult h = r_hull(pts);
  const std::string text = hull_json(h);
  CHECK(text.find("\"vertex_indices\"") != std::string::npos);
  CHECK(text.find("\"f0\": 3") != std::string::npos);
  CHECK(parse_polygon_json(text).size() == 3);
}

TEST_CASE("points csv: comments, blanks, whitespace, errors") {
  const auto pts = parse_points_csv("# header\n0.1,0.2\n\n  -0.3 , 0.4  \n# tail\n");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].x == -0.3);
  CHECK(pts[1].y == 0.4);
  std::istringstream in("1,2\n3,4\n");
  CHECK(parse_points_csv(in).size() == 2);
  CHECK_THROWS_AS(parse_points_csv("1,2,3\n"), GeometryError);
  CHECK_THROWS_AS(parse_points_csv("a,b\n"), GeometryError);
  CHECK_THROWS_AS(parse_points_csv("1\n"), GeometryError);
}

TEST_CASE("results csv layout") {
  ExperimentResult r;
  r.experiment = "vertex";
  r.region = "reuleaux";
  r.rows.push_back({100, 10, 7.5, 0.25, 0.125, 0.01});
  const std::string csv = results_csv({r});
  CHECK(csv == std::string(kResultsHeader) + "\nvertex,reuleaux,100,10,7.5,0.25,0.125,0.01\n");
}

TEST_CASE("config json") {
  const ConfigFile c = parse_config_json(R"({"n_values": [10, 20], "trials": 5, "seed": 7, "threads": 2})");
  CHECK(*c.n_values == std::vector<std::size_t>{10, 20});
  CHECK(*c.trials == 5);
  CHECK(*c.seed == 7);
  CHECK(*c.threads == 2);
  CHECK(!c.region.has_value());
  CHECK_THROWS_AS(parse_config_json(R"({"trails": 5})"), GeometryError);
  CHECK_THROWS_AS(parse_config_json(R"({"trials": "many"})"), GeometryError);
  CHECK_THROWS_AS(parse_config_json("[1]"), GeometryError);
}

TEST_CASE("atomic write replaces the file and leaves no temporaries") {
  const auto dir = std::filesystem::temp_directory_path() / "discpoly_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.txt").string();
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  CHECK(read_text(path) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  CHECK_THROWS_AS(read_text((dir / "missing.json").string()), GeometryError);
  CHECK_THROWS(write_atomic((dir / "no_such_dir" / "x").string(), "x"));
  std::filesystem::remove_all(dir);
}

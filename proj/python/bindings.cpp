#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <variant>
#include <vector>

#include "discpoly/experiments.hpp"
#include "discpoly/hull.hpp"
#include "discpoly/io.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace discpoly;

namespace {

using Xy = std::array<double, 2>;

std::vector<Point> to_points(const std::vector<Xy>& xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (const Xy& p : xs) out.push_back({p[0], p[1]});
  return out;
}

std::vector<Xy> to_xy(std::span<const Point> ps) {
  std::vector<Xy> out;
  out.reserve(ps.size());
  for (const Point p : ps) out.push_back({p.x, p.y});
  return out;
}

py::dict experiment_dict(const ExperimentResult& r) {
  py::list rows;
  for (const ExperimentRow& row : r.rows) {
    rows.append(py::dict("n"_a = row.n, "trials"_a = row.trials, "mean_f0"_a = row.mean_f0, "se_f0"_a = row.se_f0,
                         "mean_missed_area"_a = row.mean_missed_area, "se_area"_a = row.se_area));
  }
  return py::dict("experiment"_a = r.experiment, "region"_a = r.region, "rows"_a = rows, "slope_f0"_a = r.slope_f0,
                  "slope_f0_se"_a = r.slope_f0_se, "slope_area"_a = r.slope_area,
                  "slope_area_se"_a = r.slope_area_se);
}

}  // namespace

PYBIND11_MODULE(_discpoly, m) {
  m.doc() = "Random unit-radius hulls in disc-polygons";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);

  py::class_<DiscPolygon>(m, "DiscPolygon")
      .def_static("from_vertices", [](const std::vector<Xy>& v) { return DiscPolygon::from_vertices(to_points(v)); },
                  "ccw_vertices"_a)
      .def_property_readonly("vertices", [](const DiscPolygon& p) { return to_xy(p.vertices()); })
      .def_property_readonly("arc_centers", [](const DiscPolygon& p) { return to_xy(p.arc_centers()); })
      .def_property_readonly("f0", &DiscPolygon::f0)
      .def_property_readonly("area", [](const DiscPolygon& p) { return area(p); })
      .def("contains", [](const DiscPolygon& p, Xy q, double eps) { return contains(p, {q[0], q[1]}, eps); }, "q"_a,
           "eps"_a = kTestEps)
      .def("to_json", [](const DiscPolygon& p, double r) { return polygon_json(p, r); }, "r"_a = 1.0)
      .def("__len__", &DiscPolygon::size)
      .def("__repr__", [](const DiscPolygon& p) { return "<DiscPolygon f0=" + std::to_string(p.f0()) + ">"; });

  py::class_<SmoothDisc>(m, "SmoothDisc")
      .def_static("circle", &SmoothDisc::circle, "radius"_a)
      .def_static("ellipse", &SmoothDisc::ellipse, "a"_a, "b"_a)
      .def_property_readonly("area", &SmoothDisc::area)
      .def("curvature", &SmoothDisc::curvature, "theta"_a);

  m.def("regular_disc_polygon", &regular_disc_polygon, "k"_a, "side"_a);
  m.def("spindle", [](Xy a, Xy b) { return spindle({a[0], a[1]}, {b[0], b[1]}); }, "x"_a, "y"_a);
  m.def("parse_region_json", [](const std::string& text) {
    LoadedRegion lr = parse_region_json(text);
    py::object region = std::visit([](const auto& r) { return py::cast(r); }, lr.region);
    return py::make_tuple(region, lr.r);
  });

  py::class_<HullResult>(m, "HullResult")
      .def_readonly("hull", &HullResult::hull)
      .def_readonly("vertex_indices", &HullResult::vertex_indices)
      .def_readonly("f0", &HullResult::f0)
      .def("to_json", [](const HullResult& h, double r) { return hull_json(h, r); }, "r"_a = 1.0);

  m.def("r_hull", [](const std::vector<Xy>& pts) { return r_hull(to_points(pts)); }, "points"_a);
  m.def("oracle_vertex_set", [](const std::vector<Xy>& pts) { return oracle_vertex_set(to_points(pts)); }, "points"_a);
  m.def("missed_area", &missed_area, "p"_a, "hull"_a);

  // pybind11 cannot load a variant of non-default-constructible types, so
  // each region type gets its own overload.
  auto sample = [](const Region& region, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    RngStream rng(seed, stream);
    return to_xy(sample_uniform(region, rng, n));
  };
  m.def("sample_uniform",
        [sample](const DiscPolygon& p, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          return sample(p, n, seed, stream);
        },
        "region"_a, "n"_a, "seed"_a = 0, "stream"_a = 0);
  m.def("sample_uniform",
        [sample](const SmoothDisc& k, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
          return sample(k, n, seed, stream);
        },
        "region"_a, "n"_a, "seed"_a = 0, "stream"_a = 0);

  m.def("run_vertex_experiment",
        [](const DiscPolygon& p, std::vector<std::size_t> n_values, std::size_t trials, std::uint64_t seed,
           unsigned threads) {
          ExperimentConfig cfg;
          cfg.region = p;
          cfg.n_values = std::move(n_values);
          cfg.trials = trials;
          cfg.seed = seed;
          cfg.threads = threads;
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_vertex_experiment(cfg);
          }
          return experiment_dict(r);
        },
        "p"_a, "n_values"_a, "trials"_a = 500, "seed"_a = 0, "threads"_a = 1);

  m.def("efron_check",
        [](const DiscPolygon& p, std::size_t n, std::size_t trials, std::uint64_t seed, unsigned threads) {
          EfronResult e;
          {
            py::gil_scoped_release release;
            e = efron_check(p, n, trials, seed, threads);
          }
          return py::dict("lhs"_a = e.lhs, "rhs"_a = e.rhs, "se_lhs"_a = e.se_lhs, "se_rhs"_a = e.se_rhs,
                          "combined_se"_a = e.combined_se());
        },
        "p"_a, "n"_a, "trials"_a, "seed"_a = 0, "threads"_a = 1);

  m.def("pair_integral_estimator",
        [](const DiscPolygon& p, std::size_t n, std::size_t pairs, std::uint64_t seed, unsigned threads) {
          PairEstimate e;
          {
            py::gil_scoped_release release;
            e = pair_integral_estimator(p, n, pairs, seed, threads);
          }
          return py::make_tuple(e.estimate, e.se);
        },
        "p"_a, "n"_a, "pairs"_a, "seed"_a = 0, "threads"_a = 1);

  m.def("c_of_K", &c_of_K, "k"_a, "r"_a = 1.0, "tol"_a = 1e-8);
  m.def("smooth_limits", [](const SmoothDisc& k) {
    const SmoothLimits l = smooth_limits(k);
    return py::dict("c"_a = l.c, "vertex_limit"_a = l.vertex_limit, "area_limit"_a = l.area_limit);
  });

  m.def("lemma_suite",
        [](const DiscPolygon& p, std::uint64_t seed, std::size_t caps, std::size_t pairs) {
          LemmaSuiteOptions opt;
          opt.caps = caps;
          opt.pairs = pairs;
          LemmaReport rep;
          {
            py::gil_scoped_release release;
            rep = lemma_suite(p, seed, opt);
          }
          py::dict out;
          for (const LemmaCheck& c : rep.checks) {
            out[py::str(c.name)] = py::dict("trials"_a = c.trials, "failures"_a = c.failures, "worst"_a = c.worst,
                                            "informational"_a = c.informational, "note"_a = c.note);
          }
          return out;
        },
        "p"_a, "seed"_a = 0, "caps"_a = 10'000, "pairs"_a = 10'000);
}

#pragma once

#include <limits>
#include <sstream>

#include "conic_argyris/io.hpp"
#include "conic_argyris/norms.hpp"
#include "conic_argyris/test_functions.hpp"

namespace conic_argyris {

struct StudyConfig {
  Domain domain;
  std::vector<int> levels;      // boundary vertex counts, strictly increasing
  std::string fn_id = "circle_sin";
  double order_margin = 0.5;    // pass threshold: expected order minus margin
  double lens_tol = tolerance::lens;
  int threads = 1;
};

struct StudyLevel {
  int n_boundary = 0;
  int n_triangles = 0;
  double h = 0.0;               // max triangle diameter
  double shape_regularity = 0.0;
  std::array<double, 3> error{};   // broken L2, H1, H2 norms of u - I u
  std::array<double, 3> order{};   // observed orders vs previous level (NaN first)
};

struct StudyResult {
  std::string fn_id;
  std::array<double, 3> expected_order{6.0, 5.0, 4.0};
  double order_margin = 0.5;
  std::vector<StudyLevel> levels;
  bool pass = false;
};

/// Interpolates the chosen test function on independently generated meshes
/// at each resolution and reports broken-norm errors and observed orders
/// log(e(h1)/e(h2)) / log(h1/h2). The pass flag checks the finest pair
/// against the expected orders 6 - k minus the margin.
inline StudyResult run_convergence_study(const StudyConfig& cfg) {
  require(cfg.levels.size() >= 2, "convergence study needs at least 2 levels");
  for (std::size_t i = 1; i < cfg.levels.size(); ++i)
    require(cfg.levels[i] > cfg.levels[i - 1],
            "convergence study levels must be strictly increasing");
  const TestFunction fn = make_test_function(cfg.fn_id, cfg.domain);
  require(fn.vanishes_on_boundary,
          "test function does not vanish on the boundary");
  const auto probes = interior_probe_points(cfg.domain, 100);
  require(self_check(fn, probes), "test function failed its derivative self-check");

  StudyResult res;
  res.fn_id = cfg.fn_id;
  res.order_margin = cfg.order_margin;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t li = 0; li < cfg.levels.size(); ++li) {
    const int n = cfg.levels[li];
    Mesh mesh = generate_disk_mesh(cfg.domain, n);
    const ValidationReport rep = validate(mesh);
    if (!rep.all_pass())
      throw std::runtime_error("generated mesh failed validation:\n" +
                               rep.summary());
    const Spline s = interpolate(mesh, fn.data, cfg.threads);
    StudyLevel lvl;
    lvl.n_boundary = n;
    lvl.n_triangles = static_cast<int>(mesh.triangles.size());
    lvl.h = *std::max_element(mesh.diameters.begin(), mesh.diameters.end());
    lvl.shape_regularity = shape_regularity(mesh);
    for (int k = 0; k <= 2; ++k)
      lvl.error[static_cast<std::size_t>(k)] =
          error_norm(mesh, s, fn.data, k, cfg.threads, cfg.lens_tol);
    if (li == 0) {
      lvl.order = {nan, nan, nan};
    } else {
      const StudyLevel& prev = res.levels.back();
      for (int k = 0; k <= 2; ++k) {
        const double e1 = prev.error[static_cast<std::size_t>(k)];
        const double e2 = lvl.error[static_cast<std::size_t>(k)];
        lvl.order[static_cast<std::size_t>(k)] =
            std::log(e1 / e2) / std::log(prev.h / lvl.h);
      }
    }
    res.levels.push_back(lvl);
  }
  res.pass = true;
  const StudyLevel& finest = res.levels.back();
  for (int k = 0; k <= 2; ++k) {
    const double want = res.expected_order[static_cast<std::size_t>(k)] -
                        cfg.order_margin;
    if (!(finest.order[static_cast<std::size_t>(k)] >= want)) res.pass = false;
  }
  return res;
}

/// CSV emission: one row per level with the observed orders between
/// consecutive levels (blank on the first row). Deterministic bytes.
inline std::string study_csv(const StudyResult& r) {
  std::ostringstream os;
  os << "level,n_boundary,h,e_L2,e_H1,e_H2,order_L2,order_H1,order_H2\n";
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const StudyLevel& l = r.levels[i];
    os << (i + 1) << ',' << l.n_boundary << ',' << format_double(l.h);
    for (double e : l.error) os << ',' << format_double(e);
    for (double o : l.order) {
      os << ',';
      if (i > 0) os << format_double(o);
    }
    os << '\n';
  }
  return os.str();
}

inline json study_to_json(const StudyResult& r) {
  json j;
  j["fn"] = r.fn_id;
  j["expected_order"] = r.expected_order;
  j["order_margin"] = r.order_margin;
  j["pass"] = r.pass;
  j["levels"] = json::array();
  for (std::size_t i = 0; i < r.levels.size(); ++i) {
    const StudyLevel& l = r.levels[i];
    json e;
    e["level"] = i + 1;
    e["n_boundary"] = l.n_boundary;
    e["n_triangles"] = l.n_triangles;
    e["h"] = l.h;
    e["shape_regularity"] = l.shape_regularity;
    e["e_L2"] = l.error[0];
    e["e_H1"] = l.error[1];
    e["e_H2"] = l.error[2];
    if (i > 0) {
      e["order_L2"] = l.order[0];
      e["order_H1"] = l.order[1];
      e["order_H2"] = l.order[2];
    } else {
      e["order_L2"] = nullptr;
      e["order_H1"] = nullptr;
      e["order_H2"] = nullptr;
    }
    j["levels"].push_back(e);
  }
  return j;
}

}  // namespace conic_argyris

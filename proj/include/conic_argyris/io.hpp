#pragma once

#include <charconv>
#include <fstream>

#include <json.hpp>

#include "conic_argyris/interpolator.hpp"

namespace conic_argyris {

using json = nlohmann::json;

namespace detail {

inline json vec_json(Vec2 p) { return json::array({p.x, p.y}); }

inline Vec2 vec_from(const json& j) {
  require(j.is_array() && j.size() == 2, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// --- Domain files -----------------------------------------------------------
//
// {
//   "conics": [ {"coeffs": [a, b, c, d, e, f]} ],
//   "arcs":   [ {"conic": 0, "start": [x, y], "end": [x, y],
//                "ccw": true, "witness": [x, y]} ]
// }
//
// Coefficients define q(x,y) = a x^2 + b xy + c y^2 + d x + e y + f; the
// loader rescales each conic so its gradient/Hessian bound is 1 and q > 0 at
// the arc witnesses. Coordinates are 64-bit floats.

inline json domain_to_json(const Domain& d) {
  json j;
  j["conics"] = json::array();
  for (const Conic& q : d.conics) {
    json c;
    c["coeffs"] = q.coeffs();
    j["conics"].push_back(c);
  }
  j["arcs"] = json::array();
  for (const Arc& a : d.arcs) {
    json e;
    e["conic"] = a.conic;
    e["start"] = detail::vec_json(a.start);
    e["end"] = detail::vec_json(a.end);
    e["ccw"] = a.ccw;
    e["witness"] = detail::vec_json(a.witness);
    j["arcs"].push_back(e);
  }
  return j;
}

inline Domain domain_from_json(const json& j) {
  Domain d;
  require(j.contains("conics") && j.contains("arcs"), "domain: missing fields");
  for (const auto& c : j.at("conics")) {
    const auto& a = c.at("coeffs");
    require(a.is_array() && a.size() == 6, "domain: conic needs 6 coefficients");
    std::array<double, 6> k{};
    for (std::size_t i = 0; i < 6; ++i) k[i] = a[i].get<double>();
    d.conics.emplace_back(k);
  }
  for (const auto& e : j.at("arcs")) {
    Arc a;
    a.conic = e.at("conic").get<int>();
    a.start = detail::vec_from(e.at("start"));
    a.end = detail::vec_from(e.at("end"));
    a.ccw = e.value("ccw", true);
    a.witness = detail::vec_from(e.at("witness"));
    d.arcs.push_back(a);
  }
  // Normalize each conic against dense samples of its own arcs; for a
  // quadratic the gradient max over a region is attained on the hull
  // boundary, so arc samples bound it.
  for (std::size_t c = 0; c < d.conics.size(); ++c) {
    std::vector<Vec2> samples;
    Vec2 witness{};
    bool used = false;
    for (const Arc& a : d.arcs) {
      if (a.conic != static_cast<int>(c)) continue;
      const auto pts = sample_arc(d.conics[c], a, 512);
      samples.insert(samples.end(), pts.begin(), pts.end());
      witness = a.witness;
      used = true;
    }
    if (used) d.conics[c] = normalize_conic(d.conics[c], samples, witness);
  }
  validate_domain(d);
  return d;
}

/// Packaged domains: the unit circle (q = 1 - x^2 - y^2) and the ellipse
/// x^2/4 + y^2 = 1, each as one closed counter-clockwise arc.
inline Domain builtin_domain(const std::string& name) {
  json j;
  if (name == "circle") {
    j = {{"conics", {{{"coeffs", {-1.0, 0.0, -1.0, 0.0, 0.0, 1.0}}}}},
         {"arcs",
          {{{"conic", 0},
            {"start", {1.0, 0.0}},
            {"end", {1.0, 0.0}},
            {"ccw", true},
            {"witness", {0.0, 0.0}}}}}};
  } else if (name == "ellipse") {
    j = {{"conics", {{{"coeffs", {-0.25, 0.0, -1.0, 0.0, 0.0, 1.0}}}}},
         {"arcs",
          {{{"conic", 0},
            {"start", {2.0, 0.0}},
            {"end", {2.0, 0.0}},
            {"ccw", true},
            {"witness", {0.0, 0.0}}}}}};
  } else {
    throw std::invalid_argument("unknown builtin domain: " + name);
  }
  return domain_from_json(j);
}

// --- Mesh files --------------------------------------------------------------
//
// {
//   "domain": { ... as above, normalized ... },
//   "vertices":  [ {"p": [x, y], "boundary": bool} ],
//   "triangles": [ {"v": [i, j, k], "class": "pie", "arc": 0} ]
// }

inline json mesh_to_json(const Mesh& m) {
  json j;
  j["domain"] = domain_to_json(m.domain);
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    json e;
    e["p"] = detail::vec_json(m.vertices[v]);
    e["boundary"] = static_cast<bool>(m.vertex_boundary[v]);
    j["vertices"].push_back(e);
  }
  j["triangles"] = json::array();
  for (const Triangle& t : m.triangles) {
    json e;
    e["v"] = t.v;
    e["class"] = to_string(t.cls);
    e["arc"] = t.arc;
    j["triangles"].push_back(e);
  }
  return j;
}

inline Mesh mesh_from_json(const json& j) {
  Mesh m;
  m.domain = domain_from_json(j.at("domain"));
  std::vector<bool> claimed_boundary;
  for (const auto& e : j.at("vertices")) {
    m.vertices.push_back(detail::vec_from(e.at("p")));
    claimed_boundary.push_back(e.value("boundary", false));
  }
  std::vector<std::string> claimed_class;
  for (const auto& e : j.at("triangles")) {
    Triangle t;
    const auto& v = e.at("v");
    require(v.is_array() && v.size() == 3, "mesh: triangle needs 3 vertex ids");
    for (std::size_t i = 0; i < 3; ++i) t.v[i] = v[i].get<int>();
    t.arc = e.value("arc", -1);
    claimed_class.push_back(e.value("class", std::string{}));
    m.triangles.push_back(t);
  }
  m = classify(std::move(m));
  finalize_mesh(m);
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    if (!claimed_class[t].empty())
      require(claimed_class[t] == to_string(m.triangles[t].cls),
              "mesh: stored class tag disagrees with classification");
  for (std::size_t v = 0; v < m.vertices.size(); ++v)
    require(claimed_boundary[v] == m.vertex_boundary[v],
            "mesh: stored boundary flag disagrees with topology");
  return m;
}

// --- Spline files ------------------------------------------------------------
//
// { "pieces": [ {"degree": d, "coeffs": [ ... dim_p(d) values ... ]} ] }
//
// Coefficients are listed in the graded-lexicographic monomial order
// (1; x, y; x^2, xy, y^2; ...).

inline json spline_to_json(const Spline& s) {
  json j;
  j["pieces"] = json::array();
  for (const Poly2& p : s.pieces) {
    json e;
    e["degree"] = p.degree;
    e["coeffs"] = p.c;
    j["pieces"].push_back(e);
  }
  return j;
}

inline Spline spline_from_json(const json& j) {
  Spline s;
  for (const auto& e : j.at("pieces")) {
    Poly2 p(e.at("degree").get<int>());
    const auto& c = e.at("coeffs");
    require(c.is_array() && c.size() == p.c.size(),
            "spline: coefficient count does not match degree");
    for (std::size_t i = 0; i < p.c.size(); ++i) p.c[i] = c[i].get<double>();
    s.pieces.push_back(std::move(p));
  }
  return s;
}

// --- Files -------------------------------------------------------------------

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& err) {
    throw std::runtime_error(path + ": " + err.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

/// Either a builtin domain name ("circle", "ellipse") or a path to a
/// domain JSON file.
inline Domain load_domain(const std::string& name_or_path) {
  if (name_or_path == "circle" || name_or_path == "ellipse")
    return builtin_domain(name_or_path);
  return domain_from_json(load_json_file(name_or_path));
}

/// Shortest round-trip decimal formatting (used for the CSV interface).
inline std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace conic_argyris

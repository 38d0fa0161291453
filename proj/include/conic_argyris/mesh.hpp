#pragma once

#include <map>
#include <sstream>

#include "conic_argyris/quadrature.hpp"

namespace conic_argyris {

enum class TriClass { ordinary, pie, buffer };

inline const char* to_string(TriClass c) {
  switch (c) {
    case TriClass::ordinary: return "ordinary";
    case TriClass::pie: return "pie";
    case TriClass::buffer: return "buffer";
  }
  return "?";
}

/// Triangle by vertex ids. After classification the ordering carries the
/// local roles: a pie triangle has its interior vertex first and the curved
/// edge joining v[1], v[2]; a buffer triangle has its boundary vertex first.
struct Triangle {
  std::array<int, 3> v{-1, -1, -1};
  TriClass cls = TriClass::ordinary;
  int arc = -1;  // domain arc carrying the curved edge; -1 if straight
};

struct Edge {
  int a = -1, b = -1;  // vertex ids, a < b
  std::array<int, 2> tris{-1, -1};
  int count = 0;
  bool boundary() const { return count == 1; }
};

struct InscribedDisk {
  Vec2 center;
  double radius = 0.0;
};

/// Fixed global normal of an edge: direction from the lexicographically
/// smaller endpoint to the larger one, rotated by +90 degrees. Shared by
/// both triangles at the edge.
inline Vec2 edge_perp(Vec2 a, Vec2 b) {
  if (lex_less(b, a)) std::swap(a, b);
  return rot90(normalized(b - a));
}

/// The three interpolation sites of an edge at parameters 1/4, 1/2, 3/4,
/// walking from v1 to v2.
inline std::array<Vec2, 3> edge_points(Vec2 v1, Vec2 v2) {
  return {v1 + 0.25 * (v2 - v1), v1 + 0.5 * (v2 - v1), v1 + 0.75 * (v2 - v1)};
}

struct Mesh {
  Domain domain;
  std::vector<Vec2> vertices;
  std::vector<Triangle> triangles;

  // Derived topology and geometry, filled by finalize_mesh().
  std::vector<bool> vertex_boundary;
  std::vector<Edge> edges;
  std::vector<InscribedDisk> disks;
  std::vector<double> diameters;  // h_T; includes arc samples on pies

  Vec2 point(int i) const { return vertices[static_cast<std::size_t>(i)]; }
  const Triangle& tri(int t) const { return triangles[static_cast<std::size_t>(t)]; }

  std::array<Vec2, 3> tri_points(int t) const {
    const auto& T = tri(t);
    return {point(T.v[0]), point(T.v[1]), point(T.v[2])};
  }

  /// Vertices of t reordered to positive (counter-clockwise) orientation.
  std::array<Vec2, 3> tri_points_ccw(int t) const {
    auto p = tri_points(t);
    if (cross(p[1] - p[0], p[2] - p[0]) < 0.0) std::swap(p[1], p[2]);
    return p;
  }

  const Conic& conic_of_tri(int t) const {
    const auto& T = tri(t);
    require(T.arc >= 0, "conic_of_tri: triangle has no curved edge");
    return domain.conic_of(domain.arcs[static_cast<std::size_t>(T.arc)]);
  }

  int edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = edge_lookup_.find({a, b});
    return it == edge_lookup_.end() ? -1 : it->second;
  }

  /// The triangle across the given edge from t, or -1 on a boundary edge.
  int neighbor_across(int t, int a, int b) const {
    const int e = edge_index(a, b);
    require(e >= 0, "neighbor_across: not an edge");
    const Edge& E = edges[static_cast<std::size_t>(e)];
    if (E.tris[0] == t) return E.tris[1];
    if (E.tris[1] == t) return E.tris[0];
    throw std::invalid_argument("neighbor_across: edge not incident to t");
  }

  double straight_diameter(int t) const {
    const auto p = tri_points(t);
    return std::max({dist(p[0], p[1]), dist(p[1], p[2]), dist(p[0], p[2])});
  }

  std::map<std::pair<int, int>, int> edge_lookup_;
};

namespace detail {

/// Projects z onto the conic along its gradient (a few Newton steps);
/// converges fast when z is already near the curve.
inline Vec2 foot_on_conic(const Conic& q, Vec2 z) {
  for (int it = 0; it < 8; ++it) {
    const Vec2 g = q.gradient(z);
    const double gg = dot(g, g);
    if (gg == 0.0) break;
    z = z - (q(z) / gg) * g;
  }
  return z;
}

}  // namespace detail

/// 'count' points along the curved edge of pie triangle t, from v[1] to
/// v[2] inclusive. Sampled independently of the interior vertex: by central
/// angle for ovals, by chord-foot projection otherwise (shallow arcs).
inline std::vector<Vec2> curved_edge_points(const Mesh& m, int t, int count) {
  const auto& T = m.tri(t);
  require(T.arc >= 0, "curved_edge_points: straight triangle");
  require(count >= 2, "curved_edge_points: need at least 2 points");
  const Conic& q = m.conic_of_tri(t);
  const Vec2 a = m.point(T.v[1]), b = m.point(T.v[2]);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(count));
  if (q.is_oval()) {
    const Vec2 c = q.center();
    double ta = std::atan2(a.y - c.y, a.x - c.x);
    double tb = std::atan2(b.y - c.y, b.x - c.x);
    const double pi = std::acos(-1.0);
    double d = tb - ta;
    while (d > pi) d -= 2.0 * pi;
    while (d < -pi) d += 2.0 * pi;  // shorter branch
    for (int i = 0; i < count; ++i) {
      const double theta = ta + d * i / (count - 1);
      pts.push_back(detail::oval_point(q, c, theta));
    }
  } else {
    for (int i = 0; i < count; ++i) {
      const Vec2 chord = a + (static_cast<double>(i) / (count - 1)) * (b - a);
      pts.push_back(detail::foot_on_conic(q, chord));
    }
  }
  pts.front() = a;
  pts.back() = b;
  return pts;
}

/// Classical incircle of a straight triangle.
inline InscribedDisk incircle(Vec2 p0, Vec2 p1, Vec2 p2) {
  const double l0 = dist(p1, p2), l1 = dist(p0, p2), l2 = dist(p0, p1);
  const double s = l0 + l1 + l2;
  require(s > 0.0, "incircle: degenerate triangle");
  const Vec2 c = (l0 * p0 + l1 * p1 + l2 * p2) / s;
  const double r = std::abs(cross(p1 - p0, p2 - p0)) / s;
  return {c, r};
}

namespace detail {

/// Distance from z to the curved edge of pie triangle t. Coarse scan over
/// cached arc samples, then golden-section refinement on the ray-from-v0
/// parameterization of the arc.
class ArcDistance {
 public:
  ArcDistance(const Mesh& m, int t)
      : q_(m.conic_of_tri(t)),
        v0_(m.point(m.tri(t).v[0])),
        a_(m.point(m.tri(t).v[1])),
        b_(m.point(m.tri(t).v[2])),
        samples_(curved_edge_points(m, t, 33)) {}

  double operator()(Vec2 z) const {
    std::size_t best = 0;
    double best_d = dist(z, samples_[0]);
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      const double d = dist(z, samples_[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    const double step = 1.0 / (static_cast<double>(samples_.size()) - 1.0);
    double lo = (best == 0 ? 0.0 : (best - 1) * step);
    double hi = (best + 1 >= samples_.size() ? 1.0 : (best + 1) * step);
    // Golden-section on t -> |z - arc(t)|.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = dist(z, arc_at(x1)), f2 = dist(z, arc_at(x2));
    for (int it = 0; it < 40; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = dist(z, arc_at(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = dist(z, arc_at(x2));
      }
    }
    return std::min({best_d, f1, f2});
  }

 private:
  Vec2 arc_at(double t) const {
    if (t <= 0.0) return a_;
    if (t >= 1.0) return b_;
    return pie_arc_mid_param(t);
  }
  Vec2 pie_arc_mid_param(double t) const {
    const Vec2 chord = a_ + t * (b_ - a_);
    const Vec2 dir = chord - v0_;
    const auto hits = intersect_ray_conic(q_, v0_, dir);
    if (hits.empty()) return chord;
    Vec2 best = hits.front();
    double err = std::abs(dot(best - v0_, dir) / dot(dir, dir) - 1.0);
    for (const Vec2& h : hits) {
      const double e = std::abs(dot(h - v0_, dir) / dot(dir, dir) - 1.0);
      if (e < err) {
        best = h;
        err = e;
      }
    }
    return best;
  }

  const Conic& q_;
  Vec2 v0_, a_, b_;
  std::vector<Vec2> samples_;
};

inline double line_distance(Vec2 p, Vec2 q, Vec2 ref, Vec2 z) {
  // Signed distance to line (p, q), positive on the side of ref.
  const double len = dist(p, q);
  const double s = cross(q - p, z - p) / len;
  const double sr = cross(q - p, ref - p) / len;
  return sr >= 0.0 ? s : -s;
}

}  // namespace detail

/// Inscribed disk of triangle t. Ordinary and buffer triangles get the exact
/// incircle. For a pie triangle the disk must fit in T intersected with the
/// chord triangle T*; when the arc bulges away from the interior vertex the
/// incircle of T* is already optimal (the chord binds before the conic),
/// otherwise the min-distance objective
///   g(c) = min(dist to both straight edges, dist to chord, dist to conic)
/// is maximized over a coarse grid with shrinking local refinement down to a
/// radius tolerance of 1e-9 h_T.
inline InscribedDisk inscribed_disk(const Mesh& m, int t) {
  const auto& T = m.tri(t);
  const auto p = m.tri_points(t);
  if (T.arc < 0) return incircle(p[0], p[1], p[2]);

  const Conic& q = m.conic_of_tri(t);
  const Vec2 v0 = p[0], v1 = p[1], v2 = p[2];
  const InscribedDisk straight = incircle(v0, v1, v2);
  const detail::ArcDistance arc_dist(m, t);

  // Arc beyond the chord (seen from v0): T* is contained in T and the
  // incircle of T* is the answer as long as the conic stays non-binding.
  if (arc_dist(straight.center) >= straight.radius * (1.0 - 1e-12))
    return straight;

  const double h = m.straight_diameter(t);
  auto objective = [&](Vec2 c) {
    const double d_e1 = detail::line_distance(v0, v1, v2, c);
    const double d_e2 = detail::line_distance(v0, v2, v1, c);
    const double d_chord = detail::line_distance(v1, v2, v0, c);
    const double d_arc = (q(c) >= 0.0 ? 1.0 : -1.0) * arc_dist(c);
    return std::min({d_e1, d_e2, d_chord, d_arc});
  };

  // Coarse pass over the bounding box of T*.
  Vec2 lo{std::min({v0.x, v1.x, v2.x}), std::min({v0.y, v1.y, v2.y})};
  Vec2 hi{std::max({v0.x, v1.x, v2.x}), std::max({v0.y, v1.y, v2.y})};
  Vec2 best_c = straight.center;
  double best_g = objective(best_c);
  const int coarse = 24;
  for (int i = 0; i <= coarse; ++i)
    for (int j = 0; j <= coarse; ++j) {
      const Vec2 c{lo.x + (hi.x - lo.x) * i / coarse,
                   lo.y + (hi.y - lo.y) * j / coarse};
      const double g = objective(c);
      if (g > best_g) {
        best_g = g;
        best_c = c;
      }
    }
  double window = std::max(hi.x - lo.x, hi.y - lo.y) / coarse;
  while (window > 1e-9 * h) {
    const int fine = 4;
    Vec2 cand = best_c;
    double cand_g = best_g;
    for (int i = -fine; i <= fine; ++i)
      for (int j = -fine; j <= fine; ++j) {
        const Vec2 c{best_c.x + window * i / fine, best_c.y + window * j / fine};
        const double g = objective(c);
        if (g > cand_g) {
          cand_g = g;
          cand = c;
        }
      }
    best_c = cand;
    best_g = cand_g;
    window *= 0.5;
  }
  if (best_g <= 0.0)
    throw std::runtime_error("inscribed_disk: empty pie intersection");
  return {best_c, best_g};
}

namespace detail {

inline void rebuild_topology(Mesh& m) {
  m.edges.clear();
  m.edge_lookup_.clear();
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const auto& T = m.tri(t);
    const std::array<std::pair<int, int>, 3> pairs = {
        std::pair<int, int>{T.v[1], T.v[2]},
        {T.v[0], T.v[2]},
        {T.v[0], T.v[1]}};
    for (auto [a, b] : pairs) {
      require(a != b, "mesh: degenerate triangle edge");
      if (a > b) std::swap(a, b);
      auto it = m.edge_lookup_.find({a, b});
      if (it == m.edge_lookup_.end()) {
        Edge e;
        e.a = a;
        e.b = b;
        e.tris[0] = t;
        e.count = 1;
        m.edge_lookup_.emplace(std::pair<int, int>{a, b},
                               static_cast<int>(m.edges.size()));
        m.edges.push_back(e);
      } else {
        Edge& e = m.edges[static_cast<std::size_t>(it->second)];
        require(e.count < 2, "mesh: more than two triangles at an edge");
        e.tris[1] = t;
        e.count = 2;
      }
    }
  }
  m.vertex_boundary.assign(m.vertices.size(), false);
  for (const Edge& e : m.edges)
    if (e.boundary()) {
      m.vertex_boundary[static_cast<std::size_t>(e.a)] = true;
      m.vertex_boundary[static_cast<std::size_t>(e.b)] = true;
    }
}

}  // namespace detail

/// Assigns triangle classes and local vertex roles from the curved-edge
/// tags: pie = has a curved edge, buffer = straight and edge-adjacent to a
/// pie, ordinary = the rest. Idempotent.
inline Mesh classify(Mesh m) {
  detail::rebuild_topology(m);
  // Pie triangles and their local roles.
  for (auto& T : m.triangles) {
    if (T.arc < 0) {
      T.cls = TriClass::ordinary;
      continue;
    }
    const Conic& q = m.domain.conic_of(m.domain.arcs[static_cast<std::size_t>(T.arc)]);
    std::array<bool, 3> on_curve{};
    int n_on = 0;
    for (int i = 0; i < 3; ++i) {
      on_curve[static_cast<std::size_t>(i)] =
          std::abs(q(m.point(T.v[static_cast<std::size_t>(i)]))) <=
          tolerance::on_curve;
      n_on += on_curve[static_cast<std::size_t>(i)];
    }
    require(n_on < 3, "classify: triangle with more than one curved edge");
    require(n_on == 2, "classify: curved-edge endpoints are not on the conic");
    // Rotate so the off-curve (interior) vertex comes first; rotation keeps
    // the cyclic order.
    while (on_curve[0]) {
      std::rotate(T.v.begin(), T.v.begin() + 1, T.v.end());
      std::rotate(on_curve.begin(), on_curve.begin() + 1, on_curve.end());
    }
    T.cls = TriClass::pie;
  }
  // Buffer = straight triangle sharing an edge with a pie triangle.
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    auto& T = m.triangles[static_cast<std::size_t>(t)];
    if (T.cls == TriClass::pie) continue;
    bool near_pie = false;
    const std::array<std::pair<int, int>, 3> pairs = {
        std::pair<int, int>{T.v[1], T.v[2]},
        {T.v[0], T.v[2]},
        {T.v[0], T.v[1]}};
    for (auto [a, b] : pairs) {
      const int nb = m.neighbor_across(t, a, b);
      if (nb >= 0 && m.tri(nb).cls == TriClass::pie) near_pie = true;
    }
    T.cls = near_pie ? TriClass::buffer : TriClass::ordinary;
  }
  // Buffer local role: boundary vertex first (when it is unique; the
  // validator reports violations).
  for (auto& T : m.triangles) {
    if (T.cls != TriClass::buffer) continue;
    int n_bd = 0, which = -1;
    for (int i = 0; i < 3; ++i)
      if (m.vertex_boundary[static_cast<std::size_t>(T.v[static_cast<std::size_t>(i)])]) {
        ++n_bd;
        which = i;
      }
    if (n_bd == 1)
      while (which-- > 0) std::rotate(T.v.begin(), T.v.begin() + 1, T.v.end());
  }
  return m;
}

/// Computes cached inscribed disks and diameters. Requires classified mesh.
inline void finalize_mesh(Mesh& m) {
  detail::rebuild_topology(m);
  const int nt = static_cast<int>(m.triangles.size());
  m.disks.assign(static_cast<std::size_t>(nt), InscribedDisk{});
  m.diameters.assign(static_cast<std::size_t>(nt), 0.0);
  for (int t = 0; t < nt; ++t) {
    m.disks[static_cast<std::size_t>(t)] = inscribed_disk(m, t);
    std::vector<Vec2> pts(m.tri_points(t).begin(), m.tri_points(t).end());
    if (m.tri(t).arc >= 0) {
      const auto arc = curved_edge_points(m, t, 100);
      pts.insert(pts.end(), arc.begin(), arc.end());
    }
    double h = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        h = std::max(h, dist(pts[i], pts[j]));
    m.diameters[static_cast<std::size_t>(t)] = h;
  }
}

/// Shape regularity constant: max over triangles of h_T / rho_T.
inline double shape_regularity(const Mesh& m) {
  require(m.disks.size() == m.triangles.size(), "shape_regularity: not finalized");
  double r = 0.0;
  for (std::size_t t = 0; t < m.triangles.size(); ++t)
    r = std::max(r, m.diameters[t] / m.disks[t].radius);
  return r;
}

struct ValidationItem {
  std::string condition;
  bool pass = true;
  std::vector<std::string> offenders;
};

struct ValidationReport {
  std::vector<ValidationItem> items;

  bool all_pass() const {
    for (const auto& i : items)
      if (!i.pass) return false;
    return true;
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& i : items) {
      os << (i.pass ? "[pass] " : "[FAIL] ") << i.condition << "\n";
      for (const auto& o : i.offenders) os << "         " << o << "\n";
    }
    return os.str();
  }
};

/// Checks the triangulation conditions on a classified mesh:
///   (A) designated corner points are mesh boundary vertices,
///   (B) no interior edge has both endpoints on the boundary,
///   (C) no two pie triangles share an edge,
///   (D) pie triangles are star-shaped about their interior vertex,
///   (E) the governing conic is positive on the pie triangle off its arc,
///   (F) no two buffer triangles share an edge,
/// plus structural soundness (manifold edges, boundary edges are exactly the
/// pie chords, buffer triangles have exactly one boundary vertex).
inline ValidationReport validate(const Mesh& m) {
  ValidationReport rep;
  auto& items = rep.items;

  {
    ValidationItem it{"mesh: edge incidence and class partition"};
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
      const Edge& E = m.edges[e];
      if (E.count < 1 || E.count > 2) {
        it.pass = false;
        it.offenders.push_back("edge " + std::to_string(e));
      }
      if (E.boundary()) {
        const auto& T = m.tri(E.tris[0]);
        const bool chord = T.cls == TriClass::pie &&
                           ((E.a == std::min(T.v[1], T.v[2]) &&
                             E.b == std::max(T.v[1], T.v[2])));
        if (!chord) {
          it.pass = false;
          it.offenders.push_back("boundary edge " + std::to_string(e) +
                                 " is not a pie chord");
        }
      }
    }
    items.push_back(std::move(it));
  }

  {
    ValidationItem it{"(A) corner points are boundary vertices"};
    for (std::size_t j = 0; j < m.domain.arcs.size(); ++j) {
      const Vec2 z = m.domain.arcs[j].start;
      bool found = false;
      for (std::size_t v = 0; v < m.vertices.size(); ++v)
        if (m.vertex_boundary[v] && dist(m.vertices[v], z) <= 1e-9) found = true;
      if (!found) {
        it.pass = false;
        it.offenders.push_back("corner of arc " + std::to_string(j));
      }
    }
    items.push_back(std::move(it));
  }

  {
    ValidationItem it{"(B) no interior edge with both endpoints on boundary"};
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
      const Edge& E = m.edges[e];
      if (!E.boundary() && m.vertex_boundary[static_cast<std::size_t>(E.a)] &&
          m.vertex_boundary[static_cast<std::size_t>(E.b)]) {
        it.pass = false;
        it.offenders.push_back("edge (" + std::to_string(E.a) + "," +
                               std::to_string(E.b) + ")");
      }
    }
    items.push_back(std::move(it));
  }

  auto pair_check = [&](const char* label, TriClass cls) {
    ValidationItem it{label};
    for (std::size_t e = 0; e < m.edges.size(); ++e) {
      const Edge& E = m.edges[e];
      if (E.count == 2 && m.tri(E.tris[0]).cls == cls &&
          m.tri(E.tris[1]).cls == cls) {
        it.pass = false;
        it.offenders.push_back("triangles " + std::to_string(E.tris[0]) + "," +
                               std::to_string(E.tris[1]));
      }
    }
    items.push_back(std::move(it));
  };
  pair_check("(C) no pair of pie triangles shares an edge", TriClass::pie);

  {
    ValidationItem it{"(D) pie triangles star-shaped about the interior vertex"};
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
      const auto& T = m.tri(t);
      if (T.cls != TriClass::pie) continue;
      const Vec2 v0 = m.point(T.v[0]);
      const auto samples = curved_edge_points(m, t, 33);
      const double orient =
          cross(m.point(T.v[1]) - v0, m.point(T.v[2]) - v0) >= 0 ? 1.0 : -1.0;
      bool ok = true;
      for (std::size_t i = 0; i + 1 < samples.size(); ++i)
        if (orient * cross(samples[i] - v0, samples[i + 1] - v0) <= 0.0)
          ok = false;
      if (!ok) {
        it.pass = false;
        it.offenders.push_back("triangle " + std::to_string(t));
      }
    }
    items.push_back(std::move(it));
  }

  {
    ValidationItem it{"(E) conic positive on pie triangles off the arc"};
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
      const auto& T = m.tri(t);
      if (T.cls != TriClass::pie) continue;
      const Conic& q = m.conic_of_tri(t);
      const Vec2 v0 = m.point(T.v[0]);
      const auto arc = curved_edge_points(m, t, 17);
      bool ok = q(v0) > 0.0;
      // Interior fan samples between the vertex and the arc.
      for (const Vec2& g : arc)
        for (double s : {0.25, 0.5, 0.75, 0.95})
          if (q(v0 + s * (g - v0)) <= 0.0) ok = false;
      if (!ok) {
        it.pass = false;
        it.offenders.push_back("triangle " + std::to_string(t));
      }
    }
    items.push_back(std::move(it));
  }

  pair_check("(F) no pair of buffer triangles shares an edge", TriClass::buffer);

  {
    ValidationItem it{"buffer triangles have exactly one boundary vertex"};
    for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
      const auto& T = m.tri(t);
      if (T.cls != TriClass::buffer) continue;
      int n_bd = 0;
      for (int i = 0; i < 3; ++i)
        if (m.vertex_boundary[static_cast<std::size_t>(T.v[static_cast<std::size_t>(i)])])
          ++n_bd;
      if (n_bd != 1) {
        it.pass = false;
        it.offenders.push_back("triangle " + std::to_string(t));
      }
    }
    items.push_back(std::move(it));
  }

  return rep;
}

/// Structured triangulation of the region bounded by an oval conic with n
/// boundary vertices: a pie/buffer annulus at the boundary, concentric rings
/// with 2:1 count transitions inward, and a central fan. The construction
/// satisfies conditions (A)-(F) by design; callers still run validate().
inline Mesh generate_disk_mesh(const Conic& q_in, int n,
                               std::optional<Vec2> start_hint = std::nullopt) {
  require(n >= 8,
          "generate_disk_mesh: n < 8 cannot satisfy the triangulation "
          "conditions; the boundary annulus needs at least 8 pie triangles "
          "to keep buffer triangles edge-disjoint ((F)) and well shaped");
  require(q_in.is_oval(), "generate_disk_mesh: conic is not a bounded oval");
  const Vec2 zc = q_in.center();
  require(q_in(zc) > 0.0, "generate_disk_mesh: center not inside (check sign)");

  // Normalize against dense boundary samples so condition (f)-style bounds
  // hold on the whole closure; for a quadratic the gradient max over the
  // region is attained on the boundary.
  const double pi = std::acos(-1.0);
  std::vector<Vec2> bd_samples;
  for (int k = 0; k < 512; ++k)
    bd_samples.push_back(detail::oval_point(q_in, zc, 2.0 * pi * k / 512));
  const Conic q = normalize_conic(q_in, bd_samples, zc);

  // Arc-length-uniform boundary vertices, starting at start_hint (used to
  // pin a designated corner) or at polar angle 0.
  double theta0 = 0.0;
  if (start_hint)
    theta0 = std::atan2(start_hint->y - zc.y, start_hint->x - zc.x);
  const int fine = 4096;
  std::vector<double> cum(static_cast<std::size_t>(fine) + 1, 0.0);
  std::vector<Vec2> ring_pts(static_cast<std::size_t>(fine) + 1);
  for (int k = 0; k <= fine; ++k)
    ring_pts[static_cast<std::size_t>(k)] =
        detail::oval_point(q, zc, theta0 + 2.0 * pi * k / fine);
  for (int k = 1; k <= fine; ++k)
    cum[static_cast<std::size_t>(k)] =
        cum[static_cast<std::size_t>(k - 1)] +
        dist(ring_pts[static_cast<std::size_t>(k)],
             ring_pts[static_cast<std::size_t>(k - 1)]);
  const double perimeter = cum.back();
  auto theta_at_fraction = [&](double f) {
    const double target = f * perimeter;
    auto it = std::lower_bound(cum.begin(), cum.end(), target);
    std::size_t k = static_cast<std::size_t>(it - cum.begin());
    if (k == 0) return theta0;
    const double prev = cum[k - 1];
    const double seg = cum[k] - prev;
    const double frac = seg > 0.0 ? (target - prev) / seg : 0.0;
    return theta0 + 2.0 * pi * (static_cast<double>(k - 1) + frac) / fine;
  };

  std::vector<Vec2> boundary(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    boundary[static_cast<std::size_t>(k)] =
        detail::oval_point(q, zc, theta_at_fraction(static_cast<double>(k) / n));
  if (start_hint) boundary[0] = *start_hint;

  const double s0 = perimeter / n;
  double dbar = 0.0;
  for (const Vec2& b : boundary) dbar += dist(b, zc);
  dbar /= n;
  const double dr = s0 / dbar;

  // Ring schedule: scales and vertex counts.
  struct Ring {
    int m;
    double rho;
  };
  std::vector<Ring> rings;
  rings.push_back({n, 1.0});
  double rho = std::clamp(1.0 - dr, 0.5, 0.95);
  rings.push_back({n, rho});
  int mcur = n;
  while (true) {
    const double rho_next = rho - dr;
    if (rho_next <= 1.2 * dr) break;
    int mnext = mcur;
    if (perimeter * rho_next / mnext < 0.7 * s0 && mnext % 2 == 0 &&
        mnext / 2 >= 8)
      mnext /= 2;
    rings.push_back({mnext, rho_next});
    rho = rho_next;
    mcur = mnext;
  }
  if (rho > 1.8 * dr) {
    int mnext = mcur;
    const double rho_last = 0.55 * rho;
    if (perimeter * rho_last / mnext < 0.7 * s0 && mnext % 2 == 0 &&
        mnext / 2 >= 8)
      mnext /= 2;
    rings.push_back({mnext, rho_last});
    mcur = mnext;
  }

  Mesh mesh;
  mesh.vertices.reserve(64);
  std::vector<std::vector<int>> ring_ids(rings.size());
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const auto [mr, rr] = rings[r];
    require(n % mr == 0, "generate_disk_mesh: ring misalignment");
    ring_ids[r].resize(static_cast<std::size_t>(mr));
    for (int k = 0; k < mr; ++k) {
      const Vec2 dirpt = boundary[static_cast<std::size_t>(k * (n / mr))];
      const Vec2 p = (r == 0) ? dirpt : zc + rr * (dirpt - zc);
      ring_ids[r][static_cast<std::size_t>(k)] =
          static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(p);
    }
  }
  const int center_id = static_cast<int>(mesh.vertices.size());
  mesh.vertices.push_back(zc);

  // Domain: one closed arc starting at the first boundary vertex.
  mesh.domain.conics.push_back(q);
  mesh.domain.arcs.push_back(Arc{0, boundary[0], boundary[0], true, zc});
  validate_domain(mesh.domain);

  // Boundary annulus: alternating pie / buffer triangles.
  const auto& B = ring_ids[0];
  const auto& R1 = ring_ids[1];
  for (int k = 0; k < n; ++k) {
    const int k1 = (k + 1) % n;
    Triangle pie;
    pie.v = {R1[static_cast<std::size_t>(k)], B[static_cast<std::size_t>(k)],
             B[static_cast<std::size_t>(k1)]};
    pie.arc = 0;
    mesh.triangles.push_back(pie);
    Triangle buf;
    buf.v = {B[static_cast<std::size_t>(k1)], R1[static_cast<std::size_t>(k)],
             R1[static_cast<std::size_t>(k1)]};
    mesh.triangles.push_back(buf);
  }
  // Interior annuli.
  for (std::size_t r = 1; r + 1 < rings.size(); ++r) {
    const auto& outer = ring_ids[r];
    const auto& inner = ring_ids[r + 1];
    const int mo = rings[r].m, mi = rings[r + 1].m;
    if (mo == mi) {
      for (int k = 0; k < mo; ++k) {
        const int k1 = (k + 1) % mo;
        mesh.triangles.push_back(Triangle{
            {outer[static_cast<std::size_t>(k)], outer[static_cast<std::size_t>(k1)],
             inner[static_cast<std::size_t>(k)]}});
        mesh.triangles.push_back(Triangle{
            {outer[static_cast<std::size_t>(k1)], inner[static_cast<std::size_t>(k1)],
             inner[static_cast<std::size_t>(k)]}});
      }
    } else {
      require(mo == 2 * mi, "generate_disk_mesh: unsupported ring transition");
      for (int k = 0; k < mi; ++k) {
        const int k1 = (k + 1) % mi;
        const int f0 = 2 * k, f1 = 2 * k + 1, f2 = (2 * k + 2) % mo;
        mesh.triangles.push_back(Triangle{
            {outer[static_cast<std::size_t>(f0)], outer[static_cast<std::size_t>(f1)],
             inner[static_cast<std::size_t>(k)]}});
        mesh.triangles.push_back(Triangle{
            {outer[static_cast<std::size_t>(f1)], outer[static_cast<std::size_t>(f2)],
             inner[static_cast<std::size_t>(k1)]}});
        mesh.triangles.push_back(Triangle{
            {outer[static_cast<std::size_t>(f1)], inner[static_cast<std::size_t>(k1)],
             inner[static_cast<std::size_t>(k)]}});
      }
    }
  }
  // Central fan.
  const auto& last = ring_ids.back();
  const int ml = rings.back().m;
  for (int k = 0; k < ml; ++k) {
    const int k1 = (k + 1) % ml;
    mesh.triangles.push_back(Triangle{
        {last[static_cast<std::size_t>(k)], last[static_cast<std::size_t>(k1)],
         center_id}});
  }

  mesh = classify(std::move(mesh));
  finalize_mesh(mesh);
  return mesh;
}

/// Mesh generation from a single-arc oval domain; the designated corner of
/// the domain arc becomes a boundary vertex.
inline Mesh generate_disk_mesh(const Domain& d, int n) {
  require(d.arcs.size() == 1 && d.conics.size() == 1,
          "generate_disk_mesh: only single-arc oval domains are supported");
  Mesh m = generate_disk_mesh(d.conics[0], n, d.arcs[0].start);
  return m;
}

}  // namespace conic_argyris

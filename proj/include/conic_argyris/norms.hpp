#pragma once

#include "conic_argyris/interpolator.hpp"

namespace conic_argyris {

namespace detail {

inline std::vector<std::array<int, 2>> multi_indices_of_order(int k) {
  std::vector<std::array<int, 2>> out;
  for (int ax = k; ax >= 0; --ax) out.push_back({ax, k - ax});
  return out;
}

inline double partial_of_data(const HermiteData& u, Vec2 z, int ax, int ay) {
  const int k = ax + ay;
  if (k == 0) return u.value(z);
  if (k == 1) {
    const Vec2 g = u.gradient(z);
    return ax == 1 ? g.x : g.y;
  }
  const auto h = u.hessian(z);
  if (ax == 2) return h[0];
  if (ay == 2) return h[2];
  return h[1];
}

}  // namespace detail

/// Broken Sobolev seminorm of order k of (u - s):
///   ( sum over triangles  sum over |alpha| = k  int |D^alpha (u - s)|^2 )^{1/2}
/// for k = 0, 1, 2 (the Hermite data supplies derivatives up to order 2).
/// Per-triangle contributions are accumulated in mesh order, so parallel
/// runs reduce deterministically.
inline double error_seminorm(const Mesh& m, const Spline& s,
                             const HermiteData& u, int k, int threads = 1,
                             double lens_tol = tolerance::lens) {
  require(k >= 0 && k <= 2, "error_seminorm: k must be 0, 1 or 2");
  require(s.pieces.size() == m.triangles.size(), "error_seminorm: size mismatch");
  const auto alphas = detail::multi_indices_of_order(k);
  const std::size_t nt = m.triangles.size();
  std::vector<double> contrib(nt, 0.0);
  parallel_for(nt, threads, [&](std::size_t t) {
    const auto& T = m.tri(static_cast<int>(t));
    double acc = 0.0;
    for (const auto& [ax, ay] : alphas) {
      const Poly2 ds = diff(s.pieces[t], ax, ay);
      auto f = [&](Vec2 z) {
        const double e = detail::partial_of_data(u, z, ax, ay) - eval(ds, z);
        return e * e;
      };
      if (T.cls == TriClass::pie) {
        const auto p = m.tri_points(static_cast<int>(t));
        acc += quad_curved(f, p[0], p[1], p[2], m.conic_of_tri(static_cast<int>(t)),
                           lens_tol);
      } else {
        const auto p = m.tri_points_ccw(static_cast<int>(t));
        acc += quad_straight(f, p[0], p[1], p[2]);
      }
    }
    contrib[t] = acc;
  });
  double total = 0.0;
  for (double c : contrib) total += c;
  return std::sqrt(std::max(total, 0.0));
}

/// Broken full H^k norm: root sum of the seminorms of orders 0..k.
inline double error_norm(const Mesh& m, const Spline& s, const HermiteData& u,
                         int k, int threads = 1,
                         double lens_tol = tolerance::lens) {
  double total = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double semi = error_seminorm(m, s, u, j, threads, lens_tol);
    total += semi * semi;
  }
  return std::sqrt(total);
}

/// Measure of the meshed domain: sum of triangle areas with the curved
/// correction on pie triangles.
inline double mesh_measure(const Mesh& m, double lens_tol = tolerance::lens) {
  double total = 0.0;
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    auto one = [](Vec2) { return 1.0; };
    if (m.tri(t).cls == TriClass::pie) {
      const auto p = m.tri_points(t);
      total += quad_curved(one, p[0], p[1], p[2], m.conic_of_tri(t), lens_tol);
    } else {
      const auto p = m.tri_points_ccw(t);
      total += quad_straight(one, p[0], p[1], p[2]);
    }
  }
  return total;
}

/// Max jump of the spline value and of its edge-normal derivative across an
/// interior edge, over n equispaced sample points, both normalized by the
/// local coefficient scale of the two pieces.
inline std::pair<double, double> c1_jump(const Mesh& m, const Spline& s,
                                         int edge_index, int n_samples = 50) {
  require(edge_index >= 0 && edge_index < static_cast<int>(m.edges.size()),
          "c1_jump: bad edge index");
  const Edge& e = m.edges[static_cast<std::size_t>(edge_index)];
  require(e.count == 2, "c1_jump: boundary edge");
  require(n_samples >= 2, "c1_jump: need at least 2 samples");
  const Poly2& p0 = s.pieces[static_cast<std::size_t>(e.tris[0])];
  const Poly2& p1 = s.pieces[static_cast<std::size_t>(e.tris[1])];
  const Poly2 d = p0 - p1;
  const Vec2 a = m.point(e.a), b = m.point(e.b);
  const Poly2 dn = directional(d, edge_perp(a, b));
  const double scale = std::max({1.0, max_abs_coeff(p0), max_abs_coeff(p1)});
  double jv = 0.0, jd = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const Vec2 z = a + (static_cast<double>(i) / (n_samples - 1)) * (b - a);
    jv = std::max(jv, std::abs(eval(d, z)));
    jd = std::max(jd, std::abs(eval(dn, z)));
  }
  return {jv / scale, jd / scale};
}

/// Max value and normal-derivative jump over all interior edges.
inline std::pair<double, double> max_c1_jump(const Mesh& m, const Spline& s,
                                             int n_samples = 50) {
  double jv = 0.0, jd = 0.0;
  for (int e = 0; e < static_cast<int>(m.edges.size()); ++e) {
    if (m.edges[static_cast<std::size_t>(e)].count != 2) continue;
    const auto [v, d] = c1_jump(m, s, e, n_samples);
    jv = std::max(jv, v);
    jd = std::max(jd, d);
  }
  return {jv, jd};
}

/// Max disagreement of order-2 partials between pieces meeting at a vertex,
/// relative to max(1, |value|); zero for a spline that is twice
/// differentiable at every vertex.
inline double max_vertex_second_order_mismatch(const Mesh& m, const Spline& s) {
  std::vector<std::vector<int>> star(m.vertices.size());
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t)
    for (int i = 0; i < 3; ++i)
      star[static_cast<std::size_t>(m.tri(t).v[static_cast<std::size_t>(i)])]
          .push_back(t);
  double worst = 0.0;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const Vec2 z = m.vertices[v];
    for (int ax = 0; ax <= 2; ++ax)
      for (int ay = 0; ax + ay <= 2; ++ay) {
        double lo = 0.0, hi = 0.0, ref = 0.0;
        bool first = true;
        for (int t : star[v]) {
          const double val =
              eval(diff(s.pieces[static_cast<std::size_t>(t)], ax, ay), z);
          if (first) {
            lo = hi = ref = val;
            first = false;
          } else {
            lo = std::min(lo, val);
            hi = std::max(hi, val);
          }
        }
        if (!first)
          worst = std::max(worst, (hi - lo) / std::max(1.0, std::abs(ref)));
      }
  }
  return worst;
}

/// Largest |s| over samples_per_arc points on each boundary arc.
inline double boundary_trace_max(const Mesh& m, const Spline& s,
                                 int samples_per_arc = 100) {
  double worst = 0.0;
  for (std::size_t j = 0; j < m.domain.arcs.size(); ++j) {
    const Arc& a = m.domain.arcs[j];
    for (const Vec2& z : sample_arc(m.domain.conic_of(a), a, samples_per_arc)) {
      const int t = locate_point(m, z);
      if (t < 0) continue;  // roundoff just outside; neighbors cover it
      worst = std::max(worst,
                       std::abs(eval(s.pieces[static_cast<std::size_t>(t)], z)));
    }
  }
  return worst;
}

/// Sup-norm estimate of the spline: max |piece| over quadrature points,
/// vertices, and arc samples of each triangle.
inline double sup_norm_estimate(const Mesh& m, const Spline& s) {
  const auto& rule = triangle_rule_degree12();
  double worst = 0.0;
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const Poly2& piece = s.pieces[static_cast<std::size_t>(t)];
    const auto p = m.tri_points(t);
    for (const Vec2& v : p) worst = std::max(worst, std::abs(eval(piece, v)));
    for (std::size_t i = 0; i < rule.w.size(); ++i) {
      const auto& l = rule.bary[i];
      const Vec2 z = l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
      worst = std::max(worst, std::abs(eval(piece, z)));
    }
    if (m.tri(t).arc >= 0)
      for (const Vec2& z : curved_edge_points(m, t, 20))
        worst = std::max(worst, std::abs(eval(piece, z)));
  }
  return worst;
}

}  // namespace conic_argyris

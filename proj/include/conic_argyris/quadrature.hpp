#pragma once

#include "conic_argyris/conic.hpp"

namespace conic_argyris {

/// Quadrature rule on the reference triangle {x, y >= 0, x + y <= 1},
/// stored in barycentric coordinates with weights normalized to sum 1, so
/// that  integral over T of f  ~=  area(T) * sum_i w_i f(z_i).
struct QuadratureRule {
  int exactness = 0;
  std::vector<std::array<double, 3>> bary;
  std::vector<double> w;
};

namespace detail {

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
inline constexpr std::array<double, 7> kGl7X = {
    -0.9491079123427585, -0.7415311855993945, -0.4058451513773972,
    0.0,
    0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
inline constexpr std::array<double, 7> kGl7W = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694,
    0.3818300505051189, 0.2797053914892766, 0.1294849661688697};

}  // namespace detail

/// Degree-12 rule from a 7x7 tensor Gauss-Legendre grid on the unit square
/// collapsed onto the triangle by (u, v) -> (u, v(1 - u)) with Jacobian
/// (1 - u). A monomial x^i y^j, i + j <= 12, becomes degree <= 13 in each
/// variable, inside the 7-point exactness.
inline const QuadratureRule& triangle_rule_degree12() {
  static const QuadratureRule rule = [] {
    QuadratureRule r;
    r.exactness = 12;
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        const double u = 0.5 * (detail::kGl7X[static_cast<std::size_t>(i)] + 1.0);
        const double v = 0.5 * (detail::kGl7X[static_cast<std::size_t>(j)] + 1.0);
        const double wu = 0.5 * detail::kGl7W[static_cast<std::size_t>(i)];
        const double wv = 0.5 * detail::kGl7W[static_cast<std::size_t>(j)];
        const double x = u;
        const double y = v * (1.0 - u);
        r.bary.push_back({1.0 - x - y, x, y});
        r.w.push_back(2.0 * wu * wv * (1.0 - u));  // reference area 1/2 -> 1
      }
    return r;
  }();
  return rule;
}

/// Signed integral over the (possibly negatively oriented) straight triangle
/// (A, B, C); exact for polynomials up to the rule degree.
template <class F>
double quad_straight(F&& f, Vec2 A, Vec2 B, Vec2 C,
                     const QuadratureRule& rule = triangle_rule_degree12()) {
  const double signed_area = 0.5 * cross(B - A, C - A);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.w.size(); ++i) {
    const auto& l = rule.bary[i];
    const Vec2 z = l[0] * A + l[1] * B + l[2] * C;
    s += rule.w[i] * f(z);
  }
  return signed_area * s;
}

struct CurvedQuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int levels = 0;
  bool converged = false;
};

/// Integral over a pie-shaped triangle with interior vertex v1, boundary
/// vertices v2, v3 and the curved side given through arc_mid, which maps two
/// on-arc points to the arc point between them. The region is covered by the
/// straight triangle (v1, v2, v3) plus dyadic generations of bridge triangles
/// against the arc; signed areas make both bulge directions come out right.
/// Successive generations shrink geometrically, so the run stops once two
/// levels differ by at most tol * (1 + |value|).
template <class F, class ArcMid>
CurvedQuadResult quad_curved_generic(F&& f, Vec2 v1, Vec2 v2, Vec2 v3,
                                     ArcMid&& arc_mid, double tol,
                                     const QuadratureRule& rule =
                                         triangle_rule_degree12()) {
  Vec2 a = v2, b = v3;
  if (cross(a - v1, b - v1) < 0.0) std::swap(a, b);
  CurvedQuadResult res;
  res.value = quad_straight(f, v1, a, b, rule);
  std::vector<Vec2> pts = {a, b};
  for (int level = 1; level <= 20; ++level) {
    std::vector<Vec2> next;
    next.reserve(pts.size() * 2 - 1);
    double increment = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const Vec2 m = arc_mid(pts[i], pts[i + 1]);
      increment += quad_straight(f, pts[i], m, pts[i + 1], rule);
      next.push_back(pts[i]);
      next.push_back(m);
    }
    next.push_back(pts.back());
    pts.swap(next);
    res.value += increment;
    res.levels = level;
    res.error_estimate = std::abs(increment) / 3.0;  // ratio-1/4 tail bound
    if (std::abs(increment) <= tol * (1.0 + std::abs(res.value))) {
      res.converged = true;
      break;
    }
  }
  return res;
}

/// Arc midpoint for a pie triangle: shoot a ray from the interior vertex
/// through the chord midpoint and keep the conic intersection nearest the
/// chord. Well defined by star-shapedness of pie triangles.
inline Vec2 pie_arc_mid(const Conic& q, Vec2 interior_vertex, Vec2 a, Vec2 b) {
  const Vec2 m = 0.5 * (a + b);
  const Vec2 dir = m - interior_vertex;
  const auto hits = intersect_ray_conic(q, interior_vertex, dir);
  require(!hits.empty(), "pie_arc_mid: ray misses the arc");
  Vec2 best = hits.front();
  double best_err = std::abs(dot(best - interior_vertex, dir) /
                                 dot(dir, dir) - 1.0);
  for (const Vec2& h : hits) {
    const double e = std::abs(dot(h - interior_vertex, dir) / dot(dir, dir) - 1.0);
    if (e < best_err) {
      best = h;
      best_err = e;
    }
  }
  return best;
}

template <class F>
CurvedQuadResult quad_curved_ex(F&& f, Vec2 interior_vertex, Vec2 b1, Vec2 b2,
                                const Conic& q, double tol = tolerance::lens,
                                const QuadratureRule& rule =
                                    triangle_rule_degree12()) {
  auto mid = [&](Vec2 a, Vec2 b) { return pie_arc_mid(q, interior_vertex, a, b); };
  return quad_curved_generic(std::forward<F>(f), interior_vertex, b1, b2, mid,
                             tol, rule);
}

template <class F>
double quad_curved(F&& f, Vec2 interior_vertex, Vec2 b1, Vec2 b2,
                   const Conic& q, double tol = tolerance::lens) {
  return quad_curved_ex(std::forward<F>(f), interior_vertex, b1, b2, q, tol)
      .value;
}

}  // namespace conic_argyris

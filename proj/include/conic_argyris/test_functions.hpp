#pragma once

#include "conic_argyris/nodal.hpp"

namespace conic_argyris {

/// Closed-form test function with Hermite data and a structural certificate
/// that it vanishes on the domain boundary (a factor equal to the boundary
/// conic). Functions that do not vanish are kept around to exercise the
/// rejection paths.
struct TestFunction {
  std::string id;
  HermiteData data;
  bool vanishes_on_boundary = false;
};

namespace detail {

struct SmoothFactor {
  std::function<double(Vec2)> g;
  std::function<Vec2(Vec2)> dg;
  std::function<std::array<double, 3>(Vec2)> d2g;
};

inline SmoothFactor factor_of(const std::string& kind) {
  if (kind == "sin") {
    return {[](Vec2 z) { return std::sin(z.x + 2.0 * z.y); },
            [](Vec2 z) {
              const double c = std::cos(z.x + 2.0 * z.y);
              return Vec2{c, 2.0 * c};
            },
            [](Vec2 z) {
              const double s = std::sin(z.x + 2.0 * z.y);
              return std::array<double, 3>{-s, -2.0 * s, -4.0 * s};
            }};
  }
  if (kind == "exp") {
    return {[](Vec2 z) { return std::exp(0.5 * (z.x - z.y)); },
            [](Vec2 z) {
              const double e = std::exp(0.5 * (z.x - z.y));
              return Vec2{0.5 * e, -0.5 * e};
            },
            [](Vec2 z) {
              const double e = std::exp(0.5 * (z.x - z.y));
              return std::array<double, 3>{0.25 * e, -0.25 * e, 0.25 * e};
            }};
  }
  if (kind == "poly") {
    return {[](Vec2 z) { return 1.0 + z.x - z.y + 0.5 * z.x * z.y; },
            [](Vec2 z) { return Vec2{1.0 + 0.5 * z.y, -1.0 + 0.5 * z.x}; },
            [](Vec2) { return std::array<double, 3>{0.0, 0.5, 0.0}; }};
  }
  throw std::invalid_argument("unknown smooth factor: " + kind);
}

/// u = q * g with exact product-rule derivatives.
inline HermiteData conic_times_factor(const Conic& q, const SmoothFactor& f) {
  HermiteData u;
  u.value = [q, f](Vec2 z) { return q(z) * f.g(z); };
  u.gradient = [q, f](Vec2 z) {
    const double g = f.g(z);
    const Vec2 dg = f.dg(z);
    return g * q.gradient(z) + q(z) * dg;
  };
  u.hessian = [q, f](Vec2 z) {
    const double g = f.g(z);
    const double qv = q(z);
    const Vec2 gq = q.gradient(z);
    const Vec2 dg = f.dg(z);
    const auto hq = q.hessian();
    const auto hg = f.d2g(z);
    return std::array<double, 3>{
        g * hq[0] + 2.0 * gq.x * dg.x + qv * hg[0],
        g * hq[1] + gq.x * dg.y + gq.y * dg.x + qv * hg[1],
        g * hq[2] + 2.0 * gq.y * dg.y + qv * hg[2]};
  };
  return u;
}

}  // namespace detail

/// Built-in test functions, keyed by id. Domain-specific names pair the
/// (normalized) boundary conic of the supplied domain with a smooth factor:
///   circle_sin / ellipse_sin / sin : q * sin(x + 2y)
///   circle_exp / ellipse_exp / exp : q * exp((x - y)/2)
///   circle_poly / ellipse_poly / poly : q * (1 + x - y + xy/2)
///   conic : q itself;  zero : 0;  one : constant 1 (does not vanish).
inline TestFunction make_test_function(const std::string& id, const Domain& d) {
  TestFunction tf;
  tf.id = id;
  if (id == "zero") {
    tf.data.value = [](Vec2) { return 0.0; };
    tf.data.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    tf.data.hessian = [](Vec2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
    tf.vanishes_on_boundary = true;
    return tf;
  }
  if (id == "one") {
    tf.data.value = [](Vec2) { return 1.0; };
    tf.data.gradient = [](Vec2) { return Vec2{0.0, 0.0}; };
    tf.data.hessian = [](Vec2) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
    tf.vanishes_on_boundary = false;
    return tf;
  }
  require(d.conics.size() == 1,
          "make_test_function: built-ins require a single-conic domain");
  const Conic& q = d.conics[0];
  if (id == "conic") {
    tf.data.value = [q](Vec2 z) { return q(z); };
    tf.data.gradient = [q](Vec2 z) { return q.gradient(z); };
    tf.data.hessian = [q](Vec2) { return q.hessian(); };
    tf.vanishes_on_boundary = true;
    return tf;
  }
  std::string kind = id;
  if (const auto pos = id.rfind('_'); pos != std::string::npos)
    kind = id.substr(pos + 1);
  tf.data = detail::conic_times_factor(q, detail::factor_of(kind));
  tf.vanishes_on_boundary = true;
  return tf;
}

/// Central finite-difference check of the supplied derivatives at the given
/// points: gradient against differences of the value, Hessian against
/// differences of the gradient.
inline bool self_check(const TestFunction& tf, std::span<const Vec2> pts,
                       double step = 1e-5, double rel_tol = 1e-6) {
  const auto& u = tf.data;
  for (Vec2 z : pts) {
    const Vec2 ex{step, 0.0}, ey{0.0, step};
    const Vec2 g = u.gradient(z);
    const double fx = (u.value(z + ex) - u.value(z - ex)) / (2.0 * step);
    const double fy = (u.value(z + ey) - u.value(z - ey)) / (2.0 * step);
    if (std::abs(fx - g.x) > rel_tol * std::max(1.0, std::abs(g.x))) return false;
    if (std::abs(fy - g.y) > rel_tol * std::max(1.0, std::abs(g.y))) return false;
    const auto h = u.hessian(z);
    const Vec2 gxp = u.gradient(z + ex), gxm = u.gradient(z - ex);
    const Vec2 gyp = u.gradient(z + ey), gym = u.gradient(z - ey);
    const double hxx = (gxp.x - gxm.x) / (2.0 * step);
    const double hxy = 0.5 * ((gxp.y - gxm.y) + (gyp.x - gym.x)) / (2.0 * step);
    const double hyy = (gyp.y - gym.y) / (2.0 * step);
    if (std::abs(hxx - h[0]) > rel_tol * std::max(1.0, std::abs(h[0]))) return false;
    if (std::abs(hxy - h[1]) > rel_tol * std::max(1.0, std::abs(h[1]))) return false;
    if (std::abs(hyy - h[2]) > rel_tol * std::max(1.0, std::abs(h[2]))) return false;
  }
  return true;
}

/// Deterministic interior sample points for self-checks: fractions of the
/// segments from each arc witness toward arc samples.
inline std::vector<Vec2> interior_probe_points(const Domain& d, int count) {
  std::vector<Vec2> pts;
  const Arc& a = d.arcs[0];
  const auto ring = sample_arc(d.conic_of(a), a, count + 1);
  for (int i = 0; i < count; ++i) {
    const double f = 0.3 + 0.6 * (static_cast<double>(i % 7) / 7.0);
    pts.push_back(a.witness + f * (ring[static_cast<std::size_t>(i)] - a.witness));
  }
  return pts;
}

}  // namespace conic_argyris

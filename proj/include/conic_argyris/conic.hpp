#pragma once

#include <optional>

#include "conic_argyris/poly.hpp"

namespace conic_argyris {

/// Irreducible bivariate quadratic q(x,y) = a x^2 + b xy + c y^2 + d x + e y + f.
/// One boundary arc of the domain lies on the zero set of one of these.
class Conic {
 public:
  explicit Conic(std::array<double, 6> coeffs) : k_(coeffs) {
    const double scale = max_abs();
    require(scale > 0.0, "Conic: zero polynomial");
    require(std::abs(k_[0]) + std::abs(k_[1]) + std::abs(k_[2]) > 1e-14 * scale,
            "Conic: quadratic part vanishes");
    // Irreducibility: det of the 3x3 symmetric matrix of the conic.
    require(std::abs(det3()) > 1e-12 * scale * scale * scale,
            "Conic: degenerate (factors into lines)");
  }

  const std::array<double, 6>& coeffs() const { return k_; }

  double operator()(Vec2 p) const {
    return (k_[0] * p.x + k_[1] * p.y + k_[3]) * p.x +
           (k_[2] * p.y + k_[4]) * p.y + k_[5];
  }

  Vec2 gradient(Vec2 p) const {
    return {2.0 * k_[0] * p.x + k_[1] * p.y + k_[3],
            k_[1] * p.x + 2.0 * k_[2] * p.y + k_[4]};
  }

  /// Constant Hessian ((2a, b), (b, 2c)) as (xx, xy, yy).
  std::array<double, 3> hessian() const {
    return {2.0 * k_[0], k_[1], 2.0 * k_[2]};
  }

  /// Spectral norm of the constant Hessian.
  double hessian_norm() const {
    const auto h = hessian();
    const double half_tr = 0.5 * (h[0] + h[2]);
    const double r = std::hypot(0.5 * (h[0] - h[2]), h[1]);
    return std::max(std::abs(half_tr + r), std::abs(half_tr - r));
  }

  /// True for ellipses (definite quadratic part); such conics have a center.
  bool is_oval() const { return 4.0 * k_[0] * k_[2] - k_[1] * k_[1] > 0.0; }

  /// Solution of grad q = 0; exists unless the conic is a parabola.
  Vec2 center() const {
    const double det = 4.0 * k_[0] * k_[2] - k_[1] * k_[1];
    require(std::abs(det) > 1e-14 * max_abs() * max_abs(), "Conic: no center");
    return {(-2.0 * k_[2] * k_[3] + k_[1] * k_[4]) / det,
            (-2.0 * k_[0] * k_[4] + k_[1] * k_[3]) / det};
  }

  Poly2 as_poly() const {
    Poly2 p(2);
    p.at(2, 0) = k_[0];
    p.at(1, 1) = k_[1];
    p.at(0, 2) = k_[2];
    p.at(1, 0) = k_[3];
    p.at(0, 1) = k_[4];
    p.at(0, 0) = k_[5];
    return p;
  }

  Conic scaled(double s) const {
    std::array<double, 6> out = k_;
    for (double& v : out) v *= s;
    return Conic(out);
  }

 private:
  double max_abs() const {
    double m = 0.0;
    for (double v : k_) m = std::max(m, std::abs(v));
    return m;
  }
  double det3() const {
    const double a = k_[0], b2 = k_[1] / 2, c = k_[2], d2 = k_[3] / 2,
                 e2 = k_[4] / 2, f = k_[5];
    return a * (c * f - e2 * e2) - b2 * (b2 * f - e2 * d2) +
           d2 * (b2 * e2 - c * d2);
  }

  std::array<double, 6> k_;
};

/// Rescales q to s*q with s > 0 after an optional sign flip so that
///   (i)  s*q is positive at the interior witness point, and
///   (ii) max( max over samples of |grad(s q)|, |hess(s q)| ) = 1.
/// The zero set is unchanged. Gradients of a quadratic are affine, so a
/// sample set whose hull covers the region of interest bounds the true max.
inline Conic normalize_conic(const Conic& q, std::span<const Vec2> samples,
                             Vec2 witness) {
  require(!samples.empty(), "normalize_conic: empty sample set");
  const double qw = q(witness);
  require(qw != 0.0, "normalize_conic: witness on the curve");
  double g = 0.0;
  for (Vec2 p : samples) g = std::max(g, norm(q.gradient(p)));
  const double m = std::max(g, q.hessian_norm());
  require(m > 0.0, "normalize_conic: vanishing gradient and Hessian");
  const double s = (qw > 0.0 ? 1.0 : -1.0) / m;
  return q.scaled(s);
}

/// Real intersections of the ray origin + t * direction (t >= 0) with the
/// zero set, ascending in t. One Newton polish step per root removes
/// cancellation near tangency.
inline std::vector<Vec2> intersect_ray_conic(const Conic& q, Vec2 origin,
                                             Vec2 direction) {
  require(norm(direction) > 0.0, "intersect_ray_conic: zero direction");
  const auto& k = q.coeffs();
  const double A = k[0] * direction.x * direction.x +
                   k[1] * direction.x * direction.y +
                   k[2] * direction.y * direction.y;
  const double B = 2.0 * k[0] * origin.x * direction.x +
                   k[1] * (origin.x * direction.y + origin.y * direction.x) +
                   2.0 * k[2] * origin.y * direction.y + k[3] * direction.x +
                   k[4] * direction.y;
  const double C = q(origin);

  std::vector<double> roots;
  const double scale = std::abs(A) + std::abs(B) + std::abs(C);
  if (std::abs(A) <= 1e-15 * scale) {
    if (std::abs(B) > 1e-15 * scale) roots.push_back(-C / B);
  } else {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double qq = -0.5 * (B + (B >= 0.0 ? sq : -sq));
      if (qq != 0.0) {
        roots.push_back(qq / A);
        roots.push_back(C / qq);
      } else {
        roots.push_back(0.0);  // B = 0, C = 0: double root at the origin
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<Vec2> out;
  for (double t : roots) {
    if (t < -tolerance::root_polish) continue;
    if (!out.empty()) {
      // Drop a duplicated tangency root.
      const double prev = dot(out.back() - origin, direction) /
                          dot(direction, direction);
      if (std::abs(t - prev) <= 1e-12 * (1.0 + std::abs(t))) continue;
    }
    // Newton in the ray parameter: dq/dt = grad q . direction.
    for (int it = 0; it < 2; ++it) {
      const Vec2 p = origin + t * direction;
      const double slope = dot(q.gradient(p), direction);
      if (slope != 0.0) t -= q(p) / slope;
    }
    if (t < 0.0) t = 0.0;
    out.push_back(origin + t * direction);
  }
  return out;
}

struct NormalTangent {
  Vec2 n;    // unit normal, points toward the q > 0 side
  Vec2 tau;  // n rotated by +90 degrees
};

/// Unit normal/tangent frame of the curve q = 0 at p. Requires a
/// nonvanishing gradient (true on arcs by assumption).
inline NormalTangent normal_tangent_at(const Conic& q, Vec2 p) {
  const Vec2 g = q.gradient(p);
  require(norm(g) > tolerance::unit_vector,
          "normal_tangent_at: singular curve point");
  const Vec2 n = normalized(g);
  return {n, rot90(n)};
}

/// Open arc of a conic with designated endpoints. Orientation flag says the
/// arc runs counter-clockwise (about the conic center) from start to end;
/// start == end stands for the full closed oval.
struct Arc {
  int conic = 0;
  Vec2 start, end;
  bool ccw = true;
  Vec2 witness;  // interior point of the domain near this arc
};

namespace detail {

/// Point on an oval at polar angle theta about its center.
inline Vec2 oval_point(const Conic& q, Vec2 center, double theta) {
  const Vec2 dir{std::cos(theta), std::sin(theta)};
  const auto hits = intersect_ray_conic(q, center, dir);
  require(!hits.empty(), "oval_point: ray misses the conic");
  return hits.front();
}

/// Angle range [t0, t1] (t1 > t0) swept by the arc about the conic center.
inline std::pair<double, double> oval_angle_range(const Conic& q, const Arc& a) {
  const Vec2 c = q.center();
  const double pi = std::acos(-1.0);
  double t0 = std::atan2(a.start.y - c.y, a.start.x - c.x);
  double t1 = std::atan2(a.end.y - c.y, a.end.x - c.x);
  if (a.ccw) {
    if (t1 <= t0 + 1e-12) t1 += 2.0 * pi;
  } else {
    if (t0 <= t1 + 1e-12) t0 += 2.0 * pi;
    std::swap(t0, t1);  // still sample increasing angle; caller reverses
  }
  return {t0, t1};
}

}  // namespace detail

/// 'count' points along the arc from start to end (inclusive), following the
/// arc orientation. Only ovals are supported here; pie-triangle local arc
/// sampling (any conic) lives with the mesh.
inline std::vector<Vec2> sample_arc(const Conic& q, const Arc& a, int count) {
  require(count >= 2, "sample_arc: need at least 2 points");
  require(q.is_oval(), "sample_arc: conic is not an oval");
  auto [t0, t1] = detail::oval_angle_range(q, a);
  const Vec2 c = q.center();
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = t0 + (t1 - t0) * i / (count - 1);
    pts.push_back(detail::oval_point(q, c, t));
  }
  if (!a.ccw) std::reverse(pts.begin(), pts.end());
  // Snap exact endpoints.
  pts.front() = a.start;
  pts.back() = a.end;
  return pts;
}

/// Bounded curvilinear polygonal domain: ordered arcs forming one closed
/// boundary loop, each on an (already normalized) conic with the sign
/// convention q > 0 inside near the arc.
struct Domain {
  std::vector<Conic> conics;
  std::vector<Arc> arcs;
  std::vector<double> corner_angles;  // derived at validation, radians

  const Conic& conic_of(const Arc& a) const {
    return conics[static_cast<std::size_t>(a.conic)];
  }
};

/// Checks arc chaining, endpoint incidence with the conics, nonvanishing
/// gradients along each arc, and corner angles in (0, 2 pi). Fills in the
/// derived corner angles. Throws on violation.
inline void validate_domain(Domain& d) {
  require(!d.arcs.empty(), "Domain: no arcs");
  const double pi = std::acos(-1.0);
  const std::size_t n = d.arcs.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Arc& a = d.arcs[j];
    require(a.conic >= 0 && a.conic < static_cast<int>(d.conics.size()),
            "Domain: arc references unknown conic");
    const Conic& q = d.conic_of(a);
    require(std::abs(q(a.start)) <= tolerance::on_curve &&
                std::abs(q(a.end)) <= tolerance::on_curve,
            "Domain: arc endpoint off its conic");
    const Arc& next = d.arcs[(j + 1) % n];
    require(dist(a.end, next.start) <= tolerance::on_curve,
            "Domain: arcs do not chain");
    for (Vec2 p : sample_arc(q, a, 50))
      require(norm(q.gradient(p)) > tolerance::unit_vector,
              "Domain: vanishing gradient on an arc");
    require(q(a.witness) > 0.0, "Domain: witness not on the q > 0 side");
  }
  d.corner_angles.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const Arc& incoming = d.arcs[(j + n - 1) % n];
    const Arc& outgoing = d.arcs[j];
    const Vec2 z = outgoing.start;
    // Boundary direction with the interior (q > 0) on the left.
    const auto frame_in = normal_tangent_at(d.conic_of(incoming), z);
    const auto frame_out = normal_tangent_at(d.conic_of(outgoing), z);
    const Vec2 t_in{frame_in.n.y, -frame_in.n.x};
    const Vec2 t_out{frame_out.n.y, -frame_out.n.x};
    const double turn = std::atan2(cross(t_in, t_out), dot(t_in, t_out));
    double omega = pi - turn;
    require(omega > 0.0 && omega < 2.0 * pi, "Domain: corner angle out of range");
    d.corner_angles[j] = omega;
  }
}

}  // namespace conic_argyris

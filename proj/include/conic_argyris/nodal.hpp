#pragma once

#include "conic_argyris/mesh.hpp"

namespace conic_argyris {

/// Point evaluation of a function or one of its derivatives up to order 2.
/// Either a partial-derivative spec D_x^ax D_y^ay, or a single directional
/// derivative along a unit vector (used for edge normals).
struct NodalFunctional {
  Vec2 site;
  bool directional = false;
  int ax = 0, ay = 0;
  Vec2 dir{};

  int degree() const { return directional ? 1 : ax + ay; }

  static NodalFunctional partial(Vec2 site, int ax, int ay) {
    require(ax >= 0 && ay >= 0 && ax + ay <= 2, "NodalFunctional: order > 2");
    return {site, false, ax, ay, {}};
  }
  static NodalFunctional normal(Vec2 site, Vec2 unit_dir) {
    require(std::abs(norm(unit_dir) - 1.0) <= tolerance::unit_vector,
            "NodalFunctional: direction not unit length");
    return {site, true, 0, 0, unit_dir};
  }
};

/// Hermite data of a C^2 function: value, gradient and (symmetric) Hessian
/// as callables; the Hessian is stored as (xx, xy, yy).
struct HermiteData {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
  std::function<std::array<double, 3>(Vec2)> hessian;
};

inline HermiteData hermite_from_poly(const Poly2& p) {
  const Poly2 px = diff(p, 1, 0), py = diff(p, 0, 1);
  const Poly2 pxx = diff(p, 2, 0), pxy = diff(p, 1, 1), pyy = diff(p, 0, 2);
  HermiteData h;
  h.value = [p](Vec2 z) { return eval(p, z); };
  h.gradient = [px, py](Vec2 z) { return Vec2{eval(px, z), eval(py, z)}; };
  h.hessian = [pxx, pxy, pyy](Vec2 z) {
    return std::array<double, 3>{eval(pxx, z), eval(pxy, z), eval(pyy, z)};
  };
  return h;
}

namespace detail {

inline void append_partials(std::vector<NodalFunctional>& out, Vec2 site,
                            int max_order) {
  static constexpr std::array<std::array<int, 2>, 6> kOrder = {
      {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}}};
  for (const auto& [ax, ay] : kOrder)
    if (ax + ay <= max_order) out.push_back(NodalFunctional::partial(site, ax, ay));
}

}  // namespace detail

/// Classical 21-condition quintic Hermite set on a straight triangle:
/// all partials of order <= 2 at the vertices plus the edge-normal
/// derivative at each edge midpoint. Normal orientations are the global
/// per-edge choice, shared across neighbors.
inline std::vector<NodalFunctional> nodal_set_ordinary(const Mesh& m, int t) {
  const auto& T = m.tri(t);
  require(T.cls == TriClass::ordinary, "nodal_set_ordinary: wrong class");
  const auto p = m.tri_points(t);
  std::vector<NodalFunctional> fns;
  fns.reserve(21);
  for (int i = 0; i < 3; ++i)
    detail::append_partials(fns, p[static_cast<std::size_t>(i)], 2);
  const std::array<std::pair<int, int>, 3> edges = {
      std::pair<int, int>{0, 1}, {1, 2}, {0, 2}};
  for (auto [i, j] : edges) {
    const Vec2 a = p[static_cast<std::size_t>(i)], b = p[static_cast<std::size_t>(j)];
    fns.push_back(NodalFunctional::normal(edge_points(a, b)[1], edge_perp(a, b)));
  }
  return fns;
}

/// 15-condition set on a pie triangle: order <= 2 at the interior vertex,
/// order <= 1 at the two boundary vertices and at the inscribed-disk center.
inline std::vector<NodalFunctional> nodal_set_pie(const Mesh& m, int t) {
  const auto& T = m.tri(t);
  require(T.cls == TriClass::pie, "nodal_set_pie: wrong class");
  require(m.disks.size() == m.triangles.size(), "nodal_set_pie: not finalized");
  const auto p = m.tri_points(t);
  std::vector<NodalFunctional> fns;
  fns.reserve(15);
  detail::append_partials(fns, p[0], 2);
  detail::append_partials(fns, p[1], 1);
  detail::append_partials(fns, p[2], 1);
  detail::append_partials(fns, m.disks[static_cast<std::size_t>(t)].center, 1);
  return fns;
}

/// 28-condition set on a buffer triangle, grouped as the barycenter value
/// plus per-edge families N1, N2, N3:
///   N1 (edge <v2,v3>): value at the midpoint, normals at the quarter
///       points, order <= 2 at v2 and v3;
///   N2 (edge <v1,v2>): value at the midpoint, normals at the quarter
///       points, order <= 2 at v1;
///   N3 (edge <v1,v3>): value at the midpoint, normals at the quarter points.
/// Here v1 = boundary vertex = local vertex 0.
struct BufferNodalSet {
  std::vector<NodalFunctional> fns;  // [0] barycenter, then N1, N2, N3
  std::array<std::pair<int, int>, 3> groups;  // index ranges of N1, N2, N3

  // Local edge (as a vertex-index pair of the triangle) carrying group g.
  static std::pair<int, int> edge_of_group(int g) {
    switch (g) {
      case 0: return {1, 2};
      case 1: return {0, 1};
      default: return {0, 2};
    }
  }
};

inline BufferNodalSet nodal_set_buffer(const Mesh& m, int t) {
  const auto& T = m.tri(t);
  require(T.cls == TriClass::buffer, "nodal_set_buffer: wrong class");
  const auto p = m.tri_points(t);
  BufferNodalSet set;
  auto& fns = set.fns;
  fns.reserve(28);
  fns.push_back(NodalFunctional::partial((p[0] + p[1] + p[2]) / 3.0, 0, 0));

  auto push_edge_family = [&](int i, int j) {
    const Vec2 a = p[static_cast<std::size_t>(i)], b = p[static_cast<std::size_t>(j)];
    const auto z = edge_points(a, b);
    const Vec2 n = edge_perp(a, b);
    fns.push_back(NodalFunctional::partial(z[1], 0, 0));
    fns.push_back(NodalFunctional::normal(z[0], n));
    fns.push_back(NodalFunctional::normal(z[2], n));
  };

  int begin = static_cast<int>(fns.size());
  push_edge_family(1, 2);
  detail::append_partials(fns, p[1], 2);
  detail::append_partials(fns, p[2], 2);
  set.groups[0] = {begin, static_cast<int>(fns.size())};

  begin = static_cast<int>(fns.size());
  push_edge_family(0, 1);
  detail::append_partials(fns, p[0], 2);
  set.groups[1] = {begin, static_cast<int>(fns.size())};

  begin = static_cast<int>(fns.size());
  push_edge_family(0, 2);
  set.groups[2] = {begin, static_cast<int>(fns.size())};
  return set;
}

inline double apply(const NodalFunctional& eta, const Poly2& f) {
  if (eta.directional) return eval(directional(f, eta.dir), eta.site);
  return eval(diff(f, eta.ax, eta.ay), eta.site);
}

inline double apply(const NodalFunctional& eta, const HermiteData& f) {
  if (eta.directional) return dot(eta.dir, f.gradient(eta.site));
  const int k = eta.ax + eta.ay;
  if (k == 0) return f.value(eta.site);
  if (k == 1) {
    const Vec2 g = f.gradient(eta.site);
    return eta.ax == 1 ? g.x : g.y;
  }
  const auto h = f.hessian(eta.site);
  if (eta.ax == 2) return h[0];
  if (eta.ay == 2) return h[2];
  return h[1];
}

enum class SiteKind { interior, boundary_vertex };

/// Nodal value of the quotient u / q. Away from the curve the quotient rule
/// applies directly. At a boundary vertex, where u and q both vanish, the
/// well-defined limit form is used instead:
///   w(v)        = du/dn / dq/dn,
///   dw/dn (v)   = (1/2) d2u/dn2 / dq/dn,
///   dw/dtau (v) = d2u/dn dtau / dq/dn,
/// with (n, tau) the curve frame at v, then rotated into the requested spec.
inline double quotient_values(const HermiteData& u, const Conic& q,
                              const NodalFunctional& eta, SiteKind kind) {
  const Vec2 z = eta.site;
  if (kind == SiteKind::interior) {
    const double qz = q(z);
    if (std::abs(qz) <= tolerance::on_curve)
      throw std::invalid_argument("quotient_values: interior site on the curve");
    const double w = u.value(z) / qz;
    const Vec2 gq = q.gradient(z);
    const Vec2 gu = u.gradient(z);
    const Vec2 gw = (gu - w * gq) / qz;
    if (!eta.directional && eta.ax + eta.ay == 0) return w;
    if (eta.directional) return dot(eta.dir, gw);
    if (eta.ax + eta.ay == 1) return eta.ax == 1 ? gw.x : gw.y;
    const auto hu = u.hessian(z);
    const auto hq = q.hessian();
    const std::array<double, 3> hw = {
        (hu[0] - w * hq[0] - 2.0 * gw.x * gq.x) / qz,
        (hu[1] - w * hq[1] - gw.x * gq.y - gw.y * gq.x) / qz,
        (hu[2] - w * hq[2] - 2.0 * gw.y * gq.y) / qz};
    if (eta.ax == 2) return hw[0];
    if (eta.ay == 2) return hw[2];
    return hw[1];
  }

  // Boundary vertex: the limit formulas, valid since u vanishes on the curve.
  require(std::abs(u.value(z)) <= tolerance::on_curve,
          "quotient_values: u does not vanish at the boundary vertex");
  const auto [nrm, tau] = normal_tangent_at(q, z);
  const double qn = dot(nrm, q.gradient(z));
  require(std::abs(qn) > tolerance::on_curve,
          "quotient_values: normal derivative of q vanishes");
  const Vec2 gu = u.gradient(z);
  const auto hu = u.hessian(z);
  auto quad_form = [&](Vec2 a, Vec2 b) {
    return a.x * (hu[0] * b.x + hu[1] * b.y) + a.y * (hu[1] * b.x + hu[2] * b.y);
  };
  const double w = dot(nrm, gu) / qn;
  const double wn = 0.5 * quad_form(nrm, nrm) / qn;
  const double wt = quad_form(nrm, tau) / qn;
  if (!eta.directional && eta.ax + eta.ay == 0) return w;
  if (eta.directional) return dot(eta.dir, nrm) * wn + dot(eta.dir, tau) * wt;
  require(eta.ax + eta.ay == 1,
          "quotient_values: second-order data at a boundary vertex");
  const Vec2 gw = wn * nrm + wt * tau;
  return eta.ax == 1 ? gw.x : gw.y;
}

}  // namespace conic_argyris

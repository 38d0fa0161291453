#pragma once

#include "conic_argyris/linalg.hpp"
#include "conic_argyris/nodal.hpp"

namespace conic_argyris {

/// Piecewise polynomial over a mesh: one piece per triangle, quintic on
/// ordinary triangles and sextic on pie and buffer triangles. Pie pieces
/// carry the factored form p * q_j, so they vanish identically on the arc.
struct Spline {
  std::vector<Poly2> pieces;
};

namespace detail {

inline NodalFunctional rescaled(const NodalFunctional& eta, Vec2 z0, double h) {
  NodalFunctional out = eta;
  out.site = (eta.site - z0) / h;
  return out;
}

/// Collocation matrix of the functionals against the monomials of P_degree
/// on the triangle rescaled to unit diameter. Row r carries h^{d(eta_r)}
/// times eta_r, which keeps all entries O(1).
inline Mat collocation_matrix(int degree, std::span<const NodalFunctional> fns,
                              Vec2 z0, double h) {
  const int dim = dim_p(degree);
  require(static_cast<int>(fns.size()) == dim,
          "collocation_matrix: functional count mismatch");
  Mat A(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const NodalFunctional eta = rescaled(fns[static_cast<std::size_t>(r)], z0, h);
    int col = 0;
    for (int k = 0; k <= degree; ++k)
      for (int i = k; i >= 0; --i, ++col) {
        Poly2 mono(degree);
        mono.at(i, k - i) = 1.0;
        A.at(r, col) = apply(eta, mono);
      }
  }
  return A;
}

/// Solves for the polynomial of the given degree matching rhs under the
/// functionals; assembled and solved in locally rescaled coordinates, the
/// result is mapped back to global monomials.
inline Poly2 solve_nodal_system(int degree,
                                std::span<const NodalFunctional> fns,
                                std::span<const double> rhs, Vec2 z0, double h) {
  Mat A = collocation_matrix(degree, fns, z0, h);
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t r = 0; r < b.size(); ++r)
    b[r] *= std::pow(h, fns[r].degree());
  std::vector<double> chat;
  try {
    chat = solve_linear(std::move(A), std::move(b));
  } catch (const std::runtime_error&) {
    throw std::runtime_error("local interpolation system is singular "
                             "(degenerate triangle)");
  }
  Poly2 phat(degree);
  phat.c = std::move(chat);
  return substitute_scaled(phat, z0, h);
}

inline Vec2 tri_centroid(const Mesh& m, int t) {
  const auto p = m.tri_points(t);
  return (p[0] + p[1] + p[2]) / 3.0;
}

inline void verify_residuals(std::span<const NodalFunctional> fns,
                             std::span<const double> rhs, const Poly2& p,
                             const char* what) {
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const double got = apply(fns[i], p);
    const double scale = std::max(1.0, std::abs(rhs[i]));
    if (std::abs(got - rhs[i]) > 1e-9 * scale)
      throw std::runtime_error(std::string(what) +
                               ": interpolation residual exceeds tolerance");
  }
}

}  // namespace detail

/// Scaled collocation matrix of triangle t's nodal set against its
/// polynomial space (P5 / P4 / P6); the smallest singular value is the
/// unisolvence diagnostic.
inline Mat collocation_matrix(const Mesh& m, int t) {
  const Vec2 z0 = detail::tri_centroid(m, t);
  const double h = m.straight_diameter(t);
  switch (m.tri(t).cls) {
    case TriClass::ordinary: {
      const auto fns = nodal_set_ordinary(m, t);
      return detail::collocation_matrix(5, fns, z0, h);
    }
    case TriClass::pie: {
      const auto fns = nodal_set_pie(m, t);
      return detail::collocation_matrix(4, fns, z0, h);
    }
    case TriClass::buffer: {
      const auto set = nodal_set_buffer(m, t);
      return detail::collocation_matrix(6, set.fns, z0, h);
    }
  }
  throw std::logic_error("collocation_matrix: bad class");
}

/// Quintic Argyris interpolant on an ordinary triangle.
inline Poly2 interp_ordinary(const Mesh& m, int t, const HermiteData& u) {
  require(m.tri(t).cls == TriClass::ordinary, "interp_ordinary: wrong class");
  const auto fns = nodal_set_ordinary(m, t);
  std::vector<double> rhs(fns.size());
  for (std::size_t i = 0; i < fns.size(); ++i) rhs[i] = apply(fns[i], u);
  const Poly2 p = detail::solve_nodal_system(
      5, fns, rhs, detail::tri_centroid(m, t), m.straight_diameter(t));
  detail::verify_residuals(fns, rhs, p, "interp_ordinary");
  return p;
}

/// Pie-triangle interpolant p * q with p in P4 matching the quotient data
/// u / q; the quotient is evaluated by the limit formulas at the two
/// boundary vertices and by the quotient rule elsewhere. Requires u to
/// vanish on the curved edge.
inline Poly2 interp_pie(const Mesh& m, int t, const HermiteData& u) {
  const auto& T = m.tri(t);
  require(T.cls == TriClass::pie, "interp_pie: wrong class");
  const Conic& q = m.conic_of_tri(t);
  for (const Vec2& z : curved_edge_points(m, t, 10))
    if (std::abs(u.value(z)) > 1e-8)
      throw std::invalid_argument(
          "interp_pie: u does not vanish on the curved edge");
  const auto fns = nodal_set_pie(m, t);
  std::vector<double> rhs(fns.size());
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const SiteKind kind = std::abs(q(fns[i].site)) <= tolerance::on_curve
                              ? SiteKind::boundary_vertex
                              : SiteKind::interior;
    rhs[i] = quotient_values(u, q, fns[i], kind);
  }
  const Poly2 p = detail::solve_nodal_system(
      4, fns, rhs, detail::tri_centroid(m, t), m.straight_diameter(t));
  detail::verify_residuals(fns, rhs, p, "interp_pie");
  return multiply(p, q.as_poly());
}

/// Sextic buffer interpolant: the barycenter value comes from u, everything
/// else is copied from the already-computed neighbor pieces, per edge group
/// (N1 across <v2,v3>, N2 across <v1,v2>, N3 across <v1,v3>).
inline Poly2 interp_buffer(const Mesh& m, int t, const HermiteData& u,
                           const std::array<const Poly2*, 3>& neighbor_pieces) {
  require(m.tri(t).cls == TriClass::buffer, "interp_buffer: wrong class");
  const auto set = nodal_set_buffer(m, t);
  std::vector<double> rhs(set.fns.size());
  rhs[0] = apply(set.fns[0], u);
  for (int g = 0; g < 3; ++g) {
    const Poly2* nb = neighbor_pieces[static_cast<std::size_t>(g)];
    require(nb != nullptr, "interp_buffer: missing neighbor piece");
    for (int i = set.groups[static_cast<std::size_t>(g)].first;
         i < set.groups[static_cast<std::size_t>(g)].second; ++i)
      rhs[static_cast<std::size_t>(i)] =
          apply(set.fns[static_cast<std::size_t>(i)], *nb);
  }
  const Poly2 p = detail::solve_nodal_system(
      6, set.fns, rhs, detail::tri_centroid(m, t), m.straight_diameter(t));
  detail::verify_residuals(set.fns, rhs, p, "interp_buffer");
  return p;
}

/// Global two-phase interpolation: ordinary and pie pieces first (mutually
/// independent), then buffer pieces from their neighbors' phase-1 output.
/// Requires u (with derivatives up to order 2) on the closed domain and
/// u = 0 on the boundary.
inline Spline interpolate(const Mesh& m, const HermiteData& u, int threads = 1) {
  for (std::size_t j = 0; j < m.domain.arcs.size(); ++j) {
    const Arc& a = m.domain.arcs[j];
    for (const Vec2& z : sample_arc(m.domain.conic_of(a), a, 10))
      if (std::abs(u.value(z)) > 1e-8)
        throw std::invalid_argument("interpolate: u does not vanish on the boundary");
  }
  const std::size_t nt = m.triangles.size();
  Spline s;
  s.pieces.assign(nt, Poly2(0));
  parallel_for(nt, threads, [&](std::size_t t) {
    const auto cls = m.tri(static_cast<int>(t)).cls;
    if (cls == TriClass::ordinary)
      s.pieces[t] = interp_ordinary(m, static_cast<int>(t), u);
    else if (cls == TriClass::pie)
      s.pieces[t] = interp_pie(m, static_cast<int>(t), u);
  });
  std::vector<int> buffers;
  for (std::size_t t = 0; t < nt; ++t)
    if (m.tri(static_cast<int>(t)).cls == TriClass::buffer)
      buffers.push_back(static_cast<int>(t));
  std::vector<Poly2> buffer_pieces(buffers.size(), Poly2(0));
  parallel_for(buffers.size(), threads, [&](std::size_t bi) {
    const int t = buffers[bi];
    const auto& T = m.tri(t);
    std::array<const Poly2*, 3> nb{};
    for (int g = 0; g < 3; ++g) {
      const auto [i, j] = BufferNodalSet::edge_of_group(g);
      const int other = m.neighbor_across(t, T.v[static_cast<std::size_t>(i)],
                                          T.v[static_cast<std::size_t>(j)]);
      require(other >= 0, "interpolate: buffer triangle has a boundary edge");
      require(m.tri(other).cls != TriClass::buffer,
              "interpolate: adjacent buffer triangles (condition F violated)");
      nb[static_cast<std::size_t>(g)] = &s.pieces[static_cast<std::size_t>(other)];
    }
    buffer_pieces[bi] = interp_buffer(m, t, u, nb);
  });
  for (std::size_t bi = 0; bi < buffers.size(); ++bi)
    s.pieces[static_cast<std::size_t>(buffers[bi])] = std::move(buffer_pieces[bi]);
  return s;
}

namespace detail {

inline bool contains_straight(const Mesh& m, int t, Vec2 z, double tol) {
  const auto p = m.tri_points(t);
  const double area2 = cross(p[1] - p[0], p[2] - p[0]);
  if (area2 == 0.0) return false;
  const double a = cross(z - p[0], p[2] - p[0]) / area2;
  const double b = cross(p[1] - p[0], z - p[0]) / area2;
  return a >= -tol && b >= -tol && a + b <= 1.0 + tol;
}

inline bool contains_pie(const Mesh& m, int t, Vec2 z, double tol) {
  const auto p = m.tri_points(t);
  const double area2 = cross(p[1] - p[0], p[2] - p[0]);
  if (area2 == 0.0) return false;
  const double a = cross(z - p[0], p[2] - p[0]) / area2;
  const double b = cross(p[1] - p[0], z - p[0]) / area2;
  if (a < -tol || b < -tol) return false;  // outside the vertex wedge
  const Conic& q = m.conic_of_tri(t);
  if (q(z) < -1e-9) return false;  // beyond the arc
  // Between the chord and the arc (or inside the chord triangle): bound the
  // signed chord offset by the largest arc sagitta.
  const Vec2 c1 = p[1], c2 = p[2];
  const double len = dist(c1, c2);
  const double d = cross(c2 - c1, z - c1) / len;          // signed offset
  const double d0 = cross(c2 - c1, p[0] - c1) / len;      // interior side
  const double toward_arc = d0 >= 0.0 ? -d : d;           // >0 past the chord
  double sagitta = 0.0;
  for (const Vec2& g : curved_edge_points(m, t, 17)) {
    const double dg = cross(c2 - c1, g - c1) / len;
    sagitta = std::max(sagitta, d0 >= 0.0 ? -dg : dg);
  }
  const double h = m.straight_diameter(t);
  return toward_arc <= sagitta + tol * h;
}

}  // namespace detail

/// Index of a triangle containing z, scanning in ascending id order so ties
/// on shared edges resolve to the lowest id; -1 if z lies outside.
inline int locate_point(const Mesh& m, Vec2 z) {
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    if (m.tri(t).cls == TriClass::pie) {
      if (detail::contains_pie(m, t, z, 1e-9)) return t;
    } else if (detail::contains_straight(m, t, z, 1e-9)) {
      return t;
    }
  }
  return -1;
}

/// D^alpha of the containing piece at z; |alpha| <= 2.
inline double eval_spline(const Mesh& m, const Spline& s, Vec2 z, int ax = 0,
                          int ay = 0) {
  require(ax >= 0 && ay >= 0 && ax + ay <= 2, "eval_spline: |alpha| > 2");
  require(s.pieces.size() == m.triangles.size(), "eval_spline: size mismatch");
  const int t = locate_point(m, z);
  if (t < 0) throw std::domain_error("eval_spline: point outside the domain");
  return eval(diff(s.pieces[static_cast<std::size_t>(t)], ax, ay), z);
}

/// Residuals of the global interpolation conditions, all relative to
/// max(1, |eta u|):
///   - order <= 2 partials at every vertex, against every incident piece,
///   - edge-normal derivative at midpoints of ordinary-triangle edges,
///   - order <= 1 partials at pie disk centers,
///   - value at buffer barycenters.
struct ConditionResiduals {
  double vertex_partials = 0.0;
  double edge_normals = 0.0;
  double pie_centers = 0.0;
  double buffer_centers = 0.0;

  double max_residual() const {
    return std::max({vertex_partials, edge_normals, pie_centers, buffer_centers});
  }
};

inline ConditionResiduals check_interpolation_conditions(const Mesh& m,
                                                         const Spline& s,
                                                         const HermiteData& u) {
  ConditionResiduals r;
  auto rel = [](double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
  };
  for (int t = 0; t < static_cast<int>(m.triangles.size()); ++t) {
    const auto& T = m.tri(t);
    const Poly2& piece = s.pieces[static_cast<std::size_t>(t)];
    for (int i = 0; i < 3; ++i) {
      const Vec2 v = m.point(T.v[static_cast<std::size_t>(i)]);
      for (int ax = 0; ax <= 2; ++ax)
        for (int ay = 0; ax + ay <= 2; ++ay) {
          const auto eta = NodalFunctional::partial(v, ax, ay);
          r.vertex_partials =
              std::max(r.vertex_partials, rel(apply(eta, piece), apply(eta, u)));
        }
    }
    if (T.cls == TriClass::ordinary) {
      const auto p = m.tri_points(t);
      const std::array<std::pair<int, int>, 3> edges = {
          std::pair<int, int>{0, 1}, {1, 2}, {0, 2}};
      for (auto [i, j] : edges) {
        const Vec2 a = p[static_cast<std::size_t>(i)],
                   b = p[static_cast<std::size_t>(j)];
        const auto eta =
            NodalFunctional::normal(edge_points(a, b)[1], edge_perp(a, b));
        r.edge_normals =
            std::max(r.edge_normals, rel(apply(eta, piece), apply(eta, u)));
      }
    } else if (T.cls == TriClass::pie) {
      const Vec2 c = m.disks[static_cast<std::size_t>(t)].center;
      for (int ax = 0; ax <= 1; ++ax)
        for (int ay = 0; ax + ay <= 1; ++ay) {
          const auto eta = NodalFunctional::partial(c, ax, ay);
          r.pie_centers =
              std::max(r.pie_centers, rel(apply(eta, piece), apply(eta, u)));
        }
    } else {
      const auto p = m.tri_points(t);
      const auto eta = NodalFunctional::partial((p[0] + p[1] + p[2]) / 3.0, 0, 0);
      r.buffer_centers =
          std::max(r.buffer_centers, rel(apply(eta, piece), apply(eta, u)));
    }
  }
  return r;
}

}  // namespace conic_argyris

#pragma once

#include <algorithm>
#include <span>

#include "conic_argyris/core.hpp"

namespace conic_argyris {

/// Dimension of the space of bivariate polynomials of total degree <= d.
inline int dim_p(int d) {
  require(d >= 0, "dim_p: negative degree");
  return (d + 1) * (d + 2) / 2;
}

/// Monomial index in graded-lexicographic order, x-major inside a grade:
///   1; x, y; x^2, xy, y^2; x^3, x^2 y, ...
/// so x^i y^j with k = i + j lives at k(k+1)/2 + (k - i).
inline int monomial_index(int i, int j) {
  const int k = i + j;
  return k * (k + 1) / 2 + (k - i);
}

constexpr int kMaxDegree = 6;

/// Univariate polynomial in a segment parameter t, coefficients by power.
struct Poly1 {
  int degree = 0;
  std::vector<double> c;  // size degree + 1

  explicit Poly1(int d = 0) : degree(d), c(static_cast<std::size_t>(d) + 1, 0.0) {}
};

inline double eval(const Poly1& p, double t) {
  double acc = 0.0;
  for (int i = p.degree; i >= 0; --i) acc = acc * t + p.c[static_cast<std::size_t>(i)];
  return acc;
}

inline Poly1 derivative(const Poly1& p) {
  Poly1 out(std::max(p.degree - 1, 0));
  for (int i = 1; i <= p.degree; ++i)
    out.c[static_cast<std::size_t>(i - 1)] = i * p.c[static_cast<std::size_t>(i)];
  return out;
}

inline Poly1 multiply(const Poly1& p, const Poly1& q) {
  Poly1 out(p.degree + q.degree);
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; j <= q.degree; ++j)
      out.c[static_cast<std::size_t>(i + j)] +=
          p.c[static_cast<std::size_t>(i)] * q.c[static_cast<std::size_t>(j)];
  return out;
}

/// Dense bivariate polynomial of total degree <= 6 in the graded-lex
/// monomial basis. The degree field is a declared bound; trailing zero
/// coefficients are allowed.
struct Poly2 {
  int degree = 0;
  std::vector<double> c;  // size dim_p(degree)

  explicit Poly2(int d = 0) : degree(d), c(static_cast<std::size_t>(dim_p(d)), 0.0) {
    require(d <= kMaxDegree, "Poly2: degree exceeds 6");
  }

  double coeff(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree) return 0.0;
    return c[static_cast<std::size_t>(monomial_index(i, j))];
  }
  double& at(int i, int j) {
    return c[static_cast<std::size_t>(monomial_index(i, j))];
  }
};

/// Horner evaluation: p(x, y) = sum_i x^i g_i(y) with each g_i evaluated
/// by Horner in y.
inline double eval(const Poly2& p, Vec2 z) {
  double acc = 0.0;
  for (int i = p.degree; i >= 0; --i) {
    double gi = 0.0;
    for (int j = p.degree - i; j >= 0; --j) gi = gi * z.y + p.coeff(i, j);
    acc = acc * z.x + gi;
  }
  return acc;
}

/// Exact coefficient-level partial derivative d^ax/dx^ax d^ay/dy^ay.
inline Poly2 diff(const Poly2& p, int ax, int ay) {
  require(ax >= 0 && ay >= 0 && ax + ay <= kMaxDegree, "diff: order out of range");
  Poly2 out(std::max(p.degree - ax - ay, 0));
  for (int i = ax; i + 0 <= p.degree; ++i) {
    for (int j = ay; i + j <= p.degree; ++j) {
      double f = 1.0;
      for (int r = 0; r < ax; ++r) f *= i - r;
      for (int r = 0; r < ay; ++r) f *= j - r;
      const double v = f * p.coeff(i, j);
      if (i - ax + (j - ay) <= out.degree) out.at(i - ax, j - ay) += v;
    }
  }
  return out;
}

inline Poly2 axpy(double a, const Poly2& p, const Poly2& q) {
  Poly2 out(std::max(p.degree, q.degree));
  for (int i = 0; i <= out.degree; ++i)
    for (int j = 0; i + j <= out.degree; ++j)
      out.at(i, j) = a * p.coeff(i, j) + q.coeff(i, j);
  return out;
}

inline Poly2 operator+(const Poly2& p, const Poly2& q) { return axpy(1.0, p, q); }
inline Poly2 operator-(const Poly2& p, const Poly2& q) { return axpy(-1.0, q, p); }
inline Poly2 operator*(double s, const Poly2& p) {
  Poly2 out = p;
  for (double& v : out.c) v *= s;
  return out;
}

/// Single directional derivative D_tau p = tau_x D_x p + tau_y D_y p.
inline Poly2 directional(const Poly2& p, Vec2 tau) {
  return axpy(tau.x, diff(p, 1, 0), tau.y * diff(p, 0, 1));
}

/// Applies D_tau once per listed direction (repeats allowed), then
/// evaluates at z. Directions must be unit vectors.
inline double dir_deriv(const Poly2& p, std::span<const Vec2> dirs, Vec2 z) {
  require(dirs.size() <= kMaxDegree, "dir_deriv: total order exceeds 6");
  Poly2 cur = p;
  for (Vec2 tau : dirs) {
    require(std::abs(norm(tau) - 1.0) <= tolerance::unit_vector,
            "dir_deriv: direction is not unit length");
    cur = directional(cur, tau);
  }
  return eval(cur, z);
}

inline double dir_deriv(const Poly2& p, std::initializer_list<Vec2> dirs, Vec2 z) {
  return dir_deriv(p, std::span<const Vec2>(dirs.begin(), dirs.size()), z);
}

/// Exact product. The degree bound 6 is a hard cap of the representation.
inline Poly2 multiply(const Poly2& p, const Poly2& q) {
  require(p.degree + q.degree <= kMaxDegree, "multiply: degree overflow");
  Poly2 out(p.degree + q.degree);
  for (int i1 = 0; i1 <= p.degree; ++i1)
    for (int j1 = 0; i1 + j1 <= p.degree; ++j1) {
      const double c1 = p.coeff(i1, j1);
      if (c1 == 0.0) continue;
      for (int i2 = 0; i2 <= q.degree; ++i2)
        for (int j2 = 0; i2 + j2 <= q.degree; ++j2)
          out.at(i1 + i2, j1 + j2) += c1 * q.coeff(i2, j2);
    }
  return out;
}

/// Restriction g(t) = p(v1 + t (v2 - v1)), t in [0, 1].
inline Poly1 restrict_to_segment(const Poly2& p, Vec2 v1, Vec2 v2) {
  require(!(v1 == v2), "restrict_to_segment: coincident endpoints");
  Poly1 lx(1), ly(1);
  lx.c = {v1.x, v2.x - v1.x};
  ly.c = {v1.y, v2.y - v1.y};
  // Power tables of the two linear substitutions.
  std::vector<Poly1> px(static_cast<std::size_t>(p.degree) + 1, Poly1(0)),
      py(static_cast<std::size_t>(p.degree) + 1, Poly1(0));
  px[0].c = {1.0};
  py[0].c = {1.0};
  for (int k = 1; k <= p.degree; ++k) {
    px[static_cast<std::size_t>(k)] = multiply(px[static_cast<std::size_t>(k - 1)], lx);
    py[static_cast<std::size_t>(k)] = multiply(py[static_cast<std::size_t>(k - 1)], ly);
  }
  Poly1 out(p.degree);
  for (int i = 0; i <= p.degree; ++i)
    for (int j = 0; i + j <= p.degree; ++j) {
      const double cij = p.coeff(i, j);
      if (cij == 0.0) continue;
      const Poly1 term = multiply(px[static_cast<std::size_t>(i)], py[static_cast<std::size_t>(j)]);
      for (int k = 0; k <= term.degree; ++k)
        out.c[static_cast<std::size_t>(k)] += cij * term.c[static_cast<std::size_t>(k)];
    }
  return out;
}

/// Pull-back through the scaling map: returns p with p(z) = phat((z - z0)/h).
/// Used to carry local-solve results back to global coordinates.
inline Poly2 substitute_scaled(const Poly2& phat, Vec2 z0, double h) {
  require(h > 0.0, "substitute_scaled: nonpositive scale");
  Poly2 lx(1), ly(1);
  lx.at(0, 0) = -z0.x / h;
  lx.at(1, 0) = 1.0 / h;
  ly.at(0, 0) = -z0.y / h;
  ly.at(0, 1) = 1.0 / h;
  std::vector<Poly2> px, py;
  px.reserve(static_cast<std::size_t>(phat.degree) + 1);
  py.reserve(static_cast<std::size_t>(phat.degree) + 1);
  px.emplace_back(0);
  py.emplace_back(0);
  px[0].at(0, 0) = 1.0;
  py[0].at(0, 0) = 1.0;
  for (int k = 1; k <= phat.degree; ++k) {
    px.push_back(multiply(px[static_cast<std::size_t>(k - 1)], lx));
    py.push_back(multiply(py[static_cast<std::size_t>(k - 1)], ly));
  }
  Poly2 out(phat.degree);
  for (int i = 0; i <= phat.degree; ++i)
    for (int j = 0; i + j <= phat.degree; ++j) {
      const double cij = phat.coeff(i, j);
      if (cij == 0.0) continue;
      const Poly2 term = multiply(px[static_cast<std::size_t>(i)], py[static_cast<std::size_t>(j)]);
      for (int a = 0; a <= term.degree; ++a)
        for (int b = 0; a + b <= term.degree; ++b)
          out.at(a, b) += cij * term.coeff(a, b);
    }
  return out;
}

inline double max_abs_coeff(const Poly2& p) {
  double m = 0.0;
  for (double v : p.c) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace conic_argyris

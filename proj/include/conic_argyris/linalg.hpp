#pragma once

#include "conic_argyris/core.hpp"

namespace conic_argyris {

/// Row-major dense matrix, just big enough for the local nodal systems
/// (at most 28 x 28).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

/// Gaussian elimination with partial pivoting. Throws on a numerically
/// singular pivot.
inline std::vector<double> solve_linear(Mat A, std::vector<double> b) {
  require(A.rows == A.cols, "solve_linear: matrix not square");
  require(static_cast<int>(b.size()) == A.rows, "solve_linear: size mismatch");
  const int n = A.rows;
  double scale = 0.0;
  for (double v : A.a) scale = std::max(scale, std::abs(v));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A.at(i, k)) > std::abs(A.at(piv, k))) piv = i;
    if (piv != k) {
      for (int j = k; j < n; ++j) std::swap(A.at(piv, j), A.at(k, j));
      std::swap(b[static_cast<std::size_t>(piv)], b[static_cast<std::size_t>(k)]);
    }
    const double p = A.at(k, k);
    if (std::abs(p) <= 1e-14 * scale)
      throw std::runtime_error("solve_linear: singular system");
    for (int i = k + 1; i < n; ++i) {
      const double m = A.at(i, k) / p;
      if (m == 0.0) continue;
      A.at(i, k) = 0.0;
      for (int j = k + 1; j < n; ++j) A.at(i, j) -= m * A.at(k, j);
      b[static_cast<std::size_t>(i)] -= m * b[static_cast<std::size_t>(k)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) s -= A.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = s / A.at(i, i);
  }
  return x;
}

/// Smallest singular value via cyclic Jacobi on A^T A. Absolute accuracy is
/// on the order of eps * sigma_max^2 under the square root, which is ample
/// for unisolvence thresholds near 1e-8.
inline double smallest_singular_value(const Mat& A) {
  const int n = A.cols;
  Mat B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int r = 0; r < A.rows; ++r) s += A.at(r, i) * A.at(r, j);
      B.at(i, j) = s;
      B.at(j, i) = s;
    }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += std::abs(B.at(i, i));
      for (int j = i + 1; j < n; ++j) off += std::abs(B.at(i, j));
    }
    if (off <= 1e-18 * (diag + off)) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = B.at(p, q);
        if (apq == 0.0) continue;
        const double theta = (B.at(q, q) - B.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double bip = B.at(i, p), biq = B.at(i, q);
          B.at(i, p) = c * bip - s * biq;
          B.at(i, q) = s * bip + c * biq;
        }
        for (int i = 0; i < n; ++i) {
          const double bpi = B.at(p, i), bqi = B.at(q, i);
          B.at(p, i) = c * bpi - s * bqi;
          B.at(q, i) = s * bpi + c * bqi;
        }
      }
  }
  double lo = B.at(0, 0);
  for (int i = 1; i < n; ++i) lo = std::min(lo, B.at(i, i));
  return std::sqrt(std::max(lo, 0.0));
}

}  // namespace conic_argyris

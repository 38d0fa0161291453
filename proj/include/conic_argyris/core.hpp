#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace conic_argyris {

/// 2-D point / vector with double coordinates.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Rotation by +90 degrees (counter-clockwise).
inline Vec2 rot90(Vec2 a) { return {-a.y, a.x}; }

inline Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
  return a / n;
}

/// Lexicographic order on coordinates; fixes global edge orientations.
inline bool lex_less(Vec2 a, Vec2 b) {
  return a.x != b.x ? a.x < b.x : a.y < b.y;
}

// Tolerance policy. Algebraic identities are tested at 1e-8 relative,
// which absorbs local-system conditioning of order 1e4 times machine
// epsilon; geometric on-curve checks sit two orders tighter.
namespace tolerance {
inline constexpr double algebraic = 1e-8;        // solver-level identities
inline constexpr double on_curve = 1e-10;        // point lies on a conic
inline constexpr double root_polish = 1e-12;     // polished intersections
inline constexpr double lens = 1e-11;            // curved quadrature stop
inline constexpr double unisolvence = 1e-8;      // smallest singular value
inline constexpr double boundary_trace = 1e-9;   // spline trace on arcs
inline constexpr double unit_vector = 1e-12;     // directional specs
}  // namespace tolerance

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Runs fn(i) for i in [0, n). With threads <= 1 this is a plain loop;
/// otherwise a static partition over worker threads. Callers keep runs
/// deterministic by writing to disjoint slots and reducing in index order.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace conic_argyris

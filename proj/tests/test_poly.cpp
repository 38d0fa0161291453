#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "conic_argyris/poly.hpp"

using namespace conic_argyris;

namespace {

Poly2 random_poly(int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Poly2 p(degree);
  for (double& c : p.c) c = dist(rng);
  return p;
}

}  // namespace

TEST_CASE("dim_p counts the polynomial spaces") {
  CHECK(dim_p(4) == 15);
  CHECK(dim_p(5) == 21);
  CHECK(dim_p(6) == 28);
  CHECK(dim_p(0) == 1);
}

TEST_CASE("monomial index is graded-lex, x-major") {
  CHECK(monomial_index(0, 0) == 0);
  CHECK(monomial_index(1, 0) == 1);
  CHECK(monomial_index(0, 1) == 2);
  CHECK(monomial_index(2, 0) == 3);
  CHECK(monomial_index(1, 1) == 4);
  CHECK(monomial_index(0, 2) == 5);
  CHECK(monomial_index(6, 0) == 21);
}

TEST_CASE("eval") {
  Poly2 p(3);
  p.at(2, 1) = 1.0;  // x^2 y
  CHECK(eval(p, {2.0, 3.0}) == Catch::Approx(12.0));

  Poly2 one(0);
  one.at(0, 0) = 1.0;
  CHECK(eval(one, {123.0, -7.5}) == 1.0);

  Poly2 q(5);
  q.at(5, 0) = 1.0;
  q.at(0, 5) = 1.0;
  CHECK(eval(q, {1.0, 1.0}) == Catch::Approx(2.0));
}

TEST_CASE("diff") {
  Poly2 p(3);
  p.at(2, 1) = 1.0;  // x^2 y
  const Poly2 dxy = diff(p, 1, 1);
  CHECK(dxy.coeff(1, 0) == Catch::Approx(2.0));  // 2x
  CHECK(max_abs_coeff(diff(p, 0, 3)) == 0.0);

  Poly2 x4(4);
  x4.at(4, 0) = 1.0;
  const Poly2 d2 = diff(x4, 2, 0);
  CHECK(d2.coeff(2, 0) == Catch::Approx(12.0));
}

TEST_CASE("diff commutes") {
  std::mt19937 rng(7);
  const Poly2 p = random_poly(6, rng);
  const Poly2 a = diff(diff(p, 1, 0), 0, 1);
  const Poly2 b = diff(p, 1, 1);
  for (int i = 0; i <= a.degree; ++i)
    for (int j = 0; i + j <= a.degree; ++j)
      CHECK(a.coeff(i, j) == b.coeff(i, j));
}

TEST_CASE("dir_deriv") {
  Poly2 xy(2);
  xy.at(1, 1) = 1.0;
  CHECK(dir_deriv(xy, {Vec2{1.0, 0.0}}, {0.0, 2.0}) == Catch::Approx(2.0));

  Poly2 x2(2);
  x2.at(2, 0) = 1.0;
  CHECK(dir_deriv(x2, {Vec2{1.0, 0.0}, Vec2{1.0, 0.0}}, {3.7, -2.0}) ==
        Catch::Approx(2.0));

  // Second derivative along the diagonal expands through the mixed terms:
  // tau1^2 Dxx + 2 tau1 tau2 Dxy + tau2^2 Dyy.
  Poly2 r2(2);
  r2.at(2, 0) = 1.0;
  r2.at(0, 2) = 1.0;
  const double s = std::sqrt(0.5);
  CHECK(dir_deriv(r2, {Vec2{s, s}, Vec2{s, s}}, {0.0, 0.0}) ==
        Catch::Approx(2.0));

  CHECK_THROWS_AS(dir_deriv(xy, {Vec2{1.0, 1.0}}, {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("dir_deriv matches plain partials") {
  std::mt19937 rng(11);
  const Poly2 p = random_poly(5, rng);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec2 z{dist(rng), dist(rng)};
    CHECK(dir_deriv(p, {Vec2{1.0, 0.0}}, z) ==
          Catch::Approx(eval(diff(p, 1, 0), z)).margin(1e-13));
  }
}

TEST_CASE("multiply") {
  std::mt19937 rng(3);
  const Poly2 p = random_poly(4, rng);

  Poly2 one(0);
  one.at(0, 0) = 1.0;
  const Poly2 same = multiply(one, p);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) CHECK(same.coeff(i, j) == p.coeff(i, j));

  Poly2 x(1), y(1);
  x.at(1, 0) = 1.0;
  y.at(0, 1) = 1.0;
  const Poly2 xy = multiply(x, y);
  CHECK(xy.coeff(1, 1) == 1.0);
  CHECK(xy.degree == 2);

  // Pointwise oracle: eval of the product equals the product of evals.
  Poly2 conic(2);
  conic.at(0, 0) = 0.5;
  conic.at(2, 0) = -0.5;
  conic.at(0, 2) = -0.5;
  const Poly2 prod = multiply(p, conic);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 z{dist(rng), dist(rng)};
    CHECK(eval(prod, z) ==
          Catch::Approx(eval(p, z) * eval(conic, z)).margin(1e-12));
  }

  CHECK_THROWS_AS(multiply(random_poly(4, rng), random_poly(3, rng)),
                  std::invalid_argument);
}

TEST_CASE("Leibniz rule") {
  std::mt19937 rng(17);
  const Poly2 p = random_poly(4, rng);
  const Poly2 q = random_poly(2, rng);
  const Poly2 lhs = diff(multiply(p, q), 1, 0);
  const Poly2 rhs = multiply(diff(p, 1, 0), q) + multiply(p, diff(q, 1, 0));
  for (int i = 0; i <= 6; ++i)
    for (int j = 0; i + j <= 6; ++j)
      CHECK(lhs.coeff(i, j) == Catch::Approx(rhs.coeff(i, j)).margin(1e-12));
}

TEST_CASE("restrict_to_segment") {
  Poly2 x2(2);
  x2.at(2, 0) = 1.0;
  const Poly1 t2 = restrict_to_segment(x2, {0.0, 0.0}, {1.0, 0.0});
  CHECK(t2.c[0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(t2.c[1] == Catch::Approx(0.0).margin(1e-15));
  CHECK(t2.c[2] == Catch::Approx(1.0));

  Poly2 y(1);
  y.at(0, 1) = 1.0;
  const Poly1 zero = restrict_to_segment(y, {0.0, 0.0}, {1.0, 0.0});
  for (double c : zero.c) CHECK(c == 0.0);

  Poly2 xpy(1);
  xpy.at(1, 0) = 1.0;
  xpy.at(0, 1) = 1.0;
  const Poly1 one = restrict_to_segment(xpy, {0.0, 1.0}, {1.0, 0.0});
  CHECK(eval(one, 0.3) == Catch::Approx(1.0));
  CHECK(one.c[0] == Catch::Approx(1.0));

  CHECK_THROWS_AS(restrict_to_segment(x2, {1.0, 2.0}, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("restriction endpoints and products") {
  std::mt19937 rng(23);
  const Poly2 p = random_poly(4, rng);
  const Poly2 q = random_poly(2, rng);
  const Vec2 v1{-0.3, 0.8}, v2{1.1, -0.4};
  const Poly1 rp = restrict_to_segment(p, v1, v2);
  CHECK(eval(rp, 0.0) == Catch::Approx(eval(p, v1)).margin(1e-12));
  CHECK(eval(rp, 1.0) == Catch::Approx(eval(p, v2)).margin(1e-12));

  // Restriction of a product equals the product of restrictions.
  const Poly1 rq = restrict_to_segment(q, v1, v2);
  const Poly1 rprod = restrict_to_segment(multiply(p, q), v1, v2);
  const Poly1 prodr = multiply(rp, rq);
  for (int k = 0; k <= rprod.degree; ++k)
    CHECK(rprod.c[static_cast<std::size_t>(k)] ==
          Catch::Approx(prodr.c[static_cast<std::size_t>(k)]).margin(1e-12));
}

TEST_CASE("substitute_scaled inverts the local rescaling") {
  std::mt19937 rng(29);
  const Poly2 phat = random_poly(6, rng);
  const Vec2 z0{0.4, -1.2};
  const double h = 0.37;
  const Poly2 p = substitute_scaled(phat, z0, h);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 z{dist(rng), dist(rng)};
    CHECK(eval(p, z) ==
          Catch::Approx(eval(phat, (z - z0) / h)).margin(1e-10));
  }
}

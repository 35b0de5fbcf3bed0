#include <random>

#include "doctest.h"
#include "ncreeb/error.hpp"
#include "ncreeb/poly.hpp"

using namespace ncreeb;

namespace {

Polynomial var(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }
Polynomial cst(std::size_t n, long c) { return Polynomial::constant(n, Rational(c)); }

Polynomial random_poly(std::mt19937& rng, std::size_t n) {
  Polynomial::TermMap t;
  for (int k = 0; k < 6; ++k) {
    Exponents e(n, 0);
    unsigned budget = rng() % 5;
    for (std::size_t i = 0; i < n && budget; ++i) {
      const unsigned d = rng() % (budget + 1);
      e[i] = d;
      budget -= d;
    }
    t[e] += Rational(static_cast<long>(rng() % 19) - 9, 1 + rng() % 4);
  }
  return Polynomial(n, t);
}

}  // namespace

TEST_CASE("evaluation") {
  const auto p = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1);
  CHECK(p.eval(make_point({3, 4})) == 25);
  CHECK(Polynomial(2, {}).eval(make_point({7, -2})) == 0);
  CHECK(Polynomial(2, {}).is_zero());
  const auto outer = sphere_poly(make_point({1, 0}), Rational(10), 2, Orientation::InsidePositive);
  CHECK(outer.eval(make_point({1, 10})) == 0);
  CHECK_THROWS_AS(p.eval(make_point({1, 2, 3})), DimensionError);
}

TEST_CASE("zero coefficients are never stored") {
  auto p = var(2, 0) - var(2, 0);
  CHECK(p.is_zero());
  CHECK(Polynomial(2, {{Exponents{1, 0}, Rational(0)}}).is_zero());
}

TEST_CASE("gradient") {
  auto p = cst(4, 1);
  for (std::size_t i = 0; i < 4; ++i) p -= var(4, i) * var(4, i);
  CHECK(p.gradient(make_point({0, 0, 1, 0})) == std::vector<Rational>{0, 0, -2, 0});
  CHECK(var(3, 0).gradient(make_point({5, 6, 7})) == std::vector<Rational>{1, 0, 0});
  const auto c = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - cst(2, 1);
  CHECK(c.gradient(make_point({1, 0})) == std::vector<Rational>{2, 0});
}

TEST_CASE("gradient agrees with finite differences") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_poly(rng, 3);
    std::vector<double> x{std::uniform_real_distribution<>(-2, 2)(rng), std::uniform_real_distribution<>(-2, 2)(rng),
                          std::uniform_real_distribution<>(-2, 2)(rng)};
    const auto g = p.gradient(std::span<const double>(x));
    for (std::size_t i = 0; i < 3; ++i) {
      const double h = 1e-5;
      auto a = x, b = x;
      a[i] += h;
      b[i] -= h;
      const double fd = (p.eval(std::span<const double>(a)) - p.eval(std::span<const double>(b))) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-6 * std::max(1.0, std::abs(g[i])));
    }
    // exact derivative of each monomial
    RationalPoint q{Rational(1, 3), Rational(-2), Rational(5, 7)};
    const auto ge = p.gradient(q);
    for (std::size_t i = 0; i < 3; ++i) CHECK(ge[i] == p.derivative(i).eval(q));
  }
}

TEST_CASE("sphere orientation") {
  const auto in = sphere_poly(make_point({0, 0}), Rational(1), 2, Orientation::InsidePositive);
  CHECK(in == cst(2, 1) - var(2, 0) * var(2, 0) - var(2, 1) * var(2, 1));
  const auto big = sphere_poly(make_point({1, 0}), Rational(10), 2, Orientation::InsidePositive);
  CHECK(big.eval(make_point({-9, 0})) == 0);
  const auto hole = sphere_poly(make_point({2, 0}), Rational(1), 2, Orientation::OutsidePositive);
  CHECK(hole.eval(make_point({2, 0})) == -1);
  CHECK_THROWS_AS(sphere_poly(make_point({0, 0}), Rational(0), 2, Orientation::InsidePositive), InvalidArgument);
  std::mt19937 rng(3);
  for (int k = 0; k < 200; ++k) {
    const RationalPoint x{Rational(static_cast<long>(rng() % 41) - 20, 10), Rational(static_cast<long>(rng() % 41) - 20, 10)};
    const Rational r2 = x[0] * x[0] + x[1] * x[1];
    CHECK(sgn(in.eval(x)) == cmp(Rational(1), r2));
  }
  const auto form = as_circle(hole);
  REQUIRE(form);
  CHECK(form->orientation == Orientation::OutsidePositive);
  CHECK(*form->radius == 1);
  CHECK(form->center_x == 2);
}

TEST_CASE("substitute_coords") {
  const auto p = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - cst(2, 1);
  const std::vector<std::optional<std::size_t>> m{0, 2};
  const auto q = p.substitute_coords(m, 3);
  CHECK(q == var(3, 0) * var(3, 0) + var(3, 2) * var(3, 2) - cst(3, 1));
  const std::vector<std::optional<std::size_t>> id{0, 1};
  CHECK(p.substitute_coords(id, 2) == p);
  const auto lin = var(1, 0) - cst(1, 3);
  const std::vector<std::optional<std::size_t>> one{0};
  CHECK(lin.substitute_coords(one, 2) == var(2, 0) - cst(2, 3));
  const std::vector<std::optional<std::size_t>> drop{0, std::nullopt};
  CHECK_THROWS_AS(p.substitute_coords(drop, 2), InvalidArgument);

  std::mt19937 rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto r = random_poly(rng, 2);
    const auto lifted = r.substitute_coords(m, 3);
    const RationalPoint x{Rational(static_cast<long>(rng() % 9) - 4, 3), Rational(static_cast<long>(rng() % 7)),
                          Rational(static_cast<long>(rng() % 9) - 4, 5)};
    CHECK(lifted.eval(x) == r.eval(RationalPoint{x[0], x[2]}));
  }
}

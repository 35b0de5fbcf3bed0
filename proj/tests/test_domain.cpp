#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ncreeb/error.hpp"

using namespace ncreeb;

TEST_CASE("hole packing") {
  CHECK(hole_offsets(1) == std::vector<long>{0});
  CHECK(hole_offsets(2) == std::vector<long>{-3, 3});
  CHECK(hole_offsets(3) == std::vector<long>{0, -3, 3});

  const auto one = fx::band_domain(-1, 1, 1);
  REQUIRE(one.constraints.size() == 2);
  CHECK(one.constraints[0] == sphere_poly(make_point({0, 0}), Rational(10), 2, Orientation::InsidePositive));
  CHECK(one.constraints[1] == sphere_poly(make_point({0, 0}), Rational(1), 2, Orientation::OutsidePositive));

  const auto two = fx::band_domain(-1, 1, 2);
  REQUIRE(two.constraints.size() == 3);
  CHECK(two.constraints[1] == sphere_poly(make_point({0, -3}), Rational(1), 2, Orientation::OutsidePositive));
  CHECK(two.constraints[2] == sphere_poly(make_point({0, 3}), Rational(1), 2, Orientation::OutsidePositive));

  const auto pair = build_band_domain(fx::bands({{0, 2, 1}, {2, 4, 1}}, 2, 0, 20));
  REQUIRE(pair.constraints.size() == 3);
  CHECK(pair.constraints[1] == sphere_poly(make_point({1, 0}), Rational(1), 2, Orientation::OutsidePositive));
  CHECK(pair.constraints[2] == sphere_poly(make_point({3, 0}), Rational(1), 2, Orientation::OutsidePositive));
  CHECK(pair.expected_intersections.size() == 1);
}

TEST_CASE("builder rejections") {
  CHECK_THROWS_AS(build_band_domain(fx::bands({{-1, 1, 5}}, 0, 0, 6)), BuildError);
  CHECK_THROWS_AS(build_band_domain(fx::bands({{-1, 1, 1}}, 0, 0, 2)), BuildError);
  CHECK_THROWS_AS(build_band_domain(fx::bands({{1, -1, 1}})), InvalidArgument);
  CHECK_THROWS_AS(build_band_domain(fx::bands({{0, 2, 1}, {1, 3, 1}}, 0, 0, 40)), InvalidArgument);
}

TEST_CASE("membership") {
  const auto d = fx::band_domain(-1, 1, 1);
  CHECK(closure_membership(d, make_point({0, 5})) == Membership::Interior);
  CHECK(closure_membership(d, make_point({-1, 0})) == Membership::Boundary);
  CHECK(closure_membership(d, make_point({0, 0})) == Membership::Outside);
  CHECK(closure_membership(d, make_point({11, 0})) == Membership::Outside);
  CHECK_THROWS_AS(closure_membership(d, make_point({0, 0, 0})), DimensionError);
}

TEST_CASE("membership agrees with constraint signs") {
  std::mt19937 rng(19);
  for (const auto& spec : {fx::bands({{-1, 1, 1}}), fx::bands({{-1, 1, 3}}, 0, 0, 12),
                           fx::bands({{0, 2, 2}, {3, 5, 2}}, 5, 0, 24)}) {
    const auto d = build_band_domain(spec);
    for (int k = 0; k < 1000; ++k) {
      const RationalPoint x{Rational(static_cast<long>(rng() % 601) - 300, 20),
                            Rational(static_cast<long>(rng() % 601) - 300, 20)};
      int lo = 1;
      for (const auto& f : d.constraints) lo = std::min(lo, sgn(f.eval(x)));
      const auto m = closure_membership(d, x);
      CHECK(m == (lo > 0 ? Membership::Interior : lo == 0 ? Membership::Boundary : Membership::Outside));
    }
  }
}

TEST_CASE("lifted products") {
  const auto d = fx::band_domain(-1, 1, 1);
  const auto l = lift_product(d, d);
  CHECK(l.ambient_dim == 3);
  CHECK(l.constraints.size() == 4);
  CHECK(closure_membership(l, make_point({0, 5, 5})) == Membership::Interior);
  CHECK(closure_membership(l, make_point({0, 0, 5})) == Membership::Outside);
  CHECK(std::holds_alternative<WholeSpace>(l.neighborhood));
  CHECK_THROWS_AS(lift_product(d, l), DimensionError);

  // slice law: lifted membership is the product of the factor memberships
  const auto d2 = build_band_domain(fx::bands({{-2, 0, 2}}, -1, 0, 15));
  const auto lp = lift_product(d, d2);
  std::mt19937 rng(23);
  for (int k = 0; k < 500; ++k) {
    const Rational t(static_cast<long>(rng() % 41) - 20, 2);
    const Rational y(static_cast<long>(rng() % 41) - 20, 2), z(static_cast<long>(rng() % 61) - 30, 2);
    const bool a = closure_membership(d, RationalPoint{t, y}) != Membership::Outside;
    const bool b = closure_membership(d2, RationalPoint{t, z}) != Membership::Outside;
    CHECK((closure_membership(lp, RationalPoint{t, y, z}) != Membership::Outside) == (a && b));
  }

  NCDomain disk;
  disk.constraints.push_back(sphere_poly(make_point({0, 0}), Rational(100), 2, Orientation::InsidePositive));
  const auto cyl = lift_product(d, disk);
  CHECK(closure_membership(cyl, make_point({0, 5, 50})) == Membership::Interior);
  CHECK(closure_membership(cyl, make_point({0, 0, 50})) == Membership::Outside);
}

TEST_CASE("transversality") {
  const auto d = fx::band_domain(-1, 1, 1);
  const auto r = check_transversality(d, std::vector<RationalPoint>{make_point({-10, 0}), make_point({3, 3})});
  REQUIRE(r.samples.size() == 1);
  CHECK(r.samples[0].active == std::vector<std::size_t>{0});
  CHECK(r.samples[0].normals[0] == std::vector<double>{20, 0});
  CHECK(r.samples[0].rank == 1);
  CHECK(r.pass);
  CHECK(r.warnings.size() == 1);

  // hole cylinder of the first factor meets the outer cylinder of the second
  const auto l = lift_product(d, d);
  const auto c = check_transversality(l, std::vector<RationalPoint>{make_point({0, 1, 10})});
  REQUIRE(c.samples.size() == 1);
  CHECK(c.samples[0].active.size() == 2);
  CHECK(c.samples[0].rank == 2);
  CHECK(c.pass);

  NCDomain twin;
  twin.constraints.assign(2, sphere_poly(make_point({0, 0}), Rational(1), 2, Orientation::InsidePositive));
  const auto t = check_transversality(twin, std::vector<RationalPoint>{make_point({1, 0})});
  CHECK_FALSE(t.pass);
  CHECK(t.samples[0].rank == 1);
  CHECK_FALSE(check_transversality(twin, 16).pass);

  for (unsigned holes : {1u, 2u, 3u}) {
    const auto b = fx::band_domain(-1, 1, holes);
    CHECK(check_transversality(b, 32).pass);
    CHECK(check_transversality(lift_product(b, fx::band_domain(-1, 1, 1, 0, 20)), 32).pass);
  }
  // factor band tangent to base band levels as in the covering construction
  const auto base = fx::band_domain(0, 2, 1, 1, 10);
  CHECK(check_transversality(lift_product(base, fx::band_domain(1, 3, 2, 2, 20)), 32).pass);
}

TEST_CASE("singular levels") {
  const auto one = singular_levels(fx::band_domain(-1, 1, 1));
  REQUIRE(one.size() == 4);
  CHECK(one[0].level == -10);
  CHECK(one[1].level == -1);
  const auto two = singular_levels(fx::band_domain(-1, 1, 2));
  REQUIRE(two.size() == 4);
  CHECK(two[1].points.size() == 2);
  const auto pair = singular_levels(build_band_domain(fx::bands({{0, 2, 1}, {2, 4, 1}}, 2, 0, 20)));
  std::vector<Rational> lv;
  for (const auto& s : pair) lv.push_back(s.level);
  CHECK(lv == std::vector<Rational>{-18, 0, 2, 4, 22});
  CHECK(pair[2].points.size() == 2);
  NCDomain lin;
  lin.constraints.push_back(Polynomial::variable(2, 0));
  CHECK_THROWS_AS(singular_levels(lin), UnsupportedDomain);
}

#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ncreeb/algebraic.hpp"
#include "ncreeb/error.hpp"
#include "ncreeb/reeb.hpp"

using namespace ncreeb;

namespace {

NCDomain unit_disk() {
  NCDomain d;
  d.ambient_dim = 2;
  d.constraints.push_back(sphere_poly(make_point({0, 0}), Rational(1), 2, Orientation::InsidePositive));
  return d;
}

}  // namespace

TEST_CASE("dimension allocation") {
  CHECK(allocate_dims(2, 1, 3, DimPolicy::Balanced) == std::vector<std::size_t>{2});
  CHECK(allocate_dims(2, 2, 4, DimPolicy::Balanced) == std::vector<std::size_t>{2, 2});
  CHECK(allocate_dims(2, 2, 3, DimPolicy::Balanced) == std::vector<std::size_t>{2, 1});
  CHECK(allocate_dims(2, 3, 6, DimPolicy::Balanced) == std::vector<std::size_t>{3, 2, 2});
  CHECK(allocate_dims(2, 3, 6, DimPolicy::FrontLoaded) == std::vector<std::size_t>{5, 1, 1});
  CHECK(allocate_dims(2, 3, 2, DimPolicy::Balanced) == std::vector<std::size_t>{1, 1, 1});
  CHECK_THROWS_AS(allocate_dims(2, 3, 1, DimPolicy::Balanced), InvalidArgument);
  CHECK(parse_dim_policy(to_string(DimPolicy::FrontLoaded)) == DimPolicy::FrontLoaded);
}

TEST_CASE("disk model") {
  const auto model = emit_model(unit_disk(), 3);
  REQUIRE(model.system.size() == 1);
  CHECK(model.num_vars() == 4);
  Polynomial want = Polynomial::constant(4, 1);
  for (std::size_t j = 0; j < 4; ++j) want -= Polynomial::variable(4, j) * Polynomial::variable(4, j);
  CHECK(model.system[0] == want);

  const auto centre = sample_fiber_point(model, make_point({0, 0}));
  CHECK(centre == std::vector<double>{0, 0, 1, 0});
  CHECK(jacobian_rank(model, centre) == 1);
  const auto edge = sample_fiber_point(model, make_point({1, 0}));
  CHECK(edge == std::vector<double>{1, 0, 0, 0});
  CHECK(jacobian_rank(model, edge) == 1);
  CHECK(fiber_type(model, make_point({1, 0})).is_point());
  CHECK_THROWS_AS(sample_fiber_point(model, make_point({2, 0})), InvalidArgument);

  const RationalPoint half{Rational(1, 2), Rational(0)};
  const auto t = fiber_type(model, half);
  REQUIRE(t.blocks.size() == 1);
  CHECK(t.blocks[0].sphere_dim == 1);
  CHECK(t.blocks[0].radius_squared == Rational(3, 4));
  CHECK(t.dimension() == 1);
  CHECK(fiber_type(model, make_point({2, 0})).empty);

  const std::vector<double> off{0, 0, 1.1, 0};
  CHECK_THROWS_AS(jacobian_rank(model, off), InvalidArgument);
}

TEST_CASE("band model") {
  const auto d = fx::band_domain(-1, 1, 1);
  const auto model = emit_model(d, 4);
  CHECK(model.dims == std::vector<std::size_t>{2, 2});
  CHECK(model.num_vars() == 6);
  // each equation touches only the x block and its own y block
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const auto s = model.block_start(j);
      CHECK(model.system[i].depends_on(s) == (i == j));
      CHECK(model.system[i].depends_on(s + 1) == (i == j));
    }

  const auto p = sample_fiber_point(model, make_point({0, 5}));
  CHECK(p[2] == doctest::Approx(std::sqrt(75.0)));
  CHECK(p[4] == doctest::Approx(std::sqrt(24.0)));
  CHECK(residual(model, p) < 1e-12);
  CHECK(jacobian_rank(model, p) == 2);

  // boundary of the hole at its left extreme
  const auto t = fiber_type(model, make_point({-1, 0}));
  CHECK_FALSE(t.empty);
  CHECK(t.blocks[1].point());
  CHECK(t.dimension() == 1);
  CHECK(fiber_type(model, make_point({0, 0})).empty);
}

TEST_CASE("sampled certificates") {
  const auto disk = unit_disk();
  const auto r = certify_model(disk, emit_model(disk, 3));
  CHECK(r.pass);
  CHECK(r.interior_samples == 100);
  CHECK(r.boundary_samples == 20);
  CHECK(r.outside_samples == 50);

  const auto band = fx::band_domain(-1, 1, 1);
  const auto rb = certify_model(band, emit_model(band, 4));
  CHECK(rb.pass);
  for (const auto& msg : rb.diagnostics) MESSAGE(msg);

  // with one-dimensional blocks a boundary fiber S^0 x point has the same
  // dimension as the interior fiber S^0 x S^0, so the dimension drop fails
  const auto low = certify_model(band, emit_model(band, 2));
  CHECK_FALSE(low.pass);
  CHECK(low.dimension_failures > 0);
  CHECK(low.rank_failures == 0);
}

TEST_CASE("the disk model sweeps to a path") {
  const auto g = reeb_exact(unit_disk());
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
}

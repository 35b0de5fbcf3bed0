#include "doctest.h"
#include <algorithm>
#include <numeric>
#include <random>
#include "fixtures.hpp"
#include "ncreeb/error.hpp"
#include "ncreeb/grid_oracle.hpp"
#include "ncreeb/reeb.hpp"

using namespace ncreeb;

namespace {

std::vector<std::size_t> degrees_by_level(const LeveledGraph& g) {
  std::vector<std::size_t> idx(g.num_vertices());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return g.level(a) < g.level(b); });
  std::vector<std::size_t> out;
  for (auto v : idx) out.push_back(g.degree(v));
  return out;
}

}  // namespace

TEST_CASE("band graphs agree with the grid oracle") {
  for (unsigned holes : {1u, 2u, 3u}) {
    CAPTURE(holes);
    const auto d = fx::band_domain(-1, 1, holes);
    const auto exact = reeb_exact(d);
    GridOptions o;
    o.box = GridBox{{-10.5, -10.5}, {10.5, 10.5}};
    const auto grid = reeb_grid_oracle(d, o);
    CHECK(is_isomorphic(exact, grid, IsoMode::Leveled).isomorphic);
    CHECK(exact.num_vertices() == 4);
    CHECK(exact.num_edges() == holes + 3);
    CHECK(betti1(exact) == holes);
    CHECK(sheet_count(exact, Rational(0)) == holes + 1);
    CHECK(degrees_by_level(exact) == std::vector<std::size_t>{1, holes + 2, holes + 2, 1});
  }
}

TEST_CASE("shared tangency level gives one vertex") {
  const auto g = reeb_exact(fx::band_domain(-1, 1, 2));
  std::size_t at_minus_one = 0;
  for (const auto& v : g.vertices()) at_minus_one += v.level == -1;
  CHECK(at_minus_one == 1);
}

TEST_CASE("full disk is a path") {
  NCDomain d;
  d.constraints.push_back(sphere_poly(make_point({0, 0}), Rational(1), 2, Orientation::InsidePositive));
  const auto g = reeb_exact(d);
  CHECK(g.num_vertices() == 2);
  CHECK(g.num_edges() == 1);
  const auto grid = reeb_grid_oracle(d, {});
  CHECK(is_isomorphic(g, grid, IsoMode::Leveled).isomorphic);
  CHECK(grid.min_level() == -1);
  CHECK(grid.max_level() == 1);
}

TEST_CASE("two bands sharing a tangency level") {
  const auto d = build_band_domain(fx::bands({{0, 2, 1}, {2, 4, 1}}, 2, 0, 20));
  const auto g = reeb_exact(d);
  // Two holes touch at (2, 0): one merged vertex of degree 4 at level 2.
  CHECK(g.num_vertices() == 5);
  CHECK(betti1(g) == 2);
  CHECK(degrees_by_level(g) == std::vector<std::size_t>{1, 3, 4, 3, 1});
}

TEST_CASE("sheet counts match independent chords") {
  for (unsigned holes : {1u, 2u, 3u}) {
    const auto d = build_band_domain(fx::bands({{-1, 1, holes}, {2, 5, 2}}, 1, 0, 40));
    const auto g = reeb_exact(d);
    for (int k = -79; k <= 81; k += 2) {
      const Rational t(k, 2);
      bool at_vertex = false;
      for (const auto& v : g.vertices()) at_vertex |= v.level == t;
      if (at_vertex || t <= g.min_level() || t >= g.max_level()) continue;
      CAPTURE(k);
      CHECK(sheet_count(g, t) == slice_report(d, t).count);
    }
    CHECK(betti1(g) == holes + 2);
  }
}

TEST_CASE("slice report outside the range is empty") {
  const auto d = fx::band_domain(-1, 1, 1);
  CHECK(slice_report(d, Rational(11)).count == 0);
  CHECK(slice_report(d, Rational(0)).count == 2);
}

TEST_CASE("non-circle domains are rejected by the exact sweep") {
  NCDomain d;
  d.constraints.push_back(Polynomial::variable(2, 0));
  CHECK_THROWS_AS(reeb_exact(d), UnsupportedDomain);
}

TEST_CASE("refine and smooth") {
  const auto p = fx::path({0, 10});
  const auto r = refine(p, {Rational(5)});
  CHECK(r.num_vertices() == 3);
  CHECK_FALSE(r.vertex(2).essential);
  CHECK(refine(p, {}) == p);
  CHECK(smooth(r) == p);

  const auto th = fx::theta(-10, -1, 1, 10);
  const auto rt = refine(th, {Rational(0)});
  CHECK(rt.num_vertices() == 6);
  CHECK(rt.num_edges() == 6);
  CHECK(betti1(rt) == 1);
  CHECK(smooth(th) == th);

  LeveledGraph bad;
  bad.add_vertex(Rational(0), false);
  bad.add_vertex(Rational(1));
  bad.add_edge(0, 1);
  CHECK_THROWS_AS(smooth(bad), IntegrityError);
}

TEST_CASE("smooth undoes refine on random graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    LeveledGraph g;
    const int n = 2 + rng() % 6;
    for (int v = 0; v < n; ++v) g.add_vertex(Rational(static_cast<long>(rng() % 5) * 2));
    for (int e = 0; e < 2 * n; ++e) {
      const auto a = rng() % n, b = rng() % n;
      if (g.level(a) != g.level(b)) g.add_edge(a, b);
    }
    std::vector<Rational> levels;
    for (int k = 0; k < 4; ++k) levels.emplace_back(static_cast<long>(rng() % 9), 1 + rng() % 3);
    const auto s = smooth(refine(g, levels));
    CHECK(is_isomorphic(g, s, IsoMode::Leveled).isomorphic);
  }
}

TEST_CASE("fiber products") {
  const auto th = reeb_exact(fx::band_domain(-1, 1, 1));
  const auto sq = fiber_product(th, th);
  CHECK(sq.graph.num_vertices() == 4);
  CHECK(sq.graph.num_edges() == 6);
  CHECK(betti1(sq.graph) == 3);
  CHECK(sq.coincident_levels.size() == 4);

  const auto id = fiber_product(th, fx::path({-20, 20}));
  CHECK(is_isomorphic(id.graph, th, IsoMode::Leveled).isomorphic);

  const auto base = reeb_exact(fx::band_domain(0, 2, 1, 1, 10));
  const auto factor = reeb_exact(fx::band_domain(1, 3, 1, 2, 20));
  const auto ex = fiber_product(base, factor).graph;
  CHECK(ex.num_vertices() == 8);
  CHECK(ex.num_edges() == 10);
  CHECK(betti1(ex) == 3);
  const std::vector<std::pair<long, long>> spans{{-9, 0}, {0, 1}, {1, 2}, {2, 3}, {3, 11}};
  const std::vector<std::size_t> counts{1, 2, 4, 2, 1};
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Rational mid = Rational(spans[i].first + spans[i].second) / 2;
    CHECK(sheet_count(ex, mid) == counts[i]);
    CHECK(sheet_count(ex, mid) == sheet_count(base, mid) * sheet_count(factor, mid));
  }
  CHECK_THROWS_AS(fiber_product(fx::path({0, 1}), fx::path({1, 2})), InvalidArgument);
}

TEST_CASE("fiber product matches the 3-D grid oracle") {
  const auto d1 = fx::band_domain(-1, 1, 1);
  const auto lifted = lift_product(d1, d1);
  GridOptions o;
  o.resolution = 96;
  const auto grid = reeb_grid_oracle(lifted, o);
  const auto th = reeb_exact(d1);
  CHECK(is_isomorphic(fiber_product(th, th).graph, grid, IsoMode::Leveled).isomorphic);
}

TEST_CASE("betti and sheet count errors") {
  LeveledGraph g;
  g.add_vertex(Rational(0));
  g.add_vertex(Rational(1));
  CHECK_THROWS_AS(betti1(g), IntegrityError);
  CHECK(betti1(fx::path({0, 3})) == 0);
  const auto th = fx::theta(-10, -1, 1, 10);
  CHECK(sheet_count(th, Rational(-5)) == 1);
  CHECK(sheet_count(th, Rational(0)) == 2);
  CHECK_THROWS_AS(sheet_count(th, Rational(1)), InvalidArgument);
}

TEST_CASE("isomorphism") {
  const auto a = fx::theta(-10, -1, 1, 10);
  const auto b = fx::theta(0, 3, 4, 7);
  CHECK(is_isomorphic(a, b, IsoMode::Plain).isomorphic);
  CHECK(is_isomorphic(a, b, IsoMode::Leveled).isomorphic);
  const auto c = fx::theta(-10, -1, 1, 10, 3);
  CHECK_FALSE(is_isomorphic(a, c, IsoMode::Plain).isomorphic);
  CHECK_FALSE(is_isomorphic(a, c, IsoMode::Leveled).isomorphic);

  // Same shape, but the pendant edges hang off opposite ends of the double edge.
  LeveledGraph flipped, other;
  for (int l = 0; l < 4; ++l) {
    flipped.add_vertex(Rational(l));
    other.add_vertex(Rational(l));
  }
  for (auto* g : {&flipped, &other}) {
    g->add_edge(0, 1);
    g->add_edge(0, 1);
  }
  flipped.add_edge(1, 2);
  flipped.add_edge(0, 3);
  other.add_edge(0, 2);
  other.add_edge(1, 3);
  CHECK(is_isomorphic(flipped, other, IsoMode::Plain).isomorphic);
  CHECK_FALSE(is_isomorphic(flipped, other, IsoMode::Leveled).isomorphic);

  const auto r1 = smooth(refine(a, {Rational(0)}));
  const auto r2 = smooth(refine(a, {Rational(1, 2)}));
  CHECK(is_isomorphic(r1, r2, IsoMode::Leveled).isomorphic);

  LeveledGraph big;
  for (int i = 0; i < 70; ++i) big.add_vertex(Rational(i));
  CHECK_THROWS_AS(is_isomorphic(big, big, IsoMode::Plain), CapacityError);
}

TEST_CASE("openmp kernels match the serial reference") {
  const auto plane = fx::band_domain(-1, 1, 3);
  const auto solid = lift_product(fx::band_domain(-1, 1, 1), fx::band_domain(-1, 1, 2, 0, 20));
  for (const auto* d : {&plane, &solid}) {
    const std::size_t res = d->ambient_dim == 2 ? 300 : 64;
    const auto box = default_box(*d);
    const auto serial = grid_mask(*d, box, res, GridOptions{}.eps_scale, false);
    const auto parallel = grid_mask(*d, box, res, GridOptions{}.eps_scale, true);
    CHECK(serial.cells == parallel.cells);
    CHECK(label_slabs_serial(serial) == label_slabs_parallel(serial));

    GridOptions o;
    o.resolution = res;
    o.parallel = false;
    const auto a = reeb_grid_oracle(*d, o);
    o.parallel = true;
    CHECK(reeb_grid_oracle(*d, o) == a);
  }
}

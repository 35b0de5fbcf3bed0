#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ncreeb/planarity.hpp"
#include "ncreeb/reeb.hpp"
#include "ncreeb/theorems.hpp"

using namespace ncreeb;

namespace {

LeveledGraph complete(std::size_t n) {
  LeveledGraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_vertex(Rational(static_cast<long>(v)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) g.add_edge(a, b);
  return g;
}

LeveledGraph k33() {
  LeveledGraph g;
  for (int v = 0; v < 6; ++v) g.add_vertex(Rational(v < 3 ? 0 : 1));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 3; b < 6; ++b) g.add_edge(a, b);
  return g;
}

LeveledGraph random_graph(std::mt19937& rng) {
  std::uniform_int_distribution<int> nv(2, 9), lv(0, 4), coin(0, 99);
  for (;;) {
    LeveledGraph g;
    const int n = nv(rng);
    for (int v = 0; v < n; ++v) g.add_vertex(Rational(lv(rng)));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (g.level(a) != g.level(b) && coin(rng) < 35) {
          g.add_edge(a, b);
          if (coin(rng) < 10) g.add_edge(a, b);
        }
    const auto p = refine(g, g.distinct_levels());
    std::map<Rational, int> per_level;
    int widest = 0;
    for (const auto& v : p.vertices()) widest = std::max(widest, ++per_level[v.level]);
    if (widest <= 7) return g;
  }
}

}  // namespace

TEST_CASE("planarity of small graphs") {
  const auto k4 = planarity_test(complete(4));
  CHECK(k4.planar);
  CHECK(rotation_is_planar(complete(4), k4.rotation));
  CHECK(count_faces(complete(4), k4.rotation) == 4);

  const auto k5 = planarity_test(complete(5));
  REQUIRE_FALSE(k5.planar);
  REQUIRE(k5.witness);
  CHECK(k5.witness->kind == KuratowskiKind::K5);
  CHECK_FALSE(witness_problem(complete(5), *k5.witness));

  const auto g = k33();
  const auto r = planarity_test(g);
  REQUIRE_FALSE(r.planar);
  CHECK(r.witness->kind == KuratowskiKind::K33);
  CHECK_FALSE(witness_problem(g, *r.witness));
  for (const auto& p : r.witness->paths) CHECK(p.edges.size() == 1);

  // a tampered witness is rejected
  auto bad = *r.witness;
  std::swap(bad.branch[2], bad.branch[3]);
  CHECK(witness_problem(g, bad));
  bad = *r.witness;
  bad.paths.pop_back();
  CHECK(witness_problem(g, bad));

  CHECK_THROWS_AS(planarity_test(complete(6), {.cap = 5}), CapacityError);
}

TEST_CASE("parallel edges and subdivisions") {
  const auto th = fx::theta(0, 1, 2, 3, 4);
  const auto r = planarity_test(th);
  CHECK(r.planar);
  CHECK(rotation_is_planar(th, r.rotation));

  // K5 with one edge doubled and another subdivided stays non-planar with a valid witness
  auto g = complete(5);
  g.add_edge(0, 4);
  const auto sub = refine(g, {Rational(1, 2), Rational(5, 2)});
  for (const auto& h : {g, sub}) {
    const auto w = planarity_test(h, {.prefer = KuratowskiKind::K5});
    REQUIRE_FALSE(w.planar);
    CHECK(w.witness->kind == KuratowskiKind::K5);
    CHECK_FALSE(witness_problem(h, *w.witness));
  }
  CHECK(planarity_test(refine(th, {Rational(1, 2), Rational(3, 2)})).planar);
}

TEST_CASE("level planarity of fixtures") {
  const auto k22 = fx::proper_k22();
  CHECK(planarity_test(k22).planar);
  CHECK_FALSE(level_planarity_test(k22).level_planar);
  CHECK_FALSE(level_planarity_oracle(k22));

  const auto th = fx::theta(0, 1, 2, 3, 3);
  const auto r = level_planarity_test(th);
  REQUIRE(r.level_planar);
  CHECK(count_inversions(*r.embedding) == 0);
  CHECK(level_planarity_oracle(th));

  const auto p = fx::path({0, 3, 1, 4});
  CHECK(level_planarity_test(p).level_planar);

  // a K_{2,2} spread over more levels is level planar
  LeveledGraph spread;
  for (long l : {0, 1, 2, 3}) spread.add_vertex(Rational(l));
  spread.add_edge(0, 2);
  spread.add_edge(0, 3);
  spread.add_edge(1, 2);
  spread.add_edge(1, 3);
  CHECK(level_planarity_test(spread).level_planar);
  CHECK(level_planarity_oracle(spread));

  LeveledGraph wide;
  for (int v = 0; v < 30; ++v) wide.add_vertex(Rational(v % 2));
  for (int v = 0; v + 1 < 30; v += 2) wide.add_edge(v, v + 1);
  CHECK_THROWS_AS(level_planarity_test(wide, 20), CapacityError);
  CHECK_THROWS_AS(level_planarity_oracle(wide), CapacityError);
}

TEST_CASE("level planarity agrees with exhaustive search") {
  std::mt19937 rng(20261016);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = random_graph(rng);
    CAPTURE(trial);
    const auto r = level_planarity_test(g);
    const bool oracle = level_planarity_oracle(g, trial % 2 == 0);
    CHECK(r.level_planar == oracle);
    if (r.level_planar) {
      ++positives;
      CHECK(count_inversions(*r.embedding) == 0);
      CHECK(planarity_test(g).planar);
    } else {
      ++negatives;
    }
  }
  CHECK(positives > 20);
  CHECK(negatives > 10);
}

TEST_CASE("inversion counting") {
  const auto k22 = fx::proper_k22();
  LevelEmbedding e{k22, {Rational(0), Rational(1)}, {{0, 1}, {2, 3}}};
  CHECK(count_inversions(e) == 1);
  e.order = {{0, 1}, {3, 2}};
  CHECK(count_inversions(e) == 1);
  e.order = {{0, 1}, {2}};
  CHECK_THROWS_AS(count_inversions(e), IntegrityError);

  // parallel edges and shared endpoints never cross
  const auto th = fx::theta(0, 1, 2, 3, 3);
  LevelEmbedding t{th, th.distinct_levels(), {{0}, {1}, {2}, {3}}};
  CHECK(count_inversions(t) == 0);
}

TEST_CASE("predicted graphs of the families") {
  auto base_of = [](std::initializer_list<std::tuple<long, long, unsigned>> b, long radius) {
    auto spec = fx::bands(b, 0, 0, radius);
    spec.outer_center = {Rational(5, 2), Rational(0)};
    auto d = build_band_domain(spec);
    auto g = reeb_exact(d);
    return std::pair{d, g};
  };

  {
    auto spec = fx::bands({{0, 2, 1}}, 0, 0, 10);
    spec.outer_center = {Rational(1), Rational(0)};
    const auto d = build_band_domain(spec);
    const auto g = reeb_exact(d);
    const auto f = mt1_family(d, g, Rational(1), Rational(3), 1);
    CHECK(planarity_test(f.prediction).planar);
    CHECK_FALSE(level_planarity_test(f.prediction).level_planar);
  }
  {
    const auto [d, g] = base_of({{0, 2, 2}, {3, 5, 2}}, 12);
    const auto f = mt2_family(d, g, Rational(1), Rational(4), 1);
    const auto r = planarity_test(f.prediction, {.prefer = KuratowskiKind::K33});
    REQUIRE_FALSE(r.planar);
    CHECK(r.witness->kind == KuratowskiKind::K33);
    CHECK_FALSE(witness_problem(f.prediction, *r.witness));
    // without a preference the extractor's edge set is minimised to a subdivision
    const auto any = planarity_test(f.prediction);
    REQUIRE(any.witness);
    CHECK_FALSE(witness_problem(f.prediction, *any.witness));
  }
  {
    const auto [d, g] = base_of({{0, 2, 1}, {3, 5, 2}}, 12);
    const ConditionParams p{Rational(1), Rational(4), {}, {}};
    for (auto red : {Reduction::None, Reduction::C, Reduction::B, Reduction::BC}) {
      CAPTURE(to_string(red));
      const auto f = mt3_family(d, g, p, 1, 1, 1, red);
      const auto w = find_kuratowski(f.prediction, KuratowskiKind::K5);
      REQUIRE(w);
      CHECK_FALSE(witness_problem(f.prediction, *w));
      const auto any = planarity_test(f.prediction);
      REQUIRE(any.witness);
      CHECK_FALSE(witness_problem(f.prediction, *any.witness));
    }
  }
}

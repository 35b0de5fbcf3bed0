#include "doctest.h"
#include "fixtures.hpp"
#include "ncreeb/reeb.hpp"
#include "ncreeb/theorems.hpp"

using namespace ncreeb;

namespace {

struct Base {
  NCDomain domain;
  LeveledGraph graph;
};

Base make_base(std::initializer_list<std::tuple<long, long, unsigned>> b, Rational cx, long radius) {
  auto spec = fx::bands(b, 0, 0, radius);
  spec.outer_center = {cx, Rational(0)};
  Base out{build_band_domain(spec), {}};
  out.graph = reeb_exact(out.domain);
  return out;
}

Base theta_base() { return make_base({{0, 2, 1}}, 1, 10); }
Base two_band_base() { return make_base({{0, 2, 2}, {3, 5, 2}}, Rational(5, 2), 12); }
Base mixed_base() { return make_base({{0, 2, 1}, {3, 5, 2}}, Rational(5, 2), 12); }

void check_arcs(const LeveledGraph& g, const ConditionReport& r) {
  for (const auto& a : r.arcs) {
    CAPTURE(a.label);
    CHECK(arc_is_valid(g, a));
  }
}

}  // namespace

TEST_CASE("converging arcs on the theta graph") {
  const auto th = reeb_exact(fx::band_domain(-1, 1, 1));
  const auto bad = validate_conditions(th, {Rational(-1, 2), Rational(1, 2), {}, {}}, TheoremTag::MT1);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.find("converging arc pair")->pass);

  const auto base = theta_base();
  const auto ok = validate_conditions(base.graph, {Rational(1), Rational(3), {}, {}}, TheoremTag::MT1);
  CHECK(ok.pass);
  REQUIRE(ok.arcs.size() == 2);
  CHECK(ok.arcs[0].to == ok.arcs[1].to);
  check_arcs(base.graph, ok);

  const auto at_vertex = validate_conditions(base.graph, {Rational(0), Rational(3), {}, {}}, TheoremTag::MT1);
  CHECK_FALSE(at_vertex.pass);
  CHECK_FALSE(at_vertex.find("regular level t1")->pass);
  CHECK_THROWS_AS(validate_conditions(base.graph, {Rational(3), Rational(1), {}, {}}, TheoremTag::MT1),
                  InvalidArgument);
}

TEST_CASE("trivalent hypotheses") {
  CHECK(validate_conditions(fx::theta(-10, -1, 1, 10), {}, TheoremTag::THM2).pass);
  const auto two = reeb_exact(fx::band_domain(-1, 1, 2));
  const auto r = validate_conditions(two, {}, TheoremTag::THM2);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.find("degrees 1 or 3")->pass);
  CHECK_FALSE(validate_conditions(fx::proper_k22(), {}, TheoremTag::THM2).pass);
}

TEST_CASE("first family: covering laws") {
  const auto base = theta_base();
  std::vector<std::size_t> betti;
  for (unsigned i = 1; i <= 3; ++i) {
    const auto f = mt1_family(base.domain, base.graph, Rational(1), Rational(3), i);
    CHECK(f.fold_counts == std::vector<std::size_t>{i + 1});
    CHECK(sheet_count(f.prediction, Rational(3, 2)) == (i + 1) * 2);
    CHECK(essential_vertices_between(f.prediction, 1, 3) ==
          (i + 1) * essential_vertices_between(base.graph, 1, 3));
    CHECK(f.domain.ambient_dim == 3);
    CHECK(f.coincident_levels.empty());
    for (int k = -17; k <= 21; k += 2) {
      const Rational t(k, 2);
      bool vertex_level = false;
      for (const auto& v : f.prediction.vertices()) vertex_level |= v.level == t;
      if (vertex_level || t <= f.prediction.min_level() || t >= f.prediction.max_level()) continue;
      CHECK(sheet_count(f.prediction, t) == sheet_count(base.graph, t) * sheet_count(f.factor_graph, t));
    }
    betti.push_back(betti1(f.prediction));
  }
  CHECK(betti == std::vector<std::size_t>{3, 5, 7});
  const auto f1 = mt1_family(base.domain, base.graph, Rational(1), Rational(3), 1);
  CHECK(f1.prediction.num_vertices() == 8);
  CHECK(f1.prediction.num_edges() == 10);
  CHECK(f1.factor_spec.outer_radius == 20);
  CHECK(f1.factor_spec.outer_center == make_point({2, 0}));
  const auto f2 = mt1_family(base.domain, base.graph, Rational(1), Rational(3), 2);
  CHECK(f2.prediction.num_vertices() == 9);
  CHECK(f2.prediction.num_edges() == 13);
  CHECK_FALSE(is_isomorphic(f1.prediction, f2.prediction, IsoMode::Plain).isomorphic);

  const auto th = reeb_exact(fx::band_domain(-1, 1, 1));
  CHECK_THROWS_AS(mt1_family(fx::band_domain(-1, 1, 1), th, Rational(-1, 2), Rational(1, 2), 1), ConditionFailure);
  CHECK_THROWS_AS(mt1_family(base.domain, base.graph, Rational(1), Rational(3), 0), InvalidArgument);
}

TEST_CASE("second family") {
  const auto base = two_band_base();
  const auto r = validate_conditions(base.graph, {Rational(1), Rational(4), {}, {}}, TheoremTag::MT2);
  CHECK(r.pass);
  CHECK(r.arcs.size() == 9);
  check_arcs(base.graph, r);
  for (unsigned i : {1u, 2u}) {
    const auto f = mt2_family(base.domain, base.graph, Rational(1), Rational(4), i);
    CHECK(f.fold_counts == std::vector<std::size_t>{i + 8});
    CHECK(sheet_count(f.prediction, Rational(3, 2)) == 3 * (i + 8));
  }
  // a single-hole first band has only two points at t1
  const auto thin = mixed_base();
  CHECK_FALSE(validate_conditions(thin.graph, {Rational(1), Rational(4), {}, {}}, TheoremTag::MT2).pass);
  CHECK_THROWS_AS(mt2_family(thin.domain, thin.graph, Rational(1), Rational(4), 1), ConditionFailure);
}

TEST_CASE("third family schedules") {
  const auto base = mixed_base();
  const ConditionParams p{Rational(1), Rational(4), {}, {}};
  const auto r = validate_conditions(base.graph, p, TheoremTag::MT3);
  CHECK(r.pass);
  CHECK(r.find("reduction C")->pass);
  CHECK(r.find("reduction B")->pass);
  CHECK(r.arcs.size() == 6 + 1 + 3);
  check_arcs(base.graph, r);

  const std::vector<std::pair<Reduction, std::size_t>> cases{
      {Reduction::None, 10}, {Reduction::C, 8}, {Reduction::B, 7}, {Reduction::BC, 6}};
  for (auto [red, middle] : cases) {
    CAPTURE(to_string(red));
    const auto f = mt3_family(base.domain, base.graph, p, 1, 1, 1, red);
    CHECK(f.fold_counts == std::vector<std::size_t>{2, middle, 3});
    CHECK(f.factor_spec.bands[0].t_lo == Rational(-19, 4));
    CHECK(f.factor_spec.bands[2].t_hi == Rational(39, 4));
  }
  std::vector<LeveledGraph> preds;
  for (auto [a, b, c] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}})
    preds.push_back(mt3_family(base.domain, base.graph, p, a, b, c, Reduction::None).prediction);
  for (std::size_t x = 0; x < preds.size(); ++x)
    for (std::size_t y = x + 1; y < preds.size(); ++y)
      CHECK_FALSE(is_isomorphic(preds[x], preds[y], IsoMode::Plain, 512).isomorphic);

  // Outer levels chosen so the t1 pair cannot be joined below t1.
  ConditionParams tight{Rational(1), Rational(4), Rational(1, 2), {}};
  const auto t = validate_conditions(base.graph, tight, TheoremTag::MT3);
  CHECK(t.pass);
  CHECK_FALSE(t.find("reduction C")->pass);
  CHECK_THROWS_AS(mt3_family(base.domain, base.graph, tight, 1, 1, 1, Reduction::C), ConditionFailure);
}

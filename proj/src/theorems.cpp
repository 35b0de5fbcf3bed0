#include "ncreeb/theorems.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "ncreeb/reeb.hpp"

namespace ncreeb {

const char* to_string(TheoremTag t) {
  switch (t) {
    case TheoremTag::MT1: return "mt1";
    case TheoremTag::MT2: return "mt2";
    case TheoremTag::MT3: return "mt3";
    case TheoremTag::THM2: return "thm2";
  }
  return "?";
}

TheoremTag parse_theorem_tag(std::string_view s) {
  if (s == "mt1") return TheoremTag::MT1;
  if (s == "mt2") return TheoremTag::MT2;
  if (s == "mt3") return TheoremTag::MT3;
  if (s == "thm2") return TheoremTag::THM2;
  throw InvalidArgument("unknown theorem tag '" + std::string(s) + "' (expected mt1, mt2, mt3 or thm2)");
}

const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::None: return "none";
    case Reduction::C: return "C";
    case Reduction::B: return "B";
    case Reduction::BC: return "BC";
  }
  return "?";
}

Reduction parse_reduction(std::string_view s) {
  if (s == "none") return Reduction::None;
  if (s == "C") return Reduction::C;
  if (s == "B") return Reduction::B;
  if (s == "BC") return Reduction::BC;
  throw InvalidArgument("unknown reduction '" + std::string(s) + "' (expected none, C, B or BC)");
}

unsigned mt3_middle_holes(unsigned i2, Reduction r) {
  switch (r) {
    case Reduction::None: return i2 + 8;
    case Reduction::C: return i2 + 6;
    case Reduction::B: return i2 + 5;
    case Reduction::BC: return i2 + 4;
  }
  return i2 + 8;
}

const ConditionVerdict* ConditionReport::find(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

std::string failure_message(const ConditionReport& r) {
  std::ostringstream os;
  os << to_string(r.tag) << " hypotheses fail:";
  for (const auto& c : r.conditions)
    if (!c.pass) os << " [" << c.name << ": " << c.detail << "]";
  for (const auto& d : r.diagnostics) os << " [" << d << "]";
  return os.str();
}

}  // namespace

ConditionFailure::ConditionFailure(ConditionReport r) : Error(failure_message(r)), report_(std::move(r)) {}

namespace {

using Adjacency = std::vector<std::vector<std::size_t>>;

Adjacency adjacency(const LeveledGraph& g) {
  Adjacency adj(g.num_vertices());
  for (const auto& e : g.edges()) {
    adj[e.lower].push_back(e.upper);
    adj[e.upper].push_back(e.lower);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

std::vector<GraphPoint> points_at(const LeveledGraph& g, const Rational& t) {
  std::vector<GraphPoint> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (g.level(g.edge(e).lower) < t && t < g.level(g.edge(e).upper)) out.push_back({e, t});
  return out;
}

std::vector<std::size_t> vertices_at(const LeveledGraph& g, const Rational& t) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.level(v) == t) out.push_back(v);
  return out;
}

bool inside(const Rational& x, const Rational& lo, const Rational& hi) { return lo < x && x < hi; }

// Endpoint of the point's edge lying on the region side, if it is inside the region.
std::optional<std::size_t> entry_vertex(const LeveledGraph& g, const GraphPoint& p, const Rational& lo,
                                        const Rational& hi) {
  const auto& e = g.edge(p.edge);
  const std::size_t v = p.level == lo ? e.upper : p.level == hi ? e.lower : SIZE_MAX;
  if (v == SIZE_MAX || !inside(g.level(v), lo, hi)) return std::nullopt;
  return v;
}

std::optional<std::vector<std::size_t>> region_path(const LeveledGraph& g, const Adjacency& adj, std::size_t from,
                                                    std::size_t to, const Rational& lo, const Rational& hi) {
  std::vector<std::size_t> prev(g.num_vertices(), SIZE_MAX);
  std::queue<std::size_t> q;
  q.push(from);
  prev[from] = from;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    if (v == to) break;
    for (auto w : adj[v])
      if (prev[w] == SIZE_MAX && inside(g.level(w), lo, hi)) {
        prev[w] = v;
        q.push(w);
      }
  }
  if (prev[to] == SIZE_MAX) return std::nullopt;
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<WitnessArc> find_arc(const LeveledGraph& g, const Adjacency& adj, const GraphPoint& a,
                                   const GraphPoint& b, const Rational& lo, const Rational& hi, std::string label) {
  WitnessArc arc{std::move(label), a, b, {}, lo, hi};
  if (a.edge == b.edge) {
    if ((a.level == lo && b.level == hi) || (a.level == hi && b.level == lo)) return arc;
    return std::nullopt;
  }
  const auto va = entry_vertex(g, a, lo, hi), vb = entry_vertex(g, b, lo, hi);
  if (!va || !vb) return std::nullopt;
  auto path = region_path(g, adj, *va, *vb, lo, hi);
  if (!path) return std::nullopt;
  arc.vertices = std::move(*path);
  return arc;
}

// Component id of every vertex in the subgraph induced on levels inside (lo, hi).
std::vector<std::size_t> region_components(const LeveledGraph& g, const Adjacency& adj, const Rational& lo,
                                           const Rational& hi) {
  std::vector<std::size_t> comp(g.num_vertices(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != SIZE_MAX || !inside(g.level(s), lo, hi)) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (comp[w] == SIZE_MAX && inside(g.level(w), lo, hi)) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return comp;
}

std::string describe(const std::vector<GraphPoint>& pts) {
  std::ostringstream os;
  os << pts.size() << " point" << (pts.size() == 1 ? "" : "s");
  if (!pts.empty()) {
    os << " on edges";
    for (const auto& p : pts) os << ' ' << p.edge;
  }
  return os.str();
}

// Points whose region-side endpoint lies in component c.
std::map<std::size_t, std::vector<GraphPoint>> by_component(const LeveledGraph& g,
                                                            const std::vector<GraphPoint>& pts,
                                                            const std::vector<std::size_t>& comp,
                                                            const Rational& lo, const Rational& hi) {
  std::map<std::size_t, std::vector<GraphPoint>> out;
  for (const auto& p : pts)
    if (const auto v = entry_vertex(g, p, lo, hi)) out[comp[*v]].push_back(p);
  return out;
}

struct Checker {
  const LeveledGraph& g;
  Adjacency adj;
  ConditionReport rep;
  Rational below, above;  // sentinels outside the level range

  explicit Checker(const LeveledGraph& graph, TheoremTag tag) : g(graph), adj(adjacency(graph)) {
    rep.tag = tag;
    below = g.num_vertices() ? g.min_level() - 1 : Rational(-1);
    above = g.num_vertices() ? g.max_level() + 1 : Rational(1);
  }

  bool verdict(std::string name, bool pass, std::string detail) {
    rep.conditions.push_back({std::move(name), pass, std::move(detail)});
    return pass;
  }

  bool regular_levels(const ConditionParams& p) {
    bool ok = true;
    for (const auto* t : {&p.t1, &p.t2}) {
      const auto vs = vertices_at(g, *t);
      std::string detail = "no vertex at level " + to_string(*t);
      if (!vs.empty()) {
        detail = "vertex";
        for (auto v : vs) detail += " " + std::to_string(v);
        detail += " lies at level " + to_string(*t);
      }
      ok &= verdict("regular level t" + std::string(t == &p.t1 ? "1" : "2"), vs.empty(), detail);
    }
    return ok;
  }

  void connected() {
    const auto c = g.components().size();
    verdict("connected", c == 1, std::to_string(c) + " component" + (c == 1 ? "" : "s"));
  }

  void mt1(const ConditionParams& p) {
    const auto p1 = points_at(g, p.t1), p2 = points_at(g, p.t2);
    // Two points at one end converge along the edge of a single point at the other end.
    auto converge = [&](const std::vector<GraphPoint>& pairs, const std::vector<GraphPoint>& singles) -> bool {
      for (const auto& q : singles)
        for (std::size_t a = 0; a < pairs.size(); ++a)
          for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            auto x = find_arc(g, adj, pairs[a], q, p.t1, p.t2, "arc 1");
            auto y = find_arc(g, adj, pairs[b], q, p.t1, p.t2, "arc 2");
            if (!x || !y || x->vertices.empty() || y->vertices.empty()) continue;
            rep.arcs.push_back(std::move(*x));
            rep.arcs.push_back(std::move(*y));
            return true;
          }
      return false;
    };
    if (converge(p1, p2)) {
      verdict("converging arc pair", true, "two points at t1 meet before reaching one point at t2");
    } else if (converge(p2, p1)) {
      verdict("converging arc pair", true, "two points at t2 meet before reaching one point at t1");
    } else {
      verdict("converging arc pair", false,
              "no two arcs over (t1, t2) share a terminal sub-arc (t1: " + describe(p1) + "; t2: " + describe(p2) +
                  ")");
    }
  }

  // First component carrying at least n1 entering and n2 leaving points.
  std::optional<std::pair<std::vector<GraphPoint>, std::vector<GraphPoint>>> family(const ConditionParams& p,
                                                                                   std::size_t n1,
                                                                                   std::size_t n2) {
    const auto comp = region_components(g, adj, p.t1, p.t2);
    auto in = by_component(g, points_at(g, p.t1), comp, p.t1, p.t2);
    auto out = by_component(g, points_at(g, p.t2), comp, p.t1, p.t2);
    for (auto& [c, pts] : in) {
      auto it = out.find(c);
      if (pts.size() >= n1 && it != out.end() && it->second.size() >= n2) return std::make_pair(pts, it->second);
    }
    return std::nullopt;
  }

  void grid_arcs(const std::vector<GraphPoint>& s1, const std::vector<GraphPoint>& s2, const ConditionParams& p) {
    for (std::size_t a = 0; a < s1.size(); ++a)
      for (std::size_t b = 0; b < s2.size(); ++b) {
        auto arc = find_arc(g, adj, s1[a], s2[b], p.t1, p.t2,
                            "arc " + std::to_string(a + 1) + "," + std::to_string(b + 1));
        if (!arc) throw IntegrityError("component bookkeeping disagrees with arc search");
        rep.arcs.push_back(std::move(*arc));
      }
  }

  void mt2(const ConditionParams& p) {
    const auto f = family(p, 3, 3);
    if (!f) {
      verdict("3x3 arc family", false,
              "no component over (t1, t2) is entered by 3 points at t1 and left by 3 points at t2 (" +
                  describe(points_at(g, p.t1)) + "; " + describe(points_at(g, p.t2)) + ")");
      return;
    }
    const std::vector<GraphPoint> s1(f->first.begin(), f->first.begin() + 3), s2(f->second.begin(), f->second.begin() + 3);
    grid_arcs(s1, s2, p);
    verdict("3x3 arc family", true, "9 arcs over (t1, t2)");
  }

  // Same-level arc between two points at level t: into the region below or above t.
  std::optional<WitnessArc> same_level(const GraphPoint& a, const GraphPoint& b, const Rational& lo,
                                       const Rational& hi, std::string label) {
    return find_arc(g, adj, a, b, lo, hi, std::move(label));
  }

  void mt3(const ConditionParams& p, const Rational& t1o, const Rational& t2o) {
    const auto comp = region_components(g, adj, p.t1, p.t2);
    auto in = by_component(g, points_at(g, p.t1), comp, p.t1, p.t2);
    auto out = by_component(g, points_at(g, p.t2), comp, p.t1, p.t2);
    struct Pick {
      std::vector<GraphPoint> s1, s2;
      bool c = false, b = false;
    };
    std::optional<Pick> best;
    for (auto& [c, pts] : in) {
      auto it = out.find(c);
      if (pts.size() < 2 || it == out.end() || it->second.size() < 3) continue;
      const auto& outs = it->second;
      Pick pick;
      pick.s1 = {pts[0], pts[1]};
      pick.s2 = {outs[0], outs[1], outs[2]};
      for (std::size_t x = 0; x < pts.size() && !pick.c; ++x)
        for (std::size_t y = x + 1; y < pts.size() && !pick.c; ++y)
          if (same_level(pts[x], pts[y], t1o, p.t1, "")) {
            pick.c = true;
            pick.s1 = {pts[x], pts[y]};
          }
      for (std::size_t x = 0; x < outs.size() && !pick.b; ++x)
        for (std::size_t y = x + 1; y < outs.size() && !pick.b; ++y)
          for (std::size_t z = y + 1; z < outs.size() && !pick.b; ++z) {
            const GraphPoint& u = outs[x];
            const GraphPoint& v = outs[y];
            const GraphPoint& w = outs[z];
            if (same_level(u, v, p.t2, t2o, "") && same_level(u, w, p.t2, t2o, "") &&
                same_level(v, w, p.t2, t2o, "")) {
              pick.b = true;
              pick.s2 = {u, v, w};
            }
          }
      if (!best || (pick.c + pick.b > best->c + best->b)) best = pick;
    }
    if (!best) {
      verdict("2x3 arc family", false,
              "no component over (t1, t2) is entered by 2 points at t1 and left by 3 points at t2 (" +
                  describe(points_at(g, p.t1)) + "; " + describe(points_at(g, p.t2)) + ")");
      verdict("reduction C", false, "base arc family missing");
      verdict("reduction B", false, "base arc family missing");
      return;
    }
    grid_arcs(best->s1, best->s2, p);
    verdict("2x3 arc family", true, "6 arcs over (t1, t2)");

    // Same-level arcs: prefer the reduced regions, fall back to (t1, t2).
    auto t1_arc = same_level(best->s1[0], best->s1[1], best->c ? t1o : below, p.t1, "t1 pair");
    if (!t1_arc) t1_arc = same_level(best->s1[0], best->s1[1], p.t1, p.t2, "t1 pair");
    verdict("same-level arc at t1", t1_arc.has_value(), t1_arc ? "found" : "missing");
    if (t1_arc) rep.arcs.push_back(*t1_arc);
    bool all = true;
    for (std::size_t x = 0; x < 3; ++x)
      for (std::size_t y = x + 1; y < 3; ++y) {
        const std::string label = "t2 pair " + std::to_string(x + 1) + "," + std::to_string(y + 1);
        auto arc = same_level(best->s2[x], best->s2[y], p.t2, best->b ? t2o : above, label);
        if (!arc) arc = same_level(best->s2[x], best->s2[y], p.t1, p.t2, label);
        all &= arc.has_value();
        if (arc) rep.arcs.push_back(*arc);
      }
    verdict("same-level arcs at t2", all, all ? "found" : "missing");

    const auto in1 = "(" + to_string(t1o) + ", " + to_string(p.t1) + ")";
    const auto in2 = "(" + to_string(p.t2) + ", " + to_string(t2o) + ")";
    rep.conditions.push_back({"reduction C", best->c,
                              best->c ? "t1 pair joined inside " + in1 : "no t1 pair joined inside " + in1});
    rep.conditions.push_back({"reduction B", best->b,
                              best->b ? "t2 triple pairwise joined inside " + in2
                                      : "no t2 triple pairwise joined inside " + in2});
  }

  void thm2() {
    std::vector<std::size_t> lower(g.num_vertices(), 0), upper(g.num_vertices(), 0);
    for (const auto& e : g.edges()) {
      ++upper[e.lower];
      ++lower[e.upper];
    }
    std::string bad_deg, bad_ext;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      const auto d = lower[v] + upper[v];
      if (d != 1 && d != 3) bad_deg += " " + std::to_string(v) + "(deg " + std::to_string(d) + ")";
      if ((lower[v] == 0 || upper[v] == 0) && d != 1) bad_ext += " " + std::to_string(v);
    }
    verdict("degrees 1 or 3", bad_deg.empty(), bad_deg.empty() ? "all vertices" : "violated at" + bad_deg);
    const auto levels = g.distinct_levels();
    verdict("distinct vertex levels", levels.size() == g.num_vertices(),
            std::to_string(g.num_vertices() - levels.size()) + " repeated level(s)");
    verdict("extrema only at leaves", bad_ext.empty(), bad_ext.empty() ? "all extrema have degree 1"
                                                                       : "extremum of higher degree at" + bad_ext);
  }
};

std::pair<Rational, Rational> default_outer_levels(const LeveledGraph& g, const Rational& t1, const Rational& t2) {
  const auto levels = g.distinct_levels();
  std::vector<Rational> lo, hi;
  for (const auto& l : levels) {
    if (l < t1) lo.push_back(l);
    if (l > t2) hi.push_back(l);
  }
  if (lo.size() < 2 || hi.size() < 2)
    throw InvalidArgument("default outer band levels need two vertex levels below t1 and two above t2");
  return {(lo[lo.size() - 2] + lo.back()) / 2, (hi[0] + hi[1]) / 2};
}

}  // namespace

bool arc_is_valid(const LeveledGraph& g, const WitnessArc& a) {
  if (!(a.lo < a.hi)) return false;
  if (a.from.edge >= g.num_edges() || a.to.edge >= g.num_edges()) return false;
  for (const auto* p : {&a.from, &a.to}) {
    const auto& e = g.edge(p->edge);
    if (!(g.level(e.lower) < p->level && p->level < g.level(e.upper))) return false;
    if (p->level != a.lo && p->level != a.hi) return false;
  }
  if (a.from == a.to) return false;
  if (a.vertices.empty()) return a.from.edge == a.to.edge && a.from.level != a.to.level;
  std::vector<std::size_t> seen = a.vertices;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  for (auto v : a.vertices)
    if (!inside(g.level(v), a.lo, a.hi)) return false;
  const auto adj = adjacency(g);
  for (std::size_t i = 1; i < a.vertices.size(); ++i)
    if (!std::binary_search(adj[a.vertices[i - 1]].begin(), adj[a.vertices[i - 1]].end(), a.vertices[i]))
      return false;
  auto touches = [&](const GraphPoint& p, std::size_t v) {
    const auto& e = g.edge(p.edge);
    return p.level == a.lo ? e.upper == v : e.lower == v;
  };
  return a.from.edge != a.to.edge && touches(a.from, a.vertices.front()) && touches(a.to, a.vertices.back());
}

ConditionReport validate_conditions(const LeveledGraph& g, const ConditionParams& p, TheoremTag tag) {
  g.validate();
  Checker ck(g, tag);
  if (tag == TheoremTag::THM2) {
    ck.connected();
    ck.thm2();
  } else {
    if (p.t1 >= p.t2) throw InvalidArgument("t1 must be below t2");
    ck.connected();
    if (ck.regular_levels(p)) {
      switch (tag) {
        case TheoremTag::MT1: ck.mt1(p); break;
        case TheoremTag::MT2: ck.mt2(p); break;
        case TheoremTag::MT3: {
          Rational t1o, t2o;
          if (!p.t1_outer || !p.t2_outer) std::tie(t1o, t2o) = default_outer_levels(g, p.t1, p.t2);
          if (p.t1_outer) t1o = *p.t1_outer;
          if (p.t2_outer) t2o = *p.t2_outer;
          if (!(t1o < p.t1) || !(p.t2 < t2o)) throw InvalidArgument("outer band levels must enclose (t1, t2)");
          ck.mt3(p, t1o, t2o);
          break;
        }
        default: break;
      }
    } else {
      ck.rep.diagnostics.push_back("arc conditions skipped: t1 and t2 must be regular levels");
    }
  }
  ck.rep.pass = true;
  for (const auto& c : ck.rep.conditions)
    if (c.name != "reduction C" && c.name != "reduction B") ck.rep.pass &= c.pass;
  return ck.rep;
}

BandSpec factor_spec(const LeveledGraph& base, const std::vector<Band>& bands, const FactorOuter& outer) {
  if (bands.empty()) throw InvalidArgument("factor needs at least one band");
  BandSpec s;
  s.bands = bands;
  s.outer_center = outer.center ? *outer.center
                                : RationalPoint{(bands.front().t_lo + bands.back().t_hi) / 2, Rational(0)};
  if (outer.radius) {
    s.outer_radius = *outer.radius;
    return s;
  }
  const Rational& cx = s.outer_center[0];
  Rational reach = std::max(cx - base.min_level(), base.max_level() - cx) + 1;
  for (long r = 10;; r += 10) {
    if (Rational(r) < reach) continue;
    s.outer_radius = r;
    try {
      build_band_domain(s);
      return s;
    } catch (const BuildError&) {
      if (r > 100000) throw;
    }
  }
}

namespace {

FamilyResult assemble(TheoremTag tag, const NCDomain& base, const LeveledGraph& base_graph, std::vector<Band> bands,
                      std::vector<unsigned> indices, Reduction red, const FactorOuter& outer, ConditionReport rep) {
  for (auto i : indices)
    if (i == 0) throw InvalidArgument("family indices must be positive");
  FamilyResult r;
  r.tag = tag;
  r.indices = std::move(indices);
  r.reduction = red;
  r.conditions = std::move(rep);
  r.factor_spec = factor_spec(base_graph, bands, outer);
  const NCDomain factor = build_band_domain(r.factor_spec);
  r.factor_graph = reeb_exact(factor);
  r.domain = lift_product(base, factor);
  auto fp = fiber_product(base_graph, r.factor_graph);
  r.prediction = std::move(fp.graph);
  r.coincident_levels = std::move(fp.coincident_levels);
  for (const auto& b : bands) r.fold_counts.push_back(sheet_count(r.factor_graph, (b.t_lo + b.t_hi) / 2));
  return r;
}

}  // namespace

FamilyResult mt1_family(const NCDomain& base, const LeveledGraph& base_graph, const Rational& t1, const Rational& t2,
                        unsigned i, const FactorOuter& outer) {
  if (i == 0) throw InvalidArgument("family index must be positive");
  auto rep = validate_conditions(base_graph, {t1, t2, {}, {}}, TheoremTag::MT1);
  if (!rep.pass) throw ConditionFailure(std::move(rep));
  return assemble(TheoremTag::MT1, base, base_graph, {{t1, t2, i}}, {i}, Reduction::None, outer, std::move(rep));
}

FamilyResult mt2_family(const NCDomain& base, const LeveledGraph& base_graph, const Rational& t1, const Rational& t2,
                        unsigned i, const FactorOuter& outer) {
  if (i == 0) throw InvalidArgument("family index must be positive");
  auto rep = validate_conditions(base_graph, {t1, t2, {}, {}}, TheoremTag::MT2);
  if (!rep.pass) throw ConditionFailure(std::move(rep));
  return assemble(TheoremTag::MT2, base, base_graph, {{t1, t2, i + 7}}, {i}, Reduction::None, outer,
                  std::move(rep));
}

FamilyResult mt3_family(const NCDomain& base, const LeveledGraph& base_graph, const ConditionParams& p, unsigned i1,
                        unsigned i2, unsigned i3, Reduction reduction, const FactorOuter& outer) {
  if (i1 == 0 || i2 == 0 || i3 == 0) throw InvalidArgument("family indices must be positive");
  if (p.t1 >= p.t2) throw InvalidArgument("t1 must be below t2");
  ConditionParams q = p;
  if (!q.t1_outer || !q.t2_outer) {
    const auto [lo, hi] = default_outer_levels(base_graph, p.t1, p.t2);
    if (!q.t1_outer) q.t1_outer = lo;
    if (!q.t2_outer) q.t2_outer = hi;
  }
  auto rep = validate_conditions(base_graph, q, TheoremTag::MT3);
  if (!rep.pass) throw ConditionFailure(std::move(rep));
  const bool need_c = reduction == Reduction::C || reduction == Reduction::BC;
  const bool need_b = reduction == Reduction::B || reduction == Reduction::BC;
  if ((need_c && !rep.find("reduction C")->pass) || (need_b && !rep.find("reduction B")->pass)) {
    rep.pass = false;
    rep.diagnostics.push_back(std::string("reduction ") + to_string(reduction) + " is not licensed by this base");
    throw ConditionFailure(std::move(rep));
  }
  std::vector<Band> bands{{*q.t1_outer, p.t1, i1}, {p.t1, p.t2, mt3_middle_holes(i2, reduction)},
                          {p.t2, *q.t2_outer, i3 + 1}};
  return assemble(TheoremTag::MT3, base, base_graph, std::move(bands), {i1, i2, i3}, reduction, outer,
                  std::move(rep));
}

}  // namespace ncreeb

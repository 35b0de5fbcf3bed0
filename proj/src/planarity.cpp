#include "ncreeb/planarity.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "ncreeb/error.hpp"
#include "ncreeb/reeb.hpp"

namespace ncreeb {

const char* to_string(KuratowskiKind k) { return k == KuratowskiKind::K5 ? "K5" : "K33"; }

std::optional<std::string> witness_problem(const LeveledGraph& g, const KuratowskiWitness& w) {
  const bool k5 = w.kind == KuratowskiKind::K5;
  const std::size_t nb = k5 ? 5 : 6, np = k5 ? 10 : 9;
  if (w.branch.size() != nb) return "expected " + std::to_string(nb) + " branch vertices";
  if (w.paths.size() != np) return "expected " + std::to_string(np) + " paths";
  std::set<std::size_t> branch(w.branch.begin(), w.branch.end());
  if (branch.size() != nb) return std::string("branch vertices repeat");
  for (auto b : branch)
    if (b >= g.num_vertices()) return "branch vertex " + std::to_string(b) + " does not exist";
  std::set<std::size_t> internal, edges;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < w.paths.size(); ++i) {
    const auto& p = w.paths[i];
    const std::string tag = "path " + std::to_string(i) + ": ";
    if (p.vertices.size() < 2 || p.edges.size() + 1 != p.vertices.size()) return tag + "malformed";
    for (std::size_t k = 0; k < p.edges.size(); ++k) {
      if (p.edges[k] >= g.num_edges()) return tag + "edge " + std::to_string(p.edges[k]) + " does not exist";
      const auto& e = g.edge(p.edges[k]);
      const auto a = p.vertices[k], b = p.vertices[k + 1];
      if (!((e.lower == a && e.upper == b) || (e.lower == b && e.upper == a)))
        return tag + "edge " + std::to_string(p.edges[k]) + " does not join its neighbours";
      if (!edges.insert(p.edges[k]).second) return tag + "edge " + std::to_string(p.edges[k]) + " reused";
    }
    const auto s = p.vertices.front(), t = p.vertices.back();
    if (!branch.count(s) || !branch.count(t) || s == t) return tag + "does not join two branch vertices";
    for (std::size_t k = 1; k + 1 < p.vertices.size(); ++k) {
      const auto v = p.vertices[k];
      if (branch.count(v)) return tag + "passes through branch vertex " + std::to_string(v);
      if (!internal.insert(v).second) return tag + "vertex " + std::to_string(v) + " shared with another path";
    }
    if (!pairs.insert(std::minmax(s, t)).second) return tag + "duplicates a branch pair";
  }
  if (!k5) {
    const std::set<std::size_t> side(w.branch.begin(), w.branch.begin() + 3);
    for (const auto& [a, b] : pairs)
      if (side.count(a) == side.count(b)) return "path joins two branch vertices on the same side";
  }
  return std::nullopt;
}

std::size_t count_faces(const LeveledGraph& g, const std::vector<std::vector<std::size_t>>& rotation) {
  // Dart (e, v) leaves v along e. The face successor of (e, v) is the dart
  // following e in the rotation at the other end.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> position;
  for (std::size_t v = 0; v < rotation.size(); ++v)
    for (std::size_t i = 0; i < rotation[v].size(); ++i) position[{v, rotation[v][i]}] = i;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t faces = 0;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (rotation[v].empty()) {
      ++faces;
      continue;
    }
    for (auto e0 : rotation[v]) {
      if (seen.count({e0, v})) continue;
      ++faces;
      std::size_t e = e0, at = v;
      while (seen.insert({e, at}).second) {
        const auto w = g.other_end(e, at);
        const auto& rw = rotation[w];
        e = rw[(position.at({w, e}) + 1) % rw.size()];
        at = w;
      }
    }
  }
  return faces;
}

bool rotation_is_planar(const LeveledGraph& g, const std::vector<std::vector<std::size_t>>& rotation) {
  if (rotation.size() != g.num_vertices()) return false;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    auto r = rotation[v];
    std::sort(r.begin(), r.end());
    std::vector<std::size_t> want;
    for (std::size_t e = 0; e < g.num_edges(); ++e)
      if (g.edge(e).lower == v || g.edge(e).upper == v) want.push_back(e);
    if (r != want) return false;
  }
  const std::size_t c = g.components().size();
  return count_faces(g, rotation) + g.num_vertices() == g.num_edges() + 2 * c;
}

namespace {

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                     boost::property<boost::vertex_index_t, int>,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;

// Simple graph with every repeated edge subdivided once; subdivision vertices
// are numbered after the original ones.
struct SimpleView {
  std::size_t n = 0, total = 0;
  std::vector<std::array<std::size_t, 2>> ends;
  std::vector<std::size_t> original;  // simple edge -> original edge
};

SimpleView simple_view(const LeveledGraph& g) {
  SimpleView s;
  s.n = s.total = g.num_vertices();
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto a = g.edge(e).lower, b = g.edge(e).upper;
    if (seen.insert(std::minmax(a, b)).second) {
      s.ends.push_back({a, b});
      s.original.push_back(e);
    } else {
      const auto m = s.total++;
      s.ends.push_back({a, m});
      s.original.push_back(e);
      s.ends.push_back({m, b});
      s.original.push_back(e);
    }
  }
  return s;
}

bool subset_planar(const SimpleView& s, const std::vector<std::size_t>& sub) {
  BGraph bg(s.total);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    auto [e, ok] = boost::add_edge(s.ends[sub[i]][0], s.ends[sub[i]][1], bg);
    boost::put(boost::edge_index, bg, e, static_cast<int>(i));
  }
  return boost::boyer_myrvold_planarity_test(bg);
}

// Drops edges while the rest stays non-planar. The extractor's edge set is
// not always a clean subdivision, but an edge-minimal non-planar graph is.
std::vector<std::size_t> minimal_nonplanar(const SimpleView& s, std::vector<std::size_t> sub) {
  if (subset_planar(s, sub)) {
    sub.resize(s.ends.size());
    std::iota(sub.begin(), sub.end(), 0);
  }
  for (std::size_t i = sub.size(); i-- > 0;) {
    auto trial = sub;
    trial.erase(trial.begin() + static_cast<long>(i));
    if (!subset_planar(s, trial)) sub = std::move(trial);
  }
  return sub;
}

KuratowskiWitness witness_from_edges(const LeveledGraph& g, const SimpleView& s, const std::vector<std::size_t>& sub) {
  std::vector<std::vector<std::size_t>> inc(s.total);
  for (auto k : sub) {
    inc[s.ends[k][0]].push_back(k);
    inc[s.ends[k][1]].push_back(k);
  }
  KuratowskiWitness w;
  std::vector<bool> is_branch(s.total, false);
  for (std::size_t v = 0; v < s.total; ++v)
    if (inc[v].size() >= 3) {
      w.branch.push_back(v);
      is_branch[v] = true;
    }
  w.kind = w.branch.size() == 5 ? KuratowskiKind::K5 : KuratowskiKind::K33;
  std::set<std::size_t> walked;
  for (auto b : w.branch)
    for (auto k0 : inc[b]) {
      if (walked.count(k0)) continue;
      std::vector<std::size_t> verts{b}, simple_edges;
      std::size_t k = k0, at = b;
      for (;;) {
        walked.insert(k);
        simple_edges.push_back(k);
        at = s.ends[k][0] == at ? s.ends[k][1] : s.ends[k][0];
        verts.push_back(at);
        if (is_branch[at]) break;
        k = inc[at][0] == k ? inc[at][1] : inc[at][0];
      }
      WitnessPath p;
      for (auto v : verts)
        if (v < s.n) p.vertices.push_back(v);
      for (auto se : simple_edges)
        if (p.edges.empty() || p.edges.back() != s.original[se]) p.edges.push_back(s.original[se]);
      w.paths.push_back(std::move(p));
    }
  if (w.kind == KuratowskiKind::K33 && w.branch.size() == 6) {
    // Side of the first branch vertex: those not adjacent to it through a path.
    std::set<std::size_t> other;
    for (const auto& p : w.paths) {
      if (p.vertices.front() == w.branch[0]) other.insert(p.vertices.back());
      if (p.vertices.back() == w.branch[0]) other.insert(p.vertices.front());
    }
    std::vector<std::size_t> a, b;
    for (auto v : w.branch) (other.count(v) ? b : a).push_back(v);
    w.branch = a;
    w.branch.insert(w.branch.end(), b.begin(), b.end());
  }
  (void)g;
  return w;
}

// Disjoint path routing between fixed branch vertices.
class Router {
public:
  Router(const LeveledGraph& g, std::size_t budget) : g_(g), budget_(budget) {
    adj_.resize(g.num_vertices());
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      adj_[g.edge(e).lower].push_back({g.edge(e).upper, e});
      adj_[g.edge(e).upper].push_back({g.edge(e).lower, e});
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
  }

  bool exhausted() const { return budget_ == 0; }

  std::optional<std::vector<WitnessPath>> route(const std::vector<std::size_t>& branch,
                                                std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    blocked_.assign(g_.num_vertices(), false);
    for (auto b : branch) blocked_[b] = true;
    std::vector<std::size_t> dist;
    for (auto [a, b] : pairs) dist.push_back(distance(a, b));
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return dist[x] > dist[y]; });
    pairs_.clear();
    for (auto i : order) {
      if (dist[i] == SIZE_MAX) return std::nullopt;
      pairs_.push_back(pairs[i]);
    }
    paths_.assign(pairs_.size(), {});
    if (!solve(0)) return std::nullopt;
    return paths_;
  }

private:
  std::size_t distance(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> d(g_.num_vertices(), SIZE_MAX);
    std::queue<std::size_t> q;
    d[a] = 0;
    q.push(a);
    while (!q.empty()) {
      const auto v = q.front();
      q.pop();
      for (auto [w, e] : adj_[v]) {
        if (d[w] != SIZE_MAX) continue;
        if (w == b) return d[v] + 1;
        if (blocked_[w]) continue;
        d[w] = d[v] + 1;
        q.push(w);
      }
    }
    return SIZE_MAX;
  }

  bool solve(std::size_t i) {
    if (i == pairs_.size()) return true;
    const auto [a, b] = pairs_[i];
    const std::size_t lo = distance(a, b);
    if (lo == SIZE_MAX) return false;
    for (std::size_t len = lo; len < g_.num_vertices(); ++len) {
      WitnessPath p;
      p.vertices.push_back(a);
      if (extend(i, b, len, p)) return true;
      if (budget_ == 0) return false;
    }
    return false;
  }

  bool extend(std::size_t i, std::size_t target, std::size_t len, WitnessPath& p) {
    if (budget_ == 0) return false;
    --budget_;
    const auto at = p.vertices.back();
    const std::size_t steps = p.edges.size();
    for (const auto& [w, e] : adj_[at]) {
      if (steps + 1 == len) {
        if (w != target) continue;
        if (!p.edges.empty() && p.edges.back() == e) continue;
        p.vertices.push_back(w);
        p.edges.push_back(e);
        paths_[i] = p;
        if (remaining_connected(i + 1) && solve(i + 1)) return true;
        p.vertices.pop_back();
        p.edges.pop_back();
        if (budget_ == 0) return false;
        // Parallel copies of the last edge lead to the same state.
        return false;
      }
      if (blocked_[w] || w == target) continue;
      blocked_[w] = true;
      p.vertices.push_back(w);
      p.edges.push_back(e);
      const bool ok = extend(i, target, len, p);
      p.vertices.pop_back();
      p.edges.pop_back();
      blocked_[w] = false;
      if (ok) return true;
      if (budget_ == 0) return false;
    }
    return false;
  }

  bool remaining_connected(std::size_t from) const {
    for (std::size_t j = from; j < pairs_.size(); ++j)
      if (distance(pairs_[j].first, pairs_[j].second) == SIZE_MAX) return false;
    return true;
  }

  const LeveledGraph& g_;
  std::size_t budget_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
  std::vector<bool> blocked_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::vector<WitnessPath> paths_;
};

template <typename F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    if (f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::optional<KuratowskiWitness> find_kuratowski(const LeveledGraph& g, KuratowskiKind kind, std::size_t budget) {
  const bool k5 = kind == KuratowskiKind::K5;
  const std::size_t need_deg = k5 ? 4 : 3, nb = k5 ? 5 : 6;
  std::vector<std::size_t> distinct(g.num_vertices(), 0), degree(g.num_vertices(), 0);
  {
    std::vector<std::set<std::size_t>> nbrs(g.num_vertices());
    for (const auto& e : g.edges()) {
      nbrs[e.lower].insert(e.upper);
      nbrs[e.upper].insert(e.lower);
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      distinct[v] = nbrs[v].size();
      degree[v] = g.degree(v);
    }
  }
  std::vector<std::size_t> cand;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (distinct[v] >= need_deg) cand.push_back(v);
  std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) { return degree[a] > degree[b]; });
  if (cand.size() < nb) return std::nullopt;
  cand.resize(std::min<std::size_t>(cand.size(), 10));

  Router router(g, budget);
  std::optional<KuratowskiWitness> found;
  for_each_subset(cand.size(), nb, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::size_t> branch;
    for (auto i : idx) branch.push_back(cand[i]);
    std::vector<std::vector<std::size_t>> arrangements;
    if (k5) {
      arrangements.push_back(branch);
    } else {
      auto by_level = branch;
      std::stable_sort(by_level.begin(), by_level.end(), [&](auto a, auto b) { return g.level(a) < g.level(b); });
      arrangements.push_back(by_level);
      // remaining splits with by_level[0] on the first side
      for_each_subset(5, 2, [&](const std::vector<std::size_t>& s) {
        std::vector<std::size_t> a{by_level[0], by_level[1 + s[0]], by_level[1 + s[1]]}, b;
        for (std::size_t j = 1; j < 6; ++j)
          if (j != 1 + s[0] && j != 1 + s[1]) b.push_back(by_level[j]);
        a.insert(a.end(), b.begin(), b.end());
        if (a != by_level) arrangements.push_back(a);
        return false;
      });
    }
    for (const auto& br : arrangements) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      if (k5) {
        for (std::size_t x = 0; x < 5; ++x)
          for (std::size_t y = x + 1; y < 5; ++y) pairs.push_back({br[x], br[y]});
      } else {
        for (std::size_t x = 0; x < 3; ++x)
          for (std::size_t y = 3; y < 6; ++y) pairs.push_back({br[x], br[y]});
      }
      if (auto paths = router.route(br, pairs)) {
        found = KuratowskiWitness{kind, br, std::move(*paths)};
        return true;
      }
      if (router.exhausted()) return true;
    }
    return false;
  });
  if (found && witness_problem(g, *found)) throw IntegrityError("targeted search produced an invalid witness");
  return found;
}

PlanarityResult planarity_test(const LeveledGraph& g, const PlanarityOptions& opts) {
  if (g.num_vertices() > opts.cap)
    throw CapacityError("planarity test is capped at " + std::to_string(opts.cap) + " vertices");
  const SimpleView s = simple_view(g);
  BGraph bg(s.total);
  for (std::size_t k = 0; k < s.ends.size(); ++k) {
    auto [e, ok] = boost::add_edge(s.ends[k][0], s.ends[k][1], bg);
    boost::put(boost::edge_index, bg, e, static_cast<int>(k));
  }
  std::vector<std::vector<BEdge>> emb(s.total);
  std::vector<BEdge> kur;
  const bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kur));
  PlanarityResult r;
  r.planar = planar;
  if (planar) {
    r.rotation.resize(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (const auto& e : emb[v]) r.rotation[v].push_back(s.original[boost::get(boost::edge_index, bg, e)]);
    if (!rotation_is_planar(g, r.rotation)) throw IntegrityError("planar embedding failed the face count");
    return r;
  }
  if (opts.prefer) r.witness = find_kuratowski(g, *opts.prefer, opts.search_budget);
  if (!r.witness) {
    std::vector<std::size_t> sub;
    for (const auto& e : kur) sub.push_back(boost::get(boost::edge_index, bg, e));
    r.witness = witness_from_edges(g, s, minimal_nonplanar(s, sub));
  }
  if (auto problem = witness_problem(g, *r.witness)) throw IntegrityError("obstruction failed validation: " + *problem);
  return r;
}

namespace {

struct Proper {
  LeveledGraph g;
  std::vector<Rational> levels;
  std::vector<std::vector<std::size_t>> verts;  // per level, ascending ids
  std::vector<std::size_t> lvl;                 // level index per vertex
  std::vector<std::vector<std::size_t>> below, above;  // distinct neighbours
};

Proper make_proper(const LeveledGraph& g) {
  Proper p;
  p.levels = g.distinct_levels();
  p.g = refine(g, p.levels);
  p.verts.resize(p.levels.size());
  p.lvl.resize(p.g.num_vertices());
  for (std::size_t v = 0; v < p.g.num_vertices(); ++v) {
    p.lvl[v] = std::lower_bound(p.levels.begin(), p.levels.end(), p.g.level(v)) - p.levels.begin();
    p.verts[p.lvl[v]].push_back(v);
  }
  p.below.resize(p.g.num_vertices());
  p.above.resize(p.g.num_vertices());
  for (const auto& e : p.g.edges()) {
    p.below[e.upper].push_back(e.lower);
    p.above[e.lower].push_back(e.upper);
  }
  for (auto* side : {&p.below, &p.above})
    for (auto& l : *side) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  return p;
}

class LevelSearch {
public:
  explicit LevelSearch(const Proper& p) : p_(p), pos_(p.g.num_vertices(), 0), order_(p.levels.size()) {
    failed_[0].resize(p.levels.size());
    failed_[1].resize(p.levels.size());
  }

  std::optional<std::vector<std::vector<std::size_t>>> run() {
    if (p_.levels.empty()) return order_;
    std::size_t s = 0;
    for (std::size_t k = 1; k < p_.levels.size(); ++k)
      if (p_.verts[k].size() < p_.verts[s].size()) s = k;
    auto perm = p_.verts[s];
    do {
      set_order(s, perm);
      if (extend(s, +1) && extend(s, -1)) return order_;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }

private:
  void set_order(std::size_t k, const std::vector<std::size_t>& o) {
    order_[k] = o;
    for (std::size_t i = 0; i < o.size(); ++i) pos_[o[i]] = i;
  }

  // order_[k] is fixed; complete the levels beyond k in direction dir.
  bool extend(std::size_t k, int dir) {
    const long next = static_cast<long>(k) + dir;
    if (next < 0 || next >= static_cast<long>(p_.levels.size())) return true;
    const auto& vs = p_.verts[next];
    struct Span {
      std::size_t lo = SIZE_MAX, hi = 0;
      bool any = false;
    };
    std::vector<Span> span(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (auto w : dir > 0 ? p_.below[vs[i]] : p_.above[vs[i]]) {
        span[i].any = true;
        span[i].lo = std::min(span[i].lo, pos_[w]);
        span[i].hi = std::max(span[i].hi, pos_[w]);
      }
    std::vector<std::size_t> placed;
    std::vector<bool> used(vs.size(), false);
    return place(static_cast<std::size_t>(next), dir, vs, span, placed, used, 0, false);
  }

  template <typename SpanVec>
  bool place(std::size_t level, int dir, const std::vector<std::size_t>& vs, const SpanVec& span,
             std::vector<std::size_t>& placed, std::vector<bool>& used, std::size_t max_hi, bool have) {
    if (placed.size() == vs.size()) {
      std::vector<std::size_t> o;
      for (auto i : placed) o.push_back(vs[i]);
      auto& failed = failed_[dir > 0][level];
      if (failed.count(o)) return false;
      set_order(level, o);
      if (extend(level, dir)) return true;
      failed.insert(o);
      return false;
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (used[i]) continue;
      if (have && span[i].any && span[i].lo < max_hi) continue;
      used[i] = true;
      placed.push_back(i);
      const bool ok = place(level, dir, vs, span, placed, used, span[i].any ? std::max(max_hi, span[i].hi) : max_hi,
                            have || span[i].any);
      placed.pop_back();
      used[i] = false;
      if (ok) return true;
    }
    return false;
  }

  const Proper& p_;
  std::vector<std::size_t> pos_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::set<std::vector<std::size_t>>> failed_[2];
};

}  // namespace

std::size_t count_inversions(const LevelEmbedding& e) {
  const auto& g = e.proper;
  if (e.order.size() != e.levels.size()) throw IntegrityError("embedding has the wrong number of levels");
  std::vector<std::size_t> pos(g.num_vertices(), SIZE_MAX), lvl(g.num_vertices(), SIZE_MAX);
  for (std::size_t k = 0; k < e.order.size(); ++k)
    for (std::size_t i = 0; i < e.order[k].size(); ++i) {
      const auto v = e.order[k].at(i);
      if (v >= g.num_vertices() || pos[v] != SIZE_MAX || g.level(v) != e.levels[k])
        throw IntegrityError("embedding order is not a permutation of its level");
      pos[v] = i;
      lvl[v] = k;
    }
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (pos[v] == SIZE_MAX) throw IntegrityError("embedding omits vertex " + std::to_string(v));
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < g.num_edges(); ++a) {
    const auto& x = g.edge(a);
    if (lvl[x.upper] != lvl[x.lower] + 1) throw IntegrityError("embedding graph is not proper");
    for (std::size_t b = a + 1; b < g.num_edges(); ++b) {
      const auto& y = g.edge(b);
      if (lvl[y.lower] != lvl[x.lower] || x.lower == y.lower || x.upper == y.upper) continue;
      const bool lo = pos[x.lower] < pos[y.lower], hi = pos[x.upper] < pos[y.upper];
      inversions += lo != hi;
    }
  }
  return inversions;
}

LevelPlanarityResult level_planarity_test(const LeveledGraph& g, std::size_t cap) {
  g.validate();
  Proper p = make_proper(g);
  if (p.g.num_vertices() > cap)
    throw CapacityError("proper refinement has " + std::to_string(p.g.num_vertices()) +
                        " vertices, above the cap of " + std::to_string(cap));
  LevelPlanarityResult r;
  auto orders = LevelSearch(p).run();
  if (!orders) return r;
  r.level_planar = true;
  r.embedding = LevelEmbedding{std::move(p.g), std::move(p.levels), std::move(*orders)};
  if (count_inversions(*r.embedding) != 0) throw IntegrityError("level embedding has crossings");
  return r;
}

namespace {

// Crossing check between two consecutive levels under full permutations.
bool crossing_free(const Proper& p, std::size_t k, const std::vector<std::size_t>& pos) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (auto v : p.verts[k])
    for (auto w : p.above[v]) es.push_back({v, w});
  for (std::size_t a = 0; a < es.size(); ++a)
    for (std::size_t b = a + 1; b < es.size(); ++b) {
      const auto [u, x] = es[a];
      const auto [v, y] = es[b];
      if (u == v || x == y) continue;
      if ((pos[u] < pos[v]) != (pos[x] < pos[y])) return false;
    }
  return true;
}

bool brute(const Proper& p, std::size_t k, std::vector<std::size_t>& pos) {
  if (k == p.verts.size()) return true;
  auto perm = p.verts[k];
  do {
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
    if ((k == 0 || crossing_free(p, k - 1, pos)) && brute(p, k + 1, pos)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

bool level_planarity_oracle(const LeveledGraph& g, bool parallel) {
  g.validate();
  const Proper p = make_proper(g);
  if (p.levels.size() > 12) throw CapacityError("oracle is limited to 12 levels");
  for (const auto& v : p.verts)
    if (v.size() > 10) throw CapacityError("oracle is limited to 10 vertices per level");
  if (p.levels.empty()) return true;
  std::vector<std::vector<std::size_t>> firsts;
  auto perm = p.verts[0];
  do firsts.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  bool found = false;
  const long n = static_cast<long>(firsts.size());
#pragma omp parallel for schedule(dynamic) reduction(|| : found) if (parallel)
  for (long i = 0; i < n; ++i) {
    std::vector<std::size_t> pos(p.g.num_vertices(), 0);
    for (std::size_t j = 0; j < firsts[i].size(); ++j) pos[firsts[i][j]] = j;
    found = found || brute(p, 1, pos);
  }
  return found;
}

}  // namespace ncreeb

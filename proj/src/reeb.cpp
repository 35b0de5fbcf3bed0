#include "ncreeb/reeb.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "ncreeb/error.hpp"

namespace ncreeb {

namespace {

struct Circle {
  Rational cx, cy, r;
};

struct Arrangement {
  Circle outer;
  std::vector<Circle> holes;  // sorted by cy, then cx
};

Arrangement parse_arrangement(const NCDomain& d) {
  d.validate();
  if (d.ambient_dim != 2) throw UnsupportedDomain("exact sweep needs a plane domain; use the grid oracle");
  std::optional<Circle> outer;
  Arrangement a;
  for (std::size_t j = 0; j < d.constraints.size(); ++j) {
    const auto f = as_circle(d.constraints[j]);
    if (!f || !f->radius)
      throw UnsupportedDomain("constraint " + std::to_string(j + 1) +
                              " is not a circle with rational radius; use the grid oracle");
    Circle c{f->center_x, f->center_y, *f->radius};
    if (f->orientation == Orientation::InsidePositive) {
      if (outer) throw UnsupportedDomain("exact sweep supports a single outer circle; use the grid oracle");
      outer = c;
    } else {
      a.holes.push_back(c);
    }
  }
  if (!outer) throw UnsupportedDomain("exact sweep needs an inside-positive outer circle");
  a.outer = *outer;
  const Circle& o = a.outer;
  for (std::size_t i = 0; i < a.holes.size(); ++i) {
    const Circle& h = a.holes[i];
    const Rational dx = h.cx - o.cx, dy = h.cy - o.cy;
    if (h.r >= o.r || dx * dx + dy * dy >= (o.r - h.r) * (o.r - h.r))
      throw UnsupportedDomain("hole " + std::to_string(i + 1) + " is not strictly inside the outer circle");
    for (std::size_t k = 0; k < i; ++k) {
      const Circle& g = a.holes[k];
      const Rational ex = h.cx - g.cx, ey = h.cy - g.cy;
      if (ex * ex + ey * ey < (h.r + g.r) * (h.r + g.r))
        throw UnsupportedDomain("hole disks " + std::to_string(k + 1) + " and " + std::to_string(i + 1) +
                                " overlap");
    }
  }
  if (const auto* b = std::get_if<Ball>(&d.neighborhood)) {
    const Rational dx = b->center[0] - o.cx, dy = b->center[1] - o.cy;
    if (b->radius <= o.r || dx * dx + dy * dy >= (b->radius - o.r) * (b->radius - o.r))
      throw UnsupportedDomain("neighborhood ball cuts the outer disk; use the grid oracle");
  }
  std::stable_sort(a.holes.begin(), a.holes.end(), [](const Circle& x, const Circle& y) {
    return x.cy < y.cy || (x.cy == y.cy && x.cx < y.cx);
  });
  return a;
}

// |t - cx| compared with r: -1 strictly inside the x-range, 0 tangent, 1 outside.
int position(const Circle& c, const Rational& t) {
  Rational d = t - c.cx;
  if (sgn(d) < 0) d = -d;
  return cmp(d, c.r);
}

}  // namespace

LeveledGraph reeb_exact(const NCDomain& d) {
  const Arrangement a = parse_arrangement(d);
  const Circle& o = a.outer;

  std::vector<Rational> levels{o.cx - o.r, o.cx + o.r};
  for (const auto& h : a.holes) {
    levels.push_back(h.cx - h.r);
    levels.push_back(h.cx + h.r);
  }
  for (auto& l : levels) l.canonicalize();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  LeveledGraph g;
  // first_vertex[k] is the id of component 0 at levels[k]; components are consecutive ids.
  std::vector<std::size_t> first_vertex(levels.size());
  std::vector<std::vector<std::size_t>> open_active(levels.size());  // hole indices, cy order
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const Rational& s = levels[k];
    const bool extreme = (k == 0 || k + 1 == levels.size());
    std::vector<bool> singular;
    if (extreme) {
      singular.assign(1, true);
    } else {
      for (std::size_t h = 0; h < a.holes.size(); ++h)
        if (position(a.holes[h], s) < 0) open_active[k].push_back(h);
      singular.assign(open_active[k].size() + 1, false);
      for (std::size_t h = 0; h < a.holes.size(); ++h) {
        if (position(a.holes[h], s) != 0) continue;
        std::size_t below = 0;
        for (std::size_t q : open_active[k])
          if (a.holes[q].cy < a.holes[h].cy) ++below;
        singular[below] = true;
      }
    }
    first_vertex[k] = g.num_vertices();
    for (bool sg : singular) g.add_vertex(s, sg);
  }

  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const Rational mid = (levels[k] + levels[k + 1]) / 2;
    std::vector<std::size_t> active;
    for (std::size_t h = 0; h < a.holes.size(); ++h)
      if (position(a.holes[h], mid) < 0) active.push_back(h);
    // component index at level j of the track lying above `q` active holes
    auto end_component = [&](std::size_t j, std::size_t q) -> std::size_t {
      if (j == 0 || j + 1 == levels.size()) return 0;
      std::size_t count = 0;
      for (std::size_t p = 0; p < q; ++p)
        if (std::find(open_active[j].begin(), open_active[j].end(), active[p]) != open_active[j].end())
          ++count;
      return count;
    };
    for (std::size_t q = 0; q <= active.size(); ++q)
      g.add_edge(first_vertex[k] + end_component(k, q), first_vertex[k + 1] + end_component(k + 1, q));
  }
  return smooth(g);
}

SliceReport slice_report(const NCDomain& d, const Rational& t) {
  d.validate();
  if (d.ambient_dim != 2) throw UnsupportedDomain("slice reports need a plane domain");
  double lo = -INFINITY, hi = INFINITY;
  std::vector<std::pair<double, double>> removed;
  for (std::size_t j = 0; j < d.constraints.size(); ++j) {
    const auto f = as_circle(d.constraints[j]);
    if (!f) throw UnsupportedDomain("constraint " + std::to_string(j + 1) + " is not a circle");
    Rational dx = t - f->center_x;
    const Rational rem = f->radius_squared - dx * dx;
    const double half = std::sqrt(std::max(0.0, rem.get_d()));
    const double cy = f->center_y.get_d();
    if (f->orientation == Orientation::InsidePositive) {
      if (sgn(rem) < 0) {
        lo = 1.0;
        hi = 0.0;
        continue;
      }
      lo = std::max(lo, cy - half);
      hi = std::min(hi, cy + half);
    } else if (sgn(rem) > 0) {
      removed.emplace_back(cy - half, cy + half);
    }
  }
  SliceReport rep;
  rep.level = t;
  if (!(lo <= hi) || std::isinf(lo) || std::isinf(hi)) {
    if (lo <= hi) throw UnsupportedDomain("slice is unbounded");
    return rep;
  }
  std::sort(removed.begin(), removed.end());
  double cur = lo;
  for (auto [a, b] : removed) {
    if (b <= cur) continue;
    if (a >= hi) break;
    if (a >= cur) rep.components.push_back({cur, a});
    cur = std::max(cur, b);
  }
  if (cur <= hi) rep.components.push_back({cur, hi});
  rep.count = rep.components.size();
  return rep;
}

LeveledGraph refine(const LeveledGraph& g, std::vector<Rational> levels) {
  for (auto& l : levels) l.canonicalize();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  LeveledGraph out;
  for (const auto& v : g.vertices()) out.add_vertex(v.level, v.essential);
  for (const auto& e : g.edges()) {
    const Rational& a = g.level(e.lower);
    const Rational& b = g.level(e.upper);
    std::size_t prev = e.lower;
    for (auto it = std::upper_bound(levels.begin(), levels.end(), a); it != levels.end() && *it < b; ++it) {
      const std::size_t v = out.add_vertex(*it, false);
      out.add_edge(prev, v);
      prev = v;
    }
    out.add_edge(prev, e.upper);
  }
  return out;
}

LeveledGraph smooth(const LeveledGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::size_t>> up(n);
  std::vector<std::size_t> lower_count(n, 0);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    up[g.edge(e).lower].push_back(e);
    ++lower_count[g.edge(e).upper];
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!g.vertex(v).essential && (lower_count[v] != 1 || up[v].size() != 1))
      throw IntegrityError("non-essential vertex " + std::to_string(v) + " has degree " +
                           std::to_string(lower_count[v] + up[v].size()) + " (" +
                           std::to_string(lower_count[v]) + " lower, " + std::to_string(up[v].size()) +
                           " upper); cannot smooth");

  LeveledGraph out;
  std::vector<std::size_t> remap(n, SIZE_MAX);
  for (std::size_t v = 0; v < n; ++v)
    if (g.vertex(v).essential) remap[v] = out.add_vertex(g.level(v), true);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (!g.vertex(g.edge(e).lower).essential) continue;
    std::size_t top = g.edge(e).upper;
    while (!g.vertex(top).essential) top = g.edge(up[top].front()).upper;
    out.add_edge(remap[g.edge(e).lower], remap[top]);
  }
  return out;
}

namespace {

// A point of a leveled graph at a given level: a vertex there, or an edge crossing it.
struct LevelPoint {
  bool is_vertex;
  std::size_t id;
};

std::vector<LevelPoint> points_at(const LeveledGraph& g, const Rational& t) {
  std::vector<LevelPoint> out;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.level(v) == t) out.push_back({true, v});
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (g.level(g.edge(e).lower) < t && t < g.level(g.edge(e).upper)) out.push_back({false, e});
  return out;
}

// Index into points_at(g, t) of the point through which edge e passes at level t.
std::size_t point_of_edge(const std::vector<LevelPoint>& pts, const LeveledGraph& g, std::size_t e,
                          const Rational& t) {
  const auto& ed = g.edge(e);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    if (p.is_vertex && (p.id == ed.lower || p.id == ed.upper) && g.level(p.id) == t) return i;
    if (!p.is_vertex && p.id == e) return i;
  }
  throw IntegrityError("edge does not meet the requested level");
}

std::vector<std::size_t> edges_over(const LeveledGraph& g, const Rational& a, const Rational& b) {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.num_edges(); ++e)
    if (g.level(g.edge(e).lower) <= a && b <= g.level(g.edge(e).upper)) out.push_back(e);
  return out;
}

}  // namespace

FiberProduct fiber_product(const LeveledGraph& g1, const LeveledGraph& g2) {
  g1.validate();
  g2.validate();
  if (g1.num_vertices() == 0 || g2.num_vertices() == 0)
    throw InvalidArgument("fiber product of an empty graph");
  const Rational lo = std::max(g1.min_level(), g2.min_level());
  const Rational hi = std::min(g1.max_level(), g2.max_level());
  if (lo >= hi)
    throw InvalidArgument("level ranges [" + to_string(g1.min_level()) + ", " + to_string(g1.max_level()) +
                          "] and [" + to_string(g2.min_level()) + ", " + to_string(g2.max_level()) +
                          "] do not overlap on a nondegenerate interval");

  std::vector<Rational> levels;
  for (const auto* g : {&g1, &g2})
    for (const auto& l : g->distinct_levels())
      if (lo <= l && l <= hi) levels.push_back(l);
  levels.push_back(lo);
  levels.push_back(hi);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  FiberProduct out;
  {
    const auto l1 = g1.distinct_levels(), l2 = g2.distinct_levels();
    for (const auto& l : levels)
      if (std::binary_search(l1.begin(), l1.end(), l) && std::binary_search(l2.begin(), l2.end(), l))
        out.coincident_levels.push_back(l);
  }

  LeveledGraph p;
  std::vector<std::vector<LevelPoint>> pts1(levels.size()), pts2(levels.size());
  std::vector<std::size_t> base(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) {
    pts1[k] = points_at(g1, levels[k]);
    pts2[k] = points_at(g2, levels[k]);
    base[k] = p.num_vertices();
    for (const auto& a : pts1[k])
      for (const auto& b : pts2[k]) {
        const bool ess = (a.is_vertex && g1.vertex(a.id).essential) || (b.is_vertex && g2.vertex(b.id).essential);
        p.add_vertex(levels[k], ess);
      }
  }
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const auto e1s = edges_over(g1, levels[k], levels[k + 1]);
    const auto e2s = edges_over(g2, levels[k], levels[k + 1]);
    for (std::size_t e1 : e1s)
      for (std::size_t e2 : e2s) {
        const std::size_t lo_v = base[k] + point_of_edge(pts1[k], g1, e1, levels[k]) * pts2[k].size() +
                                 point_of_edge(pts2[k], g2, e2, levels[k]);
        const std::size_t hi_v = base[k + 1] +
                                 point_of_edge(pts1[k + 1], g1, e1, levels[k + 1]) * pts2[k + 1].size() +
                                 point_of_edge(pts2[k + 1], g2, e2, levels[k + 1]);
        p.add_edge(lo_v, hi_v);
      }
  }
  // Pairs of two non-vertex points that end up as range endpoints cannot be
  // smoothed; they only arise from malformed factors, so surface them.
  out.graph = smooth(p);
  return out;
}

std::size_t betti1(const LeveledGraph& g) {
  const auto comps = g.components();
  if (comps.size() > 1) {
    std::ostringstream os;
    os << "betti1 needs a connected graph; found " << comps.size() << " components:";
    for (const auto& c : comps) {
      os << " {";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << "}";
    }
    throw IntegrityError(os.str());
  }
  if (g.num_vertices() == 0) return 0;
  return g.num_edges() + 1 - g.num_vertices();
}

std::size_t sheet_count(const LeveledGraph& g, const Rational& t) {
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.level(v) == t)
      throw InvalidArgument("level " + to_string(t) + " carries vertex " + std::to_string(v) +
                            "; perturb the level");
  std::size_t n = 0;
  for (const auto& e : g.edges())
    if (g.level(e.lower) < t && t < g.level(e.upper)) ++n;
  return n;
}

std::size_t essential_vertices_between(const LeveledGraph& g, const Rational& lo, const Rational& hi) {
  std::size_t n = 0;
  for (const auto& v : g.vertices())
    if (v.essential && lo < v.level && v.level < hi) ++n;
  return n;
}

namespace {

class IsoSearch {
public:
  IsoSearch(const LeveledGraph& a, const LeveledGraph& b, IsoMode mode) : a_(a), b_(b) {
    n_ = a.num_vertices();
    adj_a_ = adjacency(a);
    adj_b_ = adjacency(b);
    sig_a_ = signatures(a, adj_a_, mode);
    sig_b_ = signatures(b, adj_b_, mode);
  }

  bool invariants_match() const {
    if (a_.num_vertices() != b_.num_vertices() || a_.num_edges() != b_.num_edges()) return false;
    auto sa = sig_a_, sb = sig_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return sa == sb;
  }

  std::optional<std::vector<std::size_t>> run() {
    // Search order: BFS from the vertex with the rarest signature.
    order_.clear();
    std::vector<bool> seen(n_, false);
    std::vector<std::size_t> by_rarity(n_);
    std::iota(by_rarity.begin(), by_rarity.end(), 0);
    auto freq = [&](std::size_t v) { return std::count(sig_a_.begin(), sig_a_.end(), sig_a_[v]); };
    std::stable_sort(by_rarity.begin(), by_rarity.end(),
                     [&](std::size_t x, std::size_t y) { return freq(x) < freq(y); });
    for (std::size_t s : by_rarity) {
      if (seen[s]) continue;
      std::vector<std::size_t> queue{s};
      seen[s] = true;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        const std::size_t v = queue[i];
        order_.push_back(v);
        for (std::size_t w = 0; w < n_; ++w)
          if (!seen[w] && adj_a_[v][w]) {
            seen[w] = true;
            queue.push_back(w);
          }
      }
    }
    map_.assign(n_, SIZE_MAX);
    used_.assign(n_, false);
    if (extend(0)) return map_;
    return std::nullopt;
  }

private:
  using Adjacency = std::vector<std::vector<std::size_t>>;
  using Signature = std::vector<long>;

  static Adjacency adjacency(const LeveledGraph& g) {
    Adjacency m(g.num_vertices(), std::vector<std::size_t>(g.num_vertices(), 0));
    for (const auto& e : g.edges()) {
      ++m[e.lower][e.upper];
      ++m[e.upper][e.lower];
    }
    return m;
  }

  static std::vector<Signature> signatures(const LeveledGraph& g, const Adjacency& adj, IsoMode mode) {
    const auto levels = g.distinct_levels();
    std::vector<long> deg(g.num_vertices(), 0);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      for (auto c : adj[v]) deg[v] += static_cast<long>(c);
    std::vector<Signature> out(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      Signature s{deg[v]};
      if (mode == IsoMode::Leveled)
        s.push_back(std::lower_bound(levels.begin(), levels.end(), g.level(v)) - levels.begin());
      std::vector<long> nb;
      for (std::size_t w = 0; w < g.num_vertices(); ++w)
        for (std::size_t c = 0; c < adj[v][w]; ++c) nb.push_back(deg[w]);
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      out[v] = std::move(s);
    }
    return out;
  }

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const std::size_t v = order_[depth];
    for (std::size_t w = 0; w < n_; ++w) {
      if (used_[w] || sig_a_[v] != sig_b_[w]) continue;
      bool ok = adj_a_[v][v] == adj_b_[w][w];
      for (std::size_t i = 0; ok && i < depth; ++i) {
        const std::size_t u = order_[i];
        ok = adj_a_[v][u] == adj_b_[w][map_[u]];
      }
      if (!ok) continue;
      map_[v] = w;
      used_[w] = true;
      if (extend(depth + 1)) return true;
      used_[w] = false;
      map_[v] = SIZE_MAX;
    }
    return false;
  }

  const LeveledGraph& a_;
  const LeveledGraph& b_;
  std::size_t n_ = 0;
  Adjacency adj_a_, adj_b_;
  std::vector<Signature> sig_a_, sig_b_;
  std::vector<std::size_t> order_, map_;
  std::vector<bool> used_;
};

}  // namespace

IsoResult is_isomorphic(const LeveledGraph& g1, const LeveledGraph& g2, IsoMode mode, std::size_t cap) {
  if (g1.num_vertices() > cap || g2.num_vertices() > cap)
    throw CapacityError("isomorphism search is capped at " + std::to_string(cap) + " vertices");
  IsoSearch search(g1, g2, mode);
  IsoResult r;
  if (!search.invariants_match()) return r;
  if (auto m = search.run()) {
    r.isomorphic = true;
    r.mapping = std::move(*m);
  }
  return r;
}

}  // namespace ncreeb

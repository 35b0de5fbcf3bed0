#include "ncreeb/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "ncreeb/error.hpp"
#include "ncreeb/reeb.hpp"

namespace ncreeb {

namespace {

// Flattened double view of a polynomial for the per-cell inner loop.
struct FlatPoly {
  std::vector<double> coef;
  std::vector<std::uint32_t> exps;  // coef.size() * n entries
  std::size_t n = 0;

  explicit FlatPoly(const Polynomial& p) : n(p.num_vars()) {
    for (const auto& [e, c] : p.terms()) {
      coef.push_back(to_double(c));
      exps.insert(exps.end(), e.begin(), e.end());
    }
  }

  double operator()(const double* x) const {
    double s = 0.0;
    for (std::size_t t = 0; t < coef.size(); ++t) {
      double m = coef[t];
      for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t k = exps[t * n + i]; k > 0; --k) m *= x[i];
      s += m;
    }
    return s;
  }
};

struct UnionFind {
  std::vector<std::int32_t> parent;
  void reset(std::size_t n) {
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::int32_t label_one_slab(const GridMask& m, std::size_t s, std::int32_t* out, UnionFind& uf,
                            std::vector<std::int32_t>& root_label) {
  const std::size_t sz = m.slab_size();
  const std::uint8_t* cell = m.cells.data() + s * sz;
  uf.reset(sz);
  const std::size_t ny = m.shape[1];
  const std::size_t nz = m.shape.size() == 3 ? m.shape[2] : 1;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t k = 0; k < nz; ++k) {
      const std::size_t c = j * nz + k;
      if (!cell[c]) continue;
      if (k + 1 < nz && cell[c + 1]) uf.unite(c, c + 1);
      if (j + 1 < ny && cell[c + nz]) uf.unite(c, c + nz);
    }
  root_label.assign(sz, -1);
  std::int32_t next = 0;
  for (std::size_t c = 0; c < sz; ++c) {
    if (!cell[c]) {
      out[c] = -1;
      continue;
    }
    const auto r = uf.find(c);
    if (root_label[r] < 0) root_label[r] = next++;
    out[c] = root_label[r];
  }
  return next;
}

}  // namespace

std::size_t GridMask::slab_size() const {
  std::size_t s = 1;
  for (std::size_t i = 1; i < shape.size(); ++i) s *= shape[i];
  return s;
}

GridBox default_box(const NCDomain& d) {
  const std::size_t n = d.ambient_dim;
  GridBox b{std::vector<double>(n, -INFINITY), std::vector<double>(n, INFINITY)};
  for (const auto& p : d.constraints) {
    const auto f = as_circle(p);
    if (!f || f->orientation != Orientation::InsidePositive) continue;
    const double r = std::sqrt(to_double(f->radius_squared));
    const double cx = to_double(f->center_x), cy = to_double(f->center_y);
    b.lo[0] = std::max(b.lo[0], cx - r);
    b.hi[0] = std::min(b.hi[0], cx + r);
    b.lo[f->axis] = std::max(b.lo[f->axis], cy - r);
    b.hi[f->axis] = std::min(b.hi[f->axis], cy + r);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isinf(b.lo[i]) || std::isinf(b.hi[i]))
      throw InvalidArgument("cannot infer a bounding box along axis " + std::to_string(i + 1) +
                            "; pass one explicitly");
    if (b.lo[i] >= b.hi[i]) throw InvalidArgument("inferred bounding box is empty");
    const double pad = 0.05 * (b.hi[i] - b.lo[i]);
    b.lo[i] -= pad;
    b.hi[i] += pad;
  }
  return b;
}

GridMask grid_mask(const NCDomain& d, const GridBox& box, std::size_t resolution, double eps_scale,
                   bool parallel) {
  const std::size_t n = d.ambient_dim;
  if (n != 2 && n != 3) throw UnsupportedDomain("grid oracle supports dimension 2 or 3");
  if (resolution < 64) throw InvalidArgument("grid resolution must be at least 64");
  if (box.lo.size() != n || box.hi.size() != n) throw DimensionError("bounding box dimension mismatch");
  GridMask m;
  m.shape.assign(n, resolution);
  m.lo = box.lo;
  m.step.resize(n);
  double diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(box.lo[i] < box.hi[i])) throw InvalidArgument("bounding box is empty");
    m.step[i] = (box.hi[i] - box.lo[i]) / resolution;
    diag += m.step[i] * m.step[i];
  }
  const double eps = eps_scale * std::sqrt(diag);
  std::vector<FlatPoly> polys;
  for (const auto& p : d.constraints) polys.emplace_back(p);
  const Ball* ball = std::get_if<Ball>(&d.neighborhood);

  const std::size_t sz = m.slab_size();
  m.cells.assign(resolution * sz, 0);
  const std::size_t nz = n == 3 ? resolution : 1;
  const auto slabs = static_cast<long>(resolution);
#pragma omp parallel for schedule(static) if (parallel)
  for (long s = 0; s < slabs; ++s) {
    double x[3];
    x[0] = m.lo[0] + (s + 0.5) * m.step[0];
    for (std::size_t c = 0; c < sz; ++c) {
      x[1] = m.lo[1] + (c / nz + 0.5) * m.step[1];
      if (n == 3) x[2] = m.lo[2] + (c % nz + 0.5) * m.step[2];
      bool in = true;
      for (const auto& f : polys)
        if (f(x) < -eps) {
          in = false;
          break;
        }
      if (in && ball) {
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) r2 += std::pow(x[i] - to_double(ball->center[i]), 2);
        in = r2 <= std::pow(to_double(ball->radius) + eps, 2);
      }
      m.cells[s * sz + c] = in;
    }
  }
  return m;
}

SlabLabels label_slabs_serial(const GridMask& m) {
  SlabLabels out;
  const std::size_t sz = m.slab_size();
  out.label.resize(m.cells.size());
  out.count.resize(m.shape[0]);
  UnionFind uf;
  std::vector<std::int32_t> roots;
  for (std::size_t s = 0; s < m.shape[0]; ++s)
    out.count[s] = label_one_slab(m, s, out.label.data() + s * sz, uf, roots);
  return out;
}

SlabLabels label_slabs_parallel(const GridMask& m) {
  SlabLabels out;
  const std::size_t sz = m.slab_size();
  out.label.resize(m.cells.size());
  out.count.resize(m.shape[0]);
  const auto slabs = static_cast<long>(m.shape[0]);
#pragma omp parallel
  {
    UnionFind uf;
    std::vector<std::int32_t> roots;
#pragma omp for schedule(static)
    for (long s = 0; s < slabs; ++s) out.count[s] = label_one_slab(m, s, out.label.data() + s * sz, uf, roots);
  }
  return out;
}

LeveledGraph slab_graph(const GridMask& m, const SlabLabels& l) {
  const std::size_t sz = m.slab_size();
  const std::size_t ns = m.shape[0];
  LeveledGraph g;
  std::vector<std::size_t> offset(ns + 1, 0);
  for (std::size_t s = 0; s < ns; ++s) {
    offset[s] = g.num_vertices();
    for (std::int32_t c = 0; c < l.count[s]; ++c) g.add_vertex(Rational(static_cast<long>(s)), true);
  }
  std::vector<std::size_t> lower(g.num_vertices(), 0), upper(g.num_vertices(), 0);
  for (std::size_t s = 0; s + 1 < ns; ++s) {
    std::set<std::pair<std::int32_t, std::int32_t>> links;
    for (std::size_t c = 0; c < sz; ++c) {
      const auto a = l.label[s * sz + c], b = l.label[(s + 1) * sz + c];
      if (a >= 0 && b >= 0) links.emplace(a, b);
    }
    for (auto [a, b] : links) {
      g.add_edge(offset[s] + a, offset[s + 1] + b);
      ++upper[offset[s] + a];
      ++lower[offset[s + 1] + b];
    }
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (lower[v] == 1 && upper[v] == 1) g.set_essential(v, false);
  return g;
}

namespace {

void mark_regular(LeveledGraph& g) {
  std::vector<std::size_t> lower(g.num_vertices(), 0), upper(g.num_vertices(), 0);
  for (const auto& e : g.edges()) {
    ++upper[e.lower];
    ++lower[e.upper];
  }
  for (std::size_t v = 0; v < g.num_vertices(); ++v) g.set_essential(v, !(lower[v] == 1 && upper[v] == 1));
}

}  // namespace

LeveledGraph reeb_grid_oracle(const NCDomain& d, const GridOptions& opts) {
  d.validate();
  const GridBox box = opts.box ? *opts.box : default_box(d);
  const GridMask m = grid_mask(d, box, opts.resolution, opts.eps_scale, opts.parallel);
  const SlabLabels labels = opts.parallel ? label_slabs_parallel(m) : label_slabs_serial(m);
  const LeveledGraph coarse = smooth(slab_graph(m, labels));
  if (coarse.num_vertices() == 0) throw ResolutionError("grid marks no cells; check the bounding box");

  const double h = m.step[0];
  std::vector<std::size_t> lower(coarse.num_vertices(), 0), upper(coarse.num_vertices(), 0);
  for (const auto& e : coarse.edges()) {
    ++upper[e.lower];
    ++lower[e.upper];
  }
  const std::vector<Rational> exact = opts.snap ? cylinder_extreme_levels(d) : std::vector<Rational>{};
  std::vector<Rational> level(coarse.num_vertices());
  for (std::size_t v = 0; v < coarse.num_vertices(); ++v) {
    double est = m.lo[0] + (to_double(coarse.level(v)) + 0.5) * h;
    if (upper[v] != 1)
      est += h / 2;
    else if (lower[v] != 1)
      est -= h / 2;
    std::optional<Rational> pick;
    for (const auto& q : exact)
      if (std::abs(to_double(q) - est) <= opts.snap_window * h) {
        if (pick)
          throw ResolutionError("levels " + to_string(*pick) + " and " + to_string(q) +
                                " both lie within the snap window at x1 = " + std::to_string(est) +
                                "; raise the resolution");
        pick = q;
      }
    level[v] = pick ? *pick : from_double(est);
  }

  // Vertices snapped onto one level and joined by an edge are the same event.
  std::vector<std::size_t> cls(coarse.num_vertices());
  std::iota(cls.begin(), cls.end(), 0);
  auto find = [&](std::size_t x) {
    while (cls[x] != x) x = cls[x] = cls[cls[x]];
    return x;
  };
  for (const auto& e : coarse.edges()) {
    const int c = cmp(level[e.lower], level[e.upper]);
    if (c > 0)
      throw ResolutionError("snapping reversed an edge between levels " + to_string(level[e.lower]) + " and " +
                            to_string(level[e.upper]));
    if (c == 0) {
      auto a = find(e.lower), b = find(e.upper);
      if (a != b) cls[std::max(a, b)] = std::min(a, b);
    }
  }
  LeveledGraph out;
  std::vector<std::size_t> id(coarse.num_vertices(), SIZE_MAX);
  for (std::size_t v = 0; v < coarse.num_vertices(); ++v)
    if (find(v) == v) id[v] = out.add_vertex(level[v], true);
  for (const auto& e : coarse.edges()) {
    const auto a = id[find(e.lower)], b = id[find(e.upper)];
    if (a != b) out.add_edge(a, b);
  }
  mark_regular(out);
  return smooth(out);
}

}  // namespace ncreeb

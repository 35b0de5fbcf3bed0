#include "ncreeb/leveled_graph.hpp"

#include <algorithm>
#include <numeric>

#include "ncreeb/error.hpp"

namespace ncreeb {

std::size_t LeveledGraph::add_vertex(Rational level, bool essential) {
  level.canonicalize();
  vertices_.push_back({std::move(level), essential});
  return vertices_.size() - 1;
}

std::size_t LeveledGraph::add_edge(std::size_t a, std::size_t b) {
  if (a >= vertices_.size() || b >= vertices_.size())
    throw IntegrityError("edge endpoint out of range");
  const int c = cmp(vertices_[a].level, vertices_[b].level);
  if (c == 0)
    throw IntegrityError("edge between vertices " + std::to_string(a) + " and " + std::to_string(b) +
                         " joins equal levels " + to_string(vertices_[a].level));
  edges_.push_back(c < 0 ? GraphEdge{a, b} : GraphEdge{b, a});
  return edges_.size() - 1;
}

std::vector<std::size_t> LeveledGraph::lower_edges(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].upper == v) out.push_back(e);
  return out;
}

std::vector<std::size_t> LeveledGraph::upper_edges(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].lower == v) out.push_back(e);
  return out;
}

std::size_t LeveledGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) d += (e.lower == v) + (e.upper == v);
  return d;
}

std::size_t LeveledGraph::other_end(std::size_t e, std::size_t v) const {
  const auto& ed = edges_.at(e);
  return ed.lower == v ? ed.upper : ed.lower;
}

std::vector<std::vector<std::size_t>> LeveledGraph::components() const {
  std::vector<std::size_t> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges_) {
    auto a = find(e.lower), b = find(e.upper);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> groups(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

std::vector<Rational> LeveledGraph::distinct_levels() const {
  std::vector<Rational> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(v.level);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational LeveledGraph::min_level() const {
  if (vertices_.empty()) throw IntegrityError("empty graph has no level range");
  return std::min_element(vertices_.begin(), vertices_.end(),
                          [](const auto& a, const auto& b) { return a.level < b.level; })
      ->level;
}

Rational LeveledGraph::max_level() const {
  if (vertices_.empty()) throw IntegrityError("empty graph has no level range");
  return std::max_element(vertices_.begin(), vertices_.end(),
                          [](const auto& a, const auto& b) { return a.level < b.level; })
      ->level;
}

void LeveledGraph::validate(bool require_connected) const {
  std::vector<std::size_t> lo(vertices_.size(), 0), up(vertices_.size(), 0);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.lower >= vertices_.size() || ed.upper >= vertices_.size())
      throw IntegrityError("edge " + std::to_string(e) + " references a missing vertex");
    if (vertices_[ed.lower].level >= vertices_[ed.upper].level)
      throw IntegrityError("edge " + std::to_string(e) + " is not strictly increasing in level");
    ++up[ed.lower];
    ++lo[ed.upper];
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (!vertices_[v].essential && (lo[v] != 1 || up[v] != 1))
      throw IntegrityError("non-essential vertex " + std::to_string(v) + " has " + std::to_string(lo[v]) +
                           " lower and " + std::to_string(up[v]) + " upper edges");
  if (require_connected && !is_connected()) throw IntegrityError("graph is not connected");
}

}  // namespace ncreeb

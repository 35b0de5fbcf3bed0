#pragma once

#include <cstddef>
#include <vector>

#include "ncreeb/rational.hpp"

namespace ncreeb {

struct GraphVertex {
  Rational level;
  bool essential = true;
  bool operator==(const GraphVertex&) const = default;
};

struct GraphEdge {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool operator==(const GraphEdge&) const = default;
};

/// Finite multigraph with a level per vertex and edges strictly increasing in level.
///
/// Vertex and edge ids are their indices. Non-essential vertices are the
/// degree-2 subdivision points introduced by refinement; they must have one
/// lower and one upper edge.
class LeveledGraph {
public:
  std::size_t add_vertex(Rational level, bool essential = true);
  /// Adds an edge between a and b, oriented by level. Equal levels throw IntegrityError.
  std::size_t add_edge(std::size_t a, std::size_t b);

  const std::vector<GraphVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const GraphVertex& vertex(std::size_t v) const { return vertices_.at(v); }
  const GraphEdge& edge(std::size_t e) const { return edges_.at(e); }
  const Rational& level(std::size_t v) const { return vertices_.at(v).level; }
  void set_essential(std::size_t v, bool essential) { vertices_.at(v).essential = essential; }

  /// Edge ids ending at v from below / leaving v upwards, ascending.
  std::vector<std::size_t> lower_edges(std::size_t v) const;
  std::vector<std::size_t> upper_edges(std::size_t v) const;
  std::size_t degree(std::size_t v) const;
  std::size_t other_end(std::size_t e, std::size_t v) const;

  /// Connected components as sorted vertex lists, ordered by smallest id.
  std::vector<std::vector<std::size_t>> components() const;
  bool is_connected() const { return components().size() <= 1; }

  /// Sorted distinct vertex levels.
  std::vector<Rational> distinct_levels() const;
  Rational min_level() const;
  Rational max_level() const;

  /// Throws IntegrityError on a non-monotone edge or a malformed non-essential vertex.
  void validate(bool require_connected = false) const;

  bool operator==(const LeveledGraph&) const = default;

private:
  std::vector<GraphVertex> vertices_;
  std::vector<GraphEdge> edges_;
};

}  // namespace ncreeb

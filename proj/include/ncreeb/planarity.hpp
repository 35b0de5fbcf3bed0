#pragma once

#include <optional>
#include <vector>

#include "ncreeb/leveled_graph.hpp"

namespace ncreeb {

enum class KuratowskiKind { K5, K33 };
const char* to_string(KuratowskiKind k);

/// One subdivided edge of the obstruction: vertices[0] and vertices.back()
/// are branch vertices and edges[i] joins vertices[i] and vertices[i + 1].
struct WitnessPath {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;
  bool operator==(const WitnessPath&) const = default;
};

struct KuratowskiWitness {
  KuratowskiKind kind = KuratowskiKind::K5;
  /// Five branch vertices, or six with the first three forming one side.
  std::vector<std::size_t> branch;
  std::vector<WitnessPath> paths;
  bool operator==(const KuratowskiWitness&) const = default;
};

/// Empty when the witness is a genuine subdivision inside g; otherwise the
/// first problem found.
std::optional<std::string> witness_problem(const LeveledGraph& g, const KuratowskiWitness& w);

struct PlanarityResult {
  bool planar = false;
  /// Cyclic order of incident edge ids around each vertex (planar case).
  std::vector<std::vector<std::size_t>> rotation;
  std::optional<KuratowskiWitness> witness;
};

/// Faces traced by a rotation system, one per isolated vertex.
std::size_t count_faces(const LeveledGraph& g, const std::vector<std::vector<std::size_t>>& rotation);

/// True when the rotation system lists every incidence once and satisfies
/// Euler's formula on every component.
bool rotation_is_planar(const LeveledGraph& g, const std::vector<std::vector<std::size_t>>& rotation);

struct PlanarityOptions {
  std::size_t cap = 512;
  /// When set and the graph is not planar, search for this kind first and
  /// fall back to whichever obstruction the planarity test extracts.
  std::optional<KuratowskiKind> prefer;
  std::size_t search_budget = 2'000'000;  // path-extension steps for the targeted search
};

PlanarityResult planarity_test(const LeveledGraph& g, const PlanarityOptions& opts = {});

/// Targeted search for a subdivision of the given kind with branch vertices
/// drawn from the highest-degree vertices.
std::optional<KuratowskiWitness> find_kuratowski(const LeveledGraph& g, KuratowskiKind kind,
                                                 std::size_t budget = 2'000'000);

/// Per-level vertex orders of a proper leveled graph.
struct LevelEmbedding {
  LeveledGraph proper;  // the input refined at every vertex level
  std::vector<Rational> levels;
  std::vector<std::vector<std::size_t>> order;  // order[k]: vertices of proper at levels[k]
};

/// Number of crossing pairs of edges between consecutive levels. Edges that
/// share an endpoint never cross.
std::size_t count_inversions(const LevelEmbedding& e);

struct LevelPlanarityResult {
  bool level_planar = false;
  std::optional<LevelEmbedding> embedding;
};

/// Exact decision by per-level order search on the proper refinement.
/// Throws CapacityError when the refinement exceeds `cap` vertices.
LevelPlanarityResult level_planarity_test(const LeveledGraph& g, std::size_t cap = 200);

/// Exhaustive enumeration of per-level permutations; for testing only.
/// Bounded to 10 vertices per level and 12 levels after refinement.
bool level_planarity_oracle(const LeveledGraph& g, bool parallel = true);

}  // namespace ncreeb

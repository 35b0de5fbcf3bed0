#pragma once

#include <optional>
#include <vector>

#include "ncreeb/domain.hpp"
#include "ncreeb/leveled_graph.hpp"

namespace ncreeb {

/// Reeb graph of the first-coordinate projection on the closure of a plane
/// circle arrangement: one inside-positive outer circle and outside-positive
/// holes whose open disks are pairwise disjoint and strictly inside it.
///
/// Between consecutive singular levels the slice is a union of intervals,
/// one edge per interval; at a singular level there is one vertex per slice
/// component that contains a singular point. Everything is decided from the
/// set of holes active at each level, so no square roots are taken.
LeveledGraph reeb_exact(const NCDomain& d);

struct SliceInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct SliceReport {
  Rational level;
  std::size_t count = 0;
  std::vector<SliceInterval> components;
};

/// Components of the closure slice x_1 = t, computed from circle chords in
/// floating point. Independent of reeb_exact's combinatorics.
SliceReport slice_report(const NCDomain& d, const Rational& t);

/// Subdivides every edge strictly spanning a requested level with a
/// non-essential vertex. Levels equal to an endpoint level are ignored.
LeveledGraph refine(const LeveledGraph& g, std::vector<Rational> levels);

/// Removes every non-essential vertex by concatenating its two edges.
LeveledGraph smooth(const LeveledGraph& g);

struct FiberProduct {
  LeveledGraph graph;
  /// Levels inside the common range where both factors have a vertex.
  std::vector<Rational> coincident_levels;
};

/// Leveled fiber product: over each level the points of the result are the
/// pairs of points of the factors. Restricted to the common level range and
/// returned smoothed.
FiberProduct fiber_product(const LeveledGraph& g1, const LeveledGraph& g2);

/// E - V + 1; throws IntegrityError naming the components when disconnected.
std::size_t betti1(const LeveledGraph& g);

/// Number of edges whose open level span contains t. t must not be a vertex level.
std::size_t sheet_count(const LeveledGraph& g, const Rational& t);

/// Number of essential vertices with level strictly inside (lo, hi).
std::size_t essential_vertices_between(const LeveledGraph& g, const Rational& lo, const Rational& hi);

enum class IsoMode { Plain, Leveled };

struct IsoResult {
  bool isomorphic = false;
  /// mapping[v] is the image in the second graph of vertex v of the first.
  std::vector<std::size_t> mapping;
};

/// Exact multigraph isomorphism by backtracking. Plain mode ignores levels
/// and essential flags; leveled mode also requires the map to preserve the
/// rank of each vertex among the distinct levels of its graph.
IsoResult is_isomorphic(const LeveledGraph& g1, const LeveledGraph& g2, IsoMode mode,
                        std::size_t cap = 64);

}  // namespace ncreeb

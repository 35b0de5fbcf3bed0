#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncreeb/domain.hpp"
#include "ncreeb/error.hpp"
#include "ncreeb/leveled_graph.hpp"

namespace ncreeb {

enum class TheoremTag { MT1, MT2, MT3, THM2 };
const char* to_string(TheoremTag t);
TheoremTag parse_theorem_tag(std::string_view s);

/// A point of a leveled graph at a regular level: the crossing of `edge` with `level`.
struct GraphPoint {
  std::size_t edge = 0;
  Rational level;
  bool operator==(const GraphPoint&) const = default;
};

/// Embedded arc between two graph points whose interior maps into (lo, hi).
/// `vertices` is the vertex path traversed between the two partial edges;
/// it is empty when both points lie on one edge.
struct WitnessArc {
  std::string label;
  GraphPoint from, to;
  std::vector<std::size_t> vertices;
  Rational lo, hi;
};

/// Checks that the arc is embedded, that its pieces are adjacent and that its
/// interior stays inside (lo, hi).
bool arc_is_valid(const LeveledGraph& g, const WitnessArc& a);

struct ConditionVerdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ConditionReport {
  TheoremTag tag = TheoremTag::MT1;
  bool pass = false;
  std::vector<ConditionVerdict> conditions;
  std::vector<WitnessArc> arcs;
  std::vector<std::string> diagnostics;

  const ConditionVerdict* find(std::string_view name) const;
};

/// Levels for the validators. t1_outer / t2_outer are only read for MT3,
/// where they bound the first and third factor bands.
struct ConditionParams {
  Rational t1, t2;
  std::optional<Rational> t1_outer, t2_outer;
};

/// MT1/MT2: the regular-level condition and the arc families over (t1, t2).
/// MT3: the same plus the same-level arcs; the two Remark-style reductions are
/// reported as extra verdicts named "reduction C" and "reduction B" that do not
/// affect the overall verdict. THM2: degree, distinct-level and extremum rules.
ConditionReport validate_conditions(const LeveledGraph& g, const ConditionParams& p, TheoremTag tag);

/// Thrown by the family generators when the base graph fails its hypotheses.
class ConditionFailure : public Error {
public:
  explicit ConditionFailure(ConditionReport r);
  const ConditionReport& report() const noexcept { return report_; }

private:
  ConditionReport report_;
};

enum class Reduction { None, C, B, BC };
const char* to_string(Reduction r);
Reduction parse_reduction(std::string_view s);

/// Outer circle of the factor domain; unset fields take defaults.
struct FactorOuter {
  std::optional<RationalPoint> center;
  std::optional<Rational> radius;
};

struct FamilyResult {
  TheoremTag tag = TheoremTag::MT1;
  std::vector<unsigned> indices;
  Reduction reduction = Reduction::None;
  BandSpec factor_spec;
  LeveledGraph factor_graph;
  NCDomain domain;          // lifted product of base and factor
  LeveledGraph prediction;  // smoothed fiber product of base and factor graphs
  std::vector<std::size_t> fold_counts;  // factor sheets over each factor band
  ConditionReport conditions;
  std::vector<Rational> coincident_levels;
};

/// Band spec for the factor: default centre is the midpoint of the band span
/// on the axis, default radius the smallest multiple of 10 that both packs the
/// holes and reaches one unit past the base graph's level range.
BandSpec factor_spec(const LeveledGraph& base, const std::vector<Band>& bands, const FactorOuter& outer);

FamilyResult mt1_family(const NCDomain& base, const LeveledGraph& base_graph, const Rational& t1,
                        const Rational& t2, unsigned i, const FactorOuter& outer = {});
FamilyResult mt2_family(const NCDomain& base, const LeveledGraph& base_graph, const Rational& t1,
                        const Rational& t2, unsigned i, const FactorOuter& outer = {});
/// t1_outer / t2_outer default to midpoints of the two base vertex levels
/// just below t1 and just above t2.
FamilyResult mt3_family(const NCDomain& base, const LeveledGraph& base_graph, const ConditionParams& p,
                        unsigned i1, unsigned i2, unsigned i3, Reduction reduction,
                        const FactorOuter& outer = {});

/// Middle-band hole count for MT3: i2 plus 8, 6, 5 or 4.
unsigned mt3_middle_holes(unsigned i2, Reduction r);

}  // namespace ncreeb

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ncreeb/poly.hpp"

namespace ncreeb {

struct WholeSpace {
  bool operator==(const WholeSpace&) const = default;
};

struct Ball {
  RationalPoint center;
  Rational radius;
  bool operator==(const Ball&) const = default;
};

using Neighborhood = std::variant<WholeSpace, Ball>;

/// Open set {x in U : f_j(x) > 0 for all j} with closure {x in cl(U) : f_j(x) >= 0}.
///
/// Constraints whose zero sets are allowed to meet are listed in
/// `expected_intersections` (pairs of 0-based constraint indices, i < j).
struct NCDomain {
  std::size_t ambient_dim = 2;
  std::vector<Polynomial> constraints;
  Neighborhood neighborhood = WholeSpace{};
  std::string provenance;
  std::vector<std::pair<std::size_t, std::size_t>> expected_intersections;

  /// Throws InvalidArgument when the structural invariants fail.
  void validate() const;
  bool operator==(const NCDomain&) const = default;
};

struct Band {
  Rational t_lo;
  Rational t_hi;
  unsigned holes = 1;
  bool operator==(const Band&) const = default;
};

/// Parameters of a disk with hole circles tangent to the lines x_1 = t_lo, t_hi.
struct BandSpec {
  std::vector<Band> bands;
  RationalPoint outer_center{Rational(0), Rational(0)};
  Rational outer_radius = 10;

  bool operator==(const BandSpec&) const = default;
};

/// Centre offsets (along x_2, relative to the outer centre) of the holes of a
/// band, in units of the hole radius: 0, -3, 3, -6, 6, ... for odd counts and
/// -3, 3, -6, 6, ... for even counts.
std::vector<long> hole_offsets(unsigned holes);

/// Builds the band domain: the inside-positive outer circle followed by every
/// band's outside-positive hole circles.
NCDomain build_band_domain(const BandSpec& spec);

/// Cylinder-lifts D1 along x_{k+1} and D2 (a plane domain in (x_1, x_2))
/// along x_2..x_k, and intersects them in R^{k+1}.
NCDomain lift_product(const NCDomain& d1, const NCDomain& d2);

enum class Membership { Interior, Boundary, Outside };
const char* to_string(Membership m);

Membership closure_membership(const NCDomain& d, std::span<const Rational> x);
/// Floating-point variant used by samplers; zero tests use |f| <= tol.
Membership closure_membership(const NCDomain& d, std::span<const double> x, double tol);

bool in_neighborhood(const NCDomain& d, std::span<const Rational> x, bool closed);

struct TransversalitySample {
  std::vector<double> point;
  bool exact = false;                     // point came from exact rational data
  std::vector<std::size_t> active;        // constraint indices with f_j = 0
  std::vector<std::vector<double>> normals;
  std::size_t rank = 0;
  bool pass = false;
};

struct TransversalityReport {
  std::vector<TransversalitySample> samples;
  std::vector<std::string> warnings;
  bool pass = true;

  std::vector<std::size_t> failing() const;
};

struct TransversalityOptions {
  double zero_tolerance = 1e-9;  // |f_j| below this counts as active (float samples)
  double rank_tolerance = 1e-9;  // relative pivot threshold for float ranks
};

/// Checks the given exact samples; rank is computed by exact row reduction.
TransversalityReport check_transversality(const NCDomain& d, const std::vector<RationalPoint>& samples);
/// Checks floating samples with tolerance-based activity and rank.
TransversalityReport check_transversality(const NCDomain& d,
                                          const std::vector<std::vector<double>>& samples,
                                          const TransversalityOptions& opts = {});

/// Samples every circle-cylinder constraint at rational points and every
/// pair of constraints along their intersection, then checks them.
TransversalityReport check_transversality(const NCDomain& d, std::size_t budget,
                                          unsigned long seed = 1,
                                          const TransversalityOptions& opts = {});

struct SingularLevel {
  Rational level;
  std::vector<RationalPoint> points;
};

/// x_1-extreme points of every circle of a 2-D circle arrangement, grouped by level.
std::vector<SingularLevel> singular_levels(const NCDomain& d);

/// Levels c_x +- r of every constraint that is a circle or a circle cylinder
/// in some (x_1, x_m) plane; used to snap grid-oracle levels.
std::vector<Rational> cylinder_extreme_levels(const NCDomain& d);

}  // namespace ncreeb

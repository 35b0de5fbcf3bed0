#pragma once

#include <span>
#include <string>
#include <vector>

#include "ncreeb/domain.hpp"

namespace ncreeb {

enum class DimPolicy { Balanced, FrontLoaded };
const char* to_string(DimPolicy p);
DimPolicy parse_dim_policy(std::string_view s);

/// Polynomial model of the manifold over a domain: variables are laid out as
/// (x_1..x_k, y_1 block, .., y_l block) and the i-th equation is
/// f_i(x) - |y_i|^2 = 0. The map to R^k keeps the x block; the function is x_1.
struct AlgebraicModel {
  std::size_t k = 0, l = 0, m = 0;
  std::vector<std::size_t> dims;     // size of each y block
  std::vector<Polynomial> base;      // f_i in k variables
  std::vector<Polynomial> system;    // F_i in m + l variables
  Neighborhood neighborhood = WholeSpace{};

  std::size_t num_vars() const { return m + l; }
  /// Index of the first variable of y block i.
  std::size_t block_start(std::size_t i) const;
  bool operator==(const AlgebraicModel&) const = default;
};

/// Requires m >= k. Balanced spreads m + l - k over the blocks with the
/// remainder going to the earliest ones; front-loaded gives block 1 the surplus.
AlgebraicModel emit_model(const NCDomain& d, std::size_t m, DimPolicy policy = DimPolicy::Balanced);
std::vector<std::size_t> allocate_dims(std::size_t k, std::size_t l, std::size_t m, DimPolicy policy);

/// (x, y) with y_i = (sqrt f_i(x), 0, ..). Throws InvalidArgument when x lies
/// outside the closure, since the image of the model is exactly the closure.
std::vector<double> sample_fiber_point(const AlgebraicModel& model, std::span<const Rational> x);

/// Largest residual |F_i(p)|.
double residual(const AlgebraicModel& model, std::span<const double> p);

/// Numerical rank of the Jacobian of the system at p, counting singular values
/// above rank_tol times the largest. Throws InvalidArgument when p is further
/// than on_variety_tol from the variety.
std::size_t jacobian_rank(const AlgebraicModel& model, std::span<const double> p, double on_variety_tol = 1e-9,
                          double rank_tol = 1e-7);

/// One factor of a fiber: a sphere of dimension d_i - 1 and squared radius
/// f_i(x), or a point when f_i(x) = 0.
struct FiberBlock {
  std::size_t sphere_dim = 0;
  Rational radius_squared;
  bool point() const { return radius_squared == 0; }
  bool operator==(const FiberBlock&) const = default;
};

struct FiberType {
  bool empty = false;
  std::vector<FiberBlock> blocks;

  bool is_point() const;
  /// Dimension of the product; zero for a point, undefined (zero) when empty.
  std::size_t dimension() const;
  std::string describe() const;
  bool operator==(const FiberType&) const = default;
};

/// Exact block-wise description of the preimage of x under the map to R^k.
FiberType fiber_type(const AlgebraicModel& model, std::span<const Rational> x);

struct CertificateOptions {
  std::size_t interior = 100, boundary = 20, outside = 50;
  unsigned long seed = 1;
  double tolerance = 1e-9;
  double rank_tolerance = 1e-7;
};

struct CertificateReport {
  std::size_t interior_samples = 0, boundary_samples = 0, outside_samples = 0;
  std::size_t rank_failures = 0;       // Jacobian rank below l
  std::size_t dimension_failures = 0;  // interior fiber not of dimension m - k, or boundary fiber not smaller
  std::size_t emptiness_failures = 0;  // outside point with a nonempty fiber or no negative f_i
  std::size_t image_failures = 0;      // sampler accepted an outside point or refused a closure point
  std::vector<std::string> diagnostics;
  bool pass = false;
};

/// Sampled checks of the model over a two-dimensional circle arrangement:
/// rank at interior and boundary points (boundary points include the extreme
/// points of every circle), fiber dimensions, and emptiness just outside the
/// boundary. Throws UnsupportedDomain for other domains.
CertificateReport certify_model(const NCDomain& d, const AlgebraicModel& model, const CertificateOptions& opts = {});

}  // namespace ncreeb

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ncreeb/rational.hpp"

namespace ncreeb {

using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by dense exponent vectors of length num_vars(). Zero
/// coefficients are never stored, so the zero polynomial has no terms.
class Polynomial {
public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(std::size_t num_vars = 1);
  Polynomial(std::size_t num_vars, TermMap terms);

  static Polynomial constant(std::size_t num_vars, const Rational& c);
  /// The coordinate function x_{index}, 0-based.
  static Polynomial variable(std::size_t num_vars, std::size_t index);

  std::size_t num_vars() const noexcept { return num_vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::uint32_t total_degree() const;
  /// Coefficient of a monomial, zero when absent.
  Rational coefficient(const Exponents& e) const;
  /// True when variable `index` appears with a nonzero exponent.
  bool depends_on(std::size_t index) const;

  Rational eval(std::span<const Rational> x) const;
  double eval(std::span<const double> x) const;

  Polynomial derivative(std::size_t index) const;
  std::vector<Rational> gradient(std::span<const Rational> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

  /// Re-embeds the polynomial: variable i becomes variable coord_map[i] of
  /// a new_num_vars-variate polynomial. Unmapped entries are std::nullopt
  /// and must not appear in any term.
  Polynomial substitute_coords(std::span<const std::optional<std::size_t>> coord_map,
                               std::size_t new_num_vars) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  bool operator==(const Polynomial& rhs) const;

private:
  void add_term(const Exponents& e, const Rational& c);
  void check_dim(std::size_t n) const;

  std::size_t num_vars_;
  TermMap terms_;
};

enum class Orientation { InsidePositive, OutsidePositive };

/// r^2 - |x-c|^2 (inside-positive) or |x-c|^2 - r^2 (outside-positive).
Polynomial sphere_poly(std::span<const Rational> center, const Rational& radius,
                       std::size_t ambient_dim, Orientation orientation);

/// A constraint recognised as a circle in the (x_1, x_axis) plane of its
/// ambient space; when ambient_dim > 2 it is the cylinder over that circle.
struct CircleForm {
  std::size_t axis = 1;      // 0-based index of the second coordinate
  Rational center_x;         // first coordinate of the centre
  Rational center_y;         // coordinate `axis` of the centre
  Rational radius_squared;
  std::optional<Rational> radius;  // set when radius_squared is a rational square
  Orientation orientation = Orientation::InsidePositive;
};

/// Recognises a(x_1^2 + x_m^2) + b x_1 + c x_m + d with a != 0 and a positive
/// squared radius; returns nullopt for any other shape.
std::optional<CircleForm> as_circle(const Polynomial& p);

}  // namespace ncreeb

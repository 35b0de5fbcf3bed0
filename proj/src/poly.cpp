#include "ncreeb/poly.hpp"

#include <algorithm>
#include <cmath>

#include "ncreeb/error.hpp"

namespace ncreeb {

Polynomial::Polynomial(std::size_t num_vars) : num_vars_(num_vars) {
  if (num_vars == 0) throw InvalidArgument("polynomial needs at least one variable");
}

Polynomial::Polynomial(std::size_t num_vars, TermMap terms) : Polynomial(num_vars) {
  for (auto& [e, c] : terms) add_term(e, c);
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Exponents(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t index) {
  if (index >= num_vars) throw DimensionError("variable index out of range");
  Polynomial p(num_vars);
  Exponents e(num_vars, 0);
  e[index] = 1;
  p.add_term(e, 1);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (e.size() != num_vars_) throw DimensionError("exponent vector length differs from num_vars");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void Polynomial::check_dim(std::size_t n) const {
  if (n != num_vars_)
    throw DimensionError("point has " + std::to_string(n) + " coordinates, polynomial has " +
                         std::to_string(num_vars_) + " variables");
}

std::uint32_t Polynomial::total_degree() const {
  std::uint32_t best = 0;
  for (const auto& [e, c] : terms_) {
    std::uint32_t d = 0;
    for (auto k : e) d += k;
    best = std::max(best, d);
  }
  return best;
}

Rational Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Polynomial::depends_on(std::size_t index) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return index < num_vars_ && t.first[index] > 0; });
}

Rational Polynomial::eval(std::span<const Rational> x) const {
  check_dim(x.size());
  Rational sum = 0;
  Rational mono;
  for (const auto& [e, c] : terms_) {
    mono = c;
    for (std::size_t i = 0; i < num_vars_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) mono *= x[i];
    sum += mono;
  }
  return sum;
}

double Polynomial::eval(std::span<const double> x) const {
  check_dim(x.size());
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double mono = c.get_d();
    for (std::size_t i = 0; i < num_vars_; ++i)
      if (e[i]) mono *= std::pow(x[i], static_cast<int>(e[i]));
    sum += mono;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= num_vars_) throw DimensionError("derivative index out of range");
  Polynomial d(num_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponents de = e;
    de[index] -= 1;
    d.add_term(de, c * e[index]);
  }
  return d;
}

std::vector<Rational> Polynomial::gradient(std::span<const Rational> x) const {
  check_dim(x.size());
  std::vector<Rational> g;
  g.reserve(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) g.push_back(derivative(i).eval(x));
  return g;
}

std::vector<double> Polynomial::gradient(std::span<const double> x) const {
  check_dim(x.size());
  std::vector<double> g;
  g.reserve(num_vars_);
  for (std::size_t i = 0; i < num_vars_; ++i) g.push_back(derivative(i).eval(x));
  return g;
}

Polynomial Polynomial::substitute_coords(std::span<const std::optional<std::size_t>> coord_map,
                                         std::size_t new_num_vars) const {
  if (coord_map.size() != num_vars_)
    throw DimensionError("coordinate map must list every source variable");
  std::vector<bool> taken(new_num_vars, false);
  for (const auto& target : coord_map) {
    if (!target) continue;
    if (*target >= new_num_vars) throw DimensionError("coordinate map target out of range");
    if (taken[*target]) throw InvalidArgument("coordinate map is not injective");
    taken[*target] = true;
  }
  Polynomial out(new_num_vars);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_num_vars, 0);
    for (std::size_t i = 0; i < num_vars_; ++i) {
      if (e[i] == 0) continue;
      if (!coord_map[i])
        throw InvalidArgument("variable x" + std::to_string(i + 1) +
                              " appears in the polynomial but is not mapped");
      ne[*coord_map[i]] = e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  check_dim(rhs.num_vars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  check_dim(rhs.num_vars_);
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_dim(b.num_vars_);
  Polynomial out(a.num_vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(a.num_vars_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  return num_vars_ == rhs.num_vars_ && terms_ == rhs.terms_;
}

Polynomial sphere_poly(std::span<const Rational> center, const Rational& radius,
                       std::size_t ambient_dim, Orientation orientation) {
  if (sgn(radius) <= 0) throw InvalidArgument("sphere radius must be positive");
  if (center.size() != ambient_dim) throw DimensionError("centre length differs from ambient_dim");
  // |x - c|^2 - r^2
  Polynomial p = Polynomial::constant(ambient_dim, -radius * radius);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    Polynomial d = Polynomial::variable(ambient_dim, i) - Polynomial::constant(ambient_dim, center[i]);
    p += d * d;
  }
  return orientation == Orientation::OutsidePositive ? p : -p;
}

std::optional<CircleForm> as_circle(const Polynomial& p) {
  const std::size_t n = p.num_vars();
  if (n < 2 || p.total_degree() != 2) return std::nullopt;
  std::optional<std::size_t> axis;
  for (std::size_t i = 1; i < n; ++i) {
    if (!p.depends_on(i)) continue;
    if (axis) return std::nullopt;
    axis = i;
  }
  if (!axis) return std::nullopt;
  const std::size_t m = *axis;

  auto mono = [n](std::initializer_list<std::pair<std::size_t, std::uint32_t>> powers) {
    Exponents e(n, 0);
    for (auto [i, k] : powers) e[i] = k;
    return e;
  };
  const Exponents e11 = mono({{0, 2}});
  const Exponents emm = mono({{m, 2}});
  const Exponents e1 = mono({{0, 1}});
  const Exponents em = mono({{m, 1}});
  const Exponents e0 = mono({});
  for (const auto& [e, c] : p.terms())
    if (e != e11 && e != emm && e != e1 && e != em && e != e0) return std::nullopt;

  const Rational a = p.coefficient(e11);
  if (sgn(a) == 0 || a != p.coefficient(emm)) return std::nullopt;
  const Rational b1 = p.coefficient(e1);
  const Rational bm = p.coefficient(em);
  const Rational d = p.coefficient(e0);

  CircleForm f;
  f.axis = m;
  f.center_x = -b1 / (2 * a);
  f.center_y = -bm / (2 * a);
  f.radius_squared = f.center_x * f.center_x + f.center_y * f.center_y - d / a;
  f.radius_squared.canonicalize();
  if (sgn(f.radius_squared) <= 0) return std::nullopt;
  Rational r;
  if (exact_sqrt(f.radius_squared, r)) f.radius = r;
  f.orientation = sgn(a) < 0 ? Orientation::InsidePositive : Orientation::OutsidePositive;
  f.center_x.canonicalize();
  f.center_y.canonicalize();
  return f;
}

}  // namespace ncreeb

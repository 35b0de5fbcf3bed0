#include "ncreeb/rational.hpp"

#include <cmath>
#include <sstream>

#include "ncreeb/error.hpp"

namespace ncreeb {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << "\n";
    os << v[i];
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  auto bad = [&] { return InvalidArgument("malformed rational literal '" + s + "'"); };
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw bad();
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") throw bad();
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw bad();
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw bad();
  }
}

bool exact_sqrt(const Rational& q, Rational& root) {
  if (sgn(q) < 0) return false;
  Rational c = q;
  c.canonicalize();
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t()))
    return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("non-finite value cannot be made exact");
  Rational r(v);
  r.canonicalize();
  return r;
}

RationalPoint make_point(std::initializer_list<long> coords) {
  RationalPoint p;
  p.reserve(coords.size());
  for (long c : coords) p.emplace_back(c);
  return p;
}

}  // namespace ncreeb

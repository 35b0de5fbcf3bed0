#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ncreeb {

using Rational = mpq_class;

/// A point with exact coordinates.
using RationalPoint = std::vector<Rational>;

/// Canonical "num/den" form; integers keep the "/1".
std::string to_string(const Rational& q);

/// Accepts "n", "n/d" and finite decimals such as "-2.25".
Rational parse_rational(std::string_view text);

/// Exact square root when q is the square of a rational.
bool exact_sqrt(const Rational& q, Rational& root);

double to_double(const Rational& q);

/// Exact conversion of a finite double.
Rational from_double(double v);

RationalPoint make_point(std::initializer_list<long> coords);

}  // namespace ncreeb

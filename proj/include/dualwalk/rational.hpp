#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace dualwalk {

// All transition probabilities and matrix entries are exact fractions of
// arbitrary-precision integers; floating point is confined to Monte Carlo
// statistics. mpq_rational keeps canonical form (q > 0, reduced) on its own.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Serialized form is always "p/q", q > 0 and reduced, even when q = 1,
// so every emitted value round-trips through the same parser.
inline std::string to_pq(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

}  // namespace dualwalk

#include "dualwalk/coefficients.hpp"

#include <stdexcept>

namespace dualwalk {

namespace detail {

namespace {

// numerator_offset is -1 for a² and 0 for b²; the two closed forms differ
// only by that shift in every numerator factor.
Rational coefficient_quotient(const std::vector<Int>& m, const KWeight& k,
                              int i, Int numerator_offset) {
  const int n = k.n();
  if (i < 1 || i > n + 1) {
    throw DomainError("coefficient index out of 1..n+1");
  }
  const Int m_i = m[static_cast<size_t>(i) - 1];
  Integer num = 1;
  for (int j = 1; j <= n; ++j) {
    num *= Integer(k.at1(j) - m_i - j + i + numerator_offset);
  }
  Integer den = 1;
  for (int j = 1; j <= n + 1; ++j) {
    if (j == i) {
      continue;
    }
    const Int factor = m[static_cast<size_t>(j) - 1] - m_i - j + i;
    if (factor == 0) {
      throw std::logic_error(
          "coefficient denominator vanished: tuple is not strictly "
          "decreasing in m_j - j");
    }
    den *= Integer(factor);
  }
  return Rational(abs(num), abs(den));
}

}  // namespace

Rational a_sq_raw(const std::vector<Int>& m, const KWeight& k, int i) {
  return coefficient_quotient(m, k, i, -1);
}

Rational b_sq_raw(const std::vector<Int>& m, const KWeight& k, int i) {
  return coefficient_quotient(m, k, i, 0);
}

}  // namespace detail

Rational a_sq(const StateSignature& m, int i) {
  return detail::a_sq_raw(m.m(), m.k(), i);
}

Rational b_sq(const StateSignature& m, int i) {
  return detail::b_sq_raw(m.m(), m.k(), i);
}

std::vector<Rational> a_sq_all(const StateSignature& m) {
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(m.n()) + 1);
  for (int i = 1; i <= m.n() + 1; ++i) {
    out.push_back(a_sq(m, i));
  }
  return out;
}

std::vector<Rational> b_sq_all(const StateSignature& m) {
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(m.n()) + 1);
  for (int i = 1; i <= m.n() + 1; ++i) {
    out.push_back(b_sq(m, i));
  }
  return out;
}

std::optional<std::vector<Rational>> b_sq_at_shift(const StateSignature& m) {
  const int n = m.n();
  if (m.at1(n) == m.at1(n + 1)) {
    return std::nullopt;
  }
  std::vector<Int> shifted = m.m();
  shifted[static_cast<size_t>(n)] += 1;
  std::vector<Rational> out;
  out.reserve(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n + 1; ++i) {
    out.push_back(detail::b_sq_raw(shifted, m.k(), i));
  }
  return out;
}

}  // namespace dualwalk

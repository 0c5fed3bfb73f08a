#include "dualwalk/state.hpp"

#include <numeric>
#include <sstream>

namespace dualwalk {

KWeight::KWeight(std::vector<Int> k) : k_(std::move(k)) {
  if (k_.empty()) {
    throw DimensionError("k must have at least one entry");
  }
  for (size_t i = 0; i + 1 < k_.size(); ++i) {
    if (k_[i] < k_[i + 1]) {
      std::ostringstream msg;
      msg << "k must be weakly decreasing: k_" << i + 1 << " = " << k_[i]
          << " < k_" << i + 2 << " = " << k_[i + 1];
      throw DomainError(msg.str());
    }
  }
}

Int KWeight::sum() const {
  return std::accumulate(k_.begin(), k_.end(), Int{0});
}

bool validate_interlacing(const std::vector<Int>& m, const KWeight& k) {
  const int n = k.n();
  if (static_cast<int>(m.size()) != n + 1) {
    std::ostringstream msg;
    msg << "m has " << m.size() << " entries, expected " << n + 1;
    throw DimensionError(msg.str());
  }
  for (int i = 1; i <= n; ++i) {
    if (m[i - 1] < k.at1(i) || k.at1(i) < m[i]) {
      return false;
    }
  }
  return true;
}

namespace {

std::string interlacing_violation(const std::vector<Int>& m, const KWeight& k) {
  for (int i = 1; i <= k.n(); ++i) {
    if (m[i - 1] < k.at1(i)) {
      std::ostringstream msg;
      msg << "m_" << i << " = " << m[i - 1] << " < k_" << i << " = "
          << k.at1(i);
      return msg.str();
    }
    if (k.at1(i) < m[i]) {
      std::ostringstream msg;
      msg << "k_" << i << " = " << k.at1(i) << " < m_" << i + 1 << " = "
          << m[i];
      return msg.str();
    }
  }
  return "no violation";
}

}  // namespace

StateSignature::StateSignature(std::vector<Int> m, const KWeight& k)
    : m_(std::move(m)), k_(&k) {
  if (!validate_interlacing(m_, k)) {
    throw DomainError("interlacing violated: " + interlacing_violation(m_, k));
  }
}

Int StateSignature::sum() const {
  return std::accumulate(m_.begin(), m_.end(), Int{0});
}

bool StateSignature::can_shift(int i, Int delta) const {
  std::vector<Int> shifted_m = m_;
  shifted_m[static_cast<size_t>(i) - 1] += delta;
  return validate_interlacing(shifted_m, *k_);
}

StateSignature StateSignature::shifted(int i, Int delta) const {
  std::vector<Int> shifted_m = m_;
  shifted_m[static_cast<size_t>(i) - 1] += delta;
  return StateSignature(std::move(shifted_m), *k_);
}

bool omega_contains(const OmegaIndex& r, const KWeight& k) {
  const int n = k.n();
  if (static_cast<int>(r.r.size()) != n - 1) {
    return false;
  }
  for (int i = 1; i <= n - 1; ++i) {
    if (r.r[i - 1] < 0 || r.r[i - 1] > k.at1(i) - k.at1(i + 1)) {
      return false;
    }
  }
  return true;
}

StateSignature state_from_wr(const PCoordinate& p, const KWeight& k) {
  const int n = k.n();
  if (p.w < 0) {
    throw DomainError("w must be non-negative");
  }
  if (!omega_contains(p.r, k)) {
    throw DomainError("r outside the box 0 <= r_i <= k_i - k_{i+1}");
  }
  std::vector<Int> m(static_cast<size_t>(n) + 1);
  m[0] = p.w + k.at1(1);
  Int r_sum = 0;
  for (int i = 1; i <= n - 1; ++i) {
    m[i] = p.r.r[i - 1] + k.at1(i + 1);
    r_sum += p.r.r[i - 1];
  }
  m[n] = -(p.w + r_sum);
  if (!validate_interlacing(m, k)) {
    // Only the bottom constraint k_n >= m_{n+1} can fail here, and only
    // when k_n < 0 with w + sum r < -k_n.
    throw DomainError("coordinates leave the state space: " +
                      interlacing_violation(m, k));
  }
  return StateSignature(std::move(m), k);
}

PCoordinate wr_from_state(const StateSignature& m) {
  const KWeight& k = m.k();
  if (m.sum() != k.sum()) {
    std::ostringstream msg;
    msg << "state not in P: s_m = " << m.sum() << " != s_k = " << k.sum();
    throw NotInPError(msg.str());
  }
  PCoordinate p;
  p.w = m.at1(1) - k.at1(1);
  p.r.r.reserve(static_cast<size_t>(k.n()) - 1);
  for (int i = 1; i <= k.n() - 1; ++i) {
    p.r.r.push_back(m.at1(i + 1) - k.at1(i + 1));
  }
  return p;
}

std::vector<OmegaIndex> enumerate_omega(const KWeight& k) {
  const int n = k.n();
  std::vector<OmegaIndex> out;
  OmegaIndex current;
  current.r.assign(static_cast<size_t>(n) - 1, 0);
  while (true) {
    out.push_back(current);
    // Increment the rightmost coordinate, lexicographic order.
    int pos = n - 2;
    while (pos >= 0) {
      if (current.r[pos] < k.at1(pos + 1) - k.at1(pos + 2)) {
        ++current.r[pos];
        break;
      }
      current.r[pos] = 0;
      --pos;
    }
    if (pos < 0) {
      break;
    }
  }
  return out;
}

Int omega_size(const KWeight& k) {
  Int total = 1;
  for (int i = 1; i <= k.n() - 1; ++i) {
    total *= k.at1(i) - k.at1(i + 1) + 1;
  }
  return total;
}

std::string format_tuple(const std::vector<Int>& values, char sep) {
  std::ostringstream out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) {
      out << sep;
    }
    out << values[i];
  }
  return out.str();
}

}  // namespace dualwalk

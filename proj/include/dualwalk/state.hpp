#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualwalk {

using Int = std::int64_t;

// Error taxonomy used across the library. The CLI maps all of these to
// exit code 1 (validation failure); identity-check failures are reported
// through return values, not exceptions.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotInPError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StructureError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MechanismUnavailableError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The fixed weakly decreasing n-tuple k. It parameterizes everything and is
// constant along every trajectory.
class KWeight {
 public:
  explicit KWeight(std::vector<Int> k);

  int n() const { return static_cast<int>(k_.size()); }
  const std::vector<Int>& values() const { return k_; }
  // 1-based accessor mirroring the subscripts k_1..k_n.
  Int at1(int i) const { return k_[static_cast<size_t>(i) - 1]; }
  Int sum() const;
  // Whether the Young-diagram encoding applies (all row lengths >= 0).
  bool young_ready() const { return k_.back() >= 0; }

  friend bool operator==(const KWeight& a, const KWeight& b) {
    return a.k_ == b.k_;
  }

 private:
  std::vector<Int> k_;
};

bool validate_interlacing(const std::vector<Int>& m, const KWeight& k);

// An (n+1)-tuple m interlacing k: m_i >= k_i >= m_{i+1}. The walker's
// position. Holds a pointer to the governing KWeight, which must outlive
// the state.
class StateSignature {
 public:
  StateSignature(std::vector<Int> m, const KWeight& k);

  const std::vector<Int>& m() const { return m_; }
  const KWeight& k() const { return *k_; }
  int n() const { return k_->n(); }
  Int at1(int i) const { return m_[static_cast<size_t>(i) - 1]; }
  Int sum() const;

  // Whether m +/- e_i still interlaces (delta is +1 or -1).
  bool can_shift(int i, Int delta) const;
  // m +/- e_i, validated.
  StateSignature shifted(int i, Int delta) const;

  friend bool operator==(const StateSignature& a, const StateSignature& b) {
    return a.m_ == b.m_;
  }

 private:
  std::vector<Int> m_;
  const KWeight* k_;
};

// A point of the box Omega: 0 <= r_i <= k_i - k_{i+1}, n-1 entries
// (empty for n = 1).
struct OmegaIndex {
  std::vector<Int> r;

  friend bool operator==(const OmegaIndex& a, const OmegaIndex& b) {
    return a.r == b.r;
  }
  friend auto operator<=>(const OmegaIndex& a, const OmegaIndex& b) {
    return a.r <=> b.r;
  }
};

// Coordinates (w, r) on the hyperplane P = {s_m = s_k}.
struct PCoordinate {
  Int w = 0;
  OmegaIndex r;

  friend bool operator==(const PCoordinate& a, const PCoordinate& b) {
    return a.w == b.w && a.r == b.r;
  }
  friend auto operator<=>(const PCoordinate& a, const PCoordinate& b) {
    if (auto c = a.w <=> b.w; c != 0) {
      return c;
    }
    return a.r <=> b.r;
  }
};

bool omega_contains(const OmegaIndex& r, const KWeight& k);

// m(w,r) = (w + k_1, r_1 + k_2, ..., r_{n-1} + k_n, -(w + sum r)).
// Throws DomainError if the coordinates do not name an interlacing state
// (possible when k_n < 0 and w + sum r < -k_n).
StateSignature state_from_wr(const PCoordinate& p, const KWeight& k);

// Inverse map, defined exactly on P: w = m_1 - k_1, r_i = m_{i+1} - k_{i+1}.
// Throws NotInPError when s_m != s_k.
PCoordinate wr_from_state(const StateSignature& m);

// All N = prod(k_i - k_{i+1} + 1) indices in ascending lexicographic order;
// for n = 1 the singleton holding the empty index.
std::vector<OmegaIndex> enumerate_omega(const KWeight& k);

// N itself, without materializing the enumeration.
Int omega_size(const KWeight& k);

std::string format_tuple(const std::vector<Int>& values, char sep = ',');

}  // namespace dualwalk

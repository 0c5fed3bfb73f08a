#pragma once

#include <optional>
#include <vector>

#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// Squared transition coefficients of the walk, i in 1..n+1:
//
//   a_i²(m,k) = | prod_{j=1..n} (k_j - m_i - j + i - 1) |
//               ---------------------------------------- ,
//               | prod_{j != i} (m_j - m_i - j + i)     |
//
//   b_i²(m,k) = same with numerator factors (k_j - m_i - j + i).
//
// The absolute value wraps the whole quotient, so both are computed as
// integer products with one final abs. On weakly decreasing m the map
// i -> m_i - i is strictly decreasing, hence the denominator never
// vanishes; this is enforced, never assumed.
Rational a_sq(const StateSignature& m, int i);
Rational b_sq(const StateSignature& m, int i);

// All n+1 values at once; each vector sums to exactly 1.
std::vector<Rational> a_sq_all(const StateSignature& m);
std::vector<Rational> b_sq_all(const StateSignature& m);

// The decrease-substep law: b² evaluated at m + e_{n+1}. The shifted tuple
// can leave the state space (exactly when m_{n+1} = k_n) while the formulas
// remain well-defined as long as it is still weakly decreasing. In the
// fully degenerate case m_n = m_{n+1} every numerator and the denominator
// vanish (0/0), and nullopt is returned; callers decide (the block builder
// emits a zero row there, the sampler refuses the state).
std::optional<std::vector<Rational>> b_sq_at_shift(const StateSignature& m);

namespace detail {
// Formula kernels on raw tuples (no interlacing requirement); the tuple
// must have m_j - j pairwise distinct or std::logic_error is thrown.
Rational a_sq_raw(const std::vector<Int>& m, const KWeight& k, int i);
Rational b_sq_raw(const std::vector<Int>& m, const KWeight& k, int i);
}  // namespace detail

}  // namespace dualwalk

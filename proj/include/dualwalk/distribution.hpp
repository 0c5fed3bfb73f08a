#pragma once

#include <map>
#include <vector>

#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// Finitely-supported exact distribution over lattice states, keyed by the
// m-tuple. std::map keeps emission order deterministic.
struct Distribution {
  std::map<std::vector<Int>, Rational> weights;

  void add(const std::vector<Int>& state, const Rational& p) {
    if (p != 0) {
      weights[state] += p;
    }
  }

  Rational total() const {
    Rational sum = 0;
    for (const auto& [state, p] : weights) {
      sum += p;
    }
    return sum;
  }
};

}  // namespace dualwalk

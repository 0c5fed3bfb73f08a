#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// Sampling never touches floating point: categorical draws run on an exact
// integer wheel, and uniform integers come from hand-rolled rejection so the
// byte stream is identical on every platform (std::uniform_int_distribution
// is implementation-defined).

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// One independent, reproducible stream per walker: the engine seed is a
// splitmix64 hash of (seed, walker), so results do not depend on how
// walkers are scheduled across workers.
inline std::mt19937_64 walker_stream(std::uint64_t seed,
                                     std::uint64_t walker) {
  std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (walker + 1));
  const std::uint64_t engine_seed = splitmix64(state);
  return std::mt19937_64(engine_seed);
}

// Uniform draw from {0, ..., bound-1} by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng,
                                   std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

// Same for arbitrary-precision bounds: assemble 64-bit chunks up to the bit
// width of bound, reject values >= bound.
inline Integer uniform_below(std::mt19937_64& rng, const Integer& bound) {
  if (bound <= 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  if (bound <= Integer(UINT64_MAX)) {
    return Integer(uniform_below(rng, bound.convert_to<std::uint64_t>()));
  }
  const unsigned bits = msb(bound) + 1;
  const unsigned chunks = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (chunks - 1);
  while (true) {
    Integer value = 0;
    for (unsigned c = 0; c < chunks; ++c) {
      std::uint64_t chunk = rng();
      if (c == 0 && top_bits < 64) {
        chunk >>= (64 - top_bits);
      }
      value <<= (c == 0 ? top_bits : 64);
      value += chunk;
    }
    if (value < bound) {
      return value;
    }
  }
}

// Index draw with integer weights (ball counts); weights may contain zeros,
// the total must be positive.
inline int draw_weighted(std::mt19937_64& rng, const std::vector<Int>& weights) {
  Int total = 0;
  for (Int w : weights) {
    if (w < 0) {
      throw std::invalid_argument("draw_weighted: negative weight");
    }
    total += w;
  }
  if (total <= 0) {
    throw std::invalid_argument("draw_weighted: empty wheel");
  }
  std::uint64_t u =
      uniform_below(rng, static_cast<std::uint64_t>(total));
  for (size_t i = 0; i < weights.size(); ++i) {
    const std::uint64_t w = static_cast<std::uint64_t>(weights[i]);
    if (u < w) {
      return static_cast<int>(i);
    }
    u -= w;
  }
  throw std::logic_error("draw_weighted: wheel ran past the end");
}

// Index draw from exact rational probabilities summing to 1: scale to the
// common denominator and spin an integer wheel there.
inline int draw_categorical(std::mt19937_64& rng,
                            const std::vector<Rational>& probabilities) {
  Integer common = 1;
  for (const Rational& p : probabilities) {
    common = lcm(common, Integer(denominator(p)));
  }
  Integer u = uniform_below(rng, common);
  for (size_t i = 0; i < probabilities.size(); ++i) {
    const Integer w =
        Integer(numerator(probabilities[i])) *
        (common / Integer(denominator(probabilities[i])));
    if (u < w) {
      return static_cast<int>(i);
    }
    u -= w;
  }
  throw std::logic_error(
      "draw_categorical: probabilities sum to less than 1");
}

}  // namespace dualwalk

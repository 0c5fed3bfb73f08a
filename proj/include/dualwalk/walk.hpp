#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "dualwalk/distribution.hpp"
#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// How the increase substep draws its index: straight from the exact a²
// law, or through one of the two combinatorial mechanisms that realize it.
// The decrease substep has no such mechanism; it always samples b²
// directly.
enum class Mechanism { direct, urn, young };

std::string to_string(Mechanism mechanism);
Mechanism parse_mechanism(const std::string& name);

// m -> m + e_j with probability a²(m, j). The young mechanism needs
// diagram semantics (m_{n+1} >= 0) and refuses other states with
// MechanismUnavailableError.
StateSignature step_increase(const StateSignature& m, std::mt19937_64& rng,
                             Mechanism mechanism = Mechanism::direct);

// The standalone decrease substep: m -> m - e_j with probability
// b²(m + e_{n+1}, j). Throws DomainError at the degenerate states
// m_n = m_{n+1}, where that law is 0/0.
StateSignature step_decrease(const StateSignature& m, std::mt19937_64& rng);

// One step of the composed walk: draw i from a²(m, ·), sit at the
// intermediate m' = m + e_i, draw l from b²(m', ·), land on m' - e_l.
// Σm is conserved, so the walk never leaves its hyperplane.
StateSignature full_step(const StateSignature& m, std::mt19937_64& rng,
                         Mechanism mechanism = Mechanism::direct);

// The exact one-step law of the composed walk: mass a²(m,i)·b²(m+e_i,l)
// aggregated onto m + e_i - e_l. Sums to 1; support holds at most
// n(n+1)+1 states.
Distribution exact_row(const StateSignature& m);

// Trajectories of the first few walkers, kept for reproducibility checks.
// Rows serialize as walker_id,step,"m" with step 0 the initial state.
struct TrajectoryLog {
  std::uint64_t seed = 0;
  Mechanism mechanism = Mechanism::direct;
  std::vector<std::vector<std::vector<Int>>> walkers;  // [walker][step] -> m

  std::string csv() const;
};

struct SimulationResult {
  Int walkers = 0;
  std::map<std::vector<Int>, Int> counts;  // final state -> walker count
  TrajectoryLog log;

  std::string empirical_csv() const;  // state,count,frequency
};

// Run `walkers` independent trajectories of t composed steps. Each walker
// draws from its own stream derived from (seed, walker id), so the result
// — counts and log alike — is identical for every worker count.
// `logged_walkers` trajectories (walker ids 0, 1, ...) are recorded.
SimulationResult simulate(const StateSignature& initial, Int t, Int walkers,
                          std::uint64_t seed,
                          Mechanism mechanism = Mechanism::direct,
                          int workers = 1, Int logged_walkers = 1);

// Total-variation distance between empirical frequencies and an exact law:
// half the sum of |count/walkers - weight| over the union of supports.
double total_variation(const std::map<std::vector<Int>, Int>& counts,
                       Int walkers, const Distribution& exact);

}  // namespace dualwalk

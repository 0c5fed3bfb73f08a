#include "dualwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "dualwalk/coefficients.hpp"
#include "dualwalk/random.hpp"
#include "dualwalk/urn.hpp"
#include "dualwalk/young.hpp"

namespace dualwalk {

std::string to_string(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::direct:
      return "direct";
    case Mechanism::urn:
      return "urn";
    case Mechanism::young:
      return "young";
  }
  throw std::logic_error("unreachable mechanism tag");
}

Mechanism parse_mechanism(const std::string& name) {
  if (name == "direct") {
    return Mechanism::direct;
  }
  if (name == "urn") {
    return Mechanism::urn;
  }
  if (name == "young") {
    return Mechanism::young;
  }
  throw DomainError("unknown mechanism '" + name +
                    "'; expected direct, urn or young");
}

StateSignature step_increase(const StateSignature& m, std::mt19937_64& rng,
                             Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::direct:
      return m.shifted(draw_categorical(rng, a_sq_all(m)) + 1, +1);
    case Mechanism::urn:
      return urn_step(m, rng);
    case Mechanism::young: {
      const Int last = m.at1(m.n() + 1);
      if (last < 0) {
        std::ostringstream msg;
        msg << "the Young mechanism needs diagram states (m_" << m.n() + 1
            << " >= 0), got m_" << m.n() + 1 << " = " << last;
        throw MechanismUnavailableError(msg.str());
      }
      return young_step(YoungState(m), rng).state();
    }
  }
  throw std::logic_error("unreachable mechanism tag");
}

StateSignature step_decrease(const StateSignature& m, std::mt19937_64& rng) {
  const auto b = b_sq_at_shift(m);
  if (!b.has_value()) {
    throw DomainError(
        "decrease law undefined at m_n = m_{n+1}: every b² numerator and "
        "the denominator vanish at m + e_{n+1}");
  }
  return m.shifted(draw_categorical(rng, *b) + 1, -1);
}

StateSignature full_step(const StateSignature& m, std::mt19937_64& rng,
                         Mechanism mechanism) {
  const StateSignature mid = step_increase(m, rng, mechanism);
  return mid.shifted(draw_categorical(rng, b_sq_all(mid)) + 1, -1);
}

Distribution exact_row(const StateSignature& m) {
  Distribution out;
  const std::vector<Rational> a = a_sq_all(m);
  for (int i = 1; i <= m.n() + 1; ++i) {
    if (a[static_cast<size_t>(i) - 1] == 0) {
      continue;
    }
    const StateSignature mid = m.shifted(i, +1);
    const std::vector<Rational> b = b_sq_all(mid);
    for (int l = 1; l <= m.n() + 1; ++l) {
      if (b[static_cast<size_t>(l) - 1] != 0) {
        out.add(mid.shifted(l, -1).m(),
                a[static_cast<size_t>(i) - 1] * b[static_cast<size_t>(l) - 1]);
      }
    }
  }
  return out;
}

std::string TrajectoryLog::csv() const {
  std::string out = "walker_id,step,m\n";
  for (size_t wid = 0; wid < walkers.size(); ++wid) {
    for (size_t step = 0; step < walkers[wid].size(); ++step) {
      out += std::to_string(wid);
      out += ',';
      out += std::to_string(step);
      out += ",\"";
      out += format_tuple(walkers[wid][step]);
      out += "\"\n";
    }
  }
  return out;
}

std::string SimulationResult::empirical_csv() const {
  std::ostringstream out;
  out << "state,count,frequency\n";
  for (const auto& [state, count] : counts) {
    out << '"' << format_tuple(state) << "\"," << count << ','
        << static_cast<double>(count) / static_cast<double>(walkers) << '\n';
  }
  return out.str();
}

SimulationResult simulate(const StateSignature& initial, Int t, Int walkers,
                          std::uint64_t seed, Mechanism mechanism, int workers,
                          Int logged_walkers) {
  if (t < 0) {
    throw DomainError("step count must be non-negative");
  }
  if (walkers < 1) {
    throw DomainError("walker count must be positive");
  }
  const Int logged = std::clamp<Int>(logged_walkers, 0, walkers);
  const int pool_size =
      static_cast<int>(std::min<Int>(std::max(workers, 1), walkers));

  SimulationResult result;
  result.walkers = walkers;
  result.log.seed = seed;
  result.log.mechanism = mechanism;
  result.log.walkers.resize(static_cast<size_t>(logged));

  // Each worker owns a contiguous slab of walker ids and its own count
  // map; every walker draws from the stream derived from (seed, id), so
  // neither the slab boundaries nor the merge order can change anything.
  std::vector<std::map<std::vector<Int>, Int>> partial(
      static_cast<size_t>(pool_size));
  auto run_slab = [&](int worker) {
    const Int lo = walkers * worker / pool_size;
    const Int hi = walkers * (worker + 1) / pool_size;
    for (Int id = lo; id < hi; ++id) {
      std::mt19937_64 rng =
          walker_stream(seed, static_cast<std::uint64_t>(id));
      StateSignature state = initial;
      const bool tracked = id < logged;
      if (tracked) {
        result.log.walkers[static_cast<size_t>(id)].push_back(state.m());
      }
      for (Int step = 0; step < t; ++step) {
        state = full_step(state, rng, mechanism);
        if (tracked) {
          result.log.walkers[static_cast<size_t>(id)].push_back(state.m());
        }
      }
      ++partial[static_cast<size_t>(worker)][state.m()];
    }
  };

  if (pool_size == 1) {
    run_slab(0);
  } else {
    std::vector<std::exception_ptr> failures(static_cast<size_t>(pool_size));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(pool_size));
    for (int worker = 0; worker < pool_size; ++worker) {
      pool.emplace_back([&, worker] {
        try {
          run_slab(worker);
        } catch (...) {
          failures[static_cast<size_t>(worker)] = std::current_exception();
        }
      });
    }
    for (std::thread& thread : pool) {
      thread.join();
    }
    for (const std::exception_ptr& failure : failures) {
      if (failure) {
        std::rethrow_exception(failure);
      }
    }
  }

  for (const auto& slab : partial) {
    for (const auto& [state, count] : slab) {
      result.counts[state] += count;
    }
  }
  return result;
}

double total_variation(const std::map<std::vector<Int>, Int>& counts,
                       Int walkers, const Distribution& exact) {
  if (walkers < 1) {
    throw DomainError("walker count must be positive");
  }
  double distance = 0;
  for (const auto& [state, weight] : exact.weights) {
    const auto it = counts.find(state);
    const double frequency =
        it == counts.end()
            ? 0.0
            : static_cast<double>(it->second) / static_cast<double>(walkers);
    distance += std::abs(frequency - to_double(weight));
  }
  for (const auto& [state, count] : counts) {
    if (exact.weights.find(state) == exact.weights.end()) {
      distance += static_cast<double>(count) / static_cast<double>(walkers);
    }
  }
  return distance / 2;
}

}  // namespace dualwalk

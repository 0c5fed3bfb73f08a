// Acceptance gate: one self-contained check per shipped guarantee, each
// printed as a single PASS/FAIL line. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dualwalk/blocks.hpp"
#include "dualwalk/coefficients.hpp"
#include "dualwalk/random.hpp"
#include "dualwalk/urn.hpp"
#include "dualwalk/walk.hpp"
#include "dualwalk/young.hpp"
#include "test_support.hpp"

using namespace dualwalk;
using test_support::random_k;
using test_support::random_m;
using test_support::random_p_state;
using test_support::u_upto;

namespace {

struct Criterion {
  int number;
  std::string label;
  std::function<void(std::ostringstream&)> run;  // throws on failure
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw Failure(what);
  }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

// Full M row at a P state, assembled directly from the level blocks.
Distribution m_row_from_blocks(const StateSignature& m) {
  const KWeight& k = m.k();
  const PCoordinate at = wr_from_state(m);
  const auto omega = enumerate_omega(k);
  size_t row = 0;
  while (omega[row].r != at.r.r) {
    ++row;
  }
  const BlockTriple blocks = build_abc(at.w, k);
  Distribution out;
  const Int w_min = k.values().back() < 0 ? -k.values().back() : 0;
  for (size_t col = 0; col < omega.size(); ++col) {
    const auto row_i = static_cast<Eigen::Index>(row);
    const auto col_i = static_cast<Eigen::Index>(col);
    if (at.w > w_min) {
      out.add(state_from_wr({at.w - 1, omega[col]}, k).m(),
              blocks.A(row_i, col_i));
    }
    out.add(state_from_wr({at.w, omega[col]}, k).m(), blocks.B(row_i, col_i));
    out.add(state_from_wr({at.w + 1, omega[col]}, k).m(),
            blocks.C(row_i, col_i));
  }
  return out;
}

void criterion_unit_sums(std::ostringstream& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  int states = 0;
  for (int n = 1; n <= 5; ++n) {
    for (int rep = 0; rep < 110; ++rep) {
      const KWeight k(random_k(rng, n, -9, 9));
      const StateSignature m(random_m(rng, k, 6), k);
      Rational a_total = 0, b_total = 0;
      for (const Rational& a : a_sq_all(m)) {
        a_total += a;
      }
      for (const Rational& b : b_sq_all(m)) {
        b_total += b;
      }
      require(a_total == 1, "sum of a² != 1 at a random state");
      require(b_total == 1, "sum of b² != 1 at a random state");
      ++states;
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 5.0, "unit-sum sweep exceeded 5 s");
  detail << states << " states, n = 1..5, exact, " << elapsed << " s";
}

void criterion_stochasticity(std::ostringstream& detail) {
  std::mt19937_64 rng(1002);
  const Int w_cap = 12;
  int interior_rows = 0;
  for (int n = 1; n <= 4; ++n) {
    const KWeight k(random_k(rng, n, 1, 7));
    for (Layout layout : {Layout::M, Layout::M1, Layout::M2}) {
      const auto matrix = build_matrix(layout, k, w_cap);
      for (const RowSum& row : row_sum_report(matrix)) {
        require(row.klass != RowClass::degenerate,
                "unexpected degenerate row with k_n >= 1");
        if (row.klass == RowClass::interior) {
          require(row.sum == 1, "interior row sum != 1");
          ++interior_rows;
        } else {
          require(row.w == w_cap, "boundary row away from the cut-off");
          require(row.sum <= 1, "boundary row sum > 1");
        }
      }
    }
  }
  detail << interior_rows << " interior rows of M, M1, M2 sum to 1 exactly"
         << " (n = 1..4, levels 0..12)";
}

void criterion_factorization(std::ostringstream& detail) {
  std::mt19937_64 rng(1003);
  int identities = 0;
  for (int n = 1; n <= 4; ++n) {
    const KWeight k(random_k(rng, n, 0, 6));
    const FactorReport report = check_factorization(k, 12);
    require(report.ok(), "block identity violated for n = " + std::to_string(n));
    require(report.w_min == 0 && report.w_max == 11,
            "factorization window is not w = 0..11");
    identities += report.identities_checked;
  }
  detail << identities
         << " block identities A=YR, B=XR'+YS, C=XS' hold exactly, w = 0..11";
}

void criterion_urn_law(std::ostringstream& detail) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1004);
  int states = 0;
  for (int n = 1; n <= 4; ++n) {
    const int reps = n == 4 ? 5 : 100;
    for (int rep = 0; rep < reps; ++rep) {
      const KWeight k(random_k(rng, n, -5, 5));
      const StateSignature m(random_m(rng, k, 4), k);
      require(class_probabilities(m) == a_sq_all(m),
              "urn class law != a² at a random state");
      ++states;
    }
  }
  const double elapsed = seconds_since(start);
  require(elapsed < 120.0, "urn law sweep exceeded 2 min");
  detail << states << " states (n = 4 enumerates 294912 words each), "
         << elapsed << " s";
}

void criterion_cardinalities(std::ostringstream& detail) {
  const std::map<int, std::vector<Integer>> tables{
      {2, {6, 4, 6}},
      {3, {240, 144, 144, 240}},
      {4, {80640, 46080, 41472, 46080, 80640}}};
  for (const auto& [n, expected] : tables) {
    require(class_cardinalities_recursive(n) == expected,
            "recursion table mismatch at n = " + std::to_string(n));
    require(class_cardinalities_enumerated(n) == expected,
            "enumeration table mismatch at n = " + std::to_string(n));
    Integer total = 0;
    for (const Integer& size : expected) {
      total += size;
    }
    require(total == Integer(enumerate_words(n).size()),
            "class sizes do not partition the sample space");
  }
  detail << "class sizes (6,4,6), (240,144,144,240), "
            "(80640,46080,41472,46080,80640) by recursion and enumeration";
}

void criterion_young_law(std::ostringstream& detail) {
  std::mt19937_64 rng(1006);
  int states = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 40; ++rep) {
      const KWeight k(random_k(rng, n, 0, 5));
      std::vector<Int> mv = random_m(rng, k, 4);
      if (mv.back() < 0) {
        mv.back() = k.at1(n);
      }
      const StateSignature m(mv, k);
      const YoungState diagram(m);
      require(class_probabilities(diagram) == class_probabilities(m),
              "diagram law != urn law");
      require(class_probabilities(diagram) == a_sq_all(m),
              "diagram law != a²");
      ++states;
    }
  }
  const KWeight k({6, 3});
  const StateSignature flat({6, 6, 1}, k);  // k_1 = m_2
  const YoungState diagram(flat);
  require(realizable_class_sizes(diagram) == std::vector<Integer>{4, 0, 2},
          "degenerate realizable sizes != (4, 0, 2)");
  const auto law = class_probabilities(diagram);
  const Int m1 = flat.at1(1), m3 = flat.at1(3), k2 = k.at1(2);
  require(law[0] == Rational(m1 - k2 + 2, m1 - m3 + 2) && law[1] == 0 &&
              law[2] == Rational(k2 - m3, m1 - m3 + 2),
          "degenerate law != closed form");
  require(law == std::vector<Rational>{{5, 7}, 0, {2, 7}},
          "degenerate law != (5/7, 0, 2/7)");
  detail << states
         << " diagram states agree with the urn law and a²; degenerate "
            "k_1 = m_2 case gives sizes (4,0,2), law (5/7, 0, 2/7)";
}

void criterion_row_agreement(std::ostringstream& detail) {
  std::mt19937_64 rng(1007);
  int states = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const KWeight k(random_k(rng, n, 0, 6));
      const StateSignature m = random_p_state(rng, k, 7);
      const Distribution direct = exact_row(m);
      require(direct.weights == tilde_row(m, TildeKind::M).weights,
              "exact_row != block-form row");
      require(direct.weights == m_row_from_blocks(m).weights,
              "exact_row != assembled M row");
      require(direct.weights.size() <= static_cast<size_t>(n * (n + 1) + 1),
              "support exceeds n(n+1)+1");
      require(direct.total() == 1, "one-step row does not sum to 1");
      ++states;
    }
  }
  detail << states
         << " states: composed row = block row = M row, support <= n(n+1)+1";
}

void criterion_monte_carlo(std::ostringstream& detail) {
  const auto start = std::chrono::steady_clock::now();
  const KWeight k({3});
  const StateSignature origin({5, 2}, k);
  const Int walkers = 100000;

  const auto one_step = simulate(origin, 1, walkers, 2024, Mechanism::direct,
                                 4, 0);
  const Distribution law = exact_row(origin);
  for (const auto& [state, p] : law.weights) {
    const double expectation = static_cast<double>(walkers) * to_double(p);
    const double sigma = std::sqrt(static_cast<double>(walkers) *
                                   to_double(p) * (1.0 - to_double(p)));
    const auto it = one_step.counts.find(state);
    const double count =
        it == one_step.counts.end() ? 0.0 : static_cast<double>(it->second);
    require(std::abs(count - expectation) <= 4.0 * sigma,
            "one-step frequency misses its 4σ band at " + format_tuple(state));
  }

  // Ten steps from (5, -2) = m(w = 2): exact law by evolution on levels
  // 0..40, empirical law from the same number of walkers.
  const StateSignature deep({5, -2}, k);
  const EvolveResult evolved =
      evolve({{wr_from_state(deep), 1}}, 10, k, 40);
  require(!evolved.truncation_warning && evolved.mass == 1,
          "exact evolution leaked mass through the cut-off");
  Distribution exact;
  for (const auto& [coord, weight] : evolved.distribution) {
    exact.add(state_from_wr(coord, k).m(), weight);
  }
  const auto ten_step =
      simulate(deep, 10, walkers, 2025, Mechanism::direct, 4, 0);
  const double tv = total_variation(ten_step.counts, walkers, exact);
  require(tv <= 0.02, "TV distance " + std::to_string(tv) + " > 0.02");
  const double elapsed = seconds_since(start);
  require(elapsed < 30.0, "Monte Carlo run exceeded 30 s");
  std::ostringstream tv_text;
  tv_text.precision(4);
  tv_text << tv;
  detail << "10^5 walkers: one-step counts within 4σ, ten-step TV = "
         << tv_text.str() << " <= 0.02, " << elapsed << " s";
}

void criterion_determinism(std::ostringstream& detail) {
  const KWeight k({6, 3});
  const StateSignature origin({8, 5, 1}, k);
  const auto serial =
      simulate(origin, 6, 4000, 31, Mechanism::direct, 1, 6);
  const auto threaded =
      simulate(origin, 6, 4000, 31, Mechanism::direct, 4, 6);
  require(serial.log.csv() == threaded.log.csv(),
          "trajectory logs differ between worker counts");
  require(serial.counts == threaded.counts,
          "final-state counts differ between worker counts");
  require(!serial.log.csv().empty() && serial.log.walkers.size() == 6,
          "trajectory log missing walkers");
  detail << "workers 1 and 4: byte-identical trajectory CSV, equal counts "
            "(4000 walkers, 6 steps)";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "unit sums", criterion_unit_sums},
      {2, "stochasticity", criterion_stochasticity},
      {3, "factorization", criterion_factorization},
      {4, "urn class law", criterion_urn_law},
      {5, "cardinality tables", criterion_cardinalities},
      {6, "diagram model", criterion_young_law},
      {7, "row agreement", criterion_row_agreement},
      {8, "Monte Carlo", criterion_monte_carlo},
      {9, "determinism", criterion_determinism},
  };
  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::ostringstream detail;
    bool ok = true;
    std::string reason;
    try {
      criterion.run(detail);
    } catch (const std::exception& error) {
      ok = false;
      reason = error.what();
    }
    if (ok) {
      std::printf("PASS criterion %d (%s): %s\n", criterion.number,
                  criterion.label.c_str(), detail.str().c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d (%s): %s\n", criterion.number,
                  criterion.label.c_str(), reason.c_str());
    }
  }
  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", failures);
  }
  return failures;
}

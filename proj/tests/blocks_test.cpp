#include <map>
#include <vector>

#include "doctest.h"
#include "dualwalk/blocks.hpp"
#include "dualwalk/coefficients.hpp"
#include "dualwalk/walk.hpp"
#include "test_support.hpp"

using namespace dualwalk;
using test_support::random_k;

namespace {

// Scalar row of M at the coordinate of m, reassembled from the A/B/C
// blocks and keyed by lattice states; the independent reference for
// tilde_row and exact_row.
Distribution m_row_from_blocks(const StateSignature& m) {
  const KWeight& k = m.k();
  const PCoordinate p = wr_from_state(m);
  const auto omega = enumerate_omega(k);
  const auto lookup = [&](const OmegaIndex& r) {
    for (size_t i = 0; i < omega.size(); ++i) {
      if (omega[i] == r) {
        return static_cast<Int>(i);
      }
    }
    throw std::logic_error("index not in omega");
  };
  const Int row = lookup(p.r);
  const BlockTriple t = build_abc(p.w, k);
  Distribution out;
  for (Int col = 0; col < t.B.cols(); ++col) {
    if (p.w > 0 && t.A(row, col) != 0) {
      out.add(state_from_wr({p.w - 1, omega[static_cast<size_t>(col)]}, k).m(),
              t.A(row, col));
    }
    if (t.B(row, col) != 0) {
      out.add(state_from_wr({p.w, omega[static_cast<size_t>(col)]}, k).m(),
              t.B(row, col));
    }
    if (t.C(row, col) != 0) {
      out.add(state_from_wr({p.w + 1, omega[static_cast<size_t>(col)]}, k).m(),
              t.C(row, col));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("scalar blocks for n = 1, k = (3)") {
  const KWeight k({3});
  auto [X0, Y0] = build_xy(0, k);
  CHECK(X0(0, 0) == Rational(1, 4));
  CHECK(Y0(0, 0) == Rational(3, 4));
  auto [R0, S0] = build_rs(0, k);
  CHECK(R0(0, 0) == 0);  // the b_1² factor k_1 - m_1 vanishes at w = 0
  CHECK(S0(0, 0) == 1);
  auto [R1, S1] = build_rs(1, k);
  CHECK(R1(0, 0) == Rational(1, 5));
  CHECK(S1(0, 0) == Rational(4, 5));

  const BlockTriple t0 = build_abc(0, k);
  CHECK(t0.A(0, 0) == 0);
  CHECK(t0.B(0, 0) == Rational(4, 5));
  CHECK(t0.C(0, 0) == Rational(1, 5));
  const BlockTriple t1 = build_abc(1, k);
  CHECK(t1.A(0, 0) == Rational(2, 15));

  CHECK_THROWS_AS(build_abc(-1, k), DomainError);
  CHECK_THROWS_AS(build_abc(1, KWeight({0, -2})), DomainError);
  CHECK_THROWS_AS(build_matrix(Layout::MTildeRowView, k, 4), DomainError);
  CHECK_THROWS_AS(build_matrix(Layout::M, KWeight({0, -2}), 1), DomainError);
}

TEST_CASE("substep blocks are jointly stochastic level by level") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 1 + static_cast<int>(test_support::u_upto(rng, 2));
    std::vector<Int> kv = random_k(rng, n, -4, 6);
    const KWeight k(kv);
    const Int w_min = std::max<Int>(0, -kv.back());
    for (Int w = w_min; w <= w_min + 3; ++w) {
      auto [X, Y] = build_xy(w, k);
      auto [R, S] = build_rs(w, k);
      const auto omega = enumerate_omega(k);
      for (Int row = 0; row < X.rows(); ++row) {
        CHECK(X.row(row).sum() + Y.row(row).sum() == 1);
        const StateSignature m = state_from_wr({w, omega[static_cast<size_t>(row)]}, k);
        if (m.at1(n) == m.at1(n + 1)) {
          // 0/0 row, emitted as zeros by convention.
          CHECK(R.row(row).sum() + S.row(row).sum() == 0);
        } else {
          CHECK(R.row(row).sum() + S.row(row).sum() == 1);
        }
      }
    }
  }
}

TEST_CASE("row sums classify as interior, boundary, degenerate") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 12; ++rep) {
    const int n = 1 + static_cast<int>(test_support::u_upto(rng, 2));
    std::vector<Int> kv = random_k(rng, n, 1, 7);  // k_n >= 1
    const KWeight k(kv);
    for (Layout layout : {Layout::M, Layout::M1, Layout::M2}) {
      const auto matrix = build_matrix(layout, k, 6);
      for (const RowSum& entry : row_sum_report(matrix)) {
        CHECK(entry.klass != RowClass::degenerate);  // needs m_n = m_{n+1}
        if (entry.klass == RowClass::interior) {
          CHECK(entry.sum == 1);
        } else {
          CHECK(entry.w == matrix.w_max);
          CHECK(entry.sum <= 1);
          CHECK(entry.sum >= 0);
        }
      }
    }
  }

  // k_n < 0: the bottom level leaks (M, M2 boundary) and M2 owns one
  // degenerate 0/0 row at (w_min, 0).
  const KWeight k({0, -2});
  const auto m2 = build_matrix(Layout::M2, k, 6);
  int degenerate = 0, boundary = 0;
  for (const RowSum& entry : row_sum_report(m2)) {
    if (entry.klass == RowClass::degenerate) {
      ++degenerate;
      CHECK(entry.w == 2);
      CHECK(entry.r.r == std::vector<Int>{0});
      CHECK(entry.sum == 0);
    }
    if (entry.klass == RowClass::boundary) {
      ++boundary;
      CHECK(entry.w == 2);
    }
  }
  CHECK(degenerate == 1);
  CHECK(boundary == 2);  // the other r at the bottom level
  const auto m_report = row_sum_report(build_matrix(Layout::M, k, 6));
  for (const RowSum& entry : m_report) {
    if (entry.klass == RowClass::interior) {
      CHECK(entry.sum == 1);
    }
  }
}

TEST_CASE("factorization identities hold exactly") {
  const FactorReport at63 = check_factorization(KWeight({6, 3}), 10);
  CHECK(at63.ok());
  CHECK(at63.identities_checked == 30);

  for (const std::vector<Int>& kv :
       {std::vector<Int>{3}, {0}, {5, 2, 0}, {4, 3, 1, 0}, {0, -2}, {3, 1, -2}}) {
    const KWeight k(kv);
    const Int w_min = std::max<Int>(0, -kv.back());
    const FactorReport report = check_factorization(k, w_min + 6);
    CHECK(report.ok());
    CHECK(report.identities_checked == 18);
  }
  CHECK_THROWS_AS(check_factorization(KWeight({3}), 0), DomainError);
}

TEST_CASE("dense assembly multiplies out to M below the cut-off") {
  for (const std::vector<Int>& kv : {std::vector<Int>{3}, {6, 3}, {2, 1, 0}}) {
    const KWeight k(kv);
    const Int w_max = 4;
    const auto M = build_matrix(Layout::M, k, w_max);
    const auto M1 = build_matrix(Layout::M1, k, w_max);
    const auto M2 = build_matrix(Layout::M2, k, w_max);
    CHECK(M1.sub.empty());
    CHECK(M2.sup.empty());
    const DenseMatrix product = M1.dense() * M2.dense();
    const DenseMatrix direct = M.dense();
    const Int N = M.block_size;
    REQUIRE(direct.rows() == (w_max + 1) * N);
    for (Int row = 0; row < w_max * N; ++row) {
      for (Int col = 0; col < direct.cols(); ++col) {
        CHECK(product(row, col) == direct(row, col));
      }
    }
  }
}

TEST_CASE("tilde rows at the worked example") {
  const KWeight k({6, 3});
  const StateSignature m({8, 5, 1}, k);

  const Distribution increase = tilde_row(m, TildeKind::M1);
  CHECK(increase.weights ==
        std::map<std::vector<Int>, Rational>{{{9, 5, 1}, {7, 12}},
                                             {{8, 6, 1}, {3, 20}},
                                             {{8, 5, 2}, {4, 15}}});

  const Distribution decrease = tilde_row(m, TildeKind::M2);
  CHECK(decrease.weights ==
        std::map<std::vector<Int>, Rational>{{{7, 5, 1}, {3, 8}},
                                             {{8, 4, 1}, {1, 4}},
                                             {{8, 5, 0}, {3, 8}}});
  CHECK_THROWS_AS(tilde_row(StateSignature({8, 3, 3}, k), TildeKind::M2),
                  DomainError);

  const KWeight k1({3});
  const Distribution composed = tilde_row(StateSignature({5, 2}, k1), TildeKind::M);
  CHECK(composed.weights ==
        std::map<std::vector<Int>, Rational>{{{5, 2}, {8, 15}},
                                             {{6, 1}, {3, 10}},
                                             {{4, 3}, {1, 6}}});
  CHECK(composed.total() == 1);
}

TEST_CASE("three routes to the composed row agree on P") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 60; ++rep) {
    const int n = 1 + static_cast<int>(test_support::u_upto(rng, 2));
    std::vector<Int> kv = random_k(rng, n, 0, 6);
    const KWeight k(kv);
    const StateSignature m = test_support::random_p_state(rng, k, 5);
    const Distribution via_tilde = tilde_row(m, TildeKind::M);
    const Distribution via_blocks = m_row_from_blocks(m);
    const Distribution via_walk = exact_row(m);
    CHECK(via_tilde.weights == via_blocks.weights);
    CHECK(via_tilde.weights == via_walk.weights);
    CHECK(via_tilde.total() == 1);
  }
}

TEST_CASE("exact evolution on the truncated window") {
  const KWeight k({3});
  const std::map<PCoordinate, Rational> start{{{0, {}}, Rational(1)}};

  const EvolveResult still = evolve(start, 0, k, 5);
  CHECK(still.distribution ==
        std::map<PCoordinate, Rational>{{{0, {}}, Rational(1)}});
  CHECK(still.mass == 1);
  CHECK_FALSE(still.truncation_warning);

  const EvolveResult one = evolve(start, 1, k, 5);
  CHECK(one.distribution ==
        std::map<PCoordinate, Rational>{{{0, {}}, {4, 5}}, {{1, {}}, {1, 5}}});
  CHECK(one.deficit == 0);

  const EvolveResult ten = evolve(start, 10, k, 40);
  CHECK(ten.mass == 1);
  CHECK(ten.deficit == 0);
  CHECK_FALSE(ten.truncation_warning);

  // Too tight a window: the warning fires and mass leaks, exactly
  // accounted by the deficit.
  const EvolveResult tight = evolve(start, 6, k, 2);
  CHECK(tight.truncation_warning);
  CHECK(tight.mass < 1);
  CHECK(tight.mass + tight.deficit == 1);

  CHECK_THROWS_AS(evolve(start, -1, k, 5), DomainError);
  CHECK_THROWS_AS(evolve({{{9, {}}, Rational(1)}}, 1, k, 5), DomainError);
  CHECK_THROWS_AS(evolve({{{0, {}}, Rational(-1)}}, 1, k, 5), DomainError);

  // Multi-point initial data evolves linearly.
  const std::map<PCoordinate, Rational> two{{{0, {}}, {1, 2}},
                                            {{1, {}}, {1, 2}}};
  const EvolveResult mixed = evolve(two, 1, k, 5);
  const BlockTriple t1 = build_abc(1, k);
  const BlockTriple t0 = build_abc(0, k);
  CHECK(mixed.distribution.at({0, {}}) ==
        Rational(1, 2) * t0.B(0, 0) + Rational(1, 2) * t1.A(0, 0));
}

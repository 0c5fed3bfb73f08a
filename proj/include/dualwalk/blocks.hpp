#pragma once

#include "dualwalk/rational.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <map>
#include <vector>

#include "dualwalk/distribution.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// One Omega x Omega cell of a semi-infinite block matrix; rows and columns
// follow the enumerate_omega order.
using Block = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using DenseMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

enum class Layout { M, M1, M2, MTildeRowView };

struct BlockTriple {
  Block A, B, C;
};

// Blocks of the one-step matrix M at level w: A_w maps to level w-1,
// B_w stays, C_w maps to level w+1. Requires w >= max(0, -k_n).
BlockTriple build_abc(Int w, const KWeight& k);

// Increase-substep blocks: X_w (diagonal, a_1², maps to level w+1) and
// Y_w (a_{n+1}² on the diagonal, a_{j+1}² at column r+e_j, stays).
std::pair<Block, Block> build_xy(Int w, const KWeight& k);

// Decrease-substep blocks: R_w (diagonal, b_1² at the e_{n+1}-shifted
// state, maps to level w-1) and S_w (b_{n+1}² diagonal, b_{j+1}² at column
// r-e_j, stays). At a level state with m_n = m_{n+1} the shifted formulas
// are 0/0; that row is emitted as all zeros (it provably receives no mass
// inside M1*M2) and reported as degenerate by row_sum_report.
std::pair<Block, Block> build_rs(Int w, const KWeight& k);

// Truncation is a plain cut-off: blocks whose column level falls outside
// [w_min, W_max] are stored but excluded from dense() and row sums, so
// boundary rows show their genuine sub-stochastic mass.
struct TruncatedBlockMatrix {
  Layout layout = Layout::M;
  std::vector<Int> k_values;
  Int w_min = 0;
  Int w_max = 0;
  Int block_size = 0;  // N
  // Indexed by level w - w_min. M: sub=A, diag=B, sup=C; M1: diag=Y,
  // sup=X; M2: diag=S, sub=R. Unused bands stay empty.
  std::vector<Block> sub, diag, sup;

  Int levels() const { return w_max - w_min + 1; }
  DenseMatrix dense() const;
};

TruncatedBlockMatrix build_matrix(Layout which, const KWeight& k, Int w_max);

enum class RowClass { interior, boundary, degenerate };

struct RowSum {
  Int w = 0;
  OmegaIndex r;
  Rational sum;
  RowClass klass = RowClass::interior;
};

// Per scalar row: in-window mass and the row's classification. Interior
// rows must sum to exactly 1; boundary rows are the truncation edge (and,
// for k_n < 0, the genuinely leaking bottom level); degenerate rows are the
// zeroed 0/0 rows of M2.
std::vector<RowSum> row_sum_report(const TruncatedBlockMatrix& matrix);

struct FactorViolation {
  Int w = 0;
  // 'A' for A = Y R, 'B' for B = X R' + Y S, 'C' for C = X S'.
  char identity = 'A';
  Int row = 0, col = 0;
  Rational lhs, rhs;
};

struct FactorReport {
  Int w_min = 0;
  Int w_max = 0;
  int identities_checked = 0;
  std::vector<FactorViolation> violations;

  bool ok() const { return violations.empty(); }
};

// Checks A_w = Y_w R_w, B_w = X_w R_{w+1} + Y_w S_w, C_w = X_w S_{w+1}
// entrywise for max(0, -k_n) <= w < W_max, with exact rational products.
FactorReport check_factorization(const KWeight& k, Int w_max);

enum class TildeKind { M1, M2, M };

// Row of the lattice-level walk matrices at state m:
//   M1: mass a_j²(m) at m + e_j;
//   M2: mass b_j²(m + e_{n+1}) at m - e_j (throws DomainError at the
//       degenerate states m_n = m_{n+1} where the formulas are 0/0);
//   M:  the composed row, organized by the A/B/C-tilde case lists, mass
//       a_i²(m) b_l²(m + e_i) at m + e_i - e_l.
Distribution tilde_row(const StateSignature& m, TildeKind which);

struct EvolveResult {
  std::map<PCoordinate, Rational> distribution;
  Rational mass;     // total remaining weight
  Rational deficit;  // initial mass minus remaining = leaked through cut-off
  bool truncation_warning = false;
};

// initial * M^t on the window [max(0,-k_n), W_max]. Exact; mass can only
// leak through the cut-off, and the deficit reports exactly how much did.
// Sets truncation_warning when the initial support sits within t levels of
// W_max (leakage then becomes possible).
EvolveResult evolve(const std::map<PCoordinate, Rational>& initial, Int t,
                    const KWeight& k, Int w_max);

}  // namespace dualwalk

#include "dualwalk/blocks.hpp"

#include <cassert>
#include <sstream>

#include "dualwalk/coefficients.hpp"

namespace dualwalk {

namespace {

Int level_floor(const KWeight& k) {
  return std::max<Int>(0, -k.values().back());
}

void check_level(Int w, const KWeight& k) {
  if (w < level_floor(k)) {
    std::ostringstream msg;
    msg << "level w = " << w << " below max(0, -k_n) = " << level_floor(k);
    throw DomainError(msg.str());
  }
}

// Omega points plus an index for locating r +/- e_j neighbours.
struct OmegaContext {
  std::vector<OmegaIndex> points;
  std::map<std::vector<Int>, Int> lookup;

  explicit OmegaContext(const KWeight& k) : points(enumerate_omega(k)) {
    for (size_t i = 0; i < points.size(); ++i) {
      lookup.emplace(points[i].r, static_cast<Int>(i));
    }
  }

  Int size() const { return static_cast<Int>(points.size()); }

  Int find(std::vector<Int> r, int j, Int delta) const {
    r[static_cast<size_t>(j) - 1] += delta;
    auto it = lookup.find(r);
    return it == lookup.end() ? -1 : it->second;
  }
};

std::vector<Int> shift_vec(std::vector<Int> m, int i, Int delta) {
  m[static_cast<size_t>(i) - 1] += delta;
  return m;
}

}  // namespace

BlockTriple build_abc(Int w, const KWeight& k) {
  check_level(w, k);
  const int n = k.n();
  const OmegaContext omega(k);
  const Int N = omega.size();
  BlockTriple t{Block::Zero(N, N), Block::Zero(N, N), Block::Zero(N, N)};

  for (Int row = 0; row < N; ++row) {
    const StateSignature m = state_from_wr({w, omega.points[row]}, k);
    const std::vector<Rational> a = a_sq_all(m);

    // Increase e_{n+1}: the A_w diagonal, the B_w sub-band and the i = n+1
    // diagonal term, all with b² at m + e_{n+1}.
    if (a[static_cast<size_t>(n)] != 0) {
      const auto b = b_sq_at_shift(m);
      assert(b.has_value());
      t.A(row, row) = a[static_cast<size_t>(n)] * (*b)[0];
      t.B(row, row) += a[static_cast<size_t>(n)] * (*b)[static_cast<size_t>(n)];
      for (int j = 1; j <= n - 1; ++j) {
        const Int col = omega.find(omega.points[row].r, j, -1);
        if (col >= 0) {
          t.B(row, col) += a[static_cast<size_t>(n)] * (*b)[static_cast<size_t>(j)];
        } else {
          assert((*b)[static_cast<size_t>(j)] == 0);
        }
      }
    }

    // Increase e_{j+1}: the A_w band, the B_w super-band, the i = j+1
    // diagonal term and the B_w mixed bands, with b² at m + e_{j+1}.
    for (int j = 1; j <= n - 1; ++j) {
      if (a[static_cast<size_t>(j)] == 0) {
        continue;
      }
      const std::vector<Rational> b = b_sq_all(m.shifted(j + 1, +1));
      const Int up = omega.find(omega.points[row].r, j, +1);
      assert(up >= 0);
      t.A(row, up) = a[static_cast<size_t>(j)] * b[0];
      t.B(row, up) += a[static_cast<size_t>(j)] * b[static_cast<size_t>(n)];
      t.B(row, row) += a[static_cast<size_t>(j)] * b[static_cast<size_t>(j)];
      for (int i = 1; i <= n - 1; ++i) {
        if (i == j) {
          continue;
        }
        std::vector<Int> target = omega.points[row].r;
        target[static_cast<size_t>(j) - 1] += 1;
        target[static_cast<size_t>(i) - 1] -= 1;
        auto it = omega.lookup.find(target);
        if (it != omega.lookup.end()) {
          t.B(row, it->second) += a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)];
        } else {
          assert(b[static_cast<size_t>(i)] == 0);
        }
      }
    }

    // Increase e_1 (a_1² never vanishes): the C_w diagonal and band and the
    // i = 1 diagonal term, with b² at m + e_1.
    const std::vector<Rational> b = b_sq_all(m.shifted(1, +1));
    t.C(row, row) = a[0] * b[static_cast<size_t>(n)];
    t.B(row, row) += a[0] * b[0];
    for (int j = 1; j <= n - 1; ++j) {
      const Int col = omega.find(omega.points[row].r, j, -1);
      if (col >= 0) {
        t.C(row, col) = a[0] * b[static_cast<size_t>(j)];
      } else {
        assert(b[static_cast<size_t>(j)] == 0);
      }
    }
  }
  return t;
}

std::pair<Block, Block> build_xy(Int w, const KWeight& k) {
  check_level(w, k);
  const int n = k.n();
  const OmegaContext omega(k);
  const Int N = omega.size();
  Block X = Block::Zero(N, N);
  Block Y = Block::Zero(N, N);
  for (Int row = 0; row < N; ++row) {
    const StateSignature m = state_from_wr({w, omega.points[row]}, k);
    X(row, row) = a_sq(m, 1);
    Y(row, row) = a_sq(m, n + 1);
    for (int j = 1; j <= n - 1; ++j) {
      const Rational value = a_sq(m, j + 1);
      const Int col = omega.find(omega.points[row].r, j, +1);
      if (col >= 0) {
        Y(row, col) = value;
      } else {
        assert(value == 0);
      }
    }
  }
  return {std::move(X), std::move(Y)};
}

std::pair<Block, Block> build_rs(Int w, const KWeight& k) {
  check_level(w, k);
  const int n = k.n();
  const OmegaContext omega(k);
  const Int N = omega.size();
  Block R = Block::Zero(N, N);
  Block S = Block::Zero(N, N);
  for (Int row = 0; row < N; ++row) {
    const StateSignature m = state_from_wr({w, omega.points[row]}, k);
    const auto b = b_sq_at_shift(m);
    if (!b.has_value()) {
      continue;  // 0/0 row, emitted as zeros; see row_sum_report
    }
    R(row, row) = (*b)[0];
    S(row, row) = (*b)[static_cast<size_t>(n)];
    for (int j = 1; j <= n - 1; ++j) {
      const Int col = omega.find(omega.points[row].r, j, -1);
      if (col >= 0) {
        S(row, col) = (*b)[static_cast<size_t>(j)];
      } else {
        assert((*b)[static_cast<size_t>(j)] == 0);
      }
    }
  }
  return {std::move(R), std::move(S)};
}

TruncatedBlockMatrix build_matrix(Layout which, const KWeight& k, Int w_max) {
  if (which == Layout::MTildeRowView) {
    throw DomainError(
        "the lattice walk matrix is row-generated on demand; use tilde_row");
  }
  TruncatedBlockMatrix out;
  out.layout = which;
  out.k_values = k.values();
  out.w_min = level_floor(k);
  out.w_max = w_max;
  if (out.w_max < out.w_min) {
    throw DomainError("W_max below max(0, -k_n)");
  }
  out.block_size = static_cast<Int>(enumerate_omega(k).size());
  for (Int w = out.w_min; w <= out.w_max; ++w) {
    switch (which) {
      case Layout::M: {
        BlockTriple t = build_abc(w, k);
        out.sub.push_back(std::move(t.A));
        out.diag.push_back(std::move(t.B));
        out.sup.push_back(std::move(t.C));
        break;
      }
      case Layout::M1: {
        auto [X, Y] = build_xy(w, k);
        out.diag.push_back(std::move(Y));
        out.sup.push_back(std::move(X));
        break;
      }
      case Layout::M2: {
        auto [R, S] = build_rs(w, k);
        out.diag.push_back(std::move(S));
        out.sub.push_back(std::move(R));
        break;
      }
      case Layout::MTildeRowView:
        break;
    }
  }
  return out;
}

DenseMatrix TruncatedBlockMatrix::dense() const {
  const Int L = levels();
  const Int N = block_size;
  DenseMatrix out = DenseMatrix::Zero(L * N, L * N);
  for (Int l = 0; l < L; ++l) {
    if (!diag.empty()) {
      out.block(l * N, l * N, N, N) = diag[static_cast<size_t>(l)];
    }
    if (!sub.empty() && l > 0) {
      out.block(l * N, (l - 1) * N, N, N) = sub[static_cast<size_t>(l)];
    }
    if (!sup.empty() && l + 1 < L) {
      out.block(l * N, (l + 1) * N, N, N) = sup[static_cast<size_t>(l)];
    }
  }
  return out;
}

std::vector<RowSum> row_sum_report(const TruncatedBlockMatrix& matrix) {
  const KWeight k{std::vector<Int>(matrix.k_values)};
  const int n = k.n();
  const OmegaContext omega(k);
  const Int N = matrix.block_size;
  const bool negative_floor = k.values().back() < 0;
  std::vector<RowSum> report;
  for (Int l = 0; l < matrix.levels(); ++l) {
    const Int w = matrix.w_min + l;
    for (Int row = 0; row < N; ++row) {
      RowSum entry;
      entry.w = w;
      entry.r = omega.points[static_cast<size_t>(row)];
      entry.sum = 0;
      if (!matrix.diag.empty()) {
        entry.sum += matrix.diag[static_cast<size_t>(l)].row(row).sum();
      }
      if (!matrix.sub.empty() && l > 0) {
        entry.sum += matrix.sub[static_cast<size_t>(l)].row(row).sum();
      }
      if (!matrix.sup.empty() && l + 1 < matrix.levels()) {
        entry.sum += matrix.sup[static_cast<size_t>(l)].row(row).sum();
      }
      switch (matrix.layout) {
        case Layout::M:
          entry.klass = (w == matrix.w_max || (w == matrix.w_min && negative_floor))
                            ? RowClass::boundary
                            : RowClass::interior;
          break;
        case Layout::M1:
          entry.klass = (w == matrix.w_max) ? RowClass::boundary : RowClass::interior;
          break;
        case Layout::M2: {
          const StateSignature m = state_from_wr({w, entry.r}, k);
          if (m.at1(n) == m.at1(n + 1)) {
            entry.klass = RowClass::degenerate;
          } else if (w == matrix.w_min && negative_floor) {
            entry.klass = RowClass::boundary;
          } else {
            entry.klass = RowClass::interior;
          }
          break;
        }
        case Layout::MTildeRowView:
          break;
      }
      report.push_back(std::move(entry));
    }
  }
  return report;
}

FactorReport check_factorization(const KWeight& k, Int w_max) {
  FactorReport report;
  report.w_min = level_floor(k);
  report.w_max = w_max - 1;
  if (report.w_max < report.w_min) {
    throw DomainError("factorization check needs W_max > max(0, -k_n)");
  }

  auto compare = [&report](Int w, char identity, const Block& lhs,
                           const Block& rhs) {
    ++report.identities_checked;
    for (Int row = 0; row < lhs.rows(); ++row) {
      for (Int col = 0; col < lhs.cols(); ++col) {
        if (lhs(row, col) != rhs(row, col)) {
          report.violations.push_back(
              {w, identity, row, col, lhs(row, col), rhs(row, col)});
        }
      }
    }
  };

  auto [R_next, S_next] = build_rs(report.w_min, k);
  for (Int w = report.w_min; w <= report.w_max; ++w) {
    BlockTriple t = build_abc(w, k);
    auto [X, Y] = build_xy(w, k);
    Block R = std::move(R_next);
    Block S = std::move(S_next);
    std::tie(R_next, S_next) = build_rs(w + 1, k);
    compare(w, 'A', t.A, Y * R);
    compare(w, 'B', t.B, X * R_next + Y * S);
    compare(w, 'C', t.C, X * S_next);
  }
  return report;
}

Distribution tilde_row(const StateSignature& m, TildeKind which) {
  const int n = m.n();
  Distribution out;
  switch (which) {
    case TildeKind::M1: {
      for (int i = 1; i <= n + 1; ++i) {
        const Rational value = a_sq(m, i);
        if (value != 0) {
          out.add(shift_vec(m.m(), i, +1), value);
        }
      }
      break;
    }
    case TildeKind::M2: {
      const auto b = b_sq_at_shift(m);
      if (!b.has_value()) {
        throw DomainError(
            "decrease law undefined at m_n = m_{n+1}: every b² numerator and "
            "the denominator vanish at m + e_{n+1}");
      }
      for (int l = 1; l <= n + 1; ++l) {
        const Rational value = (*b)[static_cast<size_t>(l) - 1];
        if (value != 0) {
          out.add(shift_vec(m.m(), l, -1), value);
        }
      }
      break;
    }
    case TildeKind::M: {
      const std::vector<Rational> a = a_sq_all(m);
      // A-tilde diagonal, B-tilde sub-band and the i = n+1 stay term.
      if (a[static_cast<size_t>(n)] != 0) {
        const auto b = b_sq_at_shift(m);
        assert(b.has_value());
        const std::vector<Int> up = shift_vec(m.m(), n + 1, +1);
        out.add(shift_vec(up, 1, -1), a[static_cast<size_t>(n)] * (*b)[0]);
        out.add(m.m(), a[static_cast<size_t>(n)] * (*b)[static_cast<size_t>(n)]);
        for (int j = 1; j <= n - 1; ++j) {
          out.add(shift_vec(up, j + 1, -1),
                  a[static_cast<size_t>(n)] * (*b)[static_cast<size_t>(j)]);
        }
      }
      // A-tilde band, B-tilde super-band, mixed bands and stay terms.
      for (int j = 1; j <= n - 1; ++j) {
        if (a[static_cast<size_t>(j)] == 0) {
          continue;
        }
        const StateSignature mid = m.shifted(j + 1, +1);
        const std::vector<Rational> b = b_sq_all(mid);
        out.add(shift_vec(mid.m(), 1, -1), a[static_cast<size_t>(j)] * b[0]);
        out.add(shift_vec(mid.m(), n + 1, -1),
                a[static_cast<size_t>(j)] * b[static_cast<size_t>(n)]);
        out.add(m.m(), a[static_cast<size_t>(j)] * b[static_cast<size_t>(j)]);
        for (int i = 1; i <= n - 1; ++i) {
          if (i != j) {
            out.add(shift_vec(mid.m(), i + 1, -1),
                    a[static_cast<size_t>(j)] * b[static_cast<size_t>(i)]);
          }
        }
      }
      // C-tilde diagonal and band and the i = 1 stay term.
      {
        const StateSignature mid = m.shifted(1, +1);
        const std::vector<Rational> b = b_sq_all(mid);
        out.add(shift_vec(mid.m(), n + 1, -1), a[0] * b[static_cast<size_t>(n)]);
        out.add(m.m(), a[0] * b[0]);
        for (int j = 1; j <= n - 1; ++j) {
          out.add(shift_vec(mid.m(), j + 1, -1), a[0] * b[static_cast<size_t>(j)]);
        }
      }
      break;
    }
  }
  return out;
}

EvolveResult evolve(const std::map<PCoordinate, Rational>& initial, Int t,
                    const KWeight& k, Int w_max) {
  if (t < 0) {
    throw DomainError("step count must be non-negative");
  }
  const Int w_min = level_floor(k);
  if (w_max < w_min) {
    throw DomainError("W_max below max(0, -k_n)");
  }
  const OmegaContext omega(k);
  const Int N = omega.size();
  const Int L = w_max - w_min + 1;

  using RowVec = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;
  std::vector<RowVec> rho(static_cast<size_t>(L), RowVec::Zero(N));

  EvolveResult result;
  Rational initial_mass = 0;
  for (const auto& [coord, weight] : initial) {
    if (weight < 0) {
      throw DomainError("negative initial weight");
    }
    state_from_wr(coord, k);  // validates the coordinate
    if (coord.w < w_min || coord.w > w_max) {
      throw DomainError("initial support outside the truncation window");
    }
    const auto it = omega.lookup.find(coord.r.r);
    assert(it != omega.lookup.end());
    rho[static_cast<size_t>(coord.w - w_min)](it->second) += weight;
    initial_mass += weight;
    if (coord.w + t > w_max) {
      result.truncation_warning = true;
    }
  }

  std::vector<BlockTriple> blocks;
  blocks.reserve(static_cast<size_t>(L));
  for (Int w = w_min; w <= w_max; ++w) {
    blocks.push_back(build_abc(w, k));
  }

  std::vector<RowVec> next(static_cast<size_t>(L), RowVec::Zero(N));
  for (Int step = 0; step < t; ++step) {
    for (Int l = 0; l < L; ++l) {
      next[static_cast<size_t>(l)] =
          rho[static_cast<size_t>(l)] * blocks[static_cast<size_t>(l)].B;
      if (l > 0) {
        next[static_cast<size_t>(l)] +=
            rho[static_cast<size_t>(l) - 1] * blocks[static_cast<size_t>(l) - 1].C;
      }
      if (l + 1 < L) {
        next[static_cast<size_t>(l)] +=
            rho[static_cast<size_t>(l) + 1] * blocks[static_cast<size_t>(l) + 1].A;
      }
    }
    rho.swap(next);
  }

  result.mass = 0;
  for (Int l = 0; l < L; ++l) {
    for (Int col = 0; col < N; ++col) {
      const Rational& weight = rho[static_cast<size_t>(l)](col);
      if (weight != 0) {
        result.distribution.emplace(
            PCoordinate{w_min + l, omega.points[static_cast<size_t>(col)]},
            weight);
        result.mass += weight;
      }
    }
  }
  result.deficit = initial_mass - result.mass;
  return result;
}

}  // namespace dualwalk

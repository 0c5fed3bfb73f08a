#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"
#include "dualwalk/urn.hpp"

namespace dualwalk {

// A state drawn as a Young diagram: 2n+1 left-aligned rows of lengths
// (m_1, k_1, m_2, k_2, ..., k_n, m_{n+1}). Interlacing makes the lengths
// weakly decreasing; diagram semantics additionally need m_{n+1} >= 0
// (which forces k_n >= 0).
class YoungState {
 public:
  explicit YoungState(const StateSignature& m);

  const StateSignature& state() const { return state_; }
  int n() const { return state_.n(); }
  std::vector<Int> rows() const;  // the 2n+1 interleaved lengths

  friend bool operator==(const YoungState&, const YoungState&) = default;

 private:
  StateSignature state_;
};

// An elementary diagram move: insert a box into an odd row (row 2i-1, the
// m_i row) or delete one from an even row (row 2i, the k_i row). Under the
// urn correspondence insert <-> c_i and delete <-> d_i.
enum class MoveKind { insert, remove };

struct ElementaryMove {
  MoveKind kind = MoveKind::insert;
  int color_index = 1;  // i in 1..n

  int row() const {
    return kind == MoveKind::insert ? 2 * color_index - 1 : 2 * color_index;
  }

  friend bool operator==(const ElementaryMove&, const ElementaryMove&) = default;
};

Letter to_letter(const ElementaryMove& move);
ElementaryMove to_move(const Letter& letter);

struct WeightedMove {
  ElementaryMove move;
  Int weight = 0;
};

// The experiment E_{k,j} on rows 2k-1..2j: insert into row 2i-1 with
// multiplicity m_i - k_i + 1, delete from row 2i with multiplicity
// k_i - m_{i+1}; one slot is chosen uniformly over this multiset, so the
// weights match the ball counts of urn B_{k,j} exactly. Zero-weight moves
// are listed (they are unreachable slots).
std::vector<WeightedMove> experiment_outcomes(int k_idx, int j,
                                              const YoungState& state);

// One move per experiment, positions bound to the urn order.
using ExperimentTuple = std::vector<ElementaryMove>;

// Map each move to its letter and reuse the urn classifier; malformed
// tuples throw StructureError.
int classify_tuple(const ExperimentTuple& tuple, int n);

// Exact class law of the tuple experiment (product of per-experiment slot
// frequencies, summed per class); equals the urn law and a²(m, j). n <= 4.
std::vector<Rational> class_probabilities(const YoungState& state);

// Tuples whose moves all have at least one slot, per class.
std::vector<Integer> realizable_class_sizes(const YoungState& state);

// Run every experiment in urn order, classify the tuple to j, add one box
// to row 2j-1 (m_j += 1). The k rows never change.
YoungState young_step(const YoungState& state, std::mt19937_64& rng);

// One text line per nonempty row, left-aligned glyphs, newline-terminated.
std::string render(const YoungState& state, std::string_view glyph = "▢");

}  // namespace dualwalk

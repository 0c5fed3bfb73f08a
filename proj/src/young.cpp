#include "dualwalk/young.hpp"

#include <sstream>

#include "dualwalk/random.hpp"

namespace dualwalk {

namespace {

constexpr int kEnumerationCap = 4;

void check_enumeration_cap(int n) {
  if (n > kEnumerationCap) {
    std::ostringstream msg;
    msg << "tuple enumeration is capped at n <= " << kEnumerationCap
        << " (294912 tuples at n = 4); got n = " << n;
    throw ResourceError(msg.str());
  }
}

void check_tuple(const ExperimentTuple& tuple, int n) {
  const auto order = urn_order(n);
  if (tuple.size() != order.size()) {
    std::ostringstream msg;
    msg << "tuple has " << tuple.size() << " moves, expected n(n+1)/2 = "
        << order.size();
    throw StructureError(msg.str());
  }
  for (size_t p = 0; p < tuple.size(); ++p) {
    const auto [k_idx, j] = order[p];
    if (tuple[p].color_index < k_idx || tuple[p].color_index > j) {
      std::ostringstream msg;
      msg << "move on row " << tuple[p].row() << " at position " << p
          << " lies outside experiment E_{" << k_idx << "," << j << "}";
      throw StructureError(msg.str());
    }
  }
}

// Walk the tuple space of one state with an odometer; visit() receives the
// current tuple and its slot-count product (0 when some move has no slot).
template <typename Visit>
void for_each_tuple(const YoungState& state, Visit visit) {
  const int n = state.n();
  check_enumeration_cap(n);
  const auto order = urn_order(n);
  std::vector<std::vector<WeightedMove>> outcomes;
  outcomes.reserve(order.size());
  for (const auto& [k_idx, j] : order) {
    outcomes.push_back(experiment_outcomes(k_idx, j, state));
  }
  ExperimentTuple tuple(order.size());
  std::vector<size_t> pick(order.size(), 0);
  while (true) {
    Integer weight = 1;
    for (size_t p = 0; p < pick.size(); ++p) {
      tuple[p] = outcomes[p][pick[p]].move;
      weight *= Integer(outcomes[p][pick[p]].weight);
    }
    visit(tuple, weight);
    size_t p = pick.size();
    while (p > 0 && ++pick[p - 1] == outcomes[p - 1].size()) {
      pick[p - 1] = 0;
      --p;
    }
    if (p == 0) {
      break;
    }
  }
}

}  // namespace

YoungState::YoungState(const StateSignature& m) : state_(m) {
  if (m.at1(m.n() + 1) < 0) {
    std::ostringstream msg;
    msg << "row lengths must be non-negative: m_" << m.n() + 1 << " = "
        << m.at1(m.n() + 1);
    throw DomainError(msg.str());
  }
}

std::vector<Int> YoungState::rows() const {
  std::vector<Int> lengths;
  lengths.reserve(2 * static_cast<size_t>(n()) + 1);
  for (int i = 1; i <= n(); ++i) {
    lengths.push_back(state_.at1(i));
    lengths.push_back(state_.k().at1(i));
  }
  lengths.push_back(state_.at1(n() + 1));
  return lengths;
}

Letter to_letter(const ElementaryMove& move) {
  return {move.color_index, move.kind == MoveKind::remove};
}

ElementaryMove to_move(const Letter& letter) {
  return {letter.is_d ? MoveKind::remove : MoveKind::insert, letter.index};
}

std::vector<WeightedMove> experiment_outcomes(int k_idx, int j,
                                              const YoungState& state) {
  if (k_idx < 1 || j < k_idx || j > state.n()) {
    throw DomainError("experiment span needs 1 <= k <= j <= n");
  }
  const StateSignature& m = state.state();
  std::vector<WeightedMove> outcomes;
  outcomes.reserve(2 * static_cast<size_t>(j - k_idx + 1));
  for (int i = k_idx; i <= j; ++i) {
    outcomes.push_back({{MoveKind::insert, i}, m.at1(i) - m.k().at1(i) + 1});
    outcomes.push_back({{MoveKind::remove, i}, m.k().at1(i) - m.at1(i + 1)});
  }
  return outcomes;
}

int classify_tuple(const ExperimentTuple& tuple, int n) {
  check_tuple(tuple, n);
  Word word;
  word.reserve(tuple.size());
  for (const ElementaryMove& move : tuple) {
    word.push_back(to_letter(move));
  }
  return classify(word, n);
}

std::vector<Rational> class_probabilities(const YoungState& state) {
  const int n = state.n();
  Integer common = 1;
  for (const auto& [k_idx, j] : urn_order(n)) {
    Integer total = 0;
    for (const WeightedMove& outcome : experiment_outcomes(k_idx, j, state)) {
      total += outcome.weight;
    }
    common *= total;
  }
  std::vector<Integer> mass(static_cast<size_t>(n) + 1, Integer(0));
  for_each_tuple(state, [&](const ExperimentTuple& tuple, const Integer& weight) {
    if (weight != 0) {
      mass[static_cast<size_t>(classify_tuple(tuple, n)) - 1] += weight;
    }
  });
  std::vector<Rational> probabilities;
  probabilities.reserve(mass.size());
  for (const Integer& value : mass) {
    probabilities.emplace_back(value, common);
  }
  return probabilities;
}

std::vector<Integer> realizable_class_sizes(const YoungState& state) {
  const int n = state.n();
  std::vector<Integer> sizes(static_cast<size_t>(n) + 1, Integer(0));
  for_each_tuple(state, [&](const ExperimentTuple& tuple, const Integer& weight) {
    if (weight != 0) {
      sizes[static_cast<size_t>(classify_tuple(tuple, n)) - 1] += 1;
    }
  });
  return sizes;
}

YoungState young_step(const YoungState& state, std::mt19937_64& rng) {
  ExperimentTuple tuple;
  const auto order = urn_order(state.n());
  tuple.reserve(order.size());
  for (const auto& [k_idx, j] : order) {
    const std::vector<WeightedMove> outcomes =
        experiment_outcomes(k_idx, j, state);
    std::vector<Int> weights;
    weights.reserve(outcomes.size());
    for (const WeightedMove& outcome : outcomes) {
      weights.push_back(outcome.weight);
    }
    tuple.push_back(
        outcomes[static_cast<size_t>(draw_weighted(rng, weights))].move);
  }
  const int klass = classify_tuple(tuple, state.n());
  return YoungState(state.state().shifted(klass, +1));
}

std::string render(const YoungState& state, std::string_view glyph) {
  std::string out;
  for (Int length : state.rows()) {
    if (length <= 0) {
      continue;
    }
    for (Int b = 0; b < length; ++b) {
      out += glyph;
    }
    out += '\n';
  }
  return out;
}

}  // namespace dualwalk

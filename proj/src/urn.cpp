#include "dualwalk/urn.hpp"

#include <numeric>
#include <sstream>

#include "dualwalk/random.hpp"

namespace dualwalk {

namespace {

constexpr int kEnumerationCap = 4;

void check_n(int n) {
  if (n < 1) {
    throw DomainError("n must be at least 1");
  }
}

void check_enumeration_cap(int n) {
  check_n(n);
  if (n > kEnumerationCap) {
    std::ostringstream msg;
    msg << "enumeration is capped at n <= " << kEnumerationCap
        << " (the sample space already holds 294912 words at n = 4); got n = "
        << n;
    throw ResourceError(msg.str());
  }
}

void check_word(const Word& word, int n) {
  const auto order = urn_order(n);
  if (word.size() != order.size()) {
    std::ostringstream msg;
    msg << "word has " << word.size() << " letters, expected n(n+1)/2 = "
        << order.size();
    throw StructureError(msg.str());
  }
  for (size_t p = 0; p < word.size(); ++p) {
    const auto [k_idx, j] = order[p];
    if (word[p].index < k_idx || word[p].index > j) {
      std::ostringstream msg;
      msg << "letter " << to_string(word[p]) << " at position " << p
          << " does not belong to urn B_{" << k_idx << "," << j << "}";
      throw StructureError(msg.str());
    }
  }
}

}  // namespace

std::string to_string(const Letter& letter) {
  return (letter.is_d ? "d" : "c") + std::to_string(letter.index);
}

std::string to_string(const Word& word) {
  std::string out;
  for (size_t p = 0; p < word.size(); ++p) {
    if (p > 0) {
      out += ',';
    }
    out += to_string(word[p]);
  }
  return out;
}

std::vector<std::pair<int, int>> urn_order(int n) {
  check_n(n);
  std::vector<std::pair<int, int>> order;
  order.reserve(static_cast<size_t>(n) * (n + 1) / 2);
  for (int j = 1; j <= n; ++j) {
    for (int k_idx = j; k_idx >= 1; --k_idx) {
      order.emplace_back(k_idx, j);
    }
  }
  return order;
}

std::vector<Letter> urn_letters(int k_idx, int j) {
  if (k_idx < 1 || j < k_idx) {
    throw DomainError("urn span needs 1 <= k <= j");
  }
  std::vector<Letter> letters;
  letters.reserve(2 * static_cast<size_t>(j - k_idx + 1));
  for (int i = k_idx; i <= j; ++i) {
    letters.push_back({i, false});
    letters.push_back({i, true});
  }
  return letters;
}

Int letter_count(const StateSignature& m, const Letter& letter) {
  const int i = letter.index;
  if (i < 1 || i > m.n()) {
    throw DomainError("letter index outside 1..n");
  }
  return letter.is_d ? m.k().at1(i) - m.at1(i + 1)
                     : m.at1(i) - m.k().at1(i) + 1;
}

Int urn_total(const StateSignature& m, int k_idx, int j) {
  if (k_idx < 1 || j < k_idx || j > m.n()) {
    throw DomainError("urn span needs 1 <= k <= j <= n");
  }
  return m.at1(k_idx) - m.at1(j + 1) + (j - k_idx + 1);
}

std::vector<Word> enumerate_words(int n) {
  check_enumeration_cap(n);
  std::vector<Word> words{{}};
  for (const auto& [k_idx, j] : urn_order(n)) {
    const std::vector<Letter> letters = urn_letters(k_idx, j);
    std::vector<Word> extended;
    extended.reserve(words.size() * letters.size());
    for (const Word& word : words) {
      for (const Letter& letter : letters) {
        Word next = word;
        next.push_back(letter);
        extended.push_back(std::move(next));
      }
    }
    words = std::move(extended);
  }
  return words;
}

int classify(const Word& word, int n) {
  check_word(word, n);
  // Iterative form of the recursion: fold in one block of n urns at a time.
  int klass = word[0].is_d ? 2 : 1;
  for (int nn = 2; nn <= n; ++nn) {
    const size_t block_start = static_cast<size_t>(nn) * (nn - 1) / 2;
    // The block holds B_{nn,nn}, ..., B_{1,nn}; B_{klass,nn} sits at
    // offset nn - klass. A prefix promoted to class nn+1 cannot happen
    // here: klass <= nn after the previous block.
    const Letter& probe = word[block_start + static_cast<size_t>(nn - klass)];
    if (probe.is_d && probe.index == nn) {
      klass = nn + 1;
    }
  }
  return klass;
}

std::vector<Integer> class_cardinalities_recursive(int n) {
  check_n(n);
  std::vector<Integer> card{1, 1};  // n = 1: one word per class
  for (int nn = 2; nn <= n; ++nn) {
    // Appending the block B_{nn,nn}, ..., B_{1,nn} multiplies the space by
    // 2(nn-k+1) per urn; class j survives when B_{j,nn} avoids its single
    // d_{nn} letter, and every d_{nn} hit lands in the new top class.
    std::vector<Integer> sizes(static_cast<size_t>(nn));
    Integer all = 1;
    for (int k_idx = 1; k_idx <= nn; ++k_idx) {
      sizes[static_cast<size_t>(k_idx) - 1] = 2 * (nn - k_idx + 1);
      all *= sizes[static_cast<size_t>(k_idx) - 1];
    }
    std::vector<Integer> next(static_cast<size_t>(nn) + 1);
    for (int j = 1; j <= nn; ++j) {
      const Integer others = all / sizes[static_cast<size_t>(j) - 1];
      next[static_cast<size_t>(j) - 1] =
          card[static_cast<size_t>(j) - 1] * (2 * (nn - j) + 1) * others;
      next[static_cast<size_t>(nn)] +=
          card[static_cast<size_t>(j) - 1] * others;
    }
    card = std::move(next);
  }
  return card;
}

std::vector<Integer> class_cardinalities_enumerated(int n) {
  std::vector<Integer> card(static_cast<size_t>(n) + 1, Integer(0));
  for (const Word& word : enumerate_words(n)) {
    card[static_cast<size_t>(classify(word, n)) - 1] += 1;
  }
  return card;
}

Rational word_probability(const Word& word, const StateSignature& m) {
  const int n = m.n();
  check_word(word, n);
  const auto order = urn_order(n);
  Rational p = 1;
  for (size_t pos = 0; pos < word.size(); ++pos) {
    const auto [k_idx, j] = order[pos];
    p *= Rational(letter_count(m, word[pos]), urn_total(m, k_idx, j));
  }
  return p;
}

std::vector<Rational> class_probabilities(const StateSignature& m) {
  const int n = m.n();
  const auto order = urn_order(n);
  Integer common = 1;
  for (const auto& [k_idx, j] : order) {
    common *= Integer(urn_total(m, k_idx, j));
  }
  std::vector<Integer> mass(static_cast<size_t>(n) + 1, Integer(0));
  for (const Word& word : enumerate_words(n)) {
    Integer numerator = 1;
    for (const Letter& letter : word) {
      numerator *= Integer(letter_count(m, letter));
      if (numerator == 0) {
        break;
      }
    }
    if (numerator != 0) {
      mass[static_cast<size_t>(classify(word, n)) - 1] += numerator;
    }
  }
  std::vector<Rational> probabilities;
  probabilities.reserve(mass.size());
  for (const Integer& value : mass) {
    probabilities.emplace_back(value, common);
  }
  return probabilities;
}

std::vector<Integer> realizable_class_sizes(const StateSignature& m) {
  const int n = m.n();
  std::vector<Integer> sizes(static_cast<size_t>(n) + 1, Integer(0));
  for (const Word& word : enumerate_words(n)) {
    bool realizable = true;
    for (const Letter& letter : word) {
      if (letter_count(m, letter) == 0) {
        realizable = false;
        break;
      }
    }
    if (realizable) {
      sizes[static_cast<size_t>(classify(word, n)) - 1] += 1;
    }
  }
  return sizes;
}

Word sample_word(const StateSignature& m, std::mt19937_64& rng) {
  Word word;
  const auto order = urn_order(m.n());
  word.reserve(order.size());
  for (const auto& [k_idx, j] : order) {
    const std::vector<Letter> letters = urn_letters(k_idx, j);
    std::vector<Int> weights;
    weights.reserve(letters.size());
    for (const Letter& letter : letters) {
      weights.push_back(letter_count(m, letter));
    }
    word.push_back(letters[static_cast<size_t>(draw_weighted(rng, weights))]);
  }
  return word;
}

StateSignature urn_step(const StateSignature& m, std::mt19937_64& rng) {
  return m.shifted(classify(sample_word(m, rng), m.n()), +1);
}

}  // namespace dualwalk

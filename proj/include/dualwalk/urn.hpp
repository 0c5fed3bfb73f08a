#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dualwalk/rational.hpp"
#include "dualwalk/state.hpp"

namespace dualwalk {

// A letter type c_i or d_i. Ball counts live in the state, not the letter:
// c_i holds m_i - k_i + 1 balls, d_i holds k_i - m_{i+1}. Letters with zero
// balls still exist (they carry probability 0), so sample-space counts do
// not depend on the state.
struct Letter {
  int index = 1;  // i in 1..n
  bool is_d = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

std::string to_string(const Letter& letter);  // "c1", "d2", ...

// One letter per urn, positions bound to the canonical urn order.
using Word = std::vector<Letter>;

std::string to_string(const Word& word);  // comma-separated, "c1,c2,d2"

// Canonical order of the urns B_{k,j}: sorted by j, and within equal j the
// lower index descends from j to 1 — (1,1), (2,2), (1,2), (3,3), (2,3),
// (1,3), ...; n(n+1)/2 urns in total.
std::vector<std::pair<int, int>> urn_order(int n);

// Letters of the compound urn B_{k,j} = B_k ∪ ... ∪ B_j, in the order
// c_k, d_k, c_{k+1}, d_{k+1}, ..., c_j, d_j (2(j-k+1) letter types).
std::vector<Letter> urn_letters(int k_idx, int j);

Int letter_count(const StateSignature& m, const Letter& letter);

// Total ball count of B_{k,j}: m_k - m_{j+1} + (j - k + 1), positive for
// every valid state.
Int urn_total(const StateSignature& m, int k_idx, int j);

// The full sample space: prod over urns of 2(j-k+1) words (16, 768, 294912
// for n = 2, 3, 4). Capped at n <= 4; beyond that a ResourceError names
// the cap.
std::vector<Word> enumerate_words(int n);

// Class in 1..n+1. Base n=1: c_1 -> 1, d_1 -> 2. Step: classify the prefix
// to i, inspect the letter drawn from B_{i,n} (offset n-i inside the last
// block of n urns): d_n promotes to class n+1, anything else keeps i.
// Malformed words (wrong length, letter index outside its urn's span)
// throw StructureError.
int classify(const Word& word, int n);

// |S_{j,n+1}| for j = 1..n+1, by the cardinality recursion (any n)...
std::vector<Integer> class_cardinalities_recursive(int n);
// ...and independently by enumerating and classifying every word (n <= 4).
std::vector<Integer> class_cardinalities_enumerated(int n);

// Product over positions of count(letter)/total(urn); zero-ball letters
// make it 0. Sums to 1 over the sample space.
Rational word_probability(const Word& word, const StateSignature& m);

// Exact class law: sum of word probabilities per class, j = 1..n+1. Equals
// the increase coefficients a²(m, j); n <= 4.
std::vector<Rational> class_probabilities(const StateSignature& m);

// How many words per class have every letter backed by at least one ball;
// degenerate states shrink this below |S_{j,n+1}|.
std::vector<Integer> realizable_class_sizes(const StateSignature& m);

// One ball per urn, independently, with ball-count weights; the draw runs
// on an exact integer wheel.
Word sample_word(const StateSignature& m, std::mt19937_64& rng);

// Sample a word, classify it to j, move to m + e_j. Urn contents are
// recomputed from the new state rather than patched ball by ball.
StateSignature urn_step(const StateSignature& m, std::mt19937_64& rng);

}  // namespace dualwalk

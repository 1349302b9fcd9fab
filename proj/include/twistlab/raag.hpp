#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace twistlab {

/// Commutation graph of a right-angled Artin group: an edge means the two
/// generators commute.
class CommutationGraph {
 public:
  CommutationGraph() = default;
  explicit CommutationGraph(std::vector<std::string> labels);

  std::size_t add_vertex(std::string label);
  void add_edge(std::size_t a, std::size_t b);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  std::size_t index_of(const std::string& label) const;

  /// True iff a != b and {a, b} is an edge.
  bool commute(std::size_t a, std::size_t b) const;
  std::size_t edge_count() const;
  /// Sorted list of edges (a < b).
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  static CommutationGraph complete(std::size_t n);
  static CommutationGraph edgeless(std::size_t n);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> adj_;
};

struct Syllable {
  std::size_t vertex;
  std::int64_t exponent;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Element of H(A) written as syllables w_{s_1}^{n_1}, ..., w_{s_l}^{n_l} in the order
/// they act: the first syllable acts first, the last one (the "final" letter) acts
/// last. Adjacent syllables on one vertex are merged and zero exponents dropped.
class RaagWord {
 public:
  RaagWord() = default;
  explicit RaagWord(std::vector<Syllable> syllables);

  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t size() const { return syllables_.size(); }
  bool empty() const { return syllables_.empty(); }
  /// Sum of |exponent|.
  std::int64_t letter_length() const;

  /// Apply this word, then `next`.
  RaagWord then(const RaagWord& next) const;
  RaagWord inverse() const;

  std::string to_string(const CommutationGraph& g) const;

  friend bool operator==(const RaagWord&, const RaagWord&) = default;

 private:
  std::vector<Syllable> syllables_;
};

/// Same-vertex syllables are always separated by a syllable that does not commute
/// with them.
bool is_m_reduced(const RaagWord& w, const CommutationGraph& g);

/// Merges same-vertex syllables across commuting stretches until none remain.
RaagWord m_reduce(const RaagWord& w, const CommutationGraph& g);

bool is_identity(const RaagWord& w, const CommutationGraph& g);

/// Whether a syllable on s can be shuffled to the final position. Requires an
/// M-reduced word.
bool ends_in(const RaagWord& w, std::size_t s, const CommutationGraph& g);

bool words_equal(const RaagWord& a, const RaagWord& b, const CommutationGraph& g);

}  // namespace twistlab

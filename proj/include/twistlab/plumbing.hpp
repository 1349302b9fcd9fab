#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "twistlab/raag.hpp"

namespace twistlab {

/// Marked point p_s^i on the distinguished boundary s^+ of the annulus around s.
/// Index 0 is the base point; intersection points are 1..d(s).
struct PointRef {
  std::size_t curve;
  std::size_t index;
  friend bool operator==(const PointRef&, const PointRef&) = default;
};

/// One intersection point, seen as p_s^i on s^+ and p_t^j on t^+. `eps_first` is
/// eps(s, t; p) and `eps_second` is eps(t, s; p).
struct Crossing {
  PointRef first;
  PointRef second;
  int eps_first = 1;
  int eps_second = 1;
};

/// Combinatorial model of the plumbed neighbourhood F(A) of a curve system.
class PlumbingDiagram {
 public:
  struct Curve {
    std::string label;
    std::size_t points = 0;              // d(s)
    std::optional<std::int64_t> power;   // per-curve twist exponent D(s)
  };

  /// Where a marked point leads: the crossing, the other curve and its index there,
  /// and eps(this curve, other curve; p).
  struct Partner {
    std::size_t crossing;
    std::size_t curve;
    std::size_t index;
    int eps;
  };

  std::size_t add_curve(std::string label, std::size_t points,
                        std::optional<std::int64_t> power = std::nullopt);
  void add_crossing(PointRef a, PointRef b, int eps_ab, int eps_ba);
  void set_power(std::size_t curve, std::optional<std::int64_t> power);

  const std::vector<Curve>& curves() const { return curves_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  std::size_t curve_count() const { return curves_.size(); }
  std::size_t index_of(const std::string& label) const;

  /// Number of crossings between s and t (s != t); 0 for s == t.
  std::size_t intersection(std::size_t s, std::size_t t) const;
  /// First crossing recorded at p_s^i, if any.
  std::optional<Partner> partner(std::size_t curve, std::size_t index) const;

  /// Chain c_1 - c_2 - ... - c_n, consecutive curves meeting once.
  static PlumbingDiagram chain(std::size_t n, std::size_t first_label = 1);
  /// Chain c_1..c_n plus c_0 meeting c_4 once (the E-type pattern).
  static PlumbingDiagram humphries(std::size_t n);
  /// Random connected diagram: a random spanning tree plus extra crossings, random
  /// signs and random point orders.
  static PlumbingDiagram random_connected(std::size_t curves, std::size_t extra_crossings,
                                          std::uint64_t seed);

  friend bool operator==(const PlumbingDiagram& a, const PlumbingDiagram& b);

 private:
  std::vector<Curve> curves_;
  std::vector<Crossing> crossings_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool connected = false;
  std::vector<std::vector<std::size_t>> components;

  bool valid() const { return violations.empty(); }
};

ValidationReport validate(const PlumbingDiagram& diagram);

/// Vertices are the curves; an edge joins two curves with no crossings.
CommutationGraph graph_from_curves(const PlumbingDiagram& diagram);

// ---------------------------------------------------------------------------
// Free groupoid pi_1(F(A), S) on elementary loops and admissible arcs.

enum class GeneratorKind { kLoop, kArc };

struct GroupoidGenerator {
  GeneratorKind kind;
  std::size_t curve;
  std::size_t arc = 0;  // arc i runs p_s^i -> p_s^{i+1}
  std::size_t source;
  std::size_t target;
};

struct Letter {
  std::uint32_t gen;
  std::int8_t dir;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Path in the groupoid from object `source` to object `target`.
struct GroupoidWord {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Letter> letters;

  std::size_t length() const { return letters.size(); }
  friend bool operator==(const GroupoidWord&, const GroupoidWord&) = default;
};

class Groupoid {
 public:
  /// Throws std::invalid_argument if the diagram has violations.
  explicit Groupoid(PlumbingDiagram diagram);

  const PlumbingDiagram& diagram() const { return diagram_; }
  std::size_t object_count() const { return object_count_; }
  std::size_t generator_count() const { return gens_.size(); }
  const GroupoidGenerator& generator(std::size_t g) const { return gens_.at(g); }

  std::size_t loop(std::size_t curve) const { return curve; }
  std::size_t arc(std::size_t curve, std::size_t i) const;
  /// Object of p_s^i; intersection points are shared between their two curves.
  std::size_t point(std::size_t curve, std::size_t index) const;
  std::size_t base_point(std::size_t curve) const { return curve; }

  /// Crossing at intersection point p_s^i, i >= 1.
  const PlumbingDiagram::Partner& partner(std::size_t curve, std::size_t index) const;

  std::size_t letter_source(Letter l) const;
  std::size_t letter_target(Letter l) const;

  GroupoidWord identity(std::size_t object) const { return {object, object, {}}; }
  GroupoidWord word(std::size_t gen, int power = 1) const;

  std::string to_string(const GroupoidWord& w) const;

 private:
  PlumbingDiagram diagram_;
  std::size_t object_count_ = 0;
  std::vector<GroupoidGenerator> gens_;
  std::vector<std::size_t> arc_offset_;
  std::vector<std::vector<std::size_t>> point_object_;
  std::vector<std::vector<PlumbingDiagram::Partner>> partners_;  // [s][i - 1]
};

/// Composability check and free reduction; throws on non-composable input.
GroupoidWord free_reduce(const Groupoid& g, const GroupoidWord& w);
/// Reduced u * v (u first). Throws if target(u) != source(v).
GroupoidWord compose(const Groupoid& g, const GroupoidWord& u, const GroupoidWord& v);
GroupoidWord inverse(const GroupoidWord& w);
GroupoidWord power(const Groupoid& g, const GroupoidWord& loop, std::int64_t k);

/// Arc chain p_t^0 -> p_t^j, then alpha_t, then the chain back: a loop at p_t^j.
GroupoidWord loop_conjugate(const Groupoid& g, std::size_t t, std::size_t j);

/// Image of one generator under T_t^m.
GroupoidWord twist_generator(const Groupoid& g, std::size_t t, std::int64_t m, std::size_t gen);

/// Automorphism of the groupoid given by generator images.
class GroupoidAutomorphism {
 public:
  static GroupoidAutomorphism identity(const Groupoid& g);
  static GroupoidAutomorphism twist(const Groupoid& g, std::size_t t, std::int64_t m);

  const GroupoidWord& image(std::size_t gen) const { return images_.at(gen); }
  /// Throws std::length_error if the result would exceed `max_letters`.
  GroupoidWord apply(const Groupoid& g, const GroupoidWord& w,
                     std::size_t max_letters = kDefaultMaxLetters) const;

  static constexpr std::size_t kDefaultMaxLetters = std::size_t{1} << 24;

 private:
  std::vector<GroupoidWord> images_;
};

/// Per-curve exponents: syllable w_s^n acts as T_s^{powers[s] * n}.
std::vector<std::int64_t> uniform_powers(const PlumbingDiagram& d, std::int64_t power);
/// Uses each curve's own power, falling back to `fallback`.
std::vector<std::int64_t> diagram_powers(const PlumbingDiagram& d, std::int64_t fallback);

/// Applies the syllables of w in order (first syllable first), reducing after each step.
GroupoidWord act(const Groupoid& g, const RaagWord& w, const GroupoidWord& x,
                 const std::vector<std::int64_t>& powers,
                 std::size_t max_letters = GroupoidAutomorphism::kDefaultMaxLetters);
GroupoidWord act(const Groupoid& g, const RaagWord& w, const GroupoidWord& x, std::int64_t power);

struct LoopSyllable {
  std::size_t curve;
  std::int64_t exponent;
  friend bool operator==(const LoopSyllable&, const LoopSyllable&) = default;
};

/// mu_0 alpha_{s_1}^{k_1} mu_1 ... alpha_{s_m}^{k_m} mu_m, mu_i arc-only words.
struct SyllableDecomposition {
  std::vector<GroupoidWord> arcs;  // m + 1 entries
  std::vector<LoopSyllable> loops;
};

SyllableDecomposition decompose(const Groupoid& g, const GroupoidWord& x);
GroupoidWord reassemble(const Groupoid& g, const SyllableDecomposition& d);

bool has_square(const Groupoid& g, const GroupoidWord& x, std::size_t s);

struct TypeResult {
  bool matches = false;
  GroupoidWord residual;  // mu_0 mu_1 ... mu_m
};

/// Whether every loop syllable is on t with exponent a non-zero multiple of p.
TypeResult is_type(const Groupoid& g, const GroupoidWord& x, std::size_t t, std::int64_t p);

// ---------------------------------------------------------------------------
// Randomized certificate drivers.

/// Random freely reduced path of up to `max_len` letters starting at a random object.
GroupoidWord random_groupoid_word(const Groupoid& g, std::size_t max_len, std::mt19937_64& rng);

/// Random non-identity M-reduced word with at most `max_syllables` syllables and
/// exponents in {-2, -1, 1, 2}.
RaagWord random_m_reduced_word(const CommutationGraph& graph, std::size_t max_syllables,
                               std::mt19937_64& rng);

/// Generator for trial `index` of a run seeded with `seed`; independent of how
/// trials are scheduled.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Groupoid homomorphism into SL(2, F_p) (p = 2^31 - 1): arcs of a spanning forest map to
/// the identity and every other generator to a random matrix. Equal images never
/// certify equality; different images certify that two paths differ.
class LinearShadow {
 public:
  using Mat = std::array<std::uint64_t, 4>;
  static constexpr std::uint64_t kPrime = 2147483647ULL;

  LinearShadow(const Groupoid& g, std::uint64_t seed);

  const Mat& generator_image(std::size_t gen) const { return images_.at(gen); }
  Mat evaluate(const GroupoidWord& w) const;

  /// Images of Phi(e) for every generator e, where Phi applies the syllables of w
  /// first to last; no words are expanded.
  std::vector<Mat> pull_back(const Groupoid& g, const RaagWord& w,
                             const std::vector<std::int64_t>& powers) const;

  static Mat multiply(const Mat& a, const Mat& b);
  static Mat invert(const Mat& a);
  static constexpr Mat kIdentity{1, 0, 0, 1};

 private:
  std::vector<Mat> images_;
  std::vector<Mat> inverses_;
};

struct FaithfulnessCounterexample {
  std::string word;
  std::string curve;
  std::string reason;
};

struct FaithfulnessReport {
  std::size_t trials = 0;
  std::size_t certified_by_shadow = 0;
  std::size_t certified_exactly = 0;
  std::size_t inconclusive = 0;
  std::vector<FaithfulnessCounterexample> counterexamples;

  bool passed() const { return counterexamples.empty() && inconclusive == 0; }
};

/// For random non-identity M-reduced words w: choose a final letter s of w and t
/// crossing s, and certify w(alpha_t) != alpha_t. Powers come from the diagram's
/// curve exponents where given, else `power`; all must satisfy |D| >= 2.
FaithfulnessReport faithfulness_check(const PlumbingDiagram& diagram, std::int64_t power,
                                      std::size_t trials, std::size_t max_len, std::uint64_t seed);

struct SquarePropagationReport {
  std::size_t trials = 0;
  std::size_t squares_observed = 0;
  std::vector<std::string> violations;
  bool passed() const { return violations.empty(); }
};

/// For random x without squares in alpha_t and |m| >= 2: every square of T_t^m(x) in
/// alpha_s has s = t, or i(s,t) = 0 and x already had a square in alpha_s.
SquarePropagationReport square_propagation_check(const PlumbingDiagram& diagram, std::int64_t power,
                                                 std::size_t trials, std::uint64_t seed);

struct CommutationReport {
  std::size_t pairs = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// For every disjoint pair (a, b): T_a^D T_b^D and T_b^D T_a^D agree on random paths.
CommutationReport commutation_soundness_check(const PlumbingDiagram& diagram, std::int64_t power,
                                              std::size_t samples_per_pair, std::uint64_t seed);

}  // namespace twistlab

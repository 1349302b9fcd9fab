#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistlab {

/// Word in a finitely presented group: letters are +-(i + 1) for generator i.
using Word = std::vector<int>;

struct Presentation {
  std::size_t generators = 0;
  std::vector<Word> relators;

  /// Throws std::invalid_argument on a zero letter or a letter out of range.
  void check() const;
  std::string to_string() const;
};

inline constexpr std::size_t kDefaultCosetCap = 1'000'000;

enum class EnumerationStatus { kComplete, kExceeded };

/// Coset table of a subgroup. Column 2i is generator i, column 2i + 1 its inverse;
/// coset 0 is the subgroup itself. Entries are -1 while undefined.
struct CosetTable {
  EnumerationStatus status = EnumerationStatus::kExceeded;
  std::size_t cap = 0;
  std::size_t generators = 0;
  std::size_t cosets = 0;          // rows (the index when complete)
  std::size_t total_defined = 0;   // cosets ever defined, dead ones included
  std::vector<std::int32_t> table;

  bool complete() const { return status == EnumerationStatus::kComplete; }
  std::int32_t at(std::size_t coset, std::size_t column) const { return table[coset * 2 * generators + column]; }
  /// Image of a coset under a word; -1 if some step is undefined.
  std::int64_t trace(std::size_t coset, const Word& w) const;
  /// Full check: total, mutually inverse columns, relators close from every coset and
  /// subgroup generators fix coset 0.
  bool verify(const Presentation& p, const std::vector<Word>& subgroup) const;
};

/// Relator-tracing (HLT) enumeration with deduction processing, lookahead and
/// compaction when full. `cap` bounds the number of cosets alive at once.
CosetTable todd_coxeter(const Presentation& p, const std::vector<Word>& subgroup,
                        std::size_t cap = kDefaultCosetCap);

/// B_n with every sigma_i^D added: generators sigma_1..sigma_{n-1}.
Presentation braid_power_presentation(std::size_t n, std::int64_t power);

/// Order of the image of generator `gen` in the abelianization; nullopt if infinite.
std::optional<std::uint64_t> abelianized_generator_order(const Presentation& p, std::size_t gen);

struct QuotientOrder {
  std::optional<std::uint64_t> order;  // nullopt: exceeded
  std::string method;                  // "direct", "cyclic-subgroup" or "exceeded"
  std::size_t direct_cosets = 0;       // live cosets at the end of the direct run
  std::optional<std::uint64_t> subgroup_index;
  std::optional<std::uint64_t> generator_order;
};

/// Order of the group, enumerating the trivial subgroup first and then, if that
/// exceeds the cap, the cosets of <x_gen> times the certified order of x_gen.
QuotientOrder group_order(const Presentation& p, std::size_t cap = kDefaultCosetCap, std::size_t gen = 0);

/// Order of B_n / <<sigma_i^D>>.
QuotientOrder quotient_order(std::size_t n, std::int64_t power, std::size_t cap = kDefaultCosetCap);

/// (D - 2)(n - 2) < 4.
bool finiteness_criterion(std::int64_t n, std::int64_t power);

/// Known order of B_n / <<sigma_i^D>> when the quotient is finite.
std::optional<std::uint64_t> expected_quotient_order(std::size_t n, std::int64_t power);

struct CoxeterCell {
  std::size_t n = 0;
  std::int64_t power = 0;
  bool finite = false;
  std::optional<std::uint64_t> expected;
  QuotientOrder result;
  double seconds = 0;
  bool passed = false;
};

struct CoxeterReport {
  std::size_t cap = 0;
  std::vector<CoxeterCell> cells;
  bool passed() const;
};

CoxeterCell coxeter_cell(std::size_t n, std::int64_t power, std::size_t cap = kDefaultCosetCap);

/// Every cell 2 <= n <= 6, 2 <= D <= 6.
CoxeterReport coxeter_table_verify(std::size_t cap = kDefaultCosetCap);

}  // namespace twistlab

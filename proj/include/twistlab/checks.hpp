#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistlab/cosets.hpp"
#include "twistlab/formats.hpp"
#include "twistlab/plumbing.hpp"
#include "twistlab/sympgroup.hpp"

namespace twistlab {

inline constexpr int kReportSchemaVersion = 1;

enum class Verdict { kPass, kFail, kExceeded, kRecorded };

std::string to_string(Verdict v);

/// One check outcome. `claim` is a short statement of what is being checked.
struct Record {
  std::string name;
  std::string claim;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json expected;
  nlohmann::json observed;
  Verdict verdict = Verdict::kRecorded;
  double seconds = 0;
};

struct Report {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<Record> records;

  std::size_t count(Verdict v) const;
  bool ok() const { return count(Verdict::kFail) == 0; }
  /// Records sorted by name; wall-clock data only under "timing".
  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_text() const;
};

struct ChebyshevOptions {
  std::uint64_t max_n = 64;
  std::uint64_t max_d = 200;
  std::vector<std::int64_t> moduli{35};
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
};

Report run_chebyshev(const ChebyshevOptions& opt);

/// Names accepted by SymplecticOptions::checks.
const std::vector<std::string>& symplectic_check_names();

struct SymplecticOptions {
  int genus = 2;
  std::int64_t level = 2;
  std::vector<std::string> checks;  // empty: all
  std::size_t cap = kDefaultClosureCap;
  std::uint64_t seed = 1;
};

Report run_symplectic(const SymplecticOptions& opt);

struct CoxeterOptions {
  std::size_t cap = kDefaultCosetCap;
  std::vector<std::pair<std::size_t, std::int64_t>> cells;  // empty: the full 2..6 x 2..6 table
};

Report run_coxeter(const CoxeterOptions& opt);

/// Order of a presented group, or the index of the listed subgroup.
Report run_presentation(const PresentationFile& p, const std::string& source, std::size_t cap);

struct RaagOptions {
  std::int64_t power = 2;  // used for curves without their own power
  std::size_t trials = 1000;
  std::size_t max_len = 12;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument if some curve would get |D| < 2.
Report run_raag(const PlumbingDiagram& diagram, const std::string& source, const RaagOptions& opt);

Report run_diagram_validate(const PlumbingDiagram& diagram, const std::string& source);

}  // namespace twistlab

// twistlab command-line driver: runs a check suite and emits a text or JSON report.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twistlab/checks.hpp"

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::optional<std::size_t> cap;
  std::string out;
  std::string format = "text";
  bool timing = true;
};

std::optional<std::size_t> env_cap() {
  const char* v = std::getenv("TWISTLAB_CAP");
  if (!v || !*v) return std::nullopt;
  try {
    std::size_t used = 0;
    auto n = std::stoull(v, &used);
    if (used != std::string(v).size() || n == 0) throw std::invalid_argument(v);
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("TWISTLAB_CAP must be a positive integer, got '") + v + "'");
  }
}

std::size_t cap_or(const Globals& g, std::size_t fallback) {
  if (g.cap) return *g.cap;
  return env_cap().value_or(fallback);
}

int emit(const twistlab::Report& rep, const Globals& g) {
  std::string body = g.format == "json" ? rep.to_json(g.timing).dump(2) + "\n" : rep.to_text();
  if (g.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + g.out + "'");
    f << body;
    std::cout << rep.to_text();
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace twistlab;
  CLI::App app{"twistlab: computational checks on twist power subgroups"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_option("--cap", g.cap, "element/coset cap (default from TWISTLAB_CAP, else per command)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the report to this file");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("!--no-timing", g.timing, "omit wall-clock data from JSON output");

  ChebyshevOptions cheb;
  auto* c_cheb = app.add_subcommand("chebyshev", "Chebyshev polynomial identities and value tables");
  c_cheb->add_option("--max-n", cheb.max_n, "largest n for the closed-form comparison");
  c_cheb->add_option("--max-d", cheb.max_d, "largest D for the value tables");
  c_cheb->add_option("--moduli", cheb.moduli, "moduli for the SL(2) power identity trials")->delimiter(',');
  c_cheb->add_option("--trials", cheb.trials, "random matrices per modulus");

  SymplecticOptions symp;
  auto* c_symp = app.add_subcommand("symplectic", "finite symplectic group computations");
  c_symp->add_option("--g", symp.genus, "genus")->check(CLI::PositiveNumber);
  c_symp->add_option("--D", symp.level, "level / power")->check(CLI::PositiveNumber);
  c_symp->add_option("--check", symp.checks, "subset of checks to run")
      ->check(CLI::IsMember(symplectic_check_names()));

  CoxeterOptions cox;
  std::vector<std::vector<std::int64_t>> cells;
  std::string presentation;
  auto* c_cox = app.add_subcommand("coxeter", "braid group power quotients by coset enumeration");
  c_cox->add_option("--cell", cells, "single cell: n D")->expected(2)->allow_extra_args(false);
  c_cox->add_option("--presentation", presentation, "presentation file")->check(CLI::ExistingFile);

  RaagOptions raag;
  std::string diagram_path;
  auto* c_raag = app.add_subcommand("raag", "faithfulness certificate for a curve diagram");
  c_raag->add_option("diagram", diagram_path, "diagram file")->required()->check(CLI::ExistingFile);
  c_raag->add_option("--D", raag.power, "power for curves without their own");
  c_raag->add_option("--trials", raag.trials, "random trials per suite");
  c_raag->add_option("--max-len", raag.max_len, "maximum syllables per random word");

  auto* c_diag = app.add_subcommand("diagram", "diagram file utilities");
  c_diag->require_subcommand(1);
  std::string validate_path;
  auto* c_validate = c_diag->add_subcommand("validate", "check diagram invariants and connectivity");
  c_validate->add_option("diagram", validate_path, "diagram file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_cheb) {
      cheb.seed = g.seed;
      return emit(run_chebyshev(cheb), g);
    }
    if (*c_symp) {
      symp.seed = g.seed;
      symp.cap = cap_or(g, kDefaultClosureCap);
      return emit(run_symplectic(symp), g);
    }
    if (*c_cox) {
      const std::size_t cap = cap_or(g, kDefaultCosetCap);
      if (!presentation.empty()) return emit(run_presentation(parse_presentation(presentation), presentation, cap), g);
      cox.cap = cap;
      for (const auto& c : cells) {
        if (c.size() != 2 || c[0] < 2 || c[1] < 1) throw std::invalid_argument("--cell takes n >= 2 and D >= 1");
        cox.cells.emplace_back(static_cast<std::size_t>(c[0]), c[1]);
      }
      return emit(run_coxeter(cox), g);
    }
    if (*c_raag) {
      raag.seed = g.seed;
      return emit(run_raag(parse_diagram(diagram_path), diagram_path, raag), g);
    }
    if (*c_validate) {
      return emit(run_diagram_validate(parse_diagram_text(read_file(validate_path), validate_path), validate_path), g);
    }
  } catch (const std::exception& e) {
    std::cerr << "twistlab: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

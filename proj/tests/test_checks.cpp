#include <doctest.h>

#include "twistlab/checks.hpp"

using namespace twistlab;

namespace {

const std::string kFixtures = TWISTLAB_FIXTURES;

const Record& find(const Report& rep, const std::string& name) {
  for (const auto& r : rep.records)
    if (r.name == name) return r;
  FAIL("no record " << name);
  throw std::logic_error("unreachable");
}

bool has(const Report& rep, const std::string& name) {
  for (const auto& r : rep.records)
    if (r.name == name) return true;
  return false;
}

}  // namespace

TEST_SUITE("checks") {

TEST_CASE("report json layout") {
  Report rep;
  rep.command = "demo";
  rep.config = {{"seed", 3}};
  rep.records.push_back({"b.second", "claim b", {}, 1, 1, Verdict::kPass, 0.5});
  rep.records.push_back({"a.first", "claim a", {}, 1, 2, Verdict::kFail, 0.25});
  rep.records.push_back({"c.third", "claim c", {}, nullptr, 7, Verdict::kRecorded, 0});
  auto j = rep.to_json(true);
  CHECK(j["schema_version"] == 1);
  CHECK(j["command"] == "demo");
  REQUIRE(j["records"].size() == 3);
  CHECK(j["records"][0]["name"] == "a.first");
  CHECK(j["records"][0]["verdict"] == "fail");
  CHECK(j["records"][2]["verdict"] == "recorded");
  CHECK(j["summary"]["pass"] == 1);
  CHECK(j["summary"]["fail"] == 1);
  CHECK(j["summary"]["exceeded"] == 0);
  CHECK(j["timing"]["b.second"] == 0.5);
  CHECK_FALSE(rep.to_json(false).contains("timing"));
  CHECK_FALSE(rep.ok());
  CHECK(rep.to_text().find("FAIL a.first: claim a") == 0);
}

TEST_CASE("chebyshev report") {
  ChebyshevOptions opt;
  opt.trials = 100;
  auto rep = run_chebyshev(opt);
  CHECK(find(rep, "chebyshev.q5_factorization").verdict == Verdict::kPass);
  CHECK(find(rep, "chebyshev.explicit_formula").verdict == Verdict::kPass);
  CHECK(find(rep, "chebyshev.table_at_0").verdict == Verdict::kPass);
  CHECK(find(rep, "chebyshev.table_at_1").verdict == Verdict::kPass);
  CHECK(find(rep, "chebyshev.sl2_power_identity").verdict == Verdict::kPass);
  CHECK(find(rep, "chebyshev.unit_entry").verdict == Verdict::kPass);
  // The printed (-1) table is off by one index; it is kept as a failing record, and
  // the shifted table it actually matches is recorded next to it.
  CHECK(find(rep, "chebyshev.table_at_minus1").verdict == Verdict::kFail);
  CHECK(find(rep, "chebyshev.table_at_minus1_shifted").verdict == Verdict::kRecorded);
  CHECK(find(rep, "chebyshev.table_at_minus1_shifted").observed["mismatches"] == 0);
  CHECK(find(rep, "chebyshev.table_at_minus1").observed["mismatches"] == 200);  // every D
  CHECK_FALSE(rep.ok());

  opt.moduli = {6};
  auto six = run_chebyshev(opt);
  CHECK(find(six, "chebyshev.mod6_degeneracy").verdict == Verdict::kPass);
  CHECK(find(six, "chebyshev.sl2_power_identity").verdict == Verdict::kPass);
}

TEST_CASE("symplectic report") {
  SymplecticOptions opt;
  opt.genus = 2;
  opt.level = 2;
  opt.checks = {"power", "se", "center", "order"};
  auto rep = run_symplectic(opt);
  CHECK(find(rep, "symplectic.power_subgroup").verdict == Verdict::kPass);
  CHECK(find(rep, "symplectic.power_subgroup").observed["index"] == 2);
  CHECK(find(rep, "symplectic.se_identities").verdict == Verdict::kPass);
  CHECK(find(rep, "symplectic.se_identities").observed["pinned"] == "plus");
  CHECK(find(rep, "symplectic.order").observed == 720);
  CHECK_FALSE(has(rep, "symplectic.nu"));
  CHECK(rep.ok());

  SymplecticOptions g1;
  g1.genus = 1;
  g1.level = 6;
  g1.checks = {"gsp", "nu"};
  auto r1 = run_symplectic(g1);
  CHECK(find(r1, "symplectic.gsp_containment").verdict == Verdict::kPass);
  CHECK(find(r1, "symplectic.nu").observed["nu"] == 6);

  g1.checks = {"bogus"};
  CHECK_THROWS_AS(run_symplectic(g1), std::invalid_argument);
}

TEST_CASE("coxeter report") {
  CoxeterOptions small;
  small.cap = 1000;
  small.cells = {{5, 3}, {3, 3}};
  auto rep = run_coxeter(small);
  CHECK(find(rep, "coxeter.n5_D3").verdict == Verdict::kExceeded);
  CHECK(find(rep, "coxeter.n3_D3").verdict == Verdict::kPass);
  CHECK(rep.ok());

  CoxeterOptions inf;
  inf.cells = {{3, 6}};
  auto r = run_coxeter(inf);
  CHECK(find(r, "coxeter.n3_D6").verdict == Verdict::kPass);
  CHECK(find(r, "coxeter.n3_D6").observed["order"] == "exceeded");
}

TEST_CASE("presentation report") {
  auto p = parse_presentation(kFixtures + "/b3_power3_sigma1.presentation");
  auto rep = run_presentation(p, "b3", 1000);
  REQUIRE(rep.records.size() == 1);
  CHECK(rep.records[0].name == "presentation.index");
  CHECK(rep.records[0].observed["index"] == 8);
}

TEST_CASE("raag report") {
  RaagOptions opt;
  opt.trials = 200;
  auto chain = parse_diagram(kFixtures + "/chain_c_g2.diagram");
  auto rep = run_raag(chain, "chain_c_g2", opt);
  CHECK(find(rep, "raag.faithfulness").verdict == Verdict::kPass);
  CHECK(find(rep, "raag.commutation_graph").verdict == Verdict::kPass);
  CHECK(rep.ok());

  auto e = parse_diagram(kFixtures + "/humphries_c_g2.diagram");
  auto re = run_raag(e, "humphries_c_g2", opt);
  CHECK(find(re, "raag.commutation_graph").verdict == Verdict::kPass);
  CHECK(find(re, "raag.square_propagation").verdict == Verdict::kPass);

  auto random = parse_diagram(kFixtures + "/random5.diagram");
  auto rr = run_raag(random, "random5", opt);
  CHECK_FALSE(has(rr, "raag.commutation_graph"));
  CHECK(rr.ok());

  opt.power = 1;
  CHECK_THROWS_AS(run_raag(chain, "chain_c_g2", opt), std::invalid_argument);
}

TEST_CASE("validate report") {
  auto d = parse_diagram_text(read_file(kFixtures + "/disjoint.diagram"));
  auto rep = run_diagram_validate(d, "disjoint");
  CHECK(find(rep, "diagram.invariants").verdict == Verdict::kPass);
  CHECK(find(rep, "diagram.connectivity").verdict == Verdict::kRecorded);
  CHECK(rep.ok());
  auto bad = run_diagram_validate(parse_diagram_text(read_file(kFixtures + "/dangling.diagram")), "dangling");
  CHECK(find(bad, "diagram.invariants").verdict == Verdict::kFail);
}

}  // TEST_SUITE

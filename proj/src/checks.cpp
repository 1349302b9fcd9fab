#include "twistlab/checks.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <sstream>
#include <unordered_set>

#include "twistlab/chebyshev.hpp"

namespace twistlab {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kExceeded: return "exceeded";
    case Verdict::kRecorded: return "recorded";
  }
  return "?";
}

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const Record& r) { return r.verdict == v; }));
}

json Report::to_json(bool with_timing) const {
  std::vector<const Record*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->name < b->name; });
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = command;
  out["config"] = config;
  json recs = json::array();
  json timing = json::object();
  for (const auto* r : sorted) {
    recs.push_back({{"name", r->name},
                    {"claim", r->claim},
                    {"inputs", r->inputs},
                    {"expected", r->expected},
                    {"observed", r->observed},
                    {"verdict", to_string(r->verdict)}});
    timing[r->name] = r->seconds;
  }
  out["records"] = recs;
  out["summary"] = {{"pass", count(Verdict::kPass)},
                    {"fail", count(Verdict::kFail)},
                    {"exceeded", count(Verdict::kExceeded)},
                    {"recorded", count(Verdict::kRecorded)}};
  if (with_timing) out["timing"] = timing;
  return out;
}

std::string Report::to_text() const {
  std::vector<const Record*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->name < b->name; });
  std::ostringstream os;
  for (const auto* r : sorted) {
    std::string v = to_string(r->verdict);
    for (auto& c : v) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    os << v << ' ' << r->name << ": " << r->claim << " -- observed " << r->observed.dump() << '\n';
  }
  os << "summary: " << count(Verdict::kPass) << " pass, " << count(Verdict::kFail) << " fail, "
     << count(Verdict::kExceeded) << " exceeded, " << count(Verdict::kRecorded) << " recorded\n";
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

json int_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Verdict pass_if(bool ok) { return ok ? Verdict::kPass : Verdict::kFail; }

// Runs `body`, filling in the elapsed time; CapExceeded becomes an "exceeded" verdict.
template <typename F>
Record timed(std::string name, std::string claim, F body) {
  Record r;
  r.name = std::move(name);
  r.claim = std::move(claim);
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const CapExceeded& e) {
    r.verdict = Verdict::kExceeded;
    r.observed = {{"exceeded", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

// ---- chebyshev -------------------------------------------------------------

std::int64_t printed_at_0(std::uint64_t d) { return d % 2 == 0 ? 0 : (((d - 1) / 2) % 2 == 0 ? 1 : -1); }
std::int64_t printed_at_minus1(std::uint64_t d) { return d % 3 == 2 ? 1 : d % 3 == 0 ? -1 : 0; }
std::int64_t printed_at_1(std::uint64_t d) {
  switch (d % 6) {
    case 1: case 2: return 1;
    case 4: case 5: return -1;
    default: return 0;
  }
}

Record value_table(const std::string& name, const std::string& claim, std::int64_t t, std::uint64_t max_d,
                   std::int64_t (*printed)(std::uint64_t), std::int64_t shift = 1) {
  return timed(name, claim, [&](Record& r) {
    r.inputs = {{"t", t}, {"D_max", max_d}, {"index", shift == 1 ? "D-1" : "D-2"}};
    r.expected = "value table for all D <= D_max";
    json mismatches = json::array();
    std::size_t count = 0;
    for (std::uint64_t d = shift; d <= max_d; ++d) {
      Integer v = q_eval(d - shift, t, Modulus(0));
      if (v != printed(d)) {
        if (++count <= 5) mismatches.push_back({{"D", d}, {"table", printed(d)}, {"computed", int_json(v)}});
      }
    }
    r.observed = {{"mismatches", count}, {"first_mismatches", mismatches}};
    r.verdict = pass_if(count == 0);
  });
}

ModMatrix random_sl2(std::int64_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> e(0, m - 1);
  for (;;) {
    auto a = ModMatrix::from_rows({{e(rng), e(rng)}, {e(rng), e(rng)}}, Modulus(m));
    if (det2(a) == Modulus(m).reduce(Integer(1))) return a;
  }
}

// ---- symplectic helpers -----------------------------------------------------

std::vector<ModMatrix> all_elements(const GroupClosure& g) {
  std::vector<ModMatrix> out;
  out.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g.element(i));
  return out;
}

bool is_scalar(const ModMatrix& a) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if ((i == j && a.at(i, j) != a.at(0, 0)) || (i != j && a.at(i, j) != 0)) return false;
  return true;
}

}  // namespace

Report run_chebyshev(const ChebyshevOptions& opt) {
  Report rep;
  rep.command = "chebyshev";
  rep.config = {{"max_n", opt.max_n}, {"max_d", opt.max_d}, {"moduli", opt.moduli}, {"trials", opt.trials},
                {"seed", opt.seed}};

  rep.records.push_back(timed("chebyshev.explicit_formula", "recurrence and closed form give the same Q_n",
                              [&](Record& r) {
                                r.inputs = {{"n_max", opt.max_n}};
                                r.expected = "equal for every n";
                                std::optional<std::uint64_t> bad;
                                for (std::uint64_t n = 0; n <= opt.max_n && !bad; ++n)
                                  if (!(q_poly(n) == q_explicit(n))) bad = n;
                                r.observed = bad ? json{{"first_mismatch", *bad}} : json("equal");
                                r.verdict = pass_if(!bad);
                              }));

  rep.records.push_back(timed("chebyshev.q5_factorization", "Q_5 = t(t-1)(t+1)(t^2-3)", [&](Record& r) {
    ChebPoly t({0, 1}), tm1({-1, 1}), tp1({1, 1}), t2m3({-3, 0, 1});
    ChebPoly product = t * tm1 * tp1 * t2m3;
    r.expected = product.to_string();
    r.observed = q_poly(5).to_string();
    r.verdict = pass_if(q_poly(5) == product);
  }));

  rep.records.push_back(value_table("chebyshev.table_at_0",
                                    "Q_{D-1}(0) is 0 for even D and (-1)^((D-1)/2) for odd D", 0, opt.max_d,
                                    printed_at_0));
  rep.records.push_back(value_table("chebyshev.table_at_minus1",
                                    "Q_{D-1}(-1) is 1, -1, 0 for D = 2, 0, 1 mod 3", -1, opt.max_d,
                                    printed_at_minus1));
  {
    auto r = value_table("chebyshev.table_at_minus1_shifted",
                         "the mod-3 table at t = -1 is matched by Q_{D-2}(-1)", -1, opt.max_d, printed_at_minus1, 2);
    r.verdict = Verdict::kRecorded;
    rep.records.push_back(std::move(r));
  }
  rep.records.push_back(value_table("chebyshev.table_at_1",
                                    "Q_{D-1}(1) is 1, -1, 0 for D = 1,2 / 4,5 / 0,3 mod 6", 1, opt.max_d,
                                    printed_at_1));

  rep.records.push_back(timed("chebyshev.mod6_degeneracy", "Q_{6k-1}(t) = 0 mod 6 for t = 0..5, k <= 20",
                              [&](Record& r) {
                                r.inputs = {{"k_max", 20}};
                                std::vector<std::uint64_t> failing;
                                for (std::uint64_t k = 1; k <= 20; ++k)
                                  if (!mod6_degeneracy_check(k)) failing.push_back(k);
                                const bool control = q_eval(4, 0, Modulus(6)) != 0;
                                r.expected = {{"failing_k", json::array()}, {"control_Q4_nonzero", true}};
                                r.observed = {{"failing_k", failing}, {"control_Q4_nonzero", control}};
                                r.verdict = pass_if(failing.empty() && control);
                              }));

  rep.records.push_back(timed("chebyshev.sl2_power_identity", "A^D = Q_{D-1}(tr A) A - Q_{D-2}(tr A) I in SL(2, Z/m)",
                              [&](Record& r) {
                                std::mt19937_64 rng(opt.seed);
                                std::size_t failures = 0, trials = 0;
                                for (auto m : opt.moduli) {
                                  if (m < 2) throw std::invalid_argument("moduli must be at least 2");
                                  for (std::size_t k = 0; k < opt.trials; ++k) {
                                    auto a = random_sl2(m, rng);
                                    auto d = std::uniform_int_distribution<std::uint64_t>(2, 50)(rng);
                                    ++trials;
                                    if (!sl2_power_identity_check(a, d)) ++failures;
                                  }
                                }
                                r.inputs = {{"moduli", opt.moduli}, {"trials_per_modulus", opt.trials},
                                            {"D_range", {2, 50}}};
                                r.expected = {{"failures", 0}};
                                r.observed = {{"failures", failures}, {"trials", trials}};
                                r.verdict = pass_if(failures == 0);
                              }));

  rep.records.push_back(timed("chebyshev.unit_entry", "for D <= 30, D not 0 mod 6: Q_{D-1}(0) or Q_{D-1}(-1) is +-1 mod D",
                              [&](Record& r) {
                                std::vector<std::uint64_t> bad;
                                for (std::uint64_t d = 2; d <= 30; ++d) {
                                  if (d % 6 == 0) continue;
                                  Modulus m(static_cast<std::int64_t>(d));
                                  auto unit = [&](std::int64_t t) {
                                    Integer v = symmetric_residue(q_eval(d - 1, t, m), m);
                                    return v == 1 || v == -1;
                                  };
                                  if (!unit(0) && !unit(-1)) bad.push_back(d);
                                }
                                r.inputs = {{"D_max", 30}};
                                r.expected = {{"exceptions", json::array()}};
                                r.observed = {{"exceptions", bad}};
                                r.verdict = pass_if(bad.empty());
                              }));
  return rep;
}

const std::vector<std::string>& symplectic_check_names() {
  static const std::vector<std::string> names{"order", "power", "se", "center", "nu", "gsp",
                                              "chain", "congruence", "mod6"};
  return names;
}

Report run_symplectic(const SymplecticOptions& opt) {
  if (opt.genus < 1) throw std::invalid_argument("genus must be at least 1");
  if (opt.level < 1) throw std::invalid_argument("D must be at least 1");
  for (const auto& c : opt.checks)
    if (std::find(symplectic_check_names().begin(), symplectic_check_names().end(), c) ==
        symplectic_check_names().end())
      throw std::invalid_argument("unknown symplectic check '" + c + "'");
  auto wanted = [&](const std::string& c) {
    return opt.checks.empty() || std::find(opt.checks.begin(), opt.checks.end(), c) != opt.checks.end();
  };
  Report rep;
  rep.command = "symplectic";
  rep.config = {{"g", opt.genus}, {"D", opt.level}, {"checks", opt.checks}, {"cap", opt.cap}, {"seed", opt.seed}};
  const int g = opt.genus;
  const std::int64_t D = opt.level;
  const json gd = {{"g", g}, {"D", D}};
  const std::string sp = "Sp(" + std::to_string(2 * g) + ", Z/" + std::to_string(D) + ")";

  std::optional<GroupClosure> group;
  auto get_group = [&]() -> const GroupClosure& {
    if (!group) group = symplectic_group(g, Modulus(D), opt.cap);
    return *group;
  };
  const bool needs_group = D >= 2;

  if (wanted("order") && needs_group)
    rep.records.push_back(timed("symplectic.order", "closure of the generators has the order given by the formula",
                                [&](Record& r) {
                                  r.inputs = gd;
                                  r.expected = int_json(symplectic_group_order(g, static_cast<std::uint64_t>(D)));
                                  r.observed = get_group().size();
                                  r.verdict = pass_if(r.observed == r.expected);
                                }));

  if (wanted("power") && needs_group)
    rep.records.push_back(timed("symplectic.power_subgroup", "index of the subgroup generated by D-th powers in " + sp,
                                [&](Record& r) {
                                  const auto& G = get_group();
                                  auto H = power_subgroup(G, static_cast<std::uint64_t>(D), opt.cap);
                                  // spot normality test
                                  std::mt19937_64 rng(opt.seed);
                                  std::uniform_int_distribution<std::size_t> pg(0, G.size() - 1), ph(0, H.size() - 1);
                                  std::size_t not_normal = 0;
                                  for (int k = 0; k < 100; ++k) {
                                    auto x = G.element(pg(rng));
                                    auto c = mat_mul(mat_mul(x, H.element(ph(rng))), symplectic_inverse(x));
                                    if (!H.contains(c)) ++not_normal;
                                  }
                                  const std::size_t index = G.size() / H.size();
                                  r.inputs = gd;
                                  r.observed = {{"group_order", G.size()}, {"subgroup_order", H.size()},
                                                {"index", index}, {"conjugation_failures", not_normal}};
                                  if (g == 2 && D == 2) {
                                    r.expected = {{"index", 2}, {"conjugation_failures", 0}};
                                    r.verdict = pass_if(index == 2 && not_normal == 0 && G.size() % H.size() == 0);
                                  } else {
                                    r.expected = {{"conjugation_failures", 0}};
                                    r.verdict = not_normal == 0 ? Verdict::kRecorded : Verdict::kFail;
                                  }
                                }));

  if (wanted("se") && g >= 2)
    rep.records.push_back(timed("symplectic.se_identities",
                                "the three SE_1j[D] identities hold under a single twist sign convention",
                                [&](Record& r) {
                                  auto s = verify_se_identities(g, D);
                                  r.inputs = gd;
                                  r.expected = {{"conventions_satisfying_all", 1}};
                                  json holds = json::object();
                                  const char* names[2] = {"plus", "minus"};
                                  for (int c = 0; c < 2; ++c)
                                    holds[names[c]] = {s.holds[static_cast<std::size_t>(c)][0],
                                                       s.holds[static_cast<std::size_t>(c)][1],
                                                       s.holds[static_cast<std::size_t>(c)][2]};
                                  r.observed = {{"holds", holds},
                                                {"pinned", s.pinned ? (*s.pinned == TwistConvention::kPlus ? "plus" : "minus")
                                                                    : "none"}};
                                  r.verdict = pass_if(s.pinned.has_value());
                                }));

  if (wanted("center") && needs_group)
    rep.records.push_back(timed("symplectic.center", "the center of " + sp + " is {I, -I}", [&](Record& r) {
      auto z = center_of(get_group());
      const std::size_t dim = static_cast<std::size_t>(2 * g);
      const auto I = ModMatrix::identity(dim, Modulus(D));
      const auto minus = I.negated();
      const std::size_t want = minus == I ? 1 : 2;
      bool ok = z.size() == want;
      for (const auto& a : z) ok = ok && (a == I || a == minus);
      r.inputs = gd;
      r.expected = {{"size", want}};
      r.observed = {{"size", z.size()}};
      r.verdict = pass_if(ok);
    }));

  if (wanted("nu"))
    rep.records.push_back(timed("symplectic.nu", "nu(D) from o_c of the maximal prime powers of D", [&](Record& r) {
      auto n = nu(static_cast<std::uint64_t>(D), g, opt.cap);
      json factors = json::array();
      for (const auto& f : n.factors)
        factors.push_back({{"prime", f.prime}, {"q", f.prime_power}, {"o_c", f.oc}, {"divides_D", f.divides}});
      r.inputs = gd;
      r.observed = {{"nu", n.value}, {"factors", factors}};
      r.verdict = Verdict::kRecorded;
    }));

  if (wanted("gsp") && needs_group)
    rep.records.push_back(timed("symplectic.gsp_containment",
                                "the D-th power subgroup lies in the general congruence subgroup of level nu(D)",
                                [&](Record& r) {
                                  const auto& G = get_group();
                                  auto n = nu(static_cast<std::uint64_t>(D), g, opt.cap);
                                  auto H = power_subgroup(G, static_cast<std::uint64_t>(D), opt.cap);
                                  auto gcs = general_congruence_subgroup(G, n.value, opt.cap);
                                  std::unordered_set<ModMatrix> members(gcs.begin(), gcs.end());
                                  std::size_t outside = 0;
                                  for (const auto& h : all_elements(H)) outside += members.count(h) ? 0 : 1;
                                  r.inputs = gd;
                                  r.expected = {{"outside", 0}};
                                  r.observed = {{"nu", n.value}, {"power_subgroup_order", H.size()},
                                                {"congruence_subgroup_order", gcs.size()}, {"outside", outside}};
                                  r.verdict = pass_if(outside == 0);
                                }));

  if (wanted("chain"))
    for (auto v : {ChainVariant::kA, ChainVariant::kB}) {
      const bool a = v == ChainVariant::kA;
      const std::uint64_t bound = a ? 4 * static_cast<std::uint64_t>(g) + 2 : 4 * static_cast<std::uint64_t>(g);
      rep.records.push_back(timed(std::string("symplectic.chain_") + (a ? "a" : "b"),
                                  std::string("homology image of the chain product ") + (a ? "T_1 T_2..." : "T_1^2 T_2...") +
                                      " has order dividing " + std::to_string(bound),
                                  [&](Record& r) {
                                    auto order = chain_image_order(g, v);
                                    r.inputs = {{"g", g}, {"variant", a ? "a" : "b"}};
                                    r.expected = {{"divides", bound}, {"greater_than", 2}};
                                    r.observed = {{"order", order}};
                                    bool ok = bound % order == 0;
                                    if (g >= 2) ok = ok && order > 2;
                                    if (g == 1 && a) ok = ok && order == 6;
                                    r.verdict = pass_if(ok);
                                  }));
    }

  if (wanted("congruence") && D >= 2)
    rep.records.push_back(timed("symplectic.congruence",
                                "SE_ij[D] generate the kernel of Sp(2g, Z/D^2) -> Sp(2g, Z/D)", [&](Record& r) {
                                  auto c = congruence_subgroup_check(g, D, opt.cap);
                                  r.inputs = gd;
                                  r.expected = {{"transvection_powers_trivial", true}, {"equal", true}};
                                  r.observed = {{"transvection_powers_trivial", c.transvection_powers_trivial},
                                                {"transvections_checked", c.transvections_checked},
                                                {"elementary_subgroup_order", c.elementary_subgroup_order},
                                                {"kernel_order", c.kernel_order},
                                                {"equal", c.equal},
                                                {"normal_closure_order", c.normal_closure_order},
                                                {"normal_closure_equal", c.normal_closure_equal}};
                                  const bool ok = c.transvection_powers_trivial && c.equal;
                                  r.verdict = g >= 2 ? pass_if(ok) : Verdict::kRecorded;
                                }));

  if (wanted("mod6"))
    rep.records.push_back(timed("symplectic.mod6_centrality", "A^6 is scalar for every A in SL(2, Z/6)", [&](Record& r) {
      std::size_t total = 0, bad = 0;
      for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
          for (int c = 0; c < 6; ++c)
            for (int d = 0; d < 6; ++d) {
              if (((a * d - b * c) % 6 + 6) % 6 != 1) continue;
              ++total;
              if (!is_scalar(mat_pow(ModMatrix::from_rows({{a, b}, {c, d}}, Modulus(6)), 6))) ++bad;
            }
      r.expected = {{"elements", 144}, {"non_scalar", 0}};
      r.observed = {{"elements", total}, {"non_scalar", bad}};
      r.verdict = pass_if(total == 144 && bad == 0);
    }));

  return rep;
}

namespace {

std::string cell_name(std::size_t n, std::int64_t d) {
  return "coxeter.n" + std::to_string(n) + "_D" + std::to_string(d);
}

Record coxeter_record(std::size_t n, std::int64_t d, std::size_t cap) {
  Record r;
  r.name = cell_name(n, d);
  auto cell = coxeter_cell(n, d, cap);
  r.seconds = cell.seconds;
  r.inputs = {{"n", n}, {"D", d}, {"cap", cap}, {"criterion_finite", cell.finite}};
  const std::string group = "B_" + std::to_string(n) + " / <<sigma_i^" + std::to_string(d) + ">>";
  if (cell.finite) {
    r.claim = group + " is finite" + (cell.expected ? " of order " + std::to_string(*cell.expected) : "");
    r.expected = cell.expected ? json(*cell.expected) : json("finite");
  } else {
    r.claim = group + " is infinite, so enumeration exceeds the cap";
    r.expected = "exceeded";
  }
  r.observed = {{"order", cell.result.order ? json(*cell.result.order) : json("exceeded")},
                {"method", cell.result.method}};
  if (cell.result.subgroup_index) r.observed["subgroup_index"] = *cell.result.subgroup_index;
  if (cell.result.generator_order) r.observed["generator_order"] = *cell.result.generator_order;
  if (cell.finite && !cell.result.order)
    r.verdict = Verdict::kExceeded;
  else
    r.verdict = pass_if(cell.passed);
  return r;
}

}  // namespace

Report run_coxeter(const CoxeterOptions& opt) {
  Report rep;
  rep.command = "coxeter";
  json cells = json::array();
  for (auto [n, d] : opt.cells) cells.push_back({n, d});
  rep.config = {{"cap", opt.cap}, {"cells", cells}};
  if (opt.cells.empty()) {
    for (std::size_t n = 2; n <= 6; ++n)
      for (std::int64_t d = 2; d <= 6; ++d) rep.records.push_back(coxeter_record(n, d, opt.cap));
  } else {
    for (auto [n, d] : opt.cells) {
      if (n < 2 || d < 1) throw std::invalid_argument("cell needs n >= 2 and D >= 1");
      rep.records.push_back(coxeter_record(n, d, opt.cap));
    }
  }
  return rep;
}

Report run_presentation(const PresentationFile& p, const std::string& source, std::size_t cap) {
  Report rep;
  rep.command = "coxeter";
  rep.config = {{"cap", cap}, {"presentation", source}};
  p.presentation.check();
  if (p.subgroup.empty()) {
    rep.records.push_back(timed("presentation.order", "order of the presented group", [&](Record& r) {
      auto q = group_order(p.presentation, cap);
      r.inputs = {{"generators", p.presentation.generators}, {"relators", p.presentation.relators.size()}};
      r.expected = "finite order";
      r.observed = {{"order", q.order ? json(*q.order) : json("exceeded")}, {"method", q.method}};
      r.verdict = q.order ? Verdict::kRecorded : Verdict::kExceeded;
    }));
  } else {
    rep.records.push_back(timed("presentation.index", "index of the listed subgroup", [&](Record& r) {
      auto t = todd_coxeter(p.presentation, p.subgroup, cap);
      r.inputs = {{"generators", p.presentation.generators}, {"relators", p.presentation.relators.size()},
                  {"subgroup_generators", p.subgroup.size()}};
      r.expected = "finite index";
      r.observed = {{"index", t.complete() ? json(t.cosets) : json("exceeded")},
                    {"verified", t.complete() && t.verify(p.presentation, p.subgroup)}};
      r.verdict = !t.complete() ? Verdict::kExceeded
                                : (t.verify(p.presentation, p.subgroup) ? Verdict::kRecorded : Verdict::kFail);
    }));
  }
  return rep;
}

namespace {

json diagram_json(const PlumbingDiagram& d, const std::string& source) {
  json labels = json::array();
  for (const auto& c : d.curves()) labels.push_back(c.label);
  return {{"diagram", source}, {"curves", labels}, {"crossings", d.crossings().size()}};
}

// Curves named c<j> form the chain c1 - c2 - ... with c0 attached to c4; two curves
// commute iff they are not adjacent in that tree.
std::optional<CommutationGraph> indexed_chain_graph(const PlumbingDiagram& d) {
  std::vector<long> idx;
  for (const auto& c : d.curves()) {
    if (c.label.size() < 2 || c.label[0] != 'c') return std::nullopt;
    try {
      std::size_t used = 0;
      long v = std::stol(c.label.substr(1), &used);
      if (used != c.label.size() - 1) return std::nullopt;
      idx.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  CommutationGraph g;
  for (const auto& c : d.curves()) g.add_vertex(c.label);
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      long j = std::min(idx[a], idx[b]), k = std::max(idx[a], idx[b]);
      const bool adjacent = (j >= 1 && k == j + 1) || (j == 0 && k == 4);
      if (!adjacent) g.add_edge(a, b);
    }
  return g;
}

}  // namespace

Report run_raag(const PlumbingDiagram& diagram, const std::string& source, const RaagOptions& opt) {
  const auto powers = diagram_powers(diagram, opt.power);
  for (std::size_t s = 0; s < powers.size(); ++s)
    if (powers[s] >= -1 && powers[s] <= 1)
      throw std::invalid_argument("curve " + diagram.curves()[s].label + " has power " + std::to_string(powers[s]) +
                                  "; the certificate needs |D| >= 2");
  Report rep;
  rep.command = "raag";
  rep.config = diagram_json(diagram, source);
  rep.config["D"] = opt.power;
  rep.config["trials"] = opt.trials;
  rep.config["max_len"] = opt.max_len;
  rep.config["seed"] = opt.seed;
  json powers_json = json::object();
  for (std::size_t s = 0; s < powers.size(); ++s) powers_json[diagram.curves()[s].label] = powers[s];

  if (auto expected = indexed_chain_graph(diagram)) {
    rep.records.push_back(timed("raag.commutation_graph",
                                "c_j and c_k commute iff they are not adjacent in the chain with c0 attached to c4",
                                [&](Record& r) {
                                  auto g = graph_from_curves(diagram);
                                  auto edges = [&](const CommutationGraph& h) {
                                    json e = json::array();
                                    for (auto [a, b] : h.edges()) e.push_back({h.label(a), h.label(b)});
                                    return e;
                                  };
                                  r.expected = edges(*expected);
                                  r.observed = edges(g);
                                  r.verdict = pass_if(r.expected == r.observed);
                                }));
  }

  rep.records.push_back(timed("raag.faithfulness", "non-identity M-reduced words move alpha_t for t crossing a final letter",
                              [&](Record& r) {
                                auto f = faithfulness_check(diagram, opt.power, opt.trials, opt.max_len, opt.seed);
                                r.inputs = {{"powers", powers_json}, {"trials", opt.trials}, {"max_len", opt.max_len}};
                                r.expected = {{"counterexamples", 0}, {"inconclusive", 0}};
                                json ce = json::array();
                                for (const auto& c : f.counterexamples)
                                  ce.push_back({{"word", c.word}, {"curve", c.curve}, {"reason", c.reason}});
                                r.observed = {{"trials", f.trials},
                                              {"certified_by_shadow", f.certified_by_shadow},
                                              {"certified_exactly", f.certified_exactly},
                                              {"inconclusive", f.inconclusive},
                                              {"counterexamples", ce}};
                                r.verdict = pass_if(f.passed());
                              }));

  rep.records.push_back(timed("raag.square_propagation",
                              "squares of T_t^m(x) in alpha_s need s = t or a disjoint s already squared in x",
                              [&](Record& r) {
                                auto s = square_propagation_check(diagram, opt.power, opt.trials, opt.seed);
                                r.inputs = {{"trials", opt.trials}};
                                r.expected = {{"violations", 0}};
                                json v = json::array();
                                for (std::size_t k = 0; k < s.violations.size() && k < 5; ++k) v.push_back(s.violations[k]);
                                r.observed = {{"trials", s.trials}, {"squares_observed", s.squares_observed},
                                              {"violations", s.violations.size()}, {"first_violations", v}};
                                r.verdict = pass_if(s.passed());
                              }));

  rep.records.push_back(timed("raag.commutation_soundness", "twists along disjoint curves commute", [&](Record& r) {
    auto c = commutation_soundness_check(diagram, opt.power, 20, opt.seed);
    r.inputs = {{"samples_per_pair", 20}};
    r.expected = {{"failures", 0}};
    r.observed = {{"pairs", c.pairs}, {"checks", c.checks}, {"failures", c.failures.size()}};
    r.verdict = pass_if(c.passed());
  }));
  return rep;
}

Report run_diagram_validate(const PlumbingDiagram& diagram, const std::string& source) {
  Report rep;
  rep.command = "diagram validate";
  rep.config = diagram_json(diagram, source);
  auto v = validate(diagram);
  Record r;
  r.name = "diagram.invariants";
  r.claim = "pairing is a perfect matching between distinct curves with signs +-1";
  r.expected = {{"violations", json::array()}};
  r.observed = {{"violations", v.violations}};
  r.verdict = pass_if(v.valid());
  rep.records.push_back(r);
  Record c;
  c.name = "diagram.connectivity";
  c.claim = "the intersection graph is connected";
  c.expected = {{"components", 1}};
  json comps = json::array();
  for (const auto& comp : v.components) {
    json labels = json::array();
    for (auto s : comp) labels.push_back(diagram.curves()[s].label);
    comps.push_back(labels);
  }
  c.observed = {{"components", v.components.size()}, {"members", comps}};
  // Disconnected diagrams are legal input; they are flagged, not failed.
  c.verdict = v.connected ? Verdict::kPass : Verdict::kRecorded;
  rep.records.push_back(c);
  return rep;
}

}  // namespace twistlab

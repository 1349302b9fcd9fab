// Python bindings. Reports cross the boundary as JSON text; the package wrapper
// turns them into dicts.

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistlab/chebyshev.hpp"
#include "twistlab/checks.hpp"
#include "twistlab/cosets.hpp"
#include "twistlab/formats.hpp"
#include "twistlab/raag.hpp"
#include "twistlab/sympgroup.hpp"

namespace py = pybind11;
using namespace twistlab;

namespace {

// cpp_int has no pybind11 caster; go through the decimal string.
py::int_ to_py(const Integer& x) {
  const std::string s = x.str();
  PyObject* v = PyLong_FromString(s.c_str(), nullptr, 10);
  if (!v) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(v);
}

Integer from_py(const py::int_& x) { return Integer(py::str(x).cast<std::string>()); }

std::string dump(const Report& r, bool timing) { return r.to_json(timing).dump(); }

RaagWord word_of(const std::vector<std::pair<std::size_t, std::int64_t>>& w, std::size_t n) {
  std::vector<Syllable> s;
  for (auto [v, e] : w) {
    if (v >= n) throw py::index_error("vertex " + std::to_string(v) + " out of range");
    s.push_back({v, e});
  }
  return RaagWord(std::move(s));
}

CommutationGraph graph_of(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  auto g = CommutationGraph::edgeless(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw py::index_error("edge endpoint out of range");
    g.add_edge(a, b);
  }
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "twistlab core";

  m.def("q_coeffs", [](std::uint64_t n) {
    const ChebPoly q = q_poly(n);
    py::list out;
    for (const auto& c : q.coeffs()) out.append(to_py(c));
    return out;
  }, py::arg("n"), "Coefficients of Q_n, lowest degree first.");

  m.def("q_eval", [](std::uint64_t n, const py::int_& t, std::int64_t mod) {
    return to_py(q_eval(n, from_py(t), Modulus(mod)));
  }, py::arg("n"), py::arg("t"), py::arg("mod") = 0);

  m.def("symplectic_group_order", [](int genus, std::uint64_t q) {
    return to_py(symplectic_group_order(genus, q));
  }, py::arg("genus"), py::arg("q"));

  m.def("nu", [](std::uint64_t d, int genus, std::size_t cap) { return nu(d, genus, cap).value; },
        py::arg("d"), py::arg("genus"), py::arg("cap") = kDefaultClosureCap);

  m.def("congruence_check", [](int genus, std::int64_t level, std::size_t cap) {
    auto r = congruence_subgroup_check(genus, level, cap);
    py::dict d;
    d["transvection_powers_trivial"] = r.transvection_powers_trivial;
    d["elementary_subgroup_order"] = r.elementary_subgroup_order;
    d["kernel_order"] = r.kernel_order;
    d["equal"] = r.equal;
    d["normal_closure_order"] = r.normal_closure_order;
    d["normal_closure_equal"] = r.normal_closure_equal;
    return d;
  }, py::arg("genus"), py::arg("level"), py::arg("cap") = kDefaultClosureCap);

  m.def("quotient_order", [](std::size_t n, std::int64_t power, std::size_t cap) {
    auto q = quotient_order(n, power, cap);
    return std::make_tuple(q.order, q.method);
  }, py::arg("n"), py::arg("power"), py::arg("cap") = kDefaultCosetCap,
     "(order or None, method) for B_n / <<sigma_i^power>>.");

  m.def("words_equal", [](std::size_t vertices, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                          const std::vector<std::pair<std::size_t, std::int64_t>>& a,
                          const std::vector<std::pair<std::size_t, std::int64_t>>& b) {
    auto g = graph_of(vertices, edges);
    return words_equal(word_of(a, vertices), word_of(b, vertices), g);
  }, py::arg("vertices"), py::arg("edges"), py::arg("a"), py::arg("b"),
     "Equality in the RAAG on `vertices` generators; words are (vertex, exponent) lists.");

  m.def("chebyshev_report", [](std::uint64_t max_n, std::uint64_t max_d, std::vector<std::int64_t> moduli,
                               std::size_t trials, std::uint64_t seed, bool timing) {
    ChebyshevOptions o{max_n, max_d, std::move(moduli), trials, seed};
    return dump(run_chebyshev(o), timing);
  }, py::arg("max_n") = 64, py::arg("max_d") = 200, py::arg("moduli") = std::vector<std::int64_t>{35},
     py::arg("trials") = 1000, py::arg("seed") = 1, py::arg("timing") = false);

  m.def("symplectic_report", [](int genus, std::int64_t level, std::vector<std::string> checks,
                                std::size_t cap, std::uint64_t seed, bool timing) {
    SymplecticOptions o{genus, level, std::move(checks), cap, seed};
    return dump(run_symplectic(o), timing);
  }, py::arg("genus") = 2, py::arg("level") = 2, py::arg("checks") = std::vector<std::string>{},
     py::arg("cap") = kDefaultClosureCap, py::arg("seed") = 1, py::arg("timing") = false);

  m.def("coxeter_report", [](std::vector<std::pair<std::size_t, std::int64_t>> cells, std::size_t cap, bool timing) {
    CoxeterOptions o{cap, std::move(cells)};
    return dump(run_coxeter(o), timing);
  }, py::arg("cells") = std::vector<std::pair<std::size_t, std::int64_t>>{}, py::arg("cap") = kDefaultCosetCap,
     py::arg("timing") = false);

  m.def("raag_report", [](const std::string& text, std::int64_t power, std::size_t trials, std::size_t max_len,
                          std::uint64_t seed, bool timing) {
    RaagOptions o{power, trials, max_len, seed};
    return dump(run_raag(parse_diagram_checked(text), "<string>", o), timing);
  }, py::arg("diagram"), py::arg("power") = 2, py::arg("trials") = 1000, py::arg("max_len") = 12,
     py::arg("seed") = 1, py::arg("timing") = false);

  m.def("validate_report", [](const std::string& text, bool timing) {
    return dump(run_diagram_validate(parse_diagram_text(text), "<string>"), timing);
  }, py::arg("diagram"), py::arg("timing") = false);
}

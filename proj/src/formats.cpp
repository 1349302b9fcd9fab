#include "twistlab/formats.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace twistlab {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(line ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    Line l{number, {}};
    for (std::string f; ls >> f;) l.fields.push_back(f);
    if (!l.fields.empty()) out.push_back(std::move(l));
  }
  return out;
}

template <typename T>
T number_field(const std::string& source, const Line& l, std::size_t k, const char* what) {
  if (k >= l.fields.size())
    throw ParseError(source, l.number, "field " + std::to_string(k + 1) + ": missing " + what);
  const std::string& f = l.fields[k];
  const char* first = f.data();
  if (!f.empty() && f[0] == '+') ++first;
  T v{};
  auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size())
    throw ParseError(source, l.number, "field " + std::to_string(k + 1) + ": expected " + what + ", got '" + f + "'");
  return v;
}

void expect_header(const std::string& source, const std::vector<Line>& lines, const std::string& magic) {
  if (lines.empty()) throw ParseError(source, 0, "empty input, expected '" + magic + " 1'");
  const auto& h = lines.front();
  if (h.fields[0] != magic) throw ParseError(source, h.number, "expected header '" + magic + " 1'");
  if (h.fields.size() != 2) throw ParseError(source, h.number, "header takes exactly one version field");
  if (number_field<int>(source, h, 1, "version") != 1)
    throw ParseError(source, h.number, "field 2: unsupported version '" + h.fields[1] + "'");
}

void expect_arity(const std::string& source, const Line& l, std::size_t n) {
  if (l.fields.size() != n)
    throw ParseError(source, l.number, "'" + l.fields[0] + "' takes " + std::to_string(n - 1) + " fields, got " +
                                           std::to_string(l.fields.size() - 1));
}

std::string sign(int e) { return e > 0 ? "+" + std::to_string(e) : std::to_string(e); }

}  // namespace

PlumbingDiagram parse_diagram_text(const std::string& text, const std::string& source) {
  auto lines = tokenize(text);
  expect_header(source, lines, "twistlab-diagram");
  PlumbingDiagram d;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kw = l.fields[0];
    if (kw == "curve") {
      if (l.fields.size() != 3 && l.fields.size() != 5)
        throw ParseError(source, l.number, "'curve' takes <label> <points> [power <D>]");
      const auto& label = l.fields[1];
      if (index.count(label)) throw ParseError(source, l.number, "field 2: duplicate curve '" + label + "'");
      auto points = number_field<std::size_t>(source, l, 2, "point count");
      std::optional<std::int64_t> power;
      if (l.fields.size() == 5) {
        if (l.fields[3] != "power") throw ParseError(source, l.number, "field 4: expected 'power'");
        power = number_field<std::int64_t>(source, l, 4, "integer power");
      }
      index[label] = d.add_curve(label, points, power);
    } else if (kw == "cross") {
      expect_arity(source, l, 7);
      auto curve = [&](std::size_t f) {
        auto it = index.find(l.fields[f]);
        if (it == index.end())
          throw ParseError(source, l.number, "field " + std::to_string(f + 1) + ": unknown curve '" + l.fields[f] + "'");
        return it->second;
      };
      const PointRef a{curve(1), number_field<std::size_t>(source, l, 2, "point index")};
      const PointRef b{curve(3), number_field<std::size_t>(source, l, 4, "point index")};
      const int eab = number_field<int>(source, l, 5, "sign");
      const int eba = number_field<int>(source, l, 6, "sign");
      for (auto [e, f] : {std::pair{eab, 6}, std::pair{eba, 7}})
        if (e != 1 && e != -1)
          throw ParseError(source, l.number, "field " + std::to_string(f) + ": sign must be +1 or -1");
      d.add_crossing(a, b, eab, eba);
    } else {
      throw ParseError(source, l.number, "unknown keyword '" + kw + "'");
    }
  }
  return d;
}

PlumbingDiagram parse_diagram_checked(const std::string& text, const std::string& source) {
  PlumbingDiagram d = parse_diagram_text(text, source);
  auto report = validate(d);
  if (!report.valid()) throw ParseError(source, 0, report.violations.front());
  return d;
}

PlumbingDiagram parse_diagram(const std::string& path) { return parse_diagram_checked(read_file(path), path); }

std::string serialize_diagram(const PlumbingDiagram& d) {
  std::ostringstream os;
  os << "twistlab-diagram 1\n";
  for (const auto& c : d.curves()) {
    os << "curve " << c.label << ' ' << c.points;
    if (c.power) os << " power " << *c.power;
    os << '\n';
  }
  for (const auto& x : d.crossings()) {
    os << "cross " << d.curves()[x.first.curve].label << ' ' << x.first.index << ' '
       << d.curves()[x.second.curve].label << ' ' << x.second.index << ' ' << sign(x.eps_first) << ' '
       << sign(x.eps_second) << '\n';
  }
  return os.str();
}

PresentationFile parse_presentation_text(const std::string& text, const std::string& source) {
  auto lines = tokenize(text);
  expect_header(source, lines, "twistlab-presentation");
  PresentationFile p;
  bool have_generators = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& kw = l.fields[0];
    if (kw == "generators") {
      expect_arity(source, l, 2);
      if (have_generators) throw ParseError(source, l.number, "'generators' given twice");
      p.presentation.generators = number_field<std::size_t>(source, l, 1, "generator count");
      have_generators = true;
    } else if (kw == "relator" || kw == "subgroup") {
      if (!have_generators) throw ParseError(source, l.number, "'generators' must come first");
      if (l.fields.size() < 2) throw ParseError(source, l.number, "'" + kw + "' needs at least one letter");
      Word w;
      for (std::size_t f = 1; f < l.fields.size(); ++f) {
        int x = number_field<int>(source, l, f, "letter");
        if (x == 0 || static_cast<std::size_t>(x < 0 ? -x : x) > p.presentation.generators)
          throw ParseError(source, l.number, "field " + std::to_string(f + 1) + ": letter " + std::to_string(x) +
                                                 " out of range");
        w.push_back(x);
      }
      (kw == "relator" ? p.presentation.relators : p.subgroup).push_back(std::move(w));
    } else {
      throw ParseError(source, l.number, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_generators) throw ParseError(source, 0, "missing 'generators' line");
  return p;
}

PresentationFile parse_presentation(const std::string& path) {
  return parse_presentation_text(read_file(path), path);
}

std::string serialize_presentation(const PresentationFile& p) {
  std::ostringstream os;
  os << "twistlab-presentation 1\ngenerators " << p.presentation.generators << '\n';
  auto emit = [&](const char* kw, const Word& w) {
    os << kw;
    for (int x : w) os << ' ' << x;
    os << '\n';
  };
  for (const auto& r : p.presentation.relators) emit("relator", r);
  for (const auto& s : p.subgroup) emit("subgroup", s);
  return os.str();
}

}  // namespace twistlab

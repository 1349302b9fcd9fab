#include <doctest.h>

#include <filesystem>

#include "twistlab/formats.hpp"

using namespace twistlab;

namespace {

const std::string kFixtures = TWISTLAB_FIXTURES;

std::string error_of(const std::string& text) {
  try {
    parse_diagram_checked(text, "t.diagram");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("fixtures parse and validate") {
  for (const char* name : {"chain3", "chain_b_g2", "chain_c_g2", "humphries_b_g2", "humphries_c_g2", "random5"}) {
    INFO(name);
    auto d = parse_diagram(kFixtures + "/" + name + ".diagram");
    auto v = validate(d);
    CHECK(v.valid());
    CHECK(v.connected);
  }
  CHECK(parse_diagram(kFixtures + "/chain3.diagram") == PlumbingDiagram::chain(3));
  CHECK(parse_diagram(kFixtures + "/chain_c_g2.diagram") == PlumbingDiagram::chain(4));
  CHECK(parse_diagram(kFixtures + "/chain_b_g2.diagram") == PlumbingDiagram::chain(5));
  CHECK(parse_diagram(kFixtures + "/humphries_c_g2.diagram") == PlumbingDiagram::humphries(4));
  CHECK(parse_diagram(kFixtures + "/humphries_b_g2.diagram") == PlumbingDiagram::humphries(5));
}

TEST_CASE("dangling point names the point") {
  try {
    parse_diagram(kFixtures + "/dangling.diagram");
    FAIL("dangling diagram parsed");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("p_c1^2") != std::string::npos);
    CHECK(std::string(e.what()).find("dangling.diagram") != std::string::npos);
  }
  // lenient parse keeps it for validation
  auto d = parse_diagram_text(read_file(kFixtures + "/dangling.diagram"));
  CHECK_FALSE(validate(d).valid());
}

TEST_CASE("disjoint fixture is valid but disconnected") {
  auto d = parse_diagram(kFixtures + "/disjoint.diagram");
  auto v = validate(d);
  CHECK(v.valid());
  CHECK_FALSE(v.connected);
}

TEST_CASE("round trips") {
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    const auto path = entry.path().string();
    const std::string text = read_file(path);
    INFO(path);
    if (entry.path().extension() == ".diagram") {
      auto d = parse_diagram_text(text, path);
      CHECK(serialize_diagram(d) == text);
      CHECK(parse_diagram_text(serialize_diagram(d)) == d);
    } else if (entry.path().extension() == ".presentation") {
      auto p = parse_presentation_text(text, path);
      CHECK(serialize_presentation(p) == text);
    }
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = PlumbingDiagram::random_connected(7, 5, seed);
    d.set_power(2, -3);
    CHECK(parse_diagram_checked(serialize_diagram(d)) == d);
  }
}

TEST_CASE("diagram syntax errors carry line numbers") {
  CHECK(error_of("nope 1\n").find("t.diagram:1:") == 0);
  CHECK(error_of("twistlab-diagram 2\n").find("version") != std::string::npos);
  auto e = error_of("twistlab-diagram 1\ncurve a 1\ncurve b x\n");
  CHECK(e.find("t.diagram:3:") == 0);
  CHECK(e.find("field 3: expected point count") != std::string::npos);
  e = error_of("twistlab-diagram 1\ncurve a 1\ncross a 1 b 1 1 -1\n");
  CHECK(e.find("t.diagram:3:") == 0);
  CHECK(e.find("'b'") != std::string::npos);
  e = error_of("twistlab-diagram 1\ncurve a 1 power\n");
  CHECK(e.find("power") != std::string::npos);
  e = error_of("twistlab-diagram 1\ncurve a 1\ncurve b 1\ncross a 1 b 1 2 -1\n");
  CHECK(e.find("sign") != std::string::npos);
  // comments and blank lines are fine
  auto d = parse_diagram_checked("# head\ntwistlab-diagram 1\n\ncurve a 1 # one point\ncurve b 1\ncross a 1 b 1 +1 -1\n");
  CHECK(d.curve_count() == 2);
  CHECK(d.crossings().size() == 1);
}

TEST_CASE("presentations") {
  auto p = parse_presentation(kFixtures + "/b3_power3.presentation");
  CHECK(p.presentation.generators == 2);
  CHECK(p.subgroup.empty());
  auto t = todd_coxeter(p.presentation, p.subgroup);
  CHECK(t.cosets == 24);
  auto s = parse_presentation(kFixtures + "/b3_power3_sigma1.presentation");
  REQUIRE(s.subgroup.size() == 1);
  CHECK(todd_coxeter(s.presentation, s.subgroup).cosets == 8);

  CHECK_THROWS_AS(parse_presentation_text("twistlab-presentation 1\ngenerators 2\nrelator 3\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation_text("twistlab-presentation 1\nrelator 1\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation_text("twistlab-presentation 1\ngenerators 1\nrelator\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation(kFixtures + "/missing.presentation"), std::runtime_error);
}

}  // TEST_SUITE

#include <doctest.h>

#include <random>
#include <string>

#include "ffca/floorfield.hpp"
#include "ffca/scenario.hpp"
#include "support/fixtures.hpp"

using namespace ffca;
using namespace ffca::testing;

namespace {

const std::string kParams =
    "k_S = 4\nk_P = 6\nk_W = 4\nr = 10\nmu = 0.5\nseed = 7\nmax_steps = 100\n";

std::string with_map(const std::string& map) { return kParams + "\n" + map; }

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("minimal well-formed scenario") {
  const Scenario s = parse_scenario(with_map("...\n..E\n...\n"));
  CHECK(s.grid.height() == 3);
  CHECK(s.grid.width() == 3);
  CHECK(s.grid.exits().size() == 1);
  CHECK(s.grid.exits()[0] == Cell{1, 2});
  CHECK(s.agents.empty());
  CHECK(s.params.k_sff == 4.0);
  CHECK(s.params.k_people == 6.0);
  CHECK(s.params.visibility == 10);
  CHECK(s.params.friction == 0.5);
  CHECK(s.params.seed == 7);
  CHECK(s.params.max_steps == 100);
}

TEST_CASE("agent on the enclosing wall is rejected") {
  try {
    parse_scenario(with_map("#P#\n#.E\n###\n"));
    FAIL("expected a parse error");
  } catch (const ScenarioParseError& e) {
    CHECK(e.detail() == "agent on wall");
    CHECK(e.line() == 9);
    CHECK(e.column() == 2);
  }
}

TEST_CASE("parse errors report line and column") {
  SUBCASE("ragged rows") {
    try {
      parse_scenario(with_map("#####\n#..E\n#####\n"));
      FAIL("expected a parse error");
    } catch (const ScenarioParseError& e) {
      CHECK(e.line() == 10);
      CHECK(e.column() == 5);
      CHECK(e.detail().find("ragged") != std::string::npos);
    }
  }
  SUBCASE("missing required key") {
    const std::string text = "k_S = 4\nk_P = 6\nk_W = 4\nr = 10\nseed = 1\nmax_steps = 9\n\n#E#\n";
    try {
      parse_scenario(text);
      FAIL("expected a parse error");
    } catch (const ScenarioParseError& e) {
      CHECK(e.detail() == "missing required parameter 'mu'");
      CHECK(e.line() == 7);
    }
  }
  SUBCASE("unknown key") {
    try {
      parse_scenario("speed = 2\n" + with_map("#E#\n"));
      FAIL("expected a parse error");
    } catch (const ScenarioParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 1);
      CHECK(e.detail() == "unknown parameter 'speed'");
    }
  }
  SUBCASE("syntax") {
    CHECK(error_line("k_S 4\n" + with_map("#E#\n")) == 1);
    CHECK(error_line("k_S = 4\nk_S = 5\n" + with_map("#E#\n")) == 2);
    CHECK(error_line(with_map("#E#\n#x#\n")) == 10);
    CHECK(error_line(with_map("#E#\n\n###\n")) == 10);
    CHECK(error_line(kParams) == 8);
    CHECK(error_line(with_map("#E#\n#\xC3#\n")) == 10);
  }
  SUBCASE("out of range values") {
    const auto replace = [](std::string key, std::string value) {
      std::string text = with_map("#E#\n");
      const auto at = text.find(key + " = ");
      const auto end = text.find('\n', at);
      return text.replace(at, end - at, key + " = " + value);
    };
    for (const auto& [key, value] :
         std::vector<std::pair<std::string, std::string>>{{"mu", "1.5"},
                                                          {"mu", "-0.1"},
                                                          {"k_S", "-1"},
                                                          {"k_P", "nan"},
                                                          {"r", "0"},
                                                          {"r", "2.5"},
                                                          {"max_steps", "0"},
                                                          {"seed", "-3"},
                                                          {"k_W", "abc"}}) {
      CAPTURE(key);
      CAPTURE(value);
      try {
        parse_scenario(replace(key, value));
        FAIL("expected a parse error");
      } catch (const ScenarioParseError& e) {
        CHECK(e.column() > 1);
      }
    }
  }
}

TEST_CASE("CRLF line endings are accepted") {
  const Scenario s = parse_scenario(
      "k_S = 4\r\nk_P = 6\r\nk_W = 4\r\nr = 10\r\nmu = 0.5\r\nseed = 7\r\nmax_steps = 100\r\n\r\n"
      "#E#\r\n#P#\r\n###\r\n");
  CHECK(s.agents.size() == 1);
  CHECK(s.grid.width() == 3);
}

TEST_CASE("validate reports each broken invariant") {
  const ModelParams params = reference_params();

  SUBCASE("sealed agent is unreachable") {
    const Scenario s = scenario_from_rows({"#######", "#.###.#", "#.#P#.#", "#.###.#", "###E###"},
                                          params);
    const auto v = validate(s, compute_sff(s.grid));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::UnreachableAgent);
    CHECK(v[0].message == "unreachable agent at (2,3)");
  }
  SUBCASE("duplicate agents") {
    Scenario s = scenario_from_rows({"#####", "#P..#", "##E##"}, params);
    s.agents.push_back(Cell{1, 1});
    s.agents.push_back(Cell{1, 1});
    const auto v = validate(s, compute_sff(s.grid));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::DuplicateAgent);
    CHECK(v[0].message == "cell occupied twice at (1,1)");
  }
  SUBCASE("agent placed on a wall programmatically") {
    Scenario s = scenario_from_rows({"#####", "#...#", "##E##"}, params);
    s.agents.push_back(Cell{0, 1});
    const auto v = validate(s, compute_sff(s.grid));
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::AgentOnWall);
  }
  SUBCASE("open border and missing exit") {
    const Scenario s = scenario_from_rows({"#.#", "#P#", "###"}, params);
    const auto v = validate(s, compute_sff(s.grid));
    REQUIRE(v.size() == 3);
    CHECK(v[0].kind == ViolationKind::NoExit);
    CHECK(v[1].kind == ViolationKind::OpenBorder);
    CHECK(v[1].cell == Cell{0, 1});
    CHECK(v[2].kind == ViolationKind::UnreachableAgent);
  }
  SUBCASE("exit on a wall or out of bounds") {
    Matrix<std::uint8_t> walls(3, 3, 1);
    walls[Cell{1, 1}] = 0;
    Scenario s{Grid(walls, {Cell{0, 1}, Cell{5, 5}}), {}, params};
    const auto v = validate(s, compute_sff(s.grid));
    REQUIRE(v.size() == 2);
    CHECK(v[0].kind == ViolationKind::ExitOnWall);
    CHECK(v[1].kind == ViolationKind::OutOfBounds);
  }
  SUBCASE("clean scenario") {
    const Scenario s = scenario_from_rows({"#####", "#P.P#", "##E##"}, params);
    CHECK(validate(s, compute_sff(s.grid)).empty());
  }
}

TEST_CASE("parameter warnings flag k_P or k_W below k_S") {
  ModelParams p = reference_params();
  CHECK(parameter_warnings(p).empty());
  p.k_people = 1.0;
  p.k_wall = 2.0;
  CHECK(parameter_warnings(p).size() == 2);
}

TEST_CASE("set_param and get_param agree on every key") {
  ModelParams p;
  for (std::string_view key : kParamKeys) {
    set_param(p, key, key == "mu" ? "0.3" : "17");
    ModelParams q;
    set_param(q, key, get_param(p, key));
    CHECK(get_param(q, key) == get_param(p, key));
  }
  CHECK_THROWS_AS(set_param(p, "k_X", "1"), std::invalid_argument);
  CHECK_THROWS_AS(get_param(p, "k_X"), std::invalid_argument);
}

TEST_CASE("parse, serialize and parse again is stable") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> k(0.0, 30.0);
  for (int trial = 0; trial < 50; ++trial) {
    Rows rows = random_room(rng, 4 + trial % 9, 5 + trial % 11, 0.2, 1 + trial % 3);
    for (int r = 1; r + 1 < static_cast<int>(rows.size()); ++r)
      for (int c = 1; c + 1 < static_cast<int>(rows[0].size()); ++c)
        if (rows[r][c] == '.' && rng() % 4 == 0) rows[r][c] = 'P';
    ModelParams params;
    params.k_sff = k(rng);
    params.k_people = k(rng);
    params.k_wall = k(rng);
    params.visibility = 1 + static_cast<int>(rng() % 20);
    params.friction = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    params.seed = rng();
    params.max_steps = 1 + static_cast<std::int64_t>(rng() % 100000);

    const Scenario original = scenario_from_rows(rows, params);
    const Scenario first = parse_scenario(serialize_scenario(original));
    CHECK(first == original);
    CHECK(parse_scenario(serialize_scenario(first)) == first);
  }
}

TEST_CASE("reference evacuation room") {
  const Scenario s = load_scenario(std::string(FFCA_SCENARIO_DIR) + "/evacuation_room.txt");
  // 37 x 33 interior cells plus the enclosing wall.
  CHECK(s.grid.width() == 39);
  CHECK(s.grid.height() == 35);
  CHECK(s.agents.size() == 300);
  REQUIRE(s.grid.exits().size() == 5);
  for (std::size_t k = 1; k < 5; ++k) {
    CHECK(s.grid.exits()[k].row == s.grid.exits()[0].row);
    CHECK(s.grid.exits()[k].col == s.grid.exits()[k - 1].col + 1);
  }
  CHECK(validate(s, compute_sff(s.grid)).empty());
  CHECK(parameter_warnings(s.params).empty());
}

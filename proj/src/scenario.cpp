#include "ffca/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "ffca/floorfield.hpp"

namespace ffca {

namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t'; };
  const auto b = std::find_if(s.begin(), s.end(), not_space);
  const auto e = std::find_if(s.rbegin(), std::string_view::reverse_iterator(b), not_space).base();
  return std::string_view(b, static_cast<std::size_t>(e - b));
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw std::invalid_argument("malformed value '" + std::string(text) + "' for " +
                                std::string(key));
  }
  return value;
}

double parse_sensitivity(std::string_view key, std::string_view text) {
  const double v = parse_number<double>(key, text);
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(key) + " must be a finite non-negative number");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// Splits on '\n', dropping a trailing '\r' from each line. A final newline
// does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

void check_ascii(std::string_view line, int line_no) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (static_cast<unsigned char>(line[i]) > 127) {
      throw ScenarioParseError(line_no, static_cast<int>(i) + 1, "non-ASCII byte");
    }
  }
}

}  // namespace

bool is_param_key(std::string_view key) {
  return std::find(std::begin(kParamKeys), std::end(kParamKeys), key) != std::end(kParamKeys);
}

void set_param(ModelParams& params, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "k_S") {
    params.k_sff = parse_sensitivity(key, value);
  } else if (key == "k_P") {
    params.k_people = parse_sensitivity(key, value);
  } else if (key == "k_W") {
    params.k_wall = parse_sensitivity(key, value);
  } else if (key == "r") {
    const auto v = parse_number<std::int64_t>(key, value);
    if (v < 1 || v > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("r must be a positive integer");
    }
    params.visibility = static_cast<int>(v);
  } else if (key == "mu") {
    const double v = parse_number<double>(key, value);
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
    params.friction = v;
  } else if (key == "seed") {
    params.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "max_steps") {
    const auto v = parse_number<std::int64_t>(key, value);
    if (v < 1) throw std::invalid_argument("max_steps must be a positive integer");
    params.max_steps = v;
  } else {
    throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
  }
}

std::string get_param(const ModelParams& params, std::string_view key) {
  if (key == "k_S") return format_double(params.k_sff);
  if (key == "k_P") return format_double(params.k_people);
  if (key == "k_W") return format_double(params.k_wall);
  if (key == "r") return std::to_string(params.visibility);
  if (key == "mu") return format_double(params.friction);
  if (key == "seed") return std::to_string(params.seed);
  if (key == "max_steps") return std::to_string(params.max_steps);
  throw std::invalid_argument("unknown parameter '" + std::string(key) + "'");
}

std::vector<std::string> parameter_warnings(const ModelParams& params) {
  std::vector<std::string> warnings;
  if (params.k_people < params.k_sff) {
    warnings.push_back("k_P (" + format_double(params.k_people) + ") is below k_S (" +
                       format_double(params.k_sff) + ")");
  }
  if (params.k_wall < params.k_sff) {
    warnings.push_back("k_W (" + format_double(params.k_wall) + ") is below k_S (" +
                       format_double(params.k_sff) + ")");
  }
  return warnings;
}

ScenarioParseError::ScenarioParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column),
      detail_(what) {}

MapLayout parse_map(std::string_view text, int first_line) {
  auto lines = split_lines(text);
  while (!lines.empty() && is_blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw ScenarioParseError(first_line, 1, "empty map");

  const int height = static_cast<int>(lines.size());
  const int width = static_cast<int>(lines.front().size());
  Matrix<std::uint8_t> walls(height, width, 0);
  std::vector<Cell> exits;
  std::vector<Cell> agents;

  for (int r = 0; r < height; ++r) {
    const std::string_view row = lines[static_cast<std::size_t>(r)];
    const int line_no = first_line + r;
    check_ascii(row, line_no);
    if (static_cast<int>(row.size()) != width) {
      throw ScenarioParseError(line_no, std::min<int>(static_cast<int>(row.size()), width) + 1,
                               "ragged map row: expected " + std::to_string(width) +
                                   " columns, found " + std::to_string(row.size()));
    }
    for (int c = 0; c < width; ++c) {
      const Cell cell{r, c};
      const bool border = r == 0 || c == 0 || r == height - 1 || c == width - 1;
      switch (row[static_cast<std::size_t>(c)]) {
        case '#': walls[cell] = 1; break;
        case '.': break;
        case 'E': exits.push_back(cell); break;
        case 'P':
          // The enclosure must be wall except at exits, so a border agent
          // stands where a wall belongs.
          if (border) throw ScenarioParseError(line_no, c + 1, "agent on wall");
          agents.push_back(cell);
          break;
        default:
          throw ScenarioParseError(line_no, c + 1,
                                   std::string("unknown map glyph '") +
                                       row[static_cast<std::size_t>(c)] + "'");
      }
    }
  }
  return MapLayout{Grid(std::move(walls), std::move(exits)), std::move(agents)};
}

Scenario parse_scenario(std::string_view text) {
  const auto lines = split_lines(text);
  std::map<std::string, int, std::less<>> seen;
  Scenario scenario;

  std::size_t i = 0;
  for (; i < lines.size() && !is_blank(lines[i]); ++i) {
    const std::string_view line = lines[i];
    const int line_no = static_cast<int>(i) + 1;
    check_ascii(line, line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioParseError(line_no, 1, "expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const int key_col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    const int value_col = static_cast<int>(eq) + 2;
    if (key.empty()) throw ScenarioParseError(line_no, key_col, "missing parameter name");
    if (!is_param_key(key)) {
      throw ScenarioParseError(line_no, key_col, "unknown parameter '" + std::string(key) + "'");
    }
    if (seen.contains(key)) {
      throw ScenarioParseError(line_no, key_col, "duplicate parameter '" + std::string(key) + "'");
    }
    try {
      set_param(scenario.params, key, line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw ScenarioParseError(line_no, value_col, e.what());
    }
    seen.emplace(std::string(key), line_no);
  }

  const int separator_line = static_cast<int>(i) + 1;
  for (std::string_view key : kParamKeys) {
    if (!seen.contains(key)) {
      throw ScenarioParseError(separator_line, 1,
                               "missing required parameter '" + std::string(key) + "'");
    }
  }
  while (i < lines.size() && is_blank(lines[i])) ++i;
  if (i >= lines.size()) throw ScenarioParseError(separator_line, 1, "missing map section");

  // Blank lines are allowed only at the very end of the map.
  std::size_t end = lines.size();
  while (end > i && is_blank(lines[end - 1])) --end;
  for (std::size_t k = i; k < end; ++k) {
    if (is_blank(lines[k])) {
      throw ScenarioParseError(static_cast<int>(k) + 1, 1, "blank line inside map");
    }
  }

  std::string map_text;
  for (std::size_t k = i; k < end; ++k) {
    map_text.append(lines[k]);
    map_text.push_back('\n');
  }
  auto layout = parse_map(map_text, static_cast<int>(i) + 1);
  scenario.grid = std::move(layout.grid);
  scenario.agents = std::move(layout.agents);
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw std::runtime_error("error reading scenario file '" + path + "'");
  return parse_scenario(buf.str());
}

std::string render_map(const Grid& grid, const std::vector<Cell>& agents) {
  Matrix<char> glyphs(grid.height(), grid.width(), '.');
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      const Cell cell{r, c};
      if (grid.is_wall(cell)) {
        glyphs[cell] = '#';
      } else if (grid.is_exit(cell)) {
        glyphs[cell] = 'E';
      }
    }
  }
  for (Cell a : agents) {
    if (glyphs.contains(a)) glyphs[a] = 'P';
  }
  std::string out;
  out.reserve(static_cast<std::size_t>(grid.height()) * (static_cast<std::size_t>(grid.width()) + 1));
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) out.push_back(glyphs[Cell{r, c}]);
    out.push_back('\n');
  }
  return out;
}

std::string serialize_scenario(const Scenario& scenario) {
  std::string out;
  for (std::string_view key : kParamKeys) {
    out.append(key);
    out.append(" = ");
    out.append(get_param(scenario.params, key));
    out.push_back('\n');
  }
  out.push_back('\n');
  out.append(render_map(scenario.grid, scenario.agents));
  return out;
}

std::vector<Violation> validate(const Scenario& scenario, const StaticField& field) {
  std::vector<Violation> out;
  const Grid& grid = scenario.grid;
  const auto add = [&out](ViolationKind kind, Cell cell, std::string msg) {
    out.push_back(Violation{kind, cell, std::move(msg)});
  };

  if (grid.exits().empty()) add(ViolationKind::NoExit, Cell{}, "no exit cells");
  for (Cell e : grid.exits()) {
    if (!grid.in_bounds(e)) {
      add(ViolationKind::OutOfBounds, e, "exit out of bounds at " + to_string(e));
    } else if (grid.is_wall(e)) {
      add(ViolationKind::ExitOnWall, e, "exit on wall at " + to_string(e));
    }
  }

  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      const Cell cell{r, c};
      const bool border = r == 0 || c == 0 || r == grid.height() - 1 || c == grid.width() - 1;
      if (border && !grid.is_wall(cell) && !grid.is_exit(cell)) {
        add(ViolationKind::OpenBorder, cell, "border not enclosed at " + to_string(cell));
      }
    }
  }

  std::vector<Cell> sorted = scenario.agents;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    if (sorted[k] == sorted[k - 1] && (k < 2 || sorted[k - 2] != sorted[k])) {
      add(ViolationKind::DuplicateAgent, sorted[k], "cell occupied twice at " + to_string(sorted[k]));
    }
  }

  const bool field_matches =
      field.values().height() == grid.height() && field.values().width() == grid.width();
  for (Cell a : scenario.agents) {
    if (!grid.in_bounds(a)) {
      add(ViolationKind::OutOfBounds, a, "agent out of bounds at " + to_string(a));
    } else if (grid.is_wall(a)) {
      add(ViolationKind::AgentOnWall, a, "agent on wall at " + to_string(a));
    } else if (!field_matches || !field.is_finite(a)) {
      add(ViolationKind::UnreachableAgent, a, "unreachable agent at " + to_string(a));
    }
  }
  return out;
}

}  // namespace ffca

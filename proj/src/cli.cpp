#include "ffca/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include "ffca/engine.hpp"
#include "ffca/floorfield.hpp"
#include "ffca/metrics_io.hpp"
#include "ffca/scenario.hpp"

namespace ffca::cli {

namespace {

template <typename T>
T parse_int(const std::string& text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("malformed integer '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  for (const std::string& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int<T>(item));
      continue;
    }
    const T lo = parse_int<T>(item.substr(0, dots));
    const T hi = parse_int<T>(item.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("empty range '" + item + "'");
    for (T v = lo;; ++v) {
      out.push_back(v);
      if (v == hi) break;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct Entry {
  Scenario scenario;
  std::string param;
  std::string value;
  std::filesystem::path dir;
};

struct Prepared {
  Scenario scenario;
  StaticField field;
};

// Loads, applies overrides and validates. Returns an exit code on failure.
std::variant<Prepared, int> prepare(const RunConfig& config, std::ostream& err) {
  Scenario scenario;
  try {
    scenario = load_scenario(config.scenario.string());
  } catch (const ScenarioParseError& e) {
    err << "error: " << config.scenario.string() << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  for (const auto& [key, value] : config.overrides) {
    try {
      set_param(scenario.params, key, value);
    } catch (const std::invalid_argument& e) {
      err << "error: --set " << key << "=" << value << ": " << e.what() << "\n";
      return kExitParse;
    }
  }
  StaticField field = compute_sff(scenario.grid);
  const auto violations = validate(scenario, field);
  if (!violations.empty()) {
    for (const Violation& v : violations) err << "violation: " << v.message << "\n";
    return kExitValidation;
  }
  for (const std::string& w : parameter_warnings(scenario.params)) err << "warning: " << w << "\n";
  return Prepared{std::move(scenario), std::move(field)};
}

int execute(const RunConfig& config, const Prepared& prepared, std::vector<Entry> entries,
            std::ostream& out, std::ostream& err) {
  RunOptions options;
  options.snapshot_steps =
      config.snapshot_steps.empty() ? kDefaultSnapshotSteps : config.snapshot_steps;
  options.trace_step = config.dump_distributions;

  try {
    if (config.dump_sff) {
      write_file(config.out_dir / "sff.csv", format_field_csv(prepared.field));
    }

    std::vector<BatchRow> rows(entries.size());
    std::vector<std::exception_ptr> failures(entries.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (std::size_t k = next++; k < entries.size(); k = next++) {
        try {
          const Entry& e = entries[k];
          const SimulationResult result = run(e.scenario, prepared.field, options);
          export_result(result, e.dir);
          rows[k] = summarize_run(result, e.param, e.value, e.scenario.params.seed,
                                  config.spread_step);
        } catch (...) {
          failures[k] = std::current_exception();
        }
      }
    };
    const int workers = std::clamp<int>(config.workers, 1, static_cast<int>(entries.size()));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }

    write_file(config.out_dir / "runs.csv", format_runs_csv(rows));
    const auto summaries = summarize_batch(rows);
    write_file(config.out_dir / "summary.csv", format_summary_csv(summaries));
    for (const BatchSummary& s : summaries) {
      out << (s.param.empty() ? std::string("run") : s.param + "=" + s.value) << ": " << s.complete
          << "/" << s.runs << " complete, mean evacuation time " << s.evac_mean << " steps\n";
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

std::vector<std::uint64_t> seeds_for(const RunConfig& config, const Scenario& scenario) {
  return config.seeds.empty() ? std::vector<std::uint64_t>{scenario.params.seed} : config.seeds;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  return parse_list<std::uint64_t>(text);
}

std::vector<std::int64_t> parse_step_list(const std::string& text) {
  auto steps = parse_list<std::int64_t>(text);
  if (std::any_of(steps.begin(), steps.end(), [](std::int64_t s) { return s < 0; })) {
    throw std::invalid_argument("snapshot steps must be non-negative");
  }
  return steps;
}

std::pair<std::string, std::vector<std::string>> parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("expected --sweep key=v1,v2,...");
  }
  std::string key = text.substr(0, eq);
  std::vector<std::string> values;
  for (std::string v : split(text.substr(eq + 1), ',')) {
    if (v.empty()) throw std::invalid_argument("empty value in sweep list");
    values.push_back(std::move(v));
  }
  if (values.empty()) throw std::invalid_argument("sweep over an empty value list");
  return {std::move(key), std::move(values)};
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto prepared = prepare(config, err);
  if (const int* code = std::get_if<int>(&prepared)) return *code;
  const Prepared& p = std::get<Prepared>(prepared);

  std::vector<Entry> entries;
  for (std::uint64_t seed : seeds_for(config, p.scenario)) {
    Scenario s = p.scenario;
    s.params.seed = seed;
    entries.push_back(Entry{std::move(s), "", "", config.out_dir / ("s" + std::to_string(seed))});
  }
  return execute(config, p, std::move(entries), out, err);
}

int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, std::ostream& out, std::ostream& err) {
  if (values.empty()) {
    err << "error: sweep over an empty value list\n";
    return kExitParse;
  }
  if (!is_param_key(param) || param == "seed") {
    err << "error: cannot sweep '" << param << "' (use one of k_S, k_P, k_W, r, mu, max_steps)\n";
    return kExitParse;
  }
  auto prepared = prepare(config, err);
  if (const int* code = std::get_if<int>(&prepared)) return *code;
  const Prepared& p = std::get<Prepared>(prepared);

  std::vector<Entry> entries;
  for (const std::string& raw : values) {
    ModelParams params = p.scenario.params;
    try {
      set_param(params, param, raw);
    } catch (const std::invalid_argument& e) {
      err << "error: --sweep " << param << "=" << raw << ": " << e.what() << "\n";
      return kExitParse;
    }
    const std::string value = get_param(params, param);
    for (std::uint64_t seed : seeds_for(config, p.scenario)) {
      Scenario s = p.scenario;
      s.params = params;
      s.params.seed = seed;
      entries.push_back(Entry{std::move(s), param, value,
                              config.out_dir / ("p" + value + "_s" + std::to_string(seed))});
    }
  }
  return execute(config, p, std::move(entries), out, err);
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Floor-field cellular automaton evacuation simulator"};
  app.require_subcommand(1);

  RunConfig config;
  std::string seeds;
  std::string snapshot_steps;
  std::vector<std::string> sets;
  std::string sweep;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", config.scenario, "Scenario file")->required();
    sub->add_option("--out", config.out_dir, "Output directory")->required();
    sub->add_option("--seeds", seeds, "Seeds, e.g. 1,2,7 or 1..20 (default: scenario seed)");
    sub->add_option("--snapshot-steps", snapshot_steps,
                    "Steps to snapshot (default: 25,65,135,165,180,225)");
    sub->add_option("--set", sets, "Parameter override key=value (repeatable)");
    sub->add_option("--workers", config.workers, "Parallel simulations")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--dump-sff", config.dump_sff, "Write the static field as sff.csv");
    sub->add_option("--dump-distributions", config.dump_distributions,
                    "Write per-agent move distributions evaluated at this step");
    sub->add_option("--spread-step", config.spread_step,
                    "Step at which runs.csv reports the spread metric");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "Run a scenario for one or more seeds");
  add_common(run_cmd);
  run_cmd->add_option("--sweep", sweep, "Sweep key=v1,v2,... (same as the sweep command)");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter across values and seeds");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--sweep", sweep, "key=v1,v2,...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (!seeds.empty()) config.seeds = parse_seed_list(seeds);
    if (!snapshot_steps.empty()) config.snapshot_steps = parse_step_list(snapshot_steps);
    for (const std::string& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("--set expects key=value, got '" + s + "'");
      }
      config.overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    if (run_cmd->count("--sweep") > 0 || sweep_cmd->parsed()) {
      const auto [key, values] = parse_sweep(sweep);
      return cmd_sweep(config, key, values, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return cmd_run(config, out, err);
}

}  // namespace ffca::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ffca::cli {

/// Process exit codes. Stable; documented in the README.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // unexpected internal error
  kExitParse = 2,       // scenario syntax, bad flag values, usage errors
  kExitValidation = 3,  // scenario parsed but violates an invariant
  kExitIo = 4,          // reading or writing files failed
};

struct RunConfig {
  std::filesystem::path scenario;
  std::filesystem::path out_dir;
  std::vector<std::int64_t> snapshot_steps;
  std::vector<std::uint64_t> seeds;  // empty: use the scenario's seed
  std::vector<std::pair<std::string, std::string>> overrides;
  int workers = 1;
  bool dump_sff = false;
  std::optional<std::int64_t> dump_distributions;
  std::int64_t spread_step = 65;
};

/// Comma-separated integers; `a..b` expands to an inclusive range.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<std::int64_t> parse_step_list(const std::string& text);

/// Parses `key=v1,v2,...`. Throws std::invalid_argument on malformed input
/// or an empty value list.
std::pair<std::string, std::vector<std::string>> parse_sweep(const std::string& text);

/// One result set per seed under `<out>/s<seed>/`, plus runs.csv and
/// summary.csv at the top level.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Cross product of values x seeds, one result set per pair under
/// `<out>/p<value>_s<seed>/`, plus aggregate runs.csv and summary.csv.
int cmd_sweep(const RunConfig& config, const std::string& param,
              const std::vector<std::string>& values, std::ostream& out, std::ostream& err);

/// Full command-line entry point (`run` and `sweep` subcommands).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ffca::cli

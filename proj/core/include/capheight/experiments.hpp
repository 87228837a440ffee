#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capheight {

// Plain `key = value` file. Reserved keys: id, set, family, out, threads,
// profile, seed; every other key is an experiment parameter and must be one
// the experiment declares.
struct ExperimentConfig {
  std::string id;
  std::optional<std::filesystem::path> set_path;
  std::string family;  // chebyshev | cyclotomic | scan | files; empty picks the experiment default
  std::map<std::string, std::string> params;
  std::filesystem::path out;  // report directory; empty writes nothing
  int threads = 1;
  std::string profile = "default";  // or "strict": denser samples and more rays
  std::uint64_t seed = 1;
};

ExperimentConfig parse_experiment_config(std::string_view text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct Check {
  std::string name;
  bool passed = false;
  std::optional<double> value;
  std::optional<double> limit;
  std::string relation;  // "<=", ">=", "==", or empty for boolean checks
};

// One plot trend; every row has columns.size() entries.
struct Series {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Timing {
  std::string cell;
  double seconds;
};

struct Report {
  std::string id;
  int criterion = 0;
  std::string set;
  std::map<std::string, std::string> parameters;
  std::vector<Check> checks;
  std::vector<Series> series;
  std::map<std::string, std::string> details;
  std::vector<Timing> timings;  // wall clock; kept out of report_json

  bool passed() const;
};

struct ExperimentInfo {
  std::string id;
  int criterion;
  std::string summary;
  std::vector<std::string> keys;  // accepted parameter keys
};

const std::vector<ExperimentInfo>& experiment_registry();
// Throws UnknownExperiment.
const ExperimentInfo& find_experiment(std::string_view id);

// Throws UnknownExperiment, InvalidConfig, or the module error with the
// experiment id prepended.
Report run_experiment(const ExperimentConfig& config);

// Deterministic: fixed key order, doubles rounded to 12 significant digits,
// no timings.
std::string report_json(const Report& report);
std::string timings_json(const Report& report);

// One CSV per series, named <id>.<series>.csv; a header line always, then
// the rows. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_series(const Report& report, const std::filesystem::path& dir);

// <id>.json, <id>.timings.json and the CSVs.
void write_report(const Report& report, const std::filesystem::path& dir);

}  // namespace capheight

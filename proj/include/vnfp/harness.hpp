// Copyright 2026 The vnf-placer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file vnfp/harness.hpp
///
/// Experiment runner and CSV surface. Every run is reported as one CSV row
///
///   instance_id,algo,seed,trial,cost,fail_rate,time_ms,r,row_update
///
/// with infinite costs written as "inf" and unused config fields left empty.

#ifndef VNFP_HARNESS_HPP
#define VNFP_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vnfp/instance.hpp"
#include "vnfp/run.hpp"

namespace vnfp::harness {

enum class Algo { kDp, kLv, kMc };

std::string_view to_string(Algo algo);
std::optional<Algo> parse_algo(std::string_view text);

struct CsvRow {
  std::string instance_id;
  Algo algo = Algo::kDp;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  Cost cost;
  double fail_rate = 0.0;
  double time_ms = 0.0;
  std::optional<Load> r;
  std::optional<bool> row_update;
};

inline constexpr const char* kCsvHeader =
    "instance_id,algo,seed,trial,cost,fail_rate,time_ms,r,row_update";

std::string format_real(double v);
std::string format_row(const CsvRow& row);

struct SolveConfig {
  Algo algo = Algo::kDp;
  std::uint64_t seed = 0;
  Load r = 1;
  bool row_update = false;
};

struct SolveOutcome {
  CsvRow row;
  RunResult result;
  /// Set when the solver aborted (Las Vegas on an infeasible flow); the
  /// row then carries an infinite cost.
  std::optional<std::string> error;
};

SolveOutcome solve(const Instance& inst, const std::string& instance_id,
                   const SolveConfig& config, std::size_t trial);

/// JSON dump of per-flow allocations and labels for a set of trials.
std::string allocations_json(const std::string& instance_id,
                             const std::vector<SolveOutcome>& outcomes);

enum class Scale { kDesk, kFull };

struct SizeClass {
  std::string label;
  std::size_t nodes = 0;
  std::size_t flows = 0;
  Load max_demand = 1;
};

struct ExperimentSpec {
  std::string name;  ///< exp1 | exp2 | exp3 | exp4
  Scale scale = Scale::kDesk;
  std::uint64_t master_seed = 0;
  std::vector<SizeClass> classes;
  std::size_t instances = 1;  ///< per size class
  std::size_t trials = 1;     ///< randomized runs per instance
  std::vector<Load> r_grid;   ///< exp4
  Load mc_r = 10;             ///< exp3
  /// Each cell runs this many times; the reported time is the minimum, the
  /// other columns come from the first run (runs are deterministic).
  std::size_t timing_repeats = 1;
};

/// Desk or full-size defaults for a named experiment; throws
/// std::invalid_argument on an unknown name.
ExperimentSpec default_spec(const std::string& name, Scale scale, std::uint64_t master_seed);

struct RatioRow {
  std::string instance_id;
  Cost dp_cost;
  double lv_mean_cost = 0.0;
  double ratio = 0.0;  ///< NaN when undefined (DP cost zero or infinite)
  bool row_update = false;
};

struct FailRateRow {
  Load r = 0;
  double mean_fail_rate = 0.0;
  std::size_t runs = 0;
};

struct TimingRow {
  std::string size_class;
  Algo algo = Algo::kLv;
  double median_ms = 0.0;
  double mean_ms = 0.0;
  std::size_t runs = 0;
};

struct ExperimentOutput {
  std::vector<CsvRow> rows;
  std::vector<std::string> errors;
  std::vector<RatioRow> ratios;        ///< exp2
  std::vector<FailRateRow> fail_rates; ///< exp4
  std::vector<TimingRow> timings;      ///< exp3
  std::vector<std::filesystem::path> files;
};

/// Runs every (instance, configuration, trial) cell, up to `threads` at a
/// time, and writes CSV artifacts into `out_dir` (created if missing). An
/// empty `out_dir` skips writing. Solver errors are recorded and the run
/// continues.
ExperimentOutput run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                unsigned threads = 1);

/// Thread cap from VNF_PLACER_THREADS (default 1); throws
/// std::invalid_argument unless it is a positive integer.
unsigned threads_from_env();

struct SummaryRow {
  std::string group;
  std::size_t count = 0;
  struct Stat {
    std::string metric;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double stddev = 0.0;  ///< sample standard deviation, 0 for one value
  };
  std::vector<Stat> stats;
};

/// Malformed CSV input; the message names the file and line.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-group statistics of the cost, ratio, time_ms and fail_rate columns
/// found in the given CSV files. Rows are grouped by (algo, r, row_update)
/// when an algo column exists, otherwise all rows form one group.
std::vector<SummaryRow> summarize(const std::vector<std::filesystem::path>& csv_files);
std::string format_summary(const std::vector<SummaryRow>& summary);

/// Command-line entry point. Exit codes: 0 success, 1 usage or input error,
/// 2 infeasible flow, 3 oracle budget exceeded.
int cli_main(int argc, const char* const* argv);

}  // namespace vnfp::harness

#endif  // VNFP_HARNESS_HPP

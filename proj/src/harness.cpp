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

#include "vnfp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "vnfp/dp.hpp"
#include "vnfp/randomized.hpp"
#include "vnfp/rng.hpp"

namespace vnfp::harness {

std::string_view to_string(Algo algo) {
  switch (algo) {
    case Algo::kDp:
      return "dp";
    case Algo::kLv:
      return "lv";
    case Algo::kMc:
      return "mc";
  }
  return "?";
}

std::optional<Algo> parse_algo(std::string_view text) {
  if (text == "dp") return Algo::kDp;
  if (text == "lv") return Algo::kLv;
  if (text == "mc") return Algo::kMc;
  return std::nullopt;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_row(const CsvRow& row) {
  char time_buf[32];
  std::snprintf(time_buf, sizeof(time_buf), "%.3f", row.time_ms);
  std::string out;
  out += row.instance_id;
  out += ',';
  out += to_string(row.algo);
  out += ',';
  out += std::to_string(row.seed);
  out += ',';
  out += std::to_string(row.trial);
  out += ',';
  out += vnfp::to_string(row.cost);
  out += ',';
  out += format_real(row.fail_rate);
  out += ',';
  out += time_buf;
  out += ',';
  if (row.r) out += std::to_string(*row.r);
  out += ',';
  if (row.row_update) out += *row.row_update ? "1" : "0";
  return out;
}

SolveOutcome solve(const Instance& inst, const std::string& instance_id,
                   const SolveConfig& config, std::size_t trial) {
  SolveOutcome out;
  out.row.instance_id = instance_id;
  out.row.algo = config.algo;
  out.row.seed = config.seed;
  out.row.trial = trial;
  switch (config.algo) {
    case Algo::kDp:
      out.result = dp::run_online(inst);
      break;
    case Algo::kLv:
      out.row.row_update = config.row_update;
      try {
        out.result = randomized::run_lv(inst, config.seed, config.row_update);
      } catch (const randomized::InfeasibleFlowError& e) {
        out.error = e.what();
        out.result.total_cost = Cost::infinity();
      }
      break;
    case Algo::kMc:
      out.row.r = config.r;
      out.row.row_update = config.row_update;
      out.result = randomized::run_mc(inst, {config.r, config.seed, config.row_update});
      break;
  }
  out.row.cost = out.result.total_cost;
  out.row.fail_rate = out.result.fail_rate;
  out.row.time_ms = out.result.wall_time_ms;
  return out;
}

std::string allocations_json(const std::string& instance_id,
                             const std::vector<SolveOutcome>& outcomes) {
  using Json = nlohmann::ordered_json;
  Json runs = Json::array();
  for (const auto& o : outcomes) {
    Json labels = Json::array();
    for (FlowLabel l : o.result.labels) labels.push_back(vnfp::to_string(l));
    Json allocs = Json::array();
    for (const auto& a : o.result.allocations) {
      Json pairs = Json::array();
      for (const auto& [server, amount] : a) pairs.push_back(Json::array({server, amount}));
      allocs.push_back(std::move(pairs));
    }
    Json run{{"algo", to_string(o.row.algo)},
             {"trial", o.row.trial},
             {"seed", o.row.seed},
             {"cost", vnfp::to_string(o.row.cost)},
             {"labels", std::move(labels)},
             {"allocations", std::move(allocs)}};
    if (o.error) run["error"] = *o.error;
    runs.push_back(std::move(run));
  }
  return Json{{"instance_id", instance_id}, {"runs", std::move(runs)}}.dump(1) + "\n";
}

// ---------------------------------------------------------------------------
// Experiments

ExperimentSpec default_spec(const std::string& name, Scale scale, std::uint64_t master_seed) {
  ExperimentSpec s;
  s.name = name;
  s.scale = scale;
  s.master_seed = master_seed;
  const bool desk = scale == Scale::kDesk;
  if (name == "exp1") {
    s.classes = {desk ? SizeClass{"", 20, 100, 50} : SizeClass{"", 50, 400, 200}};
    s.instances = desk ? 10 : 35;
    s.trials = 1;
  } else if (name == "exp2") {
    s.classes = {desk ? SizeClass{"", 20, 100, 50} : SizeClass{"", 50, 400, 200}};
    s.instances = desk ? 10 : 30;
    s.trials = desk ? 10 : 30;
  } else if (name == "exp3") {
    if (desk) {
      s.classes = {{"A", 20, 40, 50}, {"B", 20, 200, 50}, {"C", 20, 200, 250}};
    } else {
      s.classes = {{"A", 50, 100, 200}, {"B", 50, 500, 200}, {"C", 50, 500, 1000}};
    }
    s.instances = desk ? 10 : 30;
    s.trials = 1;
    s.mc_r = 50;
    s.timing_repeats = 3;
  } else if (name == "exp4") {
    s.classes = {desk ? SizeClass{"", 20, 200, 400} : SizeClass{"", 50, 500, 1000}};
    s.instances = 20;
    s.trials = 1;
    for (Load r = 5; r <= 50; r += 5) s.r_grid.push_back(r);
  } else {
    throw std::invalid_argument("unknown experiment '" + name + "' (expected exp1..exp4)");
  }
  return s;
}

unsigned threads_from_env() {
  const char* v = std::getenv("VNF_PLACER_THREADS");
  if (v == nullptr || *v == '\0') return 1;
  unsigned n = 0;
  const char* end = v + std::char_traits<char>::length(v);
  const auto res = std::from_chars(v, end, n);
  if (res.ec != std::errc() || res.ptr != end || n == 0) {
    throw std::invalid_argument(std::string("VNF_PLACER_THREADS must be a positive integer, got '") +
                                v + "'");
  }
  return n;
}

namespace {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, count)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

struct Cell {
  std::size_t instance = 0;  // index into the generated instance list
  SolveConfig config;
  std::size_t trial = 0;
};

std::string instance_label(const ExperimentSpec& spec, const SizeClass& c, std::size_t idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03zu", idx);
  return spec.name + "-" + (c.label.empty() ? std::string() : c.label + "-") + buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void write_text(const std::filesystem::path& file, const std::string& text,
                std::vector<std::filesystem::path>& files) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  files.push_back(file);
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                unsigned threads) {
  if (spec.classes.empty() || spec.instances == 0) {
    throw std::invalid_argument("experiment needs at least one size class and one instance");
  }

  struct Generated {
    std::string id;
    std::string size_class;
    std::uint64_t global_index = 0;
    Instance inst;
  };
  std::vector<Generated> instances;
  for (std::size_t c = 0; c < spec.classes.size(); ++c) {
    const auto& sc = spec.classes[c];
    for (std::size_t i = 0; i < spec.instances; ++i) {
      const std::uint64_t g = c * spec.instances + i;
      RandomInstanceParams p;
      p.nodes = sc.nodes;
      p.flows = sc.flows;
      p.max_demand = sc.max_demand;
      instances.push_back({instance_label(spec, sc, i), sc.label, g,
                           gen_random(p, derive_seed(spec.master_seed, g, 0))});
    }
  }

  std::vector<Cell> cells;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const std::uint64_t g = instances[k].global_index;
    auto trial_seed = [&](std::size_t t) { return derive_seed(spec.master_seed, g, t + 1); };
    if (spec.name == "exp1" || spec.name == "exp2") {
      cells.push_back({k, {Algo::kDp, trial_seed(0), 1, false}, 0});
      for (bool row : {false, true}) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
          cells.push_back({k, {Algo::kLv, trial_seed(t), 1, row}, t});
        }
      }
    } else if (spec.name == "exp3") {
      cells.push_back({k, {Algo::kLv, trial_seed(0), 1, false}, 0});
      cells.push_back({k, {Algo::kMc, trial_seed(0), spec.mc_r, false}, 0});
    } else if (spec.name == "exp4") {
      for (Load r : spec.r_grid) cells.push_back({k, {Algo::kMc, trial_seed(0), r, false}, 0});
    } else {
      throw std::invalid_argument("unknown experiment '" + spec.name + "'");
    }
  }

  std::vector<SolveOutcome> results(cells.size());
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const Generated& g = instances[cell.instance];
    SolveOutcome best;
    try {
      best = solve(g.inst, g.id, cell.config, cell.trial);
      for (std::size_t rep = 1; rep < spec.timing_repeats; ++rep) {
        const SolveOutcome again = solve(g.inst, g.id, cell.config, cell.trial);
        best.row.time_ms = std::min(best.row.time_ms, again.row.time_ms);
      }
    } catch (const std::exception& e) {
      best.row = {g.id, cell.config.algo, cell.config.seed, cell.trial, Cost::infinity(), 0.0, 0.0, {}, {}};
      if (cell.config.algo != Algo::kDp) best.row.row_update = cell.config.row_update;
      if (cell.config.algo == Algo::kMc) best.row.r = cell.config.r;
      best.error = e.what();
    }
    best.result.allocations.clear();  // not needed past this point
    results[i] = std::move(best);
  });

  ExperimentOutput out;
  for (const auto& r : results) {
    out.rows.push_back(r.row);
    if (r.error) {
      out.errors.push_back(r.row.instance_id + "," + std::string(to_string(r.row.algo)) + "," +
                           std::to_string(r.row.trial) + "," + *r.error);
    }
  }

  if (spec.name == "exp2") {
    for (const auto& g : instances) {
      Cost dp_cost = Cost::infinity();
      std::map<bool, std::vector<double>> lv;
      for (const auto& row : out.rows) {
        if (row.instance_id != g.id) continue;
        if (row.algo == Algo::kDp) dp_cost = row.cost;
        if (row.algo == Algo::kLv && row.cost.is_finite()) lv[*row.row_update].push_back(row.cost.value());
      }
      for (bool mode : {false, true}) {
        RatioRow rr;
        rr.instance_id = g.id;
        rr.dp_cost = dp_cost;
        rr.row_update = mode;
        const auto& v = lv[mode];
        rr.lv_mean_cost = v.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        rr.ratio = (dp_cost.is_finite() && dp_cost.value() > 0.0)
                       ? rr.lv_mean_cost / dp_cost.value()
                       : std::numeric_limits<double>::quiet_NaN();
        out.ratios.push_back(rr);
      }
    }
  } else if (spec.name == "exp3") {
    for (const auto& sc : spec.classes) {
      for (Algo a : {Algo::kLv, Algo::kMc}) {
        std::vector<double> times;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (instances[cells[i].instance].size_class == sc.label && cells[i].config.algo == a) {
            times.push_back(results[i].row.time_ms);
          }
        }
        TimingRow t;
        t.size_class = sc.label;
        t.algo = a;
        t.runs = times.size();
        t.median_ms = median(times);
        t.mean_ms = times.empty() ? 0.0 : std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
        out.timings.push_back(t);
      }
    }
  } else if (spec.name == "exp4") {
    for (Load r : spec.r_grid) {
      FailRateRow fr;
      fr.r = r;
      double sum = 0.0;
      for (const auto& row : out.rows) {
        if (row.r && *row.r == r) {
          sum += row.fail_rate;
          ++fr.runs;
        }
      }
      fr.mean_fail_rate = fr.runs == 0 ? 0.0 : sum / static_cast<double>(fr.runs);
      out.fail_rates.push_back(fr);
    }
  }

  if (out_dir.empty()) return out;
  std::filesystem::create_directories(out_dir);

  std::string main_csv = std::string(kCsvHeader) + "\n";
  for (const auto& row : out.rows) main_csv += format_row(row) + "\n";
  const auto main_path = out_dir / (spec.name + ".csv");
  write_text(main_path, main_csv, out.files);

  if (!out.errors.empty()) {
    std::string text = "instance_id,algo,trial,message\n";
    for (const auto& e : out.errors) text += e + "\n";
    write_text(out_dir / (spec.name + "_errors.csv"), text, out.files);
  }
  if (!out.ratios.empty()) {
    std::string text = "instance_id,dp_cost,lv_mean_cost,ratio,row_update\n";
    for (const auto& r : out.ratios) {
      text += r.instance_id + "," + vnfp::to_string(r.dp_cost) + "," + format_real(r.lv_mean_cost) +
              "," + format_real(r.ratio) + "," + (r.row_update ? "1" : "0") + "\n";
    }
    write_text(out_dir / "exp2_ratios.csv", text, out.files);
  }
  if (!out.timings.empty()) {
    std::string text = "size_class,algo,runs,median_time_ms,mean_time_ms\n";
    for (const auto& t : out.timings) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), ",%zu,%.3f,%.3f\n", t.runs, t.median_ms, t.mean_ms);
      text += t.size_class + "," + std::string(to_string(t.algo)) + buf;
    }
    write_text(out_dir / "exp3_timings.csv", text, out.files);
  }
  if (!out.fail_rates.empty()) {
    std::string text = "r,runs,mean_fail_rate\n";
    for (const auto& f : out.fail_rates) {
      text += std::to_string(f.r) + "," + std::to_string(f.runs) + "," + format_real(f.mean_fail_rate) + "\n";
    }
    write_text(out_dir / "exp4_fail_rates.csv", text, out.files);
  }

  write_text(out_dir / (spec.name + "_summary.csv"), format_summary(summarize({main_path})), out.files);

  nlohmann::ordered_json meta{
      {"experiment", spec.name},
      {"scale", spec.scale == Scale::kDesk ? "desk" : "full"},
      {"scale_note", spec.scale == Scale::kDesk
                         ? "desk sizes are fixed defaults chosen to run in seconds, not an exact halving of the full sizes"
                         : "full sizes"},
      {"master_seed", spec.master_seed},
      {"instances_per_class", spec.instances},
      {"trials", spec.trials},
      {"seed_derivation",
       "instance seed = derive_seed(master, index, 0); trial t seed = derive_seed(master, index, t + 1)"},
      {"rng", "mt19937_64, 53-bit uniform doubles"},
      {"timing", "wall time of the flow loop only; min over timing_repeats runs"},
      {"timing_repeats", spec.timing_repeats},
  };
  nlohmann::ordered_json classes = nlohmann::ordered_json::array();
  for (const auto& c : spec.classes) {
    classes.push_back({{"label", c.label}, {"nodes", c.nodes}, {"flows", c.flows}, {"max_demand", c.max_demand}});
  }
  meta["size_classes"] = std::move(classes);
  if (spec.name == "exp3") meta["mc_r"] = spec.mc_r;
  if (!spec.r_grid.empty()) meta["r_grid"] = spec.r_grid;
  meta["instance_generator"] = instances.front().inst.metadata().params;
  write_text(out_dir / (spec.name + "_metadata.json"), meta.dump(2) + "\n", out.files);
  return out;
}

}  // namespace vnfp::harness

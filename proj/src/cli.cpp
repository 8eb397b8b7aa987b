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

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vnfp/dp.hpp"
#include "vnfp/harness.hpp"
#include "vnfp/oracle.hpp"
#include "vnfp/rng.hpp"

namespace vnfp::harness {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitBudget = 3;

struct GenArgs {
  std::string kind;
  std::size_t nodes = 50;
  std::size_t flows = 400;
  Load max_demand = 200;
  double epsilon = 0.01;
  std::size_t path_min = 1;
  std::size_t path_max = 0;
  bool extend = false;
  std::uint64_t seed = 0;
  std::string out;
};

struct SolveArgs {
  std::string algo;
  std::string instance;
  std::uint64_t seed = 0;
  Load r = 1;
  bool row_update = false;
  std::size_t trials = 1;
  std::string csv;
  std::string allocations;
};

struct OracleArgs {
  std::string instance;
  std::uint64_t max_states = oracle::OracleBudget{}.max_states;
};

struct ExperimentArgs {
  std::string name;
  std::uint64_t seed = 0;
  std::string out;
  std::string scale = "desk";
};

struct SummarizeArgs {
  std::vector<std::string> csv;
  std::string out;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_gen(const GenArgs& a) {
  Instance inst;
  if (a.kind == "random") {
    RandomInstanceParams p;
    p.nodes = a.nodes;
    p.flows = a.flows;
    p.max_demand = a.max_demand;
    p.path_min = a.path_min;
    p.path_max = a.path_max;
    inst = gen_random(p, a.seed);
  } else if (a.kind == "adversarial") {
    inst = gen_adversarial(a.flows);
    if (a.extend) {
      const RunResult first = dp::run_online(inst);
      inst = adversary_extend(inst, first.allocations);
    }
  } else {
    inst = gen_pq(a.flows, a.epsilon);
  }
  save(inst, a.out);
  return kExitOk;
}

int run_solve(const SolveArgs& a) {
  const Instance inst = load(a.instance);
  const std::string id = std::filesystem::path(a.instance).stem().string();
  std::vector<SolveOutcome> outcomes;
  bool infeasible = false;
  std::string csv = std::string(kCsvHeader) + "\n";
  for (std::size_t t = 0; t < a.trials; ++t) {
    SolveConfig cfg;
    cfg.algo = *parse_algo(a.algo);
    cfg.seed = t == 0 ? a.seed : derive_seed(a.seed, 0, t);
    cfg.r = a.r;
    cfg.row_update = a.row_update;
    SolveOutcome o = solve(inst, id, cfg, t);
    if (o.error) std::cerr << "trial " << t << ": " << *o.error << "\n";
    for (FlowLabel l : o.result.labels) infeasible |= l == FlowLabel::kInfeasible;
    infeasible |= o.error.has_value();
    csv += format_row(o.row) + "\n";
    outcomes.push_back(std::move(o));
  }
  write_file(a.csv, csv);
  if (!a.allocations.empty()) write_file(a.allocations, allocations_json(id, outcomes));
  return infeasible ? kExitInfeasible : kExitOk;
}

int run_oracle(const OracleArgs& a) {
  const Instance inst = load(a.instance);
  const auto best = oracle::offline_optimal(inst, {a.max_states});
  std::cout << vnfp::to_string(best.cost) << "\n";
  return best.cost.is_finite() ? kExitOk : kExitInfeasible;
}

int run_experiment_cmd(const ExperimentArgs& a) {
  const Scale scale = a.scale == "full" ? Scale::kFull : Scale::kDesk;
  const ExperimentSpec spec = default_spec(a.name, scale, a.seed);
  const ExperimentOutput out = run_experiment(spec, a.out, threads_from_env());
  for (const auto& f : out.files) std::cout << f.string() << "\n";
  if (!out.errors.empty()) std::cerr << out.errors.size() << " run(s) recorded errors\n";
  return kExitOk;
}

int run_summarize(const SummarizeArgs& a) {
  std::vector<std::filesystem::path> paths(a.csv.begin(), a.csv.end());
  const std::string text = format_summary(summarize(paths));
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_file(a.out, text);
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Online VNF placement solvers and experiments", "vnf_placer"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", gen.kind, "Generator")
      ->required()
      ->check(CLI::IsMember({"random", "adversarial", "pq"}));
  gen_cmd->add_option("--nodes", gen.nodes, "Servers (random)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--flows", gen.flows, "Flows (random), m (adversarial, pq)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--max-demand", gen.max_demand, "Largest demand (random)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--epsilon", gen.epsilon, "P-server slope (pq)")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--path-min", gen.path_min, "Shortest path (random)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--path-max", gen.path_max, "Longest path, 0 = nodes (random)");
  gen_cmd->add_flag("--extend", gen.extend, "Append the adversary's second half against DP (adversarial)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--out", gen.out, "Output instance file")->required();

  SolveArgs sol;
  auto* solve_cmd = app.add_subcommand("solve", "Run an online algorithm on an instance");
  solve_cmd->add_option("--algo", sol.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"dp", "lv", "mc"}));
  solve_cmd->add_option("--instance", sol.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--seed", sol.seed, "Seed of trial 0");
  solve_cmd->add_option("--r", sol.r, "Monte Carlo sampling rounds per flow")->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--row-update", sol.row_update, "Refresh only the picked row between draws");
  solve_cmd->add_option("--trials", sol.trials, "Number of trials")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--csv", sol.csv, "Output CSV")->required();
  solve_cmd->add_option("--allocations", sol.allocations, "Optional JSON dump of allocations");

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive offline optimum of a small instance");
  oracle_cmd->add_option("--instance", orc.instance, "Instance file")->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--max-states", orc.max_states, "Enumeration budget");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a named experiment and write CSV files");
  exp_cmd->add_option("--name", exp.name, "Experiment")
      ->required()
      ->check(CLI::IsMember({"exp1", "exp2", "exp3", "exp4"}));
  exp_cmd->add_option("--seed", exp.seed, "Master seed");
  exp_cmd->add_option("--out", exp.out, "Output directory")->required();
  exp_cmd->add_option("--scale", exp.scale, "Instance sizes")->check(CLI::IsMember({"desk", "full"}));

  SummarizeArgs sum;
  auto* sum_cmd = app.add_subcommand("summarize", "Per-group statistics of result CSV files");
  sum_cmd->add_option("--csv", sum.csv, "Input CSV files")->required();
  sum_cmd->add_option("--out", sum.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(sol);
    if (*oracle_cmd) return run_oracle(orc);
    if (*exp_cmd) return run_experiment_cmd(exp);
    return run_summarize(sum);
  } catch (const oracle::BudgetExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace vnfp::harness

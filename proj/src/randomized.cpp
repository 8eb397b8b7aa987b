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

#include "vnfp/randomized.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace vnfp::randomized {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

InfeasibleFlowError::InfeasibleFlowError(std::size_t flow_id)
    : std::runtime_error("flow " + std::to_string(flow_id) +
                         " cannot be served at finite cost"),
      flow_id_(flow_id) {}

ProbabilityTable::ProbabilityTable(std::vector<ServerId> path, Load demand)
    : path_(std::move(path)),
      demand_(demand),
      raw_(path_.size() * static_cast<std::size_t>(demand), 0.0),
      prob_(raw_.size(), 0.0),
      row_mass_(path_.size(), 0.0),
      row_free_(path_.size(), 0) {
  if (demand < 1) throw std::invalid_argument("probability table: demand must be >= 1");
}

std::optional<std::size_t> ProbabilityTable::row_of(ServerId server) const {
  const auto it = std::lower_bound(path_.begin(), path_.end(), server);
  if (it == path_.end() || *it != server) return std::nullopt;
  return static_cast<std::size_t>(it - path_.begin());
}

double ProbabilityTable::raw(ServerId server, Load amount) const {
  const auto r = row_of(server);
  if (!r || amount < 1 || amount > demand_) return 0.0;
  return raw_[*r * cols() + static_cast<std::size_t>(amount - 1)];
}

double ProbabilityTable::prob(ServerId server, Load amount) const {
  const auto r = row_of(server);
  if (!r || amount < 1 || amount > demand_) return 0.0;
  return prob_[*r * cols() + static_cast<std::size_t>(amount - 1)];
}

double ProbabilityTable::row_mass(ServerId server) const {
  const auto r = row_of(server);
  return r ? row_mass_[*r] : 0.0;
}

double ProbabilityTable::total_mass() const {
  double sum = 0.0;
  for (double m : row_mass_) sum += m;
  return sum;
}

std::optional<Pick> ProbabilityTable::free_pick() const {
  std::optional<Pick> best;
  for (std::size_t r = 0; r < path_.size(); ++r) {
    if (row_free_[r] > 0 && (!best || row_free_[r] > best->amount)) {
      best = Pick{path_[r], row_free_[r]};
    }
  }
  return best;
}

void ProbabilityTable::fill_row(std::size_t row, std::span<const Load> loads,
                                std::span<const Server> servers) {
  const ServerId s = path_[row];
  const auto& f = servers[s].capability;
  const Load load = loads[s];
  const Cost base = eval(f, load);
  double* out = raw_.data() + row * cols();
  row_free_[row] = 0;
  for (Load y = 1; y <= demand_; ++y) {
    const Cost inc = base.is_infinite() ? Cost::infinity() : eval(f, load + y) - base;
    double w = 0.0;
    if (inc.is_finite()) {
      if (inc.value() == 0.0) {
        w = kInf;
        row_free_[row] = y;
      } else {
        w = static_cast<double>(y) / inc.value();
      }
    }
    out[y - 1] = w;
  }
  entries_computed_ += static_cast<std::uint64_t>(demand_);
}

double ProbabilityTable::finite_row_sum(std::size_t row) const {
  double sum = 0.0;
  const double* w = raw_.data() + row * cols();
  for (std::size_t j = 0; j < cols(); ++j) {
    if (w[j] != kInf) sum += w[j];
  }
  return sum;
}

void ProbabilityTable::normalize_all() {
  double total = 0.0;
  for (std::size_t r = 0; r < path_.size(); ++r) total += finite_row_sum(r);
  for (std::size_t r = 0; r < path_.size(); ++r) {
    double mass = 0.0;
    for (std::size_t j = 0; j < cols(); ++j) {
      const std::size_t k = r * cols() + j;
      prob_[k] = (total > 0.0 && raw_[k] != kInf) ? raw_[k] / total : 0.0;
      mass += prob_[k];
    }
    row_mass_[r] = mass;
  }
}

void ProbabilityTable::rebuild(std::span<const Load> loads, std::span<const Server> servers) {
  for (std::size_t r = 0; r < path_.size(); ++r) fill_row(r, loads, servers);
  normalize_all();
}

void ProbabilityTable::update_row(ServerId server, std::span<const Load> loads,
                                  std::span<const Server> servers) {
  const auto r = row_of(server);
  if (!r) throw std::invalid_argument("update_row: server not on the flow's path");
  const double kept = row_mass_[*r];
  fill_row(*r, loads, servers);
  const double fresh = finite_row_sum(*r);
  if (!(kept > 0.0) || !(fresh > 0.0)) {
    normalize_all();
    return;
  }
  double mass = 0.0;
  for (std::size_t j = 0; j < cols(); ++j) {
    const std::size_t k = *r * cols() + j;
    prob_[k] = raw_[k] != kInf ? kept * (raw_[k] / fresh) : 0.0;
    mass += prob_[k];
  }
  row_mass_[*r] = mass;
}

ProbabilityTable build_table(std::span<const Load> loads, const Flow& flow,
                             std::span<const Server> servers) {
  ProbabilityTable t(flow.path, flow.demand);
  t.rebuild(loads, servers);
  if (t.dead()) throw AllDeadError();
  return t;
}

Pick sample(const ProbabilityTable& t, Rng& rng) {
  if (auto free = t.free_pick()) return *free;
  const double total = t.total_mass();
  if (!(total > 0.0)) throw AllDeadError();

  const double u = rng.uniform01() * total;
  const std::size_t rows = t.path_.size();
  const std::size_t cols = t.cols();
  double before = 0.0;
  std::size_t row = rows;
  std::size_t last_positive_row = rows;
  for (std::size_t r = 0; r < rows; ++r) {
    if (t.row_mass_[r] > 0.0) last_positive_row = r;
    if (u < before + t.row_mass_[r]) {
      row = r;
      break;
    }
    before += t.row_mass_[r];
  }
  if (row == rows) {
    // Rounding pushed u past the final cumulative mass.
    row = last_positive_row;
    before = total - t.row_mass_[row];
  }
  const double local = u - before;
  const double* p = t.prob_.data() + row * cols;
  double cum = 0.0;
  std::size_t last_positive = cols;
  for (std::size_t j = 0; j < cols; ++j) {
    if (p[j] > 0.0) last_positive = j;
    cum += p[j];
    if (local < cum && p[j] > 0.0) return Pick{t.path_[row], static_cast<Load>(j + 1)};
  }
  return Pick{t.path_[row], static_cast<Load>(last_positive + 1)};
}

namespace {

struct Attempt {
  std::vector<Load> loads;
  std::vector<Pick> picks;
  Load served = 0;
  bool dead = false;
  double max_normalization_error = 0.0;
  std::uint64_t normalizations = 0;
};

// Draws picks on a private copy of the loads until the flow is covered,
// the table dies, or `max_rounds` picks were made (0 = unbounded).
Attempt draw_until_covered(const AllocationState& state, const Flow& flow,
                           std::span<const Server> servers, Rng& rng, bool row_update,
                           Load max_rounds, FlowStats* stats) {
  Attempt a;
  a.loads.assign(state.loads().begin(), state.loads().end());
  ProbabilityTable table(flow.path, flow.demand);
  bool built = false;
  while (a.served < flow.demand &&
         (max_rounds == 0 || static_cast<Load>(a.picks.size()) < max_rounds)) {
    if (!built || !row_update) {
      table.rebuild(a.loads, servers);
      built = true;
      if (stats != nullptr) ++stats->rebuilds;
    } else {
      table.update_row(a.picks.back().server, a.loads, servers);
    }
    const double mass = table.total_mass();
    if (mass > 0.0) {
      a.max_normalization_error = std::max(a.max_normalization_error, std::fabs(mass - 1.0));
      ++a.normalizations;
    }
    if (table.dead()) {
      a.dead = true;
      break;
    }
    const Pick p = sample(table, rng);
    a.loads[p.server] += p.amount;
    a.served += p.amount;
    a.picks.push_back(p);
  }
  if (stats != nullptr) {
    stats->work += table.entries_computed();
    stats->picks += a.picks.size();
  }
  return a;
}

// Removes the overshoot from the last pick and prices the allocation.
FlowDecision finish(const AllocationState& state, const Flow& flow,
                    std::span<const Server> servers, Attempt& a) {
  const Load excess = a.served - flow.demand;
  if (excess > 0) a.loads[a.picks.back().server] -= excess;
  FlowDecision d;
  for (ServerId s : flow.path) {
    const Load x = a.loads[s] - state.load(s);
    if (x > 0) d.allocation[s] = x;
  }
  d.marginal_cost = allocation_marginal(servers, state.loads(), d.allocation);
  return d;
}

FlowOutcome outcome_from(Attempt& a) {
  FlowOutcome out;
  out.picks = std::move(a.picks);
  out.max_normalization_error = a.max_normalization_error;
  out.normalizations = a.normalizations;
  return out;
}

}  // namespace

FlowOutcome lv_serve_flow(const AllocationState& state, const Flow& flow,
                          std::span<const Server> servers, Rng& rng, SamplerOptions options,
                          FlowStats* stats) {
  Attempt a = draw_until_covered(state, flow, servers, rng, options.row_update, 0, stats);
  if (a.dead) throw InfeasibleFlowError(flow.id);
  FlowDecision d = finish(state, flow, servers, a);
  FlowOutcome out = outcome_from(a);
  out.label = FlowLabel::kSuccess;
  out.decision = std::move(d);
  return out;
}

FlowOutcome mc_serve_flow(const AllocationState& state, const Flow& flow,
                          std::span<const Server> servers, Rng& rng, const McConfig& cfg,
                          FlowStats* stats) {
  if (cfg.r < 1) throw std::invalid_argument("mc: r must be >= 1");
  const Load rounds = (flow.demand + cfg.r - 1) / cfg.r;
  Attempt a = draw_until_covered(state, flow, servers, rng, cfg.row_update, rounds, stats);
  if (a.dead || a.served < flow.demand) {
    FlowOutcome out = outcome_from(a);
    out.label = FlowLabel::kFail;
    return out;
  }
  FlowDecision d = finish(state, flow, servers, a);
  FlowOutcome out = outcome_from(a);
  out.label = FlowLabel::kSuccess;
  out.decision = std::move(d);
  return out;
}

namespace {

template <class ServeFn>
RunResult run_sampler(const Instance& inst, ServeFn serve) {
  RunResult result;
  AllocationState state(inst.num_servers());
  result.flow_stats.resize(inst.num_flows());
  result.labels.reserve(inst.num_flows());
  std::size_t fails = 0;

  const auto start = std::chrono::steady_clock::now();
  for (const auto& flow : inst.flows()) {
    FlowOutcome out = serve(state, flow, &result.flow_stats[flow.id]);
    result.max_normalization_error =
        std::max(result.max_normalization_error, out.max_normalization_error);
    result.normalizations += out.normalizations;
    if (out.label == FlowLabel::kSuccess) {
      state.commit(out.decision.allocation, out.decision.marginal_cost);
    } else {
      state.commit_empty();
      ++fails;
    }
    result.labels.push_back(out.label);
  }
  const auto stop = std::chrono::steady_clock::now();

  result.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.allocations = state.per_flow();
  result.final_loads.assign(state.loads().begin(), state.loads().end());
  result.total_cost = total_cost(inst.servers(), state.loads());
  result.fail_rate =
      inst.num_flows() == 0 ? 0.0 : static_cast<double>(fails) / static_cast<double>(inst.num_flows());
  return result;
}

}  // namespace

RunResult run_lv(const Instance& inst, std::uint64_t seed, bool row_update) {
  Rng rng(seed);
  return run_sampler(inst, [&](const AllocationState& state, const Flow& flow, FlowStats* st) {
    return lv_serve_flow(state, flow, inst.servers(), rng, SamplerOptions{row_update}, st);
  });
}

RunResult run_mc(const Instance& inst, const McConfig& cfg) {
  Rng rng(cfg.seed);
  return run_sampler(inst, [&](const AllocationState& state, const Flow& flow, FlowStats* st) {
    return mc_serve_flow(state, flow, inst.servers(), rng, cfg, st);
  });
}

}  // namespace vnfp::randomized

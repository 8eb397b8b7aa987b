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

#include "vnfp/dp.hpp"

#include <chrono>
#include <stdexcept>

namespace vnfp::dp {

DpTable::DpTable(std::vector<ServerId> path, Load demand)
    : path_(std::move(path)),
      demand_(demand),
      values_((path_.size() + 1) * static_cast<std::size_t>(demand + 1), Cost::infinity()),
      choices_(values_.size(), 0) {}

DpTable build_table(std::span<const Load> loads, const Flow& flow,
                    std::span<const Server> servers) {
  if (flow.path.empty()) throw std::invalid_argument("dp: flow path is empty");
  const Load d = flow.demand;
  DpTable t(flow.path, d);
  const std::size_t nk = flow.path.size();

  // Row 0: nothing served yet.
  t.values_[t.index(0, 0)] = Cost::zero();

  std::vector<Cost> delta(static_cast<std::size_t>(d + 1));
  for (std::size_t i = 1; i <= nk; ++i) {
    const ServerId s = flow.path[i - 1];
    const auto& f = servers[s].capability;
    for (Load x = 0; x <= d; ++x) delta[static_cast<std::size_t>(x)] = marginal(f, loads[s], x);

    if (i == 1) {
      for (Load w = 0; w <= d; ++w) {
        t.values_[t.index(1, w)] = delta[static_cast<std::size_t>(w)];
        t.choices_[t.index(1, w)] = w;
        ++t.work_;
      }
      continue;
    }
    for (Load w = 0; w <= d; ++w) {
      Cost best = Cost::infinity();
      Load best_x = 0;
      bool found = false;
      for (Load x = 0; x <= w; ++x) {
        ++t.work_;
        const Cost c = t.values_[t.index(i - 1, w - x)] + delta[static_cast<std::size_t>(x)];
        // Strict comparison keeps the smallest amount among ties.
        if (!found || c < best) {
          best = c;
          best_x = x;
          found = true;
        }
      }
      t.values_[t.index(i, w)] = best;
      t.choices_[t.index(i, w)] = best_x;
    }
  }
  return t;
}

FlowDecision traceback(const DpTable& table) {
  FlowDecision out;
  Load remaining = table.demand();
  for (std::size_t row = table.path_size(); row >= 1; --row) {
    const Load x = table.choice(row, remaining);
    if (x > 0) out.allocation[table.path()[row - 1]] = x;
    remaining -= x;
  }
  out.marginal_cost = table.value(table.path_size(), table.demand());
  return out;
}

FlowDecision solve_flow(const AllocationState& state, const Flow& flow,
                        std::span<const Server> servers, FlowStats* stats) {
  const DpTable table = build_table(state.loads(), flow, servers);
  if (stats != nullptr) {
    stats->work += table.work();
    stats->rebuilds += 1;
  }
  return traceback(table);
}

RunResult run_online(const Instance& inst) {
  RunResult result;
  AllocationState state(inst.num_servers());
  result.flow_stats.resize(inst.num_flows());
  result.labels.reserve(inst.num_flows());

  const auto start = std::chrono::steady_clock::now();
  for (const auto& flow : inst.flows()) {
    const FlowDecision decision =
        solve_flow(state, flow, inst.servers(), &result.flow_stats[flow.id]);
    state.commit(decision.allocation, decision.marginal_cost);
    result.labels.push_back(decision.marginal_cost.is_finite() ? FlowLabel::kSuccess
                                                               : FlowLabel::kInfeasible);
  }
  const auto stop = std::chrono::steady_clock::now();

  result.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  result.allocations = state.per_flow();
  result.final_loads.assign(state.loads().begin(), state.loads().end());
  result.total_cost = total_cost(inst.servers(), state.loads());
  return result;
}

}  // namespace vnfp::dp

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

/// \file vnfp/run.hpp
///
/// State and result types shared by the online solvers.

#ifndef VNFP_RUN_HPP
#define VNFP_RUN_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vnfp/instance.hpp"

namespace vnfp {

enum class FlowLabel { kSuccess, kFail, kInfeasible };

std::string_view to_string(FlowLabel label);

/// Per-server loads plus the committed allocation of every processed flow.
/// Commits are irrevocable: there is no way to remove a flow once recorded.
class AllocationState {
 public:
  explicit AllocationState(std::size_t num_servers) : loads_(num_servers, 0) {}

  std::span<const Load> loads() const { return loads_; }
  Load load(ServerId s) const { return loads_[s]; }

  /// Adds `allocation` to the loads and records it with its marginal cost.
  void commit(const Allocation& allocation, Cost marginal_cost);
  /// Records a flow that left no allocation behind (a rolled-back FAIL).
  void commit_empty();

  const std::vector<Allocation>& per_flow() const { return per_flow_; }
  /// Running sum of committed marginal costs.
  Cost accumulated_cost() const { return accumulated_; }

 private:
  std::vector<Load> loads_;
  std::vector<Allocation> per_flow_;
  Cost accumulated_;
};

/// Sum over servers of f_i(load_i).
Cost total_cost(std::span<const Server> servers, std::span<const Load> loads);

/// Sum over the allocation of f_i(base_i + x_i) - f_i(base_i), in server order.
Cost allocation_marginal(std::span<const Server> servers, std::span<const Load> base,
                         const Allocation& allocation);

struct FlowDecision {
  Allocation allocation;
  Cost marginal_cost;
};

/// Work counters for one flow. `work` counts DP (i, omega, delta) triples or
/// probability-table entry computations; `picks` counts samples drawn.
struct FlowStats {
  std::uint64_t work = 0;
  std::uint64_t picks = 0;
  std::uint64_t rebuilds = 0;
};

struct RunResult {
  Cost total_cost;
  std::vector<Allocation> allocations;  ///< one per flow; empty for FAIL
  std::vector<FlowLabel> labels;
  std::vector<Load> final_loads;
  double fail_rate = 0.0;
  double wall_time_ms = 0.0;
  std::vector<FlowStats> flow_stats;
  /// Largest |sum P - 1| seen over every normalization (randomized only).
  double max_normalization_error = 0.0;
  std::uint64_t normalizations = 0;
};

/// Recomputes final loads and the total cost from `allocations`.
Cost rederive_total_cost(const Instance& inst, std::span<const Allocation> allocations);

}  // namespace vnfp

#endif  // VNFP_RUN_HPP

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

/// \file vnfp/oracle.hpp
///
/// Brute-force references for small instances. Both searches enumerate
/// compositions of each flow's demand over its path explicitly and share no
/// code with the online solvers beyond capability evaluation.

#ifndef VNFP_ORACLE_HPP
#define VNFP_ORACLE_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "vnfp/run.hpp"

namespace vnfp::oracle {

struct OracleBudget {
  std::uint64_t max_states = 10'000'000;
};

class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(std::uint64_t needed, std::uint64_t budget);
  std::uint64_t needed() const { return needed_; }

 private:
  std::uint64_t needed_;
};

/// Number of ways to split `demand` into `parts` ordered nonnegative
/// integers, saturated at UINT64_MAX.
std::uint64_t composition_count(Load demand, std::size_t parts);

struct PerFlowOptimum {
  Cost cost;
  Allocation allocation;
  std::uint64_t compositions = 0;
};

/// Exact minimum of sum_i f_i(load_i + x_i) - f_i(load_i) over every
/// composition x of the flow's demand across its path.
PerFlowOptimum per_flow_optimal(std::span<const Load> loads, const Flow& flow,
                                std::span<const Server> servers, OracleBudget budget = {});

struct OfflineOptimum {
  Cost cost;
  std::vector<Allocation> allocations;
  std::uint64_t nodes_visited = 0;
};

/// Exact minimum of sum_i f_i(u_i) with every flow fully served, all flows
/// known in advance. Branch-and-bound over the product of per-flow
/// compositions; a branch is cut once its partial cost exceeds the best
/// complete solution, which is exact because costs never decrease as load
/// is added.
OfflineOptimum offline_optimal(const Instance& inst, OracleBudget budget = {});

}  // namespace vnfp::oracle

#endif  // VNFP_ORACLE_HPP

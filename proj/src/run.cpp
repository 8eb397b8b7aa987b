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

#include "vnfp/run.hpp"

namespace vnfp {

std::string_view to_string(FlowLabel label) {
  switch (label) {
    case FlowLabel::kSuccess:
      return "SUCCESS";
    case FlowLabel::kFail:
      return "FAIL";
    case FlowLabel::kInfeasible:
      return "INFEASIBLE";
  }
  return "?";
}

void AllocationState::commit(const Allocation& allocation, Cost marginal_cost) {
  for (const auto& [server, amount] : allocation) loads_.at(server) += amount;
  per_flow_.push_back(allocation);
  accumulated_ += marginal_cost;
}

void AllocationState::commit_empty() { per_flow_.emplace_back(); }

Cost total_cost(std::span<const Server> servers, std::span<const Load> loads) {
  Cost sum;
  for (std::size_t i = 0; i < servers.size(); ++i) sum += eval(servers[i].capability, loads[i]);
  return sum;
}

Cost allocation_marginal(std::span<const Server> servers, std::span<const Load> base,
                         const Allocation& allocation) {
  Cost sum;
  for (const auto& [server, amount] : allocation) {
    sum += marginal(servers[server].capability, base[server], amount);
  }
  return sum;
}

Cost rederive_total_cost(const Instance& inst, std::span<const Allocation> allocations) {
  std::vector<Load> loads(inst.num_servers(), 0);
  for (const auto& a : allocations) {
    for (const auto& [server, amount] : a) loads.at(server) += amount;
  }
  return total_cost(inst.servers(), loads);
}

}  // namespace vnfp

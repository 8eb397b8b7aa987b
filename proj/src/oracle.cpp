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

#include "vnfp/oracle.hpp"

#include <limits>

namespace vnfp::oracle {

BudgetExceededError::BudgetExceededError(std::uint64_t needed, std::uint64_t budget)
    : std::runtime_error("oracle needs " +
                         (needed == UINT64_MAX ? std::string("more than 2^64") : std::to_string(needed)) +
                         " states, budget is " + std::to_string(budget)),
      needed_(needed) {}

std::uint64_t composition_count(Load demand, std::size_t parts) {
  if (parts == 0) return demand == 0 ? 1 : 0;
  // C(demand + parts - 1, parts - 1), built incrementally so every
  // intermediate value is itself a binomial coefficient.
  const std::uint64_t k = parts - 1;
  const std::uint64_t n = static_cast<std::uint64_t>(demand) + k;
  __extension__ typedef unsigned __int128 Wide;
  Wide c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

// Visits every composition of `remaining` over path[pos..] in lexicographic
// order of (x_pos, x_pos+1, ...).
template <class Leaf>
void compositions(const std::vector<ServerId>& path, std::size_t pos, Load remaining,
                  std::vector<Load>& parts, Leaf& leaf) {
  if (pos + 1 == path.size()) {
    parts[pos] = remaining;
    leaf(parts);
    return;
  }
  for (Load x = 0; x <= remaining; ++x) {
    parts[pos] = x;
    compositions(path, pos + 1, remaining - x, parts, leaf);
  }
}

class OfflineSearch {
 public:
  explicit OfflineSearch(const Instance& inst)
      : inst_(inst), loads_(inst.num_servers(), 0), current_(inst.num_flows()) {}

  OfflineOptimum run() {
    descend(0, Cost::zero());
    OfflineOptimum out;
    out.cost = best_cost_;
    out.allocations = best_;
    out.nodes_visited = nodes_;
    return out;
  }

 private:
  bool cut(Cost partial) const {
    if (partial.is_infinite()) return true;
    if (!found_) return false;
    return partial.value() > best_cost_.value() + 1e-12 * std::max(1.0, best_cost_.value());
  }

  void descend(std::size_t flow, Cost partial) {
    ++nodes_;
    if (flow == inst_.num_flows()) {
      const Cost exact = total_cost(inst_.servers(), loads_);
      if (!found_ || exact < best_cost_) {
        best_cost_ = exact;
        best_ = current_;
        found_ = true;
      }
      return;
    }
    place(flow, 0, inst_.flows()[flow].demand, partial);
  }

  // Assigns the flow's remaining demand to its path servers from `pos` on.
  void place(std::size_t flow, std::size_t pos, Load remaining, Cost partial) {
    const Flow& f = inst_.flows()[flow];
    const ServerId s = f.path[pos];
    const auto& cap = inst_.servers()[s].capability;
    const bool last = pos + 1 == f.path.size();
    const Load lo = last ? remaining : 0;
    for (Load x = lo; x <= remaining; ++x) {
      const Cost next = partial + marginal(cap, loads_[s], x);
      if (cut(next)) {
        // Larger x only adds cost on this server, but the remaining servers
        // get less, so later x may still be cheaper: keep scanning.
        continue;
      }
      loads_[s] += x;
      if (x > 0) current_[flow][s] = x;
      if (last) {
        descend(flow + 1, next);
      } else {
        place(flow, pos + 1, remaining - x, next);
      }
      if (x > 0) current_[flow].erase(s);
      loads_[s] -= x;
    }
  }

  const Instance& inst_;
  std::vector<Load> loads_;
  std::vector<Allocation> current_;
  std::vector<Allocation> best_;
  Cost best_cost_ = Cost::infinity();
  bool found_ = false;
  std::uint64_t nodes_ = 0;
};

}  // namespace

PerFlowOptimum per_flow_optimal(std::span<const Load> loads, const Flow& flow,
                                std::span<const Server> servers, OracleBudget budget) {
  if (flow.path.empty()) throw std::invalid_argument("oracle: flow path is empty");
  const std::uint64_t needed = composition_count(flow.demand, flow.path.size());
  if (needed > budget.max_states) throw BudgetExceededError(needed, budget.max_states);

  PerFlowOptimum best;
  best.cost = Cost::infinity();
  bool found = false;
  std::vector<Load> parts(flow.path.size(), 0);
  auto leaf = [&](const std::vector<Load>& x) {
    ++best.compositions;
    Cost c;
    for (std::size_t i = 0; i < flow.path.size(); ++i) {
      const ServerId s = flow.path[i];
      c += marginal(servers[s].capability, loads[s], x[i]);
    }
    if (!found || c < best.cost) {
      found = true;
      best.cost = c;
      best.allocation.clear();
      for (std::size_t i = 0; i < flow.path.size(); ++i) {
        if (x[i] > 0) best.allocation[flow.path[i]] = x[i];
      }
    }
  };
  compositions(flow.path, 0, flow.demand, parts, leaf);
  return best;
}

OfflineOptimum offline_optimal(const Instance& inst, OracleBudget budget) {
  std::uint64_t product = 1;
  for (const auto& f : inst.flows()) {
    product = saturating_mul(product, composition_count(f.demand, f.path.size()));
  }
  if (product > budget.max_states) throw BudgetExceededError(product, budget.max_states);
  return OfflineSearch(inst).run();
}

}  // namespace vnfp::oracle

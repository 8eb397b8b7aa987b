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

/// \file vnfp/dp.hpp
///
/// Deterministic best-possible online allocation. For each arriving flow a
/// table over (path position, served demand) yields the allocation of minimum
/// total marginal cost given the loads left by earlier flows:
///
///   a(1, w) = df_1(w)
///   a(i, w) = min_{0 <= x <= w} a(i-1, w-x) + df_i(x),   i = 2..n_k
///
/// where df_i(x) = f(load + x) - f(load) for the i-th server on the path.
/// The optimal choices are kept so the allocation can be read back from
/// a(n_k, d).

#ifndef VNFP_DP_HPP
#define VNFP_DP_HPP

#include <span>
#include <vector>

#include "vnfp/run.hpp"

namespace vnfp::dp {

/// Rows are local path positions 0..n_k (row 0 = no server considered yet),
/// columns are served demand 0..d.
class DpTable {
 public:
  DpTable(std::vector<ServerId> path, Load demand);

  std::size_t path_size() const { return path_.size(); }
  Load demand() const { return demand_; }
  const std::vector<ServerId>& path() const { return path_; }

  Cost value(std::size_t row, Load served) const { return values_[index(row, served)]; }
  /// Amount placed on the row's server in the optimum for (row, served).
  Load choice(std::size_t row, Load served) const { return choices_[index(row, served)]; }

  /// (row, served, amount) triples inspected while filling the table.
  std::uint64_t work() const { return work_; }

 private:
  friend DpTable build_table(std::span<const Load>, const Flow&, std::span<const Server>);

  std::size_t index(std::size_t row, Load served) const {
    return row * static_cast<std::size_t>(demand_ + 1) + static_cast<std::size_t>(served);
  }

  std::vector<ServerId> path_;
  Load demand_;
  std::vector<Cost> values_;
  std::vector<Load> choices_;
  std::uint64_t work_ = 0;
};

DpTable build_table(std::span<const Load> loads, const Flow& flow,
                    std::span<const Server> servers);

/// Reads the optimal allocation for the full demand back out of `table`.
FlowDecision traceback(const DpTable& table);

/// Minimum-marginal-cost allocation for `flow`. An infinite marginal cost
/// means no finite allocation exists; the returned allocation is then an
/// arbitrary (still complete) minimizer.
FlowDecision solve_flow(const AllocationState& state, const Flow& flow,
                        std::span<const Server> servers, FlowStats* stats = nullptr);

/// Processes flows in arrival order, committing each decision.
RunResult run_online(const Instance& inst);

}  // namespace vnfp::dp

#endif  // VNFP_DP_HPP

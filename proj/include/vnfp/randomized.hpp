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

/// \file vnfp/randomized.hpp
///
/// Sampling-based online allocation. For the arriving flow with demand d,
/// each (server X, amount Y) pair with X on the path gets weight
///
///   P'(X, Y) = Y / (f_X(load_X + Y) - f_X(load_X)),
///
/// i.e. the inverse of the per-unit marginal cost. Pairs are drawn with
/// probability proportional to P' and applied until the flow is covered
/// (Las Vegas), or for at most ceil(d / r) rounds (Monte Carlo). The final
/// pick is trimmed so exactly d is served.
///
/// Pairs with zero marginal cost have unbounded weight; when any exist the
/// one with the largest Y (lowest server id on ties) is taken without
/// drawing. Pairs with infinite marginal cost have weight zero.

#ifndef VNFP_RANDOMIZED_HPP
#define VNFP_RANDOMIZED_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "vnfp/rng.hpp"
#include "vnfp/run.hpp"

namespace vnfp::randomized {

struct Pick {
  ServerId server = 0;
  Load amount = 0;

  friend bool operator==(const Pick&, const Pick&) = default;
};

/// Every pair has infinite marginal cost.
class AllDeadError : public std::runtime_error {
 public:
  AllDeadError() : std::runtime_error("no (server, amount) pair has finite marginal cost") {}
};

/// A Las Vegas flow could not be served at finite cost.
class InfeasibleFlowError : public std::runtime_error {
 public:
  explicit InfeasibleFlowError(std::size_t flow_id);
  std::size_t flow_id() const { return flow_id_; }

 private:
  std::size_t flow_id_;
};

/// n x d pick table. Only rows of path servers are stored; all other rows
/// are identically zero.
class ProbabilityTable {
 public:
  ProbabilityTable(std::vector<ServerId> path, Load demand);

  const std::vector<ServerId>& path() const { return path_; }
  Load demand() const { return demand_; }

  /// P'(server, amount); +inf marks a zero-marginal-cost pair.
  double raw(ServerId server, Load amount) const;
  /// Normalized probability over the finite positive weights.
  double prob(ServerId server, Load amount) const;
  double row_mass(ServerId server) const;
  /// Sum of all probabilities (the stored row masses).
  double total_mass() const;

  /// Zero-cost pair to take deterministically, if any.
  std::optional<Pick> free_pick() const;
  /// No free pair and no positive finite weight.
  bool dead() const { return !free_pick().has_value() && !(total_mass() > 0.0); }

  /// Recomputes every row from `loads` and renormalizes.
  void rebuild(std::span<const Load> loads, std::span<const Server> servers);
  /// Recomputes only `server`'s row and rescales it to keep its previous
  /// mass. Falls back to renormalizing from the stored weights when the row
  /// had no mass before or has none now.
  void update_row(ServerId server, std::span<const Load> loads, std::span<const Server> servers);

  /// Table entries (marginal-cost evaluations) computed so far.
  std::uint64_t entries_computed() const { return entries_computed_; }

 private:
  friend Pick sample(const ProbabilityTable&, Rng&);

  std::optional<std::size_t> row_of(ServerId server) const;
  std::size_t cols() const { return static_cast<std::size_t>(demand_); }
  void fill_row(std::size_t row, std::span<const Load> loads, std::span<const Server> servers);
  double finite_row_sum(std::size_t row) const;
  void normalize_all();

  std::vector<ServerId> path_;
  Load demand_;
  std::vector<double> raw_;
  std::vector<double> prob_;
  std::vector<double> row_mass_;
  std::vector<Load> row_free_;  ///< largest zero-cost amount per row, 0 if none
  std::uint64_t entries_computed_ = 0;
};

/// Full table for `flow` at `loads`. Throws AllDeadError if every pair has
/// infinite marginal cost.
ProbabilityTable build_table(std::span<const Load> loads, const Flow& flow,
                             std::span<const Server> servers);

/// Inverse-CDF draw, rows in server-id order then amounts ascending; takes
/// the free pair without drawing when one exists. Requires !table.dead().
Pick sample(const ProbabilityTable& table, Rng& rng);

struct SamplerOptions {
  bool row_update = false;
};

/// Outcome of serving one flow on top of a committed state.
struct FlowOutcome {
  FlowLabel label = FlowLabel::kSuccess;
  FlowDecision decision;  ///< empty allocation unless SUCCESS
  std::vector<Pick> picks;  ///< as drawn, before trimming
  double max_normalization_error = 0.0;
  std::uint64_t normalizations = 0;
};

/// Samples until covered, trims the last pick to exactly d. Throws
/// InfeasibleFlowError when the table goes dead; `state` is never modified.
FlowOutcome lv_serve_flow(const AllocationState& state, const Flow& flow,
                          std::span<const Server> servers, Rng& rng,
                          SamplerOptions options = {}, FlowStats* stats = nullptr);

struct McConfig {
  Load r = 1;
  std::uint64_t seed = 0;
  bool row_update = false;
};

/// At most ceil(d / r) rounds, stopping once covered. SUCCESS flows are
/// trimmed to exactly d; FAIL flows (rounds exhausted or table dead) leave
/// no allocation behind.
FlowOutcome mc_serve_flow(const AllocationState& state, const Flow& flow,
                          std::span<const Server> servers, Rng& rng, const McConfig& cfg,
                          FlowStats* stats = nullptr);

/// Las Vegas over the whole instance; propagates InfeasibleFlowError.
RunResult run_lv(const Instance& inst, std::uint64_t seed, bool row_update = false);

/// Monte Carlo over the whole instance; cost covers SUCCESS flows only.
RunResult run_mc(const Instance& inst, const McConfig& cfg);

}  // namespace vnfp::randomized

#endif  // VNFP_RANDOMIZED_HPP

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

/// \file vnfp/instance.hpp
///
/// Online instances: a fixed server set with capability functions and a
/// sequence of flows in arrival order. Generators for random, adversarial and
/// P/Q-server instances, the recording matrix, and the JSON file format.

#ifndef VNFP_INSTANCE_HPP
#define VNFP_INSTANCE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vnfp/capability.hpp"

namespace vnfp {

/// Amount of a flow's demand placed on each server; servers with zero
/// amount are absent.
using Allocation = std::map<ServerId, Load>;

struct Server {
  ServerId id = 0;
  CapabilityFunction capability = CapabilityFunction::fixed_linear(0.0, 0.0);

  friend bool operator==(const Server&, const Server&) = default;
};

struct Flow {
  std::size_t id = 0;
  Load demand = 1;
  std::vector<ServerId> path;  ///< sorted, unique, non-empty

  bool passes(ServerId s) const;
  friend bool operator==(const Flow&, const Flow&) = default;
};

struct InstanceMetadata {
  std::string generator = "manual";
  std::uint64_t seed = 0;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();

  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

/// Validated, immutable-by-convention instance. `servers[i].id == i`.
class Instance {
 public:
  Instance() = default;
  /// Throws std::invalid_argument if ids are not dense or a flow is malformed.
  Instance(std::vector<Server> servers, std::vector<Flow> flows,
           InstanceMetadata metadata = {});

  std::span<const Server> servers() const { return servers_; }
  std::span<const Flow> flows() const { return flows_; }
  const InstanceMetadata& metadata() const { return metadata_; }

  std::size_t num_servers() const { return servers_.size(); }
  std::size_t num_flows() const { return flows_.size(); }
  /// Largest flow demand, 0 for an empty flow list.
  Load max_demand() const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<Server> servers_;
  std::vector<Flow> flows_;
  InstanceMetadata metadata_;
};

/// Sampling weights over the four generated capability families. Parameter
/// ranges scale with the instance's max_demand where noted.
struct CapabilityMix {
  double step = 1.0;
  double hard_cap = 1.0;
  double fixed_linear = 1.0;
  double concave = 1.0;
};

struct RandomInstanceParams {
  std::size_t nodes = 50;
  std::size_t flows = 400;
  Load max_demand = 200;
  std::size_t path_min = 1;
  std::size_t path_max = 0;  ///< 0 means "nodes"
  CapabilityMix mix;
  /// Redraw any path made only of hard-capacitated servers (when at least
  /// one uncapacitated server exists), so every flow has a finite-cost
  /// allocation whatever the earlier loads are.
  bool ensure_feasible = true;
};

Instance gen_random(const RandomInstanceParams& params, std::uint64_t seed);

/// Hard-capacitated pairs: `m` servers with f(1) = 1, f(2) = inf, and the
/// first m/2 unit flows through {2k, 2k+1}. Throws if m is odd or zero.
Instance gen_adversarial(std::size_t m);

/// Appends one unit flow per first-half flow whose path is the single server
/// the algorithm used for it. Throws if an allocation is not a single unit
/// on a path server.
Instance adversary_extend(const Instance& partial,
                          std::span<const Allocation> first_half);

/// One P-server (1 + epsilon * u) and m Q-servers (u); flow k goes through
/// {0, k + 1} with unit demand.
Instance gen_pq(std::size_t m, double epsilon);

/// n x m binary matrix, row-major by server: entry (i, j) is 1 iff flow j's
/// path contains server i.
class RecordingMatrix {
 public:
  explicit RecordingMatrix(const Instance& inst);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool at(ServerId server, std::size_t flow) const {
    return bits_[server * cols_ + flow] != 0;
  }
  std::size_t ones() const;
  /// Rows of 0/1 separated by spaces, one line per server.
  std::string to_text() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

inline RecordingMatrix recording_matrix(const Instance& inst) {
  return RecordingMatrix(inst);
}

/// Schema violation while reading an instance file.
class InstanceFormatError : public std::runtime_error {
 public:
  InstanceFormatError(std::string pointer, std::size_t line, const std::string& what);

  const std::string& pointer() const { return pointer_; }
  /// 1-based line of the offending value, 0 if unknown.
  std::size_t line() const { return line_; }

 private:
  std::string pointer_;
  std::size_t line_;
};

std::string to_json_text(const Instance& inst);
Instance from_json_text(const std::string& text);

void save(const Instance& inst, const std::filesystem::path& file);
Instance load(const std::filesystem::path& file);

}  // namespace vnfp

#endif  // VNFP_INSTANCE_HPP

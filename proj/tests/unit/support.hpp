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

// Test-side reference computations, written independently of the solver
// and oracle modules.

#ifndef VNFP_TESTS_SUPPORT_HPP
#define VNFP_TESTS_SUPPORT_HPP

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "vnfp/instance.hpp"

namespace vnfp::testing {

// Every composition of d over k slots.
inline std::vector<std::vector<Load>> all_compositions(Load d, std::size_t k) {
  // Count in base d+1 and keep the tuples that sum to d.
  std::vector<std::vector<Load>> out;
  std::vector<Load> y(k, 0);
  while (true) {
    Load sum = 0;
    for (Load v : y) sum += v;
    if (sum == d) out.push_back(y);
    std::size_t pos = 0;
    while (pos < k && y[pos] == d) y[pos++] = 0;
    if (pos == k) break;
    ++y[pos];
  }
  return out;
}

// Plain double evaluation of sum_i f_i(load_i + x_i) - f_i(load_i).
inline double composition_cost(std::span<const Load> loads, const Flow& flow,
                               std::span<const Server> servers, const std::vector<Load>& x) {
  double total = 0.0;
  for (std::size_t i = 0; i < flow.path.size(); ++i) {
    const ServerId s = flow.path[i];
    const Cost before = eval(servers[s].capability, loads[s]);
    const Cost after = eval(servers[s].capability, loads[s] + x[i]);
    if (before.is_infinite() || after.is_infinite()) return std::numeric_limits<double>::infinity();
    total += after.value() - before.value();
  }
  return total;
}

inline double brute_min_marginal(std::span<const Load> loads, const Flow& flow,
                                 std::span<const Server> servers) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& x : all_compositions(flow.demand, flow.path.size())) {
    best = std::min(best, composition_cost(loads, flow, servers, x));
  }
  return best;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("vnfp_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vnfp::testing

#endif  // VNFP_TESTS_SUPPORT_HPP

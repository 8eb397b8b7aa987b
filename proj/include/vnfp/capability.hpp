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

/// \file vnfp/capability.hpp
///
/// Server capability functions: nondecreasing maps from an integer load to
/// an extended nonnegative cost, with f(0) = 0. Five families are supported;
/// all of them are evaluated on integer loads only.

#ifndef VNFP_CAPABILITY_HPP
#define VNFP_CAPABILITY_HPP

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "vnfp/cost.hpp"

namespace vnfp {

/// f(u) = unit_cost * ceil(u / unit_size) for u > 0.
struct StepCost {
  Load unit_size = 1;
  double unit_cost = 1.0;
};

/// f(u) = open_cost for 0 < u <= capacity, infinity above capacity.
struct HardCapCost {
  double open_cost = 0.0;
  Load capacity = 1;
};

/// f(u) = open_cost + slope * u for u > 0.
struct FixedLinearCost {
  double open_cost = 0.0;
  double slope = 0.0;
};

struct Breakpoint {
  Load load = 0;
  double cost = 0.0;
};

/// Piecewise-linear interpolant through (0, 0) and the breakpoints; the last
/// segment's slope is extended past the final breakpoint.
struct ConcaveCost {
  std::vector<Breakpoint> breakpoints;
};

enum class TableOverflow { kLastValue, kInfinity };

/// Explicit cost per load 0..L; loads above L follow `overflow`.
struct TableCost {
  std::vector<Cost> values;
  TableOverflow overflow = TableOverflow::kLastValue;
};

/// Immutable capability function. Construction checks parameter ranges
/// (positive sizes, nonnegative costs) and throws std::invalid_argument on
/// bad input; monotonicity of tables is left to `validate`.
class CapabilityFunction {
 public:
  using Variant =
      std::variant<StepCost, HardCapCost, FixedLinearCost, ConcaveCost, TableCost>;

  static CapabilityFunction step(Load unit_size, double unit_cost);
  static CapabilityFunction hard_cap(double open_cost, Load capacity);
  static CapabilityFunction fixed_linear(double open_cost, double slope);
  static CapabilityFunction concave(std::vector<Breakpoint> breakpoints);
  static CapabilityFunction table(std::vector<Cost> values, TableOverflow overflow);

  const Variant& variant() const { return variant_; }

  /// One of "step", "hardcap", "fixed_linear", "concave", "table".
  std::string_view kind() const;

  friend bool operator==(const CapabilityFunction&, const CapabilityFunction&);

 private:
  explicit CapabilityFunction(Variant v) : variant_(std::move(v)) {}
  Variant variant_;
};

bool operator==(const StepCost&, const StepCost&);
bool operator==(const HardCapCost&, const HardCapCost&);
bool operator==(const FixedLinearCost&, const FixedLinearCost&);
bool operator==(const Breakpoint&, const Breakpoint&);
bool operator==(const ConcaveCost&, const ConcaveCost&);
bool operator==(const TableCost&, const TableCost&);

/// f(load). eval(f, 0) is always zero.
Cost eval(const CapabilityFunction& f, Load load);

/// f(current + added) - f(current); infinite when f(current) is infinite.
Cost marginal(const CapabilityFunction& f, Load current, Load added);

struct Violation {
  Load x = 0;
  Load y = 0;
  std::string message;
};

/// Checks f(0) = 0 and f(x) <= f(y) for 0 <= x <= y <= probe_limit.
/// Monotonicity is reported for adjacent loads (x, x + 1), which is
/// equivalent on an integer domain.
std::vector<Violation> validate(const CapabilityFunction& f, Load probe_limit);

}  // namespace vnfp

#endif  // VNFP_CAPABILITY_HPP

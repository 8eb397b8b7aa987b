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

#include "vnfp/capability.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace vnfp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

Cost eval_positive(const StepCost& s, Load u) {
  const Load units = (u + s.unit_size - 1) / s.unit_size;
  return Cost(s.unit_cost * static_cast<double>(units));
}

Cost eval_positive(const HardCapCost& h, Load u) {
  return u <= h.capacity ? Cost(h.open_cost) : Cost::infinity();
}

Cost eval_positive(const FixedLinearCost& l, Load u) {
  return Cost(l.open_cost + l.slope * static_cast<double>(u));
}

Cost eval_positive(const ConcaveCost& c, Load u) {
  const auto& bp = c.breakpoints;
  Load x0 = 0;
  double y0 = 0.0;
  for (const auto& b : bp) {
    if (u == b.load) return Cost(b.cost);
    if (u < b.load) {
      const double slope = (b.cost - y0) / static_cast<double>(b.load - x0);
      return Cost(std::max(0.0, y0 + slope * static_cast<double>(u - x0)));
    }
    x0 = b.load;
    y0 = b.cost;
  }
  // Past the last breakpoint: extend the final segment.
  const Load xp = bp.size() >= 2 ? bp[bp.size() - 2].load : 0;
  const double yp = bp.size() >= 2 ? bp[bp.size() - 2].cost : 0.0;
  const double slope = (y0 - yp) / static_cast<double>(x0 - xp);
  return Cost(std::max(0.0, y0 + slope * static_cast<double>(u - x0)));
}

Cost eval_positive(const TableCost& t, Load u) {
  const auto last = static_cast<Load>(t.values.size()) - 1;
  if (u <= last) return t.values[static_cast<std::size_t>(u)];
  return t.overflow == TableOverflow::kInfinity ? Cost::infinity() : t.values.back();
}

}  // namespace

CapabilityFunction CapabilityFunction::step(Load unit_size, double unit_cost) {
  require(unit_size >= 1, "step: unit_size must be a positive integer");
  require(std::isfinite(unit_cost) && unit_cost > 0.0,
          "step: unit_cost must be positive and finite");
  return CapabilityFunction(StepCost{unit_size, unit_cost});
}

CapabilityFunction CapabilityFunction::hard_cap(double open_cost, Load capacity) {
  require(finite_nonnegative(open_cost), "hardcap: open_cost must be finite and >= 0");
  require(capacity >= 1, "hardcap: capacity must be a positive integer");
  return CapabilityFunction(HardCapCost{open_cost, capacity});
}

CapabilityFunction CapabilityFunction::fixed_linear(double open_cost, double slope) {
  require(finite_nonnegative(open_cost),
          "fixed_linear: open_cost must be finite and >= 0");
  require(finite_nonnegative(slope), "fixed_linear: slope must be finite and >= 0");
  return CapabilityFunction(FixedLinearCost{open_cost, slope});
}

CapabilityFunction CapabilityFunction::concave(std::vector<Breakpoint> breakpoints) {
  require(!breakpoints.empty(), "concave: at least one breakpoint required");
  Load prev = 0;
  for (const auto& b : breakpoints) {
    require(b.load > prev, "concave: breakpoint loads must be positive and strictly increasing");
    require(finite_nonnegative(b.cost), "concave: breakpoint costs must be finite and >= 0");
    prev = b.load;
  }
  return CapabilityFunction(ConcaveCost{std::move(breakpoints)});
}

CapabilityFunction CapabilityFunction::table(std::vector<Cost> values,
                                             TableOverflow overflow) {
  require(!values.empty(), "table: at least one value (load 0) required");
  return CapabilityFunction(TableCost{std::move(values), overflow});
}

std::string_view CapabilityFunction::kind() const {
  return std::visit(Overloaded{
                        [](const StepCost&) { return std::string_view("step"); },
                        [](const HardCapCost&) { return std::string_view("hardcap"); },
                        [](const FixedLinearCost&) {
                          return std::string_view("fixed_linear");
                        },
                        [](const ConcaveCost&) { return std::string_view("concave"); },
                        [](const TableCost&) { return std::string_view("table"); },
                    },
                    variant_);
}

bool operator==(const StepCost& a, const StepCost& b) {
  return a.unit_size == b.unit_size && a.unit_cost == b.unit_cost;
}
bool operator==(const HardCapCost& a, const HardCapCost& b) {
  return a.open_cost == b.open_cost && a.capacity == b.capacity;
}
bool operator==(const FixedLinearCost& a, const FixedLinearCost& b) {
  return a.open_cost == b.open_cost && a.slope == b.slope;
}
bool operator==(const Breakpoint& a, const Breakpoint& b) {
  return a.load == b.load && a.cost == b.cost;
}
bool operator==(const ConcaveCost& a, const ConcaveCost& b) {
  return a.breakpoints == b.breakpoints;
}
bool operator==(const TableCost& a, const TableCost& b) {
  return a.values == b.values && a.overflow == b.overflow;
}
bool operator==(const CapabilityFunction& a, const CapabilityFunction& b) {
  return a.variant_ == b.variant_;
}

Cost eval(const CapabilityFunction& f, Load load) {
  if (load < 0) throw std::invalid_argument("eval: negative load");
  if (load == 0) return Cost::zero();
  return std::visit([load](const auto& v) { return eval_positive(v, load); },
                    f.variant());
}

Cost marginal(const CapabilityFunction& f, Load current, Load added) {
  const Cost before = eval(f, current);
  if (before.is_infinite()) return Cost::infinity();
  return eval(f, current + added) - before;
}

std::vector<Violation> validate(const CapabilityFunction& f, Load probe_limit) {
  if (probe_limit < 1) throw std::invalid_argument("validate: probe_limit must be >= 1");
  std::vector<Violation> out;
  if (const auto* t = std::get_if<TableCost>(&f.variant());
      t != nullptr && t->values.front() != Cost::zero()) {
    out.push_back({0, 0, "f(0) must be 0, table stores " + to_string(t->values.front())});
  }
  Cost prev = eval(f, 0);
  for (Load x = 0; x < probe_limit; ++x) {
    const Cost next = eval(f, x + 1);
    if (next < prev) {
      std::ostringstream msg;
      msg << "f(" << x << ") = " << to_string(prev) << " > f(" << x + 1
          << ") = " << to_string(next);
      out.push_back({x, x + 1, msg.str()});
    }
    prev = next;
  }
  return out;
}

std::string to_string(Cost c) {
  if (c.is_infinite()) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), c.value());
  return std::string(buf, res.ptr);
}

Cost parse_cost(const std::string& text) {
  if (text == "inf") return Cost::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("malformed cost '" + text + "'");
  }
  return Cost(v);
}

}  // namespace vnfp

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

#ifndef VNFP_COST_HPP
#define VNFP_COST_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace vnfp {

using ServerId = std::size_t;
using Load = std::int64_t;

/// Extended nonnegative real: a finite value >= 0 or +infinity.
///
/// Infinity absorbs addition. Subtraction is only meaningful as a cost
/// increase (`later - earlier` with `later >= earlier`); the result is clamped
/// at zero, and anything minus a finite value where the minuend is infinite
/// stays infinite. `inf - inf` has no meaning in the model and yields infinity.
class Cost {
 public:
  constexpr Cost() = default;

  explicit Cost(double value) : value_(value) {
    if (!(value >= 0.0)) {
      throw std::invalid_argument("cost must be nonnegative, got " +
                                  std::to_string(value));
    }
  }

  static constexpr Cost infinity() {
    Cost c;
    c.value_ = std::numeric_limits<double>::infinity();
    return c;
  }

  static constexpr Cost zero() { return Cost{}; }

  constexpr double value() const { return value_; }
  constexpr bool is_finite() const {
    return value_ != std::numeric_limits<double>::infinity();
  }
  constexpr bool is_infinite() const { return !is_finite(); }

  Cost& operator+=(Cost other) {
    value_ += other.value_;
    return *this;
  }

  friend Cost operator+(Cost a, Cost b) { return a += b; }

  /// Cost increase from `earlier` to `later`.
  friend Cost operator-(Cost later, Cost earlier) {
    if (later.is_infinite()) return infinity();
    Cost c;
    c.value_ = later.value_ > earlier.value_ ? later.value_ - earlier.value_ : 0.0;
    return c;
  }

  friend Cost operator*(double scale, Cost c) {
    if (scale < 0.0) throw std::invalid_argument("negative cost scale");
    if (c.is_infinite()) return infinity();
    return Cost(scale * c.value_);
  }

  friend constexpr bool operator==(Cost a, Cost b) { return a.value_ == b.value_; }
  friend constexpr std::partial_ordering operator<=>(Cost a, Cost b) {
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
};

/// Shortest round-trip decimal for finite values, "inf" otherwise.
std::string to_string(Cost c);

/// Inverse of `to_string`; throws std::invalid_argument on malformed text.
Cost parse_cost(const std::string& text);

/// Absolute-or-relative closeness used when two summation orders differ.
inline bool nearly_equal(Cost a, Cost b, double tol = 1e-9) {
  if (a.is_infinite() || b.is_infinite()) return a == b;
  const double scale = std::max(1.0, std::max(a.value(), b.value()));
  return std::fabs(a.value() - b.value()) <= tol * scale;
}

}  // namespace vnfp

#endif  // VNFP_COST_HPP

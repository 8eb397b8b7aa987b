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

#include <doctest.h>

#include <limits>

#include "vnfp/capability.hpp"

using namespace vnfp;

TEST_CASE("step cost rounds load up to whole units") {
  const auto f = CapabilityFunction::step(2, 1.0);
  CHECK(eval(f, 5) == Cost(3.0));
  CHECK(eval(f, 4) == Cost(2.0));
  CHECK(eval(f, 1) == Cost(1.0));
}

TEST_CASE("every variant is free at zero load") {
  const std::vector<CapabilityFunction> fs = {
      CapabilityFunction::step(3, 2.0),
      CapabilityFunction::hard_cap(1.0, 1),
      CapabilityFunction::fixed_linear(1.0, 0.5),
      CapabilityFunction::concave({{2, 3.0}, {5, 4.5}}),
      CapabilityFunction::table({Cost(0.0), Cost(1.0)}, TableOverflow::kInfinity),
  };
  for (const auto& f : fs) CHECK(eval(f, 0) == Cost::zero());
}

TEST_CASE("hard cap is infinite above capacity") {
  const auto f = CapabilityFunction::hard_cap(1.0, 1);
  CHECK(eval(f, 1) == Cost(1.0));
  CHECK(eval(f, 2).is_infinite());
  CHECK(marginal(f, 0, 1) == Cost(1.0));
  CHECK(marginal(f, 1, 1).is_infinite());
}

TEST_CASE("fixed plus linear") {
  const auto f = CapabilityFunction::fixed_linear(1.0, 0.01);
  CHECK(nearly_equal(eval(f, 100), Cost(2.0)));
  CHECK(marginal(f, 0, 1) == Cost(1.01));
}

TEST_CASE("step marginal is zero inside a unit and jumps at the boundary") {
  const auto f = CapabilityFunction::step(3, 2.0);
  CHECK(marginal(f, 2, 1) == Cost::zero());
  CHECK(marginal(f, 3, 1) == Cost(2.0));
}

TEST_CASE("concave interpolates from the origin and extends the last slope") {
  const auto f = CapabilityFunction::concave({{2, 4.0}, {4, 6.0}});
  CHECK(eval(f, 1) == Cost(2.0));
  CHECK(eval(f, 2) == Cost(4.0));
  CHECK(eval(f, 3) == Cost(5.0));
  CHECK(eval(f, 6) == Cost(8.0));
  CHECK_THROWS_AS(CapabilityFunction::concave({{2, 1.0}, {2, 6.0}}), std::invalid_argument);
  CHECK_THROWS_AS(CapabilityFunction::concave({}), std::invalid_argument);
  CHECK_FALSE(validate(CapabilityFunction::concave({{2, 4.0}, {4, 3.0}}), 6).empty());
}

TEST_CASE("table overflow modes") {
  const auto last = CapabilityFunction::table({Cost(0.0), Cost(1.0), Cost(1.5)}, TableOverflow::kLastValue);
  const auto inf = CapabilityFunction::table({Cost(0.0), Cost(1.0), Cost(1.5)}, TableOverflow::kInfinity);
  CHECK(eval(last, 7) == Cost(1.5));
  CHECK(eval(inf, 2) == Cost(1.5));
  CHECK(eval(inf, 3).is_infinite());
}

TEST_CASE("constructors reject bad parameters") {
  CHECK_THROWS_AS(CapabilityFunction::step(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CapabilityFunction::step(1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(CapabilityFunction::hard_cap(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(CapabilityFunction::fixed_linear(-0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CapabilityFunction::table({}, TableOverflow::kLastValue), std::invalid_argument);
  CHECK_THROWS_AS(Cost(-1.0), std::invalid_argument);
}

TEST_CASE("validate") {
  CHECK(validate(CapabilityFunction::step(2, 1.0), 10).empty());
  CHECK(validate(CapabilityFunction::hard_cap(0.0, 5), 10).empty());

  const auto bad = validate(CapabilityFunction::table({Cost(0.0), Cost(2.0), Cost(1.0)},
                                                      TableOverflow::kLastValue),
                            2);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].x == 1);
  CHECK(bad[0].y == 2);

  const auto nonzero = validate(CapabilityFunction::table({Cost(1.0), Cost(2.0)}, TableOverflow::kLastValue), 1);
  CHECK_FALSE(nonzero.empty());
}

TEST_CASE("generated-style functions are monotone on a wide probe") {
  const std::vector<CapabilityFunction> fs = {
      CapabilityFunction::step(7, 0.9),
      CapabilityFunction::hard_cap(2.5, 40),
      CapabilityFunction::fixed_linear(1.2, 0.3),
      CapabilityFunction::concave({{10, 5.0}, {30, 9.0}, {80, 10.0}}),
  };
  for (const auto& f : fs) CHECK(validate(f, 200).empty());
}

TEST_CASE("cost arithmetic") {
  const Cost inf = Cost::infinity();
  CHECK((inf + Cost(1.0)).is_infinite());
  CHECK((inf - Cost(1.0)).is_infinite());
  CHECK(Cost(1.0) - Cost(3.0) == Cost::zero());
  CHECK(Cost(1.0) < inf);
  CHECK(to_string(inf) == "inf");
  CHECK(to_string(Cost(0.1)) == "0.1");
  CHECK(parse_cost("inf").is_infinite());
  CHECK(parse_cost("2.5") == Cost(2.5));
}

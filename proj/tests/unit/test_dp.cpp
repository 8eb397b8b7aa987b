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

#include "support.hpp"
#include "vnfp/dp.hpp"
#include "vnfp/rng.hpp"

using namespace vnfp;

namespace {

Instance three_steps() {
  std::vector<Server> servers;
  for (ServerId i = 0; i < 3; ++i) servers.push_back({i, CapabilityFunction::step(2, 1.0)});
  return Instance(servers, {{0, 2, {0, 1, 2}}});
}

}  // namespace

TEST_CASE("single server, unit demand") {
  const Instance inst({{0, CapabilityFunction::fixed_linear(0.5, 0.25)}}, {{0, 1, {0}}});
  AllocationState state(1);
  const auto d = dp::solve_flow(state, inst.flows()[0], inst.servers());
  CHECK(d.allocation == Allocation{{0, 1}});
  CHECK(d.marginal_cost == Cost(0.75));
}

TEST_CASE("step servers: both units on one server") {
  const Instance inst = three_steps();
  AllocationState state(3);
  const auto d = dp::solve_flow(state, inst.flows()[0], inst.servers());
  REQUIRE(d.allocation.size() == 1);
  CHECK(d.allocation.begin()->second == 2);
  CHECK(d.marginal_cost == Cost(1.0));

  // Reference: all six compositions, splitting costs 2.
  const auto comps = testing::all_compositions(2, 3);
  CHECK(comps.size() == 6);
  double best = 1e300;
  for (const auto& x : comps) {
    const double c = testing::composition_cost(state.loads(), inst.flows()[0], inst.servers(), x);
    best = std::min(best, c);
    const bool split = std::count(x.begin(), x.end(), 0) == 1;
    CHECK(c == (split ? 2.0 : 1.0));
  }
  CHECK(d.marginal_cost.value() == best);
}

TEST_CASE("ties break toward the smallest amount on the later server") {
  // With both units on one server tied across servers, traceback keeps the
  // lowest x on the last row, so the earliest server takes the demand.
  const auto d = dp::solve_flow(AllocationState(3), three_steps().flows()[0], three_steps().servers());
  CHECK(d.allocation == Allocation{{0, 2}});
}

TEST_CASE("matches brute force on random small flows") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    RandomInstanceParams p;
    p.nodes = 5;
    p.flows = 4;
    p.max_demand = 6;
    p.path_max = 4;
    const Instance inst = gen_random(p, rng.next());
    AllocationState state(inst.num_servers());
    for (const auto& f : inst.flows()) {
      const auto d = dp::solve_flow(state, f, inst.servers());
      const double ref = testing::brute_min_marginal(state.loads(), f, inst.servers());
      if (std::isinf(ref)) {
        CHECK(d.marginal_cost.is_infinite());
      } else {
        CHECK(nearly_equal(d.marginal_cost, Cost(ref)));
      }
      Load sum = 0;
      for (const auto& [s, x] : d.allocation) sum += x;
      CHECK(sum == f.demand);
      state.commit(d.allocation, d.marginal_cost);
    }
  }
}

TEST_CASE("table rows never increase and work stays within bound") {
  RandomInstanceParams p;
  p.nodes = 8;
  p.flows = 10;
  p.max_demand = 25;
  const Instance inst = gen_random(p, 5);
  AllocationState state(inst.num_servers());
  for (const auto& f : inst.flows()) {
    const auto table = dp::build_table(state.loads(), f, inst.servers());
    const auto nk = f.path.size();
    const auto d1 = static_cast<std::uint64_t>(f.demand + 1);
    CHECK(table.work() <= nk * d1 * d1);
    for (std::size_t row = 2; row <= nk; ++row) {
      for (Load x = 0; x <= f.demand; ++x) CHECK(table.value(row, x) <= table.value(row - 1, x));
    }
    const auto dec = dp::traceback(table);
    CHECK(allocation_marginal(inst.servers(), state.loads(), dec.allocation) == dec.marginal_cost);
    state.commit(dec.allocation, dec.marginal_cost);
  }
}

TEST_CASE("online run totals") {
  SUBCASE("empty flow list costs nothing") {
    const Instance inst({{0, CapabilityFunction::step(1, 1.0)}}, {});
    CHECK(dp::run_online(inst).total_cost == Cost::zero());
  }
  SUBCASE("P/Q instance costs m") {
    const auto res = dp::run_online(gen_pq(100, 0.01));
    CHECK(res.total_cost == Cost(100.0));
  }
  SUBCASE("adversarial extension is infinite") {
    const Instance half = gen_adversarial(8);
    const auto first = dp::run_online(half);
    CHECK(first.total_cost == Cost(4.0));
    const auto res = dp::run_online(adversary_extend(half, first.allocations));
    CHECK(res.total_cost.is_infinite());
    CHECK(std::count(res.labels.begin(), res.labels.end(), FlowLabel::kInfeasible) == 4);
  }
  SUBCASE("sum of marginals telescopes to the final cost") {
    RandomInstanceParams p;
    p.nodes = 10;
    p.flows = 60;
    p.max_demand = 20;
    const Instance inst = gen_random(p, 21);
    const auto res = dp::run_online(inst);
    Cost marginal_sum;
    AllocationState state(inst.num_servers());
    for (const auto& a : res.allocations) {
      const Cost m = allocation_marginal(inst.servers(), state.loads(), a);
      marginal_sum += m;
      state.commit(a, m);
    }
    CHECK(nearly_equal(marginal_sum, res.total_cost));
    CHECK(nearly_equal(rederive_total_cost(inst, res.allocations), res.total_cost));
    CHECK(res.fail_rate == 0.0);
  }
}

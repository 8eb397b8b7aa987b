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

#include <string>

#include "support.hpp"
#include "vnfp/instance.hpp"

using namespace vnfp;

namespace {

std::vector<std::vector<ServerId>> paths(const Instance& inst) {
  std::vector<std::vector<ServerId>> out;
  for (const auto& f : inst.flows()) out.push_back(f.path);
  return out;
}

}  // namespace

TEST_CASE("random instance respects its size parameters") {
  RandomInstanceParams p;
  p.nodes = 50;
  p.flows = 400;
  p.max_demand = 200;
  const Instance inst = gen_random(p, 7);
  CHECK(inst.num_servers() == 50);
  CHECK(inst.num_flows() == 400);
  CHECK(inst.max_demand() <= 200);
  for (const auto& f : inst.flows()) {
    CHECK(f.demand >= 1);
    CHECK_FALSE(f.path.empty());
    CHECK(std::is_sorted(f.path.begin(), f.path.end()));
  }
}

TEST_CASE("smallest random instance") {
  RandomInstanceParams p;
  p.nodes = 1;
  p.flows = 1;
  p.max_demand = 1;
  p.path_min = 1;
  p.path_max = 1;
  const Instance inst = gen_random(p, 0);
  REQUIRE(inst.num_servers() == 1);
  REQUIRE(inst.num_flows() == 1);
  CHECK(inst.flows()[0].demand == 1);
  CHECK(inst.flows()[0].path == std::vector<ServerId>{0});
}

TEST_CASE("random generation is a pure function of the seed") {
  RandomInstanceParams p;
  p.nodes = 12;
  p.flows = 30;
  p.max_demand = 20;
  CHECK(to_json_text(gen_random(p, 1)) == to_json_text(gen_random(p, 1)));
  CHECK(paths(gen_random(p, 1)) != paths(gen_random(p, 2)));
}

TEST_CASE("feasibility guard keeps every path off all-hardcap server sets") {
  RandomInstanceParams p;
  p.nodes = 10;
  p.flows = 200;
  p.max_demand = 30;
  const Instance inst = gen_random(p, 11);
  for (const auto& f : inst.flows()) {
    bool uncapped = false;
    for (ServerId s : f.path) uncapped |= inst.servers()[s].capability.kind() != "hardcap";
    CHECK(uncapped);
  }
}

TEST_CASE("adversarial first half") {
  const Instance a8 = gen_adversarial(8);
  CHECK(a8.num_servers() == 8);
  CHECK(paths(a8) == std::vector<std::vector<ServerId>>{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  const Instance a2 = gen_adversarial(2);
  CHECK(a2.num_servers() == 2);
  CHECK(paths(a2) == std::vector<std::vector<ServerId>>{{0, 1}});
  CHECK_THROWS_AS(gen_adversarial(3), std::invalid_argument);
}

TEST_CASE("adversary follows the chosen servers") {
  const Instance a8 = gen_adversarial(8);
  const std::vector<Allocation> chosen = {{{0, 1}}, {{2, 1}}, {{4, 1}}, {{6, 1}}};
  const Instance ext = adversary_extend(a8, chosen);
  REQUIRE(ext.num_flows() == 8);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(ext.flows()[4 + k].path == std::vector<ServerId>{2 * k});
    CHECK(ext.flows()[4 + k].demand == 1);
  }

  const Instance ext2 = adversary_extend(gen_adversarial(2), std::vector<Allocation>{{{1, 1}}});
  CHECK(ext2.flows()[1].path == std::vector<ServerId>{1});

  const std::vector<Allocation> off_path = {{{3, 1}}, {{2, 1}}, {{4, 1}}, {{6, 1}}};
  CHECK_THROWS_AS(adversary_extend(a8, off_path), std::invalid_argument);
}

TEST_CASE("P/Q topology") {
  const Instance inst = gen_pq(3, 0.1);
  CHECK(inst.num_servers() == 4);
  CHECK(paths(inst) == std::vector<std::vector<ServerId>>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(eval(inst.servers()[0].capability, 1) == Cost(1.1));
  CHECK(eval(inst.servers()[2].capability, 3) == Cost(3.0));
}

TEST_CASE("recording matrix") {
  const RecordingMatrix rm(gen_adversarial(8));
  CHECK(rm.rows() == 8);
  CHECK(rm.cols() == 4);
  CHECK(rm.ones() == 8);
  for (std::size_t j = 0; j < 4; ++j) {
    for (ServerId i = 0; i < 8; ++i) CHECK(rm.at(i, j) == (i / 2 == j));
  }
  CHECK(rm.to_text().substr(0, 8) == "1 0 0 0\n");

  const Instance full({{0, CapabilityFunction::step(1, 1.0)},
                       {1, CapabilityFunction::step(1, 1.0)},
                       {2, CapabilityFunction::step(1, 1.0)}},
                      {{0, 2, {0, 1, 2}}});
  const auto col = recording_matrix(full);
  CHECK(col.ones() == 3);
}

TEST_CASE("save and load round-trip byte for byte") {
  RandomInstanceParams p;
  p.nodes = 8;
  p.flows = 25;
  p.max_demand = 15;
  const auto dir = testing::scratch_dir("roundtrip");
  const Instance inst = gen_random(p, 3);
  save(inst, dir / "a.json");
  const Instance back = load(dir / "a.json");
  save(back, dir / "b.json");
  CHECK(back == inst);
  CHECK(testing::slurp(dir / "a.json") == testing::slurp(dir / "b.json"));

  const Instance tab({{0, CapabilityFunction::table({Cost(0.0), Cost(0.5), Cost::infinity()},
                                                    TableOverflow::kInfinity)}},
                     {{0, 1, {0}}});
  CHECK(from_json_text(to_json_text(tab)) == tab);
}

namespace {

const char* kTwoServers = R"({
  "version": 1,
  "metadata": {"generator":"manual","seed":0,"params":{}},
  "servers": [
    {"id":0,"capability":{"kind":"step","unit_size":1,"unit_cost":1.0}},
    {"id":SECOND,"capability":{"kind":"step","unit_size":1,"unit_cost":1.0}}
  ],
  "flows": [
    {"id":0,"demand":DEMAND,"path":[0,1]}
  ]
}
)";

std::string fill(std::string text, const std::string& second, const std::string& demand) {
  text.replace(text.find("SECOND"), 6, second);
  text.replace(text.find("DEMAND"), 6, demand);
  return text;
}

}  // namespace

TEST_CASE("load errors name the problem and its line") {
  CHECK_NOTHROW(from_json_text(fill(kTwoServers, "1", "2")));
  try {
    from_json_text(fill(kTwoServers, "0", "2"));
    FAIL("duplicate id accepted");
  } catch (const InstanceFormatError& e) {
    CHECK(std::string(e.what()).find("duplicate server id 0") != std::string::npos);
    CHECK(e.line() == 6);
  }
  try {
    from_json_text(fill(kTwoServers, "1", "0"));
    FAIL("zero demand accepted");
  } catch (const InstanceFormatError& e) {
    CHECK(std::string(e.what()).find("demand must be ≥ 1") != std::string::npos);
    CHECK(e.pointer() == "/flows/0/demand");
    CHECK(e.line() == 9);
  }
  CHECK_THROWS_AS(from_json_text("{"), InstanceFormatError);
  std::string unknown = fill(kTwoServers, "1", "2");
  unknown.replace(unknown.find("\"step\""), 6, "\"cubic\"");
  CHECK_THROWS_WITH_AS(from_json_text(unknown), doctest::Contains("unknown capability kind"),
                       InstanceFormatError);
}

TEST_CASE("instance constructor validation") {
  const std::vector<Server> servers = {{0, CapabilityFunction::step(1, 1.0)}};
  CHECK_THROWS_AS(Instance(servers, {{0, 0, {0}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(servers, {{0, 1, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(servers, {{0, 1, {1}}}), std::invalid_argument);
  CHECK_THROWS_AS(Instance(servers, {{1, 1, {0}}}), std::invalid_argument);
  const Instance sorted(servers, {{0, 1, {0}}});
  CHECK(sorted.max_demand() == 1);
}

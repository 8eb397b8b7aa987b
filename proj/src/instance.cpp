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

#include "vnfp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <variant>

#include "json_locate.hpp"
#include "vnfp/rng.hpp"

namespace vnfp {

using Json = nlohmann::ordered_json;

bool Flow::passes(ServerId s) const {
  return std::binary_search(path.begin(), path.end(), s);
}

Instance::Instance(std::vector<Server> servers, std::vector<Flow> flows,
                   InstanceMetadata metadata)
    : servers_(std::move(servers)), flows_(std::move(flows)), metadata_(std::move(metadata)) {
  for (std::size_t i = 0; i < servers_.size(); ++i) {
    if (servers_[i].id != i) {
      throw std::invalid_argument("server ids must be dense and ordered: position " +
                                  std::to_string(i) + " has id " +
                                  std::to_string(servers_[i].id));
    }
  }
  for (std::size_t k = 0; k < flows_.size(); ++k) {
    auto& f = flows_[k];
    if (f.id != k) {
      throw std::invalid_argument("flow ids must equal arrival order: position " +
                                  std::to_string(k) + " has id " + std::to_string(f.id));
    }
    if (f.demand < 1) {
      throw std::invalid_argument("flow " + std::to_string(k) + ": demand must be >= 1");
    }
    if (f.path.empty()) {
      throw std::invalid_argument("flow " + std::to_string(k) + ": path must be non-empty");
    }
    std::sort(f.path.begin(), f.path.end());
    if (std::adjacent_find(f.path.begin(), f.path.end()) != f.path.end()) {
      throw std::invalid_argument("flow " + std::to_string(k) + ": duplicate server in path");
    }
    if (f.path.back() >= servers_.size()) {
      throw std::invalid_argument("flow " + std::to_string(k) + ": unknown server " +
                                  std::to_string(f.path.back()));
    }
  }
}

Load Instance::max_demand() const {
  Load d = 0;
  for (const auto& f : flows_) d = std::max(d, f.demand);
  return d;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

CapabilityFunction random_capability(Rng& rng, const CapabilityMix& mix, Load max_demand) {
  const double total = mix.step + mix.hard_cap + mix.fixed_linear + mix.concave;
  double u = rng.uniform01() * total;
  const Load d = std::max<Load>(1, max_demand);
  if ((u -= mix.step) < 0.0) {
    const Load r = rng.uniform_int(1, 20);
    return CapabilityFunction::step(r, round3(rng.uniform_real(0.5, 5.0)));
  }
  if ((u -= mix.hard_cap) < 0.0) {
    const double b = round3(rng.uniform_real(0.5, 5.0));
    const Load c = rng.uniform_int(std::max<Load>(1, d / 2), 2 * d);
    return CapabilityFunction::hard_cap(b, c);
  }
  if ((u -= mix.fixed_linear) < 0.0) {
    const double b = round3(rng.uniform_real(0.0, 2.0));
    const double a = round3(rng.uniform_real(0.01, 1.0));
    return CapabilityFunction::fixed_linear(b, a);
  }
  std::vector<double> slopes(3);
  for (auto& s : slopes) s = round3(rng.uniform_real(0.01, 1.0));
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  std::vector<Breakpoint> bps;
  Load x = 0;
  double y = 0.0;
  for (double s : slopes) {
    const Load gap = rng.uniform_int(1, d);
    x += gap;
    y += s * static_cast<double>(gap);
    bps.push_back({x, round3(y)});
  }
  return CapabilityFunction::concave(std::move(bps));
}

}  // namespace

Instance gen_random(const RandomInstanceParams& p, std::uint64_t seed) {
  const std::size_t path_max = p.path_max == 0 ? p.nodes : p.path_max;
  if (p.nodes < 1 || p.flows < 1) throw std::invalid_argument("gen_random: nodes and flows must be >= 1");
  if (p.max_demand < 1) throw std::invalid_argument("gen_random: max_demand must be >= 1");
  if (p.path_min < 1 || p.path_min > path_max || path_max > p.nodes) {
    throw std::invalid_argument("gen_random: need 1 <= path_min <= path_max <= nodes");
  }
  const auto& m = p.mix;
  if (m.step < 0 || m.hard_cap < 0 || m.fixed_linear < 0 || m.concave < 0 ||
      m.step + m.hard_cap + m.fixed_linear + m.concave <= 0) {
    throw std::invalid_argument("gen_random: capability mix weights must be >= 0 with positive sum");
  }

  Rng rng(seed);
  std::vector<Server> servers;
  servers.reserve(p.nodes);
  for (std::size_t i = 0; i < p.nodes; ++i) {
    servers.push_back({i, random_capability(rng, p.mix, p.max_demand)});
  }

  std::vector<bool> capped(p.nodes);
  for (std::size_t i = 0; i < p.nodes; ++i) {
    capped[i] = std::holds_alternative<HardCapCost>(servers[i].capability.variant());
  }
  const bool guard =
      p.ensure_feasible && std::find(capped.begin(), capped.end(), false) != capped.end();

  std::vector<ServerId> ids(p.nodes);
  std::iota(ids.begin(), ids.end(), ServerId{0});
  std::vector<Flow> flows;
  flows.reserve(p.flows);
  for (std::size_t k = 0; k < p.flows; ++k) {
    Flow f;
    f.id = k;
    f.demand = rng.uniform_int(1, p.max_demand);
    do {
      const auto len = static_cast<std::size_t>(rng.uniform_int(
          static_cast<std::int64_t>(p.path_min), static_cast<std::int64_t>(path_max)));
      for (std::size_t i = 0; i < len; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(
            static_cast<std::int64_t>(i), static_cast<std::int64_t>(p.nodes) - 1));
        std::swap(ids[i], ids[j]);
      }
      f.path.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(len));
    } while (guard && std::all_of(f.path.begin(), f.path.end(),
                                  [&](ServerId s) { return capped[s]; }));
    std::sort(f.path.begin(), f.path.end());
    flows.push_back(std::move(f));
  }

  InstanceMetadata meta;
  meta.generator = "random";
  meta.seed = seed;
  meta.params = Json{
      {"nodes", p.nodes},
      {"flows", p.flows},
      {"max_demand", p.max_demand},
      {"path_min", p.path_min},
      {"path_max", path_max},
      {"ensure_feasible", guard},
      {"mix", Json{{"step", m.step},
                   {"hardcap", m.hard_cap},
                   {"fixed_linear", m.fixed_linear},
                   {"concave", m.concave}}},
      {"ranges",
       "step R~U{1..20} cost~U[0.5,5]; hardcap b~U[0.5,5] c~U{D/2..2D}; "
       "fixed_linear b~U[0,2] a~U[0.01,1]; concave 3 segments gap~U{1..D} "
       "slope~U[0.01,1] decreasing; reals rounded to 1e-3"},
  };
  return Instance(std::move(servers), std::move(flows), std::move(meta));
}

Instance gen_adversarial(std::size_t m) {
  if (m == 0 || m % 2 != 0) {
    throw std::invalid_argument("gen_adversarial: m must be a positive even integer");
  }
  std::vector<Server> servers;
  for (std::size_t i = 0; i < m; ++i) servers.push_back({i, CapabilityFunction::hard_cap(1.0, 1)});
  std::vector<Flow> flows;
  for (std::size_t k = 0; k < m / 2; ++k) flows.push_back({k, 1, {2 * k, 2 * k + 1}});
  InstanceMetadata meta;
  meta.generator = "adversarial";
  meta.params = Json{{"m", m}, {"phase", "first_half"}};
  return Instance(std::move(servers), std::move(flows), std::move(meta));
}

Instance adversary_extend(const Instance& partial, std::span<const Allocation> first_half) {
  if (first_half.size() != partial.num_flows()) {
    throw std::invalid_argument("adversary_extend: need one allocation per first-half flow");
  }
  std::vector<Flow> flows(partial.flows().begin(), partial.flows().end());
  const std::size_t half = flows.size();
  for (std::size_t k = 0; k < half; ++k) {
    const auto& a = first_half[k];
    if (a.size() != 1 || a.begin()->second != 1 || !flows[k].passes(a.begin()->first)) {
      throw std::invalid_argument("adversary_extend: flow " + std::to_string(k) +
                                  " allocation is not a single unit on a path server");
    }
    flows.push_back({half + k, 1, {a.begin()->first}});
  }
  InstanceMetadata meta = partial.metadata();
  meta.params["phase"] = "extended";
  return Instance(std::vector<Server>(partial.servers().begin(), partial.servers().end()),
                  std::move(flows), std::move(meta));
}

Instance gen_pq(std::size_t m, double epsilon) {
  if (m < 1) throw std::invalid_argument("gen_pq: m must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("gen_pq: epsilon must be positive");
  }
  std::vector<Server> servers;
  servers.push_back({0, CapabilityFunction::fixed_linear(1.0, epsilon)});
  for (std::size_t k = 1; k <= m; ++k) servers.push_back({k, CapabilityFunction::fixed_linear(0.0, 1.0)});
  std::vector<Flow> flows;
  for (std::size_t k = 0; k < m; ++k) flows.push_back({k, 1, {0, k + 1}});
  InstanceMetadata meta;
  meta.generator = "pq";
  meta.params = Json{{"m", m}, {"epsilon", epsilon}};
  return Instance(std::move(servers), std::move(flows), std::move(meta));
}

// ---------------------------------------------------------------------------
// Recording matrix

RecordingMatrix::RecordingMatrix(const Instance& inst)
    : rows_(inst.num_servers()), cols_(inst.num_flows()), bits_(rows_ * cols_, 0) {
  for (const auto& f : inst.flows()) {
    for (ServerId s : f.path) bits_[s * cols_ + f.id] = 1;
  }
}

std::size_t RecordingMatrix::ones() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::string RecordingMatrix::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j > 0) out.push_back(' ');
      out.push_back(at(i, j) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// File format

InstanceFormatError::InstanceFormatError(std::string pointer, std::size_t line,
                                         const std::string& what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (pointer.empty() ? std::string("/") : pointer) + ": " + what),
      pointer_(std::move(pointer)),
      line_(line) {}

namespace {

Json cost_to_json(Cost c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

Json capability_to_json(const CapabilityFunction& f) {
  Json j;
  j["kind"] = f.kind();
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, StepCost>) {
          j["unit_size"] = v.unit_size;
          j["unit_cost"] = v.unit_cost;
        } else if constexpr (std::is_same_v<T, HardCapCost>) {
          j["open_cost"] = v.open_cost;
          j["capacity"] = v.capacity;
        } else if constexpr (std::is_same_v<T, FixedLinearCost>) {
          j["open_cost"] = v.open_cost;
          j["slope"] = v.slope;
        } else if constexpr (std::is_same_v<T, ConcaveCost>) {
          Json bps = Json::array();
          for (const auto& b : v.breakpoints) bps.push_back(Json{{"load", b.load}, {"cost", b.cost}});
          j["breakpoints"] = std::move(bps);
        } else {
          Json vals = Json::array();
          for (Cost c : v.values) vals.push_back(cost_to_json(c));
          j["values"] = std::move(vals);
          j["overflow"] = v.overflow == TableOverflow::kInfinity ? "inf" : "last";
        }
      },
      f.variant());
  return j;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    throw InstanceFormatError(ptr, detail::line_of_pointer(text_, ptr), msg);
  }

  const Json& field(const Json& obj, const std::string& ptr, const char* key) const {
    if (!obj.is_object()) fail(ptr, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(ptr, std::string("missing field \"") + key + "\"");
    return *it;
  }

  std::int64_t integer(const Json& v, const std::string& ptr) const {
    if (v.is_number_unsigned()) {
      if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) fail(ptr, "integer out of range");
      return static_cast<std::int64_t>(v.get<std::uint64_t>());
    }
    if (v.is_number_integer()) return v.get<std::int64_t>();
    fail(ptr, "expected an integer");
  }

  std::uint64_t unsigned_integer(const Json& v, const std::string& ptr) const {
    if (!v.is_number_unsigned()) fail(ptr, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  double real(const Json& v, const std::string& ptr) const {
    if (!v.is_number()) fail(ptr, "expected a number");
    return v.get<double>();
  }

  Cost cost(const Json& v, const std::string& ptr) const {
    if (v.is_string() && v.get<std::string>() == "inf") return Cost::infinity();
    const double d = real(v, ptr);
    if (!(d >= 0.0)) fail(ptr, "cost must be >= 0");
    return Cost(d);
  }

  CapabilityFunction capability(const Json& j, const std::string& ptr) const {
    const Json& kind_j = field(j, ptr, "kind");
    if (!kind_j.is_string()) fail(ptr + "/kind", "expected a string");
    const std::string kind = kind_j.get<std::string>();
    try {
      if (kind == "step") {
        return CapabilityFunction::step(integer(field(j, ptr, "unit_size"), ptr + "/unit_size"),
                                        real(field(j, ptr, "unit_cost"), ptr + "/unit_cost"));
      }
      if (kind == "hardcap") {
        return CapabilityFunction::hard_cap(real(field(j, ptr, "open_cost"), ptr + "/open_cost"),
                                            integer(field(j, ptr, "capacity"), ptr + "/capacity"));
      }
      if (kind == "fixed_linear") {
        return CapabilityFunction::fixed_linear(
            real(field(j, ptr, "open_cost"), ptr + "/open_cost"),
            real(field(j, ptr, "slope"), ptr + "/slope"));
      }
      if (kind == "concave") {
        const Json& arr = field(j, ptr, "breakpoints");
        if (!arr.is_array()) fail(ptr + "/breakpoints", "expected an array");
        std::vector<Breakpoint> bps;
        for (std::size_t i = 0; i < arr.size(); ++i) {
          const std::string p = ptr + "/breakpoints/" + std::to_string(i);
          bps.push_back({integer(field(arr[i], p, "load"), p + "/load"),
                         real(field(arr[i], p, "cost"), p + "/cost")});
        }
        return CapabilityFunction::concave(std::move(bps));
      }
      if (kind == "table") {
        const Json& arr = field(j, ptr, "values");
        if (!arr.is_array()) fail(ptr + "/values", "expected an array");
        std::vector<Cost> vals;
        for (std::size_t i = 0; i < arr.size(); ++i) {
          vals.push_back(cost(arr[i], ptr + "/values/" + std::to_string(i)));
        }
        const Json& ov = field(j, ptr, "overflow");
        if (!ov.is_string() || (ov.get<std::string>() != "last" && ov.get<std::string>() != "inf")) {
          fail(ptr + "/overflow", "overflow must be \"last\" or \"inf\"");
        }
        return CapabilityFunction::table(
            std::move(vals), ov.get<std::string>() == "inf" ? TableOverflow::kInfinity
                                                            : TableOverflow::kLastValue);
      }
    } catch (const std::invalid_argument& e) {
      fail(ptr, e.what());
    }
    fail(ptr + "/kind", "unknown capability kind \"" + kind + "\"");
  }

  Instance instance(const Json& root) const {
    const Json& version = field(root, "", "version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != 1) {
      fail("/version", "unsupported version (expected 1)");
    }

    InstanceMetadata meta;
    const Json& mj = field(root, "", "metadata");
    const Json& gen = field(mj, "/metadata", "generator");
    if (!gen.is_string()) fail("/metadata/generator", "expected a string");
    meta.generator = gen.get<std::string>();
    meta.seed = unsigned_integer(field(mj, "/metadata", "seed"), "/metadata/seed");
    meta.params = field(mj, "/metadata", "params");
    if (!meta.params.is_object()) fail("/metadata/params", "expected an object");

    const Json& sj = field(root, "", "servers");
    if (!sj.is_array()) fail("/servers", "expected an array");
    std::vector<std::optional<Server>> slots(sj.size());
    for (std::size_t i = 0; i < sj.size(); ++i) {
      const std::string p = "/servers/" + std::to_string(i);
      const std::uint64_t id = unsigned_integer(field(sj[i], p, "id"), p + "/id");
      if (id >= sj.size()) {
        fail(p + "/id", "server id " + std::to_string(id) + " out of range (ids must be dense 0.." +
                            std::to_string(sj.size() - 1) + ")");
      }
      if (slots[id].has_value()) fail(p + "/id", "duplicate server id " + std::to_string(id));
      slots[id] = Server{id, capability(field(sj[i], p, "capability"), p + "/capability")};
    }
    std::vector<Server> servers;
    for (auto& s : slots) servers.push_back(std::move(*s));

    const Json& fj = field(root, "", "flows");
    if (!fj.is_array()) fail("/flows", "expected an array");
    std::vector<Flow> flows;
    for (std::size_t k = 0; k < fj.size(); ++k) {
      const std::string p = "/flows/" + std::to_string(k);
      Flow f;
      const std::uint64_t id = unsigned_integer(field(fj[k], p, "id"), p + "/id");
      if (id != k) fail(p + "/id", "flow id must equal its arrival position " + std::to_string(k));
      f.id = k;
      f.demand = integer(field(fj[k], p, "demand"), p + "/demand");
      if (f.demand < 1) fail(p + "/demand", "demand must be ≥ 1");
      const Json& path = field(fj[k], p, "path");
      if (!path.is_array() || path.empty()) fail(p + "/path", "path must be a non-empty array");
      std::set<ServerId> seen;
      for (std::size_t i = 0; i < path.size(); ++i) {
        const std::string pp = p + "/path/" + std::to_string(i);
        const std::uint64_t s = unsigned_integer(path[i], pp);
        if (s >= servers.size()) fail(pp, "unknown server id " + std::to_string(s));
        if (!seen.insert(s).second) fail(pp, "duplicate server id " + std::to_string(s) + " in path");
      }
      f.path.assign(seen.begin(), seen.end());
      flows.push_back(std::move(f));
    }
    return Instance(std::move(servers), std::move(flows), std::move(meta));
  }

 private:
  const std::string& text_;
};

}  // namespace

std::string to_json_text(const Instance& inst) {
  std::ostringstream out;
  const auto& meta = inst.metadata();
  const Json mj{{"generator", meta.generator}, {"seed", meta.seed}, {"params", meta.params}};
  out << "{\n  \"version\": 1,\n  \"metadata\": " << mj.dump() << ",\n  \"servers\": [";
  for (std::size_t i = 0; i < inst.num_servers(); ++i) {
    const auto& s = inst.servers()[i];
    const Json sj{{"id", s.id}, {"capability", capability_to_json(s.capability)}};
    out << (i == 0 ? "\n    " : ",\n    ") << sj.dump();
  }
  out << (inst.num_servers() > 0 ? "\n  ]" : "]") << ",\n  \"flows\": [";
  for (std::size_t k = 0; k < inst.num_flows(); ++k) {
    const auto& f = inst.flows()[k];
    const Json fj{{"id", f.id}, {"demand", f.demand}, {"path", f.path}};
    out << (k == 0 ? "\n    " : ",\n    ") << fj.dump();
  }
  out << (inst.num_flows() > 0 ? "\n  ]" : "]") << "\n}\n";
  return out.str();
}

Instance from_json_text(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(
                              std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw InstanceFormatError("", line, std::string("malformed JSON: ") + e.what());
  }
  return Reader(text).instance(root);
}

void save(const Instance& inst, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + file.string() + " for writing");
  out << to_json_text(inst);
  if (!out) throw std::runtime_error("failed writing " + file.string());
}

Instance load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

}  // namespace vnfp

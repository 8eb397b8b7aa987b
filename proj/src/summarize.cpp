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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "vnfp/harness.hpp"

namespace vnfp::harness {

namespace {

constexpr const char* kMetrics[] = {"cost", "ratio", "time_ms", "fail_rate"};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// Non-finite and unparsable cells are skipped: an "inf" cost is a failed
// run, not a magnitude.
std::optional<double> parse_cell(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Group {
  std::size_t count = 0;
  std::map<std::string, std::vector<double>> values;
};

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<std::filesystem::path>& csv_files) {
  std::vector<std::string> order;
  std::map<std::string, Group> groups;
  std::vector<std::string> metrics_seen;

  for (const auto& file : csv_files) {
    std::ifstream in(file);
    if (!in) throw CsvError(file.string() + ": cannot open");
    std::string line;
    if (!std::getline(in, line) || line.empty()) throw CsvError(file.string() + ": empty CSV");
    if (line.back() == '\r') line.pop_back();
    const auto header = split(line);
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) return std::nullopt;
      return static_cast<std::size_t>(it - header.begin());
    };
    const auto algo_col = column("algo");
    const auto r_col = column("r");
    const auto row_col = column("row_update");
    std::vector<std::pair<std::string, std::size_t>> metric_cols;
    for (const char* m : kMetrics) {
      if (auto c = column(m)) {
        metric_cols.emplace_back(m, *c);
        if (std::find(metrics_seen.begin(), metrics_seen.end(), m) == metrics_seen.end()) {
          metrics_seen.push_back(m);
        }
      }
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto fields = split(line);
      if (fields.size() != header.size()) {
        throw CsvError(file.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
      }
      std::string key;
      if (algo_col) key += fields[*algo_col];
      if (r_col && !fields[*r_col].empty()) key += (key.empty() ? "" : " ") + std::string("r=") + fields[*r_col];
      if (row_col && !fields[*row_col].empty()) {
        key += (key.empty() ? "" : " ") + std::string("row_update=") + fields[*row_col];
      }
      if (key.empty()) key = "all";
      auto [it, inserted] = groups.try_emplace(key);
      if (inserted) order.push_back(key);
      Group& g = it->second;
      ++g.count;
      for (const auto& [metric, col] : metric_cols) {
        if (auto v = parse_cell(fields[col])) g.values[metric].push_back(*v);
      }
    }
  }

  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const Group& g = groups.at(key);
    SummaryRow row;
    row.group = key;
    row.count = g.count;
    for (const auto& metric : metrics_seen) {
      SummaryRow::Stat st;
      st.metric = metric;
      const auto it = g.values.find(metric);
      if (it == g.values.end() || it->second.empty()) {
        st.mean = st.min = st.max = st.stddev = std::nan("");
      } else {
        const auto& v = it->second;
        const double n = static_cast<double>(v.size());
        double sum = 0.0;
        for (double x : v) sum += x;
        st.mean = sum / n;
        st.min = *std::min_element(v.begin(), v.end());
        st.max = *std::max_element(v.begin(), v.end());
        double ss = 0.0;
        for (double x : v) ss += (x - st.mean) * (x - st.mean);
        st.stddev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
      }
      row.stats.push_back(st);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& summary) {
  std::string out = "group,count";
  if (!summary.empty()) {
    for (const auto& st : summary.front().stats) {
      for (const char* suffix : {"_mean", "_min", "_max", "_stddev"}) out += "," + st.metric + suffix;
    }
  }
  out += "\n";
  auto cell = [](double v) { return std::isnan(v) ? std::string() : format_real(v); };
  for (const auto& row : summary) {
    out += row.group + "," + std::to_string(row.count);
    for (const auto& st : row.stats) {
      out += "," + cell(st.mean) + "," + cell(st.min) + "," + cell(st.max) + "," + cell(st.stddev);
    }
    out += "\n";
  }
  return out;
}

}  // namespace vnfp::harness

/*
 * Copyright 2026 The Recourse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "recourse_app/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <tuple>

namespace recourse::app {

std::vector<MetricRow> FlattenReport(const std::string& method, const MetricsReport& report,
                                     const std::vector<ResultDoc>& docs) {
  std::vector<MetricRow> rows;
  auto add = [&](std::string metric, std::string group, double value, Format format) {
    rows.push_back({method, std::move(metric), std::move(group), value, format});
  };
  add("users", "all", static_cast<double>(report.users), Format::kCount);
  add("fs_at_k", "all", report.fs_at_k, Format::kPercent);
  if (report.pac.pac) add("pac_finite", "all", *report.pac.pac, Format::kFixed2);
  add("uncovered_count", "all", static_cast<double>(report.pac.uncovered), Format::kCount);
  add("coverage", "all", report.coverage, Format::kPercent);
  add("diversity", "all", report.distance.diversity, Format::kPercent);
  add("proximity", "all", report.distance.proximity, Format::kPercent);
  add("sparsity", "all", report.distance.sparsity, Format::kPercent);
  add("validity", "all", report.distance.validity, Format::kPercent);

  if (!docs.empty()) {
    double uncovered = 0.0, covered = 0.0, queries = 0.0, max_queries = 0.0;
    for (const auto& d : docs) {
      if (d.emc.samples > 0) {
        uncovered += static_cast<double>(d.emc.uncovered) / static_cast<double>(d.emc.samples);
        covered += d.emc.covered_mean();
      }
      queries += static_cast<double>(d.queries);
      max_queries = std::max(max_queries, static_cast<double>(d.queries));
    }
    const double n = static_cast<double>(docs.size());
    add("emc_uncovered", "all", uncovered / n, Format::kPercent);
    add("emc_covered_mean", "all", covered / n, Format::kFixed4);
    add("queries_mean", "all", queries / n, Format::kFixed2);
    add("queries_max", "all", max_queries, Format::kCount);
  }

  for (const auto& [attribute, groups] : report.subgroups) {
    for (const auto& [value, m] : groups) {
      const std::string group = attribute + "=" + std::to_string(value);
      add("users", group, static_cast<double>(m.users), Format::kCount);
      add("fs_at_k", group, m.fs_at_k, Format::kPercent);
      add("coverage", group, m.coverage, Format::kPercent);
      if (m.pac.pac) add("pac_finite", group, *m.pac.pac, Format::kFixed2);
    }
  }
  for (const auto& [attribute, dir] : report.dir) {
    if (dir.fs_at_k) add("dir_fs_at_k", attribute, *dir.fs_at_k, Format::kFixed3);
    if (dir.coverage) add("dir_coverage", attribute, *dir.coverage, Format::kFixed3);
  }
  return rows;
}

std::vector<MetricRow> MeanRows(const std::vector<std::vector<MetricRow>>& runs) {
  using Key = std::tuple<std::string, std::string, std::string>;
  std::vector<MetricRow> out;
  std::map<Key, std::pair<std::size_t, std::size_t>> index;  // key -> (row, count)
  for (const auto& run : runs) {
    for (const auto& row : run) {
      Key key{row.method, row.metric, row.group};
      auto it = index.find(key);
      if (it == index.end()) {
        index.emplace(key, std::make_pair(out.size(), std::size_t{1}));
        out.push_back(row);
      } else {
        out[it->second.first].value += row.value;
        ++it->second.second;
      }
    }
  }
  for (const auto& [key, slot] : index) {
    out[slot.first].value /= static_cast<double>(slot.second);
  }
  return out;
}

std::string FormatValue(double value, Format format) {
  char buf[64];
  switch (format) {
    case Format::kPercent: std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * value); break;
    case Format::kFixed2: std::snprintf(buf, sizeof(buf), "%.2f", value); break;
    case Format::kFixed3: std::snprintf(buf, sizeof(buf), "%.3f", value); break;
    case Format::kFixed4: std::snprintf(buf, sizeof(buf), "%.4f", value); break;
    case Format::kCount: std::snprintf(buf, sizeof(buf), "%.10g", value); break;
  }
  return buf;
}

std::string MetricsCsv(const std::vector<MetricRow>& rows) {
  std::string out = "method,metric,group,value\n";
  for (const auto& r : rows) {
    out += r.method + "," + r.metric + "," + r.group + "," + FormatValue(r.value, r.format) +
           "\n";
  }
  return out;
}

const MetricRow* FindRow(const std::vector<MetricRow>& rows, const std::string& method,
                         const std::string& metric, const std::string& group) {
  for (const auto& r : rows) {
    if (r.method == method && r.metric == metric && r.group == group) return &r;
  }
  return nullptr;
}

}  // namespace recourse::app

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

#ifndef RECOURSE_APP_REPORT_HPP_
#define RECOURSE_APP_REPORT_HPP_

#include <string>
#include <vector>

#include "recourse/metrics.hpp"
#include "recourse/schema.hpp"
#include "recourse_app/results.hpp"

namespace recourse::app {

enum class Format { kPercent, kFixed2, kFixed3, kFixed4, kCount };

struct MetricRow {
  std::string method;
  std::string metric;
  std::string group;  // "all", "<attribute>=<value>" or "<attribute>"
  double value = 0.0;
  Format format = Format::kPercent;
};

// Population metrics plus search-side statistics (EMC split, queries)
// taken from `docs`.
std::vector<MetricRow> FlattenReport(const std::string& method, const MetricsReport& report,
                                     const std::vector<ResultDoc>& docs);

// Averages rows sharing (method, metric, group) over the runs in which
// they appear. Row order follows first appearance.
std::vector<MetricRow> MeanRows(const std::vector<std::vector<MetricRow>>& runs);

// Fractions as percentages with two decimals, PAC with two, DIR with
// three.
std::string FormatValue(double value, Format format);

// method,metric,group,value
std::string MetricsCsv(const std::vector<MetricRow>& rows);

const MetricRow* FindRow(const std::vector<MetricRow>& rows, const std::string& method,
                         const std::string& metric, const std::string& group = "all");

}  // namespace recourse::app

#endif  // RECOURSE_APP_REPORT_HPP_

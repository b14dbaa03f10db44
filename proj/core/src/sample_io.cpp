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

#include "recourse/sample_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "recourse/error.hpp"

namespace recourse {
namespace {

using nlohmann::json;

json CostToJson(double c) {
  if (std::isinf(c)) return "inf";
  return c;
}

double CostFromJson(const json& node) {
  if (node.is_string()) {
    if (node.get<std::string>() == "inf") return kInfinity;
    throw ParseError("sample set: unexpected string cost '" + node.get<std::string>() + "'");
  }
  return node.get<double>();
}

}  // namespace

std::string SerializeSampleSet(const CostSampleSet& samples, const DatasetSchema& schema) {
  json doc;
  doc["distribution"] = ToString(samples.distribution);
  doc["seed"] = samples.seed;
  doc["state"] = samples.state.values;
  doc["num_samples"] = samples.size();
  json list = json::array();
  for (const auto& c : samples.samples) {
    json item;
    item["alpha"] = c.alpha();
    item["preferences"] = c.preferences();
    item["editable"] = c.editable();
    json features = json::array();
    for (std::size_t f = 0; f < schema.num_features(); ++f) {
      json costs = json::array();
      for (double v : c.feature_costs(f)) costs.push_back(CostToJson(v));
      features.push_back(std::move(costs));
    }
    item["costs"] = std::move(features);
    list.push_back(std::move(item));
  }
  doc["samples"] = std::move(list);
  return doc.dump() + "\n";
}

CostSampleSet ParseSampleSet(std::string_view text, const DatasetSchema& schema) {
  try {
    const json doc = json::parse(text);
    CostSampleSet out;
    out.distribution = ParseDistribution(doc.at("distribution").get<std::string>());
    out.seed = doc.at("seed").get<std::uint64_t>();
    out.state.values = doc.at("state").get<std::vector<int>>();
    schema.validate(out.state);
    for (const auto& item : doc.at("samples")) {
      const auto& features = item.at("costs");
      if (features.size() != schema.num_features()) {
        throw ParseError("sample set: cost vector count does not match schema");
      }
      std::vector<double> flat;
      flat.reserve(schema.total_domain_size());
      for (std::size_t f = 0; f < features.size(); ++f) {
        if (features[f].size() != schema.feature(f).size()) {
          throw ParseError("sample set: cost vector for '" + schema.feature(f).name() +
                           "' has wrong length");
        }
        for (const auto& v : features[f]) flat.push_back(CostFromJson(v));
      }
      out.samples.emplace_back(schema, std::move(flat),
                               item.at("preferences").get<std::vector<double>>(),
                               item.at("editable").get<std::vector<bool>>(),
                               item.at("alpha").get<double>());
    }
    if (out.samples.size() != doc.at("num_samples").get<std::size_t>()) {
      throw ParseError("sample set: num_samples does not match sample list");
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("sample set: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("sample set: ") + e.what());
  }
}

void WriteSampleSet(const std::filesystem::path& path, const CostSampleSet& samples,
                    const DatasetSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << SerializeSampleSet(samples, schema);
}

CostSampleSet ReadSampleSet(const std::filesystem::path& path, const DatasetSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseSampleSet(buffer.str(), schema);
}

}  // namespace recourse

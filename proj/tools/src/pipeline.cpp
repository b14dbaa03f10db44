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

#include "recourse_app/pipeline.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "recourse/error.hpp"
#include "recourse/sample_io.hpp"
#include "recourse_app/hashing.hpp"
#include "recourse_app/pool.hpp"

namespace recourse::app {
namespace {

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

double ParseNumber(const std::string& text) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno != 0 || !std::isfinite(v)) {
    throw InvalidArgument("malformed preference value '" + text + "'");
  }
  return v;
}

std::string CacheKey(const Workspace& ws, std::size_t i, const GenerateParams& p) {
  std::ostringstream key;
  key << ws.ids[i] << '|' << HashState(ws.users[i]) << '|' << p.search.seed << '|'
      << p.search.num_samples << '|' << ToString(p.distribution);
  if (p.overrides.alpha) key << "|a" << *p.overrides.alpha;
  if (p.overrides.editable) {
    key << "|e";
    for (bool b : *p.overrides.editable) key << (b ? '1' : '0');
  }
  if (p.overrides.preferences) {
    key << "|p";
    for (double v : *p.overrides.preferences) key << v << ';';
  }
  return "u" + std::to_string(ws.ids[i]) + "_" + HexDigest(Fnv1a(key.str())) + ".json";
}

}  // namespace

std::vector<std::size_t> UndesiredRows(const Classifier& classifier,
                                       const std::vector<UserState>& rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (classifier.probability(rows[i]) < 0.5) out.push_back(i);
  }
  return out;
}

Workspace MakeWorkspace(DatasetSchema schema, Classifier classifier,
                        const std::vector<UserState>& train_rows,
                        const std::vector<UserState>& candidate_rows,
                        std::optional<std::size_t> max_users) {
  if (classifier.num_inputs() != schema.num_features()) {
    throw InvalidArgument("model expects " + std::to_string(classifier.num_inputs()) +
                          " features, schema has " + std::to_string(schema.num_features()));
  }
  PercentileTable table = BuildPercentileTable(train_rows, schema);
  std::vector<std::size_t> ids = UndesiredRows(classifier, candidate_rows);
  if (max_users && ids.size() > *max_users) ids.resize(*max_users);
  std::vector<UserState> users;
  users.reserve(ids.size());
  for (std::size_t id : ids) users.push_back(candidate_rows[id]);
  return Workspace{std::move(schema), std::move(classifier), std::move(table), std::move(ids),
                   std::move(users)};
}

Workspace LoadWorkspace(const std::filesystem::path& schema_path,
                        const std::filesystem::path& data_path,
                        const std::filesystem::path& model_path,
                        const std::optional<std::filesystem::path>& train_data_path,
                        std::optional<std::size_t> max_users) {
  DatasetSchema schema = LoadSchema(schema_path);
  Classifier classifier = LoadClassifier(model_path);
  Dataset data = LoadDataset(data_path, schema);
  if (train_data_path && *train_data_path != data_path) {
    Dataset train = LoadDataset(*train_data_path, schema);
    return MakeWorkspace(std::move(schema), std::move(classifier), train.rows, data.rows,
                         max_users);
  }
  return MakeWorkspace(std::move(schema), std::move(classifier), data.rows, data.rows,
                       max_users);
}

std::vector<CostSampleSet> TrainSamples(const Workspace& ws, const GenerateParams& params) {
  ValidateOverrides(ws.schema, params.overrides);
  std::vector<CostSampleSet> out(ws.users.size());
  if (params.samples_dir) std::filesystem::create_directories(*params.samples_dir);
  ParallelFor(ws.users.size(), [&](std::size_t i) {
    std::optional<std::filesystem::path> cached;
    if (params.samples_dir) {
      cached = *params.samples_dir / CacheKey(ws, i, params);
      if (std::filesystem::exists(*cached)) {
        out[i] = ReadSampleSet(*cached, ws.schema);
        return;
      }
    }
    out[i] = SampleCostBatch(ws.schema, ws.table, ws.users[i], params.search.num_samples,
                             params.distribution, params.search.seed, params.overrides);
    if (cached) WriteSampleSet(*cached, out[i], ws.schema);
  });
  return out;
}

std::vector<ResultDoc> Generate(const Workspace& ws, const GenerateParams& params) {
  return Generate(ws, params, TrainSamples(ws, params));
}

std::vector<ResultDoc> Generate(const Workspace& ws, const GenerateParams& params,
                                const std::vector<CostSampleSet>& samples) {
  params.search.validate();
  if (samples.size() != ws.users.size()) {
    throw InvalidArgument("one cost sample set per user is required");
  }
  std::vector<ResultDoc> docs(ws.users.size());
  ParallelFor(ws.users.size(), [&](std::size_t i) {
    SearchResult r = RunSearch(params.method, params.objective, ws.users[i], ws.classifier,
                               samples[i], ws.schema, params.search);
    ResultDoc& doc = docs[i];
    doc.user = ws.ids[i];
    doc.state = ws.users[i];
    doc.method = params.method;
    doc.objective = params.objective;
    doc.seed = params.search.seed;
    doc.budget = params.search.budget;
    doc.set_size = params.search.set_size;
    doc.num_samples = samples[i].size();
    doc.distribution = params.distribution;
    doc.set = std::move(r.set);
    doc.emc = r.emc;
    doc.trace = std::move(r.trace);
    doc.objective_trace = std::move(r.objective_trace);
    doc.restart_emc = std::move(r.restart_emc);
    doc.queries = r.queries;
    doc.iterations = r.iterations;
  });
  return docs;
}

std::vector<SimulatedUser> SimulateUsers(const DatasetSchema& schema,
                                         const PercentileTable& table,
                                         const std::vector<ResultDoc>& docs,
                                         const EvalParams& params) {
  ValidateOverrides(schema, params.overrides);
  std::vector<SimulatedUser> users(docs.size());
  ParallelFor(docs.size(), [&](std::size_t i) {
    users[i] = SimulateUser(schema, table, docs[i].user, docs[i].state, params.test_seed,
                            params.distribution, params.overrides);
  });
  return users;
}

MetricsReport Evaluate(const DatasetSchema& schema, const PercentileTable& table,
                       const std::vector<ResultDoc>& docs, const EvalParams& params) {
  std::vector<SimulatedUser> users = SimulateUsers(schema, table, docs, params);
  std::vector<RecourseSet> sets;
  sets.reserve(docs.size());
  for (const auto& d : docs) sets.push_back(d.set);
  return EvaluatePopulation(schema, users, sets, params.k);
}

std::vector<bool> ParseEditableList(const DatasetSchema& schema, const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty editable list");
  std::vector<bool> mask(schema.num_features(), false);
  for (const auto& name : SplitCommas(text)) {
    if (name.empty()) throw InvalidArgument("empty feature name in editable list");
    mask[schema.require_feature(name)] = true;
  }
  return mask;
}

std::vector<double> ParsePreferenceList(const DatasetSchema& schema, const std::string& text) {
  const auto items = SplitCommas(text);
  std::vector<double> prefs(schema.num_features(), 0.0);
  if (text.find('=') != std::string::npos) {
    for (const auto& item : items) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw InvalidArgument("malformed preference entry '" + item + "' (want name=weight)");
      }
      prefs[schema.require_feature(item.substr(0, eq))] = ParseNumber(item.substr(eq + 1));
    }
    return prefs;
  }
  if (items.size() != schema.num_features()) {
    throw InvalidArgument("preference vector has " + std::to_string(items.size()) +
                          " entries, schema has " + std::to_string(schema.num_features()) +
                          " features");
  }
  for (std::size_t f = 0; f < items.size(); ++f) prefs[f] = ParseNumber(items[f]);
  return prefs;
}

}  // namespace recourse::app

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

#include "recourse_app/results.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "recourse/error.hpp"

namespace recourse::app {
namespace {

using nlohmann::json;

json EmcJson(const EmcValue& v) { return json::array({v.uncovered, v.covered_sum}); }

EmcValue EmcFromJson(const json& j, std::size_t samples) {
  if (!j.is_array() || j.size() != 2) throw ParseError("EMC entry must be [uncovered, sum]");
  EmcValue v;
  v.uncovered = j[0].get<std::size_t>();
  v.covered_sum = j[1].get<double>();
  v.samples = samples;
  return v;
}

json StateJson(const UserState& s) { return s.values; }

UserState StateFromJson(const json& j) { return UserState{j.get<std::vector<int>>()}; }

}  // namespace

std::string MethodLabel(Method method, Objective objective) {
  std::string label(ToString(method));
  if (method == Method::kLocalSearch) label += "-" + std::string(ToString(objective));
  return label;
}

std::string MethodLabel(const ResultDoc& doc) { return MethodLabel(doc.method, doc.objective); }

std::string SerializeResult(const ResultDoc& doc) {
  json j;
  j["user"] = doc.user;
  j["state"] = StateJson(doc.state);
  j["method"] = std::string(ToString(doc.method));
  j["objective"] = std::string(ToString(doc.objective));
  j["seed"] = doc.seed;
  j["budget"] = doc.budget;
  j["set_size"] = doc.set_size;
  j["num_samples"] = doc.num_samples;
  j["distribution"] = std::string(ToString(doc.distribution));
  json members = json::array();
  for (const auto& m : doc.set.members) members.push_back(StateJson(m));
  j["members"] = std::move(members);
  j["valid"] = doc.set.valid;
  const double emc = doc.emc.value();
  j["emc"] = std::isinf(emc) ? json("inf") : json(emc);
  j["emc_detail"] = EmcJson(doc.emc);
  json trace = json::array();
  for (const auto& t : doc.trace) trace.push_back(EmcJson(t));
  j["trace"] = std::move(trace);
  if (!doc.objective_trace.empty()) j["objective_trace"] = doc.objective_trace;
  if (!doc.restart_emc.empty()) {
    json restarts = json::array();
    for (const auto& r : doc.restart_emc) restarts.push_back(EmcJson(r));
    j["restart_emc"] = std::move(restarts);
  }
  j["queries"] = doc.queries;
  j["iterations"] = doc.iterations;
  return j.dump();
}

ResultDoc ParseResult(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw ParseError(std::string("result document: ") + e.what());
  }
  try {
    ResultDoc doc;
    doc.user = j.at("user").get<std::size_t>();
    doc.state = StateFromJson(j.at("state"));
    doc.method = ParseMethod(j.at("method").get<std::string>());
    doc.objective = ParseObjective(j.at("objective").get<std::string>());
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.budget = j.at("budget").get<std::size_t>();
    doc.set_size = j.at("set_size").get<std::size_t>();
    doc.num_samples = j.at("num_samples").get<std::size_t>();
    doc.distribution = ParseDistribution(j.at("distribution").get<std::string>());
    for (const auto& m : j.at("members")) doc.set.members.push_back(StateFromJson(m));
    doc.set.valid = j.at("valid").get<std::vector<bool>>();
    if (doc.set.valid.size() != doc.set.members.size()) {
      throw ParseError("result document: members and valid differ in length");
    }
    doc.emc = EmcFromJson(j.at("emc_detail"), doc.num_samples);
    for (const auto& t : j.at("trace")) doc.trace.push_back(EmcFromJson(t, doc.num_samples));
    if (j.contains("objective_trace")) {
      doc.objective_trace = j["objective_trace"].get<std::vector<double>>();
    }
    if (j.contains("restart_emc")) {
      for (const auto& r : j["restart_emc"]) {
        doc.restart_emc.push_back(EmcFromJson(r, doc.num_samples));
      }
    }
    doc.queries = j.at("queries").get<std::size_t>();
    doc.iterations = j.at("iterations").get<std::size_t>();
    return doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("result document: ") + e.what());
  }
}

void WriteResults(const std::filesystem::path& path, const std::vector<ResultDoc>& docs) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  for (const auto& doc : docs) out << SerializeResult(doc) << '\n';
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<ResultDoc> ReadResults(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<ResultDoc> docs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      docs.push_back(ParseResult(line));
    } catch (const ParseError& e) {
      throw ParseError(path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return docs;
}

std::vector<ResultDoc> ReadResultDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("results directory '" + dir.string() + "' does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ResultDoc> docs;
  for (const auto& f : files) {
    auto part = ReadResults(f);
    docs.insert(docs.end(), std::make_move_iterator(part.begin()),
                std::make_move_iterator(part.end()));
  }
  if (docs.empty()) throw Error("no result documents under '" + dir.string() + "'");
  return docs;
}

std::string ResultFileName(Method method, Objective objective, std::uint64_t seed) {
  return MethodLabel(method, objective) + "_seed" + std::to_string(seed) + ".jsonl";
}

}  // namespace recourse::app

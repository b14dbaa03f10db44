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

#include "recourse/schema.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "recourse/error.hpp"
#include "recourse/rng.hpp"

namespace recourse {
namespace {

using nlohmann::json;

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(Trim(line.substr(start)));
      break;
    }
    cells.push_back(Trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

std::vector<int> ParseDomain(const json& node, const std::string& name) {
  std::vector<int> domain;
  if (node.is_array()) {
    for (const auto& v : node) {
      if (!v.is_number_integer()) {
        throw ParseError("feature '" + name + "': domain values must be integers");
      }
      domain.push_back(v.get<int>());
    }
  } else if (node.is_object() && node.contains("min") && node.contains("max")) {
    int lo = node.at("min").get<int>();
    int hi = node.at("max").get<int>();
    if (hi < lo) throw ParseError("feature '" + name + "': domain max < min");
    for (int v = lo; v <= hi; ++v) domain.push_back(v);
  } else {
    throw ParseError("feature '" + name +
                     "': domain must be a value list or {min, max}");
  }
  return domain;
}

}  // namespace

std::string_view ToString(FeatureKind kind) {
  return kind == FeatureKind::kOrdered ? "ordered" : "unordered";
}

std::string_view ToString(Mutability mutability) {
  switch (mutability) {
    case Mutability::kMutable: return "mutable";
    case Mutability::kIncreaseOnly: return "increase_only";
    case Mutability::kDecreaseOnly: return "decrease_only";
    case Mutability::kImmutable: return "immutable";
  }
  return "immutable";
}

FeatureKind ParseFeatureKind(std::string_view text) {
  if (text == "ordered") return FeatureKind::kOrdered;
  if (text == "unordered") return FeatureKind::kUnordered;
  throw ParseError("unknown feature kind '" + std::string(text) + "'");
}

Mutability ParseMutability(std::string_view text) {
  if (text == "mutable") return Mutability::kMutable;
  if (text == "increase_only") return Mutability::kIncreaseOnly;
  if (text == "decrease_only") return Mutability::kDecreaseOnly;
  if (text == "immutable") return Mutability::kImmutable;
  throw ParseError("unknown mutability '" + std::string(text) + "'");
}

FeatureSpec::FeatureSpec(std::string name, FeatureKind kind,
                         std::vector<int> domain, Mutability mutability)
    : name_(std::move(name)),
      kind_(kind),
      domain_(std::move(domain)),
      mutability_(mutability) {
  if (domain_.empty()) {
    throw InvalidArgument("feature '" + name_ + "': empty domain");
  }
  if (kind_ == FeatureKind::kOrdered) {
    for (std::size_t i = 1; i < domain_.size(); ++i) {
      if (domain_[i] <= domain_[i - 1]) {
        throw InvalidArgument("feature '" + name_ +
                              "': ordered domain must be strictly increasing");
      }
    }
  } else {
    std::unordered_set<int> seen(domain_.begin(), domain_.end());
    if (seen.size() != domain_.size()) {
      throw InvalidArgument("feature '" + name_ + "': duplicate domain value");
    }
    if (mutability_ == Mutability::kIncreaseOnly ||
        mutability_ == Mutability::kDecreaseOnly) {
      throw InvalidArgument("feature '" + name_ + "': " +
                            std::string(ToString(mutability_)) +
                            " requires an ordered feature");
    }
  }
  auto [lo, hi] = std::minmax_element(domain_.begin(), domain_.end());
  min_value_ = *lo;
  max_value_ = *hi;
  const long long width = static_cast<long long>(max_value_) - min_value_ + 1;
  if (width <= (1 << 20)) {
    dense_index_.assign(static_cast<std::size_t>(width), -1);
    for (std::size_t i = 0; i < domain_.size(); ++i) {
      dense_index_[static_cast<std::size_t>(domain_[i] - min_value_)] =
          static_cast<int>(i);
    }
  }
}

std::optional<std::size_t> FeatureSpec::index_of(int value) const {
  if (value < min_value_ || value > max_value_) return std::nullopt;
  if (!dense_index_.empty()) {
    int idx = dense_index_[static_cast<std::size_t>(value - min_value_)];
    if (idx < 0) return std::nullopt;
    return static_cast<std::size_t>(idx);
  }
  auto it = std::find(domain_.begin(), domain_.end(), value);
  if (it == domain_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

std::uint64_t HashState(const UserState& state) {
  std::uint64_t h = SplitMix64(state.values.size());
  for (int v : state.values) {
    h = SplitMix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)));
  }
  return h;
}

DatasetSchema::DatasetSchema(std::vector<FeatureSpec> features,
                             int desired_class,
                             std::vector<std::string> protected_attributes,
                             std::optional<std::string> label_column)
    : features_(std::move(features)),
      desired_class_(desired_class),
      protected_attributes_(std::move(protected_attributes)),
      label_column_(std::move(label_column)) {
  if (features_.empty()) throw InvalidArgument("schema has no features");
  if (desired_class_ != 0 && desired_class_ != 1) {
    throw InvalidArgument("desired_class must be 0 or 1");
  }
  std::set<std::string> names;
  for (const auto& f : features_) {
    if (!names.insert(f.name()).second) {
      throw InvalidArgument("duplicate feature name '" + f.name() + "'");
    }
  }
  for (const auto& p : protected_attributes_) {
    if (!names.contains(p)) {
      throw InvalidArgument("protected attribute '" + p +
                            "' is not a schema feature");
    }
  }
  if (label_column_ && names.contains(*label_column_)) {
    throw InvalidArgument("label column '" + *label_column_ +
                          "' collides with a feature name");
  }
  offsets_.reserve(features_.size() + 1);
  offsets_.push_back(0);
  for (const auto& f : features_) offsets_.push_back(offsets_.back() + f.size());
}

std::optional<std::size_t> DatasetSchema::feature_index(
    std::string_view name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name() == name) return i;
  }
  return std::nullopt;
}

std::size_t DatasetSchema::require_feature(std::string_view name) const {
  auto idx = feature_index(name);
  if (!idx) throw InvalidArgument("unknown feature '" + std::string(name) + "'");
  return *idx;
}

std::vector<std::size_t> DatasetSchema::changeable_features() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!features_[i].immutable()) out.push_back(i);
  }
  return out;
}

void DatasetSchema::validate(const UserState& state) const {
  if (state.size() != features_.size()) {
    throw InvalidArgument("state has " + std::to_string(state.size()) +
                          " values, schema has " +
                          std::to_string(features_.size()) + " features");
  }
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (!features_[i].contains(state[i])) {
      throw InvalidArgument("value " + std::to_string(state[i]) +
                            " outside domain of feature '" +
                            features_[i].name() + "'");
    }
  }
}

DatasetSchema ParseSchema(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
  try {
    std::vector<FeatureSpec> features;
    for (const auto& node : doc.at("features")) {
      std::string name = node.at("name").get<std::string>();
      features.emplace_back(name,
                            ParseFeatureKind(node.at("kind").get<std::string>()),
                            ParseDomain(node.at("domain"), name),
                            ParseMutability(node.at("mutability").get<std::string>()));
    }
    std::vector<std::string> protected_attributes;
    if (doc.contains("protected_attributes")) {
      protected_attributes =
          doc.at("protected_attributes").get<std::vector<std::string>>();
    }
    std::optional<std::string> label;
    if (doc.contains("label_column")) {
      label = doc.at("label_column").get<std::string>();
    }
    return DatasetSchema(std::move(features), doc.value("desired_class", 1),
                         std::move(protected_attributes), std::move(label));
  } catch (const json::exception& e) {
    throw ParseError(std::string("schema: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("schema: ") + e.what());
  }
}

DatasetSchema LoadSchema(const std::filesystem::path& path) {
  return ParseSchema(ReadFile(path));
}

std::string SerializeSchema(const DatasetSchema& schema) {
  json doc;
  doc["desired_class"] = schema.desired_class();
  doc["protected_attributes"] = schema.protected_attributes();
  if (schema.label_column()) doc["label_column"] = *schema.label_column();
  json features = json::array();
  for (const auto& f : schema.features()) {
    features.push_back({{"name", f.name()},
                        {"kind", ToString(f.kind())},
                        {"domain", std::vector<int>(f.domain().begin(), f.domain().end())},
                        {"mutability", ToString(f.mutability())}});
  }
  doc["features"] = std::move(features);
  return doc.dump(2) + "\n";
}

Dataset ParseDataset(std::string_view csv_text, const DatasetSchema& schema) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < csv_text.size()) {
    std::size_t nl = csv_text.find('\n', start);
    std::string_view line = csv_text.substr(
        start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!Trim(line).empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (lines.empty()) throw ParseError("dataset: empty file");

  const auto header = SplitCommas(lines.front());
  const std::size_t d = schema.num_features();
  std::vector<std::size_t> column_to_feature(header.size(), d);
  std::optional<std::size_t> label_column;
  std::vector<bool> seen(d, false);
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (schema.label_column() && header[c] == *schema.label_column()) {
      label_column = c;
      continue;
    }
    auto idx = schema.feature_index(header[c]);
    if (!idx) {
      throw ParseError("dataset: unknown column '" + std::string(header[c]) + "'");
    }
    if (seen[*idx]) {
      throw ParseError("dataset: duplicate column '" + std::string(header[c]) + "'");
    }
    seen[*idx] = true;
    column_to_feature[c] = *idx;
  }
  for (std::size_t f = 0; f < d; ++f) {
    if (!seen[f]) {
      throw ParseError("dataset: missing column '" + schema.feature(f).name() + "'");
    }
  }

  Dataset data;
  if (label_column) data.labels.emplace();
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = SplitCommas(lines[r]);
    const std::size_t row = r - 1;
    if (cells.size() != header.size()) {
      throw ParseError("dataset: row " + std::to_string(row) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(header.size()));
    }
    UserState state{std::vector<int>(d, 0)};
    for (std::size_t c = 0; c < cells.size(); ++c) {
      int value = 0;
      auto [ptr, ec] = std::from_chars(cells[c].data(),
                                       cells[c].data() + cells[c].size(), value);
      if (ec != std::errc() || ptr != cells[c].data() + cells[c].size()) {
        throw ParseError("dataset: row " + std::to_string(row) + " column '" +
                         std::string(header[c]) + "': not an integer");
      }
      if (label_column && c == *label_column) {
        if (value != 0 && value != 1) {
          throw ParseError("dataset: row " + std::to_string(row) +
                           ": label must be 0 or 1");
        }
        data.labels->push_back(value == schema.desired_class() ? 1 : 0);
        continue;
      }
      const std::size_t f = column_to_feature[c];
      if (!schema.feature(f).contains(value)) {
        throw ParseError("dataset: row " + std::to_string(row) + " feature '" +
                         schema.feature(f).name() + "': value " +
                         std::to_string(value) + " outside domain");
      }
      state[f] = value;
    }
    data.rows.push_back(std::move(state));
  }
  return data;
}

Dataset LoadDataset(const std::filesystem::path& path,
                    const DatasetSchema& schema) {
  return ParseDataset(ReadFile(path), schema);
}

std::string SerializeDataset(const Dataset& data, const DatasetSchema& schema) {
  std::ostringstream out;
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    if (f) out << ',';
    out << schema.feature(f).name();
  }
  const bool labelled = data.labels && schema.label_column();
  if (labelled) out << ',' << *schema.label_column();
  out << '\n';
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    for (std::size_t f = 0; f < data.rows[r].size(); ++f) {
      if (f) out << ',';
      out << data.rows[r][f];
    }
    if (labelled) {
      const int y = (*data.labels)[r];
      out << ',' << (y == 1 ? schema.desired_class() : 1 - schema.desired_class());
    }
    out << '\n';
  }
  return out.str();
}

void WriteDataset(const std::filesystem::path& path, const Dataset& data,
                  const DatasetSchema& schema) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << SerializeDataset(data, schema);
}

double PercentileTable::cdf(std::size_t feature, std::size_t domain_index) const {
  if (!has_feature(feature)) {
    throw InvalidArgument("no percentile entry for feature " +
                          std::to_string(feature));
  }
  return cdf_[feature].at(domain_index);
}

PercentileTable BuildPercentileTable(std::span<const UserState> rows,
                                     const DatasetSchema& schema) {
  if (rows.empty()) throw InvalidArgument("percentile table: no rows");
  std::vector<std::vector<double>> cdf(schema.num_features());
  const double n = static_cast<double>(rows.size());
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    const FeatureSpec& spec = schema.feature(f);
    if (!spec.ordered()) continue;
    std::vector<std::size_t> counts(spec.size(), 0);
    for (const auto& row : rows) {
      auto idx = spec.index_of(row[f]);
      if (!idx) {
        throw InvalidArgument("percentile table: value outside domain of '" +
                              spec.name() + "'");
      }
      ++counts[*idx];
    }
    cdf[f].resize(spec.size());
    std::size_t running = 0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      running += counts[i];
      cdf[f][i] = static_cast<double>(running) / n;
    }
    cdf[f].back() = 1.0;
  }
  return PercentileTable(std::move(cdf));
}

std::vector<int> FeasibleValues(const DatasetSchema& schema,
                                std::size_t feature_index, int original_value) {
  if (feature_index >= schema.num_features()) {
    throw InvalidArgument("feature index " + std::to_string(feature_index) +
                          " out of range");
  }
  const FeatureSpec& spec = schema.feature(feature_index);
  auto origin = spec.index_of(original_value);
  if (!origin) {
    throw InvalidArgument("value " + std::to_string(original_value) +
                          " outside domain of '" + spec.name() + "'");
  }
  const auto domain = spec.domain();
  switch (spec.mutability()) {
    case Mutability::kImmutable:
      return {original_value};
    case Mutability::kIncreaseOnly:
      return {domain.begin() + static_cast<std::ptrdiff_t>(*origin), domain.end()};
    case Mutability::kDecreaseOnly:
      return {domain.begin(), domain.begin() + static_cast<std::ptrdiff_t>(*origin) + 1};
    case Mutability::kMutable:
      break;
  }
  return {domain.begin(), domain.end()};
}

bool IsFeasibleTransition(const DatasetSchema& schema, const UserState& original,
                          const UserState& candidate) {
  if (candidate.size() != schema.num_features()) return false;
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    const FeatureSpec& spec = schema.feature(f);
    if (!spec.contains(candidate[f])) return false;
    if (candidate[f] == original[f]) continue;
    switch (spec.mutability()) {
      case Mutability::kImmutable: return false;
      case Mutability::kIncreaseOnly:
        if (candidate[f] < original[f]) return false;
        break;
      case Mutability::kDecreaseOnly:
        if (candidate[f] > original[f]) return false;
        break;
      case Mutability::kMutable: break;
    }
  }
  return true;
}

}  // namespace recourse

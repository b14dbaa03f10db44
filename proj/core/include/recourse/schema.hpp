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

#ifndef RECOURSE_SCHEMA_HPP_
#define RECOURSE_SCHEMA_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace recourse {

enum class FeatureKind { kOrdered, kUnordered };

enum class Mutability { kMutable, kIncreaseOnly, kDecreaseOnly, kImmutable };

std::string_view ToString(FeatureKind kind);
std::string_view ToString(Mutability mutability);
FeatureKind ParseFeatureKind(std::string_view text);
Mutability ParseMutability(std::string_view text);

// One column of the feature space. Continuous features arrive already
// discretized to integer codes.
class FeatureSpec {
 public:
  FeatureSpec(std::string name, FeatureKind kind, std::vector<int> domain,
              Mutability mutability);

  const std::string& name() const { return name_; }
  FeatureKind kind() const { return kind_; }
  Mutability mutability() const { return mutability_; }
  bool ordered() const { return kind_ == FeatureKind::kOrdered; }
  bool immutable() const { return mutability_ == Mutability::kImmutable; }

  // Values in domain order. For ordered features this is strictly
  // increasing; for unordered features it is the declaration order.
  std::span<const int> domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  int value_at(std::size_t index) const { return domain_[index]; }

  // Position of `value` in the domain, or nullopt if it is not a member.
  std::optional<std::size_t> index_of(int value) const;
  bool contains(int value) const { return index_of(value).has_value(); }

  // max - min over the domain values; normalizes ordered distances.
  int span() const { return max_value_ - min_value_; }
  int min_value() const { return min_value_; }
  int max_value() const { return max_value_; }

 private:
  std::string name_;
  FeatureKind kind_;
  std::vector<int> domain_;
  Mutability mutability_;
  int min_value_ = 0;
  int max_value_ = 0;
  // Dense value -> index lookup over [min_value_, max_value_]; -1 = absent.
  std::vector<int> dense_index_;
};

// A feature vector in schema order.
struct UserState {
  std::vector<int> values;

  std::size_t size() const { return values.size(); }
  int operator[](std::size_t i) const { return values[i]; }
  int& operator[](std::size_t i) { return values[i]; }
  friend bool operator==(const UserState&, const UserState&) = default;
  friend auto operator<=>(const UserState&, const UserState&) = default;
};

std::uint64_t HashState(const UserState& state);

class DatasetSchema {
 public:
  DatasetSchema(std::vector<FeatureSpec> features, int desired_class,
                std::vector<std::string> protected_attributes,
                std::optional<std::string> label_column = std::nullopt);

  std::span<const FeatureSpec> features() const { return features_; }
  const FeatureSpec& feature(std::size_t i) const { return features_.at(i); }
  std::size_t num_features() const { return features_.size(); }
  int desired_class() const { return desired_class_; }
  const std::vector<std::string>& protected_attributes() const {
    return protected_attributes_;
  }
  const std::optional<std::string>& label_column() const {
    return label_column_;
  }

  std::optional<std::size_t> feature_index(std::string_view name) const;
  std::size_t require_feature(std::string_view name) const;

  // Features that are not immutable (mutable + conditionally mutable).
  std::vector<std::size_t> changeable_features() const;

  // Offsets into a flat per-feature x per-domain-value table.
  const std::vector<std::size_t>& domain_offsets() const { return offsets_; }
  std::size_t total_domain_size() const { return offsets_.back(); }

  // Throws InvalidArgument naming the feature if `state` is malformed.
  void validate(const UserState& state) const;

 private:
  std::vector<FeatureSpec> features_;
  int desired_class_;
  std::vector<std::string> protected_attributes_;
  std::optional<std::string> label_column_;
  std::vector<std::size_t> offsets_;
};

DatasetSchema ParseSchema(std::string_view json_text);
DatasetSchema LoadSchema(const std::filesystem::path& path);
std::string SerializeSchema(const DatasetSchema& schema);

struct Dataset {
  std::vector<UserState> rows;
  // Present only when the schema names a label column and the file carries
  // it. Labels are recoded so that 1 always means the desired class.
  std::optional<std::vector<int>> labels;
};

Dataset ParseDataset(std::string_view csv_text, const DatasetSchema& schema);
Dataset LoadDataset(const std::filesystem::path& path,
                    const DatasetSchema& schema);
// Inverse of ParseDataset. Labels, when present, are written back in the
// dataset's original coding.
std::string SerializeDataset(const Dataset& data, const DatasetSchema& schema);
void WriteDataset(const std::filesystem::path& path, const Dataset& data,
                  const DatasetSchema& schema);

// Empirical CDF P(X <= v) per ordered feature.
class PercentileTable {
 public:
  PercentileTable() = default;
  explicit PercentileTable(std::vector<std::vector<double>> cdf)
      : cdf_(std::move(cdf)) {}

  // domain_index refers to the feature's domain order. Throws for
  // unordered features.
  double cdf(std::size_t feature, std::size_t domain_index) const;
  bool has_feature(std::size_t feature) const {
    return feature < cdf_.size() && !cdf_[feature].empty();
  }
  std::span<const double> feature_cdf(std::size_t feature) const {
    return cdf_.at(feature);
  }

 private:
  std::vector<std::vector<double>> cdf_;
};

PercentileTable BuildPercentileTable(std::span<const UserState> rows,
                                     const DatasetSchema& schema);

// Values a feature may take in a counterfactual; judged against the user's
// original value. Always contains `original_value`.
std::vector<int> FeasibleValues(const DatasetSchema& schema,
                                std::size_t feature_index, int original_value);

// Whether `candidate` differs from `original` only by feasible moves.
bool IsFeasibleTransition(const DatasetSchema& schema,
                          const UserState& original,
                          const UserState& candidate);

}  // namespace recourse

#endif  // RECOURSE_SCHEMA_HPP_

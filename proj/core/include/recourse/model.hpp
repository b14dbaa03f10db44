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

#ifndef RECOURSE_MODEL_HPP_
#define RECOURSE_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recourse/error.hpp"
#include "recourse/schema.hpp"

namespace recourse {

enum class Architecture { kLogistic, kMlp };

std::string_view ToString(Architecture architecture);
Architecture ParseArchitecture(std::string_view text);

struct DenseLayer {
  std::size_t inputs = 0;
  std::size_t outputs = 0;
  std::vector<double> weights;  // outputs x inputs, row-major
  std::vector<double> bias;     // outputs
};

// Feed-forward binary classifier over min-max scaled integer codes.
// Hidden layers use ReLU; the single output unit is a sigmoid giving
// P(desired class).
class Classifier {
 public:
  Classifier(Architecture architecture, std::vector<DenseLayer> layers,
             std::vector<double> scale_min, std::vector<double> scale_max);

  Architecture architecture() const { return architecture_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  const std::vector<double>& scale_min() const { return scale_min_; }
  const std::vector<double>& scale_max() const { return scale_max_; }
  std::size_t num_inputs() const { return scale_min_.size(); }

  // Pure function of (weights, state). Does not touch any budget.
  double probability(const UserState& state) const;

 private:
  Architecture architecture_;
  std::vector<DenseLayer> layers_;
  std::vector<double> scale_min_;
  std::vector<double> scale_max_;
};

class BudgetExhausted : public Error {
 public:
  BudgetExhausted() : Error("query budget exhausted") {}
};

// Counts black-box queries for one optimizer run. Single owner.
class BudgetMeter {
 public:
  explicit BudgetMeter(std::size_t limit) : limit_(limit) {}

  std::size_t limit() const { return limit_; }
  std::size_t used() const { return used_; }
  std::size_t remaining() const { return limit_ - used_; }
  bool exhausted() const { return used_ >= limit_; }

  // Consumes one query or throws BudgetExhausted leaving `used` unchanged.
  void charge() {
    if (used_ >= limit_) throw BudgetExhausted();
    ++used_;
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

// One metered black-box query: 1 iff P(desired) >= 0.5.
int Predict(const Classifier& classifier, const UserState& state, BudgetMeter& meter);

struct TrainConfig {
  Architecture architecture = Architecture::kMlp;
  std::size_t hidden_width = 20;
  std::size_t epochs = 30;
  double learning_rate = 0.01;
  std::size_t batch_size = 64;
  double validation_fraction = 0.1;
  std::uint64_t seed = 0;
};

struct TrainReport {
  Classifier classifier;
  double train_accuracy = 0.0;
  double validation_accuracy = 0.0;
  std::size_t train_rows = 0;
  std::size_t validation_rows = 0;
};

// Mini-batch Adam on binary cross-entropy. Labels use the desired = 1
// convention. Deterministic for a fixed config.seed.
TrainReport TrainClassifier(std::span<const UserState> rows, std::span<const int> labels,
                            const DatasetSchema& schema, const TrainConfig& config);

double Accuracy(const Classifier& classifier, std::span<const UserState> rows,
                std::span<const int> labels);

// Weights document: architecture tag, layer shapes, row-major weights,
// biases and per-feature scaling bounds. Non-finite numbers are rejected.
std::string SerializeClassifier(const Classifier& classifier);
Classifier ParseClassifier(std::string_view text,
                           std::optional<Architecture> expected = std::nullopt);
void SaveClassifier(const Classifier& classifier, const std::filesystem::path& path);
Classifier LoadClassifier(const std::filesystem::path& path,
                          std::optional<Architecture> expected = std::nullopt);

}  // namespace recourse

#endif  // RECOURSE_MODEL_HPP_

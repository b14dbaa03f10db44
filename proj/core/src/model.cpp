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

#include "recourse/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "recourse/rng.hpp"

namespace recourse {
namespace {

using nlohmann::json;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

std::size_t ExpectedLayers(Architecture architecture) {
  return architecture == Architecture::kLogistic ? 1 : 3;
}

void ScaleInto(const Classifier& c, const UserState& state, std::vector<double>& out) {
  out.resize(c.num_inputs());
  for (std::size_t f = 0; f < out.size(); ++f) {
    const double lo = c.scale_min()[f];
    const double hi = c.scale_max()[f];
    out[f] = hi > lo ? (state[f] - lo) / (hi - lo) : 0.0;
  }
}

// Forward pass keeping every activation (activations[0] = input).
void Forward(const std::vector<DenseLayer>& layers,
             std::vector<std::vector<double>>& activations) {
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const DenseLayer& layer = layers[l];
    const auto& in = activations[l];
    auto& out = activations[l + 1];
    out.assign(layer.outputs, 0.0);
    for (std::size_t o = 0; o < layer.outputs; ++o) {
      double z = layer.bias[o];
      const double* w = layer.weights.data() + o * layer.inputs;
      for (std::size_t i = 0; i < layer.inputs; ++i) z += w[i] * in[i];
      out[o] = (l + 1 == layers.size()) ? z : std::max(0.0, z);
    }
  }
}

void CheckFinite(const std::vector<double>& v, const std::string& what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ParseError("weights: non-finite value in " + what);
  }
}

}  // namespace

std::string_view ToString(Architecture architecture) {
  return architecture == Architecture::kLogistic ? "logistic" : "mlp";
}

Architecture ParseArchitecture(std::string_view text) {
  if (text == "logistic") return Architecture::kLogistic;
  if (text == "mlp") return Architecture::kMlp;
  throw InvalidArgument("unknown architecture '" + std::string(text) +
                        "' (expected logistic or mlp)");
}

Classifier::Classifier(Architecture architecture, std::vector<DenseLayer> layers,
                       std::vector<double> scale_min, std::vector<double> scale_max)
    : architecture_(architecture),
      layers_(std::move(layers)),
      scale_min_(std::move(scale_min)),
      scale_max_(std::move(scale_max)) {
  if (layers_.size() != ExpectedLayers(architecture_)) {
    throw InvalidArgument("dimension mismatch: " + std::string(ToString(architecture_)) +
                          " expects " + std::to_string(ExpectedLayers(architecture_)) +
                          " layers, got " + std::to_string(layers_.size()));
  }
  if (scale_min_.size() != scale_max_.size() || scale_min_.empty()) {
    throw InvalidArgument("dimension mismatch: scaling bounds");
  }
  std::size_t width = scale_min_.size();
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    if (layer.inputs != width || layer.weights.size() != layer.inputs * layer.outputs ||
        layer.bias.size() != layer.outputs || layer.outputs == 0) {
      throw InvalidArgument("dimension mismatch at layer " + std::to_string(l));
    }
    width = layer.outputs;
  }
  if (width != 1) throw InvalidArgument("dimension mismatch: output layer must have 1 unit");
}

double Classifier::probability(const UserState& state) const {
  if (state.size() != num_inputs()) {
    throw InvalidArgument("state length does not match classifier inputs");
  }
  std::vector<std::vector<double>> activations(layers_.size() + 1);
  ScaleInto(*this, state, activations[0]);
  Forward(layers_, activations);
  return Sigmoid(activations.back()[0]);
}

int Predict(const Classifier& classifier, const UserState& state, BudgetMeter& meter) {
  meter.charge();
  return classifier.probability(state) >= 0.5 ? 1 : 0;
}

double Accuracy(const Classifier& classifier, std::span<const UserState> rows,
                std::span<const int> labels) {
  if (rows.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const int y = classifier.probability(rows[i]) >= 0.5 ? 1 : 0;
    correct += (y == labels[i]);
  }
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

TrainReport TrainClassifier(std::span<const UserState> rows, std::span<const int> labels,
                            const DatasetSchema& schema, const TrainConfig& config) {
  if (rows.empty() || rows.size() != labels.size()) {
    throw InvalidArgument("dimension mismatch: rows and labels");
  }
  bool has0 = false, has1 = false;
  for (int y : labels) {
    if (y != 0 && y != 1) throw InvalidArgument("labels must be 0 or 1");
    has0 = has0 || y == 0;
    has1 = has1 || y == 1;
  }
  if (!has0 || !has1) throw InvalidArgument("training labels contain a single class");
  const std::size_t d = schema.num_features();
  for (const auto& r : rows) {
    if (r.size() != d) throw InvalidArgument("dimension mismatch: row length");
  }

  Rng rng = MakeStream(config.seed, StreamTag::kModel);
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t n_val = static_cast<std::size_t>(
      std::floor(config.validation_fraction * static_cast<double>(rows.size())));
  if (n_val >= rows.size()) n_val = 0;
  std::vector<std::size_t> val_idx(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<std::size_t> train_idx(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());

  std::vector<double> lo(d, 0.0), hi(d, 0.0);
  for (std::size_t f = 0; f < d; ++f) {
    lo[f] = hi[f] = rows[train_idx.front()][f];
    for (std::size_t i : train_idx) {
      lo[f] = std::min<double>(lo[f], rows[i][f]);
      hi[f] = std::max<double>(hi[f], rows[i][f]);
    }
  }

  std::vector<std::size_t> widths{d};
  if (config.architecture == Architecture::kMlp) {
    widths.push_back(config.hidden_width);
    widths.push_back(config.hidden_width);
  }
  widths.push_back(1);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    DenseLayer layer{widths[l], widths[l + 1], {}, std::vector<double>(widths[l + 1], 0.0)};
    const bool hidden = l + 2 < widths.size();
    std::normal_distribution<double> init(
        0.0, std::sqrt((hidden ? 2.0 : 1.0) / static_cast<double>(widths[l])));
    layer.weights.resize(layer.inputs * layer.outputs);
    for (double& w : layer.weights) w = init(rng);
    layers.push_back(std::move(layer));
  }
  Classifier scaffold(config.architecture, layers, lo, hi);

  // Adam state.
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<std::vector<double>> mw(layers.size()), vw(layers.size()), mb(layers.size()),
      vb(layers.size()), gw(layers.size()), gb(layers.size());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    mw[l].assign(layers[l].weights.size(), 0.0);
    vw[l] = mw[l];
    gw[l] = mw[l];
    mb[l].assign(layers[l].bias.size(), 0.0);
    vb[l] = mb[l];
    gb[l] = mb[l];
  }
  std::vector<std::vector<double>> act(layers.size() + 1), delta(layers.size() + 1);
  std::size_t step = 0;
  const std::size_t batch = std::max<std::size_t>(1, config.batch_size);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(train_idx.begin(), train_idx.end(), rng);
    for (std::size_t start = 0; start < train_idx.size(); start += batch) {
      const std::size_t stop = std::min(train_idx.size(), start + batch);
      for (std::size_t l = 0; l < layers.size(); ++l) {
        std::fill(gw[l].begin(), gw[l].end(), 0.0);
        std::fill(gb[l].begin(), gb[l].end(), 0.0);
      }
      for (std::size_t b = start; b < stop; ++b) {
        const std::size_t i = train_idx[b];
        ScaleInto(scaffold, rows[i], act[0]);
        Forward(layers, act);
        const std::size_t top = layers.size();
        delta[top].assign(1, Sigmoid(act[top][0]) - labels[i]);
        for (std::size_t l = top; l-- > 0;) {
          const DenseLayer& layer = layers[l];
          for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double g = delta[l + 1][o];
            gb[l][o] += g;
            double* row = gw[l].data() + o * layer.inputs;
            for (std::size_t k = 0; k < layer.inputs; ++k) row[k] += g * act[l][k];
          }
          if (l == 0) break;
          delta[l].assign(layer.inputs, 0.0);
          for (std::size_t o = 0; o < layer.outputs; ++o) {
            const double g = delta[l + 1][o];
            const double* w = layer.weights.data() + o * layer.inputs;
            for (std::size_t k = 0; k < layer.inputs; ++k) delta[l][k] += g * w[k];
          }
          for (std::size_t k = 0; k < layer.inputs; ++k) {
            if (act[l][k] <= 0.0) delta[l][k] = 0.0;
          }
        }
      }
      ++step;
      const double scale = 1.0 / static_cast<double>(stop - start);
      const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step));
      auto update = [&](std::vector<double>& param, std::vector<double>& m,
                        std::vector<double>& v, const std::vector<double>& g) {
        for (std::size_t k = 0; k < param.size(); ++k) {
          const double gk = g[k] * scale;
          m[k] = beta1 * m[k] + (1 - beta1) * gk;
          v[k] = beta2 * v[k] + (1 - beta2) * gk * gk;
          param[k] -= config.learning_rate * (m[k] / c1) / (std::sqrt(v[k] / c2) + eps);
        }
      };
      for (std::size_t l = 0; l < layers.size(); ++l) {
        update(layers[l].weights, mw[l], vw[l], gw[l]);
        update(layers[l].bias, mb[l], vb[l], gb[l]);
      }
    }
  }

  Classifier trained(config.architecture, std::move(layers), std::move(lo), std::move(hi));
  auto subset = [&](const std::vector<std::size_t>& idx) {
    std::vector<UserState> r;
    std::vector<int> y;
    for (std::size_t i : idx) {
      r.push_back(rows[i]);
      y.push_back(labels[i]);
    }
    return std::pair(std::move(r), std::move(y));
  };
  auto [tr, ty] = subset(train_idx);
  auto [vr, vy] = subset(val_idx);
  TrainReport report{trained, Accuracy(trained, tr, ty),
                     vr.empty() ? 0.0 : Accuracy(trained, vr, vy), tr.size(), vr.size()};
  return report;
}

std::string SerializeClassifier(const Classifier& classifier) {
  json doc;
  doc["architecture"] = ToString(classifier.architecture());
  doc["scale_min"] = classifier.scale_min();
  doc["scale_max"] = classifier.scale_max();
  json layers = json::array();
  for (const auto& layer : classifier.layers()) {
    layers.push_back({{"inputs", layer.inputs},
                      {"outputs", layer.outputs},
                      {"weights", layer.weights},
                      {"bias", layer.bias}});
  }
  doc["layers"] = std::move(layers);
  return doc.dump(1) + "\n";
}

Classifier ParseClassifier(std::string_view text, std::optional<Architecture> expected) {
  try {
    const json doc = json::parse(text);
    const Architecture arch = ParseArchitecture(doc.at("architecture").get<std::string>());
    std::vector<DenseLayer> layers;
    for (const auto& node : doc.at("layers")) {
      DenseLayer layer;
      layer.inputs = node.at("inputs").get<std::size_t>();
      layer.outputs = node.at("outputs").get<std::size_t>();
      layer.weights = node.at("weights").get<std::vector<double>>();
      layer.bias = node.at("bias").get<std::vector<double>>();
      CheckFinite(layer.weights, "weights");
      CheckFinite(layer.bias, "bias");
      layers.push_back(std::move(layer));
    }
    auto lo = doc.at("scale_min").get<std::vector<double>>();
    auto hi = doc.at("scale_max").get<std::vector<double>>();
    CheckFinite(lo, "scale_min");
    CheckFinite(hi, "scale_max");
    const Architecture wanted = expected.value_or(arch);
    if (layers.size() != ExpectedLayers(wanted)) {
      throw ParseError("weights: dimension mismatch: " + std::string(ToString(wanted)) +
                       " expects " + std::to_string(ExpectedLayers(wanted)) +
                       " layers, file has " + std::to_string(layers.size()));
    }
    return Classifier(wanted, std::move(layers), std::move(lo), std::move(hi));
  } catch (const json::exception& e) {
    throw ParseError(std::string("weights: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
}

void SaveClassifier(const Classifier& classifier, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << SerializeClassifier(classifier);
}

Classifier LoadClassifier(const std::filesystem::path& path,
                          std::optional<Architecture> expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseClassifier(buffer.str(), expected);
}

}  // namespace recourse

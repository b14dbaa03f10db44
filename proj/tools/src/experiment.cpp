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

#include "recourse_app/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "recourse/error.hpp"
#include "recourse/metrics.hpp"
#include "recourse/rng.hpp"
#include "recourse_app/pool.hpp"

namespace recourse::app {
namespace {

using Setting = std::vector<std::pair<std::string, double>>;

std::string SettingText(const Setting& setting) {
  if (setting.empty()) return "default";
  std::string out;
  for (const auto& [name, value] : setting) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    if (!out.empty()) out += ";";
    out += name + "=" + buf;
  }
  return out;
}

// Per-user evaluation against pre-simulated hidden users.
MetricsReport EvaluateAgainst(const DatasetSchema& schema,
                              const std::vector<SimulatedUser>& users,
                              const std::vector<ResultDoc>& docs, double k) {
  std::vector<RecourseSet> sets;
  sets.reserve(docs.size());
  for (const auto& d : docs) sets.push_back(d.set);
  return EvaluatePopulation(schema, users, sets, k);
}

std::vector<CostSampleSet> Truncate(const std::vector<CostSampleSet>& samples, std::size_t m) {
  std::vector<CostSampleSet> out = samples;
  for (auto& s : out) {
    if (s.samples.size() > m) s.samples.resize(m);
  }
  return out;
}

class Runner {
 public:
  Runner(const Workspace& ws, const ExperimentConfig& config)
      : ws_(ws), config_(config),
        methods_(config.methods.empty() ? DefaultMethods(config.kind) : config.methods) {}

  GenerateParams Params(const SearchConfig& search, std::uint64_t seed,
                        const SamplerOverrides& overrides) const {
    GenerateParams p;
    p.search = search;
    p.search.seed = seed;
    p.distribution = config_.distribution;
    p.overrides = overrides;
    p.samples_dir = config_.samples_dir;
    return p;
  }

  std::vector<ResultDoc> Docs(const MethodSpec& m, GenerateParams params,
                              const std::vector<CostSampleSet>& samples) const {
    params.method = m.method;
    params.objective = m.objective;
    return Generate(ws_, params, samples);
  }

  std::vector<SimulatedUser> Hidden(const SamplerOverrides& overrides) const {
    EvalParams eval = config_.eval;
    eval.overrides = overrides;
    std::vector<SimulatedUser> users(ws_.users.size());
    ValidateOverrides(ws_.schema, overrides);
    ParallelFor(users.size(), [&](std::size_t i) {
      users[i] = SimulateUser(ws_.schema, ws_.table, ws_.ids[i], ws_.users[i], eval.test_seed,
                              eval.distribution, eval.overrides);
    });
    return users;
  }

  // Every method on every seed under one search configuration, averaged
  // over seeds.
  void Sweep(const Setting& setting, const SearchConfig& search,
             const std::vector<SimulatedUser>& hidden) {
    std::vector<std::vector<std::vector<MetricRow>>> runs(methods_.size());
    for (std::uint64_t seed : config_.seeds) {
      const GenerateParams params = Params(search, seed, config_.overrides);
      const auto samples = TrainSamples(ws_, params);
      for (std::size_t m = 0; m < methods_.size(); ++m) {
        const auto docs = Docs(methods_[m], params, samples);
        runs[m].push_back(
            FlattenReport(MethodLabel(methods_[m].method, methods_[m].objective),
                          EvaluateAgainst(ws_.schema, hidden, docs, config_.eval.k), docs));
      }
    }
    for (const auto& r : runs) Emit(setting, MeanRows(r));
  }

  void Emit(const Setting& setting, const std::vector<MetricRow>& rows) {
    for (const auto& row : rows) report_.rows.push_back({setting, row});
  }

  void RunFixed() { Sweep({}, config_.search, Hidden(config_.eval.overrides)); }

  void RunBudget(const std::vector<double>& grid) {
    const auto hidden = Hidden(config_.eval.overrides);
    for (double b : grid) {
      SearchConfig s = config_.search;
      s.budget = static_cast<std::size_t>(b);
      Sweep({{"budget", b}}, s, hidden);
    }
  }

  void RunSetSize(const std::vector<double>& grid) {
    const auto hidden = Hidden(config_.eval.overrides);
    for (double n : grid) {
      SearchConfig s = config_.search;
      s.set_size = static_cast<std::size_t>(n);
      Sweep({{"set_size", n}}, s, hidden);
    }
  }

  // Larger sample sets extend smaller ones, so one draw at the largest M
  // serves the whole grid.
  void RunSamples(const std::vector<double>& grid) {
    const auto hidden = Hidden(config_.eval.overrides);
    const std::size_t max_m =
        static_cast<std::size_t>(*std::max_element(grid.begin(), grid.end()));
    std::vector<std::vector<std::vector<std::vector<MetricRow>>>> runs(
        grid.size(), std::vector<std::vector<std::vector<MetricRow>>>(methods_.size()));
    for (std::uint64_t seed : config_.seeds) {
      SearchConfig full = config_.search;
      full.num_samples = max_m;
      const auto all = TrainSamples(ws_, Params(full, seed, config_.overrides));
      for (std::size_t g = 0; g < grid.size(); ++g) {
        SearchConfig s = config_.search;
        s.num_samples = static_cast<std::size_t>(grid[g]);
        const auto samples = Truncate(all, s.num_samples);
        const GenerateParams params = Params(s, seed, config_.overrides);
        for (std::size_t m = 0; m < methods_.size(); ++m) {
          const auto docs = Docs(methods_[m], params, samples);
          runs[g][m].push_back(
              FlattenReport(MethodLabel(methods_[m].method, methods_[m].objective),
                            EvaluateAgainst(ws_.schema, hidden, docs, config_.eval.k), docs));
        }
      }
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      for (const auto& r : runs[g]) Emit({{"num_samples", grid[g]}}, MeanRows(r));
    }
  }

  void RunAlphaGrid(const std::vector<double>& grid) {
    std::vector<std::vector<SimulatedUser>> hidden;
    for (double a : grid) {
      SamplerOverrides o = config_.eval.overrides;
      o.alpha = a;
      hidden.push_back(Hidden(o));
    }
    for (double a_train : grid) {
      SamplerOverrides gen = config_.overrides;
      gen.alpha = a_train;
      std::vector<std::vector<std::vector<std::vector<MetricRow>>>> runs(
          grid.size(), std::vector<std::vector<std::vector<MetricRow>>>(methods_.size()));
      for (std::uint64_t seed : config_.seeds) {
        const GenerateParams params = Params(config_.search, seed, gen);
        const auto samples = TrainSamples(ws_, params);
        for (std::size_t m = 0; m < methods_.size(); ++m) {
          const auto docs = Docs(methods_[m], params, samples);
          for (std::size_t t = 0; t < grid.size(); ++t) {
            runs[t][m].push_back(FlattenReport(
                MethodLabel(methods_[m].method, methods_[m].objective),
                EvaluateAgainst(ws_.schema, hidden[t], docs, config_.eval.k), docs));
          }
        }
      }
      for (std::size_t t = 0; t < grid.size(); ++t) {
        for (const auto& r : runs[t]) {
          Emit({{"alpha_train", a_train}, {"alpha_test", grid[t]}}, MeanRows(r));
        }
      }
    }
  }

  void RunConcentrationShift() {
    const auto changeable = ws_.schema.changeable_features();
    if (changeable.empty() || changeable.size() > 64) {
      throw InvalidArgument("concentration shift needs between 1 and 64 changeable features");
    }
    auto to_bits = [&](const std::vector<bool>& mask) {
      std::uint64_t bits = 0;
      for (std::size_t c = 0; c < changeable.size(); ++c) {
        if (mask[changeable[c]]) bits |= std::uint64_t{1} << c;
      }
      return bits;
    };

    // Test concentration vectors: random non-empty editable subsets.
    Rng rng = MakeStream(config_.eval.test_seed, StreamTag::kExperiment, {0});
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint64_t> vectors;
    std::vector<std::vector<SimulatedUser>> hidden;
    for (std::size_t v = 0; v < config_.concentration_vectors; ++v) {
      std::vector<bool> mask(ws_.schema.num_features(), false);
      bool any = false;
      while (!any) {
        for (std::size_t f : changeable) {
          mask[f] = coin(rng);
          any = any || mask[f];
        }
      }
      vectors.push_back(to_bits(mask));
      std::vector<SimulatedUser> users(ws_.users.size());
      SamplerOverrides o = config_.eval.overrides;
      o.editable = mask;
      o.preferences.reset();
      const std::uint64_t seed = SplitMix64(config_.eval.test_seed ^ SplitMix64(v + 1));
      ParallelFor(users.size(), [&](std::size_t i) {
        users[i] = SimulateUser(ws_.schema, ws_.table, ws_.ids[i], ws_.users[i], seed,
                                config_.eval.distribution, o);
      });
      hidden.push_back(std::move(users));
    }

    // (distance, satisfied) pairs per method, pooled over seeds.
    std::vector<std::vector<std::pair<double, bool>>> pairs(methods_.size());
    for (std::uint64_t seed : config_.seeds) {
      const GenerateParams params = Params(config_.search, seed, config_.overrides);
      const auto samples = TrainSamples(ws_, params);
      std::vector<std::vector<double>> distance(ws_.users.size(),
                                                std::vector<double>(vectors.size()));
      for (std::size_t i = 0; i < ws_.users.size(); ++i) {
        std::vector<std::uint64_t> train;
        for (const auto& c : samples[i].samples) train.push_back(to_bits(c.editable()));
        std::sort(train.begin(), train.end());
        train.erase(std::unique(train.begin(), train.end()), train.end());
        for (std::size_t v = 0; v < vectors.size(); ++v) {
          int best = std::numeric_limits<int>::max();
          for (std::uint64_t t : train) best = std::min(best, std::popcount(vectors[v] ^ t));
          distance[i][v] = std::sqrt(static_cast<double>(best));
        }
      }
      for (std::size_t m = 0; m < methods_.size(); ++m) {
        const auto docs = Docs(methods_[m], params, samples);
        for (std::size_t v = 0; v < vectors.size(); ++v) {
          for (std::size_t i = 0; i < docs.size(); ++i) {
            const double cost = TrueMinCost(ws_.schema, hidden[v][i], docs[i].set);
            pairs[m].emplace_back(distance[i][v], cost < config_.eval.k);
          }
        }
      }
    }

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : pairs.front()) {
      lo = std::min(lo, p.first);
      hi = std::max(hi, p.first);
    }
    const std::size_t bins = config_.bins;
    const double width = hi > lo ? (hi - lo) / static_cast<double>(bins) : 0.0;
    for (std::size_t m = 0; m < methods_.size(); ++m) {
      std::vector<std::size_t> count(bins, 0), satisfied(bins, 0);
      std::vector<double> dsum(bins, 0.0);
      for (const auto& [d, ok] : pairs[m]) {
        std::size_t b = width > 0.0 ? static_cast<std::size_t>((d - lo) / width) : 0;
        b = std::min(b, bins - 1);
        ++count[b];
        satisfied[b] += ok ? 1 : 0;
        dsum[b] += d;
      }
      const std::string label = MethodLabel(methods_[m].method, methods_[m].objective);
      for (std::size_t b = 0; b < bins; ++b) {
        if (count[b] == 0) continue;
        const double n = static_cast<double>(count[b]);
        const Setting setting = {{"bin", static_cast<double>(b)},
                                 {"lo", lo + width * static_cast<double>(b)},
                                 {"hi", lo + width * static_cast<double>(b + 1)}};
        Emit(setting, {{label, "fs_at_k", "all", static_cast<double>(satisfied[b]) / n,
                        Format::kPercent},
                       {label, "pairs", "all", n, Format::kCount},
                       {label, "mean_distance", "all", dsum[b] / n, Format::kFixed4}});
      }
    }
  }

  ExperimentReport Finish() {
    report_.kind = config_.kind;
    return std::move(report_);
  }

 private:
  const Workspace& ws_;
  const ExperimentConfig& config_;
  std::vector<MethodSpec> methods_;
  ExperimentReport report_;
};

}  // namespace

std::string_view ToString(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kMain: return "main";
    case ExperimentKind::kAblation: return "ablation";
    case ExperimentKind::kFairness: return "fairness";
    case ExperimentKind::kAlphaGrid: return "alpha_grid";
    case ExperimentKind::kConcentrationShift: return "concentration_shift";
    case ExperimentKind::kBudgetSweep: return "budget_sweep";
    case ExperimentKind::kSetSizeSweep: return "setsize_sweep";
    case ExperimentKind::kSamplesSweep: return "samples_sweep";
  }
  return "main";
}

ExperimentKind ParseExperimentKind(std::string_view text) {
  for (auto kind : {ExperimentKind::kMain, ExperimentKind::kAblation, ExperimentKind::kFairness,
                    ExperimentKind::kAlphaGrid, ExperimentKind::kConcentrationShift,
                    ExperimentKind::kBudgetSweep, ExperimentKind::kSetSizeSweep,
                    ExperimentKind::kSamplesSweep}) {
    if (text == ToString(kind)) return kind;
  }
  throw InvalidArgument("unknown experiment '" + std::string(text) +
                        "' (valid: main, ablation, fairness, alpha_grid, concentration_shift, "
                        "budget_sweep, setsize_sweep, samples_sweep)");
}

MethodSpec ParseMethodSpec(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) return {ParseMethod(text), Objective::kEmc};
  const Method method = ParseMethod(text.substr(0, dash));
  if (method != Method::kLocalSearch) {
    throw InvalidArgument("only ls takes an objective suffix, got '" + std::string(text) + "'");
  }
  return {method, ParseObjective(text.substr(dash + 1))};
}

std::vector<MethodSpec> DefaultMethods(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kMain:
    case ExperimentKind::kBudgetSweep:
    case ExperimentKind::kSetSizeSweep:
      return {{Method::kCols, Objective::kEmc}, {Method::kPcols, Objective::kEmc},
              {Method::kRandom, Objective::kEmc}};
    case ExperimentKind::kAblation:
      return {{Method::kCols, Objective::kEmc},
              {Method::kLocalSearch, Objective::kEmc},
              {Method::kLocalSearch, Objective::kDiversity},
              {Method::kLocalSearch, Objective::kProximity},
              {Method::kLocalSearch, Objective::kSparsity}};
    case ExperimentKind::kFairness:
    case ExperimentKind::kSamplesSweep:
      return {{Method::kCols, Objective::kEmc}, {Method::kPcols, Objective::kEmc}};
    case ExperimentKind::kAlphaGrid:
    case ExperimentKind::kConcentrationShift:
      return {{Method::kCols, Objective::kEmc}};
  }
  return {};
}

std::vector<double> DefaultGrid(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kAlphaGrid: return {0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
    case ExperimentKind::kBudgetSweep: return {500, 1000, 2000, 3000, 5000, 10000};
    case ExperimentKind::kSetSizeSweep: return {1, 2, 3, 5, 10, 20, 30};
    case ExperimentKind::kSamplesSweep: return {1, 5, 10, 20, 30, 100, 200, 300, 500, 1000};
    default: return {};
  }
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw InvalidArgument("experiment needs at least one seed");
  if (std::find(seeds.begin(), seeds.end(), eval.test_seed) != seeds.end()) {
    throw InvalidArgument("test seed " + std::to_string(eval.test_seed) +
                          " equals a generation seed");
  }
  if (bins == 0) throw InvalidArgument("bins must be positive");
  if (concentration_vectors == 0) throw InvalidArgument("need at least one concentration vector");
  SearchConfig probe = search;
  probe.validate();
  for (double g : grid) {
    const bool integral = g >= 1.0 && std::floor(g) == g;
    switch (kind) {
      case ExperimentKind::kAlphaGrid:
        if (!(g >= 0.0 && g <= 1.0)) {
          throw InvalidArgument("alpha grid values must lie in [0, 1]");
        }
        break;
      case ExperimentKind::kBudgetSweep:
        if (!integral || static_cast<std::size_t>(g) < search.restarts) {
          throw InvalidArgument("budget grid values must be integers >= restarts");
        }
        break;
      case ExperimentKind::kSetSizeSweep:
      case ExperimentKind::kSamplesSweep:
        if (!integral) throw InvalidArgument("grid values must be positive integers");
        break;
      default:
        throw InvalidArgument(std::string(ToString(kind)) + " takes no grid");
    }
  }
}

std::optional<double> ExperimentRow::param(std::string_view name) const {
  for (const auto& [n, v] : setting) {
    if (n == name) return v;
  }
  return std::nullopt;
}

ExperimentReport RunExperiment(const Workspace& ws, const ExperimentConfig& config) {
  config.validate();
  if (ws.users.empty()) throw InvalidArgument("no users in the undesired class");
  Runner runner(ws, config);
  const std::vector<double> grid = config.grid.empty() ? DefaultGrid(config.kind) : config.grid;
  switch (config.kind) {
    case ExperimentKind::kMain:
    case ExperimentKind::kAblation:
    case ExperimentKind::kFairness: runner.RunFixed(); break;
    case ExperimentKind::kAlphaGrid: runner.RunAlphaGrid(grid); break;
    case ExperimentKind::kConcentrationShift: runner.RunConcentrationShift(); break;
    case ExperimentKind::kBudgetSweep: runner.RunBudget(grid); break;
    case ExperimentKind::kSetSizeSweep: runner.RunSetSize(grid); break;
    case ExperimentKind::kSamplesSweep: runner.RunSamples(grid); break;
  }
  return runner.Finish();
}

std::string ExperimentCsv(const ExperimentReport& report) {
  std::string out = "setting,method,metric,group,value\n";
  for (const auto& r : report.rows) {
    out += SettingText(r.setting) + "," + r.metric.method + "," + r.metric.metric + "," +
           r.metric.group + "," + FormatValue(r.metric.value, r.metric.format) + "\n";
  }
  return out;
}

}  // namespace recourse::app

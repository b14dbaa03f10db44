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

#include "recourse/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "recourse/error.hpp"
#include "recourse/metrics.hpp"

namespace recourse {
namespace {

constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

bool Before(double a, std::size_t ia, double b, std::size_t ib) {
  return a < b || (a == b && ia < ib);
}

Benefit Delta(double old_min, double new_min) {
  if (old_min == new_min) return {};
  const bool old_inf = std::isinf(old_min);
  const bool new_inf = std::isinf(new_min);
  if (old_inf && !new_inf) return {1, -new_min};
  if (!old_inf && new_inf) return {-1, old_min};
  return {0, old_min - new_min};
}

Benefit& operator+=(Benefit& a, const Benefit& b) {
  a.coverage_gain += b.coverage_gain;
  a.cost_reduction += b.cost_reduction;
  return a;
}

Benefit operator-(const Benefit& a, const Benefit& b) {
  return {a.coverage_gain - b.coverage_gain, a.cost_reduction - b.cost_reduction};
}

Benefit operator+(Benefit a, const Benefit& b) { return a += b; }

// Queries the classifier for each state while budget remains. Returns the
// number of states evaluated; the rest keep valid = false.
std::size_t QueryValidity(std::span<const UserState> states, const Classifier& classifier,
                          BudgetMeter& meter, std::vector<bool>& valid) {
  valid.assign(states.size(), false);
  std::size_t evaluated = 0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (meter.exhausted()) break;
    valid[i] = Predict(classifier, states[i], meter) == 1;
    ++evaluated;
  }
  return evaluated;
}

std::vector<std::vector<int>> FeasibleTable(const DatasetSchema& schema,
                                            const UserState& origin) {
  std::vector<std::vector<int>> table(schema.num_features());
  for (std::size_t f = 0; f < schema.num_features(); ++f) {
    table[f] = FeasibleValues(schema, f, origin[f]);
  }
  return table;
}

std::vector<UserState> UniformFeasibleSet(const std::vector<std::vector<int>>& feasible,
                                          const UserState& origin, std::size_t count,
                                          Rng& rng) {
  std::vector<UserState> out(count, origin);
  for (auto& state : out) {
    for (std::size_t f = 0; f < feasible.size(); ++f) {
      std::uniform_int_distribution<std::size_t> pick(0, feasible[f].size() - 1);
      state[f] = feasible[f][pick(rng)];
    }
  }
  return out;
}

bool AnyValid(const std::vector<bool>& valid) {
  return std::find(valid.begin(), valid.end(), true) != valid.end();
}

double DistanceObjective(Objective objective, const DatasetSchema& schema,
                         const UserState& origin, std::span<const UserState> members) {
  switch (objective) {
    case Objective::kDiversity: return Diversity(schema, members);
    case Objective::kProximity: return Proximity(schema, origin, members);
    case Objective::kSparsity: return Sparsity(origin, members);
    case Objective::kEmc: break;
  }
  throw InvalidArgument("EMC is not a distance objective");
}

}  // namespace

std::string_view ToString(Method method) {
  switch (method) {
    case Method::kCols: return "cols";
    case Method::kPcols: return "pcols";
    case Method::kRandom: return "random";
    case Method::kLocalSearch: return "ls";
  }
  return "cols";
}

std::string_view ToString(Objective objective) {
  switch (objective) {
    case Objective::kEmc: return "emc";
    case Objective::kDiversity: return "diversity";
    case Objective::kProximity: return "proximity";
    case Objective::kSparsity: return "sparsity";
  }
  return "emc";
}

Method ParseMethod(std::string_view text) {
  if (text == "cols") return Method::kCols;
  if (text == "pcols") return Method::kPcols;
  if (text == "random") return Method::kRandom;
  if (text == "ls") return Method::kLocalSearch;
  throw InvalidArgument("unknown method '" + std::string(text) +
                        "' (valid methods: cols, pcols, random, ls)");
}

Objective ParseObjective(std::string_view text) {
  if (text == "emc") return Objective::kEmc;
  if (text == "diversity") return Objective::kDiversity;
  if (text == "proximity") return Objective::kProximity;
  if (text == "sparsity") return Objective::kSparsity;
  throw InvalidArgument("unknown objective '" + std::string(text) +
                        "' (valid objectives: emc, diversity, proximity, sparsity)");
}

void SearchConfig::validate() const {
  if (budget == 0 || set_size == 0 || num_samples == 0 || hamming_distance == 0 ||
      restarts == 0) {
    throw InvalidArgument("search parameters must all be positive");
  }
  if (restarts > budget) throw InvalidArgument("more restarts than budget");
}

double Benefit::value() const {
  if (coverage_gain > 0) return kInfinity;
  if (coverage_gain < 0) return -kInfinity;
  return cost_reduction;
}

ColumnMinima::ColumnMinima(const CostMatrix& best)
    : best_row_(best.cols(), kNoRow),
      second_row_(best.cols(), kNoRow),
      best_(best.cols(), kInfinity),
      second_(best.cols(), kInfinity) {
  if (best.rows() == 0) throw InvalidArgument("column minima of an empty matrix");
  for (std::size_t j = 0; j < best.cols(); ++j) rescan(best, j);
}

void ColumnMinima::rescan(const CostMatrix& best, std::size_t j) {
  best_row_[j] = second_row_[j] = kNoRow;
  best_[j] = second_[j] = kInfinity;
  for (std::size_t i = 0; i < best.rows(); ++i) {
    const double v = best(i, j);
    if (best_row_[j] == kNoRow || Before(v, i, best_[j], best_row_[j])) {
      second_[j] = best_[j];
      second_row_[j] = best_row_[j];
      best_[j] = v;
      best_row_[j] = i;
    } else if (second_row_[j] == kNoRow || Before(v, i, second_[j], second_row_[j])) {
      second_[j] = v;
      second_row_[j] = i;
    }
  }
}

void ColumnMinima::update_row(const CostMatrix& best, std::size_t row) {
  for (std::size_t j = 0; j < best.cols(); ++j) {
    if (row == best_row_[j] || row == second_row_[j]) {
      rescan(best, j);
      continue;
    }
    const double v = best(row, j);
    if (Before(v, row, best_[j], best_row_[j])) {
      second_[j] = best_[j];
      second_row_[j] = best_row_[j];
      best_[j] = v;
      best_row_[j] = row;
    } else if (second_row_[j] == kNoRow || Before(v, row, second_[j], second_row_[j])) {
      second_[j] = v;
      second_row_[j] = row;
    }
  }
}

BenefitMatrix ComputeBenefits(const CostMatrix& best, const ColumnMinima& minima,
                              const CostMatrix& candidates,
                              const std::vector<bool>& active) {
  if (best.cols() != candidates.cols() || minima.cols() != best.cols()) {
    throw InvalidArgument("benefit matrix: cost matrices cover different sample sets");
  }
  if (!active.empty() && active.size() != candidates.rows()) {
    throw InvalidArgument("benefit matrix: active mask has wrong length");
  }
  const std::size_t n = best.rows();
  const std::size_t m = best.cols();
  BenefitMatrix out(n, candidates.rows());
  std::vector<Benefit> owner_correction(n);
  for (std::size_t q = 0; q < candidates.rows(); ++q) {
    if (!active.empty() && !active[q]) continue;
    Benefit shared;
    std::fill(owner_correction.begin(), owner_correction.end(), Benefit{});
    for (std::size_t r = 0; r < m; ++r) {
      const double b1 = minima.best(r);
      const double c = candidates(q, r);
      const Benefit keep_owner = Delta(b1, std::min(b1, c));
      const Benefit drop_owner = Delta(b1, std::min(c, minima.second(r)));
      shared += keep_owner;
      owner_correction[minima.best_row(r)] += drop_owner - keep_owner;
    }
    for (std::size_t p = 0; p < n; ++p) out(p, q) = shared + owner_correction[p];
  }
  return out;
}

BenefitMatrix ComputeBenefits(const CostMatrix& best, const CostMatrix& candidates) {
  return ComputeBenefits(best, ColumnMinima(best), candidates);
}

std::vector<std::pair<std::size_t, std::size_t>> SelectSwaps(const BenefitMatrix& benefits,
                                                             double tolerance) {
  std::optional<std::pair<std::size_t, std::size_t>> pick;
  for (std::size_t p = 0; p < benefits.best_rows(); ++p) {
    for (std::size_t q = 0; q < benefits.candidate_rows(); ++q) {
      const Benefit& b = benefits(p, q);
      if (!b.improves(tolerance)) continue;
      if (!pick || b > benefits(pick->first, pick->second)) pick.emplace(p, q);
    }
  }
  if (!pick) return {};
  return {*pick};
}

std::vector<UserState> Perturb(std::span<const UserState> members, const UserState& origin,
                               const DatasetSchema& schema, std::size_t hamming_distance,
                               Rng& rng) {
  std::vector<std::size_t> changeable = schema.changeable_features();
  if (changeable.empty()) throw InvalidArgument("perturb: every feature is immutable");
  std::vector<std::vector<int>> feasible(schema.num_features());
  for (std::size_t f : changeable) feasible[f] = FeasibleValues(schema, f, origin[f]);
  const std::size_t k = std::min(hamming_distance, changeable.size());

  std::vector<UserState> out(members.begin(), members.end());
  for (auto& state : out) {
    // Partial Fisher-Yates: the first k entries become a uniform k-subset.
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, changeable.size() - 1);
      std::swap(changeable[i], changeable[pick(rng)]);
      const std::size_t f = changeable[i];
      std::uniform_int_distribution<std::size_t> value(0, feasible[f].size() - 1);
      state[f] = feasible[f][value(rng)];
    }
  }
  return out;
}

Rng SearchStream(std::uint64_t seed, const UserState& origin, std::size_t restart) {
  return MakeStream(seed, StreamTag::kSearch, {HashState(origin), restart});
}

namespace {

SearchResult ColsWithStream(const UserState& origin, const Classifier& classifier,
                            const CostSampleSet& samples, const DatasetSchema& schema,
                            const SearchConfig& config, BudgetMeter& meter, Rng rng) {
  config.validate();
  if (samples.size() == 0) throw InvalidArgument("COLS needs at least one cost sample");
  const std::size_t n = config.set_size;

  SearchResult result;
  std::vector<UserState> seeds(n, origin);
  result.set.members = Perturb(seeds, origin, schema, config.hamming_distance, rng);
  QueryValidity(result.set.members, classifier, meter, result.set.valid);
  CostMatrix best = BuildCostMatrix(schema, origin, result.set.members, samples,
                                    result.set.valid);
  ColumnMinima minima(best);
  result.trace.push_back(EmcOf(best));

  std::vector<bool> valid;
  std::vector<bool> active;
  while (!meter.exhausted()) {
    auto candidates = Perturb(result.set.members, origin, schema,
                              config.hamming_distance, rng);
    const std::size_t evaluated = QueryValidity(candidates, classifier, meter, valid);
    candidates.resize(evaluated);
    valid.resize(evaluated);
    if (candidates.empty()) break;
    const CostMatrix cand = BuildCostMatrix(schema, origin, candidates, samples, valid);
    active.assign(candidates.size(), true);
    while (true) {
      const auto swaps = SelectSwaps(ComputeBenefits(best, minima, cand, active));
      if (swaps.empty()) break;
      const auto [p, q] = swaps.front();
      result.set.members[p] = candidates[q];
      result.set.valid[p] = valid[q];
      best.set_row(p, cand.row(q));
      minima.update_row(best, p);
      active[q] = false;
    }
    ++result.iterations;
    result.trace.push_back(EmcOf(best));
  }
  result.emc = result.trace.back();
  result.costs = std::move(best);
  result.queries = meter.used();
  return result;
}

}  // namespace

SearchResult Cols(const UserState& origin, const Classifier& classifier,
                  const CostSampleSet& samples, const DatasetSchema& schema,
                  const SearchConfig& config, BudgetMeter& meter) {
  return ColsWithStream(origin, classifier, samples, schema, config, meter,
                        SearchStream(config.seed, origin, 0));
}

SearchResult Pcols(const UserState& origin, const Classifier& classifier,
                   const CostSampleSet& samples, const DatasetSchema& schema,
                   const SearchConfig& config) {
  config.validate();
  const std::size_t share = config.budget / config.restarts;
  std::optional<SearchResult> winner;
  std::vector<EmcValue> restart_emc;
  std::size_t total_queries = 0;
  for (std::size_t r = 0; r < config.restarts; ++r) {
    BudgetMeter meter(share);
    SearchConfig sub = config;
    sub.budget = share;
    sub.restarts = 1;
    SearchResult run = ColsWithStream(origin, classifier, samples, schema, sub, meter,
                                      SearchStream(config.seed, origin, r));
    total_queries += run.queries;
    restart_emc.push_back(run.emc);
    if (!winner || run.emc < winner->emc) winner = std::move(run);
  }
  winner->restart_emc = std::move(restart_emc);
  winner->queries = total_queries;
  return std::move(*winner);
}

SearchResult RandomSearch(const UserState& origin, const Classifier& classifier,
                          const CostSampleSet& samples, const DatasetSchema& schema,
                          const SearchConfig& config, BudgetMeter& meter) {
  config.validate();
  if (samples.size() == 0) throw InvalidArgument("random search needs cost samples");
  Rng rng = SearchStream(config.seed, origin, 0);
  const auto feasible = FeasibleTable(schema, origin);

  SearchResult result;
  result.set.members = UniformFeasibleSet(feasible, origin, config.set_size, rng);
  QueryValidity(result.set.members, classifier, meter, result.set.valid);
  result.costs = BuildCostMatrix(schema, origin, result.set.members, samples,
                                 result.set.valid);
  result.emc = EmcOf(result.costs);
  result.trace.push_back(result.emc);

  std::vector<bool> valid;
  while (!meter.exhausted()) {
    auto candidates = UniformFeasibleSet(feasible, origin, config.set_size, rng);
    const std::size_t evaluated = QueryValidity(candidates, classifier, meter, valid);
    if (evaluated < candidates.size()) break;  // partial sets are never compared
    CostMatrix cand = BuildCostMatrix(schema, origin, candidates, samples, valid);
    const EmcValue score = EmcOf(cand);
    if (score < result.emc) {
      result.set.members = std::move(candidates);
      result.set.valid = valid;
      result.costs = std::move(cand);
      result.emc = score;
    }
    ++result.iterations;
    result.trace.push_back(result.emc);
  }
  result.queries = meter.used();
  return result;
}

SearchResult LocalSearch(const UserState& origin, const Classifier& classifier,
                         const DatasetSchema& schema, Objective objective,
                         const SearchConfig& config, BudgetMeter& meter,
                         const CostSampleSet* samples) {
  config.validate();
  const bool use_emc = objective == Objective::kEmc;
  if (use_emc && (samples == nullptr || samples->size() == 0)) {
    throw InvalidArgument("local search on EMC needs cost samples");
  }
  Rng rng = SearchStream(config.seed, origin, 0);

  SearchResult result;
  std::vector<UserState> seeds(config.set_size, origin);
  result.set.members = Perturb(seeds, origin, schema, config.hamming_distance, rng);
  QueryValidity(result.set.members, classifier, meter, result.set.valid);

  EmcValue best_emc;
  double best_score = 0.0;
  if (use_emc) {
    best_emc = EmcOf(BuildCostMatrix(schema, origin, result.set.members, *samples,
                                     result.set.valid));
    result.trace.push_back(best_emc);
  } else {
    best_score = DistanceObjective(objective, schema, origin, result.set.members);
    result.objective_trace.push_back(best_score);
  }

  std::vector<bool> valid;
  while (!meter.exhausted()) {
    auto candidates = Perturb(result.set.members, origin, schema,
                              config.hamming_distance, rng);
    const std::size_t evaluated = QueryValidity(candidates, classifier, meter, valid);
    if (evaluated < candidates.size()) break;
    bool accept = false;
    if (AnyValid(valid)) {
      if (use_emc) {
        const EmcValue score =
            EmcOf(BuildCostMatrix(schema, origin, candidates, *samples, valid));
        if (score < best_emc) {
          best_emc = score;
          accept = true;
        }
      } else {
        const double score = DistanceObjective(objective, schema, origin, candidates);
        if (!AnyValid(result.set.valid) || score > best_score) {
          best_score = score;
          accept = true;
        }
      }
    }
    if (accept) {
      result.set.members = std::move(candidates);
      result.set.valid = valid;
    }
    ++result.iterations;
    if (use_emc) {
      result.trace.push_back(best_emc);
    } else {
      result.objective_trace.push_back(best_score);
    }
  }
  if (samples != nullptr && samples->size() > 0) {
    result.costs = BuildCostMatrix(schema, origin, result.set.members, *samples,
                                   result.set.valid);
    result.emc = EmcOf(result.costs);
  }
  result.queries = meter.used();
  return result;
}

SearchResult RunSearch(Method method, Objective objective, const UserState& origin,
                       const Classifier& classifier, const CostSampleSet& samples,
                       const DatasetSchema& schema, const SearchConfig& config) {
  if (method != Method::kLocalSearch && objective != Objective::kEmc) {
    throw InvalidArgument(std::string(ToString(method)) + " only optimizes EMC");
  }
  if (method == Method::kPcols) return Pcols(origin, classifier, samples, schema, config);
  BudgetMeter meter(config.budget);
  switch (method) {
    case Method::kCols: return Cols(origin, classifier, samples, schema, config, meter);
    case Method::kRandom:
      return RandomSearch(origin, classifier, samples, schema, config, meter);
    case Method::kLocalSearch:
      return LocalSearch(origin, classifier, schema, objective, config, meter, &samples);
    case Method::kPcols: break;
  }
  throw InvalidArgument("unhandled method");
}

}  // namespace recourse

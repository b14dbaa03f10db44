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

#ifndef RECOURSE_SEARCH_HPP_
#define RECOURSE_SEARCH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "recourse/cost.hpp"
#include "recourse/model.hpp"
#include "recourse/recourse_set.hpp"
#include "recourse/rng.hpp"
#include "recourse/schema.hpp"

namespace recourse {

enum class Method { kCols, kPcols, kRandom, kLocalSearch };
enum class Objective { kEmc, kDiversity, kProximity, kSparsity };

std::string_view ToString(Method method);
std::string_view ToString(Objective objective);
Method ParseMethod(std::string_view text);
Objective ParseObjective(std::string_view text);

struct SearchConfig {
  std::size_t budget = 5000;
  std::size_t set_size = 10;
  std::size_t num_samples = 1000;
  std::size_t hamming_distance = 2;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;

  // Throws InvalidArgument if any field is zero or restarts > budget.
  void validate() const;
};

// A benefit is the decrease of the per-sample minimum sum, split the same
// way as EmcValue: first the number of samples that become covered, then
// the reduction of the finite sum.
struct Benefit {
  long long coverage_gain = 0;
  double cost_reduction = 0.0;

  // Positive in the lexicographic order, with a small slack on the finite
  // part so that rounding noise never counts as progress.
  bool improves(double tolerance) const {
    return coverage_gain > 0 || (coverage_gain == 0 && cost_reduction > tolerance);
  }
  // Extended-real view: +/-inf when coverage changes.
  double value() const;

  friend bool operator==(const Benefit&, const Benefit&) = default;
  friend auto operator<=>(const Benefit& a, const Benefit& b) {
    if (auto c = a.coverage_gain <=> b.coverage_gain; c != 0) {
      return static_cast<std::partial_ordering>(c);
    }
    return a.cost_reduction <=> b.cost_reduction;
  }
};

inline constexpr double kBenefitTolerance = 1e-12;

// Lowest and second-lowest entry of every column of the best-set cost
// matrix. Ties go to the lower row index.
class ColumnMinima {
 public:
  explicit ColumnMinima(const CostMatrix& best);

  std::size_t cols() const { return best_row_.size(); }
  std::size_t best_row(std::size_t j) const { return best_row_[j]; }
  double best(std::size_t j) const { return best_[j]; }
  // kInfinity when the set has a single member.
  double second(std::size_t j) const { return second_[j]; }

  // Refreshes the cache after row `row` of `best` was overwritten.
  void update_row(const CostMatrix& best, std::size_t row);

 private:
  void rescan(const CostMatrix& best, std::size_t j);

  std::vector<std::size_t> best_row_;
  std::vector<std::size_t> second_row_;
  std::vector<double> best_;
  std::vector<double> second_;
};

// Entry (p, q): change of the per-sample minimum sum when best-set member
// p is replaced by candidate q.
class BenefitMatrix {
 public:
  BenefitMatrix(std::size_t best_rows, std::size_t candidate_rows)
      : best_rows_(best_rows), candidate_rows_(candidate_rows),
        entries_(best_rows * candidate_rows) {}

  std::size_t best_rows() const { return best_rows_; }
  std::size_t candidate_rows() const { return candidate_rows_; }
  const Benefit& operator()(std::size_t p, std::size_t q) const {
    return entries_[p * candidate_rows_ + q];
  }
  Benefit& operator()(std::size_t p, std::size_t q) {
    return entries_[p * candidate_rows_ + q];
  }

 private:
  std::size_t best_rows_;
  std::size_t candidate_rows_;
  std::vector<Benefit> entries_;
};

// Exact single-swap benefits. For a sample whose minimum is held by p, the
// new minimum is min(C[q], second-best); for any other sample it is
// min(current best, C[q]). Candidates with `active[q] == false` get an
// all-zero column. Runs in O(N * M) per candidate.
BenefitMatrix ComputeBenefits(const CostMatrix& best, const ColumnMinima& minima,
                              const CostMatrix& candidates,
                              const std::vector<bool>& active = {});
BenefitMatrix ComputeBenefits(const CostMatrix& best, const CostMatrix& candidates);

// The single largest improving entry, ties to the lexicographically
// smallest (p, q); empty when nothing improves.
std::vector<std::pair<std::size_t, std::size_t>> SelectSwaps(
    const BenefitMatrix& benefits, double tolerance = kBenefitTolerance);

// One candidate per member: up to `hamming_distance` distinct changeable
// features are redrawn uniformly from their feasible values relative to
// `origin` (a redraw may land on the current value).
std::vector<UserState> Perturb(std::span<const UserState> members,
                               const UserState& origin, const DatasetSchema& schema,
                               std::size_t hamming_distance, Rng& rng);

struct SearchResult {
  RecourseSet set;
  CostMatrix costs;                 // best-set cost matrix (empty without samples)
  EmcValue emc;                     // of the returned set (zero samples without)
  std::vector<EmcValue> trace;      // per iteration, initialization first
  std::vector<double> objective_trace;  // local search on distance objectives
  std::vector<EmcValue> restart_emc;    // P-COLS only
  std::size_t queries = 0;
  std::size_t iterations = 0;
};

// Stream for restart r of a search over `origin`.
Rng SearchStream(std::uint64_t seed, const UserState& origin, std::size_t restart = 0);

SearchResult Cols(const UserState& origin, const Classifier& classifier,
                  const CostSampleSet& samples, const DatasetSchema& schema,
                  const SearchConfig& config, BudgetMeter& meter);

// `restarts` independent COLS runs on floor(budget / restarts) queries
// each; the lowest-EMC run wins, ties to the lowest restart index.
SearchResult Pcols(const UserState& origin, const Classifier& classifier,
                   const CostSampleSet& samples, const DatasetSchema& schema,
                   const SearchConfig& config);

// Whole-set proposals drawn uniformly from the feasible product space,
// accepted only when their EMC improves.
SearchResult RandomSearch(const UserState& origin, const Classifier& classifier,
                          const CostSampleSet& samples, const DatasetSchema& schema,
                          const SearchConfig& config, BudgetMeter& meter);

// Perturb-and-accept on the whole set. Maximizes the distance objectives,
// minimizes EMC (which then needs `samples`). A candidate set without any
// valid member is never accepted.
SearchResult LocalSearch(const UserState& origin, const Classifier& classifier,
                         const DatasetSchema& schema, Objective objective,
                         const SearchConfig& config, BudgetMeter& meter,
                         const CostSampleSet* samples = nullptr);

// Creates the meter and dispatches on `method`.
SearchResult RunSearch(Method method, Objective objective, const UserState& origin,
                       const Classifier& classifier, const CostSampleSet& samples,
                       const DatasetSchema& schema, const SearchConfig& config);

}  // namespace recourse

#endif  // RECOURSE_SEARCH_HPP_

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nomavlc {

// Running totals for one (K, strategy) cell. Per-rank sums are indexed by
// the position of each rate after sorting the trial's rates ascending.
struct RankAccumulator {
  std::vector<double> per_rank_sums;
  std::size_t trial_count = 0;
  std::size_t infeasible_count = 0;
  double sum_rate_total = 0.0;
  double sum_rate_sq_total = 0.0;
  double min_rate_total = 0.0;
  double min_rate_sq_total = 0.0;

  RankAccumulator() = default;
  explicit RankAccumulator(std::size_t user_count)
      : per_rank_sums(user_count, 0.0) {}

  void accumulate(std::span<const double> rates);
  void record_infeasible() { ++infeasible_count; }
  // Element-wise sum. Callers that need bit-identical results merge in a
  // fixed order.
  void merge(const RankAccumulator& other);
};

struct Summary {
  double avg_sum_rate = 0.0;
  double avg_min_rate = 0.0;    // mean of per-trial minima
  double rank1_avg_rate = 0.0;  // mean of the lowest-rank rate; equals the above
  double fairness = 0.0;
  double infeasible_fraction = 0.0;
  double se_sum_rate = 0.0;
  double se_min_rate = 0.0;
  std::vector<double> per_rank_avg;
};

// (sum R)^2 / (K sum R^2). Throws DomainError on empty, negative or
// all-zero input.
double jain_index(std::span<const double> avg_rates);

// Throws DomainError if no feasible trial was accumulated.
Summary finalize(const RankAccumulator& acc);

}  // namespace nomavlc

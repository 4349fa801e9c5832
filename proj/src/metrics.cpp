#include "nomavlc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nomavlc/error.hpp"

namespace nomavlc {

void RankAccumulator::accumulate(std::span<const double> rates) {
  if (per_rank_sums.empty()) per_rank_sums.assign(rates.size(), 0.0);
  if (rates.size() != per_rank_sums.size()) {
    throw DomainError("accumulate: rate vector has the wrong length");
  }
  std::vector<double> sorted(rates.begin(), rates.end());
  std::sort(sorted.begin(), sorted.end());

  double total = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    per_rank_sums[r] += sorted[r];
    total += sorted[r];
  }
  const double lowest = sorted.front();
  sum_rate_total += total;
  sum_rate_sq_total += total * total;
  min_rate_total += lowest;
  min_rate_sq_total += lowest * lowest;
  ++trial_count;
}

void RankAccumulator::merge(const RankAccumulator& other) {
  if (per_rank_sums.empty()) {
    per_rank_sums.assign(other.per_rank_sums.size(), 0.0);
  }
  if (!other.per_rank_sums.empty() &&
      other.per_rank_sums.size() != per_rank_sums.size()) {
    throw DomainError("merge: accumulators have different user counts");
  }
  for (std::size_t r = 0; r < other.per_rank_sums.size(); ++r) {
    per_rank_sums[r] += other.per_rank_sums[r];
  }
  trial_count += other.trial_count;
  infeasible_count += other.infeasible_count;
  sum_rate_total += other.sum_rate_total;
  sum_rate_sq_total += other.sum_rate_sq_total;
  min_rate_total += other.min_rate_total;
  min_rate_sq_total += other.min_rate_sq_total;
}

double jain_index(std::span<const double> avg_rates) {
  if (avg_rates.empty()) {
    throw DomainError("jain_index: empty rate vector");
  }
  double total = 0.0;
  double total_sq = 0.0;
  for (double r : avg_rates) {
    if (r < 0.0 || !std::isfinite(r)) {
      throw DomainError("jain_index: rates must be finite and non-negative");
    }
    total += r;
    total_sq += r * r;
  }
  if (total_sq == 0.0) {
    throw DomainError("jain_index: all rates are zero");
  }
  const double f =
      total * total / (static_cast<double>(avg_rates.size()) * total_sq);
  return std::min(f, 1.0);
}

namespace {

double standard_error(double total, double total_sq, std::size_t n) {
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  const double mean = total / dn;
  const double var = std::max(total_sq / dn - mean * mean, 0.0) * dn / (dn - 1.0);
  return std::sqrt(var / dn);
}

}  // namespace

Summary finalize(const RankAccumulator& acc) {
  if (acc.trial_count == 0) {
    throw DomainError("finalize: no feasible trials accumulated");
  }
  const double n = static_cast<double>(acc.trial_count);
  Summary s;
  s.avg_sum_rate = acc.sum_rate_total / n;
  s.avg_min_rate = acc.min_rate_total / n;
  s.per_rank_avg.resize(acc.per_rank_sums.size());
  for (std::size_t r = 0; r < acc.per_rank_sums.size(); ++r) {
    s.per_rank_avg[r] = acc.per_rank_sums[r] / n;
  }
  s.rank1_avg_rate = s.per_rank_avg.front();
  bool any_rate = std::any_of(s.per_rank_avg.begin(), s.per_rank_avg.end(),
                              [](double r) { return r > 0.0; });
  s.fairness = any_rate ? jain_index(s.per_rank_avg)
                        : std::numeric_limits<double>::quiet_NaN();
  s.infeasible_fraction =
      static_cast<double>(acc.infeasible_count) /
      static_cast<double>(acc.trial_count + acc.infeasible_count);
  s.se_sum_rate =
      standard_error(acc.sum_rate_total, acc.sum_rate_sq_total, acc.trial_count);
  s.se_min_rate =
      standard_error(acc.min_rate_total, acc.min_rate_sq_total, acc.trial_count);
  return s;
}

}  // namespace nomavlc

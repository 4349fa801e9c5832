#include "nomavlc/link.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nomavlc/error.hpp"

namespace nomavlc {

namespace {

// Power still undecoded after rank k. Summed from the tail rather than as
// 1 - head so it is exactly zero at the top rank and keeps its relative
// precision when tiny.
double residual_fraction(const AllocationCoefficients& a, std::size_t rank) {
  double tail = 0.0;
  for (std::size_t i = a.size(); i-- > rank + 1;) tail += a[i];
  return tail;
}

void check_rank(const AllocationCoefficients& a, std::size_t rank) {
  if (rank >= a.size()) {
    throw DomainError("SIC rank out of range");
  }
}

}  // namespace

double sinr_exact(const AllocationCoefficients& a, std::size_t rank,
                  const LinkBudget& budget) {
  check_rank(a, rank);
  if (budget.gains_sq.size() != a.size()) {
    throw DomainError("sinr_exact: gain and coefficient counts differ");
  }
  const double rx = budget.optical_power * budget.optical_power *
                    budget.gains_sq[rank];
  const double signal = a[rank] * rx;
  if (signal == 0.0) return 0.0;
  return signal / (residual_fraction(a, rank) * rx + budget.noise_power);
}

double sinr_high_snr(const AllocationCoefficients& a, std::size_t rank,
                     double snr_gain_top) {
  check_rank(a, rank);
  if (rank + 1 == a.size()) return a[rank] * snr_gain_top;
  const double interference = residual_fraction(a, rank);
  if (interference == 0.0) return std::numeric_limits<double>::infinity();
  return a[rank] / interference;
}

double achievable_rate(double sinr, double bandwidth) {
  if (sinr < 0.0) {
    throw DomainError("achievable_rate: negative SINR");
  }
  constexpr double kBoundFactor = std::numbers::e / (2.0 * std::numbers::pi);
  return 0.5 * bandwidth * std::log2(1.0 + kBoundFactor * sinr);
}

std::vector<double> user_rates(const AllocationCoefficients& a,
                               const LinkBudget& budget) {
  std::vector<double> rates(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    rates[k] = achievable_rate(sinr_exact(a, k, budget), budget.bandwidth);
  }
  return rates;
}

}  // namespace nomavlc

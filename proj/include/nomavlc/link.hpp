#pragma once

// SINR under perfect successive interference cancellation and the
// corresponding achievable rate of an intensity-modulated channel.

#include <cstddef>
#include <vector>

#include "nomavlc/allocation.hpp"

namespace nomavlc {

struct LinkBudget {
  double optical_power = 10.0;  // P_o, W
  double noise_power = 2e-14;   // sigma^2, A^2
  double bandwidth = 20e6;      // Hz
  std::vector<double> gains_sq; // ||h_k||^2 per SIC rank, ascending

  double tx_snr() const { return optical_power * optical_power / noise_power; }
};

// Ranks are 0-based: rank 0 is decoded first.
double sinr_exact(const AllocationCoefficients& a, std::size_t rank,
                  const LinkBudget& budget);

// High-SNR form: alpha_k / (1 - sum_{i<=k} alpha_i) below the top rank,
// alpha_K * snr_gain_top at the top rank, where snr_gain_top = gamma ||h_K||^2.
// Returns +infinity if the residual interference is exactly zero below K.
double sinr_high_snr(const AllocationCoefficients& a, std::size_t rank,
                     double snr_gain_top);

// R = (B / 2) log2(1 + e / (2 pi) * SINR), in bit/s.
double achievable_rate(double sinr, double bandwidth);

std::vector<double> user_rates(const AllocationCoefficients& a,
                               const LinkBudget& budget);

}  // namespace nomavlc

#pragma once

// Monte Carlo engine. Every trial draws one placement of K users and runs
// all configured strategies on it, so strategies are compared pairwise.
//
// Randomness is split per (K, trial) from the master seed, which makes the
// sweep a pure function of the config regardless of thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nomavlc/allocation.hpp"
#include "nomavlc/channel.hpp"
#include "nomavlc/link.hpp"
#include "nomavlc/metrics.hpp"

namespace nomavlc {

struct LedPosition {
  double x = 0.0;
  double y = 0.0;
};

struct StrategySpec {
  Strategy kind = Strategy::sfpa;
  double mu = 0.2;              // fpa
  double beta = 1.0;            // sfpa
  double sinr_target_db = 1.0;  // epa
};

struct ScenarioConfig {
  double room_x = 3.0;
  double room_y = 3.0;
  std::vector<LedPosition> leds{{1.0, 1.0}, {2.0, 2.0}};
  double vertical_separation = 2.0;
  DeviceParams device;
  double noise_psd = 1e-21;  // A^2/Hz
  double bandwidth = 20e6;   // Hz
  std::vector<std::size_t> user_counts{2, 3, 4, 5, 6, 7, 8};
  std::size_t trials = 10000;  // per K
  std::uint64_t seed = 20210501;
  std::vector<StrategySpec> strategies{{Strategy::fpa},
                                       {Strategy::sfpa},
                                       {Strategy::grpa},
                                       {Strategy::ngdpa},
                                       {Strategy::epa}};

  double noise_power() const { return noise_psd * bandwidth; }
  std::vector<Position3> led_positions() const;
};

inline constexpr const char* kRngAlgorithm =
    "mt19937_64 per-trial substream, seeded by splitmix64(seed, K, trial)";

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::size_t user_count,
                         std::size_t trial);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::mt19937_64& rng);

// K users uniform over the room rectangle on the receiver plane z = 0.
std::vector<Position3> place_users(std::mt19937_64& rng, std::size_t user_count,
                                   double room_x, double room_y);

struct StrategyOutcome {
  StrategySpec spec;
  bool feasible = true;
  std::optional<AllocationCoefficients> alpha;
  std::vector<double> sinr;   // per SIC rank
  std::vector<double> rates;  // bit/s per SIC rank
  std::optional<double> mu;   // fpa / sfpa only
};

struct TrialResult {
  std::vector<Position3> users;
  ChannelGains gains;
  std::vector<double> sorted_sq;
  std::vector<StrategyOutcome> outcomes;  // parallel to config.strategies
};

LinkBudget make_budget(const ScenarioConfig& cfg, std::vector<double> sorted_sq);

// Allocation + exact SINR + rate for one strategy on ranked gains. Zero
// gains that make a strategy undefined yield all-zero rates.
StrategyOutcome evaluate_strategy(const StrategySpec& spec,
                                  const LinkBudget& budget);

TrialResult run_trial(const ScenarioConfig& cfg,
                      const std::vector<Position3>& users);

struct SweepRow {
  std::size_t user_count = 0;
  Strategy strategy = Strategy::sfpa;
  std::size_t feasible_trials = 0;
  Summary summary;  // NaN statistics when no trial was feasible
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::string rng_algorithm;
  std::size_t trials_per_k = 0;
  std::vector<SweepRow> rows;  // K-major, strategies in config order
};

struct SweepOptions {
  int threads = 0;  // 0: OpenMP default
  std::size_t chunk_size = 256;
};

// OpenMP version. Trials are grouped into fixed-size chunks, each chunk
// accumulates serially and chunks are merged in index order, so the bytes
// do not depend on the thread count.
SweepResult run_sweep(const ScenarioConfig& cfg, SweepOptions opts = {});

// Single-threaded reference that accumulates trial by trial.
SweepResult run_sweep_serial(const ScenarioConfig& cfg);

}  // namespace nomavlc

#include "nomavlc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <omp.h>

#include "nomavlc/error.hpp"

namespace nomavlc {

std::vector<Position3> ScenarioConfig::led_positions() const {
  std::vector<Position3> out;
  out.reserve(leds.size());
  for (const auto& p : leds) out.push_back({p.x, p.y, vertical_separation});
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t user_count,
                         std::size_t trial) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ static_cast<std::uint64_t>(user_count));
  return splitmix64(s ^ static_cast<std::uint64_t>(trial));
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Position3> place_users(std::mt19937_64& rng, std::size_t user_count,
                                   double room_x, double room_y) {
  if (user_count == 0) {
    throw DomainError("place_users: need at least one user");
  }
  std::vector<Position3> users(user_count);
  for (auto& u : users) {
    u.x = room_x * uniform01(rng);
    u.y = room_y * uniform01(rng);
    u.z = 0.0;
  }
  return users;
}

LinkBudget make_budget(const ScenarioConfig& cfg,
                       std::vector<double> sorted_sq) {
  LinkBudget b;
  b.optical_power = cfg.device.led_optical_power;
  b.noise_power = cfg.noise_power();
  b.bandwidth = cfg.bandwidth;
  b.gains_sq = std::move(sorted_sq);
  return b;
}

namespace {

AllocationCoefficients allocate(const StrategySpec& spec,
                                const LinkBudget& budget,
                                std::optional<double>& mu) {
  const auto& g = budget.gains_sq;
  const std::size_t k = g.size();
  switch (spec.kind) {
    case Strategy::fpa:
      mu = spec.mu;
      return fpa_coefficients(spec.mu, k);
    case Strategy::sfpa: {
      const double m =
          spec.beta == 1.0
              ? sfpa_mu(budget.tx_snr(), g.back(), k)
              : sfpa_mu_beta(spec.beta, budget.tx_snr(), g.back(), k);
      mu = m;
      return fpa_coefficients(m, k);
    }
    case Strategy::grpa:
      return grpa_coefficients(g);
    case Strategy::ngdpa:
      return ngdpa_coefficients(g);
    case Strategy::epa:
      return epa_coefficients(
          g, EpaParams{db_to_linear(spec.sinr_target_db), budget.noise_power,
                       budget.optical_power});
  }
  throw DomainError("unknown strategy");
}

}  // namespace

StrategyOutcome evaluate_strategy(const StrategySpec& spec,
                                  const LinkBudget& budget) {
  const std::size_t k = budget.gains_sq.size();
  StrategyOutcome out;
  out.spec = spec;
  try {
    out.alpha = allocate(spec, budget, out.mu);
  } catch (const InfeasibleError&) {
    out.feasible = false;
    return out;
  } catch (const DomainError&) {
    // Only users outside every LED's field of view may make a strategy
    // undefined; those trials count with zero rates.
    const bool degenerate =
        std::any_of(budget.gains_sq.begin(), budget.gains_sq.end(),
                    [](double v) { return !(v > 0.0); });
    if (!degenerate) throw;
    out.mu.reset();
    out.sinr.assign(k, 0.0);
    out.rates.assign(k, 0.0);
    return out;
  }
  out.sinr.resize(k);
  out.rates.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    out.sinr[r] = sinr_exact(*out.alpha, r, budget);
    out.rates[r] = achievable_rate(out.sinr[r], budget.bandwidth);
  }
  return out;
}

TrialResult run_trial(const ScenarioConfig& cfg,
                      const std::vector<Position3>& users) {
  TrialResult t;
  t.users = users;
  const auto leds = cfg.led_positions();
  t.gains = combined_gains(leds, users, cfg.device);
  t.sorted_sq = t.gains.sorted_sq();
  const LinkBudget budget = make_budget(cfg, t.sorted_sq);
  t.outcomes.reserve(cfg.strategies.size());
  for (const auto& spec : cfg.strategies) {
    t.outcomes.push_back(evaluate_strategy(spec, budget));
  }
  return t;
}

namespace {

using CellAccumulators = std::vector<RankAccumulator>;

void run_one(const ScenarioConfig& cfg, std::size_t user_count,
             std::size_t trial, CellAccumulators& cells) {
  std::mt19937_64 rng(trial_seed(cfg.seed, user_count, trial));
  const auto users = place_users(rng, user_count, cfg.room_x, cfg.room_y);
  const TrialResult t = run_trial(cfg, users);
  for (std::size_t s = 0; s < t.outcomes.size(); ++s) {
    if (t.outcomes[s].feasible) {
      cells[s].accumulate(t.outcomes[s].rates);
    } else {
      cells[s].record_infeasible();
    }
  }
}

void append_rows(const ScenarioConfig& cfg, std::size_t user_count,
                 const CellAccumulators& cells, SweepResult& out) {
  for (std::size_t s = 0; s < cells.size(); ++s) {
    SweepRow row;
    row.user_count = user_count;
    row.strategy = cfg.strategies[s].kind;
    row.feasible_trials = cells[s].trial_count;
    if (cells[s].trial_count > 0) {
      row.summary = finalize(cells[s]);
    } else {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      row.summary = {nan, nan, nan, nan, 1.0, nan, nan, {}};
    }
    out.rows.push_back(std::move(row));
  }
}

SweepResult empty_result(const ScenarioConfig& cfg) {
  SweepResult out;
  out.seed = cfg.seed;
  out.rng_algorithm = kRngAlgorithm;
  out.trials_per_k = cfg.trials;
  out.rows.reserve(cfg.user_counts.size() * cfg.strategies.size());
  return out;
}

}  // namespace

SweepResult run_sweep(const ScenarioConfig& cfg, SweepOptions opts) {
  if (opts.chunk_size == 0) {
    throw DomainError("run_sweep: chunk size must be positive");
  }
  SweepResult out = empty_result(cfg);
  const std::size_t n_strategies = cfg.strategies.size();
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

  for (std::size_t user_count : cfg.user_counts) {
    const std::size_t n_chunks =
        (cfg.trials + opts.chunk_size - 1) / opts.chunk_size;
    std::vector<CellAccumulators> chunk_cells(
        n_chunks, CellAccumulators(n_strategies, RankAccumulator(user_count)));
    std::vector<std::exception_ptr> errors(n_chunks);

    const auto chunks = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::size_t first = static_cast<std::size_t>(c) * opts.chunk_size;
      const std::size_t last = std::min(first + opts.chunk_size, cfg.trials);
      try {
        for (std::size_t trial = first; trial < last; ++trial) {
          run_one(cfg, user_count, trial, chunk_cells[c]);
        }
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    CellAccumulators cells(n_strategies, RankAccumulator(user_count));
    for (const auto& chunk : chunk_cells) {
      for (std::size_t s = 0; s < n_strategies; ++s) cells[s].merge(chunk[s]);
    }
    append_rows(cfg, user_count, cells, out);
  }
  return out;
}

SweepResult run_sweep_serial(const ScenarioConfig& cfg) {
  SweepResult out = empty_result(cfg);
  for (std::size_t user_count : cfg.user_counts) {
    CellAccumulators cells(cfg.strategies.size(), RankAccumulator(user_count));
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      run_one(cfg, user_count, trial, cells);
    }
    append_rows(cfg, user_count, cells, out);
  }
  return out;
}

}  // namespace nomavlc

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nomavlc/sim.hpp"

namespace nomavlc {

inline constexpr const char* kToolVersion = "1.0.0";

inline constexpr const char* kSweepCsvHeader =
    "K,strategy,avg_sum_rate_mbps,avg_min_rate_mbps,fairness,"
    "infeasible_fraction,se_sum,se_min";

// Long-format sweep table, LF line endings, '.' decimal separator.
void write_sweep_csv(std::ostream& os, const SweepResult& result);
std::string sweep_csv(const SweepResult& result);

enum class WideMetric { sum_rate, min_rate, fairness };

// One row per K, one column per strategy.
void write_wide_csv(std::ostream& os, const SweepResult& result,
                    WideMetric metric);

std::string sweep_metadata_json(const SweepResult& result,
                                const ScenarioConfig& cfg);

}  // namespace nomavlc

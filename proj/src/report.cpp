#include "nomavlc/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "nomavlc/config.hpp"

namespace nomavlc {

namespace {

constexpr double kMbps = 1e-6;

// fmt is locale-independent unless asked otherwise.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.10g}", v);
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  os << kSweepCsvHeader << '\n';
  for (const auto& row : result.rows) {
    const auto& s = row.summary;
    os << row.user_count << ',' << to_string(row.strategy) << ','
       << num(s.avg_sum_rate * kMbps) << ',' << num(s.avg_min_rate * kMbps)
       << ',' << num(s.fairness) << ',' << num(s.infeasible_fraction) << ','
       << num(s.se_sum_rate * kMbps) << ',' << num(s.se_min_rate * kMbps)
       << '\n';
  }
}

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream os;
  write_sweep_csv(os, result);
  return os.str();
}

void write_wide_csv(std::ostream& os, const SweepResult& result,
                    WideMetric metric) {
  std::vector<Strategy> columns;
  std::map<std::size_t, std::map<Strategy, double>> table;
  for (const auto& row : result.rows) {
    if (std::find(columns.begin(), columns.end(), row.strategy) ==
        columns.end()) {
      columns.push_back(row.strategy);
    }
    double v = 0.0;
    switch (metric) {
      case WideMetric::sum_rate: v = row.summary.avg_sum_rate * kMbps; break;
      case WideMetric::min_rate: v = row.summary.avg_min_rate * kMbps; break;
      case WideMetric::fairness: v = row.summary.fairness; break;
    }
    table[row.user_count][row.strategy] = v;
  }
  os << 'K';
  for (Strategy s : columns) os << ',' << to_string(s);
  os << '\n';
  for (const auto& [k, cells] : table) {
    os << k;
    for (Strategy s : columns) {
      auto it = cells.find(s);
      os << ',' << (it == cells.end() ? std::string() : num(it->second));
    }
    os << '\n';
  }
}

std::string sweep_metadata_json(const SweepResult& result,
                                const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["tool"] = "nomavlc";
  j["tool_version"] = kToolVersion;
  j["seed"] = result.seed;
  j["rng_algorithm"] = result.rng_algorithm;
  j["trials_per_k"] = result.trials_per_k;
  j["trials_interpretation"] = "independent placements per user count K";
  j["rate_bound"] = "R = (B/2) log2(1 + e/(2 pi) SINR)";
  j["config"] = config_to_json(cfg);
  return j.dump(2) + "\n";
}

}  // namespace nomavlc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nomavlc::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kRuntimeError = 3 };

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> strategies;  // comma-separated names
};

struct SweepArgs {
  CommonArgs common;
  std::string out_path;  // empty: CSV to stdout, no sidecar
  std::string wide_dir;  // empty: no per-figure tables
  int threads = 0;
};

struct TrialArgs {
  CommonArgs common;
  std::string positions;  // x1,y1,x2,y2,...
  std::string out_path;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err);
int cmd_trial(const TrialArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err);

// Parses "x1,y1,x2,y2,..." into pairs. Throws ConfigError on malformed input.
std::vector<std::pair<double, double>> parse_positions(const std::string& s);

int run(int argc, char** argv);

}  // namespace nomavlc::cli

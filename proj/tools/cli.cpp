#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nomavlc/config.hpp"
#include "nomavlc/error.hpp"
#include "nomavlc/report.hpp"

namespace nomavlc::cli {

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void apply_strategy_filter(ScenarioConfig& cfg, const std::string& list) {
  std::vector<StrategySpec> selected;
  std::vector<std::string> errs;
  for (const auto& name : split_list(list)) {
    auto kind = parse_strategy(name);
    if (!kind) {
      errs.push_back("--strategies: unknown strategy '" + name + "'");
      continue;
    }
    auto it = std::find_if(cfg.strategies.begin(), cfg.strategies.end(),
                           [&](const StrategySpec& s) { return s.kind == *kind; });
    selected.push_back(it != cfg.strategies.end() ? *it : StrategySpec{*kind});
  }
  if (selected.empty() && errs.empty()) {
    errs.push_back("--strategies: empty list");
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  cfg.strategies = std::move(selected);
  if (auto v = validate_config(cfg); !v.empty()) throw ConfigError(std::move(v));
}

ScenarioConfig load_with_overrides(const CommonArgs& args) {
  ScenarioConfig cfg = load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (args.strategies) apply_strategy_filter(cfg, *args.strategies);
  return cfg;
}

void report_config_error(const ConfigError& e, std::ostream& err) {
  err << "error: invalid configuration\n";
  for (const auto& v : e.violations()) err << "  - " << v << '\n';
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    report_config_error(e, err);
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string g(double v) { return fmt::format("{:.6g}", v); }

}  // namespace

std::vector<std::pair<double, double>> parse_positions(const std::string& s) {
  std::vector<double> values;
  for (const auto& item : split_list(s)) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() ||
        !std::isfinite(v)) {
      throw ConfigError({"--positions: '" + item + "' is not a number"});
    }
    values.push_back(v);
  }
  if (values.empty() || values.size() % 2 != 0) {
    throw ConfigError(
        {"--positions: expected an even, non-empty list x1,y1,x2,y2,..."});
  }
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < values.size(); i += 2) {
    out.emplace_back(values[i], values[i + 1]);
  }
  return out;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = load_with_overrides(args.common);
    const SweepResult result = run_sweep(cfg, {.threads = args.threads});
    const std::string csv = sweep_csv(result);
    if (args.out_path.empty()) {
      out << csv;
    } else {
      write_file(args.out_path, csv);
      write_file(args.out_path + ".meta.json", sweep_metadata_json(result, cfg));
    }
    if (!args.wide_dir.empty()) {
      std::filesystem::create_directories(args.wide_dir);
      const std::filesystem::path dir(args.wide_dir);
      const std::pair<const char*, WideMetric> tables[] = {
          {"sum_rate_mbps.csv", WideMetric::sum_rate},
          {"min_rate_mbps.csv", WideMetric::min_rate},
          {"fairness.csv", WideMetric::fairness}};
      for (const auto& [name, metric] : tables) {
        std::ostringstream os;
        write_wide_csv(os, result, metric);
        write_file(dir / name, os.str());
      }
    }
    return int{kOk};
  });
}

int cmd_trial(const TrialArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = load_with_overrides(args.common);
    const auto xy = parse_positions(args.positions);
    std::vector<std::string> errs;
    std::vector<Position3> users;
    for (std::size_t i = 0; i < xy.size(); ++i) {
      const auto [x, y] = xy[i];
      if (x < 0.0 || x > cfg.room_x || y < 0.0 || y > cfg.room_y) {
        errs.push_back(fmt::format("--positions: user {} at ({}, {}) is outside "
                                   "the {} x {} m room",
                                   i, x, y, cfg.room_x, cfg.room_y));
      }
      users.push_back({x, y, 0.0});
    }
    if (!errs.empty()) throw ConfigError(std::move(errs));

    const TrialResult t = run_trial(cfg, users);
    const std::size_t k = users.size();
    const double snr = cfg.device.led_optical_power *
                       cfg.device.led_optical_power / cfg.noise_power();

    out << fmt::format("users: {}  LEDs: {}  sigma^2 = {} A^2  gamma = {}\n", k,
                       cfg.leds.size(), g(cfg.noise_power()), g(snr));
    out << "channel gains (per LED h, combined ||h||^2):\n";
    for (std::size_t u = 0; u < k; ++u) {
      out << fmt::format("  user {} ({}, {}):", u, g(users[u].x), g(users[u].y));
      for (std::size_t l = 0; l < cfg.leds.size(); ++l) {
        out << fmt::format(" h[{}]={}", l, g(t.gains.gain(l, u)));
      }
      out << fmt::format("  ||h||^2={}\n", g(t.gains.combined_sq[u]));
    }
    out << "SIC order (weakest first; ties keep input order):";
    for (std::size_t r = 0; r < k; ++r) out << ' ' << t.gains.sic_order[r];
    out << '\n';

    std::ostringstream csv;
    csv << "strategy,rank,user,gain_sq,alpha,sinr,rate_mbps\n";
    for (const auto& o : t.outcomes) {
      out << fmt::format("{}:", to_string(o.spec.kind));
      if (o.mu) out << fmt::format(" mu={}", g(*o.mu));
      if (!o.feasible) {
        out << " infeasible (SINR target unreachable)\n";
        continue;
      }
      double total = 0.0;
      for (double r : o.rates) total += r;
      out << fmt::format(" sum={} Mbps\n", g(total * 1e-6));
      for (std::size_t r = 0; r < k; ++r) {
        const double alpha = o.alpha ? (*o.alpha)[r] : 0.0;
        out << fmt::format("  rank {} user {}: alpha={} SINR={} rate={} Mbps\n",
                           r, t.gains.sic_order[r], g(alpha), g(o.sinr[r]),
                           g(o.rates[r] * 1e-6));
        csv << fmt::format("{},{},{},{:.10g},{:.10g},{:.10g},{:.10g}\n",
                           to_string(o.spec.kind), r, t.gains.sic_order[r],
                           t.sorted_sq[r], alpha, o.sinr[r],
                           o.rates[r] * 1e-6);
      }
    }
    if (!args.out_path.empty()) write_file(args.out_path, csv.str());
    return int{kOk};
  });
}

int cmd_validate(const std::string& config_path, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const ScenarioConfig cfg = load_config(config_path);
    const auto& d = cfg.device;
    out << "configuration OK: " << config_path << '\n';
    out << "  Lambertian order m = " << g(lambertian_order(d.half_intensity_angle))
        << '\n';
    out << "  concentrator gain g(0) = "
        << g(concentrator_gain(0.0, d.refractive_index, d.fov_semi_angle))
        << '\n';
    out << "  noise power sigma^2 = " << g(cfg.noise_power()) << " A^2\n";
    out << "  transmit SNR gamma = "
        << g(d.led_optical_power * d.led_optical_power / cfg.noise_power())
        << '\n';
    // Coverage of the receiver plane on a 101 x 101 grid, judged by the
    // LED with the smallest incidence angle at each point.
    const auto leds = cfg.led_positions();
    constexpr int kGrid = 101;
    int covered = 0;
    double worst = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const Position3 p{cfg.room_x * i / (kGrid - 1),
                          cfg.room_y * j / (kGrid - 1), 0.0};
        double best = std::numbers::pi;
        for (const auto& led : leds) {
          best = std::min(best, link_geometry(led, p).incidence_angle);
        }
        worst = std::max(worst, best);
        if (best <= d.fov_semi_angle) ++covered;
      }
    }
    out << "  receiver-plane coverage = " << g(100.0 * covered / (kGrid * kGrid))
        << "% (worst nearest-LED incidence " << g(worst * 180.0 / std::numbers::pi)
        << " deg)\n";
    out << "  sweep size: " << cfg.user_counts.size() << " K values x "
        << cfg.strategies.size() << " strategies x " << cfg.trials
        << " trials\n";
    return int{kOk};
  });
}

int run(int argc, char** argv) {
  CLI::App app{"Power-domain NOMA visible-light downlink simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_common = [](CLI::App* cmd, CommonArgs& c) {
    cmd->add_option("--config", c.config_path, "Scenario JSON file")->required();
    cmd->add_option("--seed", c.seed, "Override the config seed");
    cmd->add_option("--strategies", c.strategies,
                    "Comma-separated subset of fpa,sfpa,grpa,ngdpa,epa");
  };

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the Monte Carlo sweep");
  add_common(sweep_cmd, sweep.common);
  sweep_cmd->add_option("--out", sweep.out_path,
                        "CSV output path (metadata goes to PATH.meta.json)");
  sweep_cmd->add_option("--threads", sweep.threads,
                        "Worker threads (results do not depend on it)")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--wide-dir", sweep.wide_dir,
                        "Also write one K x strategy table per metric here");

  TrialArgs trial;
  auto* trial_cmd = app.add_subcommand("trial", "Evaluate one fixed placement");
  add_common(trial_cmd, trial.common);
  trial_cmd->add_option("--positions", trial.positions, "x1,y1,x2,y2,...")
      ->required();
  trial_cmd->add_option("--out", trial.out_path, "Per-rank CSV output path");

  std::string validate_path;
  auto* validate_cmd =
      app.add_subcommand("validate", "Check a config and print derived values");
  validate_cmd->add_option("--config", validate_path, "Scenario JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*sweep_cmd) return cmd_sweep(sweep, std::cout, std::cerr);
  if (*trial_cmd) return cmd_trial(trial, std::cout, std::cerr);
  return cmd_validate(validate_path, std::cout, std::cerr);
}

}  // namespace nomavlc::cli

#include "nomavlc/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "nomavlc/error.hpp"

namespace nomavlc {

using nlohmann::json;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double to_deg(double rad) { return rad / kDeg; }

std::string fmt_value(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << v;
  return os.str();
}

// Reads typed fields from one JSON object, recording problems instead of
// throwing so that every violation is reported together.
class Reader {
 public:
  Reader(const json& obj, std::string prefix, std::vector<std::string>& errs)
      : obj_(obj), prefix_(std::move(prefix)), errs_(errs) {
    if (!obj_.is_object()) {
      errs_.push_back(path("") + ": expected an object");
      valid_ = false;
    }
  }

  bool valid() const { return valid_; }

  void number(const char* key, double& out, double scale = 1.0) {
    seen_.insert(key);
    if (!valid_ || !obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number()) {
      errs_.push_back(path(key) + ": expected a number");
      return;
    }
    out = v.get<double>() * scale;
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    seen_.insert(key);
    if (!valid_ || !obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer() ||
        (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      errs_.push_back(path(key) + ": expected a non-negative integer");
      return;
    }
    out = v.get<Int>();
  }

  const json* child(const char* key) {
    seen_.insert(key);
    if (!valid_ || !obj_.contains(key)) return nullptr;
    return &obj_.at(key);
  }

  void reject_unknown() {
    if (!valid_) return;
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) errs_.push_back(path(k) + ": unknown field");
    }
  }

  std::string path(const std::string& key) const {
    if (prefix_.empty()) return key.empty() ? "<root>" : key;
    return key.empty() ? prefix_ : prefix_ + "." + key;
  }

 private:
  const json& obj_;
  std::string prefix_;
  std::vector<std::string>& errs_;
  std::set<std::string> seen_;
  bool valid_ = true;
};

void read_leds(const json& arr, std::vector<LedPosition>& leds,
               std::vector<std::string>& errs) {
  if (!arr.is_array()) {
    errs.push_back("leds: expected an array");
    return;
  }
  leds.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    LedPosition p;
    Reader r(arr[i], "leds[" + std::to_string(i) + "]", errs);
    r.number("x_m", p.x);
    r.number("y_m", p.y);
    r.reject_unknown();
    leds.push_back(p);
  }
}

void read_strategies(const json& arr, std::vector<StrategySpec>& out,
                     std::vector<std::string>& errs) {
  if (!arr.is_array()) {
    errs.push_back("strategies: expected an array");
    return;
  }
  out.clear();
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string prefix = "strategies[" + std::to_string(i) + "]";
    Reader r(arr[i], prefix, errs);
    if (!r.valid()) continue;
    StrategySpec spec;
    const json* name = r.child("name");
    if (!name || !name->is_string()) {
      errs.push_back(prefix + ".name: expected one of fpa, sfpa, grpa, "
                              "ngdpa, epa");
      r.reject_unknown();
      continue;
    }
    auto kind = parse_strategy(name->get<std::string>());
    if (!kind) {
      errs.push_back(prefix + ".name: unknown strategy '" +
                     name->get<std::string>() + "'");
      continue;
    }
    spec.kind = *kind;
    switch (spec.kind) {
      case Strategy::fpa: r.number("mu", spec.mu); break;
      case Strategy::sfpa: r.number("beta", spec.beta); break;
      case Strategy::epa: r.number("sinr_target_db", spec.sinr_target_db); break;
      default: break;
    }
    r.reject_unknown();
    out.push_back(spec);
  }
}

}  // namespace

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig cfg;
  std::vector<std::string> errs;
  Reader root(j, "", errs);
  if (root.valid()) {
    if (const json* room = root.child("room")) {
      Reader r(*room, "room", errs);
      r.number("x_m", cfg.room_x);
      r.number("y_m", cfg.room_y);
      r.reject_unknown();
    }
    if (const json* leds = root.child("leds")) read_leds(*leds, cfg.leds, errs);
    root.number("vertical_separation_m", cfg.vertical_separation);
    if (const json* dev = root.child("device")) {
      Reader r(*dev, "device", errs);
      auto& d = cfg.device;
      r.number("pd_area_m2", d.pd_area);
      r.number("responsivity_a_per_w", d.responsivity);
      r.number("half_intensity_angle_deg", d.half_intensity_angle, kDeg);
      r.number("fov_semi_angle_deg", d.fov_semi_angle, kDeg);
      r.number("refractive_index", d.refractive_index);
      r.number("optical_filter_gain", d.optical_filter_gain);
      r.number("led_optical_power_w", d.led_optical_power);
      r.reject_unknown();
    }
    root.number("noise_psd_a2_per_hz", cfg.noise_psd);
    root.number("bandwidth_hz", cfg.bandwidth);
    if (const json* ks = root.child("user_counts")) {
      if (!ks->is_array()) {
        errs.push_back("user_counts: expected an array of integers");
      } else {
        cfg.user_counts.clear();
        for (const auto& k : *ks) {
          if (!k.is_number_integer() || k.get<std::int64_t>() < 1) {
            errs.push_back("user_counts: entries must be integers >= 1");
            break;
          }
          cfg.user_counts.push_back(k.get<std::size_t>());
        }
      }
    }
    root.integer("trials", cfg.trials);
    root.integer("seed", cfg.seed);
    if (const json* s = root.child("strategies")) {
      read_strategies(*s, cfg.strategies, errs);
    }
    root.reject_unknown();
  }
  if (errs.empty()) errs = validate_config(cfg);
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({"cannot open config file: " + path.string()});
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError({path.string() + ": " + e.what()});
  }
  return config_from_json(j);
}

json config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["room"] = {{"x_m", cfg.room_x}, {"y_m", cfg.room_y}};
  j["leds"] = json::array();
  for (const auto& p : cfg.leds) j["leds"].push_back({{"x_m", p.x}, {"y_m", p.y}});
  j["vertical_separation_m"] = cfg.vertical_separation;
  const auto& d = cfg.device;
  j["device"] = {
      {"pd_area_m2", d.pd_area},
      {"responsivity_a_per_w", d.responsivity},
      {"half_intensity_angle_deg", to_deg(d.half_intensity_angle)},
      {"fov_semi_angle_deg", to_deg(d.fov_semi_angle)},
      {"refractive_index", d.refractive_index},
      {"optical_filter_gain", d.optical_filter_gain},
      {"led_optical_power_w", d.led_optical_power},
  };
  j["noise_psd_a2_per_hz"] = cfg.noise_psd;
  j["bandwidth_hz"] = cfg.bandwidth;
  j["user_counts"] = cfg.user_counts;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["strategies"] = json::array();
  for (const auto& s : cfg.strategies) {
    json e = {{"name", std::string(to_string(s.kind))}};
    if (s.kind == Strategy::fpa) e["mu"] = s.mu;
    if (s.kind == Strategy::sfpa) e["beta"] = s.beta;
    if (s.kind == Strategy::epa) e["sinr_target_db"] = s.sinr_target_db;
    j["strategies"].push_back(e);
  }
  return j;
}

std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> errs;
  auto positive = [&](const char* field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      errs.push_back(std::string(field) + ": must be positive, got " +
                     fmt_value(v));
    }
  };

  positive("room.x_m", cfg.room_x);
  positive("room.y_m", cfg.room_y);
  if (cfg.leds.empty()) errs.push_back("leds: at least one LED is required");
  for (std::size_t i = 0; i < cfg.leds.size(); ++i) {
    if (!std::isfinite(cfg.leds[i].x) || !std::isfinite(cfg.leds[i].y)) {
      errs.push_back("leds[" + std::to_string(i) + "]: non-finite coordinate");
    }
  }
  positive("vertical_separation_m", cfg.vertical_separation);

  const auto& d = cfg.device;
  positive("device.pd_area_m2", d.pd_area);
  positive("device.responsivity_a_per_w", d.responsivity);
  const double theta = to_deg(d.half_intensity_angle);
  if (!(theta > 0.0 && theta < 90.0)) {
    errs.push_back("device.half_intensity_angle_deg: must lie in (0, 90), got " +
                   fmt_value(theta));
  }
  const double fov = to_deg(d.fov_semi_angle);
  if (!(fov > 0.0 && d.fov_semi_angle <= std::numbers::pi / 2)) {
    errs.push_back("device.fov_semi_angle_deg: must lie in (0, 90], got " +
                   fmt_value(fov));
  }
  if (!(d.refractive_index >= 1.0) || !std::isfinite(d.refractive_index)) {
    errs.push_back("device.refractive_index: must be >= 1, got " +
                   fmt_value(d.refractive_index));
  }
  positive("device.optical_filter_gain", d.optical_filter_gain);
  positive("device.led_optical_power_w", d.led_optical_power);
  positive("noise_psd_a2_per_hz", cfg.noise_psd);
  positive("bandwidth_hz", cfg.bandwidth);

  if (cfg.user_counts.empty()) {
    errs.push_back("user_counts: at least one K value is required");
  }
  for (std::size_t k : cfg.user_counts) {
    if (k == 0) errs.push_back("user_counts: entries must be >= 1");
  }
  if (cfg.trials == 0) errs.push_back("trials: must be >= 1");

  if (cfg.strategies.empty()) {
    errs.push_back("strategies: at least one strategy is required");
  }
  std::set<Strategy> seen;
  for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
    const auto& s = cfg.strategies[i];
    const std::string prefix = "strategies[" + std::to_string(i) + "]";
    if (!seen.insert(s.kind).second) {
      errs.push_back(prefix + ".name: duplicate strategy '" +
                     std::string(to_string(s.kind)) + "'");
    }
    if (s.kind == Strategy::fpa && !(s.mu >= 0.0 && s.mu < 1.0)) {
      errs.push_back(prefix + ".mu: must lie in [0, 1), got " + fmt_value(s.mu));
    }
    if (s.kind == Strategy::sfpa && (!(s.beta >= 1.0) || !std::isfinite(s.beta))) {
      errs.push_back(prefix + ".beta: must be >= 1, got " + fmt_value(s.beta));
    }
    if (s.kind == Strategy::epa && !std::isfinite(s.sinr_target_db)) {
      errs.push_back(prefix + ".sinr_target_db: must be finite");
    }
  }
  return errs;
}

}  // namespace nomavlc

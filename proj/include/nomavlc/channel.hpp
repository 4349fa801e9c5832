#pragma once

// Line-of-sight optical channel: Lambertian LED emission received by a
// photodiode behind an optical filter and a non-imaging concentrator.

#include <cstddef>
#include <span>
#include <vector>

namespace nomavlc {

struct Position3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Angles in radians. Degrees are converted at the config boundary.
struct DeviceParams {
  double pd_area = 1e-4;                 // m^2
  double responsivity = 0.53;            // A/W
  double half_intensity_angle = 1.0471975511965976;  // 60 deg
  double fov_semi_angle = 1.0471975511965976;        // 60 deg
  double refractive_index = 1.5;
  double optical_filter_gain = 1.0;
  double led_optical_power = 10.0;       // W
};

struct LinkGeometry {
  double distance = 0.0;          // m
  double irradiance_angle = 0.0;  // rad, at the LED
  double incidence_angle = 0.0;   // rad, at the photodiode
};

struct ChannelGains {
  std::size_t led_count = 0;
  std::size_t user_count = 0;
  // Row-major [led][user].
  std::vector<double> per_led_gains;
  // ||h_k||^2 indexed by original user.
  std::vector<double> combined_sq;
  // sic_order[rank] = original user index; rank 0 is the weakest user.
  std::vector<std::size_t> sic_order;

  double gain(std::size_t led, std::size_t user) const {
    return per_led_gains[led * user_count + user];
  }
  // combined_sq rearranged into SIC rank order (non-decreasing).
  std::vector<double> sorted_sq() const;
};

// m = -1 / log2(cos(theta)); throws DomainError unless 0 < theta < pi/2.
double lambertian_order(double half_intensity_angle);

// n^2 / sin^2(fov) inside the field of view (boundary inclusive), 0 outside.
double concentrator_gain(double incidence_angle, double refractive_index,
                         double fov_semi_angle);

// Downward-facing LED above an upward-facing photodiode, so the irradiance
// and incidence angles coincide. Requires led.z > user.z.
LinkGeometry link_geometry(const Position3& led, const Position3& user);

double channel_gain(const LinkGeometry& geom, const DeviceParams& dev);

// Gains for every (LED, user) pair, summed in power over LEDs and ranked
// ascending by ||h_k||^2 with ties broken by original user index.
ChannelGains combined_gains(std::span<const Position3> leds,
                            std::span<const Position3> users,
                            const DeviceParams& dev);

}  // namespace nomavlc

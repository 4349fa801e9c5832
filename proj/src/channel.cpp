#include "nomavlc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nomavlc/error.hpp"

namespace nomavlc {

std::vector<double> ChannelGains::sorted_sq() const {
  std::vector<double> out(sic_order.size());
  for (std::size_t r = 0; r < sic_order.size(); ++r) {
    out[r] = combined_sq[sic_order[r]];
  }
  return out;
}

double lambertian_order(double half_intensity_angle) {
  if (!(half_intensity_angle > 0.0 &&
        half_intensity_angle < std::numbers::pi / 2)) {
    throw DomainError("lambertian_order: half-intensity angle must lie in "
                      "(0, pi/2)");
  }
  const double c = std::cos(half_intensity_angle);
  if (c >= 1.0) {
    throw DomainError("lambertian_order: half-intensity angle too small");
  }
  return -1.0 / std::log2(c);
}

double concentrator_gain(double incidence_angle, double refractive_index,
                         double fov_semi_angle) {
  if (!(fov_semi_angle > 0.0 && fov_semi_angle <= std::numbers::pi / 2)) {
    throw DomainError("concentrator_gain: FoV semi-angle must lie in (0, pi/2]");
  }
  if (incidence_angle < 0.0 || incidence_angle > fov_semi_angle) {
    return 0.0;
  }
  const double s = std::sin(fov_semi_angle);
  return refractive_index * refractive_index / (s * s);
}

LinkGeometry link_geometry(const Position3& led, const Position3& user) {
  const double dx = led.x - user.x;
  const double dy = led.y - user.y;
  const double dz = led.z - user.z;
  const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
  if (d == 0.0) {
    throw DomainError("link_geometry: LED and user coincide");
  }
  if (!(dz > 0.0)) {
    throw DomainError("link_geometry: LED must be above the receiver");
  }
  // Both normals are vertical.
  const double angle = std::acos(std::clamp(dz / d, -1.0, 1.0));
  return {d, angle, angle};
}

double channel_gain(const LinkGeometry& geom, const DeviceParams& dev) {
  const double g = concentrator_gain(geom.incidence_angle,
                                     dev.refractive_index, dev.fov_semi_angle);
  if (g == 0.0) return 0.0;
  const double m = lambertian_order(dev.half_intensity_angle);
  const double d2 = geom.distance * geom.distance;
  return dev.responsivity * dev.pd_area * (m + 1.0) /
         (2.0 * std::numbers::pi * d2) *
         std::pow(std::cos(geom.irradiance_angle), m) *
         dev.optical_filter_gain * g * std::cos(geom.incidence_angle);
}

ChannelGains combined_gains(std::span<const Position3> leds,
                            std::span<const Position3> users,
                            const DeviceParams& dev) {
  ChannelGains out;
  out.led_count = leds.size();
  out.user_count = users.size();
  out.per_led_gains.resize(leds.size() * users.size());
  out.combined_sq.assign(users.size(), 0.0);

  for (std::size_t l = 0; l < leds.size(); ++l) {
    for (std::size_t k = 0; k < users.size(); ++k) {
      const double h = channel_gain(link_geometry(leds[l], users[k]), dev);
      out.per_led_gains[l * users.size() + k] = h;
      out.combined_sq[k] += h * h;
    }
  }

  out.sic_order.resize(users.size());
  std::iota(out.sic_order.begin(), out.sic_order.end(), std::size_t{0});
  std::stable_sort(out.sic_order.begin(), out.sic_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return out.combined_sq[a] < out.combined_sq[b];
                   });
  return out;
}

}  // namespace nomavlc

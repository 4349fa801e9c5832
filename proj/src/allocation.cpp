#include "nomavlc/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "bisect.hpp"
#include "nomavlc/error.hpp"

namespace nomavlc {

namespace {

void require_users(std::size_t user_count, const char* who) {
  if (user_count == 0) {
    throw DomainError(std::string(who) + ": need at least one user");
  }
}

void require_sorted_positive(std::span<const double> sorted_sq,
                             const char* who) {
  require_users(sorted_sq.size(), who);
  for (std::size_t k = 0; k < sorted_sq.size(); ++k) {
    if (!(sorted_sq[k] > 0.0) || !std::isfinite(sorted_sq[k])) {
      throw DomainError(std::string(who) + ": gains must be positive");
    }
    if (k > 0 && sorted_sq[k] < sorted_sq[k - 1]) {
      throw DomainError(std::string(who) + ": gains must be sorted ascending");
    }
  }
}

AllocationCoefficients normalized(std::vector<double> w) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return {std::move(w)};
}

// log of mu^(K-1) (1 - mu) / (1 - mu^K) with x = log(mu).
double log_strongest_fraction(double x, std::size_t user_count) {
  const double mu = std::exp(x);
  const double k = static_cast<double>(user_count);
  return (k - 1.0) * x + std::log1p(-mu) - std::log(-std::expm1(k * x));
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::fpa: return "fpa";
    case Strategy::sfpa: return "sfpa";
    case Strategy::grpa: return "grpa";
    case Strategy::ngdpa: return "ngdpa";
    case Strategy::epa: return "epa";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : {Strategy::fpa, Strategy::sfpa, Strategy::grpa,
                     Strategy::ngdpa, Strategy::epa}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

Monotonicity monotonicity(Strategy s) {
  switch (s) {
    case Strategy::epa: return Monotonicity::non_increasing_except_last;
    case Strategy::ngdpa: return Monotonicity::non_decreasing;
    default: return Monotonicity::non_increasing;
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

AllocationCoefficients fpa_coefficients(double mu, std::size_t user_count) {
  require_users(user_count, "fpa_coefficients");
  if (!(mu >= 0.0 && mu < 1.0)) {
    throw DomainError("fpa_coefficients: mu must lie in [0, 1)");
  }
  std::vector<double> alpha(user_count, 0.0);
  if (user_count == 1 || mu == 0.0) {
    alpha[0] = 1.0;
    return {std::move(alpha)};
  }
  const double x = std::log(mu);
  const double lead =
      (1.0 - mu) / -std::expm1(static_cast<double>(user_count) * x);
  double p = 1.0;
  for (std::size_t k = 0; k < user_count; ++k) {
    alpha[k] = p * lead;
    p *= mu;
  }
  return {std::move(alpha)};
}

double fpa_strongest_fraction(double mu, std::size_t user_count) {
  require_users(user_count, "fpa_strongest_fraction");
  if (!(mu > 0.0 && mu < 1.0)) {
    throw DomainError("fpa_strongest_fraction: mu must lie in (0, 1)");
  }
  if (user_count == 1) return 1.0;
  return std::exp(log_strongest_fraction(std::log(mu), user_count));
}

double sfpa_mu(double tx_snr, double strongest_gain_sq,
               std::size_t user_count) {
  require_users(user_count, "sfpa_mu");
  if (!(tx_snr > 0.0) || !(strongest_gain_sq > 0.0) ||
      !std::isfinite(tx_snr) || !std::isfinite(strongest_gain_sq)) {
    throw DomainError("sfpa_mu: SNR and strongest gain must be positive");
  }
  const double snr_gain = tx_snr * strongest_gain_sq;
  return std::exp(-std::log1p(snr_gain) / static_cast<double>(user_count));
}

AllocationCoefficients sfpa_coefficients(double tx_snr,
                                         double strongest_gain_sq,
                                         std::size_t user_count) {
  const double mu = sfpa_mu(tx_snr, strongest_gain_sq, user_count);
  return fpa_coefficients(mu, user_count);
}

double sfpa_mu_beta(double beta, double tx_snr, double strongest_gain_sq,
                    std::size_t user_count, BisectionOptions opts) {
  require_users(user_count, "sfpa_mu_beta");
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw DomainError("sfpa_mu_beta: beta must be >= 1");
  }
  if (!(opts.rel_tol > 0.0) || opts.max_iter <= 0) {
    throw DomainError("sfpa_mu_beta: tolerance and iteration cap must be "
                      "positive");
  }
  if (!(tx_snr > 0.0) || !(strongest_gain_sq > 0.0)) {
    throw DomainError("sfpa_mu_beta: SNR and strongest gain must be positive");
  }
  const double log_snr_gain = std::log(tx_snr) + std::log(strongest_gain_sq);

  // r(x) = log(alpha_K(mu) gamma ||h_K||^2) - beta log((1 - mu) / mu),
  // x = log(mu); increasing in x.
  auto residual = [&](double x) {
    const double lhs = user_count == 1
                           ? log_snr_gain
                           : log_strongest_fraction(x, user_count) +
                                 log_snr_gain;
    return lhs - beta * (std::log1p(-std::exp(x)) - x);
  };
  auto done = [&](double r) { return std::abs(std::expm1(r)) <= opts.rel_tol; };

  const double lo = std::log(std::numeric_limits<double>::min());
  const double hi = std::log1p(-1e-12);
  auto root = detail::bisect_increasing(residual, lo, hi, opts.max_iter, done);
  if (!root) {
    throw NoRootError("sfpa_mu_beta: residual does not change sign on (0, 1)");
  }
  return std::exp(root->x);
}

AllocationCoefficients grpa_coefficients(std::span<const double> sorted_sq) {
  require_sorted_positive(sorted_sq, "grpa_coefficients");
  const double weakest = std::sqrt(sorted_sq[0]);
  std::vector<double> w(sorted_sq.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = std::pow(weakest / std::sqrt(sorted_sq[k]),
                    static_cast<double>(k + 1));
  }
  return normalized(std::move(w));
}

AllocationCoefficients ngdpa_coefficients(std::span<const double> sorted_sq) {
  require_users(sorted_sq.size(), "ngdpa_coefficients");
  const std::size_t n = sorted_sq.size();
  const double strongest = std::sqrt(sorted_sq[n - 1]);
  if (!(strongest > 0.0)) {
    throw DomainError("ngdpa_coefficients: strongest gain must be positive");
  }
  // power[j]: j-th user counted from the strongest.
  std::vector<double> power(n, 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double next = std::sqrt(std::max(sorted_sq[n - 2 - j], 0.0));
    const double diff = std::max(strongest - next, 0.0) / strongest;
    power[j + 1] = power[j] * std::pow(diff, static_cast<double>(j + 1));
  }
  std::reverse(power.begin(), power.end());
  return normalized(std::move(power));
}

std::optional<AllocationCoefficients> try_epa_coefficients(
    std::span<const double> sorted_sq, const EpaParams& params) {
  require_users(sorted_sq.size(), "epa_coefficients");
  if (!(params.sinr_target > 0.0)) {
    throw DomainError("epa_coefficients: SINR target must be positive");
  }
  if (!(params.optical_power > 0.0) || params.noise_power < 0.0) {
    throw DomainError("epa_coefficients: invalid power budget");
  }
  const double t = params.sinr_target;
  const double p2 = params.optical_power * params.optical_power;
  std::vector<double> alpha(sorted_sq.size(), 0.0);
  // remaining = 1 - sum of assigned fractions, tracked directly.
  double remaining = 1.0;
  for (std::size_t k = 0; k + 1 < sorted_sq.size(); ++k) {
    if (!(sorted_sq[k] > 0.0)) return std::nullopt;
    const double noise_ratio = params.noise_power / (p2 * sorted_sq[k]);
    alpha[k] = t * (remaining + noise_ratio) / (1.0 + t);
    remaining = (remaining - t * noise_ratio) / (1.0 + t);
    if (!(remaining > 0.0)) return std::nullopt;
  }
  alpha.back() = remaining;
  return AllocationCoefficients{std::move(alpha)};
}

AllocationCoefficients epa_coefficients(std::span<const double> sorted_sq,
                                        const EpaParams& params) {
  auto a = try_epa_coefficients(sorted_sq, params);
  if (!a) {
    throw InfeasibleError(
        "epa_coefficients: SINR target cannot be met for every weak user");
  }
  return std::move(*a);
}

CoefficientReport validate_coefficients(const AllocationCoefficients& a,
                                        Monotonicity ordering,
                                        double sum_tol) {
  CoefficientReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.violations.push_back(std::move(msg));
  };
  if (a.alpha.empty()) {
    fail("empty: no coefficients");
    return rep;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!std::isfinite(a[k]) || a[k] < 0.0 || a[k] > 1.0) {
      std::ostringstream os;
      os << "range: alpha[" << k << "] = " << a[k] << " outside [0, 1]";
      fail(os.str());
    }
    total += a[k];
  }
  if (!(std::abs(total - 1.0) <= sum_tol)) {
    std::ostringstream os;
    os << "sum: coefficients sum to " << total << ", expected 1";
    fail(os.str());
  }

  constexpr double slack = 1e-12;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    bool bad = false;
    switch (ordering) {
      case Monotonicity::non_increasing:
        bad = a[k + 1] > a[k] + slack;
        break;
      case Monotonicity::non_increasing_except_last:
        bad = k + 2 < n && a[k + 1] > a[k] + slack;
        break;
      case Monotonicity::non_decreasing:
        bad = a[k + 1] < a[k] - slack;
        break;
    }
    if (bad) {
      std::ostringstream os;
      os << "ordering: alpha[" << k << "] = " << a[k] << ", alpha[" << k + 1
         << "] = " << a[k + 1];
      fail(os.str());
    }
  }
  return rep;
}

}  // namespace nomavlc

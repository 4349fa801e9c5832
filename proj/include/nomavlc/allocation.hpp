#pragma once

// Power-domain NOMA allocation strategies. Every strategy returns the
// fraction of received power per SIC rank, rank 0 being the weakest user
// (decoded first).

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nomavlc {

enum class Strategy { fpa, sfpa, grpa, ngdpa, epa };

// Ordering guarantee a strategy makes about its coefficients.
enum class Monotonicity {
  non_increasing,              // alpha_1 >= ... >= alpha_K
  non_increasing_except_last,  // as above over ranks 1..K-1; rank K free
  non_decreasing,              // alpha_1 <= ... <= alpha_K
};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);
Monotonicity monotonicity(Strategy s);

struct AllocationCoefficients {
  std::vector<double> alpha;

  std::size_t size() const { return alpha.size(); }
  double operator[](std::size_t rank) const { return alpha[rank]; }
};

struct SfpaParams {
  double mu = 0.0;
  double beta = 1.0;
  double tx_snr = 0.0;             // gamma = P_o^2 / sigma^2
  double strongest_gain_sq = 0.0;  // ||h_K||^2
};

struct EpaParams {
  double sinr_target = 1.2589254117941673;  // 1 dB, linear
  double noise_power = 0.0;                 // A^2
  double optical_power = 0.0;               // W
};

struct BisectionOptions {
  double rel_tol = 1e-10;
  int max_iter = 200;
};

// alpha_k = mu^(k-1) (1 - mu) / (1 - mu^K). mu = 0 is the continuous limit
// (all power to rank 0); mu outside [0, 1) throws DomainError.
AllocationCoefficients fpa_coefficients(double mu, std::size_t user_count);

// mu = (1 + gamma ||h_K||^2)^(-1/K).
double sfpa_mu(double tx_snr, double strongest_gain_sq, std::size_t user_count);

AllocationCoefficients sfpa_coefficients(double tx_snr,
                                         double strongest_gain_sq,
                                         std::size_t user_count);

// Solves alpha_K(mu) * gamma ||h_K||^2 = ((1 - mu) / mu)^beta for mu by
// bisection. Both sides are monotone in mu, so the root is unique.
double sfpa_mu_beta(double beta, double tx_snr, double strongest_gain_sq,
                    std::size_t user_count, BisectionOptions opts = {});

// Strongest-rank coefficient of the geometric allocation with ratio mu.
double fpa_strongest_fraction(double mu, std::size_t user_count);

// Gain ratio allocation: alpha_k proportional to (||h_1|| / ||h_k||)^k.
// Input is ||h_k||^2 sorted ascending and strictly positive.
AllocationCoefficients grpa_coefficients(std::span<const double> sorted_sq);

// Normalized gain difference allocation. With users ordered strongest first
// (j = 1 strongest), P_{j+1} = ((||h_(1)|| - ||h_(j+1)||) / ||h_(1)||)^j P_j.
// Returned in weakest-first rank order like every other strategy.
AllocationCoefficients ngdpa_coefficients(std::span<const double> sorted_sq);

// Meets sinr_target with equality at every rank below K and gives the
// residual power to rank K. Throws InfeasibleError when no power remains.
AllocationCoefficients epa_coefficients(std::span<const double> sorted_sq,
                                        const EpaParams& params);
// Non-throwing form; nullopt when infeasible.
std::optional<AllocationCoefficients> try_epa_coefficients(
    std::span<const double> sorted_sq, const EpaParams& params);

struct CoefficientReport {
  bool ok = true;
  std::vector<std::string> violations;
};

CoefficientReport validate_coefficients(const AllocationCoefficients& a,
                                        Monotonicity ordering,
                                        double sum_tol = 1e-9);

double db_to_linear(double db);

}  // namespace nomavlc

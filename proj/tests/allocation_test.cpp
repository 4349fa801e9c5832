#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "nomavlc/allocation.hpp"
#include "nomavlc/error.hpp"

using namespace nomavlc;

namespace {

double sum(const AllocationCoefficients& a) {
  return std::accumulate(a.alpha.begin(), a.alpha.end(), 0.0);
}

std::vector<double> random_sorted_gains(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> log_gain(-24.0, -18.0);
  std::vector<double> g(k);
  for (auto& v : g) v = std::exp(log_gain(rng));
  std::sort(g.begin(), g.end());
  return g;
}

// SINR under perfect SIC written out directly with the undecoded power summed from the tail.
double sinr_oracle(const std::vector<double>& alpha, std::size_t k,
                   double rx_power, double noise) {
  double tail = 0.0;
  for (std::size_t i = k + 1; i < alpha.size(); ++i) tail += alpha[i];
  return alpha[k] * rx_power / (tail * rx_power + noise);
}

}  // namespace

TEST(Fpa, WorkedExamples) {
  auto a = fpa_coefficients(0.2, 2);
  EXPECT_NEAR(a[0], 0.8 / 0.96, 1e-15);
  EXPECT_NEAR(a[1], 0.16 / 0.96, 1e-15);

  auto b = fpa_coefficients(0.5, 3);
  EXPECT_NEAR(b[0], 4.0 / 7.0, 1e-15);
  EXPECT_NEAR(b[1], 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(b[2], 1.0 / 7.0, 1e-15);

  EXPECT_EQ(fpa_coefficients(0.37, 1).alpha, std::vector<double>{1.0});
}

TEST(Fpa, ZeroMuIsContinuousLimit) {
  EXPECT_EQ(fpa_coefficients(0.0, 3).alpha, (std::vector<double>{1.0, 0.0, 0.0}));
}

TEST(Fpa, RejectsBadMu) {
  EXPECT_THROW(fpa_coefficients(1.0, 3), DomainError);
  EXPECT_THROW(fpa_coefficients(-0.1, 3), DomainError);
  EXPECT_THROW(fpa_coefficients(0.5, 0), DomainError);
}

TEST(Fpa, ClosedFormMatchesDefinition) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> mu_dist(1e-3, 0.999);
  std::uniform_int_distribution<std::size_t> k_dist(1, 64);
  for (int i = 0; i < 10000; ++i) {
    const double mu = mu_dist(rng);
    const std::size_t k = k_dist(rng);
    auto a = fpa_coefficients(mu, k);
    double denom = 0.0;
    for (std::size_t j = 1; j <= k; ++j) denom += std::pow(mu, double(j));
    for (std::size_t j = 1; j <= k; ++j) {
      const double def = std::pow(mu, double(j)) / denom;
      ASSERT_LE(std::abs(a[j - 1] - def), 1e-9 * def) << mu << " " << k;
    }
  }
}

TEST(SfpaMu, WorkedExamples) {
  EXPECT_NEAR(sfpa_mu(1e6, 1.0, 2), 0.000999999500000375, 1e-16);
  EXPECT_NEAR(sfpa_mu(3.0, 1.0, 1), 0.25, 1e-15);
  EXPECT_NEAR(sfpa_mu(1.0, 3.0, 1), 0.25, 1e-15);
}

TEST(SfpaMu, RejectsNonPositive) {
  EXPECT_THROW(sfpa_mu(0.0, 1.0, 2), DomainError);
  EXPECT_THROW(sfpa_mu(1.0, 0.0, 2), DomainError);
  EXPECT_THROW(sfpa_mu(-1.0, 1.0, 2), DomainError);
  EXPECT_THROW(sfpa_mu(1.0, 1.0, 0), DomainError);
}

TEST(SfpaCoefficients, WorkedExamples) {
  auto a = sfpa_coefficients(1e6, 1.0, 2);
  EXPECT_NEAR(a[0], 0.9990009995000002, 1e-13);
  EXPECT_NEAR(a[1], 0.0009990004999998752, 1e-13);
  EXPECT_EQ(sfpa_coefficients(1e9, 1e-10, 1).alpha, std::vector<double>{1.0});
}

TEST(SfpaCoefficients, StrongestSinrEqualsWeakBound) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> log_g(std::log(1e2), std::log(1e9));
  std::uniform_int_distribution<std::size_t> k_dist(1, 64);
  for (int i = 0; i < 10000; ++i) {
    const double snr_gain = std::exp(log_g(rng));
    const std::size_t k = k_dist(rng);
    const double mu = sfpa_mu(snr_gain, 1.0, k);
    auto a = sfpa_coefficients(snr_gain, 1.0, k);
    const double lhs = a[k - 1] * snr_gain;
    const double rhs = (1.0 - mu) / mu;
    ASSERT_LE(std::abs(lhs - rhs), 1e-9 * rhs) << snr_gain << " " << k;
  }
}

TEST(SfpaMuBeta, BetaOneMatchesClosedForm) {
  for (std::size_t k : {1u, 2u, 5u, 8u, 20u}) {
    for (double g : {1e3, 1e6, 1e9}) {
      const double closed = sfpa_mu(g, 1.0, k);
      const double numeric = sfpa_mu_beta(1.0, g, 1.0, k);
      EXPECT_LE(std::abs(numeric - closed), 1e-9 * closed) << k << " " << g;
    }
  }
}

TEST(SfpaMuBeta, SingleUserAnalytic) {
  const double mu = sfpa_mu_beta(1.5, 1e6, 1.0, 1);
  EXPECT_LE(std::abs(mu - 9.999000099990007e-05), 1e-9 * mu);
}

TEST(SfpaMuBeta, BetaTwoAgreesWithGridScan) {
  const double g = 1e6;
  const std::size_t k = 2;
  const double mu = sfpa_mu_beta(2.0, g, 1.0, k);

  auto rel_residual = [&](double m) {
    const double lhs = std::pow(m, k - 1.0) * (1 - m) / (1 - std::pow(m, double(k))) * g;
    const double rhs = std::pow((1 - m) / m, 2.0);
    return std::abs(lhs - rhs) / rhs;
  };
  EXPECT_LE(rel_residual(mu), 1e-10 * 1.0001);

  // Independent oracle: brute-force scan of 1e6 grid points.
  const int n = 1000000;
  double best_mu = 0.0, best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i) {
    const double m = double(i) / n;
    const double r = rel_residual(m);
    if (r < best) {
      best = r;
      best_mu = m;
    }
  }
  EXPECT_NEAR(mu, best_mu, 1.0 / n);
}

TEST(SfpaMuBeta, Errors) {
  EXPECT_THROW(sfpa_mu_beta(0.5, 1e6, 1.0, 2), DomainError);
  EXPECT_THROW(sfpa_mu_beta(2.0, 1e6, 1.0, 2, {0.0, 200}), DomainError);
  EXPECT_THROW(sfpa_mu_beta(2.0, 1e-300, 1e-300, 2), NoRootError);
}

TEST(Grpa, WorkedExamples) {
  auto eq = grpa_coefficients(std::vector<double>{2.0, 2.0, 2.0});
  for (double v : eq.alpha) EXPECT_NEAR(v, 1.0 / 3.0, 1e-15);

  // ||h|| = (1, 2): weights (1, 1/4).
  auto a = grpa_coefficients(std::vector<double>{1.0, 4.0});
  EXPECT_NEAR(a[0], 0.8, 1e-15);
  EXPECT_NEAR(a[1], 0.2, 1e-15);

  EXPECT_EQ(grpa_coefficients(std::vector<double>{3.0}).alpha,
            std::vector<double>{1.0});
}

TEST(Grpa, RejectsZeroOrUnsortedGains) {
  EXPECT_THROW(grpa_coefficients(std::vector<double>{0.0, 1.0}), DomainError);
  EXPECT_THROW(grpa_coefficients(std::vector<double>{2.0, 1.0}), DomainError);
  EXPECT_THROW(grpa_coefficients(std::vector<double>{}), DomainError);
}

TEST(Ngdpa, WorkedExamples) {
  // Strongest first: P_2 = ((2 - 1) / 2) P_1.
  auto a = ngdpa_coefficients(std::vector<double>{1.0, 4.0});
  EXPECT_NEAR(a[0], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(a[1], 2.0 / 3.0, 1e-15);

  // ||h|| = (1, 2, 4): P = (1, 1/2, 1/2 * (3/4)^2) strongest first.
  auto b = ngdpa_coefficients(std::vector<double>{1.0, 4.0, 16.0});
  EXPECT_NEAR(b[0], 0.15789473684210525, 1e-15);
  EXPECT_NEAR(b[1], 0.2807017543859649, 1e-15);
  EXPECT_NEAR(b[2], 0.5614035087719298, 1e-15);

  EXPECT_EQ(ngdpa_coefficients(std::vector<double>{5.0}).alpha,
            std::vector<double>{1.0});
}

TEST(Ngdpa, EqualGainsGiveEverythingToStrongest) {
  auto a = ngdpa_coefficients(std::vector<double>{2.0, 2.0});
  EXPECT_EQ(a.alpha, (std::vector<double>{0.0, 1.0}));
}

TEST(Ngdpa, RejectsZeroStrongestGain) {
  EXPECT_THROW(ngdpa_coefficients(std::vector<double>{0.0, 0.0}), DomainError);
}

TEST(GainRatioStrategies, ScaleInvariant) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto g = random_sorted_gains(rng, 1 + i % 10);
    const double c = std::exp(std::uniform_real_distribution<double>(-5, 5)(rng));
    std::vector<double> scaled(g);
    for (auto& v : scaled) v *= c;
    auto a = grpa_coefficients(g), as = grpa_coefficients(scaled);
    auto b = ngdpa_coefficients(g), bs = ngdpa_coefficients(scaled);
    for (std::size_t k = 0; k < g.size(); ++k) {
      ASSERT_NEAR(a[k], as[k], 1e-12);
      ASSERT_NEAR(b[k], bs[k], 1e-12);
    }
  }
}

TEST(Epa, SingleUser) {
  EXPECT_EQ(epa_coefficients(std::vector<double>{1e-10}, {1.2589, 2e-14, 10.0}).alpha,
            std::vector<double>{1.0});
}

TEST(Epa, HighSnrTwoUsers) {
  const double t = db_to_linear(1.0);
  EXPECT_NEAR(t, 1.2589254117941673, 1e-15);
  auto a = epa_coefficients(std::vector<double>{1.0, 2.0}, {t, 1e-30, 10.0});
  EXPECT_NEAR(a[0], 0.5573116337622928, 1e-12);
  EXPECT_NEAR(a[1], 1.0 - 0.5573116337622928, 1e-12);
}

TEST(Epa, InfeasibleWhenNoiseDominates) {
  const std::vector<double> g{1e-20, 1e-20, 1e-10};
  EpaParams p{db_to_linear(1.0), 2e-14, 10.0};
  EXPECT_THROW(epa_coefficients(g, p), InfeasibleError);
  EXPECT_FALSE(try_epa_coefficients(g, p).has_value());
  EXPECT_THROW(epa_coefficients(g, {0.0, 2e-14, 10.0}), DomainError);
}

TEST(Epa, RoundTripHitsTarget) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> t_db(-3.0, 6.0);
  std::uniform_int_distribution<std::size_t> k_dist(2, 16);
  int checked = 0;
  for (int i = 0; i < 20000 && checked < 10000; ++i) {
    const std::size_t k = k_dist(rng);
    auto g = random_sorted_gains(rng, k);
    EpaParams p{db_to_linear(t_db(rng)), 2e-14, 10.0};
    auto a = try_epa_coefficients(g, p);
    if (!a) continue;
    ++checked;
    for (std::size_t r = 0; r + 1 < k; ++r) {
      const double s = sinr_oracle(a->alpha, r, 100.0 * g[r], p.noise_power);
      ASSERT_LE(std::abs(s - p.sinr_target), 1e-9 * p.sinr_target);
    }
  }
  EXPECT_GE(checked, 10000);
}

TEST(AllStrategies, NormalizedAndOrdered) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> k_dist(1, 64);
  std::uniform_real_distribution<double> mu_dist(0.0, 0.99);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = k_dist(rng);
    auto g = random_sorted_gains(rng, k);
    std::vector<std::pair<Strategy, AllocationCoefficients>> outs{
        {Strategy::fpa, fpa_coefficients(mu_dist(rng), k)},
        {Strategy::sfpa, sfpa_coefficients(5e15, g.back(), k)},
        {Strategy::grpa, grpa_coefficients(g)},
        {Strategy::ngdpa, ngdpa_coefficients(g)}};
    if (auto e = try_epa_coefficients(g, {db_to_linear(1.0), 2e-14, 10.0})) {
      outs.emplace_back(Strategy::epa, *e);
    }
    for (const auto& [s, a] : outs) {
      ASSERT_EQ(a.size(), k);
      ASSERT_NEAR(sum(a), 1.0, 1e-9) << to_string(s);
      auto rep = validate_coefficients(a, monotonicity(s));
      ASSERT_TRUE(rep.ok) << to_string(s) << ": " << rep.violations.front();
    }
  }
}

TEST(ValidateCoefficients, Examples) {
  EXPECT_TRUE(validate_coefficients({{0.8, 0.2}}, Monotonicity::non_increasing).ok);

  auto bad_sum = validate_coefficients({{0.5, 0.6}}, Monotonicity::non_increasing);
  ASSERT_FALSE(bad_sum.ok);
  EXPECT_EQ(bad_sum.violations.front().rfind("sum", 0), 0u);

  auto bad_order = validate_coefficients({{0.2, 0.8}}, Monotonicity::non_increasing);
  ASSERT_FALSE(bad_order.ok);
  EXPECT_EQ(bad_order.violations.front().rfind("ordering", 0), 0u);

  EXPECT_TRUE(validate_coefficients({{0.5, 0.1, 0.4}},
                                    Monotonicity::non_increasing_except_last)
                  .ok);
  EXPECT_TRUE(validate_coefficients({{0.2, 0.8}}, Monotonicity::non_decreasing).ok);
  EXPECT_FALSE(validate_coefficients({{1.5, -0.5}}, Monotonicity::non_increasing).ok);
  EXPECT_FALSE(validate_coefficients({}, Monotonicity::non_increasing).ok);
}

TEST(StrategyNames, RoundTrip) {
  for (Strategy s : {Strategy::fpa, Strategy::sfpa, Strategy::grpa,
                     Strategy::ngdpa, Strategy::epa}) {
    EXPECT_EQ(parse_strategy(to_string(s)), s);
  }
  EXPECT_FALSE(parse_strategy("FPA").has_value());
}

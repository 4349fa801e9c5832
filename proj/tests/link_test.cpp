#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "nomavlc/allocation.hpp"
#include "nomavlc/error.hpp"
#include "nomavlc/link.hpp"

using namespace nomavlc;

namespace {

LinkBudget budget(std::vector<double> gains, double noise = 2e-14) {
  return LinkBudget{10.0, noise, 20e6, std::move(gains)};
}

}  // namespace

TEST(SinrExact, HighSnrLimitTwoUsers) {
  AllocationCoefficients a{{0.8, 0.2}};
  auto b = budget({1.0, 1.0}, 1e-30);
  EXPECT_NEAR(sinr_exact(a, 0, b), 4.0, 1e-12);
}

TEST(SinrExact, ZeroCoefficientGivesZero) {
  AllocationCoefficients a{{1.0, 0.0}};
  EXPECT_EQ(sinr_exact(a, 1, budget({1e-10, 2e-10})), 0.0);
}

TEST(SinrExact, SingleUserIsSnr) {
  AllocationCoefficients a{{1.0}};
  auto b = budget({3e-10});
  EXPECT_NEAR(sinr_exact(a, 0, b), b.tx_snr() * 3e-10, 1e-9 * b.tx_snr() * 3e-10);
}

TEST(SinrExact, TopRankHasNoInterference) {
  AllocationCoefficients a{{0.6, 0.3, 0.1}};
  auto b = budget({1e-10, 2e-10, 3e-10});
  EXPECT_DOUBLE_EQ(sinr_exact(a, 2, b), 0.1 * 100.0 * 3e-10 / 2e-14);
  EXPECT_THROW(sinr_exact(a, 3, b), DomainError);
}

TEST(SinrHighSnr, FpaWorkedExamples) {
  auto a = fpa_coefficients(0.5, 3);
  EXPECT_NEAR(sinr_high_snr(a, 0, 1.0), 4.0 / 3.0, 1e-14);
  // Second-strongest rank: (1 - mu) / (mu (1 - mu)) = 1 / mu.
  auto b = fpa_coefficients(0.2, 4);
  EXPECT_NEAR(sinr_high_snr(b, 2, 1.0), 5.0, 1e-13);
  // Weakest rank approaches the (1 - mu) / mu bound as K grows.
  auto c40 = fpa_coefficients(0.2, 40);
  EXPECT_NEAR(sinr_high_snr(c40, 0, 1.0), 4.0, 1e-13);
  AllocationCoefficients c{{0.5, 0.5}};
  EXPECT_DOUBLE_EQ(sinr_high_snr(c, 1, 14.0), 7.0);
}

TEST(SinrHighSnr, InfinitySentinel) {
  AllocationCoefficients a{{1.0, 0.0, 0.0}};
  EXPECT_TRUE(std::isinf(sinr_high_snr(a, 0, 1.0)));
}

TEST(SinrHighSnr, MatchesFpaClosedForm) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> mu_dist(1e-3, 0.99);
  std::uniform_int_distribution<std::size_t> k_dist(2, 40);
  for (int i = 0; i < 10000; ++i) {
    const double mu = mu_dist(rng);
    const std::size_t k = k_dist(rng);
    auto a = fpa_coefficients(mu, k);
    for (std::size_t r = 0; r + 1 < k; ++r) {
      const double closed =
          (1 - mu) / (mu * (1 - std::pow(mu, double(k - 1 - r))));
      ASSERT_LE(std::abs(sinr_high_snr(a, r, 1.0) - closed), 1e-12 * closed);
    }
  }
}

TEST(SinrExact, ConvergesToHighSnrForm) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> mu_dist(0.05, 0.9);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t k = 2 + i % 7;
    auto a = fpa_coefficients(mu_dist(rng), k);
    std::vector<double> g(k, 1.0);
    for (std::size_t r = 0; r + 1 < k; ++r) {
      double tail = 0.0;
      for (std::size_t j = r + 1; j < k; ++j) tail += a[j];
      // Interference-to-noise ratio exactly 1e6 at this rank.
      auto b = budget(g, tail * 100.0 / 1e6);
      const double hi = sinr_high_snr(a, r, 1.0);
      ASSERT_LT(std::abs(sinr_exact(a, r, b) - hi) / hi, 1e-3);
    }
  }
}

TEST(AchievableRate, Values) {
  EXPECT_EQ(achievable_rate(0.0, 20e6), 0.0);
  EXPECT_NEAR(achievable_rate(5.0, 20e6), 16613573.87235888, 1e-4);
  EXPECT_NEAR(achievable_rate(1e3, 20e6), 87603140.7220773, 1e-4);
  EXPECT_THROW(achievable_rate(-1.0, 20e6), DomainError);
}

TEST(AchievableRate, StrictlyIncreasing) {
  double prev = -1.0;
  for (double s = 0.0; s < 1e7; s = s * 1.7 + 0.01) {
    const double r = achievable_rate(s, 20e6);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(UserRates, SingleUser) {
  auto b = budget({1e6 * 2e-14 / 100.0});
  auto r = user_rates({{1.0}}, b);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 187227708.15461197, 1e-3);
}

TEST(UserRates, ZeroTopCoefficient) {
  auto r = user_rates({{1.0, 0.0}}, budget({1e-10, 2e-10}));
  EXPECT_EQ(r[1], 0.0);
  EXPECT_GT(r[0], 0.0);
}

TEST(UserRates, VanishingNoiseApproachesHighSnrRates) {
  auto a = fpa_coefficients(0.3, 4);
  std::vector<double> g{1e-10, 2e-10, 3e-10, 4e-10};
  auto b = budget(g, 100.0 * 1e-10 / 1e9);
  auto exact = user_rates(a, b);
  for (std::size_t r = 0; r + 1 < 4; ++r) {
    const double hi = achievable_rate(sinr_high_snr(a, r, 0.0), 20e6);
    EXPECT_LT(std::abs(exact[r] - hi) / hi, 1e-3);
  }
}

TEST(UserRates, SfpaTopRankSinrIsWeakBound) {
  std::vector<double> g{1e-10, 3e-10};
  auto b = budget(g);
  const double mu = sfpa_mu(b.tx_snr(), g.back(), 2);
  auto a = sfpa_coefficients(b.tx_snr(), g.back(), 2);
  const double s = sinr_exact(a, 1, b);
  EXPECT_LE(std::abs(s - (1 - mu) / mu), 1e-9 * s);
  EXPECT_NEAR(user_rates(a, b)[1], achievable_rate((1 - mu) / mu, 20e6), 1e-3);
}

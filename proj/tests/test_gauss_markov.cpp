#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "voi/gauss_markov.hpp"

namespace {

using voi::OuParams;

TEST(OuParams, RejectsNonPositiveRates) {
  EXPECT_THROW(OuParams(0.0, 0.0, 1.0), voi::invalid_argument);
  EXPECT_THROW(OuParams(-1.0, 0.0, 1.0), voi::invalid_argument);
  EXPECT_THROW(OuParams(0.1, 0.0, 0.0), voi::invalid_argument);
  EXPECT_THROW(OuParams(0.1, std::nan(""), 1.0), voi::invalid_argument);
  EXPECT_THROW(OuParams(std::numeric_limits<double>::infinity(), 0.0, 1.0),
               voi::invalid_argument);
}

TEST(StationaryMoments, DirectSubstitution) {
  auto m = voi::stationary_moments(OuParams(0.1, 0.0, 1.0));
  EXPECT_DOUBLE_EQ(m.mean, 0.0);
  EXPECT_DOUBLE_EQ(m.variance, 5.0);
  m = voi::stationary_moments(OuParams(0.5, 2.0, 1.0));
  EXPECT_DOUBLE_EQ(m.mean, 2.0);
  EXPECT_DOUBLE_EQ(m.variance, 1.0);
}

TEST(StationaryMoments, MatchesLongRunSampleVariance) {
  const OuParams p(0.05, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(voi::stationary_moments(p).variance, 10.0);
  auto engine = voi::make_engine(11);
  const std::vector<double> t{0.0};
  const int n = 1000000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = voi::sample_path(p, t, engine)[0];
    s += x;
    ss += x * x;
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  // Var of the sample variance is about 2 sigma^4 / n.
  EXPECT_NEAR(var, 10.0, 3.0 * std::sqrt(2.0 / n) * 10.0);
  EXPECT_NEAR(mean, 0.0, 3.0 * std::sqrt(10.0 / n));
}

TEST(ConditionalMoments, ZeroLagIsDegenerate) {
  const auto c = voi::conditional_moments(OuParams(0.3, 1.0, 2.0), 4.2, 0.0);
  EXPECT_DOUBLE_EQ(c.mean, 4.2);
  EXPECT_DOUBLE_EQ(c.variance, 0.0);
}

TEST(ConditionalMoments, InfiniteLagIsStationary) {
  const OuParams p(0.3, 1.0, 2.0);
  const auto c = voi::conditional_moments(
      p, 4.2, std::numeric_limits<double>::infinity());
  EXPECT_DOUBLE_EQ(c.mean, 1.0);
  EXPECT_DOUBLE_EQ(c.variance, p.stationary_variance());
}

TEST(ConditionalMoments, RejectsNegativeLag) {
  EXPECT_THROW(voi::conditional_moments(OuParams(0.1, 0.0, 1.0), 0.0, -1.0),
               voi::invalid_argument);
}

TEST(ConditionalMoments, MatchesOneStepTransitions) {
  const OuParams p(0.1, 0.0, 1.0);
  const auto c = voi::conditional_moments(p, 1.0, 2.0);
  EXPECT_NEAR(c.mean, std::exp(-0.2), 1e-15);
  EXPECT_NEAR(c.variance, 5.0 * (1.0 - std::exp(-0.4)), 1e-14);

  auto engine = voi::make_engine(12);
  const std::vector<double> t{2.0};
  const int n = 1000000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = voi::sample_path_from(p, 1.0, 0.0, t, engine)[0];
    s += x;
    ss += x * x;
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  EXPECT_NEAR(mean, c.mean, 3.0 * std::sqrt(c.variance / n));
  EXPECT_NEAR(var, c.variance, 3.0 * std::sqrt(2.0 / n) * c.variance);
}

TEST(Covariance, ZeroLagAndSymmetry) {
  const OuParams p(0.05, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(voi::covariance(p, 0.0), 10.0);
  EXPECT_DOUBLE_EQ(voi::covariance(p, -3.5), voi::covariance(p, 3.5));
  EXPECT_NEAR(voi::covariance(p, 2.0), 10.0 * std::exp(-0.1), 1e-14);
}

TEST(Covariance, MatchesPairedPathSamples) {
  const OuParams p(0.05, 0.0, 1.0);
  auto engine = voi::make_engine(13);
  const std::vector<double> t{0.0, 2.0};
  const int n = 400000;
  double sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto path = voi::sample_path(p, t, engine);
    sxy += path[0] * path[1];
  }
  // Var(X0 X2) = s^4 (1 + c^2) with s^2 = 10, c = e^{-0.1}.
  const double c = std::exp(-0.1);
  EXPECT_NEAR(sxy / n, voi::covariance(p, 2.0),
              3.0 * 10.0 * std::sqrt((1.0 + c * c) / n));
}

TEST(SamplePath, SingleTimeIsOneDraw) {
  const std::vector<double> t{3.0};
  EXPECT_EQ(voi::sample_path(OuParams(0.1, 0.0, 1.0), t, 1).size(), 1u);
}

TEST(SamplePath, DeterministicUnderSeed) {
  const OuParams p(0.2, 0.5, 1.5);
  const std::vector<double> t{0.0, 0.3, 1.0, 7.5};
  const auto a = voi::sample_path(p, t, 99);
  const auto b = voi::sample_path(p, t, 99);
  const auto c = voi::sample_path(p, t, 100);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}

TEST(SamplePath, RejectsUnsortedTimes) {
  const OuParams p(0.1, 0.0, 1.0);
  const std::vector<double> dup{0.0, 1.0, 1.0};
  const std::vector<double> back{0.0, 2.0, 1.0};
  EXPECT_THROW(voi::sample_path(p, dup, 1), voi::invalid_argument);
  EXPECT_THROW(voi::sample_path(p, back, 1), voi::invalid_argument);
  EXPECT_THROW(voi::sample_path(p, std::vector<double>{}, 1),
               voi::invalid_argument);
}

TEST(SamplePath, EmpiricalCorrelationMatchesExponentialDecay) {
  for (const double kappa : {0.1, 0.5}) {
    const OuParams p(kappa, 0.0, 1.0);
    auto engine = voi::make_engine(14);
    const std::vector<double> t{0.0, 2.0};
    const int n = 1000000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      const auto path = voi::sample_path(p, t, engine);
      sx += path[0];
      sy += path[1];
      sxx += path[0] * path[0];
      syy += path[1] * path[1];
      sxy += path[0] * path[1];
    }
    const double cov = sxy / n - sx / n * sy / n;
    const double corr = cov / std::sqrt((sxx / n - sx / n * sx / n) *
                                        (syy / n - sy / n * sy / n));
    EXPECT_NEAR(corr, std::exp(-2.0 * kappa), 3e-3) << "kappa " << kappa;
  }
}

} // namespace

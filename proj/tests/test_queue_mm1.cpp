#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "voi/montecarlo.hpp"
#include "voi/queue_mm1.hpp"

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;
using voi::Mm1Params;
using voi::OuParams;

double integrate_0_inf(const std::function<double(double)> &f) {
  exp_sinh<double> q;
  return q.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

double integrate(const std::function<double(double)> &f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

TEST(Mm1Params, RejectsUnstableQueue) {
  EXPECT_THROW(Mm1Params(1.0, 1.0), voi::invalid_argument);
  EXPECT_THROW(Mm1Params(1.5, 1.0), voi::invalid_argument);
  EXPECT_THROW(Mm1Params(0.0, 1.0), voi::invalid_argument);
}

TEST(SimulateFcfs, FcfsRecursionHolds) {
  const auto tr = voi::simulate_fcfs(Mm1Params(0.7, 1.0), 1000, 5);
  tr.timeline.validate();
  for (std::size_t i = 1; i < tr.timeline.size(); ++i) {
    const double start =
        std::max(tr.timeline.recv_times[i - 1], tr.timeline.gen_times[i]);
    EXPECT_NEAR(tr.timeline.recv_times[i], start + tr.service_times[i], 1e-9);
    EXPECT_NEAR(tr.gaps[i],
                tr.timeline.gen_times[i] - tr.timeline.gen_times[i - 1], 1e-9);
  }
}

TEST(SimulateFcfs, DeterministicUnderSeed) {
  const Mm1Params q(0.5, 1.0);
  EXPECT_EQ(voi::simulate_fcfs(q, 100, 3).system_times,
            voi::simulate_fcfs(q, 100, 3).system_times);
}

TEST(SimulateFcfs, LightTrafficSystemTimeIsService) {
  const auto tr = voi::simulate_fcfs(Mm1Params(0.001, 10.0), 10000, 6);
  std::size_t waited = 0;
  for (std::size_t i = 0; i < tr.system_times.size(); ++i) {
    if (tr.system_times[i] > tr.service_times[i] + 1e-6) {
      ++waited;
    }
  }
  EXPECT_LT(waited, 50u);
}

TEST(SimulateFcfs, SystemTimeMeanAndLaw) {
  const Mm1Params q(0.5, 1.0);
  const std::size_t n = 1000000;
  const auto tr = voi::simulate_fcfs(q, n, 7);
  // Batch means absorb the serial correlation of consecutive system times.
  const std::size_t batches = 100, per = n / batches;
  std::vector<double> means(batches, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    means[i / per] += tr.system_times[i] / per;
  }
  double grand = 0.0;
  for (double m : means) {
    grand += m / batches;
  }
  double ss = 0.0;
  for (double m : means) {
    ss += (m - grand) * (m - grand);
  }
  const double se = std::sqrt(ss / (batches - 1) / batches);
  EXPECT_NEAR(grand, 1.0 / (q.mu() - q.lambda()), 3.0 * se);

  // KS on a thinned subsequence (stride 50 is far past the correlation time).
  std::vector<double> thin;
  for (std::size_t i = 0; i < n; i += 50) {
    thin.push_back(tr.system_times[i]);
  }
  const double nu = q.mu() - q.lambda();
  const double d =
      voi::ks_distance(thin, [&](double s) { return -std::expm1(-nu * s); });
  EXPECT_LE(d, voi::ks_critical_value(thin.size(), 0.01));
}

TEST(JointDensity, NormalizesToOne) {
  const Mm1Params q(0.5, 1.0);
  const double total = integrate_0_inf([&](double t) {
    return integrate_0_inf(
        [&](double s) { return voi::joint_density_ts(t, s, q); });
  });
  EXPECT_NEAR(total, 1.0, 1e-6);
}

TEST(JointDensity, MarginalsAreExponential) {
  for (const auto &q : {Mm1Params(0.5, 1.0), Mm1Params(0.2, 1.3)}) {
    const double lam = q.lambda(), nu = q.mu() - q.lambda();
    for (const double x : {0.0, 0.3, 1.0, 2.5, 6.0}) {
      const double ft = integrate_0_inf(
          [&](double s) { return voi::joint_density_ts(x, s, q); });
      EXPECT_NEAR(ft, lam * std::exp(-lam * x), 1e-8);
      const double fs = integrate_0_inf(
          [&](double t) { return voi::joint_density_ts(t, x, q); });
      EXPECT_NEAR(fs, nu * std::exp(-nu * x), 1e-8);
    }
  }
}

TEST(JointDensity, MatchesSimulatedPairs) {
  // Chi-square on a 6x6 grid of (T, S) with stride-thinned pairs.
  const Mm1Params q(0.5, 1.0);
  const auto tr = voi::simulate_fcfs(q, 3000000, 8);
  const std::vector<double> edges{0.0, 0.4, 1.0, 1.8, 3.0, 5.0,
                                  std::numeric_limits<double>::infinity()};
  const std::size_t k = edges.size() - 1;
  std::vector<double> counts(k * k, 0.0);
  double n = 0.0;
  for (std::size_t i = 0; i < tr.gaps.size(); i += 30) {
    const auto bin = [&](double x) {
      return static_cast<std::size_t>(
          std::upper_bound(edges.begin(), edges.end(), x) - edges.begin() - 1);
    };
    counts[bin(tr.gaps[i]) * k + bin(tr.system_times[i])] += 1.0;
    n += 1.0;
  }
  double chi2 = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      const double hi_t = std::isinf(edges[a + 1]) ? 60.0 : edges[a + 1];
      const double hi_s = std::isinf(edges[b + 1]) ? 60.0 : edges[b + 1];
      const double p = integrate(
          [&](double t) {
            return integrate(
                [&](double s) { return voi::joint_density_ts(t, s, q); },
                edges[b], hi_s);
          },
          edges[a], hi_t);
      const double expected = n * p;
      chi2 += (counts[a * k + b] - expected) * (counts[a * k + b] - expected) /
              expected;
    }
  }
  const boost::math::chi_squared dist(static_cast<double>(k * k - 1));
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(DensityZ, NormalizesAndVanishesAtZero) {
  const Mm1Params q(0.5, 1.0);
  EXPECT_NEAR(integrate_0_inf([&](double z) { return voi::density_z(z, q); }),
              1.0, 1e-6);
  EXPECT_NEAR(voi::density_z(0.0, q), 0.0, 1e-15);
}

TEST(DensityZ, MatchesConvolutionQuadrature) {
  for (const auto &q : {Mm1Params(0.5, 1.0), Mm1Params(0.3, 2.0)}) {
    for (const double z : {0.1, 0.5, 1.0, 3.0, 8.0}) {
      const double conv = integrate(
          [&](double t) { return voi::joint_density_ts(t, z - t, q); }, 0.0, z);
      EXPECT_NEAR(voi::density_z(z, q), conv, 1e-8) << "z " << z;
    }
  }
}

TEST(SurvivalZ, IsTailIntegralOfDensity) {
  const Mm1Params q(0.5, 1.0);
  EXPECT_NEAR(voi::survival_z(0.0, q), 1.0, 1e-14);
  for (const double z : {0.2, 1.0, 4.0, 10.0}) {
    const double tail = integrate_0_inf(
        [&](double u) { return voi::density_z(z + u, q); });
    EXPECT_NEAR(voi::survival_z(z, q), tail, 1e-9);
  }
}

TEST(GMap, InversePairAndShape) {
  const OuParams p(0.1, 0.0, 1.0);
  const double gamma = 10.0;
  EXPECT_NEAR(voi::g_map(0.0, p, gamma), 0.5 * std::log1p(gamma), 1e-15);
  double prev = voi::g_map(0.0, p, gamma);
  for (double z = 0.01; z < 60.0; z *= 1.2) {
    const double v = voi::g_map(z, p, gamma);
    EXPECT_LT(v, prev);
    prev = v;
    EXPECT_NEAR(voi::g_inverse(v, p, gamma), z, 1e-12 * std::max(1.0, z));
  }
  EXPECT_THROW(voi::g_inverse(0.0, p, gamma), voi::invalid_argument);
  EXPECT_THROW(voi::g_inverse(voi::worst_case_support_max(gamma), p, gamma),
               voi::invalid_argument);
}

TEST(WorstCasePdf, ChangeOfVariablesIdentity) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0, k = 0.1;
  const double top = voi::worst_case_support_max(gamma);
  for (int i = 1; i < 50; ++i) {
    const double v = top * i / 50.0;
    const double z = voi::g_inverse(v, p, gamma);
    // |dz/dv| = e^{-2v} / (k (1 - e^{-2v}))
    const double jac = std::exp(-2.0 * v) / (k * -std::expm1(-2.0 * v));
    const double ref = voi::density_z(z, q) * jac;
    EXPECT_NEAR(voi::worst_case_pdf(v, q, p, gamma), ref,
                1e-12 * std::max(1.0, ref));
  }
}

TEST(WorstCasePdf, NormalizesOverSupport) {
  for (const double kappa : {0.05, 0.1, 0.3}) {
    const OuParams p(kappa, 0.0, 1.0);
    const Mm1Params q(0.5, 1.0);
    const double gamma = p.stationary_variance() / 0.5;
    const double top = voi::worst_case_support_max(gamma);
    const double total = gauss_kronrod<double, 61>::integrate(
        [&](double v) { return voi::worst_case_pdf(v, q, p, gamma); }, 0.0,
        top, 20, 1e-12);
    EXPECT_NEAR(total, 1.0, 1e-6) << "kappa " << kappa;
  }
}

TEST(WorstCasePdf, OutsideSupportAndEndpoints) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  EXPECT_EQ(voi::worst_case_pdf(-0.1, q, p, 10.0), 0.0);
  EXPECT_EQ(voi::worst_case_pdf(5.0, q, p, 10.0), 0.0);
  EXPECT_THROW(voi::worst_case_pdf(0.0, q, p, 10.0), voi::invalid_argument);
  EXPECT_THROW(voi::worst_case_pdf(voi::worst_case_support_max(10.0), q, p,
                                   10.0),
               voi::invalid_argument);
}

TEST(WorstCaseCdf, DerivativeIsPdf) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0;
  const double top = voi::worst_case_support_max(gamma);
  for (int i = 2; i < 40; ++i) {
    const double v = top * i / 41.0;
    const double h = 1e-5;
    const double d = (voi::worst_case_cdf(v + h, q, p, gamma) -
                      voi::worst_case_cdf(v - h, q, p, gamma)) /
                     (2.0 * h);
    EXPECT_NEAR(d, voi::worst_case_pdf(v, q, p, gamma), 1e-6);
  }
}

TEST(WorstCaseCdf, LimitsAndQuadrature) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0;
  const double top = voi::worst_case_support_max(gamma);
  EXPECT_LT(voi::worst_case_cdf(1e-6, q, p, gamma), 1e-10);
  EXPECT_GT(voi::worst_case_cdf(top * (1 - 1e-12), q, p, gamma), 1 - 1e-9);
  EXPECT_EQ(voi::worst_case_cdf(0.0, q, p, gamma), 0.0);
  EXPECT_EQ(voi::worst_case_cdf(top, q, p, gamma), 1.0);
  for (const double v : {0.05, 0.2, 0.5, 0.9, 1.1}) {
    const double integral = gauss_kronrod<double, 61>::integrate(
        [&](double x) { return voi::worst_case_pdf(x, q, p, gamma); }, 0.0, v,
        20, 1e-13);
    EXPECT_NEAR(voi::worst_case_cdf(v, q, p, gamma), integral, 1e-8);
  }
}

TEST(WorstCaseCdfPrinted, FailsToReachOne) {
  // The printed three-term expression is not a distribution function.
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0;
  const double top = voi::worst_case_support_max(gamma);
  const double near_top =
      voi::worst_case_cdf_printed(top * (1 - 1e-9), q, p, gamma);
  EXPECT_GT(std::abs(near_top - 1.0), 0.5);
  bool negative = false;
  for (int i = 1; i < 100; ++i) {
    negative |= voi::worst_case_cdf_printed(top * i / 100.0, q, p, gamma) < 0.0;
  }
  EXPECT_TRUE(negative);
}

TEST(WorstCaseSamples, InsideSupport) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0, top = voi::worst_case_support_max(gamma);
  const auto tr = voi::simulate_fcfs(q, 100000, 9);
  for (const double v : voi::worst_case_samples(tr, p, gamma)) {
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, top);
  }
  auto engine = voi::make_engine(9);
  for (const double v :
       voi::stationary_worst_case_samples(q, p, gamma, 100000, engine)) {
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, top);
  }
}

TEST(WorstCaseSamples, TraceSamplesFollowCdf) {
  const OuParams p(0.1, 0.0, 1.0);
  const Mm1Params q(0.5, 1.0);
  const double gamma = 10.0;
  const auto tr = voi::simulate_fcfs(q, 2000000, 10);
  const auto all = voi::worst_case_samples(tr, p, gamma);
  std::vector<double> thin;
  for (std::size_t i = 0; i < all.size(); i += 20) {
    thin.push_back(all[i]);
  }
  const double d = voi::ks_distance(
      thin, [&](double v) { return voi::worst_case_cdf(v, q, p, gamma); });
  EXPECT_LE(d, voi::ks_critical_value(thin.size(), 0.01));
}

TEST(WorstCaseSamples, StationaryDrawsFollowCdf) {
  const OuParams p(0.2, 0.0, 1.0);
  const Mm1Params q(0.3, 1.0);
  const double gamma = p.stationary_variance() / 1.0;
  auto engine = voi::make_engine(11);
  const auto v = voi::stationary_worst_case_samples(q, p, gamma, 200000, engine);
  const double d = voi::ks_distance(
      v, [&](double x) { return voi::worst_case_cdf(x, q, p, gamma); });
  EXPECT_LE(d, voi::ks_critical_value(v.size(), 0.01));
}

} // namespace

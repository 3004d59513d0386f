#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "voi/window.hpp"

namespace {

TEST(UniformTimeline, Basics) {
  EXPECT_EQ(voi::uniform_timeline(2.0, 3), (std::vector<double>{2, 4, 6}));
  EXPECT_EQ(voi::uniform_timeline(1.0, 1), (std::vector<double>{1}));
  EXPECT_THROW(voi::uniform_timeline(0.0, 3), voi::invalid_argument);
  EXPECT_THROW(voi::uniform_timeline(-1.0, 3), voi::invalid_argument);
}

TEST(UniformTimeline, IntervalsAreExactlyDt) {
  for (const double dt : {0.1, 0.3, 2.0, 7.0 / 3.0}) {
    const auto times = voi::uniform_timeline(dt, 4);
    const voi::ObservationWindow w(times);
    EXPECT_EQ(w.intervals().size(), 3u);
    // Products i*dt are rounded independently; differences agree to an ulp.
    for (double x : w.intervals()) {
      EXPECT_NEAR(x, dt, 4.0 * std::numeric_limits<double>::epsilon() * 4 * dt);
    }
  }
  const voi::ObservationWindow w(voi::uniform_timeline(2.0, 5));
  for (double x : w.intervals()) {
    EXPECT_EQ(x, 2.0);
  }
  EXPECT_TRUE(w.is_uniform());
}

TEST(PoissonTimeline, ReproducibleUnderSeed) {
  EXPECT_EQ(voi::poisson_timeline(0.5, 100, 3),
            voi::poisson_timeline(0.5, 100, 3));
  EXPECT_NE(voi::poisson_timeline(0.5, 100, 3),
            voi::poisson_timeline(0.5, 100, 4));
  EXPECT_THROW(voi::poisson_timeline(0.0, 5, 1), voi::invalid_argument);
}

TEST(PoissonTimeline, GapMomentsMatchExponential) {
  const double lambda = 0.5;
  const std::size_t n = 1000000;
  const auto times = voi::poisson_timeline(lambda, n, 21);
  double s = 0.0, ss = 0.0, prev = 0.0;
  for (double t : times) {
    const double g = t - prev;
    ASSERT_GT(g, 0.0);
    s += g;
    ss += g * g;
    prev = t;
  }
  const double mean = s / n;
  const double var = ss / n - mean * mean;
  const double sd = 1.0 / lambda;
  EXPECT_NEAR(mean, 1.0 / lambda, 3.0 * sd / std::sqrt(double(n)));
  // Var(g^2) for Exp: 20/lambda^4, so sd of the variance estimator ~ sqrt(8)/lambda^2/sqrt(n).
  EXPECT_NEAR(var, 1.0 / (lambda * lambda),
              3.0 * std::sqrt(8.0) / (lambda * lambda) / std::sqrt(double(n)));
}

TEST(Observe, NoiselessIsIdentity) {
  const std::vector<double> x{1.0, -2.0, 3.5};
  EXPECT_EQ(voi::observe(x, voi::NoiseModel(0.0), 5), x);
}

TEST(Observe, NoiseVarianceAndIndependence) {
  const std::size_t n = 1000000;
  const std::vector<double> x(n, 0.0);
  const auto y = voi::observe(x, voi::NoiseModel(0.5), 22);
  double ss = 0.0, cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss += y[i] * y[i];
    if (i + 1 < n) {
      cross += y[i] * y[i + 1];
    }
  }
  // Var of N^2 is 2 * 0.25; Var of N_i N_j is 0.25.
  EXPECT_NEAR(ss / n, 0.5, 3.0 * std::sqrt(0.5 / n));
  EXPECT_NEAR(cross / (n - 1), 0.0, 3.0 * 0.5 / std::sqrt(double(n - 1)));
}

TEST(NoiseModel, RejectsNegative) {
  EXPECT_THROW(voi::NoiseModel(-0.1), voi::invalid_argument);
  EXPECT_TRUE(voi::NoiseModel(0.0).noiseless());
  EXPECT_FALSE(voi::NoiseModel(1e-300).noiseless());
}

TEST(ObservationWindow, Validation) {
  EXPECT_THROW(voi::ObservationWindow(std::vector<double>{}),
               voi::invalid_argument);
  EXPECT_THROW(voi::ObservationWindow({1.0, 1.0}), voi::invalid_argument);
  EXPECT_THROW(voi::ObservationWindow({2.0, 1.0}), voi::invalid_argument);
  EXPECT_THROW(voi::ObservationWindow({1.0, 1.0 + 1e-14}),
               voi::invalid_argument);
  EXPECT_THROW(voi::ObservationWindow({1.0, 2.0}, std::vector<double>{0.1}),
               voi::invalid_argument);
  const voi::ObservationWindow w({1.0, 2.5, 3.0}, std::vector<double>{1, 2, 3});
  EXPECT_EQ(w.intervals(), (std::vector<double>{1.5, 0.5}));
  EXPECT_FALSE(w.is_uniform());
  EXPECT_DOUBLE_EQ(w.last_time(), 3.0);
}

TEST(ObservationWindow, LastM) {
  const std::vector<double> g{1, 2, 4, 8};
  EXPECT_EQ(voi::ObservationWindow::last_m(g, 2).gen_times(),
            (std::vector<double>{4, 8}));
  EXPECT_THROW(voi::ObservationWindow::last_m(g, 0), voi::invalid_argument);
  EXPECT_THROW(voi::ObservationWindow::last_m(g, 5), voi::invalid_argument);
}

TEST(AgeOfInformation, HandEvaluation) {
  voi::Timeline tl{{1.0, 2.0}, {3.0, 5.0}};
  tl.validate();
  EXPECT_DOUBLE_EQ(voi::age_of_information(tl, 4.0), 3.0);
  // Reset value at an arrival.
  EXPECT_DOUBLE_EQ(voi::age_of_information(tl, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(voi::age_of_information(tl, 5.0), 3.0);
  EXPECT_THROW(voi::age_of_information(tl, 2.9), voi::invalid_argument);
}

TEST(AgeOfInformation, UnitSlopeBetweenArrivals) {
  voi::Timeline tl{{1.0, 2.0, 6.0}, {3.0, 5.0, 6.5}};
  for (double t = 5.0; t < 6.5; t += 0.125) {
    EXPECT_NEAR(voi::age_of_information(tl, t + 0.1) -
                    voi::age_of_information(tl, t),
                0.1, 1e-12);
  }
}

TEST(Timeline, ValidateRejectsBadOrdering) {
  voi::Timeline early{{1.0, 2.0}, {0.5, 3.0}};
  EXPECT_THROW(early.validate(), voi::invalid_argument);
  voi::Timeline overtaking{{1.0, 2.0}, {4.0, 3.0}};
  EXPECT_THROW(overtaking.validate(), voi::invalid_argument);
  voi::Timeline ragged{{1.0, 2.0}, {4.0}};
  EXPECT_THROW(ragged.validate(), voi::invalid_argument);
}

TEST(ReceivedWindow, UsesOnlyReceivedUpdates) {
  voi::Timeline tl{{1.0, 2.0, 3.0}, {1.5, 4.0, 4.5}};
  const auto w = voi::received_window(tl, 4.2, 2);
  EXPECT_EQ(w.gen_times(), (std::vector<double>{1.0, 2.0}));
  EXPECT_THROW(voi::received_window(tl, 3.0, 2), voi::invalid_argument);
}

TEST(TimelineCsv, RoundTripIsExact) {
  voi::Timeline tl{{0.1, 1.0 / 3.0, 2.718281828459045},
                   {0.25, 1.5, 1e6 + 0.1}};
  std::stringstream ss;
  voi::write_timeline_csv(ss, tl);
  EXPECT_EQ(ss.str().substr(0, 25), "index,gen_time,recv_time\n");
  const auto back = voi::read_timeline_csv(ss);
  EXPECT_EQ(back.gen_times, tl.gen_times);
  EXPECT_EQ(back.recv_times, tl.recv_times);
}

TEST(TimelineCsv, RejectsMalformedInput) {
  std::stringstream bad_header("a,b,c\n1,1,2\n");
  EXPECT_THROW(voi::read_timeline_csv(bad_header), voi::invalid_argument);
  std::stringstream bad_number("index,gen_time,recv_time\n1,x,2\n");
  EXPECT_THROW(voi::read_timeline_csv(bad_number), voi::invalid_argument);
  std::stringstream bad_order("index,gen_time,recv_time\n1,2,1\n");
  EXPECT_THROW(voi::read_timeline_csv(bad_order), voi::invalid_argument);
}

} // namespace

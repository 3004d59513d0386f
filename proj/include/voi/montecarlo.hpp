#ifndef VOI_MONTECARLO_HPP_
#define VOI_MONTECARLO_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/random.hpp"
#include "voi/voi_exact.hpp"
#include "voi/window.hpp"

namespace voi {

// Paired draws: row i of y is the observed window, x(i) the current state.
struct WindowSamples {
  Eigen::MatrixXd y;
  Eigen::VectorXd x;
};

// Draws n independent (Y-window, X_t) pairs from the noisy OU model.
inline WindowSamples simulate_window_samples(const OuParams &p,
                                             const NoiseModel &noise,
                                             const ObservationWindow &w,
                                             double t, std::size_t n,
                                             Engine &engine) {
  detail::require(t > w.last_time(),
                  "simulate_window_samples: query time must follow t_n");
  const std::size_t m = w.size();
  std::vector<double> times = w.gen_times();
  times.push_back(t);
  WindowSamples out{Eigen::MatrixXd(static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(m)),
                    Eigen::VectorXd(static_cast<Eigen::Index>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    const auto path = sample_path(p, times, engine);
    const auto y = observe(std::span(path).first(m), noise, engine);
    const auto row = static_cast<Eigen::Index>(i);
    for (std::size_t j = 0; j < m; ++j) {
      out.y(row, static_cast<Eigen::Index>(j)) = y[j];
    }
    out.x(row) = path.back();
  }
  return out;
}

/*
 * Plug-in Gaussian MI: the sample covariance of the joint (m+1)-vector fed
 * through gaussian_mi_oracle. The estimate carries a positive bias of order
 * (m+1)^2 / N, which is not corrected.
 */
inline VoiValue empirical_gaussian_mi(const Eigen::MatrixXd &y,
                                      const Eigen::VectorXd &x) {
  const Eigen::Index n = y.rows();
  const Eigen::Index m = y.cols();
  detail::require(x.size() == n, "empirical_gaussian_mi: row count mismatch");
  detail::require(m >= 1 && n > 10 * (m + 1),
                  "empirical_gaussian_mi: need more than 10 (m+1) samples");
  Eigen::MatrixXd joint(n, m + 1);
  joint.leftCols(m) = y;
  joint.col(m) = x;
  const Eigen::RowVectorXd mean = joint.colwise().mean();
  joint.rowwise() -= mean;
  const Eigen::MatrixXd cov =
      (joint.transpose() * joint) / static_cast<double>(n - 1);
  try {
    return gaussian_mi_oracle(cov.topLeftCorner(m, m),
                              cov.topRightCorner(m, 1), cov(m, m));
  } catch (const numerical_error &e) {
    throw numerical_error(
        "empirical_gaussian_mi: rank-deficient sample covariance",
        e.leading_minor());
  }
}

inline VoiValue empirical_gaussian_mi(const WindowSamples &samples) {
  return empirical_gaussian_mi(samples.y, samples.x);
}

// Sup-norm distance between the empirical CDF of samples and cdf.
template <typename Cdf>
double ks_distance(std::span<const double> samples, Cdf &&cdf) {
  detail::require(!samples.empty(), "ks_distance: no samples");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const double di = static_cast<double>(i);
    worst = std::max({worst, (di + 1.0) / n - f, f - di / n});
  }
  return worst;
}

// Asymptotic one-sample KS critical value sqrt(-log(alpha/2)/2) / sqrt(n).
inline double ks_critical_value(std::size_t n, double alpha) {
  detail::require(n > 0 && alpha > 0.0 && alpha < 1.0,
                  "ks_critical_value: need n > 0 and alpha in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0) / static_cast<double>(n));
}

// Fraction of samples <= v, for sorted input.
inline double empirical_cdf_sorted(std::span<const double> sorted, double v) {
  const auto k = std::upper_bound(sorted.begin(), sorted.end(), v) -
                 sorted.begin();
  return static_cast<double>(k) / static_cast<double>(sorted.size());
}

} // namespace voi

#endif // VOI_MONTECARLO_HPP_

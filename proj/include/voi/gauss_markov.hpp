#ifndef VOI_GAUSS_MARKOV_HPP_
#define VOI_GAUSS_MARKOV_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "voi/error.hpp"
#include "voi/random.hpp"

namespace voi {

/*
 * Parameters of the latent Ornstein-Uhlenbeck process
 *
 *   dX_t = kappa (theta - X_t) dt + sigma dW_t
 *
 * kappa is the mean-reversion rate (1/time), theta the long-term mean and
 * sigma the volatility (state units per sqrt(time)).
 */
class OuParams {
public:
  OuParams(double kappa, double theta, double sigma)
      : kappa_(kappa), theta_(theta), sigma_(sigma) {
    detail::require(std::isfinite(kappa) && kappa > 0.0,
                    "OuParams: kappa must be finite and > 0");
    detail::require(std::isfinite(theta), "OuParams: theta must be finite");
    detail::require(std::isfinite(sigma) && sigma > 0.0,
                    "OuParams: sigma must be finite and > 0");
  }

  double kappa() const noexcept { return kappa_; }
  double theta() const noexcept { return theta_; }
  double sigma() const noexcept { return sigma_; }

  // sigma^2 / (2 kappa)
  double stationary_variance() const noexcept {
    return sigma_ * sigma_ / (2.0 * kappa_);
  }

private:
  double kappa_;
  double theta_;
  double sigma_;
};

struct StationaryMoments {
  double mean;
  double variance;
};

struct ConditionalMoments {
  double mean;
  double variance;
};

inline StationaryMoments stationary_moments(const OuParams &p) {
  return {p.theta(), p.stationary_variance()};
}

// Moments of X_{s+dt} given X_s = x_s. dt may be +infinity.
inline ConditionalMoments conditional_moments(const OuParams &p, double x_s,
                                              double dt) {
  detail::require(dt >= 0.0, "conditional_moments: dt must be >= 0");
  const double decay = std::exp(-p.kappa() * dt);
  return {p.theta() + (x_s - p.theta()) * decay,
          p.stationary_variance() * -std::expm1(-2.0 * p.kappa() * dt)};
}

// Cov[X_t, X_s] for |t - s| = |lag|.
inline double covariance(const OuParams &p, double lag) {
  return p.stationary_variance() * std::exp(-p.kappa() * std::abs(lag));
}

namespace detail {

inline void require_increasing(std::span<const double> times,
                               const char *who) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    require(std::isfinite(times[i]),
            std::string(who) + ": times must be finite");
    if (i > 0) {
      require(times[i] > times[i - 1],
              std::string(who) + ": times must be strictly increasing");
    }
  }
}

} // namespace detail

/*
 * Continues a path from a known state x_start at time t_start, drawing each
 * value from the exact Gaussian transition. Every time must be > t_start.
 */
inline std::vector<double> sample_path_from(const OuParams &p, double x_start,
                                            double t_start,
                                            std::span<const double> times,
                                            Engine &engine) {
  detail::require_increasing(times, "sample_path_from");
  detail::require(times.empty() || times.front() > t_start,
                  "sample_path_from: times must follow t_start");
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> path;
  path.reserve(times.size());
  double x = x_start;
  double t = t_start;
  for (double next : times) {
    const auto moments = conditional_moments(p, x, next - t);
    x = moments.mean + std::sqrt(moments.variance) * normal(engine);
    t = next;
    path.push_back(x);
  }
  return path;
}

// Exact sampler with a stationary start at times[0].
inline std::vector<double> sample_path(const OuParams &p,
                                       std::span<const double> times,
                                       Engine &engine) {
  detail::require(!times.empty(), "sample_path: at least one time required");
  detail::require_increasing(times, "sample_path");
  std::normal_distribution<double> normal(0.0, 1.0);
  const double x0 =
      p.theta() + std::sqrt(p.stationary_variance()) * normal(engine);
  std::vector<double> path{x0};
  const auto rest =
      sample_path_from(p, x0, times.front(), times.subspan(1), engine);
  path.insert(path.end(), rest.begin(), rest.end());
  return path;
}

inline std::vector<double> sample_path(const OuParams &p,
                                       std::span<const double> times,
                                       std::uint64_t seed) {
  auto engine = make_engine(seed);
  return sample_path(p, times, engine);
}

} // namespace voi

#endif // VOI_GAUSS_MARKOV_HPP_

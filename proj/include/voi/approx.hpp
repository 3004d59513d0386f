#ifndef VOI_APPROX_HPP_
#define VOI_APPROX_HPP_

#include <cmath>
#include <limits>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/voi_exact.hpp"
#include "voi/window.hpp"

namespace voi {

/*
 * A truncated-series VoI. Outside its validity region the truncation is
 * not a mutual information, so value is a plain double in nats that can be
 * negative or NaN there; in_valid_region says whether to trust it.
 * region_bound is the gamma threshold of the region.
 */
struct ApproxResult {
  double value;
  bool in_valid_region;
  double region_bound;
};

namespace detail {

// -1/2 log(1 + K (1/gamma - coeff/gamma^2)) + Markov term, K = 1/(e^{2k lag}-1)
inline double high_snr_value(const OuParams &p, double gamma, double coeff,
                             double lag) {
  const double x = -2.0 * p.kappa() * lag;
  const double k = std::exp(x) / -std::expm1(x);
  const double inv = 1.0 / gamma;
  return markov_voi(p, lag).nats -
         0.5 * std::log1p(k * (inv - coeff * inv * inv));
}

} // namespace detail

/*
 * Uniform sampling, high SNR (gamma -> inf):
 *
 *   v ~ 1/2 log(1/(1-e^{-2k lag}))
 *       - 1/2 log(1 + (1/(e^{2k lag}-1)) (1/gamma - 1/((1-rho^2) gamma^2)))
 *
 * independent of m. Valid for gamma >= 2/(1-rho^2). The second-order
 * coefficient assumes m >= 2 (for m = 1 it is 1 instead of 1/(1-rho^2)).
 */
inline ApproxResult voi_high_snr_uniform(const OuParams &p,
                                         const NoiseModel &noise, double dt,
                                         double lag) {
  detail::require(dt > 0.0, "voi_high_snr_uniform: dt must be > 0");
  detail::require(lag > 0.0, "voi_high_snr_uniform: lag must be > 0");
  const double one_minus_rho2 = -std::expm1(-2.0 * p.kappa() * dt);
  const double bound = 2.0 / one_minus_rho2;
  if (noise.noiseless()) {
    return {markov_voi(p, lag).nats, true, bound};
  }
  const double gamma = snr_ratio(p, noise).value();
  return {detail::high_snr_value(p, gamma, 1.0 / one_minus_rho2, lag),
          gamma >= bound, bound};
}

/*
 * Gamma threshold of the uniform low-SNR expansion: the turning point
 * s1 / (2 s2) of the truncated quadratic,
 *
 *   (1-rho^2)(1-rho^{2m}) / (2(1-rho^{2m})(1+rho^2) - 4 m rho^{2m}(1-rho^2)),
 *
 * which is positive for every 0 < rho < 1 and m >= 1.
 */
inline double low_snr_region_bound(double rho, std::size_t m) {
  detail::require(rho > 0.0 && rho < 1.0,
                  "low_snr_region_bound: rho must lie in (0, 1)");
  detail::require(m >= 1, "low_snr_region_bound: m must be >= 1");
  const double rho2 = rho * rho;
  const double rho2m = std::pow(rho2, static_cast<double>(m));
  const double md = static_cast<double>(m);
  return (1.0 - rho2) * (1.0 - rho2m) /
         (2.0 * (1.0 - rho2m) * (1.0 + rho2) - 4.0 * md * rho2m * (1.0 - rho2));
}

/*
 * Uniform sampling, low SNR (gamma -> 0):
 *
 *   v ~ -1/2 log(1 - E s1 gamma + E s2 gamma^2),  E = e^{-2k lag},
 *   s1 = (1-rho^{2m})/(1-rho^2),
 *   s2 = (1-rho^{2m})(1+rho^2)/(1-rho^2)^2 - 2 m rho^{2m}/(1-rho^2).
 *
 * s1 grows with m and converges to 1/(1-rho^2).
 */
inline ApproxResult voi_low_snr_uniform(const OuParams &p,
                                        const NoiseModel &noise, double dt,
                                        std::size_t m, double lag) {
  detail::require(dt > 0.0, "voi_low_snr_uniform: dt must be > 0");
  detail::require(lag > 0.0, "voi_low_snr_uniform: lag must be > 0");
  detail::require(m >= 1, "voi_low_snr_uniform: m must be >= 1");
  const double rho = std::exp(-p.kappa() * dt);
  const double bound = low_snr_region_bound(rho, m);
  if (noise.noiseless()) {
    return {markov_voi(p, lag).nats, false, bound};
  }
  const double gamma = snr_ratio(p, noise).value();
  const double rho2 = rho * rho;
  const double one_minus_rho2 = -std::expm1(-2.0 * p.kappa() * dt);
  const double one_minus_rho2m =
      -std::expm1(-2.0 * p.kappa() * dt * static_cast<double>(m));
  const double s1 = one_minus_rho2m / one_minus_rho2;
  const double s2 =
      one_minus_rho2m * (1.0 + rho2) / (one_minus_rho2 * one_minus_rho2) -
      2.0 * static_cast<double>(m) * (1.0 - one_minus_rho2m) / one_minus_rho2;
  const double decay = std::exp(-2.0 * p.kappa() * lag);
  const double inner = -decay * s1 * gamma + decay * s2 * gamma * gamma;
  const double value = inner > -1.0 ? -0.5 * std::log1p(inner)
                                    : std::numeric_limits<double>::quiet_NaN();
  return {value, gamma <= bound && inner > -1.0, bound};
}

/*
 * Poisson sampling, high SNR: same shape as the uniform case with
 * 1/(1-rho^2) replaced by 1/(1-e^{-2k (t_n - t_{n-1})}). Depends only on
 * the newest interval. Valid for gamma >= 2/(1-e^{-2k (t_n - t_{n-1})}).
 */
inline ApproxResult voi_high_snr_poisson(const OuParams &p,
                                         const NoiseModel &noise,
                                         double last_interval, double lag) {
  detail::require(last_interval > 0.0,
                  "voi_high_snr_poisson: last_interval must be > 0");
  detail::require(lag > 0.0, "voi_high_snr_poisson: lag must be > 0");
  const double r_m = 1.0 / -std::expm1(-2.0 * p.kappa() * last_interval);
  const double bound = 2.0 * r_m;
  if (noise.noiseless()) {
    return {markov_voi(p, lag).nats, true, bound};
  }
  const double gamma = snr_ratio(p, noise).value();
  return {detail::high_snr_value(p, gamma, r_m, lag), gamma >= bound, bound};
}

// Noise variance at which a high-SNR approximation turns: the region
// boundary gamma = 2/(1 - e^{-2k T}) restated as
// sigma_n^2 = sigma^2 (1 - e^{-2k T}) / (4 k).
inline double high_snr_turning_noise_var(const OuParams &p, double interval) {
  detail::require(interval > 0.0,
                  "high_snr_turning_noise_var: interval must be > 0");
  return p.sigma() * p.sigma() * -std::expm1(-2.0 * p.kappa() * interval) /
         (4.0 * p.kappa());
}

} // namespace voi

#endif // VOI_APPROX_HPP_

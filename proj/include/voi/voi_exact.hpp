#ifndef VOI_VOI_EXACT_HPP_
#define VOI_VOI_EXACT_HPP_

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/tridiag.hpp"
#include "voi/window.hpp"

namespace voi {

// Mutual information in nats.
struct VoiValue {
  double nats = 0.0;
};

/*
 * gamma = sigma^2 / (2 kappa sigma_n^2), the process-to-noise variance
 * ratio. A noiseless channel has no finite gamma and is represented by a
 * distinct marker rather than by +infinity.
 */
class SnrRatio {
public:
  explicit SnrRatio(double gamma) : gamma_(gamma) {
    detail::require(std::isfinite(gamma) && gamma > 0.0,
                    "SnrRatio: gamma must be finite and > 0");
  }

  static SnrRatio noiseless() { return SnrRatio(); }

  bool is_noiseless() const noexcept { return !gamma_.has_value(); }

  double value() const {
    if (!gamma_) {
      throw invalid_argument("SnrRatio: noiseless channel has no finite gamma");
    }
    return *gamma_;
  }

private:
  SnrRatio() = default;
  std::optional<double> gamma_;
};

inline SnrRatio snr_ratio(const OuParams &p, const NoiseModel &noise) {
  if (noise.noiseless()) {
    return SnrRatio::noiseless();
  }
  return SnrRatio(p.stationary_variance() / noise.variance());
}

/*
 * Mutual information between X (scalar) and a jointly Gaussian vector Y:
 *
 *   I = 1/2 log( var_x det(Sigma_Y) / det(Sigma_{Y,X}) )
 *
 * evaluated through a Cholesky factorization of the (m+1)x(m+1) joint
 * covariance [Sigma_Y, sigma_yx; sigma_yx^T, var_x]. The last row of the
 * factor holds L_Y^{-1} sigma_yx, so I = -1/2 log1p(-|L_Y^{-1} sigma_yx|^2 /
 * var_x) with no explicit inverse and no cancellation for small I.
 */
inline VoiValue gaussian_mi_oracle(const Eigen::MatrixXd &sigma_yy,
                                   const Eigen::VectorXd &sigma_yx,
                                   double var_x) {
  const Eigen::Index m = sigma_yy.rows();
  detail::require(m >= 1 && sigma_yy.cols() == m && sigma_yx.size() == m,
                  "gaussian_mi_oracle: inconsistent dimensions");
  Eigen::MatrixXd joint(m + 1, m + 1);
  joint.topLeftCorner(m, m) = sigma_yy;
  joint.topRightCorner(m, 1) = sigma_yx;
  joint.bottomLeftCorner(1, m) = sigma_yx.transpose();
  joint(m, m) = var_x;
  detail::require(joint.allFinite(), "gaussian_mi_oracle: non-finite input");
  detail::require(joint.isApprox(joint.transpose(), 1e-12),
                  "gaussian_mi_oracle: joint covariance is not symmetric");

  const Eigen::LLT<Eigen::MatrixXd> llt(joint);
  bool ok = llt.info() == Eigen::Success;
  Eigen::MatrixXd factor;
  if (ok) {
    factor = llt.matrixL();
    ok = (factor.diagonal().array() > 0.0).all();
  }
  if (!ok) {
    for (Eigen::Index k = 1; k <= m + 1; ++k) {
      const Eigen::LLT<Eigen::MatrixXd> minor(joint.topLeftCorner(k, k));
      const Eigen::MatrixXd lk = minor.matrixL();
      if (minor.info() != Eigen::Success ||
          !(lk.diagonal().array() > 0.0).all()) {
        throw numerical_error("gaussian_mi_oracle: joint covariance is not "
                              "positive definite (leading minor " +
                                  std::to_string(k) + ")",
                              static_cast<std::size_t>(k));
      }
    }
    throw numerical_error("gaussian_mi_oracle: factorization failed", m + 1);
  }
  const double explained = factor.row(m).head(m).squaredNorm() / var_x;
  return {std::max(0.0, -0.5 * std::log1p(-explained))};
}

struct JointCovariance {
  Eigen::MatrixXd sigma_yy;
  Eigen::VectorXd sigma_yx;
  double var_x;
};

// Sigma_Y = Sigma_X + sigma_n^2 I, Cov(Y_i, X_t) = Cov(X_{t_i}, X_t).
inline JointCovariance assemble_covariances(const OuParams &p,
                                            const NoiseModel &noise,
                                            const ObservationWindow &w,
                                            double t) {
  detail::require(t > w.last_time(),
                  "assemble_covariances: query time must follow t_n");
  const auto m = static_cast<Eigen::Index>(w.size());
  const auto &times = w.gen_times();
  JointCovariance out{Eigen::MatrixXd(m, m), Eigen::VectorXd(m),
                      p.stationary_variance()};
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (Eigen::Index j = 0; j < m; ++j) {
      out.sigma_yy(i, j) =
          covariance(p, times[ui] - times[static_cast<std::size_t>(j)]);
    }
    out.sigma_yy(i, i) += noise.variance();
    out.sigma_yx(i) = covariance(p, t - times[ui]);
  }
  return out;
}

// The oracle applied to the assembled covariances.
inline VoiValue voi_oracle(const OuParams &p, const NoiseModel &noise,
                           const ObservationWindow &w, double t) {
  const auto cov = assemble_covariances(p, noise, w, t);
  return gaussian_mi_oracle(cov.sigma_yy, cov.sigma_yx, cov.var_x);
}

// I(X_t; X_{t_n}) = 1/2 log(1 / (1 - e^{-2 kappa lag})).
inline VoiValue markov_voi(const OuParams &p, double lag) {
  detail::require(lag > 0.0, "markov_voi: lag must be > 0");
  return {-0.5 * std::log(-std::expm1(-2.0 * p.kappa() * lag))};
}

// -1/2 log(1 - gamma/(1+gamma) e^{-2 kappa lag}); lag = 0 is allowed.
inline VoiValue voi_single_obs(const OuParams &p, const NoiseModel &noise,
                               double lag) {
  detail::require(lag >= 0.0, "voi_single_obs: lag must be >= 0");
  const double decay = std::exp(-2.0 * p.kappa() * lag);
  if (noise.noiseless()) {
    detail::require(lag > 0.0,
                    "voi_single_obs: noiseless VoI diverges at lag 0");
    return markov_voi(p, lag);
  }
  const double gamma = snr_ratio(p, noise).value();
  return {-0.5 * std::log1p(-gamma / (1.0 + gamma) * decay)};
}

namespace detail {

inline void require_query_after_window(const ObservationWindow &w, double t,
                                       const char *who) {
  require(std::isfinite(t) && t > w.last_time(),
          std::string(who) + ": query time must follow t_n");
}

// det(A_mm) / (gamma det(A)) through the tridiagonal precision of the window.
inline double window_det_ratio(const OuParams &p, const NoiseModel &noise,
                               const ObservationWindow &w) {
  const double gamma = snr_ratio(p, noise).value();
  const SymTridiag inv_cov =
      w.is_uniform() && w.size() > 1
          ? uniform_inverse_cov(p, w.intervals().front(), w.size())
          : poisson_inverse_cov(p, w.intervals());
  const auto pair = det_pair_recurrence(matrix_a(inv_cov, noise.variance()));
  detail::require(pair.det_a > 0.0 && pair.det_amm > 0.0,
                  "voi_closed_form: A is numerically singular");
  return det_ratio(pair, gamma);
}

} // namespace detail

/*
 * Closed-form VoI of a noisy OU window:
 *
 *   v = 1/2 log(1/(1 - e^{-2k lag}))
 *       - 1/2 log(1 + det(A_mm) / ((e^{2k lag} - 1) gamma det(A)))
 *
 * with A = sigma_n^2 Sigma_X^{-1} + I and lag = t - t_n. The two terms are
 * combined as -1/2 log1p(-e^{-2k lag} (1 - ratio)) so that neither the
 * Markov term nor the correction has to be cancelled numerically. A
 * noiseless channel reduces to the Markov VoI of the newest sample.
 */
inline VoiValue voi_closed_form(const OuParams &p, const NoiseModel &noise,
                                const ObservationWindow &w, double t) {
  detail::require_query_after_window(w, t, "voi_closed_form");
  const double lag = t - w.last_time();
  if (noise.noiseless()) {
    return markov_voi(p, lag);
  }
  const double ratio = detail::window_det_ratio(p, noise, w);
  const double decay = std::exp(-2.0 * p.kappa() * lag);
  return {std::max(0.0, -0.5 * std::log1p(-decay * (1.0 - ratio)))};
}

// markov_voi - voi_closed_form, evaluated directly as
// 1/2 log1p(ratio e^{-2k lag} / (1 - e^{-2k lag})).
inline VoiValue correction(const OuParams &p, const NoiseModel &noise,
                           const ObservationWindow &w, double t) {
  detail::require_query_after_window(w, t, "correction");
  if (noise.noiseless()) {
    return {0.0};
  }
  const double lag = t - w.last_time();
  const double ratio = detail::window_det_ratio(p, noise, w);
  const double x = -2.0 * p.kappa() * lag;
  return {0.5 * std::log1p(ratio * std::exp(x) / -std::expm1(x))};
}

} // namespace voi

#endif // VOI_VOI_EXACT_HPP_

#ifndef VOI_TRIDIAG_HPP_
#define VOI_TRIDIAG_HPP_

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"

namespace voi {

// Symmetric tridiagonal matrix: m diagonal entries, m-1 off-diagonal ones.
struct SymTridiag {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }

  void validate() const {
    detail::require(!diag.empty(), "SymTridiag: empty matrix");
    detail::require(offdiag.size() + 1 == diag.size(),
                    "SymTridiag: offdiag must have size m-1");
  }

  Eigen::MatrixXd to_dense() const {
    validate();
    const auto m = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      out(i, i) = diag[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        out(i, i + 1) = out(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
      }
    }
    return out;
  }
};

/*
 * det(A) and det(A_mm) (A with its last row and column removed). Both are
 * stored relative to a shared scale: the true determinants are
 * det_a * exp(log_scale) and det_amm * exp(log_scale). The scale cancels
 * in the ratio, which is all the VoI needs.
 */
struct DetPair {
  double det_a;
  double det_amm;
  double log_scale = 0.0;

  double log_det_a() const { return std::log(det_a) + log_scale; }
  double log_det_amm() const { return std::log(det_amm) + log_scale; }
};

// Inverse covariance of m uniformly spaced OU samples (AR(1) precision).
inline SymTridiag uniform_inverse_cov(const OuParams &p, double dt,
                                      std::size_t m) {
  detail::require(m >= 1, "uniform_inverse_cov: m must be >= 1");
  detail::require(std::isfinite(dt) && dt > 0.0,
                  "uniform_inverse_cov: dt must be > 0");
  const double base = 2.0 * p.kappa() / (p.sigma() * p.sigma());
  if (m == 1) {
    return {{base}, {}};
  }
  const double rho = std::exp(-p.kappa() * dt);
  const double scale = base / -std::expm1(-2.0 * p.kappa() * dt);
  SymTridiag out;
  out.diag.assign(m, scale * (1.0 + rho * rho));
  out.diag.front() = out.diag.back() = scale;
  out.offdiag.assign(m - 1, -rho * scale);
  return out;
}

/*
 * The unscaled irregular-AR(1) precision pattern: with
 * R_i = 1 / (1 - exp(-2 kappa T_i)),
 *   a_1 = R_2, a_m = R_m, a_i = R_i + R_{i+1} - 1 otherwise,
 *   b_i = -sqrt(R_{i+1} (R_{i+1} - 1)).
 * The inverse covariance is (2 kappa / sigma^2) times this matrix.
 */
inline SymTridiag interval_precision_shape(double kappa,
                                           std::span<const double> intervals) {
  const std::size_t m = intervals.size() + 1;
  SymTridiag out;
  out.diag.assign(m, 1.0);
  out.offdiag.resize(m - 1);
  if (m == 1) {
    return out;
  }
  std::vector<double> r(m - 1);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    detail::require(std::isfinite(intervals[i]) && intervals[i] > 0.0,
                    "interval_precision_shape: intervals must be > 0");
    r[i] = 1.0 / -std::expm1(-2.0 * kappa * intervals[i]);
  }
  // r[i] holds R_{i+2} in 1-based notation.
  out.diag.front() = r.front();
  out.diag.back() = r.back();
  for (std::size_t i = 1; i + 1 < m; ++i) {
    out.diag[i] = r[i - 1] + r[i] - 1.0;
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    out.offdiag[i] = -std::sqrt(r[i] * (r[i] - 1.0));
  }
  return out;
}

inline SymTridiag poisson_inverse_cov(const OuParams &p,
                                      std::span<const double> intervals) {
  auto out = interval_precision_shape(p.kappa(), intervals);
  const double base = 2.0 * p.kappa() / (p.sigma() * p.sigma());
  for (auto &d : out.diag) {
    d *= base;
  }
  for (auto &e : out.offdiag) {
    e *= base;
  }
  return out;
}

// A = sigma_n^2 * inv_cov + I
inline SymTridiag matrix_a(const SymTridiag &inv_cov, double sigma_n2) {
  inv_cov.validate();
  detail::require(sigma_n2 >= 0.0, "matrix_a: sigma_n2 must be >= 0");
  SymTridiag out = inv_cov;
  for (auto &d : out.diag) {
    d = sigma_n2 * d + 1.0;
  }
  for (auto &e : out.offdiag) {
    e *= sigma_n2;
  }
  return out;
}

/*
 * Leading-principal-minor recurrence
 *   f_0 = 1, f_1 = d_1, f_k = d_k f_{k-1} - e_{k-1}^2 f_{k-2},
 * returning (f_m, f_{m-1}). For m = 1 this gives det_amm = 1. The pair is
 * rescaled whenever it grows past 1e150 so large m cannot overflow.
 */
inline DetPair det_pair_recurrence(const SymTridiag &a) {
  a.validate();
  double prev = 1.0;
  double cur = a.diag[0];
  double log_scale = 0.0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    const double e = a.offdiag[k - 1];
    const double next = a.diag[k] * cur - e * e * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 1e150) {
      const double s = std::abs(cur);
      cur /= s;
      prev /= s;
      log_scale += std::log(s);
    }
  }
  return {cur, prev, log_scale};
}

// det(A_mm) / (gamma det(A))
inline double det_ratio(const DetPair &dp, double gamma) {
  detail::require(dp.det_a > 0.0, "det_ratio: det(A) must be > 0");
  detail::require(gamma > 0.0, "det_ratio: gamma must be > 0");
  if (std::isinf(gamma)) {
    return 0.0;
  }
  return dp.det_amm / (gamma * dp.det_a);
}

// Entries a (corners), b (off-diagonal) and c (interior) of A for uniform
// sampling.
struct UniformEntries {
  double a;
  double b;
  double c;
};

inline UniformEntries uniform_a_entries(const OuParams &p, double dt,
                                        double sigma_n2) {
  detail::require(dt > 0.0, "uniform_a_entries: dt must be > 0");
  detail::require(sigma_n2 >= 0.0, "uniform_a_entries: sigma_n2 must be >= 0");
  const double rho = std::exp(-p.kappa() * dt);
  // 1 / (gamma (1 - rho^2)) with gamma = sigma^2 / (2 kappa sigma_n^2)
  const double inv = sigma_n2 * 2.0 * p.kappa() / (p.sigma() * p.sigma()) /
                     -std::expm1(-2.0 * p.kappa() * dt);
  return {inv + 1.0, -rho * inv, (1.0 + rho * rho) * inv + 1.0};
}

// Roots of lambda^2 + (c/b) lambda + 1 = 0.
struct CharacteristicRoots {
  double lambda1;
  double lambda2;
  double sqrt_disc; // sqrt(c^2 - 4 b^2)
};

inline CharacteristicRoots uniform_characteristic_roots(const UniformEntries &e) {
  detail::require(e.b != 0.0, "characteristic roots: b must be nonzero");
  const double disc = e.c * e.c - 4.0 * e.b * e.b;
  detail::require(disc > 0.0, "characteristic roots: degenerate (c^2 = 4b^2)");
  const double sq = std::sqrt(disc);
  const double lambda2 = (-e.c - sq) / (2.0 * e.b);
  // lambda1 * lambda2 = 1; the quotient avoids the cancellation in -c + sq.
  return {1.0 / lambda2, lambda2, sq};
}

namespace detail {

inline constexpr double kMinClosedFormRho = 1e-8;
inline constexpr std::size_t kLogMagnitudeThreshold = 64;

// s_k / L^shift with s_k = L^k - L^-k, L > 1; valid for negative k too.
inline double scaled_sinh_term(double log_l, long k, long shift) {
  return std::exp((k - shift) * log_l) - std::exp((-k - shift) * log_l);
}

} // namespace detail

/*
 * Closed-form det(A), det(A_mm) for uniform sampling from the characteristic
 * roots of the J-sequence recurrence. Negative powers (m = 3 in det(A_mm))
 * are well defined since lambda1 lambda2 = 1. Falls back to the recurrence
 * for m < 3, sigma_n^2 = 0, or rho < 1e-8. Above m = 64 the evaluation moves
 * to log-magnitude form to keep lambda2^m from overflowing.
 */
inline DetPair det_pair_uniform_closed(const OuParams &p, double dt,
                                       double sigma_n2, std::size_t m) {
  detail::require(m >= 1, "det_pair_uniform_closed: m must be >= 1");
  const double rho = std::exp(-p.kappa() * dt);
  if (m < 3 || sigma_n2 == 0.0 || rho < detail::kMinClosedFormRho) {
    return det_pair_recurrence(
        matrix_a(uniform_inverse_cov(p, dt, m), sigma_n2));
  }
  const auto e = uniform_a_entries(p, dt, sigma_n2);
  const auto roots = uniform_characteristic_roots(e);
  const double a = e.a, b = e.b, c = e.c;
  const long mm = static_cast<long>(m);

  if (m <= detail::kLogMagnitudeThreshold) {
    const auto diff = [&](long k) {
      return std::pow(roots.lambda1, static_cast<double>(k)) -
             std::pow(roots.lambda2, static_cast<double>(k));
    };
    const double sign_a = (m % 2 == 0) ? 1.0 : -1.0;
    const double det_a =
        sign_a * std::pow(b, static_cast<double>(mm - 1)) / roots.sqrt_disc *
        (a * a * diff(mm - 1) + 2.0 * a * b * diff(mm - 2) +
         b * b * diff(mm - 3));
    const double det_amm =
        -sign_a * std::pow(b, static_cast<double>(mm - 2)) / roots.sqrt_disc *
        (a * c * diff(mm - 2) + (a * b + b * c) * diff(mm - 3) +
         b * b * diff(mm - 4));
    return {det_a, det_amm, 0.0};
  }

  // b < 0, so lambda2 = L > 1 and (-1)^m b^(m-1) (lambda1^k - lambda2^k)
  // reduces to |b|^(m-1) s_k with s_k = L^k - L^-k.
  const double log_l = std::log(roots.lambda2);
  const double abs_b = std::abs(b);
  const long shift = mm - 1;
  const double scaled_a =
      a * a * detail::scaled_sinh_term(log_l, mm - 1, shift) +
      2.0 * a * b * detail::scaled_sinh_term(log_l, mm - 2, shift) +
      b * b * detail::scaled_sinh_term(log_l, mm - 3, shift);
  const double scaled_amm =
      (a * c * detail::scaled_sinh_term(log_l, mm - 2, shift) +
       (a * b + b * c) * detail::scaled_sinh_term(log_l, mm - 3, shift) +
       b * b * detail::scaled_sinh_term(log_l, mm - 4, shift)) /
      abs_b;
  const double log_scale = static_cast<double>(mm - 1) * std::log(abs_b) -
                           std::log(roots.sqrt_disc) +
                           static_cast<double>(shift) * log_l;
  return {scaled_a, scaled_amm, log_scale};
}

/*
 * det(A_mm) / (gamma det(A)) for uniform sampling written directly in the
 * characteristic roots:
 *
 *   (1 - rho^2)/rho * [ac D_{m-2} + (ab + bc) D_{m-3} + b^2 D_{m-4}]
 *                   / [a^2 D_{m-1} + 2ab D_{m-2} + b^2 D_{m-3}]
 *
 * with D_k = lambda1^k - lambda2^k. Requires m >= 3 and sigma_n^2 > 0.
 */
inline double det_ratio_uniform_closed(const OuParams &p, double dt,
                                       double sigma_n2, std::size_t m) {
  detail::require(m >= 3, "det_ratio_uniform_closed: m must be >= 3");
  detail::require(sigma_n2 > 0.0,
                  "det_ratio_uniform_closed: sigma_n2 must be > 0");
  const double rho = std::exp(-p.kappa() * dt);
  detail::require(rho >= detail::kMinClosedFormRho,
                  "det_ratio_uniform_closed: rho too small");
  const auto e = uniform_a_entries(p, dt, sigma_n2);
  const auto roots = uniform_characteristic_roots(e);
  const double a = e.a, b = e.b, c = e.c;
  const auto diff = [&](std::size_t k_plus_4) {
    const double k = static_cast<double>(k_plus_4) - 4.0;
    return std::pow(roots.lambda1, k) - std::pow(roots.lambda2, k);
  };
  const double num = a * c * diff(m + 2) + (a * b + b * c) * diff(m + 1) +
                     b * b * diff(m);
  const double den = a * a * diff(m + 3) + 2.0 * a * b * diff(m + 2) +
                     b * b * diff(m + 1);
  return -std::expm1(-2.0 * p.kappa() * dt) / rho * num / den;
}

// Coefficients of f_k = c0 + c1 / gamma + c2 / gamma^2 + O(gamma^-3).
struct SeriesCoeffs {
  double c0;
  double c1;
  double c2;
};

/*
 * Second-order expansion of the k-th leading principal minor of
 * A = (1/gamma) M + I, where M has diagonal a_seq and off-diagonal b_seq:
 *   c1 = sum_{i<=k} a_i,
 *   c2 = sum_{i<j<=k} a_i a_j - sum_{i<=k-1} b_i^2.
 */
inline SeriesCoeffs fk_expansion_coeffs(std::span<const double> a_seq,
                                        std::span<const double> b_seq,
                                        std::size_t k) {
  detail::require(k >= 1 && k <= a_seq.size(),
                  "fk_expansion_coeffs: k out of range");
  detail::require(b_seq.size() + 1 >= k,
                  "fk_expansion_coeffs: b_seq too short");
  double sum = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    pairs += a_seq[i] * sum;
    sum += a_seq[i];
  }
  double bsq = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    bsq += b_seq[i] * b_seq[i];
  }
  return {1.0, sum, pairs - bsq};
}

} // namespace voi

#endif // VOI_TRIDIAG_HPP_

#ifndef VOI_QUEUE_MM1_HPP_
#define VOI_QUEUE_MM1_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/random.hpp"
#include "voi/window.hpp"

namespace voi {

// Arrival rate lambda and service rate mu of a stable FCFS M/M/1 queue.
class Mm1Params {
public:
  Mm1Params(double lambda, double mu) : lambda_(lambda), mu_(mu) {
    detail::require(std::isfinite(lambda) && lambda > 0.0,
                    "Mm1Params: lambda must be > 0");
    detail::require(std::isfinite(mu) && mu > 0.0,
                    "Mm1Params: mu must be > 0");
    detail::require(lambda < mu, "Mm1Params: unstable queue (lambda >= mu)");
  }

  double lambda() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }

private:
  double lambda_;
  double mu_;
};

/*
 * Steady-state output of an FCFS single-server queue. For every emitted
 * update i: gaps[i] = t_i - t_{i-1} (the predecessor may be in the warm-up
 * prefix), service_times[i] = W_i, system_times[i] = S_i = t'_i - t_i.
 */
struct FcfsTrace {
  Timeline timeline;
  std::vector<double> gaps;
  std::vector<double> service_times;
  std::vector<double> system_times;
};

struct FcfsOptions {
  std::size_t warmup = 10000;
};

/*
 * Simulates Poisson(lambda) generation with Exp(mu) service,
 *   t'_i = max(t'_{i-1}, t_i) + W_i,
 * discarding the first options.warmup updates.
 */
inline FcfsTrace simulate_fcfs(const Mm1Params &q, std::size_t n_updates,
                               Engine &engine, FcfsOptions options = {}) {
  std::exponential_distribution<double> gap_dist(q.lambda());
  std::exponential_distribution<double> service_dist(q.mu());
  FcfsTrace trace;
  trace.timeline.gen_times.reserve(n_updates);
  trace.timeline.recv_times.reserve(n_updates);
  trace.gaps.reserve(n_updates);
  trace.service_times.reserve(n_updates);
  trace.system_times.reserve(n_updates);
  double gen = 0.0;
  double last_recv = 0.0;
  for (std::size_t i = 0; i < options.warmup + n_updates; ++i) {
    const double gap = gap_dist(engine);
    const double service = service_dist(engine);
    gen += gap;
    const double recv = std::max(last_recv, gen) + service;
    last_recv = recv;
    if (i >= options.warmup) {
      trace.timeline.gen_times.push_back(gen);
      trace.timeline.recv_times.push_back(recv);
      trace.gaps.push_back(gap);
      trace.service_times.push_back(service);
      trace.system_times.push_back(recv - gen);
    }
  }
  return trace;
}

inline FcfsTrace simulate_fcfs(const Mm1Params &q, std::size_t n_updates,
                               std::uint64_t seed, FcfsOptions options = {}) {
  auto engine = make_engine(seed);
  return simulate_fcfs(q, n_updates, engine, options);
}

// FCFS receptions of given generation times with Exp(mu) service.
inline Timeline fcfs_receptions(std::span<const double> gen_times, double mu,
                                Engine &engine) {
  detail::require(mu > 0.0, "fcfs_receptions: mu must be > 0");
  detail::require_increasing(gen_times, "fcfs_receptions");
  std::exponential_distribution<double> service_dist(mu);
  Timeline tl{{gen_times.begin(), gen_times.end()}, {}};
  tl.recv_times.reserve(gen_times.size());
  double last_recv = 0.0;
  for (double gen : gen_times) {
    last_recv = std::max(last_recv, gen) + service_dist(engine);
    tl.recv_times.push_back(last_recv);
  }
  return tl;
}

// Joint density of (T_{n+1}, S_{n+1}) in steady state.
inline double joint_density_ts(double t, double s, const Mm1Params &q) {
  detail::require(t >= 0.0 && s >= 0.0,
                  "joint_density_ts: arguments must be >= 0");
  const double lam = q.lambda(), mu = q.mu();
  return lam * mu * std::exp(-lam * t - mu * s) -
         mu * mu * std::exp(-mu * (t + s)) +
         mu * (mu - lam) * std::exp(-mu * t - (mu - lam) * s);
}

// Density of Z = S_{n+1} + T_{n+1}.
inline double density_z(double z, const Mm1Params &q) {
  detail::require(z >= 0.0, "density_z: z must be >= 0");
  const double lam = q.lambda(), mu = q.mu();
  const double nu = mu - lam;
  return mu * (lam / nu * std::exp(-lam * z) -
               (lam / nu + mu * z + nu / lam) * std::exp(-mu * z) +
               nu / lam * std::exp(-nu * z));
}

// P(Z > z), the integral of density_z over (z, inf).
inline double survival_z(double z, const Mm1Params &q) {
  detail::require(z >= 0.0, "survival_z: z must be >= 0");
  const double lam = q.lambda(), mu = q.mu();
  const double nu = mu - lam;
  const double c = lam / nu + nu / lam + 1.0;
  const double s = mu / nu * std::exp(-lam * z) -
                   (c + mu * z) * std::exp(-mu * z) +
                   mu / lam * std::exp(-nu * z);
  return std::clamp(s, 0.0, 1.0);
}

// Upper end of the worst-case VoI support, 1/2 log(1 + gamma).
inline double worst_case_support_max(double gamma) {
  detail::require(std::isfinite(gamma) && gamma > 0.0,
                  "worst_case_support_max: gamma must be finite and > 0");
  return 0.5 * std::log1p(gamma);
}

// g(z) = -1/2 log(1 - gamma/(1+gamma) e^{-2 kappa z}), decreasing in z.
inline double g_map(double z, const OuParams &p, double gamma) {
  detail::require(z >= 0.0, "g_map: z must be >= 0");
  detail::require(std::isfinite(gamma) && gamma > 0.0,
                  "g_map: gamma must be finite and > 0");
  return -0.5 * std::log1p(-gamma / (1.0 + gamma) *
                           std::exp(-2.0 * p.kappa() * z));
}

namespace detail {

// log r(v) with r(v) = (1+gamma)(1-e^{-2v})/gamma.
inline double log_r(double v, double gamma) {
  return std::log1p(gamma) + std::log(-std::expm1(-2.0 * v)) - std::log(gamma);
}

inline void require_open_support(double v, double gamma, const char *who) {
  require(v > 0.0 && v < worst_case_support_max(gamma),
          std::string(who) + ": v must lie in (0, 1/2 log(1+gamma))");
}

} // namespace detail

// g^{-1}(v) = -(1/(2 kappa)) log r(v)
inline double g_inverse(double v, const OuParams &p, double gamma) {
  detail::require_open_support(v, gamma, "g_inverse");
  return std::max(0.0, -detail::log_r(v, gamma) / (2.0 * p.kappa()));
}

namespace detail {

// 0 below the support, error at the endpoints, true when v is inside.
inline bool classify_support(double v, double gamma, const char *who) {
  const double top = worst_case_support_max(gamma);
  require(v != 0.0 && v != top,
          std::string(who) + ": density undefined at the support endpoints");
  return v > 0.0 && v < top;
}

} // namespace detail

/*
 * Density of the worst-case VoI V_n = g(S_{n+1} + T_{n+1}):
 *
 *   f_V(v) = mu e^{-2v} / (kappa (1 - e^{-2v})) [
 *              lam/(mu-lam) r^{lam/(2k)}
 *            - (lam/(mu-lam) + (mu-lam)/lam - mu/(2k) log r) r^{mu/(2k)}
 *            + (mu-lam)/lam r^{(mu-lam)/(2k)} ]
 *
 * and zero outside (0, 1/2 log(1+gamma)).
 */
inline double worst_case_pdf(double v, const Mm1Params &q, const OuParams &p,
                             double gamma) {
  if (!detail::classify_support(v, gamma, "worst_case_pdf")) {
    return 0.0;
  }
  const double lam = q.lambda(), mu = q.mu(), k = p.kappa();
  const double nu = mu - lam;
  const double lr = detail::log_r(v, gamma);
  const auto rpow = [&](double e) { return std::exp(e * lr); };
  const double jac = mu * std::exp(-2.0 * v) / (k * -std::expm1(-2.0 * v));
  return jac * (lam / nu * rpow(lam / (2.0 * k)) -
                (lam / nu + nu / lam - mu / (2.0 * k) * lr) *
                    rpow(mu / (2.0 * k)) +
                nu / lam * rpow(nu / (2.0 * k)));
}

/*
 * F_V(v) = P(V <= v) = P(Z >= g^{-1}(v)). Evaluated in the z domain, which
 * stays finite as v -> 0 where log r(v) -> -inf. Returns 0 at or below the
 * support and 1 at or above its top.
 */
inline double worst_case_cdf(double v, const Mm1Params &q, const OuParams &p,
                             double gamma) {
  if (v <= 0.0) {
    return 0.0;
  }
  if (v >= worst_case_support_max(gamma)) {
    return 1.0;
  }
  return survival_z(g_inverse(v, p, gamma), q);
}

/*
 * The three-term CDF expression in the form it is usually quoted,
 *
 *   (mu-lam)/mu e^{-v lam/k} r^{(lam/2k)(1 + 2v/log r)}
 *   + lam/mu e^{-v (mu-lam)/k} r^{((mu-lam)/2k)(1 + 2v/log r)}
 *   + (1 - mu^2/(lam (mu-lam)) + mu/(2k) log r) e^{-v mu/k}
 *       r^{(mu/2k)(1 + 2v/log r)}.
 *
 * Its first two coefficients are inverted relative to the integral of
 * worst_case_pdf (mu/(mu-lam) and mu/lam), so it does not reach 1 at the
 * top of the support. Kept for comparison; use worst_case_cdf.
 */
inline double worst_case_cdf_printed(double v, const Mm1Params &q,
                                     const OuParams &p, double gamma) {
  detail::require_open_support(v, gamma, "worst_case_cdf_printed");
  const double lam = q.lambda(), mu = q.mu(), k = p.kappa();
  const double nu = mu - lam;
  const double lr = detail::log_r(v, gamma);
  const double e = 1.0 + 2.0 * v / lr;
  const auto rpow = [&](double x) { return std::exp(x * lr); };
  return nu / mu * std::exp(-v * lam / k) * rpow(lam / (2.0 * k) * e) +
         lam / mu * std::exp(-v * nu / k) * rpow(nu / (2.0 * k) * e) +
         (1.0 - mu * mu / (lam * nu) + mu / (2.0 * k) * lr) *
             std::exp(-v * mu / k) * rpow(mu / (2.0 * k) * e);
}

// V_i = g(S_i + T_i) for every update of a trace: the m = 1 VoI just before
// update i arrives, with update i-1 the freshest one received.
inline std::vector<double> worst_case_samples(const FcfsTrace &trace,
                                              const OuParams &p,
                                              double gamma) {
  std::vector<double> out(trace.system_times.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = g_map(trace.system_times[i] + trace.gaps[i], p, gamma);
  }
  return out;
}

/*
 * n independent draws of V = g(S_{n+1} + T_{n+1}) from the stationary law:
 * S_n ~ Exp(mu - lam), T ~ Exp(lam), W ~ Exp(mu), and one Lindley step
 * S_{n+1} = max(S_n - T, 0) + W. Unlike worst_case_samples on a trace, the
 * draws are uncorrelated, so binomial error bars on histograms hold.
 */
inline std::vector<double> stationary_worst_case_samples(const Mm1Params &q,
                                                         const OuParams &p,
                                                         double gamma,
                                                         std::size_t n,
                                                         Engine &engine) {
  std::exponential_distribution<double> system(q.mu() - q.lambda());
  std::exponential_distribution<double> gap(q.lambda());
  std::exponential_distribution<double> service(q.mu());
  std::vector<double> out(n);
  for (auto &v : out) {
    const double s = system(engine);
    const double t = gap(engine);
    const double s_next = std::max(s - t, 0.0) + service(engine);
    v = g_map(s_next + t, p, gamma);
  }
  return out;
}

} // namespace voi

#endif // VOI_QUEUE_MM1_HPP_

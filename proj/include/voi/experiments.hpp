#ifndef VOI_EXPERIMENTS_HPP_
#define VOI_EXPERIMENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "json.hpp"

#include "voi/approx.hpp"
#include "voi/data_table.hpp"
#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/montecarlo.hpp"
#include "voi/queue_mm1.hpp"
#include "voi/random.hpp"
#include "voi/voi_exact.hpp"
#include "voi/window.hpp"

namespace voi {

// Bumped whenever a compiled-in figure default changes.
inline constexpr int kDefaultsVersion = 1;

/*
 * One experiment: a figure id ("2".."8", "low-snr", "mm1") or "custom",
 * plus its parameter grid. Scalar fields apply to every grid point.
 *
 *   figure 2       VoI time evolution (Markov, m = 1, m = n) and AoI
 *   figure 3       normalized VoI versus window length m
 *   figure 4       exact vs high-SNR approximation, uniform sampling
 *   figure 5       exact vs high-SNR approximation, Poisson sampling
 *   figure 6       steady-state mean VoI versus sampling rate
 *   figure 7       worst-case VoI density versus simulation
 *   figure 8       worst-case VoI CDF over (kappa, noise) pairs
 *   low-snr        exact vs low-SNR approximation, uniform sampling
 *   mm1            worst-case VoI density and CDF on a v grid
 *   custom         exact VoI, bounds and approximations on a product grid
 */
struct ExperimentSpec {
  std::string figure = "custom";
  double sigma = 1.0;
  double theta = 0.0;
  double mu = 1.0;
  double t = 100.0;
  double t_end = 40.0;
  double t_step = 0.05;
  std::vector<double> kappa{0.1};
  std::vector<double> noise_var{1.0};
  std::vector<double> dt{2.0};
  std::vector<double> rate{0.5};
  std::vector<double> lag{2.0};
  std::vector<std::size_t> m{1};
  std::size_t samples = 0;
  std::size_t replications = 30;
  std::size_t bins = 100;
  std::uint64_t seed = 1;

  void validate() const {
    detail::require(!kappa.empty() && !noise_var.empty() && !dt.empty() &&
                        !rate.empty() && !lag.empty() && !m.empty(),
                    "ExperimentSpec: every grid axis must be nonempty");
    detail::require(replications >= 1,
                    "ExperimentSpec: replications must be >= 1");
    detail::require(sigma > 0.0 && mu > 0.0,
                    "ExperimentSpec: sigma and mu must be > 0");
    detail::require(t_step > 0.0 && t_end > 0.0 && bins >= 1,
                    "ExperimentSpec: t_step, t_end and bins must be > 0");
  }

  nlohmann::json to_json() const {
    return {{"figure", figure},
            {"sigma", sigma},
            {"theta", theta},
            {"mu", mu},
            {"t", t},
            {"t_end", t_end},
            {"t_step", t_step},
            {"kappa", kappa},
            {"noise_var", noise_var},
            {"dt", dt},
            {"rate", rate},
            {"lag", lag},
            {"m", m},
            {"samples", samples},
            {"replications", replications},
            {"bins", bins},
            {"seed", seed}};
  }
};

namespace detail {

// lo, lo+step, ..., hi with values rounded to 1e-9 so grids print cleanly.
inline std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) /
                  1e9);
  }
  return out;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Updates generated in (0, horizon): uniform when dt is set, else Poisson
// at `rate`, with FCFS Exp(mu) service. Generation and service draw from
// separate streams of the seed.
inline Timeline figure_timeline(double horizon, std::optional<double> dt,
                                double rate, double mu, std::uint64_t seed) {
  std::vector<double> gen;
  if (dt) {
    require(*dt > 0.0, "figure timeline: dt must be > 0");
    for (std::size_t i = 1; static_cast<double>(i) * *dt < horizon; ++i) {
      gen.push_back(static_cast<double>(i) * *dt);
    }
  } else {
    require(rate > 0.0, "figure timeline: rate must be > 0");
    auto engine = make_engine(seed, 0);
    std::exponential_distribution<double> gap(rate);
    for (double t = gap(engine); t < horizon; t += gap(engine)) {
      gen.push_back(t);
    }
  }
  auto service = make_engine(seed, 1);
  return fcfs_receptions(gen, mu, service);
}

inline void stamp_meta(DataTable &table, const ExperimentSpec &spec) {
  const auto spec_json = spec.to_json();
  table.meta["spec"] = spec_json;
  table.meta["spec_hash"] = fnv1a_hex(spec_json.dump());
  table.meta["seed"] = spec.seed;
  table.meta["units"] = "nats";
  table.meta["defaults_version"] = kDefaultsVersion;
}

inline DataTable run_time_evolution(const ExperimentSpec &spec) {
  const OuParams p(spec.kappa.front(), spec.theta, spec.sigma);
  const NoiseModel noise(spec.noise_var.front());
  const auto tl = figure_timeline(spec.t_end, spec.dt.front(), 0.0, spec.mu,
                                  spec.seed);
  DataTable table({"t", "n_received", "last_gen_time", "aoi",
                   "markov_voi_nats", "voi_m1_nats", "voi_mn_nats",
                   "correction_mn_nats"});
  for (const double t : grid(spec.t_step, spec.t_end, spec.t_step)) {
    const std::size_t n = tl.received_by(t);
    if (n == 0) {
      continue;
    }
    const auto w1 = received_window(tl, t, 1);
    const auto wn = received_window(tl, t, n);
    table.add_row({t, static_cast<double>(n), w1.last_time(),
                   age_of_information(tl, t),
                   markov_voi(p, t - w1.last_time()).nats,
                   voi_closed_form(p, noise, w1, t).nats,
                   voi_closed_form(p, noise, wn, t).nats,
                   correction(p, noise, wn, t).nats});
  }
  return table;
}

inline DataTable run_window_length(const ExperimentSpec &spec) {
  const OuParams p(spec.kappa.front(), spec.theta, spec.sigma);
  const auto tl =
      figure_timeline(spec.t, spec.dt.front(), 0.0, spec.mu, spec.seed);
  const std::size_t n = tl.received_by(spec.t);
  DataTable table({"noise_var", "m", "lag", "voi_nats", "markov_voi_nats",
                   "normalized_voi"});
  for (const double noise_var : spec.noise_var) {
    const NoiseModel noise(noise_var);
    for (const std::size_t m : spec.m) {
      if (m == 0 || m > n) {
        table.add_row({noise_var, static_cast<double>(m), kNaN, kNaN, kNaN,
                       kNaN});
        continue;
      }
      const auto w = received_window(tl, spec.t, m);
      const double lag = spec.t - w.last_time();
      const double v = voi_closed_form(p, noise, w, spec.t).nats;
      const double markov = markov_voi(p, lag).nats;
      table.add_row(
          {noise_var, static_cast<double>(m), lag, v, markov, v / markov});
    }
  }
  table.meta["n_received"] = n;
  return table;
}

enum class SnrRegime { high_uniform, high_poisson, low_uniform };

inline DataTable run_snr_comparison(const ExperimentSpec &spec,
                                    SnrRegime regime) {
  const bool poisson = regime == SnrRegime::high_poisson;
  const std::size_t m = spec.m.front();
  const auto tl = figure_timeline(
      spec.t, poisson ? std::nullopt : std::optional<double>(spec.dt.front()),
      spec.rate.front(), spec.mu, spec.seed);
  const auto w = received_window(tl, spec.t, m);
  const double lag = spec.t - w.last_time();
  const double last_interval =
      w.size() > 1 ? w.intervals().back() : spec.dt.front();
  DataTable table({"kappa", "noise_var", "gamma", "lag", "last_interval",
                   "exact_voi_nats", "approx_voi_nats", "approx_valid",
                   "region_bound_gamma", "boundary_noise_var",
                   "markov_voi_nats"});
  for (const double kappa : spec.kappa) {
    const OuParams p(kappa, spec.theta, spec.sigma);
    for (const double noise_var : spec.noise_var) {
      const NoiseModel noise(noise_var);
      const double gamma = p.stationary_variance() / noise_var;
      ApproxResult approx{};
      switch (regime) {
      case SnrRegime::high_uniform:
        approx = voi_high_snr_uniform(p, noise, spec.dt.front(), lag);
        break;
      case SnrRegime::high_poisson:
        approx = voi_high_snr_poisson(p, noise, last_interval, lag);
        break;
      case SnrRegime::low_uniform:
        approx = voi_low_snr_uniform(p, noise, spec.dt.front(), m, lag);
        break;
      }
      table.add_row({kappa, noise_var, gamma, lag, last_interval,
                     voi_closed_form(p, noise, w, spec.t).nats, approx.value,
                     approx.in_valid_region ? 1.0 : 0.0, approx.region_bound,
                     p.stationary_variance() / approx.region_bound,
                     markov_voi(p, lag).nats});
    }
  }
  return table;
}

} // namespace detail

// Time-averaged VoI and AoI of a steady-state FCFS M/M/1 status-update
// stream, with a batch-means standard error for the VoI.
struct SteadyStateVoi {
  double mean_voi;
  double se_voi;
  double mean_aoi;
};

/*
 * Integrates v(t) over n_updates inter-reception periods. Between t'_i and
 * t'_{i+1} the window is the last m generation times up to t_i, so v(t)
 * depends on t only through the lag and is integrated by Gauss-Legendre
 * quadrature.
 */
inline SteadyStateVoi steady_state_voi(const OuParams &p,
                                       const NoiseModel &noise,
                                       const Mm1Params &q, std::size_t m,
                                       std::size_t n_updates,
                                       std::uint64_t seed) {
  detail::require(m >= 1, "steady_state_voi: m must be >= 1");
  detail::require(n_updates > m + 20,
                  "steady_state_voi: too few updates for batch means");
  const auto trace = simulate_fcfs(q, n_updates, seed, FcfsOptions{1000});
  const auto &gen = trace.timeline.gen_times;
  const auto &recv = trace.timeline.recv_times;
  constexpr std::size_t kBatches = 20;
  const std::size_t first = m - 1;
  const std::size_t periods = n_updates - 1 - first;
  std::vector<double> batch_voi(kBatches, 0.0), batch_time(kBatches, 0.0);
  double total_voi = 0.0, total_aoi = 0.0, total_time = 0.0;
  for (std::size_t i = first; i + 1 < n_updates; ++i) {
    const double u0 = recv[i] - gen[i];
    const double u1 = recv[i + 1] - gen[i];
    double area = 0.0;
    if (noise.noiseless()) {
      area = boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double u) { return markov_voi(p, u).nats; }, u0, u1);
    } else {
      const ObservationWindow w(
          std::vector<double>(gen.begin() + static_cast<long>(i + 1 - m),
                              gen.begin() + static_cast<long>(i + 1)));
      const double keep = 1.0 - detail::window_det_ratio(p, noise, w);
      area = boost::math::quadrature::gauss<double, 20>::integrate(
          [&](double u) {
            return -0.5 * std::log1p(-std::exp(-2.0 * p.kappa() * u) * keep);
          },
          u0, u1);
    }
    const std::size_t b = (i - first) * kBatches / periods;
    batch_voi[b] += area;
    batch_time[b] += u1 - u0;
    total_voi += area;
    total_time += u1 - u0;
    total_aoi += 0.5 * (u1 * u1 - u0 * u0);
  }
  const double mean = total_voi / total_time;
  double ss = 0.0;
  for (std::size_t b = 0; b < kBatches; ++b) {
    const double d = batch_voi[b] / batch_time[b] - mean;
    ss += d * d;
  }
  const double kb = static_cast<double>(kBatches);
  return {mean, std::sqrt(ss / (kb - 1.0) / kb), total_aoi / total_time};
}

/*
 * Histogram of worst-case VoI samples on `bins` equal bins over the
 * support, next to the analytic density at each bin midpoint and the
 * analytic bin probability. density_se is the binomial standard error of
 * the histogram density under the analytic law.
 */
inline DataTable worst_case_histogram(std::span<const double> samples,
                                      const Mm1Params &q, const OuParams &p,
                                      double gamma, std::size_t bins) {
  detail::require(!samples.empty() && bins >= 1,
                  "worst_case_histogram: need samples and bins");
  const double top = worst_case_support_max(gamma);
  const double width = top / static_cast<double>(bins);
  std::vector<double> counts(bins, 0.0);
  for (const double v : samples) {
    if (v > 0.0 && v < top) {
      const auto b = std::min(bins - 1, static_cast<std::size_t>(v / width));
      counts[b] += 1.0;
    }
  }
  const auto cdf_at = [&](std::size_t edge) {
    if (edge == 0) {
      return 0.0;
    }
    if (edge == bins) {
      return 1.0;
    }
    return worst_case_cdf(static_cast<double>(edge) * width, q, p, gamma);
  };
  const double n = static_cast<double>(samples.size());
  DataTable table({"bin_lo", "bin_hi", "v_mid", "pdf_analytic",
                   "bin_prob_analytic", "count", "hist_density",
                   "density_se"});
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) * width;
    const double hi = b + 1 == bins ? top : lo + width;
    const double mid = 0.5 * (lo + hi);
    const double prob = cdf_at(b + 1) - cdf_at(b);
    table.add_row({lo, hi, mid, worst_case_pdf(mid, q, p, gamma), prob,
                   counts[b], counts[b] / (n * (hi - lo)),
                   std::sqrt(prob * (1.0 - prob) / n) / (hi - lo)});
  }
  return table;
}

namespace detail {

inline std::vector<double> simulate_worst_case(const ExperimentSpec &spec,
                                               const OuParams &p,
                                               double gamma,
                                               std::uint64_t stream) {
  const Mm1Params q(spec.rate.front(), spec.mu);
  auto engine = make_engine(spec.seed, stream);
  return stationary_worst_case_samples(q, p, gamma, spec.samples, engine);
}

inline DataTable run_rate_sweep(const ExperimentSpec &spec) {
  const NoiseModel noise(spec.noise_var.front());
  const std::size_t m = spec.m.front();
  DataTable table({"kappa", "rate", "mean_voi_nats", "se_voi_nats",
                   "mean_aoi", "markov_mean_voi_nats"});
  for (const double kappa : spec.kappa) {
    const OuParams p(kappa, spec.theta, spec.sigma);
    for (const double rate : spec.rate) {
      if (!(rate < spec.mu)) {
        table.add_row({kappa, rate, kNaN, kNaN, kNaN, kNaN});
        continue;
      }
      const Mm1Params q(rate, spec.mu);
      // Same seed at every grid point: common random numbers across rates.
      const auto noisy =
          steady_state_voi(p, noise, q, m, spec.samples, spec.seed);
      const auto markov =
          steady_state_voi(p, NoiseModel(0.0), q, 1, spec.samples, spec.seed);
      table.add_row({kappa, rate, noisy.mean_voi, noisy.se_voi,
                     noisy.mean_aoi, markov.mean_voi});
    }
  }
  return table;
}

inline DataTable run_worst_case_density(const ExperimentSpec &spec) {
  const OuParams p(spec.kappa.front(), spec.theta, spec.sigma);
  const Mm1Params q(spec.rate.front(), spec.mu);
  const double gamma = p.stationary_variance() / spec.noise_var.front();
  const auto samples = simulate_worst_case(spec, p, gamma, 0);
  auto table = worst_case_histogram(samples, q, p, gamma, spec.bins);
  table.meta["ks_distance"] = ks_distance(
      samples, [&](double v) { return worst_case_cdf(v, q, p, gamma); });
  table.meta["support_max_nats"] = worst_case_support_max(gamma);
  return table;
}

inline DataTable run_worst_case_cdf(const ExperimentSpec &spec) {
  const Mm1Params q(spec.rate.front(), spec.mu);
  DataTable table({"kappa", "noise_var", "v", "cdf_analytic", "cdf_empirical"});
  std::uint64_t stream = 0;
  for (const double kappa : spec.kappa) {
    const OuParams p(kappa, spec.theta, spec.sigma);
    for (const double noise_var : spec.noise_var) {
      const double gamma = p.stationary_variance() / noise_var;
      auto samples = simulate_worst_case(spec, p, gamma, stream++);
      std::sort(samples.begin(), samples.end());
      for (const double v : grid(spec.t_step, spec.t_end, spec.t_step)) {
        const double top = worst_case_support_max(gamma);
        const double analytic =
            v >= top ? 1.0 : worst_case_cdf(v, q, p, gamma);
        table.add_row(
            {kappa, noise_var, v, analytic, empirical_cdf_sorted(samples, v)});
      }
    }
  }
  return table;
}

inline DataTable run_mm1_analysis(const ExperimentSpec &spec) {
  const OuParams p(spec.kappa.front(), spec.theta, spec.sigma);
  const Mm1Params q(spec.rate.front(), spec.mu);
  const double gamma = p.stationary_variance() / spec.noise_var.front();
  auto samples = simulate_worst_case(spec, p, gamma, 0);
  std::sort(samples.begin(), samples.end());
  const double top = worst_case_support_max(gamma);
  const std::size_t k = spec.bins;
  const double h = top / static_cast<double>(k);
  DataTable table({"v", "pdf_analytic", "cdf_analytic", "hist_density",
                   "cdf_empirical"});
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i <= k; ++i) {
    const double v = i == k ? top : static_cast<double>(i) * h;
    const bool interior = i > 0 && i < k;
    const double lo = std::max(0.0, v - 0.5 * h);
    const double hi = std::min(top, v + 0.5 * h);
    const double in_bin = static_cast<double>(
        std::lower_bound(samples.begin(), samples.end(), hi) -
        std::lower_bound(samples.begin(), samples.end(), lo));
    table.add_row({v, interior ? worst_case_pdf(v, q, p, gamma) : 0.0,
                   interior ? worst_case_cdf(v, q, p, gamma)
                            : (i == 0 ? 0.0 : 1.0),
                   in_bin / (n * (hi - lo)), empirical_cdf_sorted(samples, v)});
  }
  table.meta["ks_distance"] = ks_distance(
      samples, [&](double v) { return worst_case_cdf(v, q, p, gamma); });
  table.meta["samples"] = samples.size();
  table.meta["support_max_nats"] = top;
  return table;
}

inline DataTable run_custom(const ExperimentSpec &spec) {
  DataTable table({"kappa", "noise_var", "dt", "m", "lag", "gamma",
                   "exact_voi_nats", "markov_voi_nats", "correction_nats",
                   "high_snr_voi_nats", "high_snr_valid", "low_snr_voi_nats",
                   "low_snr_valid", "aoi", "empirical_voi_nats",
                   "empirical_half_width_nats", "ok"});
  std::uint64_t row_index = 0;
  for (const double kappa : spec.kappa) {
    for (const double noise_var : spec.noise_var) {
      for (const double dt : spec.dt) {
        for (const std::size_t m : spec.m) {
          for (const double lag : spec.lag) {
            ++row_index;
            try {
              const OuParams p(kappa, spec.theta, spec.sigma);
              const NoiseModel noise(noise_var);
              const ObservationWindow w(uniform_timeline(dt, m));
              const double t = w.last_time() + lag;
              const auto high = voi_high_snr_uniform(p, noise, dt, lag);
              const auto low = voi_low_snr_uniform(p, noise, dt, m, lag);
              double emp = kNaN, half = kNaN;
              if (spec.samples > 0) {
                std::vector<double> est;
                for (std::size_t r = 0; r < spec.replications; ++r) {
                  auto engine = make_engine(spec.seed, row_index * 1000003 + r);
                  est.push_back(empirical_gaussian_mi(
                                    simulate_window_samples(
                                        p, noise, w, t, spec.samples, engine))
                                    .nats);
                }
                double mean = 0.0;
                for (double e : est) {
                  mean += e;
                }
                mean /= static_cast<double>(est.size());
                double ss = 0.0;
                for (double e : est) {
                  ss += (e - mean) * (e - mean);
                }
                emp = mean;
                half = est.size() > 1
                           ? 1.96 * std::sqrt(ss / static_cast<double>(
                                                       est.size() - 1)) /
                                 std::sqrt(static_cast<double>(est.size()))
                           : kNaN;
              }
              table.add_row(
                  {kappa, noise_var, dt, static_cast<double>(m), lag,
                   noise.noiseless() ? std::numeric_limits<double>::infinity()
                                     : p.stationary_variance() / noise_var,
                   voi_closed_form(p, noise, w, t).nats,
                   markov_voi(p, lag).nats, correction(p, noise, w, t).nats,
                   high.value, high.in_valid_region ? 1.0 : 0.0, low.value,
                   low.in_valid_region ? 1.0 : 0.0, lag, emp, half, 1.0});
            } catch (const std::exception &) {
              std::vector<double> row(table.columns().size(), kNaN);
              row[0] = kappa;
              row[1] = noise_var;
              row[2] = dt;
              row[3] = static_cast<double>(m);
              row[4] = lag;
              row.back() = 0.0;
              table.add_row(std::move(row));
            }
          }
        }
      }
    }
  }
  return table;
}

} // namespace detail

inline const std::vector<std::string> &known_figures() {
  static const std::vector<std::string> ids{"2", "3", "4", "5", "6",
                                            "7", "8", "low-snr", "mm1",
                                            "custom"};
  return ids;
}

// Compiled-in parameter defaults for each figure id.
inline ExperimentSpec figure_defaults(std::string_view id) {
  ExperimentSpec s;
  s.figure = std::string(id);
  const auto noise_grid = detail::grid(0.05, 2.0, 0.05);
  if (id == "2") {
    s.kappa = {0.1};
    s.noise_var = {1.0};
    s.dt = {2.0};
    s.t_end = 40.0;
    s.t_step = 0.05;
  } else if (id == "3") {
    s.kappa = {0.05};
    s.noise_var = {0.1, 2.0, 5.0, 10.0};
    s.dt = {2.0};
    s.m.clear();
    for (std::size_t m = 1; m <= 30; ++m) {
      s.m.push_back(m);
    }
  } else if (id == "4") {
    s.kappa = {0.05, 0.1, 0.2};
    s.noise_var = noise_grid;
    s.dt = {2.0};
    s.m = {5};
  } else if (id == "5") {
    s.kappa = {0.05, 0.1, 0.2};
    s.noise_var = noise_grid;
    s.rate = {0.5};
    s.m = {5};
  } else if (id == "6") {
    s.kappa = {0.05, 0.1, 0.2};
    s.noise_var = {0.5};
    s.m = {2};
    s.rate = detail::grid(0.05, 0.95, 0.05);
    s.samples = 20000;
  } else if (id == "7") {
    s.kappa = {0.1};
    s.noise_var = {0.5};
    s.rate = {0.5};
    s.samples = 1000000;
    s.bins = 100;
  } else if (id == "8") {
    s.kappa = {0.05, 0.1, 0.2, 0.3};
    s.noise_var = {0.5, 1.0};
    s.rate = {0.5};
    s.samples = 100000;
    s.t_step = 0.01;
    s.t_end = 1.5;
  } else if (id == "low-snr") {
    s.kappa = {0.25, 0.3, 0.35};
    s.noise_var = detail::grid(0.5, 20.0, 0.5);
    s.dt = {2.0};
    s.m = {5};
  } else if (id == "mm1") {
    s.kappa = {0.1};
    s.noise_var = {0.5};
    s.rate = {0.5};
    s.samples = 1000000;
    s.bins = 200;
  } else if (id == "custom") {
    s.kappa = {0.1};
    s.noise_var = {1.0};
    s.dt = {2.0};
    s.m = {1};
    s.lag = {2.0};
  } else {
    throw invalid_argument("unknown figure id: " + std::string(id));
  }
  return s;
}

// Runs an experiment; identical spec (seed included) gives an identical
// table.
inline DataTable run_experiment(const ExperimentSpec &spec) {
  spec.validate();
  const auto &id = spec.figure;
  const bool needs_samples =
      id == "6" || id == "7" || id == "8" || id == "mm1";
  detail::require(!needs_samples || spec.samples > 0,
                  "run_experiment: figure " + id + " needs samples > 0");
  auto table = [&] {
    if (id == "2") {
      return detail::run_time_evolution(spec);
    } else if (id == "3") {
      return detail::run_window_length(spec);
    } else if (id == "4") {
      return detail::run_snr_comparison(spec, detail::SnrRegime::high_uniform);
    } else if (id == "5") {
      return detail::run_snr_comparison(spec, detail::SnrRegime::high_poisson);
    } else if (id == "6") {
      return detail::run_rate_sweep(spec);
    } else if (id == "7") {
      return detail::run_worst_case_density(spec);
    } else if (id == "8") {
      return detail::run_worst_case_cdf(spec);
    } else if (id == "low-snr") {
      return detail::run_snr_comparison(spec, detail::SnrRegime::low_uniform);
    } else if (id == "mm1") {
      return detail::run_mm1_analysis(spec);
    } else if (id == "custom") {
      return detail::run_custom(spec);
    }
    throw invalid_argument("unknown figure id: " + id);
  }();
  detail::stamp_meta(table, spec);
  return table;
}

} // namespace voi

#endif // VOI_EXPERIMENTS_HPP_

// voi: value-of-information calculator for the noisy OU model.
//
//   voi voi    --kappa 0.1 --noise-var 1 --m 1 --lag 2
//   voi approx --kappa 0.1 --noise-var 0.5 --dt 2 --m 5 --lag 1
//   voi fig 4 --format json --out fig4.json
//   voi mm1 --rate 0.5 --mu 1 --samples 1000000 --seed 7
//   voi sweep --param noise_var --from 0.1 --to 2 --steps 20
//
// Exit status: 0 on success, 2 on usage or validation errors, 3 on
// numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "voi/approx.hpp"
#include "voi/data_table.hpp"
#include "voi/error.hpp"
#include "voi/experiments.hpp"
#include "voi/queue_mm1.hpp"
#include "voi/voi_exact.hpp"
#include "voi/window.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--seed", c.seed, "RNG seed (default: entropy, logged)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
}

std::uint64_t resolve_seed(const Common &c) {
  if (c.seed) {
    return *c.seed;
  }
  std::random_device rd;
  const std::uint64_t s =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::cerr << "voi: using entropy seed " << s << '\n';
  return s;
}

void emit(const voi::DataTable &table, const Common &c) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      throw voi::invalid_argument("--out: cannot open " + c.out);
    }
  }
  std::ostream &os = c.out.empty() ? std::cout : file;
  if (c.format == "json") {
    voi::write_json(os, table);
  } else {
    voi::write_csv(os, table);
  }
}

// Model and window flags shared by voi and approx.
struct PointArgs {
  double kappa = 0.1;
  double theta = 0.0;
  double sigma = 1.0;
  double noise_var = 1.0;
  double dt = 2.0;
  std::optional<double> rate;
  std::size_t m = 1;
  std::optional<double> lag;
  std::optional<double> t;
  std::string timeline;
};

void add_point_options(CLI::App *cmd, PointArgs &a) {
  cmd->add_option("--kappa", a.kappa, "Mean-reversion rate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--theta", a.theta, "Long-term mean");
  cmd->add_option("--sigma", a.sigma, "Volatility")->check(CLI::PositiveNumber);
  cmd->add_option("--noise-var", a.noise_var, "Observation noise variance")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dt", a.dt, "Uniform sampling interval")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rate", a.rate,
                  "Poisson sampling rate (replaces uniform sampling)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--m", a.m, "Window length")->check(CLI::Range(1, 100000));
  auto *lag = cmd->add_option("--lag", a.lag, "Query time minus t_n")
                  ->check(CLI::PositiveNumber);
  auto *t = cmd->add_option("--t", a.t, "Absolute query time")
                ->check(CLI::NonNegativeNumber);
  lag->excludes(t);
  cmd->add_option("--timeline", a.timeline,
                  "Timeline CSV (index,gen_time,recv_time); needs --t")
      ->check(CLI::ExistingFile)
      ->needs(t);
}

struct Point {
  voi::OuParams p;
  voi::NoiseModel noise;
  voi::ObservationWindow w;
  double t;
};

Point resolve_point(const PointArgs &a, std::uint64_t seed) {
  const voi::OuParams p(a.kappa, a.theta, a.sigma);
  const voi::NoiseModel noise(a.noise_var);
  if (!a.timeline.empty()) {
    std::ifstream in(a.timeline);
    const auto tl = voi::read_timeline_csv(in);
    if (tl.received_by(*a.t) < a.m) {
      throw voi::invalid_argument("--m: fewer than m updates received by --t");
    }
    return {p, noise, voi::received_window(tl, *a.t, a.m), *a.t};
  }
  const auto gen = a.rate ? voi::poisson_timeline(*a.rate, a.m, seed)
                          : voi::uniform_timeline(a.dt, a.m);
  voi::ObservationWindow w(gen);
  double t = w.last_time() + a.lag.value_or(a.dt);
  if (a.t) {
    if (!(*a.t > w.last_time())) {
      throw voi::invalid_argument("--t: query time must follow t_n");
    }
    t = *a.t;
  }
  return {p, noise, std::move(w), t};
}

voi::DataTable point_table(const PointArgs &a, const Common &c,
                           bool with_approx) {
  const std::uint64_t seed = resolve_seed(c);
  const auto pt = resolve_point(a, seed);
  const double lag = pt.t - pt.w.last_time();
  std::vector<std::string> cols{"kappa", "noise_var", "m", "lag",
                                "voi_nats", "markov_voi_nats",
                                "correction_nats"};
  std::vector<double> row{a.kappa,
                          a.noise_var,
                          static_cast<double>(a.m),
                          lag,
                          voi::voi_closed_form(pt.p, pt.noise, pt.w, pt.t).nats,
                          voi::markov_voi(pt.p, lag).nats,
                          voi::correction(pt.p, pt.noise, pt.w, pt.t).nats};
  if (with_approx) {
    const auto push = [&](const std::string &name, const voi::ApproxResult &r) {
      cols.insert(cols.end(), {name + "_voi_nats", name + "_valid",
                               name + "_region_bound_gamma"});
      row.insert(row.end(), {r.value, r.in_valid_region ? 1.0 : 0.0,
                             r.region_bound});
    };
    if (pt.w.size() > 1 && !pt.w.is_uniform()) {
      push("high_snr_poisson",
           voi::voi_high_snr_poisson(pt.p, pt.noise, pt.w.intervals().back(),
                                     lag));
    } else {
      const double dt = pt.w.size() > 1 ? pt.w.intervals().back() : a.dt;
      push("high_snr", voi::voi_high_snr_uniform(pt.p, pt.noise, dt, lag));
      push("low_snr",
           voi::voi_low_snr_uniform(pt.p, pt.noise, dt, pt.w.size(), lag));
    }
  }
  voi::DataTable table(cols);
  table.add_row(row);
  nlohmann::json spec{{"kappa", a.kappa},         {"theta", a.theta},
                      {"sigma", a.sigma},         {"noise_var", a.noise_var},
                      {"dt", a.dt},               {"m", a.m},
                      {"timeline", a.timeline},   {"approx", with_approx}};
  if (a.rate) {
    spec["rate"] = *a.rate;
  }
  if (a.lag) {
    spec["lag"] = *a.lag;
  }
  if (a.t) {
    spec["t"] = *a.t;
  }
  table.meta["spec"] = spec;
  table.meta["spec_hash"] = voi::fnv1a_hex(spec.dump());
  table.meta["seed"] = seed;
  table.meta["units"] = "nats";
  table.meta["defaults_version"] = voi::kDefaultsVersion;
  table.meta["t"] = pt.t;
  table.meta["gen_times"] = pt.w.gen_times();
  return table;
}

// Figure and sweep overrides; empty vectors keep the registry defaults.
struct GridArgs {
  std::vector<double> kappa, noise_var, dt, rate, lag;
  std::vector<std::size_t> m;
  std::optional<double> theta, sigma, mu, t, t_end, t_step;
  std::optional<std::size_t> samples, replications, bins;
};

void add_grid_options(CLI::App *cmd, GridArgs &g) {
  cmd->add_option("--kappa", g.kappa, "Mean-reversion rate(s)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--noise-var", g.noise_var, "Noise variance(s)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dt", g.dt, "Sampling interval(s)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rate", g.rate, "Sampling rate(s)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lag", g.lag, "Lag(s)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  cmd->add_option("--m", g.m, "Window length(s)")
      ->delimiter(',')
      ->check(CLI::Range(1, 100000));
  cmd->add_option("--theta", g.theta, "Long-term mean");
  cmd->add_option("--sigma", g.sigma, "Volatility")->check(CLI::PositiveNumber);
  cmd->add_option("--mu", g.mu, "Service rate")->check(CLI::PositiveNumber);
  cmd->add_option("--t", g.t, "Query time")->check(CLI::PositiveNumber);
  cmd->add_option("--t-end", g.t_end, "End of time or v grid")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--t-step", g.t_step, "Step of time or v grid")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", g.samples, "Monte Carlo sample count");
  cmd->add_option("--replications", g.replications,
                  "Replications for empirical MI")
      ->check(CLI::Range(1, 100000));
  cmd->add_option("--bins", g.bins, "Histogram bins")
      ->check(CLI::Range(1, 1000000));
}

void apply_grid(const GridArgs &g, voi::ExperimentSpec &s) {
  const auto set = [](auto &dst, const auto &src) {
    if (!src.empty()) {
      dst = src;
    }
  };
  set(s.kappa, g.kappa);
  set(s.noise_var, g.noise_var);
  set(s.dt, g.dt);
  set(s.rate, g.rate);
  set(s.lag, g.lag);
  set(s.m, g.m);
  s.theta = g.theta.value_or(s.theta);
  s.sigma = g.sigma.value_or(s.sigma);
  s.mu = g.mu.value_or(s.mu);
  s.t = g.t.value_or(s.t);
  s.t_end = g.t_end.value_or(s.t_end);
  s.t_step = g.t_step.value_or(s.t_step);
  s.samples = g.samples.value_or(s.samples);
  s.replications = g.replications.value_or(s.replications);
  s.bins = g.bins.value_or(s.bins);
}

void require_stable(const voi::ExperimentSpec &s) {
  for (const double r : s.rate) {
    if (!(r < s.mu)) {
      throw voi::invalid_argument("--rate: unstable queue (rate >= mu)");
    }
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Value of information for a noisy Ornstein-Uhlenbeck process"};
  app.require_subcommand(1);

  Common voi_common, approx_common, fig_common, mm1_common, sweep_common;

  PointArgs voi_args;
  bool voi_approx = false;
  auto *voi_cmd = app.add_subcommand("voi", "Exact VoI at one point");
  add_point_options(voi_cmd, voi_args);
  voi_cmd->add_flag("--approx", voi_approx, "Add the regime approximations");
  add_common(voi_cmd, voi_common);

  PointArgs approx_args;
  auto *approx_cmd =
      app.add_subcommand("approx", "Exact VoI next to its approximations");
  add_point_options(approx_cmd, approx_args);
  add_common(approx_cmd, approx_common);

  std::string fig_id;
  GridArgs fig_grid;
  auto *fig_cmd = app.add_subcommand("fig", "Reproduce a figure data table");
  fig_cmd->add_option("id", fig_id, "2..8, low-snr")->required();
  add_grid_options(fig_cmd, fig_grid);
  add_common(fig_cmd, fig_common);

  GridArgs mm1_grid;
  std::string mm1_trace;
  auto *mm1_cmd = app.add_subcommand(
      "mm1", "Worst-case VoI density and CDF in an FCFS M/M/1 queue");
  add_grid_options(mm1_cmd, mm1_grid);
  mm1_cmd->add_option("--trace", mm1_trace,
                      "Also write the simulated timeline CSV here");
  add_common(mm1_cmd, mm1_common);

  GridArgs sweep_grid;
  std::string sweep_param;
  double sweep_from = 0.0, sweep_to = 0.0;
  std::size_t sweep_steps = 10;
  auto *sweep_cmd =
      app.add_subcommand("sweep", "Exact VoI and bounds over a 1-D sweep");
  add_grid_options(sweep_cmd, sweep_grid);
  sweep_cmd->add_option("--param", sweep_param, "Swept parameter")
      ->required()
      ->check(CLI::IsMember({"kappa", "noise_var", "dt", "lag", "m"}));
  sweep_cmd->add_option("--from", sweep_from, "First value")->required();
  sweep_cmd->add_option("--to", sweep_to, "Last value")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "Number of points")
      ->check(CLI::Range(1, 1000000));
  add_common(sweep_cmd, sweep_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "voi: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*voi_cmd) {
      emit(point_table(voi_args, voi_common, voi_approx), voi_common);
    } else if (*approx_cmd) {
      emit(point_table(approx_args, approx_common, true), approx_common);
    } else if (*fig_cmd) {
      if (fig_id == "custom" || fig_id == "mm1") {
        throw voi::invalid_argument("fig: unknown figure id " + fig_id);
      }
      auto spec = voi::figure_defaults(fig_id);
      apply_grid(fig_grid, spec);
      spec.seed = resolve_seed(fig_common);
      emit(voi::run_experiment(spec), fig_common);
    } else if (*mm1_cmd) {
      auto spec = voi::figure_defaults("mm1");
      apply_grid(mm1_grid, spec);
      require_stable(spec);
      spec.seed = resolve_seed(mm1_common);
      if (!mm1_trace.empty()) {
        std::ofstream os(mm1_trace);
        if (!os) {
          throw voi::invalid_argument("--trace: cannot open " + mm1_trace);
        }
        auto engine = voi::make_engine(spec.seed, 0);
        const auto trace = voi::simulate_fcfs(
            voi::Mm1Params(spec.rate.front(), spec.mu), spec.samples, engine);
        voi::write_timeline_csv(os, trace.timeline);
      }
      emit(voi::run_experiment(spec), mm1_common);
    } else if (*sweep_cmd) {
      auto spec = voi::figure_defaults("custom");
      apply_grid(sweep_grid, spec);
      spec.seed = resolve_seed(sweep_common);
      std::vector<double> values;
      for (std::size_t i = 0; i < sweep_steps; ++i) {
        values.push_back(sweep_steps == 1
                             ? sweep_from
                             : sweep_from + (sweep_to - sweep_from) *
                                                static_cast<double>(i) /
                                                static_cast<double>(
                                                    sweep_steps - 1));
      }
      if (sweep_param == "kappa") {
        spec.kappa = values;
      } else if (sweep_param == "noise_var") {
        spec.noise_var = values;
      } else if (sweep_param == "dt") {
        spec.dt = values;
      } else if (sweep_param == "lag") {
        spec.lag = values;
      } else {
        spec.m.clear();
        for (const double v : values) {
          if (!(v >= 1.0) || v != std::floor(v)) {
            throw voi::invalid_argument("--from/--to: m must be integers >= 1");
          }
          spec.m.push_back(static_cast<std::size_t>(v));
        }
      }
      emit(voi::run_experiment(spec), sweep_common);
    }
  } catch (const voi::numerical_error &e) {
    std::cerr << "voi: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const voi::invalid_argument &e) {
    std::cerr << "voi: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "voi: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}

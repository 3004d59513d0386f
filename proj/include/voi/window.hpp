#ifndef VOI_WINDOW_HPP_
#define VOI_WINDOW_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "voi/error.hpp"
#include "voi/gauss_markov.hpp"
#include "voi/random.hpp"

namespace voi {

// Two samples closer than this are treated as duplicates.
inline constexpr double kMinSampleSpacing = 1e-12;

/*
 * Generation times t_i and reception times t'_i of a sequence of status
 * updates. Reception is FCFS, so recv_times is nondecreasing.
 */
struct Timeline {
  std::vector<double> gen_times;
  std::vector<double> recv_times;

  std::size_t size() const noexcept { return gen_times.size(); }

  void validate() const {
    detail::require(gen_times.size() == recv_times.size(),
                    "Timeline: gen_times and recv_times differ in length");
    detail::require_increasing(gen_times, "Timeline");
    for (std::size_t i = 0; i < size(); ++i) {
      detail::require(std::isfinite(recv_times[i]) &&
                          recv_times[i] > gen_times[i],
                      "Timeline: reception must follow generation");
      if (i > 0) {
        detail::require(recv_times[i] >= recv_times[i - 1],
                        "Timeline: reception times must be nondecreasing");
      }
    }
  }

  // Number of updates with t'_i <= t. Reception at exactly t counts.
  std::size_t received_by(double t) const {
    return static_cast<std::size_t>(
        std::upper_bound(recv_times.begin(), recv_times.end(), t) -
        recv_times.begin());
  }
};

class NoiseModel {
public:
  explicit NoiseModel(double sigma_n2) : sigma_n2_(sigma_n2) {
    detail::require(std::isfinite(sigma_n2) && sigma_n2 >= 0.0,
                    "NoiseModel: noise variance must be finite and >= 0");
  }

  double variance() const noexcept { return sigma_n2_; }
  bool noiseless() const noexcept { return sigma_n2_ == 0.0; }

private:
  double sigma_n2_;
};

/*
 * The last m generation times t_{n-m+1} .. t_n available at the receiver,
 * with the sampling intervals T_i = t_{n-m+i} - t_{n-m+i-1} (i = 2..m) kept
 * explicitly. Observed values are optional: the closed-form VoI depends only
 * on the timestamps.
 */
class ObservationWindow {
public:
  explicit ObservationWindow(std::vector<double> gen_times,
                             std::optional<std::vector<double>> y_values = {})
      : gen_times_(std::move(gen_times)), y_values_(std::move(y_values)) {
    detail::require(!gen_times_.empty(),
                    "ObservationWindow: at least one sample required");
    detail::require_increasing(gen_times_, "ObservationWindow");
    intervals_.reserve(gen_times_.size() - 1);
    for (std::size_t i = 1; i < gen_times_.size(); ++i) {
      const double gap = gen_times_[i] - gen_times_[i - 1];
      detail::require(gap >= kMinSampleSpacing,
                      "ObservationWindow: duplicate sample times");
      intervals_.push_back(gap);
    }
    if (y_values_) {
      detail::require(y_values_->size() == gen_times_.size(),
                      "ObservationWindow: y_values length mismatch");
    }
  }

  // Window of the most recent m entries of gen_times.
  static ObservationWindow last_m(std::span<const double> gen_times,
                                  std::size_t m) {
    detail::require(m >= 1 && m <= gen_times.size(),
                    "ObservationWindow::last_m: need 1 <= m <= n");
    const auto tail = gen_times.subspan(gen_times.size() - m);
    return ObservationWindow(std::vector<double>(tail.begin(), tail.end()));
  }

  std::size_t size() const noexcept { return gen_times_.size(); }
  const std::vector<double> &gen_times() const noexcept { return gen_times_; }
  const std::vector<double> &intervals() const noexcept { return intervals_; }
  const std::optional<std::vector<double>> &y_values() const noexcept {
    return y_values_;
  }
  double last_time() const noexcept { return gen_times_.back(); }

  // True when every interval is bitwise identical (uniform sampling).
  bool is_uniform() const noexcept {
    return std::all_of(intervals_.begin(), intervals_.end(),
                       [&](double x) { return x == intervals_.front(); });
  }

private:
  std::vector<double> gen_times_;
  std::vector<double> intervals_;
  std::optional<std::vector<double>> y_values_;
};

// {dt, 2 dt, ..., n dt}
inline std::vector<double> uniform_timeline(double dt, std::size_t n) {
  detail::require(std::isfinite(dt) && dt > 0.0,
                  "uniform_timeline: dt must be > 0");
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) {
    times[i] = static_cast<double>(i + 1) * dt;
  }
  return times;
}

// Rate-lambda Poisson arrivals starting from time 0.
inline std::vector<double> poisson_timeline(double lambda, std::size_t n,
                                            Engine &engine) {
  detail::require(std::isfinite(lambda) && lambda > 0.0,
                  "poisson_timeline: lambda must be > 0");
  std::exponential_distribution<double> gap(lambda);
  std::vector<double> times(n);
  double t = 0.0;
  for (auto &x : times) {
    t += gap(engine);
    x = t;
  }
  return times;
}

inline std::vector<double> poisson_timeline(double lambda, std::size_t n,
                                            std::uint64_t seed) {
  auto engine = make_engine(seed);
  return poisson_timeline(lambda, n, engine);
}

// Y_i = X_i + N_i with N_i i.i.d. N(0, sigma_n^2).
inline std::vector<double> observe(std::span<const double> x_values,
                                   const NoiseModel &noise, Engine &engine) {
  std::vector<double> y(x_values.begin(), x_values.end());
  if (noise.noiseless()) {
    return y;
  }
  std::normal_distribution<double> normal(0.0, std::sqrt(noise.variance()));
  for (auto &v : y) {
    v += normal(engine);
  }
  return y;
}

inline std::vector<double> observe(std::span<const double> x_values,
                                   const NoiseModel &noise,
                                   std::uint64_t seed) {
  auto engine = make_engine(seed);
  return observe(x_values, noise, engine);
}

// Delta(t) = t - u(t), u(t) the generation time of the latest update
// received at or before t.
inline double age_of_information(const Timeline &tl, double t) {
  const std::size_t k = tl.received_by(t);
  if (k == 0) {
    throw invalid_argument(
        "age_of_information: no update received before the query time");
  }
  return t - tl.gen_times[k - 1];
}

// Window of the last m updates received at or before t.
inline ObservationWindow received_window(const Timeline &tl, double t,
                                         std::size_t m) {
  const std::size_t n = tl.received_by(t);
  detail::require(n >= m && m >= 1,
                  "received_window: fewer than m updates received");
  return ObservationWindow::last_m(std::span(tl.gen_times).first(n), m);
}

namespace detail {

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view field) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '"')) {
    field.remove_prefix(1);
  }
  while (!field.empty() && (field.back() == ' ' || field.back() == '"' ||
                            field.back() == '\r')) {
    field.remove_suffix(1);
  }
  double value = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), value);
  require(res.ec == std::errc() && res.ptr == field.data() + field.size(),
          "CSV: cannot parse number '" + std::string(field) + "'");
  return value;
}

} // namespace detail

// CSV with header "index,gen_time,recv_time"; index is 1-based.
inline void write_timeline_csv(std::ostream &os, const Timeline &tl) {
  os << "index,gen_time,recv_time\n";
  for (std::size_t i = 0; i < tl.size(); ++i) {
    os << (i + 1) << ',' << detail::format_double(tl.gen_times[i]) << ','
       << detail::format_double(tl.recv_times[i]) << '\n';
  }
}

inline Timeline read_timeline_csv(std::istream &is) {
  std::string line;
  detail::require(static_cast<bool>(std::getline(is, line)),
                  "timeline CSV: missing header");
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  detail::require(line == "index,gen_time,recv_time",
                  "timeline CSV: expected header index,gen_time,recv_time");
  Timeline tl;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") {
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    detail::require(fields.size() == 3,
                    "timeline CSV: expected 3 columns per row");
    tl.gen_times.push_back(detail::parse_double(fields[1]));
    tl.recv_times.push_back(detail::parse_double(fields[2]));
  }
  tl.validate();
  return tl;
}

} // namespace voi

#endif // VOI_WINDOW_HPP_

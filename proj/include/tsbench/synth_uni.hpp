#pragma once

// Univariate generators for the seven single-channel feature families, plus
// the dataset assembler. Every generator is a pure function of its arguments
// and the supplied Rng; datasets derive one seed per sample so regeneration
// is byte-identical for a given base seed.

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsbench/core.hpp"
#include "tsbench/describe.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/stats.hpp"

namespace tsbench {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultBaseSeed = 20240614;

struct GenConfig {
  int length_min = 30;
  int length_max = 150;
  std::uint64_t base_seed = kDefaultBaseSeed;
  std::optional<double> noise_std;  // override of the family default
};

struct SplitSizes {
  std::size_t train = 5000;
  std::size_t validation = 2000;
  std::size_t test = 200;
};

namespace detail {

// Start dates are drawn uniformly over calendar years 2020-2024.
inline Date draw_start_date(Rng& rng) {
  const Date lo = make_date(2020, 1, 1);
  const Date hi = make_date(2024, 12, 31);
  const long span = days_between(lo, hi);
  return add_days(lo, rng.uniform_int(0, span));
}

inline AnnotatedSample make_sample(DatasetKind kind, Feature feature,
                                   std::string sub, TimeSeries ts,
                                   std::map<std::string, double> params) {
  AnnotatedSample s;
  s.dataset_kind = kind;
  s.series = std::move(ts);
  s.label.feature = feature;
  s.label.sub_feature = std::move(sub);
  s.label.params = std::move(params);
  attach_descriptions(s);
  return s;
}

// Bounded baseline noise shared by the anomaly and control generators.
// Uniform support means a spike of >= 5 theoretical standard deviations is
// the global extremum with certainty, and differenced z-scores of a clean
// baseline never reach 3.
struct Baseline {
  double level = 0;
  double half_width = 0;  // noise is uniform on [-half_width, half_width]
  double sigma() const { return half_width / std::sqrt(3.0); }
};

inline Baseline draw_baseline(Rng& rng) {
  Baseline b;
  b.level = rng.uniform(100.0, 110.0);
  b.half_width = rng.uniform(0.5, 2.0);
  return b;
}

inline std::vector<double> baseline_values(const Baseline& b, int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = b.level + rng.uniform(-b.half_width, b.half_width);
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Trend
// ---------------------------------------------------------------------------

enum class TrendDirection { up, down };
enum class TrendKind { linear, quadratic };

struct TrendParams {
  std::optional<double> a, b, c;
};

inline AnnotatedSample gen_trend(TrendDirection dir, TrendKind kind, int n,
                                 const TrendParams& over, Rng& rng,
                                 double noise_std = 0.0) {
  if (n < 4) throw GenerationError("gen_trend: length must be >= 4");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  std::map<std::string, double> params;
  const double sign = dir == TrendDirection::up ? 1.0 : -1.0;

  // Overrides are magnitudes; the direction supplies the sign.
  if (kind == TrendKind::linear) {
    const double a = sign * over.a.value_or(rng.uniform(0.1, 1.0));
    const double b = over.b.value_or(rng.uniform(100.0, 110.0));
    for (int t = 0; t < n; ++t) {
      double v = a * t + b;
      if (noise_std > 0) v += rng.normal(0.0, noise_std);
      ts.values.push_back(v);
    }
    params = {{"a", a}, {"b", b}};
  } else {
    const double a = sign * over.a.value_or(rng.uniform(0.01, 0.05));
    const double b = over.b.value_or(rng.uniform(0.0, 1.0));
    const double c = over.c.value_or(rng.uniform(0.0, 10.0));
    for (int t = 0; t < n; ++t) {
      double v = a * t * t + b * t + c;
      if (noise_std > 0) v += rng.normal(0.0, noise_std);
      ts.values.push_back(v);
    }
    // Downward parabolas can dive below zero; shift so the minimum is zero.
    const double lo = *std::min_element(ts.values.begin(), ts.values.end());
    double shift = 0.0;
    if (lo < 0) {
      shift = -lo;
      for (auto& v : ts.values) v += shift;
    }
    params = {{"a", a}, {"b", b}, {"c", c}, {"shift", shift}};
  }
  params["noise_std"] = noise_std;

  const std::string sub = std::string(dir == TrendDirection::up ? "up" : "down") +
                          (kind == TrendKind::linear ? ".linear" : ".quadratic");
  return detail::make_sample(DatasetKind::trend, Feature::Trend, sub,
                             std::move(ts), std::move(params));
}

// ---------------------------------------------------------------------------
// Seasonality
// ---------------------------------------------------------------------------

enum class SeasonPattern { fixed, varying_amplitude, shifting_period, multiple };

struct SeasonParams {
  std::optional<double> period;     // base period
  std::optional<double> amplitude;
  std::optional<double> offset;
  std::optional<double> phase;
};

// Construction kernel: amplitude * sin(2*pi*t/period + phase).
inline std::vector<double> sine_wave(int n, double period, double amplitude,
                                     double phase = 0.0) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    v[static_cast<std::size_t>(t)] =
        amplitude * std::sin(2.0 * std::numbers::pi * t / period + phase);
  }
  return v;
}

inline AnnotatedSample gen_seasonality(SeasonPattern pattern, int n, Rng& rng,
                                       const SeasonParams& over = {},
                                       std::optional<double> noise_over = {}) {
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  std::map<std::string, double> params;

  const double offset = over.offset.value_or(rng.uniform(100.0, 110.0));
  const double amp = over.amplitude.value_or(rng.uniform(10.0, 50.0));
  const double phase = over.phase.value_or(rng.uniform(0.0, 2.0 * std::numbers::pi));
  const double noise = noise_over.value_or(0.05 * amp);

  auto draw_period = [&]() -> double {
    if (over.period) return *over.period;
    // The monthly period needs two full cycles to fit.
    return (n >= 60 && rng.coin()) ? 30.0 : 7.0;
  };

  std::string sub;
  switch (pattern) {
    case SeasonPattern::fixed: {
      const double p = draw_period();
      if (n < 2 * p) {
        throw GenerationError("gen_seasonality: series too short for period");
      }
      ts.values = sine_wave(n, p, amp, phase);
      params = {{"period", p}, {"amplitude", amp}, {"offset", offset},
                {"phase", phase}};
      sub = "fixed";
      break;
    }
    case SeasonPattern::varying_amplitude: {
      const double p = draw_period();
      if (n < 2 * p) {
        throw GenerationError("gen_seasonality: series too short for period");
      }
      // Amplitude ramps linearly between its start and end values.
      const double ratio = rng.uniform(2.0, 4.0);
      const bool growing = rng.coin();
      const double a0 = growing ? amp / ratio : amp;
      const double a1 = growing ? amp : amp / ratio;
      ts.values.resize(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) {
        const double at = a0 + (a1 - a0) * t / std::max(1, n - 1);
        ts.values[static_cast<std::size_t>(t)] =
            at * std::sin(2.0 * std::numbers::pi * t / p + phase);
      }
      params = {{"period", p}, {"amplitude_start", a0}, {"amplitude_end", a1},
                {"offset", offset}, {"phase", phase}};
      sub = "varying_amplitude";
      break;
    }
    case SeasonPattern::shifting_period: {
      const double p0 = draw_period();
      if (n < 2 * p0) {
        throw GenerationError("gen_seasonality: series too short for period");
      }
      // Instantaneous period drifts linearly; phase accumulates.
      const double drift = rng.uniform(0.3, 0.6) * (rng.coin() ? 1.0 : -1.0);
      const double p1 = p0 * (1.0 + drift);
      ts.values.resize(static_cast<std::size_t>(n));
      double acc = phase;
      for (int t = 0; t < n; ++t) {
        const double pt = p0 + (p1 - p0) * t / std::max(1, n - 1);
        ts.values[static_cast<std::size_t>(t)] = amp * std::sin(acc);
        acc += 2.0 * std::numbers::pi / pt;
      }
      params = {{"period_start", p0}, {"period_end", p1}, {"amplitude", amp},
                {"offset", offset}, {"phase", phase}};
      sub = "shifting_period";
      break;
    }
    case SeasonPattern::multiple: {
      const double p1 = over.period.value_or(7.0);
      const double p2 = 30.0;
      if (n < 2 * p2) {
        throw GenerationError("gen_seasonality: series too short for period");
      }
      const double amp2 = amp;
      const double amp1 = amp * rng.uniform(0.3, 0.6);
      const auto w1 = sine_wave(n, p1, amp1, phase);
      const auto w2 = sine_wave(n, p2, amp2, rng.uniform(0.0, 2.0 * std::numbers::pi));
      ts.values.resize(static_cast<std::size_t>(n));
      for (int t = 0; t < n; ++t) {
        ts.values[static_cast<std::size_t>(t)] =
            w1[static_cast<std::size_t>(t)] + w2[static_cast<std::size_t>(t)];
      }
      params = {{"period", p1}, {"period2", p2}, {"amplitude", amp1},
                {"amplitude2", amp2}, {"offset", offset}};
      sub = "multiple";
      break;
    }
  }

  for (auto& v : ts.values) {
    v += offset;
    if (noise > 0) v += rng.normal(0.0, noise);
  }
  params["noise_std"] = noise;
  return detail::make_sample(DatasetKind::seasonality, Feature::Seasonality,
                             sub, std::move(ts), std::move(params));
}

// ---------------------------------------------------------------------------
// Anomalies
// ---------------------------------------------------------------------------

enum class AnomalyKind {
  none,
  spike1,
  spike2,
  spike3,
  step_spike,
  level_shift,
  temporal_disruption,
};

inline AnnotatedSample gen_anomaly(AnomalyKind kind, int n, Rng& rng) {
  if (n < 10) throw GenerationError("gen_anomaly: length must be >= 10");
  const detail::Baseline base = detail::draw_baseline(rng);
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values = detail::baseline_values(base, n, rng);
  std::map<std::string, double> params = {{"baseline.level", base.level},
                                          {"baseline.noise_std", base.sigma()}};
  std::string sub = "none";

  // Spike and shift magnitudes are at least five baseline standard
  // deviations, which puts them strictly outside the bounded noise band and
  // makes the ground truth unambiguous.
  auto draw_magnitude = [&]() {
    const double sign = rng.coin() ? 1.0 : -1.0;
    return sign * rng.uniform(5.0, 10.0) * base.sigma();
  };
  auto draw_window = [&](int len) {
    return static_cast<int>(rng.uniform_int(0, n - len));
  };

  switch (kind) {
    case AnomalyKind::none:
      break;
    case AnomalyKind::spike1:
    case AnomalyKind::spike2:
    case AnomalyKind::spike3: {
      const int count = kind == AnomalyKind::spike1   ? 1
                        : kind == AnomalyKind::spike2 ? 2
                                                      : 3;
      if (count > n) throw GenerationError("gen_anomaly: window longer than series");
      const double m = draw_magnitude();
      const int start = draw_window(count);
      for (int i = 0; i < count; ++i) {
        ts.values[static_cast<std::size_t>(start + i)] += m;
      }
      params["spike.index"] = start;
      params["spike.count"] = count;
      params["spike.magnitude"] = m;
      sub = count == 1 ? "spike1" : count == 2 ? "spike2" : "spike3";
      break;
    }
    case AnomalyKind::step_spike: {
      const int len = static_cast<int>(rng.uniform_int(3, std::max(3, n / 5)));
      if (len >= n) throw GenerationError("gen_anomaly: window longer than series");
      const int start = draw_window(len);
      const double m = draw_magnitude();
      for (int i = 0; i < len; ++i) {
        ts.values[static_cast<std::size_t>(start + i)] += m;
      }
      params["window.start"] = start;
      params["window.length"] = len;
      params["window.offset"] = m;
      sub = "step_spike";
      break;
    }
    case AnomalyKind::level_shift: {
      const int k = static_cast<int>(rng.uniform_int(n / 4, 3 * n / 4));
      const double d = draw_magnitude();
      for (int t = k; t < n; ++t) ts.values[static_cast<std::size_t>(t)] += d;
      params["shift.index"] = k;
      params["shift.offset"] = d;
      sub = "level_shift";
      break;
    }
    case AnomalyKind::temporal_disruption: {
      const int len = static_cast<int>(rng.uniform_int(3, std::max(3, n / 5)));
      if (len >= n) throw GenerationError("gen_anomaly: window longer than series");
      const int start = draw_window(len);
      for (int i = 0; i < len; ++i) {
        ts.values[static_cast<std::size_t>(start + i)] = kMissingValue;
      }
      params["window.start"] = start;
      params["window.length"] = len;
      sub = "temporal_disruption";
      break;
    }
  }

  return detail::make_sample(DatasetKind::anomaly, Feature::Anomaly, sub,
                             std::move(ts), std::move(params));
}

// ---------------------------------------------------------------------------
// Structural breaks
// ---------------------------------------------------------------------------

enum class BreakFamily { parameter_shift, regime_shift, none };

enum class BreakVariant {
  // parameter shifts
  mean,
  variance,
  mean_variance,
  seasonal_amplitude,
  autocorrelation,
  // regime shifts
  distribution,
  stationarity,
  linearity,
  frequency,
  noise_trend,
  error_correlation,
  variance_type,
};

inline AnnotatedSample gen_structural_break(BreakFamily family,
                                            BreakVariant variant, int n,
                                            Rng& rng) {
  if (n < 20) throw GenerationError("gen_structural_break: length must be >= 20");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values.resize(static_cast<std::size_t>(n));
  const int k = static_cast<int>(rng.uniform_int(n / 4, 3 * n / 4));
  const double level = rng.uniform(100.0, 110.0);
  std::map<std::string, double> params = {{"break_index", static_cast<double>(k)},
                                          {"level", level}};
  std::string sub = "none";
  auto& v = ts.values;

  if (family == BreakFamily::none) {
    for (int t = 0; t < n; ++t) {
      v[static_cast<std::size_t>(t)] = level + rng.normal();
    }
    return detail::make_sample(DatasetKind::structural_break,
                               Feature::StructuralBreak, "none", std::move(ts),
                               std::move(params));
  }

  if (family == BreakFamily::parameter_shift) {
    switch (variant) {
      case BreakVariant::mean: {
        const double delta =
            (rng.coin() ? 1.0 : -1.0) * rng.uniform(3.0, 8.0);
        for (int t = 0; t < n; ++t) {
          v[static_cast<std::size_t>(t)] =
              level + (t >= k ? delta : 0.0) + rng.normal();
        }
        params["mean_delta"] = delta;
        sub = "parameter_shift.mean";
        break;
      }
      case BreakVariant::variance: {
        const double ratio = rng.uniform(3.0, 5.0);
        for (int t = 0; t < n; ++t) {
          v[static_cast<std::size_t>(t)] =
              level + rng.normal() * (t >= k ? ratio : 1.0);
        }
        params["sigma_ratio"] = ratio;
        sub = "parameter_shift.variance";
        break;
      }
      case BreakVariant::mean_variance: {
        const double delta =
            (rng.coin() ? 1.0 : -1.0) * rng.uniform(3.0, 8.0);
        const double ratio = rng.uniform(3.0, 5.0);
        for (int t = 0; t < n; ++t) {
          const bool post = t >= k;
          v[static_cast<std::size_t>(t)] =
              level + (post ? delta : 0.0) + rng.normal() * (post ? ratio : 1.0);
        }
        params["mean_delta"] = delta;
        params["sigma_ratio"] = ratio;
        sub = "parameter_shift.mean_variance";
        break;
      }
      case BreakVariant::seasonal_amplitude: {
        const double p = 7.0;
        const double a = rng.uniform(3.0, 8.0);
        const double factor = rng.uniform(2.0, 4.0);
        for (int t = 0; t < n; ++t) {
          const double at = t >= k ? a * factor : a;
          v[static_cast<std::size_t>(t)] =
              level + at * std::sin(2.0 * std::numbers::pi * t / p) + 0.3 * rng.normal();
        }
        params["period"] = p;
        params["amplitude"] = a;
        params["amplitude_factor"] = factor;
        sub = "parameter_shift.seasonal_amplitude";
        break;
      }
      case BreakVariant::autocorrelation: {
        const double phi1 = 0.1, phi2 = 0.9;
        double x = 0;
        for (int t = 0; t < n; ++t) {
          const double phi = t >= k ? phi2 : phi1;
          x = phi * x + rng.normal();
          v[static_cast<std::size_t>(t)] = level + x;
        }
        params["phi_pre"] = phi1;
        params["phi_post"] = phi2;
        sub = "parameter_shift.autocorrelation";
        break;
      }
      default:
        throw GenerationError("gen_structural_break: variant not a parameter shift");
    }
  } else {
    switch (variant) {
      case BreakVariant::distribution: {
        // Gaussian errors switch to centred exponential ones.
        for (int t = 0; t < n; ++t) {
          const double e =
              t >= k ? rng.exponential(0.5) - 2.0 : rng.normal();
          v[static_cast<std::size_t>(t)] = level + e;
        }
        sub = "regime_shift.distribution";
        break;
      }
      case BreakVariant::stationarity: {
        double walk = 0;
        for (int t = 0; t < n; ++t) {
          if (t >= k) walk += rng.normal();
          v[static_cast<std::size_t>(t)] = level + (t >= k ? walk : rng.normal());
        }
        sub = "regime_shift.stationarity";
        break;
      }
      case BreakVariant::linearity: {
        const double slope = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.2, 0.6);
        const double curv = std::copysign(rng.uniform(0.02, 0.06), slope);
        for (int t = 0; t < n; ++t) {
          const double lin = slope * t;
          const double extra =
              t >= k ? curv * (t - k) * (t - k) : 0.0;
          v[static_cast<std::size_t>(t)] = level + lin + extra + rng.normal();
        }
        params["slope"] = slope;
        params["curvature"] = curv;
        sub = "regime_shift.linearity";
        break;
      }
      case BreakVariant::frequency: {
        const double a = rng.uniform(4.0, 8.0);
        for (int t = 0; t < n; ++t) {
          const double p = t >= k ? 7.0 : 30.0;
          v[static_cast<std::size_t>(t)] =
              level + a * std::sin(2.0 * std::numbers::pi * t / p) + 0.3 * rng.normal();
        }
        params["amplitude"] = a;
        sub = "regime_shift.frequency";
        break;
      }
      case BreakVariant::noise_trend: {
        const double slope = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.3, 0.8);
        for (int t = 0; t < n; ++t) {
          v[static_cast<std::size_t>(t)] =
              level + (t >= k ? slope * (t - k) : 0.0) + rng.normal();
        }
        params["slope"] = slope;
        sub = "regime_shift.noise_trend";
        break;
      }
      case BreakVariant::error_correlation: {
        double x = 0;
        for (int t = 0; t < n; ++t) {
          if (t >= k) {
            x = 0.8 * x + rng.normal();
          } else {
            x = rng.normal();
          }
          v[static_cast<std::size_t>(t)] = level + x;
        }
        sub = "regime_shift.error_correlation";
        break;
      }
      case BreakVariant::variance_type: {
        // Homoskedastic noise switches to GARCH-style clustered noise.
        double sigma2 = 1.0;
        double r = 0.0;
        for (int t = 0; t < n; ++t) {
          if (t >= k) {
            sigma2 = 0.2 + 0.2 * r * r + 0.6 * sigma2;
            r = std::sqrt(sigma2) * rng.normal() * 2.0;
            v[static_cast<std::size_t>(t)] = level + r;
          } else {
            v[static_cast<std::size_t>(t)] = level + rng.normal();
          }
        }
        sub = "regime_shift.variance_type";
        break;
      }
      default:
        throw GenerationError("gen_structural_break: variant not a regime shift");
    }
  }

  return detail::make_sample(DatasetKind::structural_break,
                             Feature::StructuralBreak, sub, std::move(ts),
                             std::move(params));
}

// ---------------------------------------------------------------------------
// Volatility
// ---------------------------------------------------------------------------

enum class VolatilityMode { constant, increasing, clustered_garch, leverage };

struct GarchParams {
  double omega = 0.1;
  double alpha = 0.2;
  double beta = 0.7;
};

struct GarchPath {
  std::vector<double> sigma2;   // conditional variances, sigma2[0] = omega/(1-a-b)
  std::vector<double> returns;  // r_t = sigma_t * eps_t
};

// sigma_t^2 = omega + alpha * r_{t-1}^2 + beta * sigma_{t-1}^2. The variance
// recursion starts at its unconditional value so there is no burn-in bias.
inline GarchPath garch_path(std::size_t n, const GarchParams& p,
                            const std::function<double()>& noise) {
  GarchPath out;
  out.sigma2.reserve(n);
  out.returns.reserve(n);
  double s2 = p.omega / (1.0 - p.alpha - p.beta);
  double r = std::sqrt(s2) * noise();
  out.sigma2.push_back(s2);
  out.returns.push_back(r);
  for (std::size_t t = 1; t < n; ++t) {
    s2 = p.omega + p.alpha * r * r + p.beta * s2;
    r = std::sqrt(s2) * noise();
    out.sigma2.push_back(s2);
    out.returns.push_back(r);
  }
  return out;
}

struct LeverageParams {
  double sigma0 = 0.1;
  double strength = 0.3;
  double floor = 0.01;
};

struct LeveragePath {
  std::vector<double> sigma;    // n + 1 entries, sigma[0] = sigma0
  std::vector<double> returns;  // r_t = sigma_{t-1} * eps_t
};

// Volatility multiplies by (1 + strength) after a negative return and decays
// by (1 - strength) after a non-negative one, floored at 0.01.
inline LeveragePath leverage_path(std::size_t n, const LeverageParams& p,
                                  const std::function<double()>& noise) {
  LeveragePath out;
  out.sigma.reserve(n + 1);
  out.returns.reserve(n);
  out.sigma.push_back(p.sigma0);
  for (std::size_t t = 0; t < n; ++t) {
    const double s = out.sigma.back();
    const double r = s * noise();
    out.returns.push_back(r);
    out.sigma.push_back(r < 0 ? s * (1.0 + p.strength)
                              : std::max(s * (1.0 - p.strength), p.floor));
  }
  return out;
}

inline AnnotatedSample gen_volatility(VolatilityMode mode, int n, Rng& rng) {
  if (n < 30) throw GenerationError("gen_volatility: length must be >= 30");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  std::map<std::string, double> params;
  std::string sub;
  auto noise = [&rng]() { return rng.normal(); };

  switch (mode) {
    case VolatilityMode::constant: {
      // Cumulative sum of white noise plus unit-variance observation noise.
      double acc = 0;
      for (int t = 0; t < n; ++t) {
        acc += rng.normal();
        ts.values.push_back(acc + rng.normal());
      }
      params["noise_std"] = 1.0;
      sub = "constant";
      break;
    }
    case VolatilityMode::increasing: {
      const double sigma0 = rng.uniform(0.5, 1.5);
      for (int t = 0; t < n; ++t) {
        const double st = sigma0 * (1.0 + 5.0 * t / n);
        ts.values.push_back(rng.normal() * st);
      }
      params["sigma0"] = sigma0;
      params["scale_max"] = 5.0;
      sub = "increasing";
      break;
    }
    case VolatilityMode::clustered_garch: {
      const GarchParams gp;
      const GarchPath path = garch_path(static_cast<std::size_t>(n), gp, noise);
      ts.values = path.returns;
      params["omega"] = gp.omega;
      params["alpha"] = gp.alpha;
      params["beta"] = gp.beta;
      sub = "clustered_garch";
      break;
    }
    case VolatilityMode::leverage: {
      const LeverageParams lp;
      const LeveragePath path =
          leverage_path(static_cast<std::size_t>(n), lp, noise);
      ts.values = path.returns;
      params["sigma0"] = lp.sigma0;
      params["leverage_strength"] = lp.strength;
      params["floor"] = lp.floor;
      sub = "leverage";
      break;
    }
  }

  // The emitted channel is the absolute value of the generated noise, so
  // volatility series are non-negative.
  for (auto& v : ts.values) v = std::fabs(v);

  return detail::make_sample(DatasetKind::volatility, Feature::Volatility, sub,
                             std::move(ts), std::move(params));
}

// ---------------------------------------------------------------------------
// Statistical properties (fat tails, stationarity)
// ---------------------------------------------------------------------------

enum class StatKind {
  fat_tailed,
  thin_tailed,
  stationary,
  nonstat_mean,
  nonstat_variance,
  nonstat_seasonal,
  nonstat_trend_seasonal,
};

inline AnnotatedSample gen_stat_properties(StatKind kind, int n, Rng& rng) {
  if (n < 30) throw GenerationError("gen_stat_properties: length must be >= 30");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values.resize(static_cast<std::size_t>(n));
  std::map<std::string, double> params;
  std::string sub;
  auto& v = ts.values;

  switch (kind) {
    case StatKind::fat_tailed: {
      const double nu = rng.uniform(2.5, 4.0);
      for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] = rng.student_t(nu);
      params["nu"] = nu;
      sub = "fat_tailed";
      break;
    }
    case StatKind::thin_tailed: {
      for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] = rng.normal();
      sub = "thin_tailed";
      break;
    }
    case StatKind::stationary: {
      for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] = rng.normal();
      sub = "stationary";
      break;
    }
    case StatKind::nonstat_mean: {
      const double slope = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.3, 1.0);
      for (int t = 0; t < n; ++t) {
        v[static_cast<std::size_t>(t)] = slope * t + rng.normal();
      }
      params["slope"] = slope;
      sub = "nonstat_mean";
      break;
    }
    case StatKind::nonstat_variance: {
      const double growth = rng.uniform(3.0, 6.0);
      for (int t = 0; t < n; ++t) {
        const double st = 1.0 + growth * t / n;
        v[static_cast<std::size_t>(t)] = rng.normal() * st;
      }
      params["sigma_growth"] = growth;
      sub = "nonstat_variance";
      break;
    }
    case StatKind::nonstat_seasonal: {
      const double p = n >= 60 && rng.coin() ? 30.0 : 7.0;
      const double a = rng.uniform(5.0, 20.0);
      for (int t = 0; t < n; ++t) {
        v[static_cast<std::size_t>(t)] =
            a * std::sin(2.0 * std::numbers::pi * t / p) + rng.normal();
      }
      params["period"] = p;
      params["amplitude"] = a;
      sub = "nonstat_seasonal";
      break;
    }
    case StatKind::nonstat_trend_seasonal: {
      const double slope = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.3, 1.0);
      const double p = n >= 60 && rng.coin() ? 30.0 : 7.0;
      const double a = rng.uniform(5.0, 20.0);
      for (int t = 0; t < n; ++t) {
        v[static_cast<std::size_t>(t)] =
            slope * t + a * std::sin(2.0 * std::numbers::pi * t / p) + rng.normal();
      }
      params["slope"] = slope;
      params["period"] = p;
      params["amplitude"] = a;
      sub = "nonstat_trend_seasonal";
      break;
    }
  }

  const DatasetKind dk =
      (kind == StatKind::fat_tailed || kind == StatKind::thin_tailed)
          ? DatasetKind::fat_tails
          : DatasetKind::stationarity;
  const Feature f = dk == DatasetKind::fat_tails ? Feature::FatTails
                                                 : Feature::Stationarity;
  return detail::make_sample(dk, f, sub, std::move(ts), std::move(params));
}

// "no feature" control for the detection datasets: a level plus bounded noise.
inline AnnotatedSample gen_feature_control(DatasetKind kind, int n, Rng& rng) {
  const detail::Baseline base = detail::draw_baseline(rng);
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values = detail::baseline_values(base, n, rng);
  std::map<std::string, double> params = {{"baseline.level", base.level},
                                          {"baseline.noise_std", base.sigma()}};
  return detail::make_sample(kind, feature_of(kind), "none", std::move(ts),
                             std::move(params));
}

}  // namespace tsbench

#pragma once

// Two-channel generators: pointwise correlation, lagged cross-correlation and
// correlation confined to one half of the series. Channels are Gaussian with
// a shared component (y = rho * x + sqrt(1 - rho^2) * z), mapped through the
// same affine transform so realized sample correlations equal the target.

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "tsbench/core.hpp"
#include "tsbench/describe.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/synth_uni.hpp"

namespace tsbench {

enum class DccRegime { whole, first_half, second_half };

// Target relationship of a generated pair; dispatched by gen_pair below.
struct PairSpec {
  double rho = 0.0;   // 0 means independent channels
  int lag = 0;
  DccRegime regime = DccRegime::whole;
};

namespace detail {

// One shared affine map: correlations are unchanged and a rho of exactly 1
// leaves the channels identical.
inline void scale_pair(TimeSeries& ts, Rng& rng) {
  const double level = rng.uniform(100.0, 110.0);
  for (auto& v : ts.values) v = level + 10.0 * v;
  for (auto& v : ts.values2) v = level + 10.0 * v;
}

}  // namespace detail

inline AnnotatedSample gen_correlated_pair(double rho, int n, Rng& rng) {
  if (std::fabs(rho) > 1.0) {
    throw std::domain_error("gen_correlated_pair: |rho| must be <= 1");
  }
  if (n < 30) throw GenerationError("gen_correlated_pair: length must be >= 30");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values.resize(static_cast<std::size_t>(n));
  ts.values2.resize(static_cast<std::size_t>(n));
  const double mix = std::sqrt(1.0 - rho * rho);
  for (int t = 0; t < n; ++t) {
    const double x = rng.normal();
    const double z = rng.normal();
    ts.values[static_cast<std::size_t>(t)] = x;
    ts.values2[static_cast<std::size_t>(t)] = rho * x + mix * z;
  }
  detail::scale_pair(ts, rng);
  const std::string sub = rho > 0 ? "positive" : rho < 0 ? "negative" : "none";
  return detail::make_sample(DatasetKind::correlation, Feature::Correlation,
                             sub, std::move(ts), {{"rho", rho}});
}

inline AnnotatedSample gen_cross_correlated_pair(double rho, int lag, int n,
                                                 Rng& rng) {
  if (std::fabs(rho) > 1.0) {
    throw std::domain_error("gen_cross_correlated_pair: |rho| must be <= 1");
  }
  if (lag < 0 || (lag > 0 && lag >= n / 4)) {
    throw std::domain_error("gen_cross_correlated_pair: lag must be in [0, n/4)");
  }
  if (n < 30) {
    throw GenerationError("gen_cross_correlated_pair: length must be >= 30");
  }
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values.resize(static_cast<std::size_t>(n));
  ts.values2.resize(static_cast<std::size_t>(n));
  // Channel 1 is extended lag steps into the past so every y_t has a partner.
  std::vector<double> x(static_cast<std::size_t>(n + lag));
  for (auto& e : x) e = rng.normal();
  const double mix = std::sqrt(1.0 - rho * rho);
  for (int t = 0; t < n; ++t) {
    ts.values[static_cast<std::size_t>(t)] = x[static_cast<std::size_t>(t + lag)];
    ts.values2[static_cast<std::size_t>(t)] =
        rho * x[static_cast<std::size_t>(t)] + mix * rng.normal();
  }
  detail::scale_pair(ts, rng);
  std::string sub;
  if (rho == 0) {
    sub = "none";
  } else if (rho > 0) {
    sub = lag > 0 ? "direct_lagged" : "direct";
  } else {
    sub = lag > 0 ? "inverse_lagged" : "inverse";
  }
  return detail::make_sample(DatasetKind::cross_correlation,
                             Feature::CrossCorrelation, sub, std::move(ts),
                             {{"rho", rho}, {"lag", static_cast<double>(lag)}});
}

inline AnnotatedSample gen_dcc_pair(DccRegime regime, double rho, int n,
                                    Rng& rng) {
  if (std::fabs(rho) > 1.0) {
    throw std::domain_error("gen_dcc_pair: |rho| must be <= 1");
  }
  if (n < 40) throw GenerationError("gen_dcc_pair: length must be >= 40");
  TimeSeries ts;
  ts.start_date = detail::draw_start_date(rng);
  ts.values.resize(static_cast<std::size_t>(n));
  ts.values2.resize(static_cast<std::size_t>(n));
  // The switch lands in the middle fifth so both halves stay measurable.
  const int k = static_cast<int>(
      rng.uniform_int(static_cast<std::int64_t>(0.4 * n),
                      static_cast<std::int64_t>(0.6 * n)));
  const double mix = std::sqrt(1.0 - rho * rho);
  for (int t = 0; t < n; ++t) {
    const double x = rng.normal();
    const double z = rng.normal();
    const bool correlated = regime == DccRegime::whole ||
                            (regime == DccRegime::first_half ? t < k : t >= k);
    ts.values[static_cast<std::size_t>(t)] = x;
    ts.values2[static_cast<std::size_t>(t)] =
        (correlated && rho != 0) ? rho * x + mix * z : z;
  }
  detail::scale_pair(ts, rng);
  std::string sub = "none";
  if (rho != 0 && regime != DccRegime::whole) {
    sub = std::string(regime == DccRegime::first_half ? "first_half"
                                                      : "second_half") +
          (rho > 0 ? ".positive" : ".negative");
  }
  return detail::make_sample(
      DatasetKind::dynamic_correlation, Feature::DynamicCorrelation, sub,
      std::move(ts), {{"rho", rho}, {"switch_index", static_cast<double>(k)}});
}

inline AnnotatedSample gen_pair(const PairSpec& spec, int n, Rng& rng) {
  if (spec.regime != DccRegime::whole) {
    return gen_dcc_pair(spec.regime, spec.rho, n, rng);
  }
  if (spec.lag > 0) return gen_cross_correlated_pair(spec.rho, spec.lag, n, rng);
  return gen_correlated_pair(spec.rho, n, rng);
}

}  // namespace tsbench

#pragma once

// Dataset assembly. Each taxonomy dataset balances its class roster
// round-robin (control classes included) across every split; sample i of a
// dataset is a pure function of (base_seed, dataset kind, i), so generation
// order and scheduling cannot change the output.

#include <string>
#include <vector>

#include "tsbench/core.hpp"
#include "tsbench/synth_multi.hpp"
#include "tsbench/synth_quadrant.hpp"
#include "tsbench/synth_uni.hpp"

namespace tsbench {

namespace detail {

// One balanced class slot of a taxonomy dataset.
inline AnnotatedSample gen_class_sample(DatasetKind kind, std::size_t class_ix,
                                        int n, Rng& rng) {
  switch (kind) {
    case DatasetKind::trend: {
      switch (class_ix) {
        case 0: return gen_trend(TrendDirection::up, TrendKind::linear, n, {}, rng);
        case 1: return gen_trend(TrendDirection::down, TrendKind::linear, n, {}, rng);
        case 2: return gen_trend(TrendDirection::up, TrendKind::quadratic, n, {}, rng);
        case 3: return gen_trend(TrendDirection::down, TrendKind::quadratic, n, {}, rng);
        default: return gen_feature_control(kind, n, rng);
      }
    }
    case DatasetKind::seasonality: {
      switch (class_ix) {
        case 0: return gen_seasonality(SeasonPattern::fixed, n, rng);
        case 1: return gen_seasonality(SeasonPattern::varying_amplitude, n, rng);
        case 2: return gen_seasonality(SeasonPattern::shifting_period, n, rng);
        case 3: return gen_seasonality(SeasonPattern::multiple, n, rng);
        default: return gen_feature_control(kind, n, rng);
      }
    }
    case DatasetKind::anomaly: {
      static constexpr AnomalyKind kinds[] = {
          AnomalyKind::none,        AnomalyKind::spike1,
          AnomalyKind::spike2,      AnomalyKind::spike3,
          AnomalyKind::step_spike,  AnomalyKind::level_shift,
          AnomalyKind::temporal_disruption};
      return gen_anomaly(kinds[class_ix], n, rng);
    }
    case DatasetKind::volatility: {
      switch (class_ix) {
        case 0: return gen_volatility(VolatilityMode::constant, n, rng);
        case 1: return gen_volatility(VolatilityMode::increasing, n, rng);
        case 2: return gen_volatility(VolatilityMode::clustered_garch, n, rng);
        case 3: return gen_volatility(VolatilityMode::leverage, n, rng);
        default: return gen_feature_control(kind, n, rng);
      }
    }
    case DatasetKind::structural_break: {
      static constexpr std::pair<BreakFamily, BreakVariant> kinds[] = {
          {BreakFamily::parameter_shift, BreakVariant::mean},
          {BreakFamily::parameter_shift, BreakVariant::variance},
          {BreakFamily::parameter_shift, BreakVariant::mean_variance},
          {BreakFamily::parameter_shift, BreakVariant::seasonal_amplitude},
          {BreakFamily::parameter_shift, BreakVariant::autocorrelation},
          {BreakFamily::regime_shift, BreakVariant::distribution},
          {BreakFamily::regime_shift, BreakVariant::stationarity},
          {BreakFamily::regime_shift, BreakVariant::linearity},
          {BreakFamily::regime_shift, BreakVariant::frequency},
          {BreakFamily::regime_shift, BreakVariant::noise_trend},
          {BreakFamily::regime_shift, BreakVariant::error_correlation},
          {BreakFamily::regime_shift, BreakVariant::variance_type},
          {BreakFamily::none, BreakVariant::mean}};
      const auto& [fam, var] = kinds[class_ix];
      return gen_structural_break(fam, var, n, rng);
    }
    case DatasetKind::stationarity: {
      static constexpr StatKind kinds[] = {
          StatKind::stationary, StatKind::nonstat_mean,
          StatKind::nonstat_variance, StatKind::nonstat_seasonal,
          StatKind::nonstat_trend_seasonal};
      return gen_stat_properties(kinds[class_ix], n, rng);
    }
    case DatasetKind::fat_tails: {
      return gen_stat_properties(
          class_ix == 0 ? StatKind::fat_tailed : StatKind::thin_tailed, n, rng);
    }
    case DatasetKind::correlation: {
      // Detection labels stay unambiguous because |rho| never falls below 0.3.
      const double mag = rng.uniform(0.3, 0.95);
      switch (class_ix) {
        case 0: return gen_correlated_pair(mag, n, rng);
        case 1: return gen_correlated_pair(-mag, n, rng);
        default: return gen_correlated_pair(0.0, n, rng);
      }
    }
    case DatasetKind::cross_correlation: {
      const double mag = rng.uniform(0.3, 0.95);
      const int max_lag = std::min(10, n / 4 - 1);
      const int lag = static_cast<int>(rng.uniform_int(1, std::max(1, max_lag)));
      switch (class_ix) {
        case 0: return gen_cross_correlated_pair(mag, 0, n, rng);
        case 1: return gen_cross_correlated_pair(mag, lag, n, rng);
        case 2: return gen_cross_correlated_pair(-mag, 0, n, rng);
        case 3: return gen_cross_correlated_pair(-mag, lag, n, rng);
        default: return gen_cross_correlated_pair(0.0, 0, n, rng);
      }
    }
    case DatasetKind::dynamic_correlation: {
      const double mag = rng.uniform(0.6, 0.95);
      switch (class_ix) {
        case 0: return gen_dcc_pair(DccRegime::first_half, mag, n, rng);
        case 1: return gen_dcc_pair(DccRegime::first_half, -mag, n, rng);
        case 2: return gen_dcc_pair(DccRegime::second_half, mag, n, rng);
        case 3: return gen_dcc_pair(DccRegime::second_half, -mag, n, rng);
        default: return gen_dcc_pair(DccRegime::whole, 0.0, n, rng);
      }
    }
    default:
      throw GenerationError("gen_class_sample: not a taxonomy dataset");
  }
}

inline std::size_t class_count(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::trend: return 5;
    case DatasetKind::seasonality: return 5;
    case DatasetKind::anomaly: return 7;
    case DatasetKind::volatility: return 5;
    case DatasetKind::structural_break: return 13;
    case DatasetKind::stationarity: return 5;
    case DatasetKind::fat_tails: return 2;
    case DatasetKind::correlation: return 3;
    case DatasetKind::cross_correlation: return 5;
    case DatasetKind::dynamic_correlation: return 5;
    default: return 0;
  }
}

// Shortest admissible length per class; the multiple-seasonality and DCC
// classes need more room than the global floor of 30.
inline int min_length_for(DatasetKind kind, std::size_t class_ix) {
  if (kind == DatasetKind::seasonality && class_ix == 3) return 60;
  if (kind == DatasetKind::dynamic_correlation) return 40;
  if (kind == DatasetKind::structural_break) return 20;
  return 30;
}

inline std::string sample_id(DatasetKind kind, Split split, std::size_t ix) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%05zu", ix);
  return std::string(to_string(kind)) + "-" + to_string(split) + "-" + buf;
}

}  // namespace detail

inline bool is_positional(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::brownian:
    case DatasetKind::outlier:
    case DatasetKind::monotone:
    case DatasetKind::monotone_noise:
    case DatasetKind::sinusoidal:
      return true;
    default:
      return false;
  }
}

inline std::vector<AnnotatedSample> gen_dataset(DatasetKind kind,
                                                const SplitSizes& sizes,
                                                const GenConfig& cfg) {
  if (is_positional(kind)) {
    PositionalKind pk;
    switch (kind) {
      case DatasetKind::brownian: pk = PositionalKind::brownian; break;
      case DatasetKind::outlier: pk = PositionalKind::outlier; break;
      case DatasetKind::monotone: pk = PositionalKind::monotone; break;
      case DatasetKind::monotone_noise: pk = PositionalKind::monotone_noise; break;
      default: pk = PositionalKind::sinusoidal; break;
    }
    return gen_positional_dataset(pk, cfg);
  }

  if (sizes.train == 0 && sizes.validation == 0 && sizes.test == 0) {
    throw GenerationError("gen_dataset: all split sizes are zero");
  }
  const std::size_t classes = detail::class_count(kind);
  std::vector<AnnotatedSample> out;
  out.reserve(sizes.train + sizes.validation + sizes.test);

  std::uint64_t global_ix = 0;
  for (const auto& [split, count] :
       {std::pair{Split::train, sizes.train},
        std::pair{Split::validation, sizes.validation},
        std::pair{Split::test, sizes.test}}) {
    for (std::size_t i = 0; i < count; ++i, ++global_ix) {
      Rng rng(derive_seed(cfg.base_seed, to_string(kind), global_ix));
      const std::size_t class_ix = i % classes;
      const int lo = std::max(cfg.length_min, detail::min_length_for(kind, class_ix));
      const int n = static_cast<int>(rng.uniform_int(lo, cfg.length_max));
      AnnotatedSample s = detail::gen_class_sample(kind, class_ix, n, rng);
      s.split = split;
      s.id = detail::sample_id(kind, split, i);
      attach_descriptions(s);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace tsbench

#pragma once

// Textual descriptions attached to every sample. Qualitative text names the
// feature in prose and never contains a digit; quantitative text carries the
// date range, min/max, and for seasonal series the peak/trough counts and
// average amplitude. Every number in the quantitative text is recomputable
// from the series at display precision.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsbench/core.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/stats.hpp"

namespace tsbench {

struct PeakStats {
  std::vector<std::size_t> peaks;
  std::vector<std::size_t> troughs;
  // Half the distance between mean peak value and mean trough value.
  double average_amplitude = 0;
};

// Peaks and troughs are strict local extrema of the window-3 moving average,
// evaluated at interior indices only; reported amplitudes use the raw values
// at those indices.
inline PeakStats peak_stats(const std::vector<double>& values) {
  PeakStats ps;
  const std::size_t n = values.size();
  if (n < 5) return ps;
  std::vector<double> sm(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (is_missing(values[i - 1]) || is_missing(values[i]) ||
        is_missing(values[i + 1])) {
      sm[i] = kMissingValue;
      continue;
    }
    sm[i] = (values[i - 1] + values[i] + values[i + 1]) / 3.0;
  }
  for (std::size_t i = 2; i + 2 < n; ++i) {
    if (is_missing(sm[i - 1]) || is_missing(sm[i]) || is_missing(sm[i + 1])) {
      continue;
    }
    if (sm[i] > sm[i - 1] && sm[i] > sm[i + 1]) ps.peaks.push_back(i);
    if (sm[i] < sm[i - 1] && sm[i] < sm[i + 1]) ps.troughs.push_back(i);
  }
  if (!ps.peaks.empty() && !ps.troughs.empty()) {
    double hi = 0, lo = 0;
    for (auto i : ps.peaks) hi += values[i];
    for (auto i : ps.troughs) lo += values[i];
    hi /= static_cast<double>(ps.peaks.size());
    lo /= static_cast<double>(ps.troughs.size());
    ps.average_amplitude = (hi - lo) / 2.0;
  }
  return ps;
}

namespace detail {

inline std::string period_name(double period) {
  if (period == 7.0) return "weekly";
  if (period == 30.0) return "monthly";
  return "periodic";
}

inline std::vector<std::string> qualitative_variants(const FeatureLabel& label) {
  const std::string& sub = label.sub_feature;
  switch (label.feature) {
    case Feature::Trend: {
      if (sub == "up.linear") {
        return {"This time series exhibits an upward linear trend, commencing "
                "with lower figures and climbing steadily.",
                "The series rises at a steady pace from beginning to end, "
                "tracing a clear upward linear trend.",
                "Values increase consistently over the period, following an "
                "upward linear trajectory."};
      }
      if (sub == "up.quadratic") {
        return {"This time series exhibits an upward quadratic trend, "
                "commencing with lower figures and rising at an accelerating "
                "pace.",
                "The series climbs slowly at first and then ever faster, "
                "tracing an upward quadratic trend.",
                "Values grow at an accelerating rate over the period, "
                "following an upward quadratic trajectory."};
      }
      if (sub == "down.linear") {
        return {"This time series exhibits a downward linear trend, "
                "commencing with higher figures and declining steadily.",
                "The series falls at a steady pace from beginning to end, "
                "tracing a clear downward linear trend.",
                "Values decrease consistently over the period, following a "
                "downward linear trajectory."};
      }
      if (sub == "down.quadratic") {
        return {"This time series exhibits a downward quadratic trend, "
                "commencing with higher figures and falling gradually.",
                "The series declines slowly at first and then ever faster, "
                "tracing a downward quadratic trend.",
                "Values fall at an accelerating rate over the period, "
                "following a downward quadratic trajectory."};
      }
      return {"This time series shows no clear trend, fluctuating around a "
              "stable level.",
              "The series wanders around a steady level without any overall "
              "direction.",
              "No persistent upward or downward movement is visible in this "
              "series."};
    }
    case Feature::Seasonality: {
      if (sub == "fixed") {
        return {"This time series exhibits a regular seasonal pattern that "
                "repeats at a fixed interval.",
                "A predictable cycle of peaks and troughs recurs at a constant "
                "period throughout the series.",
                "The series oscillates with a stable, fixed-period seasonal "
                "rhythm."};
      }
      if (sub == "varying_amplitude") {
        return {"This time series exhibits a seasonal pattern whose amplitude "
                "changes over time.",
                "A recurring cycle is present, but the strength of its swings "
                "grows or shrinks across the series.",
                "The series oscillates at a fixed period while the size of the "
                "oscillations varies."};
      }
      if (sub == "shifting_period") {
        return {"This time series exhibits a seasonal pattern whose period "
                "drifts over time.",
                "The spacing between successive peaks slowly changes, "
                "indicating a shifting seasonal period.",
                "A cyclic pattern is present but its cycle length shifts "
                "across the series."};
      }
      if (sub == "multiple") {
        return {"This time series exhibits multiple overlapping seasonal "
                "patterns.",
                "Two distinct cycles of different lengths are superimposed in "
                "this series.",
                "The series combines a short seasonal rhythm with a longer "
                "one."};
      }
      return {"This time series shows no periodic behaviour, fluctuating "
              "irregularly around a stable level.",
              "No recurring cycle of peaks and troughs is visible in this "
              "series.",
              "The series lacks any seasonal pattern."};
    }
    case Feature::Anomaly: {
      if (sub == "spike1") {
        return {"This time series contains a single sudden spike that departs "
                "sharply from the surrounding pattern.",
                "One isolated, abrupt deviation stands out from an otherwise "
                "steady series.",
                "The series is stable apart from one sharp, short-lived "
                "spike."};
      }
      if (sub == "spike2" || sub == "spike3") {
        return {"This time series contains consecutive sudden spikes that "
                "depart sharply from the surrounding pattern.",
                "A short run of abrupt deviations interrupts an otherwise "
                "steady series.",
                "The series is stable apart from a brief cluster of sharp "
                "spikes."};
      }
      if (sub == "step_spike") {
        return {"This time series briefly steps up to a raised level before "
                "reverting to its original pattern.",
                "A temporary plateau interrupts the series and then the "
                "original level resumes.",
                "The series shifts to a different level for a short interval "
                "and then returns."};
      }
      if (sub == "level_shift") {
        return {"This time series undergoes a sudden and lasting change in "
                "its average level.",
                "Partway through the series the values settle permanently at "
                "a different level.",
                "An abrupt, persistent shift in the mean divides the series "
                "into two levels."};
      }
      if (sub == "temporal_disruption") {
        return {"This time series contains an interval where data is missing "
                "or not recorded.",
                "A gap interrupts the series where no observations were "
                "recorded.",
                "Recording stops for a stretch of the series, leaving an "
                "empty interval."};
      }
      return {"This time series follows its typical pattern with no "
              "irregularities.",
              "No spikes, shifts or gaps disturb this series.",
              "The series is free of anomalous observations."};
    }
    case Feature::Volatility: {
      if (sub == "constant") {
        return {"This time series exhibits a consistent degree of variation "
                "throughout the period.",
                "The dispersion of the series stays at a stable level from "
                "start to finish.",
                "Fluctuations remain of comparable size across the whole "
                "series."};
      }
      if (sub == "increasing") {
        return {"This time series exhibits volatility that grows steadily "
                "towards the end of the period.",
                "Fluctuations start small and become progressively larger "
                "across the series.",
                "The dispersion of the series widens as time goes on."};
      }
      if (sub == "clustered_garch") {
        return {"This time series exhibits clustered volatility, with calm "
                "stretches interrupted by bursts of large swings.",
                "Periods of high and low variation cluster together across "
                "the series.",
                "Large movements tend to follow large movements, producing "
                "volatility clusters."};
      }
      if (sub == "leverage") {
        return {"This time series exhibits dynamic volatility that rises "
                "after negative movements and settles after positive ones.",
                "The series becomes more turbulent following downward moves, "
                "a leverage-style response.",
                "Volatility reacts to the direction of recent movements, "
                "swelling after declines."};
      }
      return {"This time series is smooth, showing hardly any variation "
              "around its level.",
              "The series proceeds with negligible fluctuation.",
              "Little to no volatility is present in this series."};
    }
    case Feature::StructuralBreak: {
      if (sub.starts_with("parameter_shift")) {
        return {"This time series undergoes a parameter shift, with its "
                "statistical properties changing partway through.",
                "The level or spread of the series changes abruptly at an "
                "interior point.",
                "A structural change in the series parameters separates an "
                "early regime from a later one."};
      }
      if (sub.starts_with("regime_shift")) {
        return {"This time series undergoes a regime shift, with the process "
                "generating the data changing partway through.",
                "The character of the series changes fundamentally at an "
                "interior point, marking a new regime.",
                "An abrupt switch in the underlying process divides the "
                "series into two distinct regimes."};
      }
      return {"This time series shows no structural break, behaving "
              "consistently throughout.",
              "The series follows a single stable process from start to "
              "finish.",
              "No regime change or parameter shift interrupts this series."};
    }
    case Feature::Stationarity: {
      if (sub == "stationary") {
        return {"This time series is stationary, with a stable mean and "
                "spread throughout.",
                "The statistical properties of the series do not change over "
                "time.",
                "The series fluctuates around a fixed level with constant "
                "dispersion."};
      }
      if (sub == "nonstat_mean") {
        return {"This time series is non-stationary, with a mean that evolves "
                "over time.",
                "The central level of the series drifts steadily, so its mean "
                "is not constant.",
                "A persistent drift in the level makes this series "
                "non-stationary."};
      }
      if (sub == "nonstat_variance") {
        return {"This time series is non-stationary, with a variance that "
                "changes over time.",
                "The spread of the series widens over the period, so its "
                "variance is not constant.",
                "Changing dispersion makes this series non-stationary."};
      }
      if (sub == "nonstat_seasonal") {
        return {"This time series is non-stationary due to a recurring "
                "seasonal pattern.",
                "Regular cyclical swings prevent the series from being "
                "stationary.",
                "A persistent seasonal cycle makes this series "
                "non-stationary."};
      }
      return {"This time series is non-stationary, combining a drifting "
              "level with a recurring seasonal pattern.",
              "Both a trend and a seasonal cycle are present, so the series "
              "is not stationary.",
              "A drift in the mean together with seasonal swings makes this "
              "series non-stationary."};
    }
    case Feature::FatTails: {
      if (sub == "fat_tailed") {
        return {"This time series is fat tailed, producing extreme values "
                "far more often than a normal distribution would.",
                "Occasional very large deviations mark this series as fat "
                "tailed.",
                "The distribution of values carries heavy tails, with extreme "
                "observations appearing regularly."};
      }
      return {"This time series is thin tailed, with values that stay close "
              "to its typical range.",
              "Extreme observations are rare; the series behaves like draws "
              "from a normal distribution.",
              "The distribution of values shows no heavy tails."};
    }
    case Feature::Correlation: {
      if (sub == "positive") {
        return {"The two time series are positively correlated, moving in "
                "the same direction.",
                "When one series rises the other tends to rise as well, a "
                "positively correlated pair.",
                "The channels track each other positively throughout the "
                "period."};
      }
      if (sub == "negative") {
        return {"The two time series are negatively correlated, moving in "
                "opposite directions.",
                "When one series rises the other tends to fall, a negatively "
                "correlated pair.",
                "The channels mirror each other inversely throughout the "
                "period."};
      }
      return {"The two time series are uncorrelated, moving independently of "
              "each other.",
              "No linear relationship links the two channels.",
              "The channels evolve without any systematic co-movement."};
    }
    case Feature::CrossCorrelation: {
      if (sub == "direct") {
        return {"The two time series move together immediately, with a "
                "direct positive relationship.",
                "Changes in one channel are reflected in the other without "
                "delay.",
                "The channels are directly and positively related."};
      }
      if (sub == "direct_lagged") {
        return {"The second time series follows the first after a delay, "
                "with a lagged positive relationship.",
                "Movements in one channel reappear in the other after a lag.",
                "The channels are positively related with the second lagging "
                "the first."};
      }
      if (sub == "inverse") {
        return {"The two time series move in opposite directions "
                "immediately, with a direct inverse relationship.",
                "Increases in one channel coincide with decreases in the "
                "other.",
                "The channels are directly and inversely related."};
      }
      if (sub == "inverse_lagged") {
        return {"The second time series moves opposite to the first after a "
                "delay, with a lagged inverse relationship.",
                "Rises in one channel are followed, after a lag, by falls in "
                "the other.",
                "The channels are inversely related with the second lagging "
                "the first."};
      }
      return {"The two time series show no relationship at any lag.",
              "Neither immediate nor delayed co-movement links the two "
              "channels.",
              "The channels evolve independently at every lag."};
    }
    case Feature::DynamicCorrelation: {
      const bool first = sub.starts_with("first_half");
      const bool second = sub.starts_with("second_half");
      const bool positive = sub.ends_with("positive");
      if (first) {
        return {std::string("The two time series are ") +
                    (positive ? "positively" : "negatively") +
                    " correlated during the first half of the period and move "
                    "independently afterwards.",
                std::string("Early on the channels move ") +
                    (positive ? "together" : "in opposite directions") +
                    "; the relationship disappears in the later part of the "
                    "series.",
                "The correlation between the channels is confined to the "
                "first half of the series."};
      }
      if (second) {
        return {std::string("The two time series are ") +
                    (positive ? "positively" : "negatively") +
                    " correlated during the second half of the period and "
                    "move independently before that.",
                std::string("Late in the series the channels move ") +
                    (positive ? "together" : "in opposite directions") +
                    "; earlier on they are unrelated.",
                "The correlation between the channels is confined to the "
                "second half of the series."};
      }
      return {"The two time series remain uncorrelated in both halves of the "
              "period.",
              "No part of the series shows co-movement between the channels.",
              "The channels are independent throughout, with no correlation "
              "regime."};
    }
  }
  throw std::invalid_argument("qualitative_description: unknown label");
}

}  // namespace detail

inline std::string qualitative_description(const AnnotatedSample& sample) {
  const auto variants = detail::qualitative_variants(sample.label);
  const std::uint64_t h =
      fnv1a(sample.id,
            fnv1a(sample.label.sub_feature,
                  fnv1a(to_string(sample.label.feature)))) ^
      splitmix64(sample.series.values.size());
  return variants[splitmix64(h) % variants.size()];
}

inline std::string quantitative_description(const AnnotatedSample& sample) {
  const TimeSeries& ts = sample.series;
  const auto finite = stats::drop_missing(ts.values);
  double lo = 0, hi = 0;
  if (!finite.empty()) {
    lo = *std::min_element(finite.begin(), finite.end());
    hi = *std::max_element(finite.begin(), finite.end());
  }
  const Date last =
      add_days(ts.start_date, static_cast<long>(ts.values.size()) - 1);

  std::string text = "This daily time series covers the period from " +
                     format_date(ts.start_date) + " to " + format_date(last) +
                     ".";

  if (sample.label.feature == Feature::Seasonality &&
      sample.label.sub_feature != "none") {
    const PeakStats ps = peak_stats(ts.values);
    std::string pattern;
    const auto& sub = sample.label.sub_feature;
    const auto it = sample.label.params.find("period");
    const auto it2 = sample.label.params.find("period2");
    const double p1 = it != sample.label.params.end() ? it->second : 0.0;
    const double p2 = it2 != sample.label.params.end() ? it2->second : 0.0;
    const double longest = std::max(p1, p2);
    if (sub == "multiple") {
      pattern = "multiple seasonal patterns with " +
                detail::period_name(longest) + " seasonality";
    } else if (sub == "fixed") {
      pattern = "a fixed seasonal pattern with " +
                detail::period_name(longest) + " seasonality";
    } else if (sub == "varying_amplitude") {
      pattern = "a seasonal pattern of varying amplitude";
    } else {
      pattern = "a seasonal pattern with a shifting period";
    }
    text += " It exhibits " + pattern + ", with " +
            std::to_string(ps.peaks.size()) + " peaks and " +
            std::to_string(ps.troughs.size()) + " troughs, and an average "
            "amplitude of " +
            format_value(ps.average_amplitude) + ".";
  }

  text += " The minimum value is " + format_value(lo) +
          " and the maximum value is " + format_value(hi) + ".";
  return text;
}

// Fills both description fields; called once a sample has its final id.
inline void attach_descriptions(AnnotatedSample& sample) {
  sample.qualitative = qualitative_description(sample);
  sample.quantitative = quantitative_description(sample);
}

}  // namespace tsbench

#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tsbench {

inline constexpr const char* kGeneratorVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Dates (daily frequency only)
// ---------------------------------------------------------------------------

using Date = std::chrono::year_month_day;

inline Date make_date(int y, unsigned m, unsigned d) {
  return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

inline Date add_days(Date d, long n) {
  return Date{std::chrono::sys_days{d} + std::chrono::days{n}};
}

inline long days_between(Date a, Date b) {
  return (std::chrono::sys_days{b} - std::chrono::sys_days{a}).count();
}

inline std::string format_date(Date d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

// Strict ISO-8601 calendar date (YYYY-MM-DD). Throws std::invalid_argument.
inline Date parse_date(std::string_view s) {
  auto fail = [&] {
    throw std::invalid_argument("not an ISO-8601 date: '" + std::string(s) + "'");
  };
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') fail();
  auto num = [&](std::string_view part) -> int {
    int out = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || p != part.data() + part.size()) fail();
    return out;
  };
  const Date d = make_date(num(s.substr(0, 4)),
                           static_cast<unsigned>(num(s.substr(5, 2))),
                           static_cast<unsigned>(num(s.substr(8, 2))));
  if (!d.ok()) fail();
  return d;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

enum class Frequency { daily };

// Temporal disruptions need an in-band "not recorded" marker that is still a
// finite double, survives persistence bit-exactly, and renders as an empty
// value field. lowest() is never produced by any generator.
inline constexpr double kMissingValue = std::numeric_limits<double>::lowest();

inline bool is_missing(double v) { return v == kMissingValue; }

struct TimeSeries {
  Date start_date{};
  Frequency frequency = Frequency::daily;
  std::vector<double> values;
  std::vector<double> values2;  // second channel; empty for univariate series

  std::size_t size() const { return values.size(); }
  bool multivariate() const { return !values2.empty(); }
};

inline Date date_at(const TimeSeries& ts, std::size_t i) {
  if (i >= ts.values.size()) {
    throw std::out_of_range("date_at: index " + std::to_string(i) +
                            " out of range for length " +
                            std::to_string(ts.values.size()));
  }
  return add_days(ts.start_date, static_cast<long>(i));
}

// ---------------------------------------------------------------------------
// Quadrants
// ---------------------------------------------------------------------------

enum class Quadrant { Q1, Q2, Q3, Q4 };

inline const char* to_string(Quadrant q) {
  switch (q) {
    case Quadrant::Q1: return "Q1";
    case Quadrant::Q2: return "Q2";
    case Quadrant::Q3: return "Q3";
    case Quadrant::Q4: return "Q4";
  }
  return "?";
}

inline std::optional<Quadrant> quadrant_from_string(std::string_view s) {
  if (s == "Q1") return Quadrant::Q1;
  if (s == "Q2") return Quadrant::Q2;
  if (s == "Q3") return Quadrant::Q3;
  if (s == "Q4") return Quadrant::Q4;
  return std::nullopt;
}

// Position i of a length-n series falls in quadrant floor(4*i/n), clamped to
// the fourth quadrant. Blocks are contiguous and their sizes differ by at
// most one for any n.
inline Quadrant quadrant_of(std::size_t i, std::size_t n) {
  if (n < 4) throw std::domain_error("quadrant_of: series length must be >= 4");
  if (i >= n) throw std::domain_error("quadrant_of: index out of range");
  const std::size_t q = std::min<std::size_t>(3, 4 * i / n);
  return static_cast<Quadrant>(q);
}

// ---------------------------------------------------------------------------
// Taxonomy
// ---------------------------------------------------------------------------

enum class Feature {
  Trend,
  Seasonality,
  Anomaly,
  Volatility,
  StructuralBreak,
  Stationarity,
  FatTails,
  Correlation,
  CrossCorrelation,
  DynamicCorrelation,
};

enum class DatasetKind {
  // The ten taxonomy datasets.
  trend,
  seasonality,
  anomaly,
  volatility,
  structural_break,
  stationarity,
  fat_tails,
  correlation,
  cross_correlation,
  dynamic_correlation,
  // Position-bias datasets.
  brownian,
  outlier,
  monotone,
  monotone_noise,
  sinusoidal,
};

enum class Split { train, validation, test };

inline const char* to_string(Feature f) {
  switch (f) {
    case Feature::Trend: return "trend";
    case Feature::Seasonality: return "seasonality";
    case Feature::Anomaly: return "anomaly";
    case Feature::Volatility: return "volatility";
    case Feature::StructuralBreak: return "structural_break";
    case Feature::Stationarity: return "stationarity";
    case Feature::FatTails: return "fat_tails";
    case Feature::Correlation: return "correlation";
    case Feature::CrossCorrelation: return "cross_correlation";
    case Feature::DynamicCorrelation: return "dynamic_correlation";
  }
  return "?";
}

inline const char* to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::trend: return "trend";
    case DatasetKind::seasonality: return "seasonality";
    case DatasetKind::anomaly: return "anomaly";
    case DatasetKind::volatility: return "volatility";
    case DatasetKind::structural_break: return "structural_break";
    case DatasetKind::stationarity: return "stationarity";
    case DatasetKind::fat_tails: return "fat_tails";
    case DatasetKind::correlation: return "correlation";
    case DatasetKind::cross_correlation: return "cross_correlation";
    case DatasetKind::dynamic_correlation: return "dynamic_correlation";
    case DatasetKind::brownian: return "brownian";
    case DatasetKind::outlier: return "outlier";
    case DatasetKind::monotone: return "monotone";
    case DatasetKind::monotone_noise: return "monotone_noise";
    case DatasetKind::sinusoidal: return "sinusoidal";
  }
  return "?";
}

inline const char* to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "?";
}

inline std::optional<Feature> feature_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(Feature::DynamicCorrelation); ++i) {
    if (s == to_string(static_cast<Feature>(i))) return static_cast<Feature>(i);
  }
  return std::nullopt;
}

inline std::optional<DatasetKind> dataset_kind_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(DatasetKind::sinusoidal); ++i) {
    if (s == to_string(static_cast<DatasetKind>(i))) {
      return static_cast<DatasetKind>(i);
    }
  }
  return std::nullopt;
}

inline std::optional<Split> split_from_string(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "validation") return Split::validation;
  if (s == "test") return Split::test;
  return std::nullopt;
}

// Taxonomy family each dataset draws its labels from. Position-bias datasets
// reuse the closest family (a monotone series is an up/down trend, an injected
// outlier is a spike, a Brownian walk is constant-volatility noise).
inline Feature feature_of(DatasetKind k) {
  switch (k) {
    case DatasetKind::trend: return Feature::Trend;
    case DatasetKind::seasonality: return Feature::Seasonality;
    case DatasetKind::anomaly: return Feature::Anomaly;
    case DatasetKind::volatility: return Feature::Volatility;
    case DatasetKind::structural_break: return Feature::StructuralBreak;
    case DatasetKind::stationarity: return Feature::Stationarity;
    case DatasetKind::fat_tails: return Feature::FatTails;
    case DatasetKind::correlation: return Feature::Correlation;
    case DatasetKind::cross_correlation: return Feature::CrossCorrelation;
    case DatasetKind::dynamic_correlation: return Feature::DynamicCorrelation;
    case DatasetKind::brownian: return Feature::Volatility;
    case DatasetKind::outlier: return Feature::Anomaly;
    case DatasetKind::monotone: return Feature::Trend;
    case DatasetKind::monotone_noise: return Feature::Trend;
    case DatasetKind::sinusoidal: return Feature::Seasonality;
  }
  throw std::logic_error("feature_of: bad dataset kind");
}

inline const std::vector<std::string>& sub_features_of(Feature f) {
  static const std::map<Feature, std::vector<std::string>> table = {
      {Feature::Trend,
       {"up.linear", "up.quadratic", "down.linear", "down.quadratic", "none"}},
      {Feature::Seasonality,
       {"fixed", "varying_amplitude", "shifting_period", "multiple", "none"}},
      {Feature::Anomaly,
       {"spike1", "spike2", "spike3", "step_spike", "level_shift",
        "temporal_disruption", "none"}},
      {Feature::Volatility,
       {"constant", "increasing", "clustered_garch", "leverage", "none"}},
      {Feature::StructuralBreak,
       {"parameter_shift.mean", "parameter_shift.variance",
        "parameter_shift.mean_variance", "parameter_shift.seasonal_amplitude",
        "parameter_shift.autocorrelation", "regime_shift.distribution",
        "regime_shift.stationarity", "regime_shift.linearity",
        "regime_shift.frequency", "regime_shift.noise_trend",
        "regime_shift.error_correlation", "regime_shift.variance_type",
        "none"}},
      {Feature::Stationarity,
       {"stationary", "nonstat_mean", "nonstat_variance", "nonstat_seasonal",
        "nonstat_trend_seasonal"}},
      {Feature::FatTails, {"fat_tailed", "thin_tailed"}},
      {Feature::Correlation, {"positive", "negative", "none"}},
      {Feature::CrossCorrelation,
       {"direct", "direct_lagged", "inverse", "inverse_lagged", "none"}},
      {Feature::DynamicCorrelation,
       {"first_half.positive", "first_half.negative", "second_half.positive",
        "second_half.negative", "none"}},
  };
  return table.at(f);
}

struct FeatureLabel {
  Feature feature = Feature::Trend;
  std::string sub_feature;
  std::map<std::string, double> params;  // every parameter the generator drew
};

struct AnnotatedSample {
  std::string id;
  DatasetKind dataset_kind = DatasetKind::trend;
  Split split = Split::test;
  TimeSeries series;
  FeatureLabel label;
  std::string qualitative;
  std::string quantitative;
};

// ---------------------------------------------------------------------------
// Display precision
// ---------------------------------------------------------------------------

// Values are kept at full precision until they hit text. Rendering rounds
// half-even to two decimals and drops trailing zeros; "100.50" is never
// emitted, "100.5" is.
inline std::string format_value(double v) {
  if (is_missing(v)) return "";
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

// The double a rendered value parses back to; rounding and comparison at
// "rendered precision" go through this.
inline double round_to_display(double v) {
  if (is_missing(v)) return v;
  const std::string s = format_value(v);
  return std::strtod(s.c_str(), nullptr);
}

// Strict numeric token ("", sign, digits, optional fraction). Empty means
// missing. Returns nullopt on anything else.
inline std::optional<double> parse_value_token(std::string_view s) {
  if (s.empty()) return kMissingValue;
  double out = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

struct ValidationResult {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline bool contains_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return c >= '0' && c <= '9'; });
}

// Violations are data, not faults: a malformed sample reports every broken
// invariant instead of throwing.
inline ValidationResult validate(const AnnotatedSample& sample) {
  ValidationResult r;
  const auto& ts = sample.series;
  if (ts.values.empty()) r.violations.push_back("empty series");
  for (double v : ts.values) {
    if (!std::isfinite(v)) {
      r.violations.push_back("non-finite value");
      break;
    }
  }
  if (!ts.values2.empty()) {
    if (ts.values2.size() != ts.values.size()) {
      r.violations.push_back("channel length mismatch");
    }
    for (double v : ts.values2) {
      if (!std::isfinite(v)) {
        r.violations.push_back("non-finite value in second channel");
        break;
      }
    }
  }
  const auto& subs = sub_features_of(sample.label.feature);
  if (std::find(subs.begin(), subs.end(), sample.label.sub_feature) ==
      subs.end()) {
    r.violations.push_back("sub-feature '" + sample.label.sub_feature +
                           "' not in the " +
                           std::string(to_string(sample.label.feature)) +
                           " sub-category set");
  }
  if (!sample.qualitative.empty() && contains_digit(sample.qualitative)) {
    r.violations.push_back("qualitative description contains digits");
  }
  if (!sample.quantitative.empty() && !ts.values.empty()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : ts.values) {
      if (is_missing(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const bool has_finite = std::isfinite(lo);
    if (has_finite &&
        sample.quantitative.find(format_value(lo)) == std::string::npos) {
      r.violations.push_back("quantitative description is missing the minimum");
    }
    if (has_finite &&
        sample.quantitative.find(format_value(hi)) == std::string::npos) {
      r.violations.push_back("quantitative description is missing the maximum");
    }
    if (sample.quantitative.find(format_date(ts.start_date)) ==
        std::string::npos ||
        sample.quantitative.find(format_date(
            add_days(ts.start_date, static_cast<long>(ts.values.size()) - 1))) ==
            std::string::npos) {
      r.violations.push_back("quantitative description is missing the date range");
    }
  }
  return r;
}

}  // namespace tsbench

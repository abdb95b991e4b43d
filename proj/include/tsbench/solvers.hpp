#pragma once

// Solver contract and the three implementations.
//
//   oracle      - reads the answer key; pins the harness ceiling.
//   statistical - deterministic baselines on the series it re-parses out of
//                 the prompt text (OLS trend test, ACF seasonality test,
//                 z-score anomaly scan, variance-ratio break test, exact
//                 retrieval scan).
//   http        - generic chat-completion client: POST {model, messages} and
//                 read back choices[0].message.content, with exponential
//                 backoff and a bounded in-flight window.
//
// Only the oracle ever touches the key. Errors are values: a failed solve
// carries an error string and the run continues.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsbench/eval.hpp"
#include "tsbench/stats.hpp"
#include "tsbench/tasks.hpp"

namespace tsbench {

enum class SolverKind { oracle, statistical, http };

inline std::optional<SolverKind> solver_kind_from_string(std::string_view s) {
  if (s == "oracle") return SolverKind::oracle;
  if (s == "statistical") return SolverKind::statistical;
  if (s == "http") return SolverKind::http;
  return std::nullopt;
}

struct SolverConfig {
  SolverKind kind = SolverKind::oracle;
  std::string endpoint;    // http only, e.g. http://host:port/v1/chat/completions
  std::string model_name;  // http only
  std::string api_key;     // optional bearer token
  double timeout_s = 30.0;
  int max_retries = 3;
  int concurrency_limit = 1;
  int backoff_base_ms = 1000;  // doubles per retry, with jitter

  void check() const {
    if (kind == SolverKind::http && (endpoint.empty() || model_name.empty())) {
      throw std::invalid_argument("http solver requires endpoint and model_name");
    }
    if (timeout_s <= 0) throw std::invalid_argument("timeout must be positive");
    if (concurrency_limit < 1) {
      throw std::invalid_argument("concurrency_limit must be >= 1");
    }
  }
};

struct SolveOutcome {
  std::string text;
  std::optional<std::string> error;
  int retries = 0;
  bool ok() const { return !error.has_value(); }
};

class Solver {
 public:
  virtual ~Solver() = default;
  virtual SolveOutcome solve(const TaskInstance& task) = 0;
  virtual std::string name() const = 0;
};

// ---------------------------------------------------------------------------
// Oracle
// ---------------------------------------------------------------------------

class OracleSolver final : public Solver {
 public:
  SolveOutcome solve(const TaskInstance& task) override {
    return {canonical_answer(task.key), std::nullopt, 0};
  }
  std::string name() const override { return "oracle"; }
};

// ---------------------------------------------------------------------------
// Statistical baselines
// ---------------------------------------------------------------------------

struct StatisticalThresholds {
  double trend_t = 2.0;       // |t| of the OLS slope
  double seasonality_acf = 0.3;
  double anomaly_z = 3.0;
  double variance_ratio = 4.0;  // two-segment break test
  double correlation_r = 0.3;
  double kurtosis_excess = 1.0;
};

class StatisticalSolver final : public Solver {
 public:
  explicit StatisticalSolver(StatisticalThresholds th = {}) : th_(th) {}

  SolveOutcome solve(const TaskInstance& task) override {
    const auto block = series_block_of(task.prompt);
    if (!block) return {"", "no series block in prompt"};
    TimeSeries series;
    try {
      series = parse(*block, task.fmt);
    } catch (const ParseError& e) {
      return {"", std::string("series unparseable from prompt: ") + e.what()};
    }
    switch (task.kind) {
      case TaskKind::detection:
        return {detect(series, feature_of(task.dataset)) ? "Yes" : "No",
                std::nullopt};
      case TaskKind::classification:
        return {std::string("(") + classify(series, feature_of(task.dataset)) +
                    ")",
                std::nullopt};
      case TaskKind::retrieval_bundle:
        return solve_retrieval(series, task);
      case TaskKind::search:
        return solve_search(series, task);
      case TaskKind::text_match_intra:
      case TaskKind::text_match_cross:
        // No statistical route from a series to free text; fixed fallback.
        return {"(a)", std::nullopt};
    }
    return {"", "unsupported task kind"};
  }

  std::string name() const override { return "statistical"; }

  bool detect(const TimeSeries& ts, Feature f) const {
    const auto v = stats::drop_missing(ts.values);
    switch (f) {
      case Feature::Trend:
        return std::fabs(stats::ols_vs_index(v).t_slope) > th_.trend_t;
      case Feature::Seasonality:
        return best_acf(stats::detrend(v)).second > th_.seasonality_acf;
      case Feature::Anomaly: {
        if (v.size() != ts.values.size()) return true;  // recording gap
        return max_abs_z(stats::diff(v)) > th_.anomaly_z;
      }
      case Feature::Volatility: {
        // Dispersion of steps relative to the series level.
        const double level = std::fabs(stats::mean(v)) + 1e-9;
        return stats::stddev(stats::diff(v)) / level > 0.1;
      }
      case Feature::StructuralBreak: {
        const auto [mean_z, var_ratio] = best_split(v);
        return mean_z > 3.0 || var_ratio > th_.variance_ratio;
      }
      case Feature::Stationarity: {
        if (std::fabs(stats::ols_vs_index(v).t_slope) > th_.trend_t) return false;
        const auto [mean_z, var_ratio] = best_split(v);
        if (var_ratio > th_.variance_ratio) return false;
        if (best_acf(stats::detrend(v)).second > th_.seasonality_acf) return false;
        return true;
      }
      case Feature::FatTails:
        return stats::excess_kurtosis(v) > th_.kurtosis_excess;
      case Feature::Correlation:
        return std::fabs(stats::pearson(ts.values, ts.values2)) >
               th_.correlation_r;
      case Feature::CrossCorrelation: {
        double best = 0;
        for (std::size_t lag = 0; lag <= ts.values.size() / 4; ++lag) {
          best = std::max(best, std::fabs(stats::cross_correlation(
                                    ts.values, ts.values2, lag)));
        }
        return best > th_.correlation_r;
      }
      case Feature::DynamicCorrelation: {
        const auto [c1, c2] = half_corr(ts);
        return std::fabs(c1 - c2) > th_.correlation_r;
      }
    }
    return false;
  }

  char classify(const TimeSeries& ts, Feature f) const {
    const auto v = stats::drop_missing(ts.values);
    switch (f) {
      case Feature::Trend:
        return stats::ols_vs_index(v).slope >= 0 ? 'a' : 'b';
      case Feature::Anomaly: {
        if (v.size() != ts.values.size()) return 'c';
        // Persistent mean change without reversion means a level shift.
        const auto [mean_z, var_ratio] = best_split(v);
        if (mean_z > 4.0 && max_abs_z(stats::diff(v)) < 6.0) return 'b';
        return 'a';
      }
      case Feature::Stationarity: {
        const bool trending =
            std::fabs(stats::ols_vs_index(v).t_slope) > th_.trend_t;
        const bool seasonal =
            best_acf(stats::detrend(v)).second > th_.seasonality_acf;
        if (trending && seasonal) return 'd';
        if (trending) return 'a';
        if (seasonal) return 'c';
        return 'b';
      }
      case Feature::Correlation:
        return stats::pearson(ts.values, ts.values2) >= 0 ? 'a' : 'b';
      case Feature::CrossCorrelation: {
        double best = 0;
        std::size_t best_lag = 0;
        for (std::size_t lag = 0; lag <= ts.values.size() / 4; ++lag) {
          const double c = stats::cross_correlation(ts.values, ts.values2, lag);
          if (std::fabs(c) > std::fabs(best)) {
            best = c;
            best_lag = lag;
          }
        }
        if (best >= 0) return best_lag == 0 ? 'a' : 'b';
        return best_lag == 0 ? 'c' : 'd';
      }
      case Feature::DynamicCorrelation: {
        const auto [c1, c2] = half_corr(ts);
        return std::fabs(c1) >= std::fabs(c2) ? 'a' : 'b';
      }
      default:
        // No baseline rule for the remaining features; deterministic fallback.
        return 'a';
    }
  }

 private:
  static double max_abs_z(const std::vector<double>& v) {
    const double m = stats::mean(v);
    const double sd = stats::stddev(v);
    if (!(sd > 0)) return 0;
    double best = 0;
    for (double x : v) best = std::max(best, std::fabs((x - m) / sd));
    return best;
  }

  // Strongest autocorrelation over lags 2..n/2.
  static std::pair<std::size_t, double> best_acf(const std::vector<double>& v) {
    std::pair<std::size_t, double> best{0, 0.0};
    for (std::size_t lag = 2; lag <= v.size() / 2; ++lag) {
      const double a = stats::acf(v, lag);
      if (a > best.second) best = {lag, a};
    }
    return best;
  }

  // Best two-segment split: largest mean separation (in pooled standard
  // errors) and largest variance ratio.
  static std::pair<double, double> best_split(const std::vector<double>& v) {
    double best_z = 0, best_ratio = 1;
    const std::size_t n = v.size();
    if (n < 16) return {0, 1};
    for (std::size_t k = n / 4; k <= 3 * n / 4; ++k) {
      const std::vector<double> a(v.begin(), v.begin() + static_cast<long>(k));
      const std::vector<double> b(v.begin() + static_cast<long>(k), v.end());
      const double va = stats::variance(a);
      const double vb = stats::variance(b);
      const double se = std::sqrt(va / static_cast<double>(a.size()) +
                                  vb / static_cast<double>(b.size()));
      if (se > 0) {
        best_z = std::max(best_z, std::fabs(stats::mean(a) - stats::mean(b)) / se);
      }
      if (va > 0 && vb > 0) {
        best_ratio = std::max(best_ratio, std::max(va / vb, vb / va));
      }
    }
    return {best_z, best_ratio};
  }

  static std::pair<double, double> half_corr(const TimeSeries& ts) {
    const std::size_t h = ts.values.size() / 2;
    const std::vector<double> x1(ts.values.begin(), ts.values.begin() + static_cast<long>(h));
    const std::vector<double> y1(ts.values2.begin(), ts.values2.begin() + static_cast<long>(h));
    const std::vector<double> x2(ts.values.begin() + static_cast<long>(h), ts.values.end());
    const std::vector<double> y2(ts.values2.begin() + static_cast<long>(h), ts.values2.end());
    return {stats::pearson(x1, y1), stats::pearson(x2, y2)};
  }

  SolveOutcome solve_retrieval(const TimeSeries& series,
                               const TaskInstance& task) const {
    // The query date is quoted in the question after 'value_on_date'.
    const std::size_t pos = task.prompt.find("value_on_date ");
    if (pos == std::string::npos) return {"", "no query date in prompt"};
    const std::string date_str = task.prompt.substr(pos + 14, 10);
    Date query;
    try {
      query = parse_date(date_str);
    } catch (const std::invalid_argument&) {
      return {"", "bad query date in prompt"};
    }
    GroundTruth truth;
    try {
      truth.retrieval = retrieval_key_of(series, query);
    } catch (const TaskError& e) {
      return {"", e.what()};
    }
    return {canonical_answer(truth), std::nullopt};
  }

  SolveOutcome solve_search(const TimeSeries& series,
                            const TaskInstance& task) const {
    const std::string marker = "is the value ";
    const std::size_t pos = task.prompt.find(marker);
    if (pos == std::string::npos) return {"", "no search value in prompt"};
    std::size_t end = task.prompt.find(" present", pos);
    if (end == std::string::npos) return {"", "no search value in prompt"};
    const std::string token =
        task.prompt.substr(pos + marker.size(), end - pos - marker.size());
    const auto needle = parse_value_token(token);
    if (!needle || is_missing(*needle)) return {"", "bad search value"};
    for (double v : series.values) {
      if (!is_missing(v) && round_to_display(v) == *needle) {
        return {"Yes", std::nullopt};
      }
    }
    return {"No", std::nullopt};
  }

  StatisticalThresholds th_;
};

}  // namespace tsbench

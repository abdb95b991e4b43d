#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "tsbench/core.hpp"

namespace tsbench::stats {

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sample variance (ddof = 1).
inline double variance(const std::vector<double>& v) {
  if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double stddev(const std::vector<double>& v) {
  return std::sqrt(variance(v));
}

inline std::vector<double> diff(const std::vector<double>& v) {
  std::vector<double> d;
  if (v.size() < 2) return d;
  d.reserve(v.size() - 1);
  for (std::size_t i = 1; i < v.size(); ++i) d.push_back(v[i] - v[i - 1]);
  return d;
}

inline std::vector<double> drop_missing(const std::vector<double>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) {
    if (!is_missing(x)) out.push_back(x);
  }
  return out;
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

// Pearson correlation of y[t] against x[t - lag] over the overlap.
inline double cross_correlation(const std::vector<double>& x,
                                const std::vector<double>& y, std::size_t lag) {
  if (y.size() <= lag) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> a, b;
  for (std::size_t t = lag; t < std::min(x.size() + lag, y.size()); ++t) {
    a.push_back(x[t - lag]);
    b.push_back(y[t]);
  }
  return pearson(a, b);
}

// Autocorrelation at a given lag, mean-removed.
inline double acf(const std::vector<double>& v, std::size_t lag) {
  const std::size_t n = v.size();
  if (lag >= n || n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(v);
  double num = 0, den = 0;
  for (std::size_t t = 0; t < n; ++t) den += (v[t] - m) * (v[t] - m);
  for (std::size_t t = lag; t < n; ++t) num += (v[t] - m) * (v[t - lag] - m);
  if (den == 0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

struct OlsFit {
  double slope = 0;
  double intercept = 0;
  double sse = 0;       // residual sum of squares
  double t_slope = 0;   // +/-inf on an exact fit
};

// Least squares of v against t = 0..n-1.
inline OlsFit ols_vs_index(const std::vector<double>& v) {
  OlsFit fit;
  const std::size_t n = v.size();
  if (n < 3) return fit;
  const double tbar = static_cast<double>(n - 1) / 2.0;
  const double vbar = mean(v);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dt = static_cast<double>(i) - tbar;
    sxx += dt * dt;
    sxy += dt * (v[i] - vbar);
  }
  fit.slope = sxy / sxx;
  fit.intercept = vbar - fit.slope * tbar;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = v[i] - (fit.intercept + fit.slope * static_cast<double>(i));
    fit.sse += r * r;
  }
  const double s2 = fit.sse / static_cast<double>(n - 2);
  if (s2 <= 0 || sxx == 0) {
    fit.t_slope = fit.slope == 0
                      ? 0.0
                      : std::copysign(std::numeric_limits<double>::infinity(),
                                      fit.slope);
  } else {
    fit.t_slope = fit.slope / std::sqrt(s2 / sxx);
  }
  return fit;
}

inline std::vector<double> detrend(const std::vector<double>& v) {
  const OlsFit f = ols_vs_index(v);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] - (f.intercept + f.slope * static_cast<double>(i));
  }
  return out;
}

inline double excess_kurtosis(const std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n < 4) return std::numeric_limits<double>::quiet_NaN();
  const double m = mean(v);
  double m2 = 0, m4 = 0;
  for (double x : v) {
    const double d = x - m;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (m2 == 0) return std::numeric_limits<double>::quiet_NaN();
  return m4 / (m2 * m2) - 3.0;
}

}  // namespace tsbench::stats

#pragma once

// Position-bias datasets. Brownian and outlier corpora control which quadrant
// the extremum of interest lands in via rejection sampling: the path (or the
// injection point) is redrawn until the extremum's index sits in the target
// quadrant. Acceptance never mutates a drawn series.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsbench/core.hpp"
#include "tsbench/describe.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/synth_uni.hpp"

namespace tsbench {

enum class PositionalKind { brownian, outlier, monotone, monotone_noise, sinusoidal };

inline constexpr int kPositionalLength = 175;
inline constexpr int kPositionalSamples = 400;
inline constexpr int kSamplesPerQuadrant = 50;
inline constexpr int kRejectionBudget = 100000;

inline const char* to_string(PositionalKind k) {
  switch (k) {
    case PositionalKind::brownian: return "brownian";
    case PositionalKind::outlier: return "outlier";
    case PositionalKind::monotone: return "monotone";
    case PositionalKind::monotone_noise: return "monotone_noise";
    case PositionalKind::sinusoidal: return "sinusoidal";
  }
  return "?";
}

inline DatasetKind dataset_kind_of(PositionalKind k) {
  switch (k) {
    case PositionalKind::brownian: return DatasetKind::brownian;
    case PositionalKind::outlier: return DatasetKind::outlier;
    case PositionalKind::monotone: return DatasetKind::monotone;
    case PositionalKind::monotone_noise: return DatasetKind::monotone_noise;
    case PositionalKind::sinusoidal: return DatasetKind::sinusoidal;
  }
  throw std::logic_error("dataset_kind_of: bad positional kind");
}

namespace detail {

inline std::size_t argmax_of(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::max_element(v.begin(), v.end()) - v.begin());
}

inline std::size_t argmin_of(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::min_element(v.begin(), v.end()) - v.begin());
}

inline std::vector<double> brownian_path(int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double acc = 0;
  for (int t = 0; t < n; ++t) {
    acc += rng.normal();
    v[static_cast<std::size_t>(t)] = acc;
  }
  return v;
}

}  // namespace detail

inline std::vector<AnnotatedSample> gen_positional_dataset(PositionalKind kind,
                                                           const GenConfig& cfg) {
  const int n = kPositionalLength;
  const DatasetKind dk = dataset_kind_of(kind);
  std::vector<AnnotatedSample> out;
  out.reserve(kPositionalSamples);

  for (int idx = 0; idx < kPositionalSamples; ++idx) {
    Rng rng(derive_seed(cfg.base_seed, to_string(dk),
                        static_cast<std::uint64_t>(idx)));
    AnnotatedSample s;

    switch (kind) {
      case PositionalKind::brownian:
      case PositionalKind::outlier: {
        // Samples 0..199 control the maximum, 200..399 the minimum; within
        // each block of 50 the target quadrant cycles Q1..Q4.
        const bool control_max = idx < kPositionalSamples / 2;
        const auto target =
            static_cast<Quadrant>((idx / kSamplesPerQuadrant) % 4);
        TimeSeries ts;
        ts.start_date = detail::draw_start_date(rng);
        std::size_t extremum_idx = 0;
        bool accepted = false;

        if (kind == PositionalKind::brownian) {
          for (int tries = 0; tries < kRejectionBudget; ++tries) {
            auto v = detail::brownian_path(n, rng);
            const std::size_t e = control_max ? detail::argmax_of(v)
                                              : detail::argmin_of(v);
            if (quadrant_of(e, v.size()) == target) {
              ts.values = std::move(v);
              extremum_idx = e;
              accepted = true;
              break;
            }
          }
          if (!accepted) {
            throw GenerationError("gen_positional_dataset: rejection budget exceeded");
          }
          s = detail::make_sample(dk, Feature::Volatility, "constant",
                                  std::move(ts), {});
        } else {
          const detail::Baseline base = detail::draw_baseline(rng);
          ts.values = detail::baseline_values(base, n, rng);
          std::size_t inject = 0;
          for (int tries = 0; tries < kRejectionBudget; ++tries) {
            const auto cand = static_cast<std::size_t>(rng.uniform_int(0, n - 1));
            if (quadrant_of(cand, ts.values.size()) == target) {
              inject = cand;
              accepted = true;
              break;
            }
          }
          if (!accepted) {
            throw GenerationError("gen_positional_dataset: rejection budget exceeded");
          }
          // Offset of at least five baseline sigmas clears the bounded noise
          // band, so the injected point is the global extremum by construction.
          const double mag = rng.uniform(5.0, 10.0) * base.sigma();
          ts.values[inject] = base.level + (control_max ? mag : -mag);
          extremum_idx = inject;
          s = detail::make_sample(dk, Feature::Anomaly, "spike1", std::move(ts),
                                  {{"baseline.level", base.level},
                                   {"baseline.noise_std", base.sigma()},
                                   {"spike.magnitude", control_max ? mag : -mag}});
        }
        s.label.params["target.index"] = static_cast<double>(extremum_idx);
        s.label.params["target.quadrant"] =
            static_cast<double>(static_cast<int>(target)) + 1;
        s.label.params["target.is_max"] = control_max ? 1.0 : 0.0;
        break;
      }

      case PositionalKind::monotone: {
        const bool increasing = idx < kPositionalSamples / 2;
        TimeSeries ts;
        ts.start_date = detail::draw_start_date(rng);
        double acc = rng.uniform(100.0, 110.0);
        for (int t = 0; t < n; ++t) {
          ts.values.push_back(acc);
          acc += (increasing ? 1.0 : -1.0) * rng.uniform(0.1, 1.0);
        }
        s = detail::make_sample(dk, Feature::Trend,
                                increasing ? "up.linear" : "down.linear",
                                std::move(ts), {});
        s.label.params["target.argmax"] =
            static_cast<double>(increasing ? n - 1 : 0);
        s.label.params["target.argmin"] =
            static_cast<double>(increasing ? 0 : n - 1);
        break;
      }

      case PositionalKind::monotone_noise: {
        const bool increasing = idx < kPositionalSamples / 2;
        const double slope = increasing ? 0.5 : -0.5;
        TimeSeries ts;
        ts.start_date = detail::draw_start_date(rng);
        const double level = rng.uniform(100.0, 110.0);
        for (int t = 0; t < n; ++t) {
          ts.values.push_back(level + slope * t + rng.normal());
        }
        s = detail::make_sample(dk, Feature::Trend,
                                increasing ? "up.linear" : "down.linear",
                                std::move(ts), {{"slope", slope}});
        s.label.params["target.argmax"] =
            static_cast<double>(detail::argmax_of(s.series.values));
        s.label.params["target.argmin"] =
            static_cast<double>(detail::argmin_of(s.series.values));
        break;
      }

      case PositionalKind::sinusoidal: {
        const double p = rng.coin() ? 30.0 : 7.0;
        const double amp = rng.uniform(10.0, 50.0);
        const double level = rng.uniform(100.0, 110.0);
        const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
        TimeSeries ts;
        ts.start_date = detail::draw_start_date(rng);
        for (int t = 0; t < n; ++t) {
          ts.values.push_back(
              level + amp * std::sin(2.0 * std::numbers::pi * t / p + phase));
        }
        s = detail::make_sample(dk, Feature::Seasonality, "fixed", std::move(ts),
                                {{"period", p}, {"amplitude", amp},
                                 {"offset", level}, {"phase", phase}});
        break;
      }
    }

    s.split = Split::test;
    s.id = std::string(to_string(dk)) + "-test-" +
           (idx < 10 ? "0000" : idx < 100 ? "000" : "00") + std::to_string(idx);
    attach_descriptions(s);
    out.push_back(std::move(s));
  }
  return out;
}

struct SearchTarget {
  double value = 0;  // at display precision
  bool present = false;
};

// For present targets, picks a value whose index quadrant matches the request;
// for absent ones, a value outside the series' display-precision value set.
inline SearchTarget target_for_search(const AnnotatedSample& sample,
                                      Quadrant quadrant, Rng& rng,
                                      bool present) {
  const auto& v = sample.series.values;
  if (v.size() < 4) {
    throw std::domain_error("target_for_search: series too short");
  }
  SearchTarget out;
  out.present = present;
  if (present) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_missing(v[i]) && quadrant_of(i, v.size()) == quadrant) {
        candidates.push_back(i);
      }
    }
    if (candidates.empty()) {
      throw std::domain_error("target_for_search: quadrant has no values");
    }
    const auto pick = candidates[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))];
    out.value = round_to_display(v[pick]);
    return out;
  }
  std::set<double> present_values;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) {
    if (is_missing(x)) continue;
    present_values.insert(round_to_display(x));
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  for (int tries = 0; tries < 1000; ++tries) {
    const double cand = round_to_display(rng.uniform(lo, hi));
    if (!present_values.count(cand)) {
      out.value = cand;
      return out;
    }
  }
  out.value = round_to_display(hi + rng.uniform(1.0, 10.0));
  return out;
}

}  // namespace tsbench

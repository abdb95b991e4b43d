#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "tsbench/synth_quadrant.hpp"

using namespace tsbench;

namespace {

std::size_t arg_extremum(const std::vector<double>& v, bool is_max) {
  return is_max ? static_cast<std::size_t>(
                      std::max_element(v.begin(), v.end()) - v.begin())
                : static_cast<std::size_t>(
                      std::min_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

TEST_CASE("brownian dataset controls quadrant counts exactly") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::brownian, cfg);
  REQUIRE(samples.size() == 400);
  std::map<std::pair<bool, int>, int> counts;
  for (const auto& s : samples) {
    REQUIRE(s.series.values.size() == 175);
    const bool is_max = s.label.params.at("target.is_max") == 1.0;
    const auto target = static_cast<int>(s.label.params.at("target.quadrant"));
    const auto idx = static_cast<std::size_t>(s.label.params.at("target.index"));
    // The recorded index is the argmax/argmin and lies in the target quadrant.
    REQUIRE(arg_extremum(s.series.values, is_max) == idx);
    REQUIRE(static_cast<int>(quadrant_of(idx, 175)) + 1 == target);
    ++counts[{is_max, target}];
  }
  REQUIRE(counts.size() == 8);
  for (const auto& [key, c] : counts) REQUIRE(c == 50);
}

TEST_CASE("outlier dataset injects the global extremum in every sample") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::outlier, cfg);
  REQUIRE(samples.size() == 400);
  std::map<std::pair<bool, int>, int> counts;
  for (const auto& s : samples) {
    const bool is_max = s.label.params.at("target.is_max") == 1.0;
    const auto idx = static_cast<std::size_t>(s.label.params.at("target.index"));
    REQUIRE(arg_extremum(s.series.values, is_max) == idx);
    ++counts[{is_max, static_cast<int>(s.label.params.at("target.quadrant"))}];
  }
  for (const auto& [key, c] : counts) REQUIRE(c == 50);
}

TEST_CASE("monotone samples are strictly ordered") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::monotone, cfg);
  REQUIRE(samples.size() == 400);
  int increasing = 0;
  for (const auto& s : samples) {
    const auto& v = s.series.values;
    const bool up = s.label.sub_feature == "up.linear";
    increasing += up;
    for (std::size_t i = 1; i < v.size(); ++i) {
      REQUIRE((up ? v[i] > v[i - 1] : v[i] < v[i - 1]));
    }
    // Monotonicity pins the extremum quadrants.
    const auto amax = static_cast<std::size_t>(s.label.params.at("target.argmax"));
    REQUIRE(quadrant_of(amax, v.size()) == (up ? Quadrant::Q4 : Quadrant::Q1));
  }
  CHECK(increasing == 200);
}

TEST_CASE("monotone-noise samples drift but are not strictly ordered") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::monotone_noise, cfg);
  int strictly_monotone = 0;
  for (const auto& s : samples) {
    const auto& v = s.series.values;
    const bool up = s.label.sub_feature == "up.linear";
    // Aggregate drift matches the label.
    const std::vector<double> head(v.begin(), v.begin() + 40);
    const std::vector<double> tail(v.end() - 40, v.end());
    const double dh = stats::mean(tail) - stats::mean(head);
    REQUIRE((up ? dh > 0 : dh < 0));
    bool strict = true;
    for (std::size_t i = 1; i < v.size() && strict; ++i) {
      strict = up ? v[i] > v[i - 1] : v[i] < v[i - 1];
    }
    strictly_monotone += strict;
  }
  CHECK(strictly_monotone == 0);
}

TEST_CASE("rejection sampling is deterministic per seed") {
  GenConfig cfg;
  cfg.base_seed = 99;
  const auto a = gen_positional_dataset(PositionalKind::brownian, cfg);
  const auto b = gen_positional_dataset(PositionalKind::brownian, cfg);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].series.values == b[i].series.values);
  }
}

TEST_CASE("search targets respect quadrant and membership") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::sinusoidal, cfg);
  Rng rng(17);
  for (std::size_t i = 0; i < 50; ++i) {
    const auto& s = samples[i];
    const auto q = static_cast<Quadrant>(i % 4);
    const auto present = target_for_search(s, q, rng, true);
    bool found_in_quadrant = false;
    for (std::size_t j = 0; j < s.series.values.size(); ++j) {
      if (round_to_display(s.series.values[j]) == present.value &&
          quadrant_of(j, s.series.values.size()) == q) {
        found_in_quadrant = true;
        break;
      }
    }
    REQUIRE(found_in_quadrant);

    const auto absent = target_for_search(s, q, rng, false);
    for (double v : s.series.values) {
      REQUIRE(round_to_display(v) != absent.value);
    }
  }
}

TEST_CASE("search target on a monotone series dominates earlier quadrants") {
  GenConfig cfg;
  const auto samples = gen_positional_dataset(PositionalKind::monotone, cfg);
  Rng rng(18);
  const auto& s = samples[0];  // increasing
  REQUIRE(s.label.sub_feature == "up.linear");
  const auto t = target_for_search(s, Quadrant::Q4, rng, true);
  const auto& v = s.series.values;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (quadrant_of(j, v.size()) == Quadrant::Q1) {
      REQUIRE(t.value > v[j]);
    }
  }
}

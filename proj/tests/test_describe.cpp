#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "tsbench/describe.hpp"
#include "tsbench/synth.hpp"

using namespace tsbench;

namespace {

AnnotatedSample quadratic_down_sample(const std::string& id) {
  Rng rng(fnv1a(id));
  auto s = gen_trend(TrendDirection::down, TrendKind::quadratic, 60, {}, rng);
  s.id = id;
  attach_descriptions(s);
  return s;
}

}  // namespace

TEST_CASE("downward quadratic trend wording includes the stock sentence") {
  const std::string expected =
      "This time series exhibits a downward quadratic trend, commencing with "
      "higher figures and falling gradually.";
  bool found = false;
  for (int i = 0; i < 64 && !found; ++i) {
    const auto s = quadratic_down_sample("probe-" + std::to_string(i));
    found = s.qualitative == expected;
  }
  CHECK(found);
}

TEST_CASE("qualitative text is deterministic and digit free") {
  const auto a = quadratic_down_sample("fixed-id");
  const auto b = quadratic_down_sample("fixed-id");
  CHECK(a.qualitative == b.qualitative);
  CHECK_FALSE(contains_digit(a.qualitative));

  Rng rng(3);
  auto corr = gen_correlated_pair(0.7, 60, rng);
  corr.id = "c-1";
  attach_descriptions(corr);
  CHECK(corr.qualitative.find("positively") != std::string::npos);
  CHECK_FALSE(contains_digit(corr.qualitative));
}

TEST_CASE("quantitative text reproduces the stock seasonal summary") {
  // 125 points of a pure monthly sine whose peaks land on integer indices:
  // five interior peaks, four troughs, amplitude 24.25 on the nose.
  AnnotatedSample s;
  s.id = "season-fixture";
  s.dataset_kind = DatasetKind::seasonality;
  s.split = Split::test;
  s.series.start_date = make_date(2024, 1, 1);
  for (int t = 0; t < 125; ++t) {
    s.series.values.push_back(
        24.25 * std::sin(2.0 * std::numbers::pi * t / 30.0 +
                         11.0 * std::numbers::pi / 30.0));
  }
  s.label.feature = Feature::Seasonality;
  s.label.sub_feature = "multiple";
  s.label.params = {{"period", 7.0}, {"period2", 30.0}};
  attach_descriptions(s);

  CHECK(s.quantitative.starts_with(
      "This daily time series covers the period from 2024-01-01 to 2024-05-04. "
      "It exhibits multiple seasonal patterns with monthly seasonality, with "
      "5 peaks and 4 troughs, and an average amplitude of 24.25."));
  CHECK(validate(s).ok());
}

TEST_CASE("stated extrema equal the true extrema at display precision") {
  GenConfig cfg;
  const auto samples = gen_dataset(DatasetKind::anomaly, {0, 0, 40}, cfg);
  for (const auto& s : samples) {
    const auto finite = stats::drop_missing(s.series.values);
    const double lo = *std::min_element(finite.begin(), finite.end());
    const double hi = *std::max_element(finite.begin(), finite.end());
    REQUIRE(s.quantitative.find("The minimum value is " + format_value(lo)) !=
            std::string::npos);
    REQUIRE(s.quantitative.find("the maximum value is " + format_value(hi)) !=
            std::string::npos);
    const Date last = add_days(s.series.start_date,
                               static_cast<long>(s.series.values.size()) - 1);
    REQUIRE(s.quantitative.find("from " + format_date(s.series.start_date) +
                                " to " + format_date(last)) !=
            std::string::npos);
  }
}

TEST_CASE("seasonal quantitative numbers are recomputable from the series") {
  GenConfig cfg;
  const auto samples = gen_dataset(DatasetKind::seasonality, {0, 0, 25}, cfg);
  for (const auto& s : samples) {
    if (s.label.sub_feature == "none") continue;
    const PeakStats ps = peak_stats(s.series.values);
    REQUIRE(s.quantitative.find("with " + std::to_string(ps.peaks.size()) +
                                " peaks and " +
                                std::to_string(ps.troughs.size()) +
                                " troughs") != std::string::npos);
    REQUIRE(s.quantitative.find("average amplitude of " +
                                format_value(ps.average_amplitude)) !=
            std::string::npos);
  }
}

TEST_CASE("unknown label is an error") {
  AnnotatedSample s;
  s.label.feature = static_cast<Feature>(99);
  s.series.values = {1, 2, 3};
  CHECK_THROWS_AS(qualitative_description(s), std::invalid_argument);
}

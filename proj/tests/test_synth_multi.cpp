#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tsbench/stats.hpp"
#include "tsbench/synth_multi.hpp"

using namespace tsbench;

TEST_CASE("rho of one makes the channels identical") {
  Rng rng(1);
  const auto s = gen_correlated_pair(1.0, 60, rng);
  CHECK(s.series.values == s.series.values2);
}

TEST_CASE("independent channels show weak sample correlation") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const auto s = gen_correlated_pair(0.0, 150, rng);
    if (std::fabs(stats::pearson(s.series.values, s.series.values2)) < 0.2) ++ok;
    CHECK(s.label.sub_feature == "none");
  }
  CHECK(ok >= 38);
}

TEST_CASE("rho 0.8 lands in the expected sample-correlation band") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const auto s = gen_correlated_pair(0.8, 150, rng);
    const double r = stats::pearson(s.series.values, s.series.values2);
    REQUIRE(r > 0.6);
    REQUIRE(r < 0.95);
  }
}

TEST_CASE("out-of-range rho is a domain error") {
  Rng rng(2);
  CHECK_THROWS_AS(gen_correlated_pair(1.5, 60, rng), std::domain_error);
}

TEST_CASE("perfect lagged pair is a pure shift on the overlap") {
  Rng rng(3);
  const auto s = gen_cross_correlated_pair(1.0, 2, 60, rng);
  const auto& x = s.series.values;
  const auto& y = s.series.values2;
  for (std::size_t t = 2; t < y.size(); ++t) {
    REQUIRE(y[t] == x[t - 2]);
  }
  CHECK(s.label.sub_feature == "direct_lagged");
}

TEST_CASE("brute-force correlogram recovers the generating lag") {
  int hits = 0;
  const int trials = 40;
  for (std::uint64_t seed = 0; seed < trials; ++seed) {
    Rng rng(seed);
    const auto s = gen_cross_correlated_pair(0.8, 3, 150, rng);
    double best = -2;
    std::size_t best_lag = 99;
    for (std::size_t lag = 0; lag <= 10; ++lag) {
      const double c =
          stats::cross_correlation(s.series.values, s.series.values2, lag);
      if (c > best) {
        best = c;
        best_lag = lag;
      }
    }
    if (best_lag == 3) ++hits;
  }
  // The ground-truth lag must dominate on at least 95 percent of seeds.
  CHECK(hits >= 38);
}

TEST_CASE("negative direct pair has strongly negative correlation") {
  Rng rng(4);
  const auto s = gen_cross_correlated_pair(-0.8, 0, 150, rng);
  CHECK(stats::pearson(s.series.values, s.series.values2) < -0.6);
  CHECK(s.label.sub_feature == "inverse");
}

TEST_CASE("lag outside a quarter of the series is a domain error") {
  Rng rng(5);
  CHECK_THROWS_AS(gen_cross_correlated_pair(0.8, 20, 60, rng),
                  std::domain_error);
}

namespace {

std::pair<double, double> half_correlations(const AnnotatedSample& s) {
  const auto k = static_cast<std::size_t>(s.label.params.at("switch_index"));
  const auto& x = s.series.values;
  const auto& y = s.series.values2;
  const std::vector<double> x1(x.begin(), x.begin() + static_cast<long>(k));
  const std::vector<double> y1(y.begin(), y.begin() + static_cast<long>(k));
  const std::vector<double> x2(x.begin() + static_cast<long>(k), x.end());
  const std::vector<double> y2(y.begin() + static_cast<long>(k), y.end());
  return {stats::pearson(x1, y1), stats::pearson(x2, y2)};
}

}  // namespace

TEST_CASE("dcc correlation is confined to the labeled half") {
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    Rng rng(seed);
    const auto s = gen_dcc_pair(DccRegime::first_half, 0.9, 150, rng);
    const auto [c1, c2] = half_correlations(s);
    if (std::fabs(c1) >= 0.6 && std::fabs(c2) <= 0.3) ++ok;
  }
  CHECK(ok >= 36);

  Rng rng(7);
  const auto s = gen_dcc_pair(DccRegime::second_half, -0.9, 150, rng);
  const auto [c1, c2] = half_correlations(s);
  CHECK(c2 <= -0.6);
  CHECK(s.label.sub_feature == "second_half.negative");
}

TEST_CASE("dcc with rho one makes the correlated half identical pointwise") {
  Rng rng(8);
  const auto s = gen_dcc_pair(DccRegime::first_half, 1.0, 100, rng);
  const auto k = static_cast<std::size_t>(s.label.params.at("switch_index"));
  for (std::size_t t = 0; t < k; ++t) {
    REQUIRE(s.series.values[t] == s.series.values2[t]);
  }
}

TEST_CASE("label sign always matches the realized correlation on its segment") {
  for (std::uint64_t seed = 50; seed < 90; ++seed) {
    Rng rng(seed);
    const double rho = (seed % 2 ? -1.0 : 1.0) * 0.7;
    const auto s = gen_correlated_pair(rho, 120, rng);
    REQUIRE(s.series.values.size() == s.series.values2.size());
    const double r = stats::pearson(s.series.values, s.series.values2);
    REQUIRE((rho > 0 ? r > 0 : r < 0));
    REQUIRE(s.label.sub_feature == (rho > 0 ? "positive" : "negative"));
  }
}

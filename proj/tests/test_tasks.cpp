#include <catch2/catch_amalgamated.hpp>

#include "tsbench/solvers.hpp"
#include "tsbench/synth.hpp"
#include "tsbench/tasks.hpp"

using namespace tsbench;

namespace {

AnnotatedSample reference_sample() {
  AnnotatedSample s;
  s.id = "ref-0";
  s.dataset_kind = DatasetKind::trend;
  s.series.start_date = make_date(2020, 1, 1);
  s.series.values = {100, 105, 103, 103};
  s.label.feature = Feature::Trend;
  s.label.sub_feature = "up.linear";
  s.qualitative = "This time series exhibits an upward linear trend.";
  s.quantitative = "Covers 2020-01-01 to 2020-01-04.";
  return s;
}

}  // namespace

TEST_CASE("detection keys follow the label") {
  Rng rng(1);
  auto up = gen_trend(TrendDirection::up, TrendKind::linear, 40, {}, rng);
  up.id = "up";
  const auto t = build_detection_task(up, PromptStyle::zero_shot);
  CHECK(t.key.yes_no == true);
  CHECK(t.prompt.find("can you detect a general upward or downward trend") !=
        std::string::npos);

  auto control = gen_feature_control(DatasetKind::trend, 40, rng);
  control.id = "ctl";
  CHECK(build_detection_task(control, PromptStyle::zero_shot).key.yes_no ==
        false);
}

TEST_CASE("detection prompt embeds the exact rendered series") {
  const auto t =
      build_detection_task(reference_sample(), PromptStyle::zero_shot,
                           WireFormat::csv);
  CHECK(t.prompt.find("Date,Value\n"
                      "2020-01-01,100\n"
                      "2020-01-02,105\n"
                      "2020-01-03,103\n"
                      "2020-01-04,103\n") != std::string::npos);
  // The embedded block is recoverable and parseable.
  const auto block = series_block_of(t.prompt);
  REQUIRE(block.has_value());
  const TimeSeries back = parse(*block, WireFormat::csv);
  CHECK(back.values == reference_sample().series.values);
}

TEST_CASE("stationarity detection answers the literal question") {
  Rng rng(5);
  auto stat = gen_stat_properties(StatKind::stationary, 60, rng);
  stat.id = "st";
  CHECK(build_detection_task(stat, PromptStyle::zero_shot).key.yes_no == true);

  auto drift = gen_stat_properties(StatKind::nonstat_mean, 60, rng);
  drift.id = "dr";
  CHECK(build_detection_task(drift, PromptStyle::zero_shot).key.yes_no == false);
}

TEST_CASE("classification letters follow the option order") {
  Rng rng(7);
  auto shift = gen_anomaly(AnomalyKind::level_shift, 60, rng);
  shift.id = "ls";
  CHECK(build_classification_task(shift, PromptStyle::zero_shot).key.choice ==
        'b');

  SeasonParams sp;
  sp.period = 7.0;
  auto fixed = gen_seasonality(SeasonPattern::fixed, 60, rng, sp);
  fixed.id = "fx";
  CHECK(build_classification_task(fixed, PromptStyle::zero_shot).key.choice ==
        'a');

  auto garch = gen_volatility(VolatilityMode::clustered_garch, 60, rng);
  garch.id = "g";
  CHECK(build_classification_task(garch, PromptStyle::zero_shot).key.choice ==
        'c');
}

TEST_CASE("control samples have no classification task") {
  Rng rng(8);
  auto control = gen_anomaly(AnomalyKind::none, 60, rng);
  control.id = "none";
  CHECK_THROWS_AS(build_classification_task(control, PromptStyle::zero_shot),
                  TaskError);
}

TEST_CASE("adaptive flow pairs detection with a conditional follow-up") {
  Rng rng(9);
  auto garch = gen_volatility(VolatilityMode::clustered_garch, 60, rng);
  garch.id = "g2";
  const auto flow = build_adaptive_flow(garch, PromptStyle::zero_shot);
  CHECK(flow.classify_on_yes);
  REQUIRE(flow.classification.has_value());
  CHECK(flow.classification->key.choice == 'c');

  auto control = gen_feature_control(DatasetKind::volatility, 60, rng);
  control.id = "vc";
  CHECK_FALSE(build_adaptive_flow(control, PromptStyle::zero_shot)
                  .classification.has_value());
}

TEST_CASE("stationarity flow triggers on a negative answer") {
  Rng rng(10);
  auto drift = gen_stat_properties(StatKind::nonstat_variance, 60, rng);
  drift.id = "nv";
  const auto flow = build_adaptive_flow(drift, PromptStyle::zero_shot);
  CHECK_FALSE(flow.classify_on_yes);
  REQUIRE(flow.classification.has_value());
  CHECK(flow.classification->key.choice == 'b');

  auto stat = gen_stat_properties(StatKind::stationary, 60, rng);
  stat.id = "st2";
  CHECK_FALSE(build_adaptive_flow(stat, PromptStyle::zero_shot)
                  .classification.has_value());
}

TEST_CASE("retrieval key over the reference series") {
  const auto s = reference_sample();
  const auto t = build_retrieval_bundle(s, PromptStyle::zero_shot,
                                        WireFormat::csv, make_date(2020, 1, 3));
  REQUIRE(t.key.retrieval.has_value());
  const auto& k = *t.key.retrieval;
  CHECK(k.max_value == 105.0);
  CHECK(format_date(k.max_date) == "2020-01-02");
  CHECK(k.min_value == 100.0);
  CHECK(format_date(k.min_date) == "2020-01-01");
  CHECK(k.value_on_date == 103.0);
  CHECK(t.prompt.find("'value_on_date 2020-01-03': {'value':value}") !=
        std::string::npos);
}

TEST_CASE("retrieval ties resolve to the earliest date") {
  AnnotatedSample s = reference_sample();
  s.series.values = {104, 104, 104, 104};
  const auto t = build_retrieval_bundle(s, PromptStyle::zero_shot,
                                        WireFormat::csv, make_date(2020, 1, 1));
  const auto& k = *t.key.retrieval;
  CHECK(k.max_value == k.min_value);
  CHECK(format_date(k.max_date) == "2020-01-01");
  CHECK(format_date(k.min_date) == "2020-01-01");
  CHECK(k.value_on_date == 104.0);
}

TEST_CASE("retrieval rejects out-of-range query dates") {
  const auto s = reference_sample();
  CHECK_THROWS_AS(build_retrieval_bundle(s, PromptStyle::zero_shot,
                                         WireFormat::csv, make_date(2020, 2, 1)),
                  TaskError);
}

TEST_CASE("search keys are display-precision membership") {
  const auto s = reference_sample();
  CHECK(build_search_task(s, 105.0, PromptStyle::zero_shot).key.yes_no == true);
  CHECK(build_search_task(s, 104.0, PromptStyle::zero_shot).key.yes_no == false);
  // A value between two adjacent values of a monotone series is absent.
  AnnotatedSample mono = reference_sample();
  mono.series.values = {100, 101, 102, 103};
  CHECK(build_search_task(mono, 101.5, PromptStyle::zero_shot).key.yes_no ==
        false);
}

TEST_CASE("text matching shuffles and keys the target option") {
  GenConfig cfg;
  const auto trend = gen_dataset(DatasetKind::trend, {0, 0, 8}, cfg);
  Rng rng(42);
  std::array<const AnnotatedSample*, 3> pool = {&trend[1], &trend[2], &trend[3]};
  const auto t = build_text_matching_task(trend[0], pool, TextMatchMode::intra,
                                          WireFormat::csv,
                                          PromptStyle::zero_shot, rng);
  REQUIRE(t.key.match.has_value());
  const char letter = *t.key.match;
  REQUIRE(letter >= 'a');
  REQUIRE(letter <= 'd');
  // The keyed option is the target's intra description (qualitative +
  // quantitative), and intra options carry digits.
  const std::string expected = description_text(trend[0], TextMatchMode::intra);
  const std::string marker = std::string("(") + letter + ") " + expected + "\n";
  CHECK(t.prompt.find(marker) != std::string::npos);
  CHECK(contains_digit(expected));
}

TEST_CASE("cross-dataset matching needs four distinct datasets") {
  GenConfig cfg;
  const auto trend = gen_dataset(DatasetKind::trend, {0, 0, 4}, cfg);
  Rng rng(43);
  std::array<const AnnotatedSample*, 3> pool = {&trend[1], &trend[2], &trend[3]};
  CHECK_THROWS_AS(
      build_text_matching_task(trend[0], pool, TextMatchMode::cross,
                               WireFormat::csv, PromptStyle::zero_shot, rng),
      TaskError);

  const auto season = gen_dataset(DatasetKind::seasonality, {0, 0, 2}, cfg);
  const auto vol = gen_dataset(DatasetKind::volatility, {0, 0, 2}, cfg);
  const auto fat = gen_dataset(DatasetKind::fat_tails, {0, 0, 2}, cfg);
  std::array<const AnnotatedSample*, 3> mixed = {&season[0], &vol[0], &fat[0]};
  const auto t = build_text_matching_task(trend[0], mixed, TextMatchMode::cross,
                                          WireFormat::csv,
                                          PromptStyle::zero_shot, rng);
  // Cross options are qualitative only: no digits anywhere in the options.
  const std::size_t qpos = t.prompt.find("Given the following four descriptions");
  const std::size_t qend = t.prompt.find("Question: which description");
  REQUIRE(qpos != std::string::npos);
  CHECK_FALSE(contains_digit(t.prompt.substr(qpos, qend - qpos)));
}

TEST_CASE("answer keys are recomputable from the sample alone") {
  GenConfig cfg;
  for (const auto kind : {DatasetKind::trend, DatasetKind::anomaly,
                          DatasetKind::correlation, DatasetKind::stationarity}) {
    const auto samples = gen_dataset(kind, {0, 0, 30}, cfg);
    for (const auto& s : samples) {
      const auto a = build_detection_task(s, PromptStyle::zero_shot);
      const auto b = build_detection_task(s, PromptStyle::zero_shot);
      REQUIRE(a.key.yes_no == b.key.yes_no);
      REQUIRE(a.prompt == b.prompt);
      if (prompts::classifiable(s.label.feature, s.label.sub_feature)) {
        REQUIRE(build_classification_task(s, PromptStyle::zero_shot).key.choice ==
                build_classification_task(s, PromptStyle::zero_shot).key.choice);
      }
    }
  }
}

TEST_CASE("cot prompts end with the step-by-step nudge where not bespoke") {
  Rng rng(11);
  auto garch = gen_volatility(VolatilityMode::clustered_garch, 60, rng);
  garch.id = "g3";
  const auto t = build_detection_task(garch, PromptStyle::cot);
  CHECK(t.prompt.ends_with("Let's think step by step."));
}

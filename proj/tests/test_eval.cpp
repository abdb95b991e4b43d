#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tsbench/eval.hpp"
#include "tsbench/rng.hpp"

using namespace tsbench;

TEST_CASE("yes/no parsing takes the first standalone token") {
  CHECK(parse_yes_no("Yes, there is a clear upward trend.") == true);
  CHECK(parse_yes_no("no") == false);
  CHECK(parse_yes_no("NO.") == false);
  CHECK(parse_yes_no("The answer is Yes") == true);
  CHECK_FALSE(parse_yes_no("It is ambiguous.").has_value());
  CHECK_FALSE(parse_yes_no("nothing but noise").has_value());  // not "no"
  CHECK_FALSE(parse_yes_no("").has_value());
}

TEST_CASE("choice parsing prefers the first letter mentioned") {
  CHECK(parse_choice("The answer is (b).") == 'b');
  CHECK(parse_choice("a") == 'a');
  CHECK(parse_choice("either (a) or (b)") == 'a');
  CHECK(parse_choice("(D)") == 'd');
  CHECK_FALSE(parse_choice("none of these").has_value());
  CHECK_FALSE(parse_choice("").has_value());
}

TEST_CASE("retrieval parsing tolerates quote styles and separators") {
  const auto r = parse_retrieval(
      "{'max_value': {'value': 105, 'date': '2020-01-02'}, "
      "'min_value': {'value': 100, 'date': '2020-01-01'}, "
      "'value_on_date 2020-01-03': {'value': 103}}");
  REQUIRE(r.max_value.has_value());
  CHECK(*r.max_value == 105.0);
  CHECK(*r.max_date == "2020-01-02");
  CHECK(*r.min_value == 100.0);
  CHECK(*r.min_date == "2020-01-01");
  CHECK(*r.value_on_date == 103.0);

  const auto dq = parse_retrieval(
      "{\"max_value\": {\"value\": 1,050, \"date\": \"2021-05-05\"}}");
  REQUIRE(dq.max_value.has_value());
  CHECK(*dq.max_value == 1050.0);  // thousands separator normalized
  CHECK_FALSE(dq.min_value.has_value());
  CHECK_FALSE(dq.value_on_date.has_value());
}

TEST_CASE("retrieval fields fail independently") {
  const auto r = parse_retrieval(
      "{'max_value': {'value': 12.5, 'date': '2022-01-09'}, "
      "'value_on_date 2022-01-02': {'value': 7}}");
  CHECK(r.max_value.has_value());
  CHECK(r.max_date.has_value());
  CHECK_FALSE(r.min_value.has_value());
  CHECK_FALSE(r.min_date.has_value());
  CHECK(r.value_on_date.has_value());
}

TEST_CASE("parsers never throw on arbitrary bytes") {
  Rng rng(123);
  for (int i = 0; i < 500; ++i) {
    std::string junk;
    const int len = static_cast<int>(rng.uniform_int(0, 60));
    for (int k = 0; k < len; ++k) {
      junk += static_cast<char>(rng.uniform_int(1, 126));
    }
    CHECK_NOTHROW(parse_yes_no(junk));
    CHECK_NOTHROW(parse_choice(junk));
    CHECK_NOTHROW(parse_retrieval(junk));
  }
}

TEST_CASE("f1 of a perfect predictor is one") {
  const std::vector<std::string> t = {"yes", "no", "yes"};
  CHECK(f1_score(t, t) == 1.0);
}

TEST_CASE("balanced binary confusion gives one half") {
  // Per class: TP=1, FP=1, FN=1 -> F1 = 0.5; macro mean 0.5.
  const std::vector<std::string> truths = {"yes", "yes", "no", "no"};
  const std::vector<std::string> preds = {"yes", "no", "yes", "no"};
  CHECK(f1_score(preds, truths) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("single-class predictor on balanced truths scores one third") {
  const std::vector<std::string> truths = {"yes", "yes", "no", "no"};
  const std::vector<std::string> preds = {"yes", "yes", "yes", "yes"};
  CHECK(f1_score(preds, truths) == Catch::Approx(1.0 / 3.0).margin(1e-12));
}

TEST_CASE("f1 matches a brute-force per-class computation") {
  Rng rng(777);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 50));
    const int k = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<std::string> truths, preds;
    for (int i = 0; i < n; ++i) {
      truths.push_back(alphabet[static_cast<std::size_t>(rng.uniform_int(0, k - 1))]);
      preds.push_back(alphabet[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
    }
    // Brute force from 2TP / (2TP + FP + FN) per truth class.
    std::vector<std::string> classes;
    for (const auto& t : truths) {
      if (std::find(classes.begin(), classes.end(), t) == classes.end()) {
        classes.push_back(t);
      }
    }
    double sum = 0;
    for (const auto& c : classes) {
      double tp = 0, fp = 0, fn = 0;
      for (int i = 0; i < n; ++i) {
        tp += preds[static_cast<std::size_t>(i)] == c && truths[static_cast<std::size_t>(i)] == c;
        fp += preds[static_cast<std::size_t>(i)] == c && truths[static_cast<std::size_t>(i)] != c;
        fn += preds[static_cast<std::size_t>(i)] != c && truths[static_cast<std::size_t>(i)] == c;
      }
      sum += (2 * tp + fp + fn) == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
    }
    const double expect = sum / static_cast<double>(classes.size());
    REQUIRE(f1_score(preds, truths) == Catch::Approx(expect).margin(1e-12));
  }
}

TEST_CASE("f1 rejects empty or misaligned input") {
  CHECK_THROWS_AS(f1_score({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(f1_score({"a"}, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("accuracy and mape over hand-built fixtures") {
  std::vector<RetrievalParse> preds(3);
  std::vector<RetrievalKeyView> keys(3);
  for (int i = 0; i < 3; ++i) {
    keys[static_cast<std::size_t>(i)] = {100, "2020-01-05", 50, "2020-01-01", 75};
    preds[static_cast<std::size_t>(i)] = {100, "2020-01-05", 50, "2020-01-01", 75};
  }
  auto all_exact = accuracy_and_mape(preds, keys);
  CHECK(all_exact.fields["max_value"].accuracy == 1.0);
  CHECK(all_exact.fields["max_value"].mape == 0.0);
  CHECK(all_exact.fields["min_date"].accuracy == 1.0);

  // Single pair, 110 predicted vs 100 true: MAPE exactly 0.10.
  preds.assign(1, RetrievalParse{});
  keys.assign(1, RetrievalKeyView{});
  preds[0].max_value = 110;
  keys[0].max_value = 100;
  keys[0].max_date = "2020-01-05";
  auto one = accuracy_and_mape(preds, keys);
  CHECK(one.fields["max_value"].mape == Catch::Approx(0.10).margin(1e-12));
  CHECK(one.fields["max_value"].accuracy == 0.0);
  // The unparsed date counts as inaccurate and is excluded from MAPE.
  CHECK(one.fields["max_date"].accuracy == 0.0);
  CHECK(one.fields["max_date"].mape_excluded == 1);
}

TEST_CASE("sloppy date formats are strictly wrong") {
  std::vector<RetrievalParse> preds(1);
  std::vector<RetrievalKeyView> keys(1);
  preds[0].max_date = "2020-1-2";
  keys[0].max_date = "2020-01-02";
  auto r = accuracy_and_mape(preds, keys);
  CHECK(r.fields["max_date"].accuracy == 0.0);
}

TEST_CASE("mape denominator is floored near zero") {
  std::vector<RetrievalParse> preds(1);
  std::vector<RetrievalKeyView> keys(1);
  preds[0].max_value = 1.0;
  keys[0].max_value = 0.0;
  auto r = accuracy_and_mape(preds, keys);
  CHECK(std::isfinite(r.fields["max_value"].mape));
}

TEST_CASE("confusion matrix counts truths by row with an unparsed column") {
  const std::vector<std::string> truths = {"yes", "yes", "no", "no"};
  const std::vector<std::string> preds = {"yes", kUnparsedClass, "yes", "no"};
  const auto m = confusion_matrix(preds, truths, {"no", "yes"});
  CHECK(m.total == 4);
  // rows: no, yes; cols: no, yes, unparsed
  CHECK(m.counts[0][0] == 1);  // no -> no
  CHECK(m.counts[0][1] == 1);  // no -> yes
  CHECK(m.counts[1][1] == 1);  // yes -> yes
  CHECK(m.counts[1][2] == 1);  // yes -> unparsed
  // Row sums equal per-class truth counts.
  for (std::size_t rx = 0; rx < m.classes.size(); ++rx) {
    std::size_t sum = 0;
    for (auto c : m.counts[rx]) sum += c;
    CHECK(sum == 2);
  }
}

TEST_CASE("perfect predictor yields a diagonal confusion matrix") {
  const std::vector<std::string> truths = {"a", "b", "c", "a"};
  const auto m = confusion_matrix(truths, truths, {"a", "b", "c"});
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t jx = 0; jx < m.counts[i].size(); ++jx) {
      if (i == jx) {
        CHECK(m.counts[i][jx] > 0);
      } else {
        CHECK(m.counts[i][jx] == 0);
      }
    }
  }
}

namespace {

std::vector<QuadrantOutcome> outcomes_from(
    const std::array<std::pair<int, int>, 4>& correct_of_total) {
  std::vector<QuadrantOutcome> out;
  for (int q = 0; q < 4; ++q) {
    const auto [correct, total] = correct_of_total[static_cast<std::size_t>(q)];
    for (int i = 0; i < total; ++i) {
      out.push_back({static_cast<Quadrant>(q), i < correct});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("position bias flags only gaps strictly above ten points") {
  auto uniform = position_bias_report(outcomes_from({{{10, 10}, {10, 10}, {10, 10}, {10, 10}}}));
  CHECK_FALSE(uniform.bias_flag);

  auto wide = position_bias_report(outcomes_from({{{9, 10}, {9, 10}, {9, 10}, {7, 10}}}));
  CHECK(wide.bias_flag);  // gap 0.2

  // Gap of exactly 0.10 stays unflagged.
  auto edge = position_bias_report(outcomes_from({{{90, 100}, {80, 100}, {85, 100}, {85, 100}}}));
  CHECK(edge.gap <= 0.10);
  CHECK_FALSE(edge.bias_flag);

  // 0.101 is flagged.
  auto over = position_bias_report(
      outcomes_from({{{901, 1000}, {800, 1000}, {850, 1000}, {850, 1000}}}));
  CHECK(over.bias_flag);

  auto narrow = position_bias_report(
      outcomes_from({{{85, 100}, {80, 100}, {78, 100}, {76, 100}}}));
  CHECK_FALSE(narrow.bias_flag);  // gap 0.09
}

TEST_CASE("empty quadrants are omitted and reported") {
  std::vector<QuadrantOutcome> outcomes = {{Quadrant::Q1, true},
                                           {Quadrant::Q2, true}};
  const auto r = position_bias_report(outcomes);
  CHECK(r.accuracy.size() == 2);
  REQUIRE(r.missing.size() == 2);
  CHECK(r.missing[0] == Quadrant::Q3);
  CHECK(r.missing[1] == Quadrant::Q4);
}

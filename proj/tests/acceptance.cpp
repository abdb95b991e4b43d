// Acceptance suite: ten gate criteria, one pass/fail line each. Exits
// non-zero if any criterion fails or exceeds its runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "tsbench/report.hpp"
#include "tsbench/runner.hpp"
#include "tsbench/solvers.hpp"
#include "tsbench/tsbench.hpp"

using namespace tsbench;

namespace {

struct Criterion {
  int ok = 0;
  int failed = 0;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (cond) {
      ++ok;
    } else {
      ++failed;
      notes.push_back(what);
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& title, double budget_s,
                   const std::function<void(Criterion&)>& body) {
  Criterion c;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  c.expect(elapsed < budget_s,
           "runtime " + std::to_string(elapsed) + "s exceeds budget " +
               std::to_string(budget_s) + "s");
  const bool pass = c.failed == 0;
  if (!pass) ++g_failures;
  std::printf("[%s] %2d. %-28s (%d checks, %.2fs)\n", pass ? "PASS" : "FAIL",
              number, title.c_str(), c.ok + c.failed, elapsed);
  for (const auto& n : c.notes) std::printf("       - %s\n", n.c_str());
}

TimeSeries reference_series() {
  TimeSeries ts;
  ts.start_date = make_date(2020, 1, 1);
  ts.values = {100, 105, 103, 103};
  return ts;
}

// ---------------------------------------------------------------------------

void criterion_format_fidelity(Criterion& c) {
  const std::map<WireFormat, std::string> fixtures = {
      {WireFormat::csv,
       "Date,Value\n2020-01-01,100\n2020-01-02,105\n2020-01-03,103\n"
       "2020-01-04,103\n"},
      {WireFormat::custom,
       "Date|Value\n2020-01-01|100\n2020-01-02|105\n2020-01-03|103\n"
       "2020-01-04|103\n"},
      {WireFormat::tsv,
       "Date\tValue\n2020-01-01\t100\n2020-01-02\t105\n2020-01-03\t103\n"
       "2020-01-04\t103\n"},
      {WireFormat::plain,
       "Date: 2020-01-01, Value: 100\nDate: 2020-01-02, Value: 105\n"
       "Date: 2020-01-03, Value: 103\nDate: 2020-01-04, Value: 103\n"},
      {WireFormat::json,
       "{\"Date\":\"2020-01-01\",\"Value\":100}\n"
       "{\"Date\":\"2020-01-02\",\"Value\":105}\n"
       "{\"Date\":\"2020-01-03\",\"Value\":103}\n"
       "{\"Date\":\"2020-01-04\",\"Value\":103}\n"},
      {WireFormat::markdown,
       "|Date|Value|\n|---|---|\n|2020-01-01|100|\n|2020-01-02|105|\n"
       "|2020-01-03|103|\n|2020-01-04|103|\n"},
      {WireFormat::spaces,
       "Date,Value\n2020-01-01,1 0 0\n2020-01-02,1 0 5\n2020-01-03,1 0 3\n"
       "2020-01-04,1 0 3\n"},
      {WireFormat::contextual,
       "Date,Value\n2020-01-01,[100]\n2020-01-02,[105]\n2020-01-03,[103]\n"
       "2020-01-04,[103]\n"},
      {WireFormat::symbol,
       "Date,Value,DirectionIndicator\n2020-01-01,100,→\n"
       "2020-01-02,105,↑\n2020-01-03,103,↓\n2020-01-04,103,→\n"},
  };
  const TimeSeries ref = reference_series();
  for (const auto& [fmt, expected] : fixtures) {
    c.expect(render(ref, fmt) == expected,
             std::string("fixture mismatch for ") + to_string(fmt));
  }

  Rng rng(20200101);
  for (WireFormat fmt : kAllFormats) {
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
      TimeSeries ts;
      ts.start_date = add_days(make_date(2020, 1, 1), rng.uniform_int(0, 1500));
      const int n = static_cast<int>(rng.uniform_int(1, 60));
      for (int k = 0; k < n; ++k) {
        ts.values.push_back(rng.uniform_int(-5000000, 5000000) / 100.0);
      }
      const TimeSeries back = parse(render(ts, fmt), fmt);
      ok += back.values == ts.values && back.start_date == ts.start_date;
    }
    c.expect(ok == 1000, std::string("round-trip failures in ") + to_string(fmt));
  }
}

void criterion_harness_ceiling(Criterion& c) {
  const DatasetKind kinds[] = {
      DatasetKind::trend,          DatasetKind::seasonality,
      DatasetKind::anomaly,        DatasetKind::volatility,
      DatasetKind::structural_break, DatasetKind::stationarity,
      DatasetKind::fat_tails,      DatasetKind::correlation,
      DatasetKind::cross_correlation, DatasetKind::dynamic_correlation};
  OracleSolver oracle;
  GenConfig cfg;
  Rng qrng(11);
  for (const auto kind : kinds) {
    const auto samples = gen_dataset(kind, {0, 0, 200}, cfg);
    std::vector<TaskInstance> tasks;
    for (const auto& s : samples) {
      std::vector<std::size_t> candidates;
      for (std::size_t i = 0; i < s.series.values.size(); ++i) {
        if (!is_missing(s.series.values[i])) candidates.push_back(i);
      }
      const auto pick = candidates[static_cast<std::size_t>(qrng.uniform_int(
          0, static_cast<std::int64_t>(candidates.size()) - 1))];
      tasks.push_back(build_retrieval_bundle(
          s, PromptStyle::zero_shot, WireFormat::csv,
          add_days(s.series.start_date, static_cast<long>(pick))));
    }
    const auto rows = run_tasks(oracle, tasks);
    const auto report = score_transcripts(rows);
    for (const char* field : {"max_value", "min_value", "value_on_date",
                              "max_date", "min_date"}) {
      const auto& m = report.per_task_kind.at(std::string("retrieval_bundle.") + field);
      c.expect(m.accuracy && *m.accuracy == 1.0,
               std::string(to_string(kind)) + "." + field + " accuracy below 1");
      if (m.mape) {
        c.expect(*m.mape == 0.0,
                 std::string(to_string(kind)) + "." + field + " MAPE above 0");
      }
    }
  }
}

void criterion_garch(Criterion& c) {
  Rng rng(271828);
  const GarchParams p;  // omega 0.1, alpha 0.2, beta 0.7
  const auto path = garch_path(100000, p, [&] { return rng.normal(); });
  const double var = stats::variance(path.returns);
  c.expect(var >= 0.9 && var <= 1.1,
           "long-run return variance " + std::to_string(var) +
               " outside [0.9, 1.1]");
  bool floored = true;
  for (double s2 : path.sigma2) floored &= s2 >= p.omega;
  c.expect(floored, "conditional variance fell below omega");
}

void criterion_leverage(Criterion& c) {
  Rng rng(1000003);
  bool rules_hold = true, floor_holds = true;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(30, 150));
    const auto path = leverage_path(n, {}, [&] { return rng.normal(); });
    for (std::size_t t = 0; t < path.returns.size(); ++t) {
      const double s = path.sigma[t];
      const bool up = path.sigma[t + 1] == s * 1.3;
      const bool down = path.sigma[t + 1] == std::max(s * 0.7, 0.01);
      rules_hold &= up != down;
      floor_holds &= path.sigma[t + 1] >= 0.01;
    }
  }
  c.expect(rules_hold, "a sigma update matched neither or both case rules");
  c.expect(floor_holds, "sigma fell below the 0.01 floor");
}

void criterion_quadrant_control(Criterion& c) {
  GenConfig cfg;
  for (const auto kind : {PositionalKind::brownian, PositionalKind::outlier}) {
    const auto samples = gen_positional_dataset(kind, cfg);
    c.expect(samples.size() == 400,
             std::string(to_string(kind)) + " dataset size is not 400");
    std::map<std::pair<bool, int>, int> counts;
    int extremum_ok = 0;
    for (const auto& s : samples) {
      c.expect(s.series.values.size() == 175,
               std::string(to_string(kind)) + " series length is not 175");
      const bool is_max = s.label.params.at("target.is_max") == 1.0;
      const auto target = static_cast<int>(s.label.params.at("target.quadrant"));
      const auto idx = static_cast<std::size_t>(s.label.params.at("target.index"));
      ++counts[{is_max, target}];
      const auto& v = s.series.values;
      const auto arg =
          is_max
              ? static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin())
              : static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
      extremum_ok += arg == idx && quadrant_of(arg, v.size()) ==
                                       static_cast<Quadrant>(target - 1);
    }
    c.expect(counts.size() == 8,
             std::string(to_string(kind)) + " does not cover all 8 buckets");
    for (const auto& [bucket, n] : counts) {
      c.expect(n == 50, std::string(to_string(kind)) + " bucket count " +
                            std::to_string(n) + " != 50");
    }
    c.expect(extremum_ok == 400,
             std::string(to_string(kind)) +
                 ": controlled extremum not global in every sample");
  }
}

void criterion_bias_flag(Criterion& c) {
  auto outcomes = [](const std::array<std::pair<int, int>, 4>& spec) {
    std::vector<QuadrantOutcome> out;
    for (int q = 0; q < 4; ++q) {
      const auto [correct, total] = spec[static_cast<std::size_t>(q)];
      for (int i = 0; i < total; ++i) {
        out.push_back({static_cast<Quadrant>(q), i < correct});
      }
    }
    return out;
  };
  c.expect(!position_bias_report(
                outcomes({{{10, 10}, {10, 10}, {10, 10}, {10, 10}}}))
                .bias_flag,
           "uniform accuracies flagged");
  c.expect(position_bias_report(outcomes({{{9, 10}, {9, 10}, {9, 10}, {7, 10}}}))
               .bias_flag,
           "0.2 gap not flagged");
  c.expect(!position_bias_report(
                outcomes({{{90, 100}, {80, 100}, {85, 100}, {85, 100}}}))
                .bias_flag,
           "boundary gap 0.10 flagged");
  c.expect(position_bias_report(outcomes({{{901, 1000},
                                           {800, 1000},
                                           {850, 1000},
                                           {850, 1000}}}))
               .bias_flag,
           "gap 0.101 not flagged");
  c.expect(!position_bias_report(
                outcomes({{{85, 100}, {80, 100}, {78, 100}, {76, 100}}}))
                .bias_flag,
           "gap 0.09 flagged");
}

void criterion_metric_oracles(Criterion& c) {
  Rng rng(424243);
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 60));
    const int k = static_cast<int>(rng.uniform_int(1, 4));
    std::vector<std::string> truths, preds;
    for (int i = 0; i < n; ++i) {
      truths.push_back(alphabet[static_cast<std::size_t>(rng.uniform_int(0, k - 1))]);
      preds.push_back(alphabet[static_cast<std::size_t>(rng.uniform_int(0, 3))]);
    }
    std::vector<std::string> classes;
    for (const auto& t : truths) {
      if (std::find(classes.begin(), classes.end(), t) == classes.end()) {
        classes.push_back(t);
      }
    }
    double sum = 0;
    for (const auto& cls : classes) {
      double tp = 0, fp = 0, fn = 0;
      for (int i = 0; i < n; ++i) {
        const auto ix = static_cast<std::size_t>(i);
        tp += preds[ix] == cls && truths[ix] == cls;
        fp += preds[ix] == cls && truths[ix] != cls;
        fn += preds[ix] != cls && truths[ix] == cls;
      }
      sum += (2 * tp + fp + fn) == 0 ? 0.0 : 2 * tp / (2 * tp + fp + fn);
    }
    const double brute = sum / static_cast<double>(classes.size());
    agree += std::fabs(f1_score(preds, truths) - brute) <= 1e-12;
  }
  c.expect(agree == 1000, "f1 deviated from the brute-force definition");

  // Hand fixtures.
  c.expect(std::fabs(f1_score({"yes", "no", "yes", "no"},
                              {"yes", "yes", "no", "no"}) -
                     0.5) <= 1e-12,
           "balanced-confusion F1 is not 0.5");
  c.expect(std::fabs(f1_score({"yes", "yes", "yes", "yes"},
                              {"yes", "yes", "no", "no"}) -
                     1.0 / 3.0) <= 1e-12,
           "single-class F1 is not 1/3");

  std::vector<RetrievalParse> preds(1);
  std::vector<RetrievalKeyView> keys(1);
  preds[0].max_value = 110.0;
  keys[0].max_value = 100.0;
  const auto rs = accuracy_and_mape(preds, keys);
  c.expect(std::fabs(rs.fields.at("max_value").mape - 0.10) <= 1e-12,
           "110 vs 100 MAPE is not 0.10");
  c.expect(rs.fields.at("max_value").accuracy == 0.0,
           "110 vs 100 counted as accurate");

  preds[0].max_value = 100.0;
  preds[0].max_date = "2020-01-05";
  keys[0].max_date = "2020-01-05";
  const auto exact = accuracy_and_mape(preds, keys);
  c.expect(exact.fields.at("max_value").accuracy == 1.0 &&
               exact.fields.at("max_value").mape == 0.0 &&
               exact.fields.at("max_date").accuracy == 1.0,
           "exact pair not scored as accuracy 1 / MAPE 0");
}

void criterion_statistical_baseline(Criterion& c) {
  GenConfig cfg;
  const auto samples = gen_dataset(DatasetKind::trend, {0, 0, 200}, cfg);
  StatisticalSolver solver;

  std::vector<std::string> det_preds, det_truths;
  std::size_t control_total = 0, control_fp = 0;
  std::size_t cls_total = 0, cls_correct = 0;
  for (const auto& s : samples) {
    const auto det = build_detection_task(s, PromptStyle::zero_shot);
    const auto answer = solver.solve(det);
    const bool said_yes = answer.text == "Yes";
    det_preds.push_back(said_yes ? "yes" : "no");
    det_truths.push_back(*det.key.yes_no ? "yes" : "no");
    if (!*det.key.yes_no) {
      ++control_total;
      control_fp += said_yes;
    } else {
      const auto cls = build_classification_task(s, PromptStyle::zero_shot);
      ++cls_total;
      cls_correct += solver.solve(cls).text ==
                     std::string("(") + *cls.key.choice + ")";
    }
  }
  const double f1 = f1_score(det_preds, det_truths);
  c.expect(f1 >= 0.90, "trend detection macro F1 " + std::to_string(f1) +
                            " below 0.90");
  const double cls_acc =
      static_cast<double>(cls_correct) / static_cast<double>(cls_total);
  c.expect(cls_acc >= 0.95, "direction classification accuracy " +
                                 std::to_string(cls_acc) + " below 0.95");
  const double fp_rate =
      static_cast<double>(control_fp) / static_cast<double>(control_total);
  c.expect(fp_rate <= 0.05, "control false-positive rate " +
                                 std::to_string(fp_rate) + " above 5%");
}

void criterion_reproducibility(Criterion& c) {
  GenConfig cfg;
  const SplitSizes sizes;  // 5000 / 2000 / 200
  const auto first = gen_dataset(DatasetKind::trend, sizes, cfg);
  const auto second = gen_dataset(DatasetKind::trend, sizes, cfg);
  c.expect(serialize_dataset(first) == serialize_dataset(second),
           "two generations differ byte-for-byte");

  std::size_t train = 0, validation = 0, test = 0;
  bool lengths_ok = true;
  for (const auto& s : first) {
    switch (s.split) {
      case Split::train: ++train; break;
      case Split::validation: ++validation; break;
      case Split::test: ++test; break;
    }
    lengths_ok &= s.series.values.size() >= 30 && s.series.values.size() <= 150;
  }
  c.expect(train == 5000 && validation == 2000 && test == 200,
           "split sizes are not 5000/2000/200");
  c.expect(lengths_ok, "a series length left [30, 150]");
}

void criterion_random_guess_floor(Criterion& c) {
  struct RandomSolver final : Solver {
    explicit RandomSolver(std::uint64_t seed) : rng(seed) {}
    SolveOutcome solve(const TaskInstance&) override {
      const char letter = static_cast<char>('a' + rng.uniform_int(0, 3));
      return {std::string("(") + letter + ")", std::nullopt};
    }
    std::string name() const override { return "random"; }
    Rng rng;
  } solver(987654321);

  const DatasetKind kinds[] = {
      DatasetKind::trend,          DatasetKind::seasonality,
      DatasetKind::anomaly,        DatasetKind::volatility,
      DatasetKind::structural_break, DatasetKind::stationarity,
      DatasetKind::fat_tails,      DatasetKind::correlation,
      DatasetKind::cross_correlation, DatasetKind::dynamic_correlation};
  GenConfig cfg;
  Rng rng(5551212);
  std::vector<TaskInstance> tasks;
  for (const auto kind : kinds) {
    const auto samples = gen_dataset(kind, {0, 0, 200}, cfg);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      std::array<const AnnotatedSample*, 3> pool{};
      std::size_t filled = 0;
      while (filled < 3) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(samples.size()) - 1));
        if (j == i) continue;
        bool dup = false;
        for (std::size_t k = 0; k < filled; ++k) dup |= pool[k] == &samples[j];
        if (dup) continue;
        pool[filled++] = &samples[j];
      }
      tasks.push_back(build_text_matching_task(samples[i], pool,
                                               TextMatchMode::intra,
                                               WireFormat::csv,
                                               PromptStyle::zero_shot, rng));
    }
  }
  c.expect(tasks.size() == 2000, "did not build 2000 text-matching tasks");
  const auto rows = run_tasks(solver, tasks);
  std::size_t correct = 0;
  for (const auto& r : rows) correct += r.correct;
  const double acc = static_cast<double>(correct) / static_cast<double>(rows.size());
  c.expect(acc >= 0.20 && acc <= 0.30,
           "random-guess accuracy " + std::to_string(acc) +
               " outside 0.25 +/- 0.05");
}

}  // namespace

int main() {
  std::printf("acceptance suite (base seed %llu)\n",
              static_cast<unsigned long long>(kDefaultBaseSeed));
  run_criterion(1, "format fidelity", 5, criterion_format_fidelity);
  run_criterion(2, "harness ceiling", 30, criterion_harness_ceiling);
  run_criterion(3, "garch statistics", 10, criterion_garch);
  run_criterion(4, "leverage recursion", 5, criterion_leverage);
  run_criterion(5, "quadrant control", 60, criterion_quadrant_control);
  run_criterion(6, "bias criterion", 5, criterion_bias_flag);
  run_criterion(7, "metric oracles", 5, criterion_metric_oracles);
  run_criterion(8, "statistical baseline", 30, criterion_statistical_baseline);
  run_criterion(9, "dataset reproducibility", 60, criterion_reproducibility);
  run_criterion(10, "random-guess floor", 60, criterion_random_guess_floor);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}

#pragma once

// Transcript aggregation into an evaluation report, with JSON, plain-text
// table and CSV confusion-matrix emitters. Rows are sorted by task id before
// aggregation so the report is independent of completion order.

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsbench/eval.hpp"
#include "tsbench/runner.hpp"

namespace tsbench {

struct KindMetrics {
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::optional<double> mape;
  std::size_t n = 0;
  std::size_t parse_failures = 0;
};

struct EvalReport {
  std::map<std::string, KindMetrics> per_task_kind;
  std::map<std::string, ConfusionMatrix> confusion;
  std::map<Quadrant, double> per_quadrant_accuracy;
  std::map<Quadrant, std::size_t> per_quadrant_counts;
  std::vector<Quadrant> quadrants_missing;
  double quadrant_gap = 0;
  bool bias_flag = false;
};

namespace detail {

inline std::string pred_class_of(const TranscriptRow& r) {
  if (r.key.yes_no) {
    if (!r.parsed_yes_no) return kUnparsedClass;
    return *r.parsed_yes_no ? "yes" : "no";
  }
  if (!r.parsed_choice) return kUnparsedClass;
  return std::string(1, *r.parsed_choice);
}

inline std::string truth_class_of(const TranscriptRow& r) {
  if (r.key.yes_no) return *r.key.yes_no ? "yes" : "no";
  if (r.key.choice) return std::string(1, *r.key.choice);
  return std::string(1, *r.key.match);
}

}  // namespace detail

inline EvalReport score_transcripts(std::vector<TranscriptRow> rows) {
  std::sort(rows.begin(), rows.end(),
            [](const TranscriptRow& a, const TranscriptRow& b) {
              if (a.task_id != b.task_id) return a.task_id < b.task_id;
              return a.step < b.step;
            });

  EvalReport report;
  std::map<std::string, std::vector<const TranscriptRow*>> by_kind;
  for (const auto& r : rows) by_kind[to_string(r.kind)].push_back(&r);

  for (const auto& [kind_name, kind_rows] : by_kind) {
    KindMetrics m;
    m.n = kind_rows.size();
    if (kind_rows.front()->key.retrieval) {
      std::vector<RetrievalParse> preds;
      std::vector<RetrievalKeyView> keys;
      for (const auto* r : kind_rows) {
        m.parse_failures += r->parse_failed;
        preds.push_back(r->parsed_retrieval.value_or(RetrievalParse{}));
        keys.push_back(detail::key_view(*r->key.retrieval));
      }
      const RetrievalScore rs = accuracy_and_mape(preds, keys);
      for (const auto& [field, fs] : rs.fields) {
        KindMetrics fm;
        fm.n = fs.n;
        fm.accuracy = fs.accuracy;
        if (!std::isnan(fs.mape)) fm.mape = fs.mape;
        fm.parse_failures = fs.mape_excluded;
        report.per_task_kind[kind_name + "." + field] = fm;
      }
      double sum = 0;
      for (const auto* r : kind_rows) sum += r->correct;
      m.accuracy = sum / static_cast<double>(m.n);
      report.per_task_kind[kind_name] = m;
      continue;
    }

    std::vector<std::string> preds, truths;
    std::size_t correct = 0;
    for (const auto* r : kind_rows) {
      preds.push_back(detail::pred_class_of(*r));
      truths.push_back(detail::truth_class_of(*r));
      m.parse_failures += r->parse_failed;
      correct += r->correct;
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(m.n);
    m.f1 = f1_score(preds, truths);
    report.per_task_kind[kind_name] = m;

    std::vector<std::string> classes;
    for (const auto& t : truths) {
      if (std::find(classes.begin(), classes.end(), t) == classes.end()) {
        classes.push_back(t);
      }
    }
    std::sort(classes.begin(), classes.end());
    report.confusion[kind_name] = confusion_matrix(preds, truths, classes);
  }

  std::vector<QuadrantOutcome> outcomes;
  for (const auto& r : rows) {
    if (r.kind == TaskKind::retrieval_bundle) {
      for (const auto& f : r.field_outcomes) {
        if (f.quadrant) outcomes.push_back({*f.quadrant, f.correct});
      }
    } else if (r.quadrant) {
      outcomes.push_back({*r.quadrant, r.correct});
    }
  }
  if (!outcomes.empty()) {
    const PositionBiasReport bias = position_bias_report(outcomes);
    report.per_quadrant_accuracy = bias.accuracy;
    report.per_quadrant_counts = bias.counts;
    report.quadrants_missing = bias.missing;
    report.quadrant_gap = bias.gap;
    report.bias_flag = bias.bias_flag;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Emitters
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json report_to_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per_kind;
  for (const auto& [kind, m] : r.per_task_kind) {
    nlohmann::ordered_json mj;
    mj["f1"] = m.f1 ? nlohmann::ordered_json(*m.f1) : nlohmann::ordered_json(nullptr);
    mj["accuracy"] =
        m.accuracy ? nlohmann::ordered_json(*m.accuracy) : nlohmann::ordered_json(nullptr);
    mj["mape"] = m.mape ? nlohmann::ordered_json(*m.mape) : nlohmann::ordered_json(nullptr);
    mj["n"] = m.n;
    mj["parse_failures"] = m.parse_failures;
    per_kind[kind] = mj;
  }
  j["per_task_kind"] = per_kind;

  nlohmann::ordered_json conf;
  for (const auto& [kind, cm] : r.confusion) {
    nlohmann::ordered_json cj;
    cj["classes"] = cm.classes;
    cj["columns"] = [&] {
      auto cols = cm.classes;
      cols.push_back("unparsed");
      return cols;
    }();
    cj["counts"] = cm.counts;
    conf[kind] = cj;
  }
  j["confusion"] = conf;

  nlohmann::ordered_json quads;
  for (const auto& [q, acc] : r.per_quadrant_accuracy) {
    quads[to_string(q)] = {{"accuracy", acc},
                           {"n", r.per_quadrant_counts.at(q)}};
  }
  j["per_quadrant_accuracy"] = quads;
  nlohmann::ordered_json missing = nlohmann::ordered_json::array();
  for (const auto q : r.quadrants_missing) missing.push_back(to_string(q));
  j["quadrants_missing"] = missing;
  j["quadrant_gap"] = r.quadrant_gap;
  j["bias_flag"] = r.bias_flag;
  return j;
}

inline std::string report_to_table(const EvalReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(32) << "task" << std::right << std::setw(8)
      << "n" << std::setw(10) << "f1" << std::setw(10) << "acc" << std::setw(10)
      << "mape" << std::setw(10) << "unparsed" << "\n";
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(3) << *v;
    return s.str();
  };
  for (const auto& [kind, m] : r.per_task_kind) {
    out << std::left << std::setw(32) << kind << std::right << std::setw(8)
        << m.n << std::setw(10) << cell(m.f1) << std::setw(10)
        << cell(m.accuracy) << std::setw(10) << cell(m.mape) << std::setw(10)
        << m.parse_failures << "\n";
  }
  if (!r.per_quadrant_accuracy.empty()) {
    out << "\n" << std::left << std::setw(10) << "quadrant" << std::right
        << std::setw(8) << "n" << std::setw(10) << "acc" << "\n";
    for (const auto& [q, acc] : r.per_quadrant_accuracy) {
      out << std::left << std::setw(10) << to_string(q) << std::right
          << std::setw(8) << r.per_quadrant_counts.at(q) << std::setw(10)
          << cell(acc) << "\n";
    }
    out << "gap " << std::fixed << std::setprecision(3) << r.quadrant_gap
        << (r.bias_flag ? "  position bias: FLAGGED (gap > 0.10)"
                        : "  position bias: none (gap <= 0.10)")
        << "\n";
  }
  return out.str();
}

inline std::string confusion_to_csv(const ConfusionMatrix& cm) {
  std::ostringstream out;
  out << "truth\\pred";
  for (const auto& c : cm.classes) out << "," << c;
  out << ",unparsed\n";
  for (std::size_t i = 0; i < cm.classes.size(); ++i) {
    out << cm.classes[i];
    for (std::size_t jx = 0; jx < cm.counts[i].size(); ++jx) {
      out << "," << cm.counts[i][jx];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace tsbench

#pragma once

// Task execution and transcript scoring. The runner fans tasks out over a
// bounded pool of workers, parses each response, and records one transcript
// row per prompt actually sent. Rows are keyed and ordered by task index, so
// completion order never changes the output. In the adaptive flow the
// classification prompt is sent only when the parsed detection answer matches
// the flow's trigger.

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "tsbench/eval.hpp"
#include "tsbench/solvers.hpp"
#include "tsbench/tasks.hpp"

namespace tsbench {

struct FieldOutcome {
  std::string name;  // max_value, min_value, value_on_date, max_date, min_date
  std::optional<Quadrant> quadrant;
  bool correct = false;
};

struct TranscriptRow {
  std::string task_id;
  std::string sample_id;
  DatasetKind dataset = DatasetKind::trend;
  TaskKind kind = TaskKind::detection;
  WireFormat fmt = WireFormat::csv;
  PromptStyle style = PromptStyle::zero_shot;
  int step = 0;  // 0 = primary prompt, 1 = adaptive follow-up
  std::string prompt;
  std::string response;
  std::optional<std::string> solver_error;
  int retries = 0;
  GroundTruth key;
  std::optional<bool> parsed_yes_no;
  std::optional<char> parsed_choice;
  std::optional<RetrievalParse> parsed_retrieval;
  bool parse_failed = false;
  bool correct = false;
  std::optional<Quadrant> quadrant;
  std::optional<Quadrant> max_quadrant;  // argmax position, retrieval only
  std::optional<Quadrant> min_quadrant;  // argmin position, retrieval only
  std::vector<FieldOutcome> field_outcomes;  // retrieval only
};

namespace detail {

inline RetrievalKeyView key_view(const RetrievalKey& k) {
  return {k.max_value, format_date(k.max_date), k.min_value,
          format_date(k.min_date), k.value_on_date};
}

inline void score_row(TranscriptRow& row) {
  if (row.solver_error) {
    row.parse_failed = true;
    row.correct = false;
    return;
  }
  if (row.key.yes_no) {
    row.parsed_yes_no = parse_yes_no(row.response);
    row.parse_failed = !row.parsed_yes_no.has_value();
    row.correct = row.parsed_yes_no && *row.parsed_yes_no == *row.key.yes_no;
    return;
  }
  if (row.key.choice || row.key.match) {
    const char truth = row.key.choice ? *row.key.choice : *row.key.match;
    row.parsed_choice = parse_choice(row.response);
    row.parse_failed = !row.parsed_choice.has_value();
    row.correct = row.parsed_choice && *row.parsed_choice == truth;
    return;
  }
  if (row.key.retrieval) {
    const RetrievalParse parsed = parse_retrieval(row.response);
    row.parsed_retrieval = parsed;
    const RetrievalKeyView truth = key_view(*row.key.retrieval);
    auto value_ok = [](const std::optional<double>& p, double t) {
      return p && std::fabs(round_to_display(*p) - round_to_display(t)) <= 1e-6;
    };
    auto date_ok = [](const std::optional<std::string>& p, const std::string& t) {
      return p && *p == t;
    };
    const bool mx = value_ok(parsed.max_value, truth.max_value);
    const bool mxd = date_ok(parsed.max_date, truth.max_date);
    const bool mn = value_ok(parsed.min_value, truth.min_value);
    const bool mnd = date_ok(parsed.min_date, truth.min_date);
    const bool vod = value_ok(parsed.value_on_date, truth.value_on_date);
    row.parse_failed = !parsed.max_value && !parsed.min_value &&
                       !parsed.value_on_date && !parsed.max_date &&
                       !parsed.min_date;
    row.correct = mx && mxd && mn && mnd && vod;
    row.field_outcomes = {{"max_value", row.max_quadrant, mx},
                          {"max_date", row.max_quadrant, mxd},
                          {"min_value", row.min_quadrant, mn},
                          {"min_date", row.min_quadrant, mnd},
                          {"value_on_date", row.quadrant, vod}};
    return;
  }
  row.parse_failed = true;
  row.correct = false;
}

inline TranscriptRow row_from_task(const TaskInstance& t, int step) {
  TranscriptRow row;
  row.task_id = t.id;
  row.sample_id = t.sample_id;
  row.dataset = t.dataset;
  row.kind = t.kind;
  row.fmt = t.fmt;
  row.style = t.style;
  row.step = step;
  row.prompt = t.prompt;
  row.key = t.key;
  row.quadrant = t.target_quadrant;
  row.max_quadrant = t.max_quadrant;
  row.min_quadrant = t.min_quadrant;
  return row;
}

}  // namespace detail

inline TranscriptRow run_single(Solver& solver, const TaskInstance& task,
                                int step = 0) {
  TranscriptRow row = detail::row_from_task(task, step);
  const SolveOutcome out = solver.solve(task);
  row.response = out.text;
  row.solver_error = out.error;
  row.retries = out.retries;
  detail::score_row(row);
  return row;
}

// Detection first; the follow-up goes out only when the parsed detection
// answer equals the flow trigger.
inline std::vector<TranscriptRow> run_flow(Solver& solver,
                                           const AdaptiveFlow& flow) {
  std::vector<TranscriptRow> rows;
  rows.push_back(run_single(solver, flow.detection, 0));
  const auto& det = rows.front();
  const bool triggered = det.parsed_yes_no.has_value() &&
                         *det.parsed_yes_no == flow.classify_on_yes;
  if (triggered && flow.classification) {
    rows.push_back(run_single(solver, *flow.classification, 1));
  }
  return rows;
}

inline std::vector<TranscriptRow> run_tasks(Solver& solver,
                                            const std::vector<TaskInstance>& tasks,
                                            int workers = 1) {
  std::vector<TranscriptRow> rows(tasks.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      rows[i] = run_single(solver, tasks[i]);
    }
    return rows;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      rows[i] = run_single(solver, tasks[i]);
    }
  };
  std::vector<std::thread> pool;
  const int count = std::min<int>(workers, static_cast<int>(tasks.size()));
  pool.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

inline std::vector<TranscriptRow> run_flows(Solver& solver,
                                            const std::vector<AdaptiveFlow>& flows,
                                            int workers = 1) {
  std::vector<std::vector<TranscriptRow>> buckets(flows.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < flows.size(); ++i) {
      buckets[i] = run_flow(solver, flows[i]);
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= flows.size()) return;
        buckets[i] = run_flow(solver, flows[i]);
      }
    };
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(flows.size()));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<TranscriptRow> rows;
  for (auto& b : buckets) {
    for (auto& r : b) rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Transcript persistence
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json transcript_to_json(const TranscriptRow& r) {
  nlohmann::ordered_json j;
  j["task_id"] = r.task_id;
  j["sample_id"] = r.sample_id;
  j["dataset"] = to_string(r.dataset);
  j["kind"] = to_string(r.kind);
  j["format"] = to_string(r.fmt);
  j["style"] = to_string(r.style);
  j["step"] = r.step;
  j["prompt"] = r.prompt;
  j["response"] = r.response;
  j["solver_error"] = r.solver_error ? nlohmann::ordered_json(*r.solver_error)
                                     : nlohmann::ordered_json(nullptr);
  j["retries"] = r.retries;
  nlohmann::ordered_json key;
  if (r.key.yes_no) key["yes_no"] = *r.key.yes_no;
  if (r.key.choice) key["choice"] = std::string(1, *r.key.choice);
  if (r.key.match) key["match"] = std::string(1, *r.key.match);
  if (r.key.retrieval) {
    const auto& k = *r.key.retrieval;
    key["retrieval"] = {{"max_value", round_to_display(k.max_value)},
                        {"max_date", format_date(k.max_date)},
                        {"min_value", round_to_display(k.min_value)},
                        {"min_date", format_date(k.min_date)},
                        {"query_date", format_date(k.query_date)},
                        {"value_on_date", round_to_display(k.value_on_date)}};
  }
  j["key"] = key;
  nlohmann::ordered_json parsed;
  if (r.parsed_yes_no) parsed["yes_no"] = *r.parsed_yes_no;
  if (r.parsed_choice) parsed["choice"] = std::string(1, *r.parsed_choice);
  if (r.parsed_retrieval) {
    nlohmann::ordered_json pj;
    auto put_value = [&](const char* name, const std::optional<double>& v) {
      pj[name] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    auto put_date = [&](const char* name, const std::optional<std::string>& v) {
      pj[name] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
    };
    put_value("max_value", r.parsed_retrieval->max_value);
    put_date("max_date", r.parsed_retrieval->max_date);
    put_value("min_value", r.parsed_retrieval->min_value);
    put_date("min_date", r.parsed_retrieval->min_date);
    put_value("value_on_date", r.parsed_retrieval->value_on_date);
    parsed["retrieval"] = pj;
  }
  j["parsed"] = parsed;
  j["parse_failed"] = r.parse_failed;
  j["correct"] = r.correct;
  j["quadrant"] = r.quadrant ? nlohmann::ordered_json(to_string(*r.quadrant))
                             : nlohmann::ordered_json(nullptr);
  if (!r.field_outcomes.empty()) {
    nlohmann::ordered_json fields = nlohmann::ordered_json::array();
    for (const auto& f : r.field_outcomes) {
      nlohmann::ordered_json fj;
      fj["name"] = f.name;
      fj["quadrant"] = f.quadrant ? nlohmann::ordered_json(to_string(*f.quadrant))
                                  : nlohmann::ordered_json(nullptr);
      fj["correct"] = f.correct;
      fields.push_back(fj);
    }
    j["fields"] = fields;
  }
  return j;
}

inline TranscriptRow transcript_from_json(const nlohmann::json& j) {
  TranscriptRow r;
  r.task_id = j.at("task_id").get<std::string>();
  r.sample_id = j.at("sample_id").get<std::string>();
  r.dataset = dataset_kind_from_string(j.at("dataset").get<std::string>())
                  .value_or(DatasetKind::trend);
  r.kind = task_kind_from_string(j.at("kind").get<std::string>())
               .value_or(TaskKind::detection);
  r.fmt = wire_format_from_string(j.at("format").get<std::string>())
              .value_or(WireFormat::csv);
  r.style = prompt_style_from_string(j.at("style").get<std::string>())
                .value_or(PromptStyle::zero_shot);
  r.step = j.at("step").get<int>();
  r.prompt = j.at("prompt").get<std::string>();
  r.response = j.at("response").get<std::string>();
  if (!j.at("solver_error").is_null()) {
    r.solver_error = j.at("solver_error").get<std::string>();
  }
  r.retries = j.value("retries", 0);
  const auto& key = j.at("key");
  if (key.contains("yes_no")) r.key.yes_no = key["yes_no"].get<bool>();
  if (key.contains("choice")) r.key.choice = key["choice"].get<std::string>()[0];
  if (key.contains("match")) r.key.match = key["match"].get<std::string>()[0];
  if (key.contains("retrieval")) {
    RetrievalKey k;
    const auto& kj = key["retrieval"];
    k.max_value = kj.at("max_value").get<double>();
    k.max_date = parse_date(kj.at("max_date").get<std::string>());
    k.min_value = kj.at("min_value").get<double>();
    k.min_date = parse_date(kj.at("min_date").get<std::string>());
    k.query_date = parse_date(kj.at("query_date").get<std::string>());
    k.value_on_date = kj.at("value_on_date").get<double>();
    r.key.retrieval = k;
  }
  if (j.contains("parsed")) {
    const auto& parsed = j["parsed"];
    if (parsed.contains("yes_no")) r.parsed_yes_no = parsed["yes_no"].get<bool>();
    if (parsed.contains("choice")) {
      r.parsed_choice = parsed["choice"].get<std::string>()[0];
    }
    if (parsed.contains("retrieval")) {
      RetrievalParse rp;
      const auto& pj = parsed["retrieval"];
      auto get_value = [&](const char* name) -> std::optional<double> {
        if (!pj.contains(name) || pj[name].is_null()) return std::nullopt;
        return pj[name].get<double>();
      };
      auto get_date = [&](const char* name) -> std::optional<std::string> {
        if (!pj.contains(name) || pj[name].is_null()) return std::nullopt;
        return pj[name].get<std::string>();
      };
      rp.max_value = get_value("max_value");
      rp.max_date = get_date("max_date");
      rp.min_value = get_value("min_value");
      rp.min_date = get_date("min_date");
      rp.value_on_date = get_value("value_on_date");
      r.parsed_retrieval = rp;
    }
  }
  r.parse_failed = j.at("parse_failed").get<bool>();
  r.correct = j.at("correct").get<bool>();
  if (!j.at("quadrant").is_null()) {
    r.quadrant = quadrant_from_string(j.at("quadrant").get<std::string>());
  }
  if (j.contains("fields")) {
    for (const auto& fj : j["fields"]) {
      FieldOutcome f;
      f.name = fj.at("name").get<std::string>();
      if (!fj.at("quadrant").is_null()) {
        f.quadrant = quadrant_from_string(fj.at("quadrant").get<std::string>());
      }
      f.correct = fj.at("correct").get<bool>();
      r.field_outcomes.push_back(f);
    }
  }
  return r;
}

}  // namespace tsbench

#pragma once

// Task construction: a TaskInstance is a prompt plus a machine-checkable
// answer key, recomputable from the sample alone. The adaptive flow pairs a
// detection instance with a conditional classification instance.
//
// Every prompt embeds exactly one rendered series (or pair) between an
// "Input:" line and a lone "." line, so deterministic solvers can recover the
// series from the prompt text itself.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsbench/core.hpp"
#include "tsbench/formats.hpp"
#include "tsbench/prompts.hpp"
#include "tsbench/rng.hpp"
#include "tsbench/synth_quadrant.hpp"

namespace tsbench {

struct TaskError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class TaskKind {
  detection,
  classification,
  retrieval_bundle,
  text_match_intra,
  text_match_cross,
  search,
};

inline const char* to_string(TaskKind k) {
  switch (k) {
    case TaskKind::detection: return "detection";
    case TaskKind::classification: return "classification";
    case TaskKind::retrieval_bundle: return "retrieval_bundle";
    case TaskKind::text_match_intra: return "text_match_intra";
    case TaskKind::text_match_cross: return "text_match_cross";
    case TaskKind::search: return "search";
  }
  return "?";
}

inline std::optional<TaskKind> task_kind_from_string(std::string_view s) {
  for (int i = 0; i <= static_cast<int>(TaskKind::search); ++i) {
    if (s == to_string(static_cast<TaskKind>(i))) {
      return static_cast<TaskKind>(i);
    }
  }
  return std::nullopt;
}

struct RetrievalKey {
  double max_value = 0;
  Date max_date{};
  double min_value = 0;
  Date min_date{};
  Date query_date{};
  double value_on_date = 0;
};

struct GroundTruth {
  std::optional<bool> yes_no;
  std::optional<char> choice;
  std::optional<RetrievalKey> retrieval;
  std::optional<char> match;
};

struct TaskInstance {
  std::string id;
  std::string sample_id;
  DatasetKind dataset = DatasetKind::trend;
  TaskKind kind = TaskKind::detection;
  WireFormat fmt = WireFormat::csv;
  PromptStyle style = PromptStyle::zero_shot;
  std::string prompt;
  GroundTruth key;
  std::optional<Quadrant> target_quadrant;  // queried position, when tracked
  std::optional<Quadrant> max_quadrant;     // argmax position (retrieval)
  std::optional<Quadrant> min_quadrant;     // argmin position (retrieval)
};

// Detection plus the conditional follow-up; classification is absent for
// samples whose truthful detection answer ends the flow.
struct AdaptiveFlow {
  TaskInstance detection;
  std::optional<TaskInstance> classification;
  bool classify_on_yes = true;
};

inline constexpr const char* kInputHeader = "Input:\n";
inline constexpr const char* kInputFooter = ".\n\n";

inline std::string prompt_with_series(const TimeSeries& series, WireFormat fmt,
                                      const std::string& question) {
  return std::string(kInputHeader) + render(series, fmt) + kInputFooter +
         question;
}

// Inverse of prompt_with_series; the series block ends at the lone-dot line.
inline std::optional<std::string> series_block_of(const std::string& prompt) {
  const std::string header(kInputHeader);
  const std::size_t start = prompt.find(header);
  if (start == std::string::npos) return std::nullopt;
  const std::size_t body = start + header.size();
  const std::size_t stop = prompt.find("\n.\n", body);
  if (stop == std::string::npos) return std::nullopt;
  return prompt.substr(body, stop + 1 - body);
}

namespace detail {

inline std::string task_id(const AnnotatedSample& s, TaskKind kind,
                           WireFormat fmt, PromptStyle style) {
  return s.id + "/" + to_string(kind) + "/" + to_string(fmt) + "/" +
         to_string(style);
}

}  // namespace detail

inline TaskInstance build_detection_task(const AnnotatedSample& sample,
                                         PromptStyle style,
                                         WireFormat fmt = WireFormat::csv) {
  TaskInstance t;
  t.kind = TaskKind::detection;
  t.sample_id = sample.id;
  t.dataset = sample.dataset_kind;
  t.fmt = fmt;
  t.style = style;
  t.id = detail::task_id(sample, t.kind, fmt, style);
  t.prompt = prompt_with_series(
      sample.series, fmt,
      prompts::detection_question(sample.label.feature, style));
  t.key.yes_no = prompts::detection_truth(sample.label.feature,
                                          sample.label.sub_feature);
  return t;
}

inline TaskInstance build_classification_task(const AnnotatedSample& sample,
                                              PromptStyle style,
                                              WireFormat fmt = WireFormat::csv) {
  if (!prompts::classifiable(sample.label.feature, sample.label.sub_feature)) {
    throw TaskError("build_classification_task: '" + sample.label.sub_feature +
                    "' sample has no classification follow-up");
  }
  TaskInstance t;
  t.kind = TaskKind::classification;
  t.sample_id = sample.id;
  t.dataset = sample.dataset_kind;
  t.fmt = fmt;
  t.style = style;
  t.id = detail::task_id(sample, t.kind, fmt, style);
  t.prompt = prompt_with_series(
      sample.series, fmt,
      prompts::classification_question(sample.label.feature, style));
  t.key.choice = prompts::classification_letter(sample.label.feature,
                                                sample.label.sub_feature);
  return t;
}

inline AdaptiveFlow build_adaptive_flow(const AnnotatedSample& sample,
                                        PromptStyle style,
                                        WireFormat fmt = WireFormat::csv) {
  AdaptiveFlow flow;
  flow.detection = build_detection_task(sample, style, fmt);
  flow.classify_on_yes = prompts::classification_trigger(sample.label.feature);
  if (prompts::classifiable(sample.label.feature, sample.label.sub_feature)) {
    flow.classification = build_classification_task(sample, style, fmt);
  }
  return flow;
}

// Key values and tie-breaks are taken at display precision over the values
// the solver actually sees; ties resolve to the earliest date.
inline RetrievalKey retrieval_key_of(const TimeSeries& series, Date query_date) {
  RetrievalKey key;
  bool have = false;
  const long q_off = days_between(series.start_date, query_date);
  if (q_off < 0 || q_off >= static_cast<long>(series.values.size())) {
    throw TaskError("retrieval_key_of: query date outside the series range");
  }
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (is_missing(series.values[i])) continue;
    const double v = round_to_display(series.values[i]);
    const Date d = add_days(series.start_date, static_cast<long>(i));
    if (!have || v > key.max_value) {
      key.max_value = v;
      key.max_date = d;
    }
    if (!have || v < key.min_value) {
      key.min_value = v;
      key.min_date = d;
    }
    have = true;
  }
  if (!have) throw TaskError("retrieval_key_of: series has no recorded values");
  key.query_date = query_date;
  key.value_on_date =
      round_to_display(series.values[static_cast<std::size_t>(q_off)]);
  if (is_missing(key.value_on_date)) {
    throw TaskError("retrieval_key_of: query date falls on a missing value");
  }
  return key;
}

inline TaskInstance build_retrieval_bundle(const AnnotatedSample& sample,
                                           PromptStyle style, WireFormat fmt,
                                           Date query_date) {
  TaskInstance t;
  t.kind = TaskKind::retrieval_bundle;
  t.sample_id = sample.id;
  t.dataset = sample.dataset_kind;
  t.fmt = fmt;
  t.style = style;
  t.id = detail::task_id(sample, t.kind, fmt, style);
  t.key.retrieval = retrieval_key_of(sample.series, query_date);
  t.prompt = prompt_with_series(
      sample.series, fmt,
      prompts::retrieval_question(style, format_date(query_date)));
  const std::size_t n = sample.series.values.size();
  t.target_quadrant = quadrant_of(
      static_cast<std::size_t>(days_between(sample.series.start_date, query_date)),
      n);
  t.max_quadrant = quadrant_of(
      static_cast<std::size_t>(
          days_between(sample.series.start_date, t.key.retrieval->max_date)),
      n);
  t.min_quadrant = quadrant_of(
      static_cast<std::size_t>(
          days_between(sample.series.start_date, t.key.retrieval->min_date)),
      n);
  return t;
}

inline TaskInstance build_search_task(const AnnotatedSample& sample,
                                      double target_value, PromptStyle style,
                                      WireFormat fmt = WireFormat::csv) {
  TaskInstance t;
  t.kind = TaskKind::search;
  t.sample_id = sample.id;
  t.dataset = sample.dataset_kind;
  t.fmt = fmt;
  t.style = style;
  t.id = detail::task_id(sample, t.kind, fmt, style);
  const double needle = round_to_display(target_value);
  bool present = false;
  for (double v : sample.series.values) {
    if (!is_missing(v) && round_to_display(v) == needle) {
      present = true;
      break;
    }
  }
  t.key.yes_no = present;
  t.prompt = prompt_with_series(
      sample.series, fmt,
      prompts::search_question(format_value(needle), style));
  return t;
}

enum class TextMatchMode { intra, cross };

inline std::string description_text(const AnnotatedSample& s,
                                    TextMatchMode mode) {
  // Intra-dataset options carry the quantitative text too; cross-dataset
  // options are qualitative only.
  return mode == TextMatchMode::intra ? s.qualitative + " " + s.quantitative
                                      : s.qualitative;
}

inline TaskInstance build_text_matching_task(
    const AnnotatedSample& target,
    const std::array<const AnnotatedSample*, 3>& pool, TextMatchMode mode,
    WireFormat fmt, PromptStyle style, Rng& rng) {
  for (const auto* d : pool) {
    if (mode == TextMatchMode::intra) {
      if (d->dataset_kind != target.dataset_kind) {
        throw TaskError("intra-dataset matching needs a same-dataset pool");
      }
    }
  }
  if (mode == TextMatchMode::cross) {
    std::array<DatasetKind, 4> kinds = {target.dataset_kind,
                                        pool[0]->dataset_kind,
                                        pool[1]->dataset_kind,
                                        pool[2]->dataset_kind};
    for (std::size_t i = 0; i < kinds.size(); ++i) {
      for (std::size_t j = i + 1; j < kinds.size(); ++j) {
        if (kinds[i] == kinds[j]) {
          throw TaskError("cross-dataset matching needs four distinct datasets");
        }
      }
    }
  }

  std::vector<std::pair<std::string, bool>> options;
  options.emplace_back(description_text(target, mode), true);
  for (const auto* d : pool) options.emplace_back(description_text(*d, mode), false);
  for (std::size_t i = 0; i < options.size(); ++i) {
    for (std::size_t j = i + 1; j < options.size(); ++j) {
      if (options[i].first == options[j].first) {
        throw TaskError("duplicate descriptions in the option pool");
      }
    }
  }
  rng.shuffle(options);

  TaskInstance t;
  t.kind = mode == TextMatchMode::intra ? TaskKind::text_match_intra
                                        : TaskKind::text_match_cross;
  t.sample_id = target.id;
  t.dataset = target.dataset_kind;
  t.fmt = fmt;
  t.style = style;
  t.id = detail::task_id(target, t.kind, fmt, style);
  std::array<std::string, 4> texts;
  for (std::size_t i = 0; i < 4; ++i) {
    texts[i] = options[i].first;
    if (options[i].second) t.key.match = static_cast<char>('a' + i);
  }
  t.prompt = prompt_with_series(target.series, fmt,
                                prompts::text_match_question(texts, style));
  return t;
}

// Canonical answer text for a ground truth; what a perfect solver replies.
inline std::string canonical_answer(const GroundTruth& key) {
  if (key.yes_no) return *key.yes_no ? "Yes" : "No";
  if (key.choice) return std::string("(") + *key.choice + ")";
  if (key.match) return std::string("(") + *key.match + ")";
  if (key.retrieval) {
    const RetrievalKey& r = *key.retrieval;
    return "{'max_value': {'value': " + format_value(r.max_value) +
           ", 'date': '" + format_date(r.max_date) + "'}, 'min_value': "
           "{'value': " + format_value(r.min_value) + ", 'date': '" +
           format_date(r.min_date) + "'}, 'value_on_date " +
           format_date(r.query_date) + "': {'value': " +
           format_value(r.value_on_date) + "}}";
  }
  throw TaskError("canonical_answer: empty ground truth");
}

}  // namespace tsbench

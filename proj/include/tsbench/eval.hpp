#pragma once

// Response parsing and scoring. Parsers are total: malformed text never
// throws, it yields an empty optional, and unparsed answers score as wrong
// rather than being dropped.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsbench/core.hpp"

namespace tsbench {

inline constexpr const char* kUnparsedClass = "<unparsed>";

// First standalone yes/no token decides; anything else is a parse failure.
inline std::optional<bool> parse_yes_no(std::string_view text) {
  std::string token;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool alpha = i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]));
    if (alpha) {
      token += static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
      continue;
    }
    if (token == "yes") return true;
    if (token == "no") return false;
    token.clear();
  }
  return std::nullopt;
}

// First "(a)".."(d)" or standalone letter a-d wins.
inline std::optional<char> parse_choice(std::string_view text) {
  auto is_word = [&](std::size_t i) {
    return i < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_');
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(' && i + 2 < text.size() && text[i + 2] == ')') {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i + 1])));
      if (c >= 'a' && c <= 'd') return c;
    }
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(text[i])));
    if (c >= 'a' && c <= 'd' && !is_word(i + 1) && (i == 0 || !is_word(i - 1))) {
      return c;
    }
  }
  return std::nullopt;
}

struct RetrievalParse {
  std::optional<double> max_value;
  std::optional<std::string> max_date;
  std::optional<double> min_value;
  std::optional<std::string> min_date;
  std::optional<double> value_on_date;
};

namespace detail {

inline std::optional<double> lenient_number(std::string_view s) {
  // Accepts optional thousands separators: "1,050" -> 1050.
  std::string clean;
  for (char c : s) {
    if (c == ',') continue;
    clean += c;
  }
  if (clean.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(clean.c_str(), &end);
  if (end != clean.c_str() + clean.size()) return std::nullopt;
  return v;
}

// Finds `'field'` (either quote style) and extracts its value and/or date
// sub-fields from the dictionary-like text that follows.
struct FieldParse {
  std::optional<double> value;
  std::optional<std::string> date;
};

inline FieldParse parse_dict_field(std::string_view text, std::string_view field) {
  FieldParse out;
  std::size_t pos = std::string_view::npos;
  for (std::size_t i = 0; i + field.size() <= text.size(); ++i) {
    if (text.substr(i, field.size()) == field) {
      pos = i;
      break;
    }
  }
  if (pos == std::string_view::npos) return out;
  // Scope the search to this field's braces when present.
  const std::size_t open = text.find('{', pos);
  std::size_t close = std::string_view::npos;
  if (open != std::string_view::npos) close = text.find('}', open);
  const std::string_view scope =
      (open != std::string_view::npos && close != std::string_view::npos)
          ? text.substr(open, close - open + 1)
          : text.substr(pos);

  auto after_key = [&](std::string_view key) -> std::optional<std::string> {
    std::size_t k = scope.find(key);
    if (k == std::string_view::npos) return std::nullopt;
    k += key.size();
    while (k < scope.size() &&
           (scope[k] == '\'' || scope[k] == '"' || scope[k] == ':' ||
            scope[k] == ' ')) {
      ++k;
    }
    auto digit = [&](std::size_t i) {
      return i < scope.size() && scope[i] >= '0' && scope[i] <= '9';
    };
    std::string token;
    while (k < scope.size()) {
      const char c = scope[k];
      if (c == ',') {
        // A comma followed by exactly three digits is a thousands separator.
        if (digit(k + 1) && digit(k + 2) && digit(k + 3) && !digit(k + 4)) {
          token += c;
          ++k;
          continue;
        }
        break;
      }
      if (c == '}' || c == '\'' || c == '"' || c == '\n') break;
      token += c;
      ++k;
    }
    while (!token.empty() && token.back() == ' ') token.pop_back();
    if (token.empty()) return std::nullopt;
    return token;
  };

  if (auto v = after_key("value")) out.value = lenient_number(*v);
  if (auto d = after_key("date")) out.date = *d;
  return out;
}

}  // namespace detail

// Tolerant extraction of the three retrieval fields; each field fails
// independently. Accepts single or double quotes and thousands separators.
inline RetrievalParse parse_retrieval(std::string_view text) {
  RetrievalParse out;
  const auto mx = detail::parse_dict_field(text, "max_value");
  const auto mn = detail::parse_dict_field(text, "min_value");
  const auto vd = detail::parse_dict_field(text, "value_on_date");
  out.max_value = mx.value;
  out.max_date = mx.date;
  out.min_value = mn.value;
  out.min_date = mn.date;
  out.value_on_date = vd.value;
  return out;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

// Macro-averaged F1 over the classes present in the truth list. Predictions
// never seen in the truths (including the unparsed marker) only contribute
// false positives.
inline double f1_score(const std::vector<std::string>& preds,
                       const std::vector<std::string>& truths) {
  if (preds.empty() || preds.size() != truths.size()) {
    throw std::invalid_argument("f1_score: aligned non-empty lists required");
  }
  std::vector<std::string> classes;
  for (const auto& t : truths) {
    if (std::find(classes.begin(), classes.end(), t) == classes.end()) {
      classes.push_back(t);
    }
  }
  double sum = 0;
  for (const auto& c : classes) {
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const bool p = preds[i] == c;
      const bool t = truths[i] == c;
      tp += p && t;
      fp += p && !t;
      fn += !p && t;
    }
    const double precision =
        tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall =
        tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    sum += (precision + recall == 0) ? 0.0
                                     : 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(classes.size());
}

struct FieldScore {
  double accuracy = 0;
  double mape = 0;           // over parsed values only
  std::size_t n = 0;
  std::size_t mape_excluded = 0;  // parse failures left out of the MAPE mean
};

struct RetrievalScore {
  std::map<std::string, FieldScore> fields;  // max_value, max_date, ...
};

inline constexpr double kMapeDenominatorFloor = 1e-9;

namespace detail {

struct ValueKey {
  std::optional<double> pred;
  double truth = 0;
};

inline FieldScore score_values(const std::vector<ValueKey>& pairs) {
  FieldScore s;
  s.n = pairs.size();
  double mape_sum = 0;
  std::size_t mape_n = 0;
  std::size_t correct = 0;
  for (const auto& [pred, truth] : pairs) {
    if (!pred) {
      ++s.mape_excluded;
      continue;
    }
    const double p = round_to_display(*pred);
    const double t = round_to_display(truth);
    if (std::fabs(p - t) <= 1e-6) ++correct;
    mape_sum += std::fabs(*pred - truth) /
                std::max(std::fabs(truth), kMapeDenominatorFloor);
    ++mape_n;
  }
  s.accuracy = s.n ? static_cast<double>(correct) / static_cast<double>(s.n) : 0.0;
  s.mape = mape_n ? mape_sum / static_cast<double>(mape_n) : 0.0;
  return s;
}

inline FieldScore score_dates(
    const std::vector<std::pair<std::optional<std::string>, std::string>>& pairs) {
  FieldScore s;
  s.n = pairs.size();
  std::size_t correct = 0;
  for (const auto& [pred, truth] : pairs) {
    if (!pred) {
      ++s.mape_excluded;
      continue;
    }
    // Strict ISO match; "2020-1-2" does not equal "2020-01-02".
    if (*pred == truth) ++correct;
  }
  s.accuracy = s.n ? static_cast<double>(correct) / static_cast<double>(s.n) : 0.0;
  s.mape = std::numeric_limits<double>::quiet_NaN();
  return s;
}

}  // namespace detail

struct RetrievalKeyView {
  double max_value = 0;
  std::string max_date;
  double min_value = 0;
  std::string min_date;
  double value_on_date = 0;
};

inline RetrievalScore accuracy_and_mape(
    const std::vector<RetrievalParse>& preds,
    const std::vector<RetrievalKeyView>& keys) {
  if (preds.empty() || preds.size() != keys.size()) {
    throw std::invalid_argument("accuracy_and_mape: aligned non-empty lists required");
  }
  std::vector<detail::ValueKey> maxv, minv, vod;
  std::vector<std::pair<std::optional<std::string>, std::string>> maxd, mind;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    maxv.push_back({preds[i].max_value, keys[i].max_value});
    minv.push_back({preds[i].min_value, keys[i].min_value});
    vod.push_back({preds[i].value_on_date, keys[i].value_on_date});
    maxd.emplace_back(preds[i].max_date, keys[i].max_date);
    mind.emplace_back(preds[i].min_date, keys[i].min_date);
  }
  RetrievalScore out;
  out.fields["max_value"] = detail::score_values(maxv);
  out.fields["min_value"] = detail::score_values(minv);
  out.fields["value_on_date"] = detail::score_values(vod);
  out.fields["max_date"] = detail::score_dates(maxd);
  out.fields["min_date"] = detail::score_dates(mind);
  return out;
}

// ---------------------------------------------------------------------------
// Confusion matrix
// ---------------------------------------------------------------------------

struct ConfusionMatrix {
  std::vector<std::string> classes;  // column order; rows follow classes
  std::vector<std::vector<std::size_t>> counts;  // [truth][pred], last col unparsed
  std::size_t total = 0;

  std::size_t unparsed_column() const { return classes.size(); }
};

inline ConfusionMatrix confusion_matrix(const std::vector<std::string>& preds,
                                        const std::vector<std::string>& truths,
                                        const std::vector<std::string>& classes) {
  ConfusionMatrix m;
  m.classes = classes;
  m.counts.assign(classes.size(), std::vector<std::size_t>(classes.size() + 1, 0));
  auto index_of = [&](const std::string& c) -> std::optional<std::size_t> {
    const auto it = std::find(classes.begin(), classes.end(), c);
    if (it == classes.end()) return std::nullopt;
    return static_cast<std::size_t>(it - classes.begin());
  };
  for (std::size_t i = 0; i < preds.size() && i < truths.size(); ++i) {
    const auto row = index_of(truths[i]);
    if (!row) continue;
    const auto col = index_of(preds[i]);
    m.counts[*row][col ? *col : m.unparsed_column()] += 1;
    ++m.total;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Position bias
// ---------------------------------------------------------------------------

struct QuadrantOutcome {
  Quadrant quadrant;
  bool correct;
};

struct PositionBiasReport {
  std::map<Quadrant, double> accuracy;
  std::map<Quadrant, std::size_t> counts;
  std::vector<Quadrant> missing;  // quadrants with zero tasks
  double gap = 0;                 // max - min accuracy over present quadrants
  bool bias_flag = false;         // gap strictly above 0.10
};

inline PositionBiasReport position_bias_report(
    const std::vector<QuadrantOutcome>& outcomes) {
  PositionBiasReport r;
  std::map<Quadrant, std::size_t> correct;
  for (const auto& o : outcomes) {
    ++r.counts[o.quadrant];
    correct[o.quadrant] += o.correct;
  }
  for (const Quadrant q :
       {Quadrant::Q1, Quadrant::Q2, Quadrant::Q3, Quadrant::Q4}) {
    if (!r.counts.count(q)) {
      r.missing.push_back(q);
      continue;
    }
    r.accuracy[q] = static_cast<double>(correct[q]) /
                    static_cast<double>(r.counts[q]);
  }
  if (!r.accuracy.empty()) {
    double lo = 1.0, hi = 0.0;
    for (const auto& [q, a] : r.accuracy) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
    r.gap = hi - lo;
    r.bias_flag = r.gap > 0.10;
  }
  return r;
}

}  // namespace tsbench

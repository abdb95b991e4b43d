#pragma once

// The nine text formats a series travels through on its way into a prompt.
// Univariate layouts are pinned byte-for-byte; two-channel series extend each
// layout with Value1/Value2 columns. parse() is the exact inverse of render()
// for series whose values are already at display precision.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsbench/core.hpp"

namespace tsbench {

enum class WireFormat {
  csv,
  plain,
  tsv,
  custom,
  contextual,
  json,
  markdown,
  spaces,
  symbol,
};

inline constexpr WireFormat kAllFormats[] = {
    WireFormat::csv,     WireFormat::plain,    WireFormat::tsv,
    WireFormat::custom,  WireFormat::contextual, WireFormat::json,
    WireFormat::markdown, WireFormat::spaces,  WireFormat::symbol,
};

inline const char* to_string(WireFormat f) {
  switch (f) {
    case WireFormat::csv: return "csv";
    case WireFormat::plain: return "plain";
    case WireFormat::tsv: return "tsv";
    case WireFormat::custom: return "custom";
    case WireFormat::contextual: return "contextual";
    case WireFormat::json: return "json";
    case WireFormat::markdown: return "markdown";
    case WireFormat::spaces: return "spaces";
    case WireFormat::symbol: return "symbol";
  }
  return "?";
}

inline std::optional<WireFormat> wire_format_from_string(std::string_view s) {
  for (WireFormat f : kAllFormats) {
    if (s == to_string(f)) return f;
  }
  return std::nullopt;
}

struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
  std::size_t line;
};

namespace detail {

inline constexpr const char* kArrowUp = "↑";
inline constexpr const char* kArrowDown = "↓";
inline constexpr const char* kArrowFlat = "→";

// Movement vs the previous row, judged at display precision. First row and
// rows touching a missing value are "unchanged".
inline const char* direction_arrow(double prev, double cur) {
  if (is_missing(prev) || is_missing(cur)) return kArrowFlat;
  const double a = round_to_display(prev);
  const double b = round_to_display(cur);
  if (b > a) return kArrowUp;
  if (b < a) return kArrowDown;
  return kArrowFlat;
}

inline std::string spaced_digits(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += s[i];
  }
  return out;
}

inline std::string json_escape(const std::string& s) {
  // Dates and numbers never need escaping; kept for safety.
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      out.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (start < text.size()) out.emplace_back(text.substr(start));
  return out;
}

inline double parse_value_or_throw(std::string_view tok, std::size_t line_no) {
  const auto v = parse_value_token(tok);
  if (!v) {
    throw ParseError(line_no, "bad value '" + std::string(tok) + "'");
  }
  return *v;
}

inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c != ' ') out += c;
  }
  return out;
}

}  // namespace detail

inline std::string render(const TimeSeries& ts, WireFormat fmt) {
  using namespace detail;
  const std::size_t n = ts.values.size();
  const bool multi = ts.multivariate();
  std::string out;
  out.reserve(n * 24);

  auto date_str = [&](std::size_t i) {
    return format_date(add_days(ts.start_date, static_cast<long>(i)));
  };

  switch (fmt) {
    case WireFormat::csv:
      out += multi ? "Date,Value1,Value2\n" : "Date,Value\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += date_str(i) + "," + format_value(ts.values[i]);
        if (multi) out += "," + format_value(ts.values2[i]);
        out += '\n';
      }
      return out;

    case WireFormat::custom:
      out += multi ? "Date|Value1|Value2\n" : "Date|Value\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += date_str(i) + "|" + format_value(ts.values[i]);
        if (multi) out += "|" + format_value(ts.values2[i]);
        out += '\n';
      }
      return out;

    case WireFormat::tsv:
      out += multi ? "Date\tValue1\tValue2\n" : "Date\tValue\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += date_str(i) + "\t" + format_value(ts.values[i]);
        if (multi) out += "\t" + format_value(ts.values2[i]);
        out += '\n';
      }
      return out;

    case WireFormat::plain:
      for (std::size_t i = 0; i < n; ++i) {
        if (multi) {
          out += "Date: " + date_str(i) +
                 ", Value1: " + format_value(ts.values[i]) +
                 ", Value2: " + format_value(ts.values2[i]) + "\n";
        } else {
          out += "Date: " + date_str(i) +
                 ", Value: " + format_value(ts.values[i]) + "\n";
        }
      }
      return out;

    case WireFormat::contextual:
      out += multi ? "Date,Value1,Value2\n" : "Date,Value\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += date_str(i) + ",[" + format_value(ts.values[i]) + "]";
        if (multi) out += ",[" + format_value(ts.values2[i]) + "]";
        out += '\n';
      }
      return out;

    case WireFormat::json:
      for (std::size_t i = 0; i < n; ++i) {
        auto field = [&](double v) {
          return is_missing(v) ? std::string("null") : format_value(v);
        };
        if (multi) {
          out += "{\"Date\":\"" + date_str(i) +
                 "\",\"Value1\":" + field(ts.values[i]) +
                 ",\"Value2\":" + field(ts.values2[i]) + "}\n";
        } else {
          out += "{\"Date\":\"" + date_str(i) +
                 "\",\"Value\":" + field(ts.values[i]) + "}\n";
        }
      }
      return out;

    case WireFormat::markdown:
      out += multi ? "|Date|Value1|Value2|\n|---|---|---|\n"
                   : "|Date|Value|\n|---|---|\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += "|" + date_str(i) + "|" + format_value(ts.values[i]) + "|";
        if (multi) out += format_value(ts.values2[i]) + "|";
        out += '\n';
      }
      return out;

    case WireFormat::spaces:
      out += multi ? "Date,Value1,Value2\n" : "Date,Value\n";
      for (std::size_t i = 0; i < n; ++i) {
        out += date_str(i) + "," + spaced_digits(format_value(ts.values[i]));
        if (multi) out += "," + spaced_digits(format_value(ts.values2[i]));
        out += '\n';
      }
      return out;

    case WireFormat::symbol:
      out += multi ? "Date,Value1,Value2,DirectionIndicator1,DirectionIndicator2\n"
                   : "Date,Value,DirectionIndicator\n";
      for (std::size_t i = 0; i < n; ++i) {
        const char* d1 = i == 0 ? kArrowFlat
                                : direction_arrow(ts.values[i - 1], ts.values[i]);
        out += date_str(i) + "," + format_value(ts.values[i]);
        if (multi) {
          const char* d2 =
              i == 0 ? kArrowFlat
                     : direction_arrow(ts.values2[i - 1], ts.values2[i]);
          out += "," + format_value(ts.values2[i]) + "," + d1 + "," + d2;
        } else {
          out += std::string(",") + d1;
        }
        out += '\n';
      }
      return out;
  }
  throw std::logic_error("render: bad format");
}

namespace detail {

struct RowData {
  Date date;
  double v1 = 0;
  std::optional<double> v2;
};

// line0 is the file line number of the first data row.
inline TimeSeries assemble(const std::vector<RowData>& rows, std::size_t line0) {
  if (rows.empty()) throw ParseError(1, "no data rows");
  TimeSeries ts;
  ts.start_date = rows[0].date;
  const bool multi = rows[0].v2.has_value();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Date expect = add_days(ts.start_date, static_cast<long>(i));
    if (rows[i].date != expect) {
      throw ParseError(i + line0, "inconsistent dates: expected " +
                                      format_date(expect) + ", got " +
                                      format_date(rows[i].date));
    }
    if (rows[i].v2.has_value() != multi) {
      throw ParseError(i + line0, "inconsistent channel count");
    }
    ts.values.push_back(rows[i].v1);
    if (multi) ts.values2.push_back(*rows[i].v2);
  }
  return ts;
}

inline Date parse_date_or_throw(std::string_view s, std::size_t line_no) {
  try {
    return parse_date(s);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

inline std::string unbracket(std::string_view s, std::size_t line_no) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ParseError(line_no, "value not bracketed: '" + std::string(s) + "'");
  }
  return std::string(s.substr(1, s.size() - 2));
}

}  // namespace detail

inline TimeSeries parse(std::string_view text, WireFormat fmt) {
  using namespace detail;
  const auto lines = lines_of(text);
  std::vector<RowData> rows;

  auto separated = [&](char sep, const std::string& header1,
                       const std::string& header2, bool bracketed) {
    if (lines.empty()) throw ParseError(1, "empty input");
    const bool multi = lines[0] == header2;
    if (!multi && lines[0] != header1) {
      throw ParseError(1, "bad header '" + lines[0] + "'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto parts = split(lines[i], sep);
      const std::size_t want = multi ? 3 : 2;
      if (parts.size() != want) {
        throw ParseError(i + 1, "expected " + std::to_string(want) +
                                    " fields, got " +
                                    std::to_string(parts.size()));
      }
      RowData row;
      row.date = parse_date_or_throw(parts[0], i + 1);
      auto value_of = [&](const std::string& tok) {
        const std::string raw = bracketed ? unbracket(tok, i + 1) : tok;
        return parse_value_or_throw(raw, i + 1);
      };
      row.v1 = value_of(parts[1]);
      if (multi) row.v2 = value_of(parts[2]);
      rows.push_back(row);
    }
    return assemble(rows, 2);
  };

  switch (fmt) {
    case WireFormat::csv:
      return separated(',', "Date,Value", "Date,Value1,Value2", false);
    case WireFormat::custom:
      return separated('|', "Date|Value", "Date|Value1|Value2", false);
    case WireFormat::tsv:
      return separated('\t', "Date\tValue", "Date\tValue1\tValue2", false);
    case WireFormat::contextual:
      return separated(',', "Date,Value", "Date,Value1,Value2", true);

    case WireFormat::plain: {
      for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& ln = lines[i];
        if (!ln.starts_with("Date: ")) {
          throw ParseError(i + 1, "row does not start with 'Date: '");
        }
        RowData row;
        const std::size_t uni = ln.find(", Value: ");
        const std::size_t two = ln.find(", Value1: ");
        if (uni != std::string::npos) {
          row.date = parse_date_or_throw(ln.substr(6, uni - 6), i + 1);
          row.v1 = parse_value_or_throw(ln.substr(uni + 9), i + 1);
        } else if (two != std::string::npos) {
          row.date = parse_date_or_throw(ln.substr(6, two - 6), i + 1);
          const std::string rest = ln.substr(two + 10);
          const std::size_t sep = rest.find(", Value2: ");
          if (sep == std::string::npos) {
            throw ParseError(i + 1, "missing second channel");
          }
          row.v1 = parse_value_or_throw(rest.substr(0, sep), i + 1);
          row.v2 = parse_value_or_throw(rest.substr(sep + 10), i + 1);
        } else {
          throw ParseError(i + 1, "missing ', Value: ' marker");
        }
        rows.push_back(row);
      }
      return assemble(rows, 1);
    }

    case WireFormat::json: {
      for (std::size_t i = 0; i < lines.size(); ++i) {
        // Grammar is one flat object per line; a hand parser keeps error
        // positions precise and avoids accepting reordered keys.
        const std::string& ln = lines[i];
        RowData row;
        auto expect_prefix = [&](std::string_view rest, std::string_view pre)
            -> std::string_view {
          if (!rest.starts_with(pre)) {
            throw ParseError(i + 1, "malformed object near '" +
                                        std::string(rest.substr(0, 16)) + "'");
          }
          return rest.substr(pre.size());
        };
        auto take_number = [&](std::string_view rest, char stop,
                               double& out) -> std::string_view {
          const std::size_t e = rest.find(stop);
          if (e == std::string_view::npos) {
            throw ParseError(i + 1, "unterminated value field");
          }
          const std::string_view tok = rest.substr(0, e);
          if (tok == "null") {
            out = kMissingValue;
          } else {
            out = parse_value_or_throw(tok, i + 1);
          }
          return rest.substr(e + 1);
        };
        std::string_view rest = ln;
        rest = expect_prefix(rest, "{\"Date\":\"");
        if (rest.size() < 11) throw ParseError(i + 1, "truncated date");
        row.date = parse_date_or_throw(rest.substr(0, 10), i + 1);
        rest = rest.substr(10);
        if (rest.starts_with("\",\"Value\":")) {
          rest = rest.substr(10);
          double v = 0;
          rest = take_number(rest, '}', v);
          row.v1 = v;
        } else if (rest.starts_with("\",\"Value1\":")) {
          rest = rest.substr(11);
          double v1 = 0, v2 = 0;
          rest = take_number(rest, ',', v1);
          rest = expect_prefix(rest, "\"Value2\":");
          rest = take_number(rest, '}', v2);
          row.v1 = v1;
          row.v2 = v2;
        } else {
          throw ParseError(i + 1, "missing Value field");
        }
        if (!rest.empty()) throw ParseError(i + 1, "trailing content");
        rows.push_back(row);
      }
      return assemble(rows, 1);
    }

    case WireFormat::markdown: {
      if (lines.size() < 2) throw ParseError(1, "missing markdown table header");
      const bool multi = lines[0] == "|Date|Value1|Value2|";
      if (!multi && lines[0] != "|Date|Value|") {
        throw ParseError(1, "bad header '" + lines[0] + "'");
      }
      const std::string rule = multi ? "|---|---|---|" : "|---|---|";
      if (lines[1] != rule) {
        throw ParseError(2, "missing '" + rule + "' rule");
      }
      for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto parts = split(lines[i], '|');
        // Leading and trailing '|' produce empty first/last cells.
        const std::size_t want = multi ? 5 : 4;
        if (parts.size() != want || !parts.front().empty() ||
            !parts.back().empty()) {
          throw ParseError(i + 1, "malformed table row");
        }
        RowData row;
        row.date = parse_date_or_throw(parts[1], i + 1);
        row.v1 = parse_value_or_throw(parts[2], i + 1);
        if (multi) row.v2 = parse_value_or_throw(parts[3], i + 1);
        rows.push_back(row);
      }
      return assemble(rows, 3);
    }

    case WireFormat::spaces: {
      if (lines.empty()) throw ParseError(1, "empty input");
      const bool multi = lines[0] == "Date,Value1,Value2";
      if (!multi && lines[0] != "Date,Value") {
        throw ParseError(1, "bad header '" + lines[0] + "'");
      }
      for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto parts = split(lines[i], ',');
        const std::size_t want = multi ? 3 : 2;
        if (parts.size() != want) {
          throw ParseError(i + 1, "expected " + std::to_string(want) +
                                      " fields");
        }
        RowData row;
        row.date = parse_date_or_throw(parts[0], i + 1);
        row.v1 = parse_value_or_throw(strip_spaces(parts[1]), i + 1);
        if (multi) row.v2 = parse_value_or_throw(strip_spaces(parts[2]), i + 1);
        rows.push_back(row);
      }
      return assemble(rows, 2);
    }

    case WireFormat::symbol: {
      if (lines.empty()) throw ParseError(1, "empty input");
      const bool multi =
          lines[0] == "Date,Value1,Value2,DirectionIndicator1,DirectionIndicator2";
      if (!multi && lines[0] != "Date,Value,DirectionIndicator") {
        throw ParseError(1, "bad header '" + lines[0] + "'");
      }
      std::vector<std::string> arrows1, arrows2;
      for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto parts = split(lines[i], ',');
        const std::size_t want = multi ? 5 : 3;
        if (parts.size() != want) {
          throw ParseError(i + 1, "expected " + std::to_string(want) +
                                      " fields");
        }
        RowData row;
        row.date = parse_date_or_throw(parts[0], i + 1);
        row.v1 = parse_value_or_throw(parts[1], i + 1);
        if (multi) {
          row.v2 = parse_value_or_throw(parts[2], i + 1);
          arrows1.push_back(parts[3]);
          arrows2.push_back(parts[4]);
        } else {
          arrows1.push_back(parts[2]);
        }
        rows.push_back(row);
      }
      // The arrow column is redundant with the values; validate it against
      // recomputed deltas, then discard.
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const char* want1 =
            i == 0 ? kArrowFlat : direction_arrow(rows[i - 1].v1, rows[i].v1);
        if (arrows1[i] != want1) {
          throw ParseError(i + 2, "direction mismatch");
        }
        if (multi) {
          const char* want2 = i == 0 ? kArrowFlat
                                     : direction_arrow(*rows[i - 1].v2,
                                                       *rows[i].v2);
          if (arrows2[i] != want2) {
            throw ParseError(i + 2, "direction mismatch");
          }
        }
      }
      return assemble(rows, 2);
    }
  }
  throw std::logic_error("parse: bad format");
}

}  // namespace tsbench

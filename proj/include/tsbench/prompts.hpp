#pragma once

// Prompt texts for every task. Detection and classification questions for
// trend, seasonality, anomalies, volatility, structural breaks, fat tails,
// stationarity, correlation and cross-correlation are fixed wording;
// chain-of-thought variants exist for trend, seasonality, anomalies and the
// retrieval bundle, and every other feature falls back to its plain question
// with a step-by-step suffix. The dynamic-correlation pair of questions
// follows the correlation wording.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tsbench/core.hpp"

namespace tsbench {

enum class PromptStyle { zero_shot, cot };

inline const char* to_string(PromptStyle s) {
  return s == PromptStyle::zero_shot ? "zero-shot" : "cot";
}

inline std::optional<PromptStyle> prompt_style_from_string(std::string_view s) {
  if (s == "zero-shot" || s == "zero_shot") return PromptStyle::zero_shot;
  if (s == "cot") return PromptStyle::cot;
  return std::nullopt;
}

namespace prompts {

inline constexpr const char* kCotSuffix = "\nLet's think step by step.";

// ---- retrieval / arithmetic reasoning -------------------------------------

inline std::string retrieval_question(PromptStyle style,
                                      const std::string& query_date) {
  if (style == PromptStyle::zero_shot) {
    return
        "Given the input time series, please answer the following questions "
        "and format your responses in a dictionary with the structure shown "
        "below:\n"
        "{'max_value': {'value':value, 'date':date}, 'min_value': "
        "{'value':value, 'date':date}, 'value_on_date " + query_date +
        "': {'value':value}}.\n"
        "Only provide the numerical value and/or the date as the answer for "
        "each question. Format the reply as a dictionary following the "
        "instruction.";
  }
  return
      "Given the input time series, please provide concise and precise "
      "answers to the following questions and format your responses in a "
      "dictionary:\n"
      "{'max_value': {'value':value, 'date':date}, 'min_value': "
      "{'value':value, 'date':date}, 'value_on_date " + query_date +
      "': {'value':value}}.\n"
      "To ensure accuracy, let's follow these steps:\n"
      "1. Identify the maximum value and its date.\n"
      "2. Identify the minimum value and its date.\n"
      "3. Find the value on the specified date " + query_date + ".\n"
      "Note: Only provide the numerical value and/or the date as the answer "
      "for each question. Format the reply as a dictionary following the "
      "instruction.\n"
      "Let's think step by step.";
}

// ---- detection -------------------------------------------------------------

inline std::string detection_question(Feature f, PromptStyle style) {
  switch (f) {
    case Feature::Trend:
      if (style == PromptStyle::zero_shot) {
        return "Question: can you detect a general upward or downward trend "
               "in this time series? Answer yes or no only.";
      }
      return
          "Question: Can you detect a general upward or downward trend in "
          "this time series? Provide your reasoning and then answer 'Yes' or "
          "'No'.\n"
          "Let's think step by step. First, observe the overall pattern of "
          "the data points. Do they generally increase or decrease over "
          "time?\n"
          "Consider the starting and ending points of the series. If the "
          "ending point is significantly higher or lower than the starting "
          "point, this might indicate a trend.\n"
          "Also, look at the intermediate points: do they show a consistent "
          "direction of movement, or are there major fluctuations that "
          "disrupt the trend?\n"
          "Now, based on these observations, determine if there is a "
          "consistent pattern indicating a trend. Finally, provide your "
          "answer as 'Yes' or 'No'.";
    case Feature::Seasonality:
      if (style == PromptStyle::zero_shot) {
        return "Question: can you detect any cyclic or periodic patterns in "
               "this time series? Only answer 'Yes' or 'No'.";
      }
      return
          "Question: Can you detect any cyclic or periodic patterns in this "
          "time series? Provide your reasoning and then answer 'Yes' or "
          "'No'.\n"
          "Let's think step by step. First, observe the overall shape of the "
          "time series. Look for repeating patterns or cycles.\n"
          "Identify the peaks (high points) and troughs (low points) in the "
          "series. Are these peaks and troughs occurring at regular "
          "intervals?\n"
          "Measure the distance between these repeating points. If the "
          "intervals between them are consistent, it suggests a cyclic "
          "pattern.\n"
          "Also, consider the amplitude (height) of these peaks and troughs. "
          "Is the amplitude consistent or does it vary over time?\n"
          "Now, based on these observations, determine if there is a "
          "consistent cyclic or periodic pattern in the time series. "
          "Finally, provide your answer as 'Yes' or 'No'.";
    case Feature::Anomaly:
      if (style == PromptStyle::zero_shot) {
        return "Question: can you detect any irregularities in this time "
               "series? Only answer 'Yes' or 'No'.";
      }
      return
          "Question: Can you detect any irregularities in this time series? "
          "Provide your reasoning and then answer 'Yes' or 'No'.\n"
          "Let's think step by step. First, observe the overall pattern of "
          "the time series. Identify the general trend or pattern.\n"
          "Next, look for any points that deviate significantly from this "
          "overall pattern. These deviations could be much higher or lower "
          "than the rest of the data points.\n"
          "Consider the context of these deviations: are they isolated "
          "points, or do they occur in a sequence?\n"
          "Are there sudden jumps or drops that are not consistent with the "
          "trend? After examining these factors, determine if there are any "
          "significant irregularities. Finally, provide your answer as 'Yes' "
          "or 'No'.";
    case Feature::Volatility: {
      std::string q = "Question: can you detect any volatility in this time "
                      "series? Only answer 'Yes' or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::StructuralBreak: {
      std::string q = "Question: can you detect any regime switches or "
                      "structural breaks in this time series? Only answer "
                      "'Yes' or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::FatTails: {
      std::string q =
          "Question: Considering the data provided, does the time series "
          "exhibit fat tails? Fat tails refer to a higher likelihood of "
          "extreme values compared to a normal distribution, indicating a "
          "higher probability of observing significant positive or negative "
          "deviations. Only answer 'Yes' or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::Stationarity: {
      std::string q = "Question: Considering the data provided, is the time "
                      "series stationary? Only answer 'Yes' or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::Correlation: {
      std::string q = "Question: Considering the data provided, is there a "
                      "correlation between the time series? Only answer 'Yes' "
                      "or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::CrossCorrelation: {
      std::string q =
          "Question: Considering the data provided, is there a correlation "
          "(direct or lagged) between the two time series? Only answer 'Yes' "
          "or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::DynamicCorrelation: {
      std::string q =
          "Question: Considering the data provided, is there a correlation "
          "between the two time series that changes over time? Only answer "
          "'Yes' or 'No'.";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
  }
  throw std::invalid_argument("detection_question: no prompt for this feature");
}

// ---- classification --------------------------------------------------------

inline std::string classification_question(Feature f, PromptStyle style) {
  switch (f) {
    case Feature::Trend:
      if (style == PromptStyle::zero_shot) {
        return "Select one of the following answers: (a) the time series has "
               "a positive trend, (b) the time series has a negative trend. "
               "Provide your answer as either (a) or (b).";
      }
      return
          "Select one of the following answers:\n"
          "(a) The time series has a positive trend, (b) The time series has "
          "a negative trend. Provide your answer as either (a) or (b).\n"
          "Let's think step by step. First, identify the general direction "
          "of the data points. Do they appear to be moving upward or "
          "downward overall?\n"
          "Consider the slope of the line that could be drawn through the "
          "data points. A positive slope indicates an upward trend, while a "
          "negative slope indicates a downward trend.\n"
          "Check for consistency in the movement. Are most of the data "
          "points following this direction, or are there significant "
          "deviations?\n"
          "If the overall pattern is increasing, select (a). If it is "
          "decreasing, select (b).";
    case Feature::Seasonality:
      if (style == PromptStyle::zero_shot) {
        return
            "Given the following definitions:\n"
            "Fixed-period: Regular, predictable seasonal patterns occurring "
            "at fixed intervals (e.g., daily, weekly, monthly).\n"
            "Shifting Period: Seasonal patterns where the length of the "
            "period shifts over time.\n"
            "Multiple seasonality: Presence of multiple overlapping seasonal "
            "patterns (e.g., both weekly and monthly seasonality)\n"
            "Select one of the following answers:\n"
            "(a) The time series has fixed-period seasonality, (b) The time "
            "series has a shift in seasonal pattern, (c) The time series has "
            "multiple seasonal patterns.\n"
            "Only answer (a), (b) or (c).";
      }
      return
          "Given the following definitions:\n"
          "Fixed-Period: Seasonality with a constant, unchanging period "
          "(e.g., monthly seasonality).\n"
          "Shifting Period: Seasonality where the length of the period "
          "shifts over time (e.g., a seasonal pattern that shifts slightly "
          "each year).\n"
          "Multiple Seasonality: Presence of multiple overlapping seasonal "
          "patterns (e.g., both weekly and monthly seasonality).\n"
          "Select one of the following answers:\n"
          "(a) The time series has a fixed-period seasonality, (b) The time "
          "series has a shifting-period seasonality, (c) The time series has "
          "multiple seasonality.\n"
          "Let's think step by step. First, identify if there is a repeating "
          "pattern at fixed intervals, which would indicate a fixed-period "
          "seasonality. If the timing of the pattern shifts, it's a "
          "shifting-period seasonality. Finally, if there are two or more "
          "overlapping seasonal patterns, identify it as multiple "
          "seasonality. Compare the intervals and magnitudes of the peaks "
          "and troughs carefully to determine the correct pattern. Now, "
          "provide your final answer as either (a), (b), or (c).";
    case Feature::Anomaly:
      if (style == PromptStyle::zero_shot) {
        return
            "Given the following definitions:\n"
            "Spike: a sudden and brief deviation from the overall pattern of "
            "the data.\n"
            "Level shift: a sudden and lasting change in the average value "
            "of the series.\n"
            "Temporal disruption: an interval where data is missing or not "
            "recorded.\n"
            "Select one of the following answers that best describes the "
            "provided time series:\n"
            "(a) The time series has one or more spikes, (b) The time series "
            "has a level shift, (c) The time series has a temporal "
            "disruption.\n"
            "Only answer (a), (b), or (c).";
      }
      return
          "Given the following definitions:\n"
          "Spike: a sudden and brief deviation from the overall pattern of "
          "the data.\n"
          "Level shift: a sudden and lasting change in the average value of "
          "the series.\n"
          "Temporal disruption: an interval where data is missing or not "
          "recorded.\n"
          "Select one of the following answers that best describes the "
          "provided time series:\n"
          "(a) The time series has one or more spikes, (b) The time series "
          "has a level shift,\n"
          "(c) The time series has a temporal disruption.\n"
          "Let's think step by step. First, identify if there are any points "
          "that stand out sharply from the rest of the data, which would "
          "indicate spikes.\n"
          "If there is a lasting change in the average value of the series, "
          "identify it as a level shift.\n"
          "If there are intervals where data appears to be missing or not "
          "recorded, classify it as a temporal disruption.\n"
          "Based on your observations, determine the type of irregularity "
          "present. Now, provide your final answer as either (a), (b), or "
          "(c).";
    case Feature::Volatility: {
      std::string q =
          "Given the following definitions:\n"
          "Constant Volatility: The degree of variation in the time series "
          "remains consistent and predictable over time.\n"
          "Trending Volatility: The level of variation in the time series "
          "shows a clear increasing or decreasing trend over time.\n"
          "Clustered Volatility: The time series exhibits periods where "
          "volatility is significantly higher or lower, with these periods "
          "tending to cluster together.\n"
          "Dynamic Volatility: The volatility of the time series changes "
          "over time in response to external factors (e.g., leverage effect "
          "where the volatility of the time series tends to increase when "
          "the series experiences negative returns).\n"
          "Select one of the following answers:\n"
          "(a) The time series has constant volatility, (b) The time series "
          "has trending volatility, (c) The time series has clustered "
          "volatility, (d) The time series has dynamic volatility.\n"
          "Only answer (a), (b), (c), or (d).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::StructuralBreak: {
      std::string q =
          "Given the following definitions:\n"
          "Regime Change: A shift in the time series data's statistical "
          "properties, such as mean, variance, or auto-correlation, that "
          "persists over time. This change is often gradual and represents a "
          "new phase or 'regime' in the data.\n"
          "Structural Break: An abrupt change in the time series data that "
          "leads to a new level or trend. This change is typically sudden "
          "and can be linked to specific events or shifts in the underlying "
          "process.\n"
          "Examine the provided time series data and select the correct "
          "option:\n"
          "(a) The time series data exhibits a Regime Change. (b) The time "
          "series data exhibits a Structural Break.\n"
          "Provide your answer as either (a) or (b).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::Stationarity: {
      std::string q =
          "Given the following definitions of non-stationary types in time "
          "series data:\n"
          "(a) Trend Change: The time series exhibits a significant shift in "
          "its underlying trend, indicating a change in the mean over "
          "time.\n"
          "(b) Variance Change: The time series shows a change in its "
          "variability or spread.\n"
          "(c) Seasonality: The time series displays regular and predictable "
          "patterns that repeat over a certain period.\n"
          "(d) Trend and Seasonality: The time series exhibits both a "
          "significant underlying trend and seasonal patterns. This type "
          "combines elements of both trend changes and predictable seasonal "
          "fluctuations.\n"
          "Select one of the following answers based on your analysis of the "
          "time series:\n"
          "(a) The time series has a trend change, (b) The time series has a "
          "variance change, (c) The time series has seasonality, (d) The "
          "time series has both trend and seasonality.\n"
          "Only answer (a), (b), (c) or (d).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::Correlation: {
      std::string q =
          "Select one of the following answers:\n"
          "(a) The time series are positively correlated or (b) The time "
          "series are negatively correlated.\n"
          "Provide your answer as either (a) or (b).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::CrossCorrelation: {
      std::string q =
          "Given the following definitions:\n"
          "Direct Correlation: The two time series show a direct, immediate "
          "relationship between their values, where changes in one series "
          "directly influence the other in a straightforward manner.\n"
          "Direct Lagged Correlation: The two time series demonstrate a "
          "delayed relationship, where changes in one series influence the "
          "other after a certain lag period.\n"
          "Inverse Correlation: The two time series exhibit an inverse or "
          "negative relationship between their values, where an increase in "
          "one series typically leads to a decrease in the other, and vice "
          "versa.\n"
          "Inverse Lagged Correlation: The two time series show a "
          "relationship where changes in one series negatively influence the "
          "other after a certain lag period, suggesting that past increases "
          "in one series lead to future decreases in the other, and vice "
          "versa.\n"
          "Select one of the following answers that best describes the "
          "relationship between the two time series:\n"
          "(a) The two time series exhibit direct correlation, (b) The two "
          "time series exhibit direct lagged correlation, (c) The two time "
          "series exhibit inverse correlation, (d) The two time series "
          "exhibit inverse lagged correlation.\n"
          "Only answer (a), (b), (c), or (d).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::DynamicCorrelation: {
      std::string q =
          "Select one of the following answers:\n"
          "(a) The two time series are correlated in the first half of the "
          "series, (b) The two time series are correlated in the second half "
          "of the series.\n"
          "Provide your answer as either (a) or (b).";
      if (style == PromptStyle::cot) q += kCotSuffix;
      return q;
    }
    case Feature::FatTails:
      break;
  }
  throw std::invalid_argument(
      "classification_question: no prompt for this feature");
}

// ---- search and text matching ----------------------------------------------

inline std::string search_question(const std::string& value, PromptStyle style) {
  std::string q = "Question: is the value " + value +
                  " present in this time series? Only answer 'Yes' or 'No'.";
  if (style == PromptStyle::cot) q += kCotSuffix;
  return q;
}

inline std::string text_match_question(const std::array<std::string, 4>& options,
                                       PromptStyle style) {
  std::string q = "Given the following four descriptions:\n";
  const char* letters[] = {"(a) ", "(b) ", "(c) ", "(d) "};
  for (int i = 0; i < 4; ++i) q += letters[i] + options[static_cast<std::size_t>(i)] + "\n";
  q += "Question: which description best matches the input time series? Only "
       "answer (a), (b), (c), or (d).";
  if (style == PromptStyle::cot) q += kCotSuffix;
  return q;
}

// ---- answer keys -----------------------------------------------------------

// Letter of a sub-feature in the fixed option order of its classification
// question. Varying-amplitude seasonality classifies as fixed-period.
inline char classification_letter(Feature f, const std::string& sub) {
  switch (f) {
    case Feature::Trend:
      if (sub.starts_with("up")) return 'a';
      if (sub.starts_with("down")) return 'b';
      break;
    case Feature::Seasonality:
      if (sub == "fixed" || sub == "varying_amplitude") return 'a';
      if (sub == "shifting_period") return 'b';
      if (sub == "multiple") return 'c';
      break;
    case Feature::Anomaly:
      if (sub.starts_with("spike") || sub == "step_spike") return 'a';
      if (sub == "level_shift") return 'b';
      if (sub == "temporal_disruption") return 'c';
      break;
    case Feature::Volatility:
      if (sub == "constant") return 'a';
      if (sub == "increasing") return 'b';
      if (sub == "clustered_garch") return 'c';
      if (sub == "leverage") return 'd';
      break;
    case Feature::StructuralBreak:
      if (sub.starts_with("parameter_shift")) return 'a';
      if (sub.starts_with("regime_shift")) return 'b';
      break;
    case Feature::Stationarity:
      if (sub == "nonstat_mean") return 'a';
      if (sub == "nonstat_variance") return 'b';
      if (sub == "nonstat_seasonal") return 'c';
      if (sub == "nonstat_trend_seasonal") return 'd';
      break;
    case Feature::Correlation:
      if (sub == "positive") return 'a';
      if (sub == "negative") return 'b';
      break;
    case Feature::CrossCorrelation:
      if (sub == "direct") return 'a';
      if (sub == "direct_lagged") return 'b';
      if (sub == "inverse") return 'c';
      if (sub == "inverse_lagged") return 'd';
      break;
    case Feature::DynamicCorrelation:
      if (sub.starts_with("first_half")) return 'a';
      if (sub.starts_with("second_half")) return 'b';
      break;
    case Feature::FatTails:
      break;
  }
  throw std::invalid_argument("classification_letter: '" + sub +
                              "' has no option letter");
}

// Control classes answer "no" to their detection question. The stationarity
// question asks for the property itself, so there "stationary" answers yes
// and the non-stationary classes are the ones with a follow-up.
inline bool detection_truth(Feature f, const std::string& sub) {
  if (f == Feature::Stationarity) return sub == "stationary";
  if (f == Feature::FatTails) return sub == "fat_tailed";
  return sub != "none";
}

// Detection answer that triggers the classification follow-up.
inline bool classification_trigger(Feature f) {
  return f != Feature::Stationarity;
}

// Whether a truthful detection answer leaves anything to classify.
inline bool classifiable(Feature f, const std::string& sub) {
  if (f == Feature::FatTails) return false;
  return detection_truth(f, sub) == classification_trigger(f);
}

}  // namespace prompts
}  // namespace tsbench

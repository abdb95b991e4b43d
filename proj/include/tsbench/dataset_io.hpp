#pragma once

// JSONL persistence with a sidecar manifest. One JSON object per line, one
// file per dataset (all splits inline). The manifest records the base seed,
// per-split counts, generator version and a content checksum, which is enough
// to regenerate the file byte-identically.

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsbench/core.hpp"
#include "tsbench/synth.hpp"

namespace tsbench {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DatasetManifest {
  DatasetKind dataset_kind = DatasetKind::trend;
  std::uint64_t base_seed = 0;
  std::string generator_version = kGeneratorVersion;
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
  std::string checksum;  // fnv1a-64 of the jsonl bytes, hex
};

namespace detail {

inline std::string checksum_hex(std::string_view content) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a(content)));
  return buf;
}

inline nlohmann::ordered_json sample_to_json(const AnnotatedSample& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["dataset_kind"] = to_string(s.dataset_kind);
  j["split"] = to_string(s.split);
  j["start_date"] = format_date(s.series.start_date);
  j["frequency"] = "daily";
  auto values_json = [](const std::vector<double>& v) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (double x : v) {
      if (is_missing(x)) {
        arr.push_back(nullptr);
      } else {
        arr.push_back(x);
      }
    }
    return arr;
  };
  j["values"] = values_json(s.series.values);
  if (s.series.multivariate()) j["values2"] = values_json(s.series.values2);
  nlohmann::ordered_json label;
  label["feature"] = to_string(s.label.feature);
  label["sub_feature"] = s.label.sub_feature;
  label["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.label.params) label["params"][k] = v;
  j["label"] = label;
  j["qualitative"] = s.qualitative;
  j["quantitative"] = s.quantitative;
  return j;
}

inline AnnotatedSample sample_from_json(const nlohmann::json& j,
                                        std::size_t line_no) {
  auto fail = [&](const std::string& what) -> void {
    throw IoError("line " + std::to_string(line_no) + ": " + what);
  };
  AnnotatedSample s;
  try {
    s.id = j.at("id").get<std::string>();
    const auto kind = dataset_kind_from_string(j.at("dataset_kind").get<std::string>());
    if (!kind) fail("unknown dataset_kind '" + j.at("dataset_kind").get<std::string>() + "'");
    s.dataset_kind = *kind;
    const auto split = split_from_string(j.at("split").get<std::string>());
    if (!split) fail("unknown split");
    s.split = *split;
    if (j.at("frequency").get<std::string>() != "daily") {
      fail("unsupported frequency '" + j.at("frequency").get<std::string>() + "'");
    }
    s.series.start_date = parse_date(j.at("start_date").get<std::string>());
    auto read_values = [&](const nlohmann::json& arr) {
      std::vector<double> out;
      for (const auto& x : arr) {
        if (x.is_null()) {
          out.push_back(kMissingValue);
        } else {
          out.push_back(x.get<double>());
        }
      }
      return out;
    };
    s.series.values = read_values(j.at("values"));
    if (j.contains("values2")) s.series.values2 = read_values(j.at("values2"));
    const auto& label = j.at("label");
    const auto feature = feature_from_string(label.at("feature").get<std::string>());
    if (!feature) fail("unknown feature");
    s.label.feature = *feature;
    s.label.sub_feature = label.at("sub_feature").get<std::string>();
    for (const auto& [k, v] : label.at("params").items()) {
      s.label.params[k] = v.get<double>();
    }
    s.qualitative = j.at("qualitative").get<std::string>();
    s.quantitative = j.at("quantitative").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return s;
}

inline nlohmann::ordered_json manifest_to_json(const DatasetManifest& m) {
  nlohmann::ordered_json j;
  j["dataset_kind"] = to_string(m.dataset_kind);
  j["base_seed"] = m.base_seed;
  j["generator_version"] = m.generator_version;
  j["counts"] = {{"train", m.train}, {"validation", m.validation}, {"test", m.test}};
  j["checksum"] = m.checksum;
  return j;
}

}  // namespace detail

inline std::filesystem::path manifest_path_for(const std::filesystem::path& dataset_path) {
  std::filesystem::path p = dataset_path;
  p.replace_extension(".manifest.json");
  return p;
}

inline std::string serialize_dataset(const std::vector<AnnotatedSample>& samples) {
  std::string out;
  for (const auto& s : samples) {
    out += detail::sample_to_json(s).dump();
    out += '\n';
  }
  return out;
}

inline DatasetManifest write_dataset(const std::vector<AnnotatedSample>& samples,
                                     const std::filesystem::path& path,
                                     std::uint64_t base_seed) {
  if (samples.empty()) throw IoError("write_dataset: nothing to write");
  DatasetManifest m;
  m.dataset_kind = samples.front().dataset_kind;
  m.base_seed = base_seed;
  for (const auto& s : samples) {
    switch (s.split) {
      case Split::train: ++m.train; break;
      case Split::validation: ++m.validation; break;
      case Split::test: ++m.test; break;
    }
  }
  const std::string content = serialize_dataset(samples);
  m.checksum = detail::checksum_hex(content);

  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("write_dataset: cannot open " + path.string());
  f << content;
  if (!f) throw IoError("write_dataset: write failed for " + path.string());

  std::ofstream mf(manifest_path_for(path), std::ios::binary);
  if (!mf) {
    throw IoError("write_dataset: cannot open " +
                  manifest_path_for(path).string());
  }
  mf << detail::manifest_to_json(m).dump(2) << '\n';
  return m;
}

inline DatasetManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("read_manifest: cannot open " + path.string());
  nlohmann::json j;
  try {
    f >> j;
    DatasetManifest m;
    const auto kind = dataset_kind_from_string(j.at("dataset_kind").get<std::string>());
    if (!kind) throw IoError("read_manifest: unknown dataset_kind");
    m.dataset_kind = *kind;
    m.base_seed = j.at("base_seed").get<std::uint64_t>();
    m.generator_version = j.at("generator_version").get<std::string>();
    m.train = j.at("counts").at("train").get<std::size_t>();
    m.validation = j.at("counts").at("validation").get<std::size_t>();
    m.test = j.at("counts").at("test").get<std::size_t>();
    m.checksum = j.at("checksum").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("read_manifest: " + std::string(e.what()));
  }
}

struct ReadResult {
  std::vector<AnnotatedSample> samples;
  DatasetManifest manifest;
};

// Reads, checksums and validates a dataset. A missing manifest is an error;
// so is any sample that fails validation, a count mismatch, or a checksum
// mismatch (tampered or truncated file).
inline ReadResult read_dataset(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("read_dataset: cannot open " + path.string());
  std::stringstream buffer;
  buffer << f.rdbuf();
  const std::string content = buffer.str();

  ReadResult out;
  out.manifest = read_manifest(manifest_path_for(path));
  if (detail::checksum_hex(content) != out.manifest.checksum) {
    throw IoError("read_dataset: checksum mismatch for " + path.string());
  }

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) end = content.size();
    const std::string_view line(content.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw IoError("line " + std::to_string(line_no) + ": malformed JSON");
    }
    AnnotatedSample s = detail::sample_from_json(j, line_no);
    const auto v = validate(s);
    if (!v.ok()) {
      throw IoError("line " + std::to_string(line_no) + ": invalid sample: " +
                    v.violations.front());
    }
    out.samples.push_back(std::move(s));
  }

  std::size_t train = 0, validation = 0, test = 0;
  std::set<std::string> ids;
  for (const auto& s : out.samples) {
    if (!ids.insert(s.id).second) {
      throw IoError("read_dataset: duplicate sample id '" + s.id + "'");
    }
    switch (s.split) {
      case Split::train: ++train; break;
      case Split::validation: ++validation; break;
      case Split::test: ++test; break;
    }
  }
  if (train != out.manifest.train || validation != out.manifest.validation ||
      test != out.manifest.test) {
    throw IoError("read_dataset: split counts do not match the manifest");
  }
  return out;
}

// Regenerates a dataset from its manifest alone.
inline std::vector<AnnotatedSample> regenerate_from_manifest(
    const DatasetManifest& m) {
  GenConfig cfg;
  cfg.base_seed = m.base_seed;
  return gen_dataset(m.dataset_kind, {m.train, m.validation, m.test}, cfg);
}

}  // namespace tsbench

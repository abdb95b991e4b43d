// Command-line surface for the benchmark toolkit.
//
//   tsbench generate    synthesize a dataset and write JSONL + manifest
//   tsbench render      print one stored series in a chosen text format
//   tsbench run         build tasks from a dataset and run a solver over them
//   tsbench score       aggregate a transcript into metrics and matrices
//   tsbench bias-report position-bias summary of a transcript
//
// Non-zero exit writes a machine-readable {"error": ...} object to stderr.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tsbench/dataset_io.hpp"
#include "tsbench/report.hpp"
#include "tsbench/runner.hpp"
#include "tsbench/solvers_http.hpp"
#include "tsbench/tsbench.hpp"

using namespace tsbench;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? v : fallback;
}

struct RunOptions {
  std::vector<std::string> inputs;
  std::string solver = "oracle";
  std::string task = "detection";
  std::string format = "csv";
  std::string style = "zero-shot";
  std::string split = "test";
  std::string out;
  int min_len = 0;
  int max_len = 0;
  bool quadrant_stratified = false;
  int limit = 0;
  std::uint64_t seed = kDefaultBaseSeed;
  int workers = 0;
  SolverConfig solver_cfg;
};

std::vector<const AnnotatedSample*> select_samples(
    const std::vector<AnnotatedSample>& all, const RunOptions& opt) {
  std::vector<const AnnotatedSample*> out;
  for (const auto& s : all) {
    if (opt.split != "all" && std::string(to_string(s.split)) != opt.split) continue;
    const int n = static_cast<int>(s.series.values.size());
    if (opt.min_len > 0 && n < opt.min_len) continue;
    if (opt.max_len > 0 && n > opt.max_len) continue;
    out.push_back(&s);
    if (opt.limit > 0 && static_cast<int>(out.size()) >= opt.limit) break;
  }
  return out;
}

Date query_date_for(const AnnotatedSample& s, std::size_t index,
                    bool stratified, Rng& rng) {
  const auto& v = s.series.values;
  std::vector<std::size_t> candidates;
  if (stratified) {
    const auto want = static_cast<Quadrant>(index % 4);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_missing(v[i]) && quadrant_of(i, v.size()) == want) {
        candidates.push_back(i);
      }
    }
  }
  if (candidates.empty()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!is_missing(v[i])) candidates.push_back(i);
    }
  }
  const auto pick = candidates[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(candidates.size()) - 1))];
  return add_days(s.series.start_date, static_cast<long>(pick));
}

int cmd_run(const RunOptions& opt) {
  const auto fmt = wire_format_from_string(opt.format);
  if (!fmt) throw std::invalid_argument("unknown format '" + opt.format + "'");
  const auto style = prompt_style_from_string(opt.style);
  if (!style) throw std::invalid_argument("unknown style '" + opt.style + "'");

  std::vector<std::vector<AnnotatedSample>> datasets;
  for (const auto& path : opt.inputs) {
    datasets.push_back(read_dataset(path).samples);
  }

  auto solver = make_solver(opt.solver_cfg);
  const int workers =
      opt.workers > 0 ? opt.workers
                      : (opt.solver_cfg.kind == SolverKind::http
                             ? opt.solver_cfg.concurrency_limit
                             : 1);

  Rng rng(opt.seed);
  std::vector<TranscriptRow> rows;

  if (opt.task == "flow") {
    std::vector<AdaptiveFlow> flows;
    for (const auto& ds : datasets) {
      for (const auto* s : select_samples(ds, opt)) {
        flows.push_back(build_adaptive_flow(*s, *style, *fmt));
      }
    }
    rows = run_flows(*solver, flows, workers);
  } else if (opt.task == "match-intra" || opt.task == "match-cross") {
    const auto mode = opt.task == "match-intra" ? TextMatchMode::intra
                                                : TextMatchMode::cross;
    std::vector<TaskInstance> tasks;
    if (mode == TextMatchMode::intra) {
      for (const auto& ds : datasets) {
        const auto chosen = select_samples(ds, opt);
        if (chosen.size() < 4) {
          throw std::invalid_argument("intra matching needs >= 4 samples per dataset");
        }
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          std::array<const AnnotatedSample*, 3> pool{};
          std::size_t filled = 0;
          while (filled < 3) {
            const auto j = static_cast<std::size_t>(rng.uniform_int(
                0, static_cast<std::int64_t>(chosen.size()) - 1));
            if (j == i) continue;
            bool dup = false;
            for (std::size_t k = 0; k < filled; ++k) dup |= pool[k] == chosen[j];
            if (dup) continue;
            pool[filled++] = chosen[j];
          }
          tasks.push_back(build_text_matching_task(*chosen[i], pool, mode, *fmt,
                                                   *style, rng));
        }
      }
    } else {
      if (datasets.size() < 4) {
        throw std::invalid_argument("cross matching needs >= 4 dataset files");
      }
      std::vector<std::vector<const AnnotatedSample*>> chosen;
      for (const auto& ds : datasets) chosen.push_back(select_samples(ds, opt));
      for (std::size_t d = 0; d < chosen.size(); ++d) {
        for (const auto* target : chosen[d]) {
          std::array<const AnnotatedSample*, 3> pool{};
          std::vector<std::size_t> others;
          for (std::size_t o = 0; o < chosen.size(); ++o) {
            if (o != d && !chosen[o].empty()) others.push_back(o);
          }
          if (others.size() < 3) {
            throw std::invalid_argument("cross matching needs 3 non-empty other datasets");
          }
          rng.shuffle(others);
          for (std::size_t k = 0; k < 3; ++k) {
            const auto& src = chosen[others[k]];
            pool[k] = src[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(src.size()) - 1))];
          }
          tasks.push_back(build_text_matching_task(*target, pool, mode, *fmt,
                                                   *style, rng));
        }
      }
    }
    rows = run_tasks(*solver, tasks, workers);
  } else {
    std::vector<TaskInstance> tasks;
    for (const auto& ds : datasets) {
      const auto chosen = select_samples(ds, opt);
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto& s = *chosen[i];
        if (opt.task == "detection") {
          tasks.push_back(build_detection_task(s, *style, *fmt));
        } else if (opt.task == "classification") {
          if (!prompts::classifiable(s.label.feature, s.label.sub_feature)) continue;
          tasks.push_back(build_classification_task(s, *style, *fmt));
        } else if (opt.task == "retrieval") {
          tasks.push_back(build_retrieval_bundle(
              s, *style, *fmt,
              query_date_for(s, i, opt.quadrant_stratified, rng)));
        } else if (opt.task == "search") {
          const auto quadrant = static_cast<Quadrant>(
              opt.quadrant_stratified ? (i / 2) % 4
                                      : static_cast<std::size_t>(rng.uniform_int(0, 3)));
          const bool present = i % 2 == 0;
          const auto target = target_for_search(s, quadrant, rng, present);
          auto t = build_search_task(s, target.value, *style, *fmt);
          t.target_quadrant = quadrant;
          tasks.push_back(std::move(t));
        } else {
          throw std::invalid_argument("unknown task '" + opt.task + "'");
        }
      }
    }
    rows = run_tasks(*solver, tasks, workers);
  }

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + opt.out);
    out = &file;
  }
  for (const auto& r : rows) *out << transcript_to_json(r).dump() << "\n";

  std::size_t errors = 0, correct = 0;
  for (const auto& r : rows) {
    errors += r.solver_error.has_value();
    correct += r.correct;
  }
  std::cerr << "ran " << rows.size() << " prompts with " << solver->name()
            << ": " << correct << " correct, " << errors << " solver errors\n";
  return 0;
}

std::vector<TranscriptRow> read_transcript(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<TranscriptRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw std::runtime_error("line " + std::to_string(line_no) +
                               ": malformed JSON");
    }
    rows.push_back(transcript_from_json(j));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic time-series benchmark toolkit"};
  app.require_subcommand(1);

  // --- generate ---
  auto* gen = app.add_subcommand("generate", "synthesize a dataset");
  std::string gen_kind, gen_out = ".", gen_manifest;
  std::uint64_t gen_seed = kDefaultBaseSeed;
  SplitSizes sizes;
  gen->add_option("--kind", gen_kind, "dataset kind (trend, seasonality, ... , brownian)");
  gen->add_option("--seed", gen_seed, "base seed");
  gen->add_option("--out", gen_out, "output directory")->required();
  gen->add_option("--train", sizes.train, "train split size");
  gen->add_option("--val", sizes.validation, "validation split size");
  gen->add_option("--test", sizes.test, "test split size");
  gen->add_option("--manifest", gen_manifest,
                  "regenerate from an existing manifest instead of flags");

  // --- render ---
  auto* ren = app.add_subcommand("render", "render one sample as text");
  std::string ren_in, ren_id, ren_format = "csv";
  int ren_index = -1;
  ren->add_option("--in", ren_in, "dataset jsonl")->required();
  ren->add_option("--id", ren_id, "sample id");
  ren->add_option("--index", ren_index, "sample index (alternative to --id)");
  ren->add_option("--format", ren_format, "wire format");

  // --- run ---
  auto* run = app.add_subcommand("run", "run a solver over generated tasks");
  RunOptions opt;
  std::string api_key_flag;
  run->add_option("--in", opt.inputs, "dataset jsonl (repeatable)")->required();
  run->add_option("--solver", opt.solver, "oracle | statistical | http");
  run->add_option("--task", opt.task,
                  "detection | classification | flow | retrieval | search | "
                  "match-intra | match-cross");
  run->add_option("--format", opt.format, "wire format");
  run->add_option("--style", opt.style, "zero-shot | cot");
  run->add_option("--split", opt.split, "train | validation | test | all");
  run->add_option("--out", opt.out, "transcript jsonl (default stdout)");
  run->add_option("--min-len", opt.min_len, "keep series at least this long");
  run->add_option("--max-len", opt.max_len, "keep series at most this long");
  run->add_flag("--quadrant-stratified", opt.quadrant_stratified,
                "rotate query positions across quadrants");
  run->add_option("--limit", opt.limit, "cap samples per dataset");
  run->add_option("--seed", opt.seed, "seed for query/shuffle draws");
  run->add_option("--workers", opt.workers, "worker threads (default: concurrency)");
  run->add_option("--endpoint", opt.solver_cfg.endpoint,
                  "chat endpoint (or TSBENCH_API_URL)");
  run->add_option("--model", opt.solver_cfg.model_name,
                  "model name (or TSBENCH_MODEL)");
  run->add_option("--api-key", api_key_flag, "bearer token (or TSBENCH_API_KEY)");
  run->add_option("--timeout", opt.solver_cfg.timeout_s, "request timeout seconds");
  run->add_option("--retries", opt.solver_cfg.max_retries, "max retries");
  run->add_option("--concurrency", opt.solver_cfg.concurrency_limit,
                  "max in-flight requests");
  run->add_option("--backoff-ms", opt.solver_cfg.backoff_base_ms,
                  "base backoff in milliseconds");

  // --- score ---
  auto* score = app.add_subcommand("score", "aggregate a transcript");
  std::string score_in, score_report, score_table, score_csv;
  score->add_option("--in", score_in, "transcript jsonl")->required();
  score->add_option("--report", score_report, "write report JSON here");
  score->add_option("--table", score_table, "write the text table here");
  score->add_option("--confusion-csv", score_csv,
                    "write confusion matrices as <prefix>.<kind>.csv");

  // --- bias-report ---
  auto* bias = app.add_subcommand("bias-report", "per-quadrant accuracy");
  std::string bias_in, bias_metric, bias_out;
  bias->add_option("--in", bias_in, "transcript jsonl")->required();
  bias->add_option("--metric", bias_metric,
                   "restrict to one retrieval field (e.g. value_on_date)");
  bias->add_option("--out", bias_out, "write report JSON here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      std::filesystem::create_directories(gen_out);
      DatasetKind kind;
      std::uint64_t seed = gen_seed;
      SplitSizes use = sizes;
      if (!gen_manifest.empty()) {
        const auto m = read_manifest(gen_manifest);
        kind = m.dataset_kind;
        seed = m.base_seed;
        use = {m.train, m.validation, m.test};
      } else {
        const auto k = dataset_kind_from_string(gen_kind);
        if (!k) throw std::invalid_argument("unknown kind '" + gen_kind + "'");
        kind = *k;
      }
      GenConfig cfg;
      cfg.base_seed = seed;
      const auto samples = gen_dataset(kind, use, cfg);
      const auto path = std::filesystem::path(gen_out) /
                        (std::string(to_string(kind)) + ".jsonl");
      const auto manifest = write_dataset(samples, path, seed);
      std::cerr << "wrote " << samples.size() << " samples to " << path.string()
                << " (" << manifest.checksum << ")\n";
      return 0;
    }

    if (ren->parsed()) {
      const auto fmt = wire_format_from_string(ren_format);
      if (!fmt) throw std::invalid_argument("unknown format '" + ren_format + "'");
      const auto data = read_dataset(ren_in);
      const AnnotatedSample* found = nullptr;
      if (ren_index >= 0 &&
          ren_index < static_cast<int>(data.samples.size())) {
        found = &data.samples[static_cast<std::size_t>(ren_index)];
      }
      for (const auto& s : data.samples) {
        if (!ren_id.empty() && s.id == ren_id) found = &s;
      }
      if (!found) throw std::invalid_argument("sample not found");
      std::cout << render(found->series, *fmt);
      return 0;
    }

    if (run->parsed()) {
      const auto kind = solver_kind_from_string(opt.solver);
      if (!kind) throw std::invalid_argument("unknown solver '" + opt.solver + "'");
      opt.solver_cfg.kind = *kind;
      if (opt.solver_cfg.endpoint.empty()) {
        opt.solver_cfg.endpoint = env_or("TSBENCH_API_URL", "");
      }
      if (opt.solver_cfg.model_name.empty()) {
        opt.solver_cfg.model_name = env_or("TSBENCH_MODEL", "");
      }
      opt.solver_cfg.api_key =
          !api_key_flag.empty() ? api_key_flag : env_or("TSBENCH_API_KEY", "");
      return cmd_run(opt);
    }

    if (score->parsed()) {
      const auto rows = read_transcript(score_in);
      if (rows.empty()) throw std::runtime_error("empty transcript");
      const auto report = score_transcripts(rows);
      const auto j = report_to_json(report);
      if (!score_report.empty()) {
        std::ofstream f(score_report, std::ios::binary);
        f << j.dump(2) << "\n";
      }
      const std::string table = report_to_table(report);
      if (!score_table.empty()) {
        std::ofstream f(score_table, std::ios::binary);
        f << table;
      }
      std::cout << table;
      if (!score_csv.empty()) {
        for (const auto& [kind, cm] : report.confusion) {
          std::ofstream f(score_csv + "." + kind + ".csv", std::ios::binary);
          f << confusion_to_csv(cm);
        }
      }
      return 0;
    }

    if (bias->parsed()) {
      const auto rows = read_transcript(bias_in);
      std::vector<QuadrantOutcome> outcomes;
      for (const auto& r : rows) {
        if (!r.field_outcomes.empty()) {
          for (const auto& f : r.field_outcomes) {
            if (!f.quadrant) continue;
            if (!bias_metric.empty() && f.name != bias_metric) continue;
            outcomes.push_back({*f.quadrant, f.correct});
          }
        } else if (r.quadrant && bias_metric.empty()) {
          outcomes.push_back({*r.quadrant, r.correct});
        }
      }
      if (outcomes.empty()) {
        throw std::runtime_error("no quadrant-tagged outcomes in transcript");
      }
      const auto pb = position_bias_report(outcomes);
      nlohmann::ordered_json j;
      for (const auto& [q, a] : pb.accuracy) {
        j["per_quadrant_accuracy"][to_string(q)] = a;
        j["per_quadrant_counts"][to_string(q)] = pb.counts.at(q);
      }
      nlohmann::ordered_json missing = nlohmann::ordered_json::array();
      for (const auto q : pb.missing) missing.push_back(to_string(q));
      j["quadrants_missing"] = missing;
      j["gap"] = pb.gap;
      j["bias_flag"] = pb.bias_flag;
      if (!bias_out.empty()) {
        std::ofstream f(bias_out, std::ios::binary);
        f << j.dump(2) << "\n";
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

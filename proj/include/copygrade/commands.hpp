/* Copyright 2026 The copygrade Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// The score / generate / compare / lexicons commands. Each returns a process
// exit status:
//   0  success
//   1  some records (or files) had bad data; everything else was processed
//   2  usage or configuration error, nothing was done

#ifndef COPYGRADE_COMMANDS_HPP_
#define COPYGRADE_COMMANDS_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "copygrade/error.hpp"
#include "copygrade/genharness.hpp"
#include "copygrade/ingest.hpp"
#include "copygrade/lexicon.hpp"
#include "copygrade/metrics.hpp"
#include "copygrade/report.hpp"

namespace copygrade {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::vector<std::filesystem::path> inputs;
  std::optional<FileFormat> format;
  // field -> column overrides, applied on top of the detected layout.
  std::vector<std::pair<std::string, std::string>> mapping;
  // Label for records whose file has no source_label column.
  std::string default_label = kHumanSourceLabel;
  std::optional<std::filesystem::path> lexicon_dir;
  SentimentMode sentiment = SentimentMode::lexicon;
  std::string sentiment_url;
  std::optional<std::filesystem::path> backend;
  std::vector<Condition> conditions = {Condition::with_sample,
                                       Condition::without_sample};
  std::filesystem::path out_dir = ".";
  // 0 = one worker per hardware thread.
  unsigned concurrency = 0;
  bool resume = false;
  Aggregation aggregation = Aggregation::mean;
  std::vector<std::string> reference_labels;
};

inline constexpr const char* kScoresFile = "scores.jsonl";
inline constexpr const char* kGenerationsFile = "generations.jsonl";

namespace detail {

inline void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw UsageError("cannot create output directory " + dir.string());
  }
  const auto probe = dir / ".copygrade-write-test";
  {
    std::ofstream f(probe);
    if (!f) throw UsageError("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

inline LoadedLexicons load_lexicons(const RunConfig& cfg) {
  try {
    return cfg.lexicon_dir ? load_lexicon_dir(*cfg.lexicon_dir)
                           : loaded_default_lexicons();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw Error("cannot write " + path.string());
}

struct InputRecord {
  std::filesystem::path file;
  std::size_t index = 0;  // within its file
  ProductRecord record;
};

inline std::vector<InputRecord> load_inputs(const RunConfig& cfg) {
  std::vector<InputRecord> out;
  for (const auto& path : cfg.inputs) {
    if (!std::filesystem::exists(path)) {
      throw UsageError("input file " + path.string() + " does not exist");
    }
    FileFormat fmt;
    try {
      fmt = cfg.format ? *cfg.format : format_from_path(path);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    ColumnMapping mapping = detect_mapping(peek_columns(path, fmt));
    try {
      for (const auto& [field, column] : cfg.mapping) mapping.set(field, column);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    mapping.default_source_label = cfg.default_label;
    const auto records = load_products(path, fmt, mapping);
    for (std::size_t i = 0; i < records.size(); ++i) {
      out.push_back({path, i, records[i]});
    }
  }
  return out;
}

inline nlohmann::json scores_to_json(const ScoreVector& v) {
  return {{"sentiment", v.sentiment},
          {"readability", v.readability},
          {"persuasiveness", v.persuasiveness},
          {"seo", v.seo},
          {"clarity", v.clarity},
          {"emotional_appeal", v.emotional_appeal},
          {"cta", v.cta}};
}

inline ScoreVector scores_from_json(const nlohmann::json& j) {
  ScoreVector v;
  v.sentiment = j.at("sentiment").get<double>();
  v.readability = j.at("readability").get<double>();
  v.persuasiveness = j.at("persuasiveness").get<double>();
  v.seo = j.at("seo").get<double>();
  v.clarity = j.at("clarity").get<double>();
  v.emotional_appeal = j.at("emotional_appeal").get<double>();
  v.cta = j.at("cta").get<std::int64_t>();
  return v;
}

inline unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

inline void write_reports(const CorpusReport& report,
                          const std::filesystem::path& dir) {
  write_text(dir / "report.md", render(report, RenderFormat::markdown));
  write_text(dir / "report.csv", render(report, RenderFormat::csv));
  write_text(dir / "report.json", render(report, RenderFormat::json));
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataFailure;
  }
}

}  // namespace detail

// Scores every record of every input file, writes scores.jsonl and the
// aggregated report files into the output directory.
inline int cmd_score(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.inputs.empty()) throw UsageError("score: --input is required");
    std::unique_ptr<SentimentClient> client;
    if (cfg.sentiment == SentimentMode::remote) {
      if (cfg.sentiment_url.empty()) {
        throw UsageError("--sentiment remote requires --sentiment-url");
      }
      try {
        SentimentClientConfig sc;
        sc.url = cfg.sentiment_url;
        client = std::make_unique<SentimentClient>(sc);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    detail::ensure_out_dir(cfg.out_dir);
    const auto lexicons = detail::load_lexicons(cfg);
    const auto inputs = detail::load_inputs(cfg);

    struct Outcome {
      std::optional<ScoreVector> scores;
      std::string error;
    };
    std::vector<Outcome> outcomes(inputs.size());
    const PhraseMatcher matcher(lexicons.set.cta_phrases);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= inputs.size()) return;
        const auto& rec = inputs[k].record;
        std::string problems;
        for (const auto& v : validate_record(rec, lexicons.set).violations) {
          // Handled by the SEO metric (score 0 plus a warning).
          if (v == "no usable category keywords") continue;
          problems += (problems.empty() ? "" : "; ") + v;
        }
        if (!problems.empty()) {
          outcomes[k].error = problems;
          continue;
        }
        try {
          outcomes[k].scores =
              score_all(rec, lexicons.set, cfg.sentiment, client.get(), &matcher);
        } catch (const std::exception& e) {
          outcomes[k].error = e.what();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      const unsigned n = detail::worker_count(cfg.concurrency, inputs.size());
      for (unsigned w = 0; w < n; ++w) pool.emplace_back(work);
    }

    std::ostringstream lines;
    std::vector<LabeledScore> scored;
    std::size_t failures = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const auto& in = inputs[k];
      nlohmann::json j = {{"input", in.file.generic_string()},
                          {"index", in.index},
                          {"product_name", in.record.product_name},
                          {"source_label", in.record.source_label}};
      if (outcomes[k].scores) {
        const auto& v = *outcomes[k].scores;
        j["scores"] = detail::scores_to_json(v);
        j["warnings"] = v.warnings;
        for (const auto& w : v.warnings) {
          err << "warning: " << in.file.generic_string() << " record "
              << in.index + 1 << " (\"" << in.record.product_name
              << "\"): " << w << '\n';
        }
        scored.emplace_back(in.record.source_label, v);
      } else {
        j["error"] = outcomes[k].error;
        err << "error: " << in.file.generic_string() << " record " << in.index + 1
            << " (\"" << in.record.product_name << "\"): " << outcomes[k].error
            << '\n';
        ++failures;
      }
      lines << j.dump() << '\n';
    }
    detail::write_text(cfg.out_dir / kScoresFile, lines.str());

    if (!scored.empty()) {
      const auto report = highlight_best(aggregate(scored, cfg.aggregation),
                                         cfg.reference_labels);
      detail::write_reports(report, cfg.out_dir);
      out << render(report, RenderFormat::markdown);
    }
    out << "scored " << scored.size() << " of " << inputs.size()
        << " records; wrote " << (cfg.out_dir / kScoresFile).generic_string()
        << '\n';
    return failures == 0 && !scored.empty() ? kExitOk : kExitDataFailure;
  });
}

// Generates descriptions for every input product under each requested
// condition. Output: <out>/generations.jsonl, loadable by `score`.
inline int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (!cfg.backend) throw UsageError("generate: --backend is required");
    if (cfg.inputs.empty()) throw UsageError("generate: --input is required");
    if (cfg.conditions.empty()) throw UsageError("generate: no conditions");
    BackendConfig backend;
    try {
      backend = load_backend_config(*cfg.backend);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (cfg.concurrency > 0) backend.max_in_flight = static_cast<int>(cfg.concurrency);
    detail::ensure_out_dir(cfg.out_dir);
    std::vector<ProductRecord> records;
    for (auto& in : detail::load_inputs(cfg)) records.push_back(std::move(in.record));
    if (records.empty()) throw Error("generate: input has no records");

    BatchOptions opts;
    opts.output = cfg.out_dir / kGenerationsFile;
    opts.resume = cfg.resume;
    if (const char* key = std::getenv(kApiKeyEnv)) opts.api_key = key;
    const auto results = run_batch(records, backend, cfg.conditions, opts);

    std::size_t failed = 0;
    for (const auto& r : results) {
      if (r.ok()) continue;
      ++failed;
      err << "error: record " << r.record_index + 1 << " (\""
          << r.product.product_name << "\", " << condition_name(r.condition)
          << "): " << r.error.value_or("unknown error") << '\n';
    }
    out << "generated " << results.size() - failed << " of " << results.size()
        << " descriptions";
    if (cfg.resume) {
      out << " (" << records.size() * cfg.conditions.size() - results.size()
          << " already present)";
    }
    out << "; wrote " << opts.output.generic_string() << '\n';
    return failed == 0 ? kExitOk : kExitDataFailure;
  });
}

// Merges one or more scores.jsonl files into a single comparison report.
inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.inputs.empty()) throw UsageError("compare: at least one --input scores file is required");
    detail::ensure_out_dir(cfg.out_dir);
    std::vector<LabeledScore> scored;
    // label -> (file -> count)
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& path : cfg.inputs) {
      std::ifstream in(path);
      if (!in) throw UsageError("cannot open scores file " + path.string());
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        try {
          const auto j = nlohmann::json::parse(line);
          if (!j.contains("scores")) continue;  // failed record
          const auto label = j.at("source_label").get<std::string>();
          scored.emplace_back(label, detail::scores_from_json(j.at("scores")));
          ++counts[label][path.generic_string()];
        } catch (const nlohmann::json::exception& e) {
          throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " +
                           e.what());
        }
      }
    }
    if (scored.empty()) throw Error("compare: no scored records in the inputs");
    auto report = aggregate(scored, cfg.aggregation);
    for (const auto& [label, per_file] : counts) {
      if (per_file.size() < 2) continue;
      std::set<std::size_t> distinct;
      for (const auto& [file, n] : per_file) distinct.insert(n);
      if (distinct.size() > 1) {
        std::string msg = "label \"" + label + "\" appears in several files with different record counts (";
        bool first = true;
        for (const auto& [file, n] : per_file) {
          msg += (first ? "" : ", ") + file + ": " + std::to_string(n);
          first = false;
        }
        msg += ")";
        report.warnings.push_back(msg);
        err << "warning: " << msg << '\n';
      }
    }
    report = highlight_best(report, cfg.reference_labels);
    detail::write_reports(report, cfg.out_dir);
    out << render(report, RenderFormat::markdown);
    return kExitOk;
  });
}

// `lexicons show`: sizes and origin of the effective lists.
// `lexicons validate`: checks every lexicon file in --lexicons DIR.
inline int cmd_lexicons(const RunConfig& cfg, std::string_view action,
                        std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (action == "show") {
      const auto lex = detail::load_lexicons(cfg);
      for (auto kind : kLexiconKinds) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-16s %6zu  ",
                      std::string(lexicon_file_name(kind)).c_str(),
                      lex.sizes.at(kind));
        out << buf << lex.sources.at(kind) << '\n';
      }
      return kExitOk;
    }
    if (action != "validate") {
      throw UsageError("lexicons: unknown action \"" + std::string(action) +
                       "\" (expected show or validate)");
    }
    if (!cfg.lexicon_dir) throw UsageError("lexicons validate: --lexicons DIR is required");
    const auto& dir = *cfg.lexicon_dir;
    if (!std::filesystem::is_directory(dir)) {
      throw UsageError("lexicon directory " + dir.string() + " does not exist");
    }
    bool any = false;
    bool bad = false;
    for (auto kind : kLexiconKinds) {
      const auto path = dir / lexicon_file_name(kind);
      if (!std::filesystem::exists(path)) continue;
      any = true;
      try {
        const auto terms = load_lexicon_file(path, kind);
        out << path.generic_string() << ": " << terms.size() << " terms\n";
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        bad = true;
      }
    }
    if (!any) throw UsageError("lexicon directory " + dir.string() + " contains no lexicon files");
    if (!bad) {
      try {
        load_lexicon_dir(dir);
      } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        bad = true;
      }
    }
    return bad ? kExitDataFailure : kExitOk;
  });
}

}  // namespace copygrade

#endif  // COPYGRADE_COMMANDS_HPP_

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

// copygrade: score, generate and compare product descriptions.
//
//   copygrade score    --input products.csv --out run/
//   copygrade generate --input products.csv --backend backend.json --out gen/
//   copygrade compare  --input run/scores.jsonl --input gen/scores.jsonl
//   copygrade lexicons show|validate [--lexicons DIR]

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "copygrade/copygrade.hpp"

namespace {

using copygrade::RunConfig;

struct Flags {
  std::vector<std::string> inputs;
  std::string format;
  std::vector<std::string> maps;
  std::string lexicons;
  std::string sentiment = "lexicon";
  std::string sentiment_url;
  std::string backend;
  std::string conditions = "with,without";
  std::string out = ".";
  unsigned concurrency = 0;
  bool resume = false;
  std::string aggregate = "mean";
  std::vector<std::string> references;
  std::string label = copygrade::kHumanSourceLabel;
  std::string lexicon_action;
};

RunConfig to_config(const Flags& f) {
  RunConfig cfg;
  for (const auto& in : f.inputs) cfg.inputs.emplace_back(in);
  if (!f.format.empty()) cfg.format = copygrade::parse_format(f.format);
  for (const auto& m : f.maps) {
    const auto eq = m.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == m.size()) {
      throw copygrade::UsageError("--map expects field=column, got \"" + m + "\"");
    }
    cfg.mapping.emplace_back(m.substr(0, eq), m.substr(eq + 1));
  }
  if (!f.lexicons.empty()) cfg.lexicon_dir = f.lexicons;
  cfg.sentiment = f.sentiment == "remote" ? copygrade::SentimentMode::remote
                                          : copygrade::SentimentMode::lexicon;
  cfg.sentiment_url = f.sentiment_url;
  if (!f.backend.empty()) cfg.backend = f.backend;
  cfg.conditions.clear();
  std::stringstream conds(f.conditions);
  for (std::string c; std::getline(conds, c, ',');) {
    if (!c.empty()) cfg.conditions.push_back(copygrade::parse_condition(c));
  }
  cfg.out_dir = f.out;
  cfg.concurrency = f.concurrency;
  cfg.resume = f.resume;
  cfg.aggregation = copygrade::parse_aggregation(f.aggregate);
  cfg.reference_labels = f.references;
  cfg.default_label = f.label;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Score, generate and compare e-commerce product descriptions."};
  app.require_subcommand(1);
  Flags f;

  auto add_inputs = [&](CLI::App* cmd, const std::string& what) {
    cmd->add_option("--input,-i", f.inputs, what)->required();
    cmd->add_option("--format", f.format, "Input format (default: from extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--map", f.maps,
                    "Column override field=column (product_name, "
                    "product_category, about_product, description, source_label)");
    cmd->add_option("--label", f.label,
                    "Source label for files without a source_label column");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out,-o", f.out, "Output directory");
  };
  auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--aggregate", f.aggregate, "mean or median")
        ->check(CLI::IsMember({"mean", "median"}));
    cmd->add_option("--reference", f.references,
                    "Label shown in the table but never marked best");
  };

  auto* score = app.add_subcommand("score", "Score descriptions on all seven metrics");
  add_inputs(score, "Product file(s), CSV or JSONL");
  add_out(score);
  add_report(score);
  score->add_option("--lexicons", f.lexicons, "Directory of lexicon overrides");
  score->add_option("--sentiment", f.sentiment, "lexicon or remote")
      ->check(CLI::IsMember({"lexicon", "remote"}));
  score->add_option("--sentiment-url", f.sentiment_url,
                    "Classifier endpoint for --sentiment remote");
  score->add_option("--concurrency", f.concurrency, "Scoring workers (default: all cores)");

  auto* generate = app.add_subcommand("generate", "Generate descriptions with an LLM backend");
  add_inputs(generate, "Product file(s), CSV or JSONL");
  add_out(generate);
  generate->add_option("--backend", f.backend, "Backend config JSON")->required();
  generate->add_option("--conditions", f.conditions,
                       "Comma-separated prompting conditions: with,without");
  generate->add_option("--concurrency", f.concurrency,
                       "Max in-flight requests (overrides the backend config)");
  generate->add_flag("--resume", f.resume,
                     "Skip (record, condition) pairs already in the output");

  auto* compare = app.add_subcommand("compare", "Merge scores files into one report");
  compare->add_option("--input,-i", f.inputs, "scores.jsonl file(s)")->required();
  add_out(compare);
  add_report(compare);

  auto* lexicons = app.add_subcommand("lexicons", "Inspect or validate lexicon lists");
  lexicons->add_option("action", f.lexicon_action, "show or validate")
      ->required()
      ->check(CLI::IsMember({"show", "validate"}));
  lexicons->add_option("--lexicons", f.lexicons, "Lexicon directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : copygrade::kExitUsage;
  }

  RunConfig cfg;
  try {
    cfg = to_config(f);
  } catch (const copygrade::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return copygrade::kExitUsage;
  }

  if (score->parsed()) return copygrade::cmd_score(cfg, std::cout, std::cerr);
  if (generate->parsed()) return copygrade::cmd_generate(cfg, std::cout, std::cerr);
  if (compare->parsed()) return copygrade::cmd_compare(cfg, std::cout, std::cerr);
  return copygrade::cmd_lexicons(cfg, f.lexicon_action, std::cout, std::cerr);
}

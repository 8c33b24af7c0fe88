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

// Property and golden checks shared by the GoogleTest suites and the
// acceptance runner. Each check runs its cases and returns a summary rather
// than asserting, so both harnesses can report on it.

#ifndef COPYGRADE_TESTS_SUPPORT_CHECKS_HPP_
#define COPYGRADE_TESTS_SUPPORT_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "copygrade/copygrade.hpp"
#include "support/gen.hpp"

namespace copygrade::testing {

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline constexpr std::uint64_t kSeed = 0x5eed'c0de'2026ULL;
inline constexpr std::size_t kCases = 1000;

inline ProductRecord make_record(std::string description, std::string category,
                                 std::string label = kHumanSourceLabel) {
  ProductRecord r;
  r.product_name = "Fixture product";
  r.product_category = std::move(category);
  r.about_product = "Fixture";
  r.description = std::move(description);
  r.source_label = std::move(label);
  return r;
}

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string read_file_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Ratio metrics lie in [0,1], cta is non-negative, 0 < clarity <= 1.
inline CheckResult check_ratio_ranges(std::size_t cases = kCases) {
  CheckResult r{"ratio-range bounds"};
  Rng rng(kSeed ^ 1);
  CopyGenerator gen;
  const auto& lex = default_lexicons();
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    const auto rec = make_record(gen.document(rng), gen.category(rng));
    const auto v = score_all(rec, lex, SentimentMode::lexicon);
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(v.sentiment) || !unit(v.persuasiveness) || !unit(v.seo) ||
        !unit(v.emotional_appeal) || v.cta < 0 || !(v.clarity > 0.0) ||
        v.clarity > 1.0 || !std::isfinite(v.readability)) {
      r.fail("case " + std::to_string(k) + ": " + quote(rec.description));
    }
  }
  return r;
}

// Doubling a fully terminated document leaves every ratio metric unchanged
// and doubles the CTA count.
inline CheckResult check_duplication(std::size_t cases = kCases) {
  CheckResult r{"duplication invariance"};
  Rng rng(kSeed ^ 2);
  CopyGenerator gen;
  const auto& lex = default_lexicons();
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    const std::string text = gen.document(rng);
    const std::string category = gen.category(rng);
    const auto a = score_all(make_record(text, category), lex, SentimentMode::lexicon);
    const auto b = score_all(make_record(text + " " + text, category), lex,
                             SentimentMode::lexicon);
    if (a.readability != b.readability || a.persuasiveness != b.persuasiveness ||
        a.seo != b.seo || a.clarity != b.clarity ||
        a.emotional_appeal != b.emotional_appeal || a.sentiment != b.sentiment ||
        b.cta != 2 * a.cta) {
      r.fail("case " + std::to_string(k) + ": " + quote(text));
    }
  }
  return r;
}

// One more persuasive word raises the ratio iff it was below 1.
inline CheckResult check_persuasiveness_monotonic(std::size_t cases = kCases) {
  CheckResult r{"persuasiveness monotonicity"};
  Rng rng(kSeed ^ 3);
  CopyGenerator gen;
  const auto& lex = default_lexicons();
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    // Mostly persuasive text now and then, so the ratio sometimes hits 1.
    std::string text;
    if (rng.chance(0.1)) {
      const std::size_t n = rng.between(1, 6);
      for (std::size_t j = 0; j < n; ++j) text += (j ? " " : "") + rng.pick(gen.persuasive());
    } else {
      text = gen.document(rng);
    }
    const std::string extra = rng.pick(gen.persuasive());
    const double before = persuasiveness(tokenize(text), lex);
    const double after = persuasiveness(tokenize(text + " " + extra), lex);
    if ((after > before) != (before < 1.0)) {
      r.fail("case " + std::to_string(k) + ": " + quote(text) + " + " + quote(extra));
    }
  }
  return r;
}

// Appending a positive-valence word never lowers lexicon sentiment. The word
// goes in as its own sentence so no earlier negator can reach it.
inline CheckResult check_sentiment_monotonic(std::size_t cases = kCases) {
  CheckResult r{"sentiment monotonicity"};
  Rng rng(kSeed ^ 4);
  CopyGenerator gen;
  const auto& lex = default_lexicons();
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    const std::string text = gen.document(rng);
    const std::string extra = rng.pick(gen.positive());
    const double before = sentiment_lexicon(tokenize(text), lex);
    const double after = sentiment_lexicon(tokenize(text + " " + extra + "."), lex);
    if (after < before) {
      r.fail("case " + std::to_string(k) + ": " + quote(text) + " + " + quote(extra));
    }
  }
  return r;
}

// Reference matcher: try every phrase at every index, then accept candidates
// longest first, leftmost first, skipping any that overlap an accepted one.
inline std::vector<PhraseMatch> brute_force_matches(
    const std::vector<std::vector<std::string>>& phrases,
    const std::vector<std::string>& stream) {
  std::vector<PhraseMatch> cands;
  for (const auto& p : phrases) {
    if (p.empty() || p.size() > stream.size()) continue;
    for (std::size_t i = 0; i + p.size() <= stream.size(); ++i) {
      if (std::equal(p.begin(), p.end(), stream.begin() + static_cast<std::ptrdiff_t>(i))) {
        cands.push_back({i, p.size()});
      }
    }
  }
  std::sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
    return a.length != b.length ? a.length > b.length : a.begin < b.begin;
  });
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::vector<bool> taken(stream.size(), false);
  std::vector<PhraseMatch> out;
  for (const auto& c : cands) {
    bool free = true;
    for (std::size_t i = c.begin; i < c.begin + c.length; ++i) free = free && !taken[i];
    if (!free) continue;
    for (std::size_t i = c.begin; i < c.begin + c.length; ++i) taken[i] = true;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.begin < b.begin; });
  return out;
}

// The greedy matcher against the brute-force scan on corpora of at most 50
// tokens and at most 8 phrases. Small vocabularies force dense overlaps.
inline CheckResult check_phrase_oracle(std::size_t cases = 4 * kCases) {
  CheckResult r{"phrase matcher vs brute-force oracle"};
  Rng rng(kSeed ^ 5);
  const std::vector<std::string> vocab = {"buy", "now", "shop", "today", "it", ".", "!"};
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    const std::size_t words = rng.between(2, vocab.size());
    std::vector<std::string> stream;
    const std::size_t n = rng.between(0, 50);
    for (std::size_t j = 0; j < n; ++j) stream.push_back(vocab[rng.below(words)]);

    std::set<std::string> phrase_text;
    const std::size_t np = rng.between(1, 8);
    for (std::size_t j = 0; j < np; ++j) {
      std::string p;
      const std::size_t len = rng.between(1, 5);
      for (std::size_t t = 0; t < len; ++t) {
        // Phrases are word-only; the punctuation in the stream breaks them.
        std::string w;
        do w = vocab[rng.below(words)]; while (w == "." || w == "!");
        p += (t ? " " : "") + w;
      }
      phrase_text.insert(p);
    }
    std::vector<std::vector<std::string>> phrases;
    for (const auto& p : phrase_text) phrases.push_back(detail::split_ws(p));

    // Go through real text so tokenization is part of the check.
    std::string text;
    for (std::size_t j = 0; j < stream.size(); ++j) text += (j ? " " : "") + stream[j];
    const auto doc = tokenize(text);
    const auto normalized = normalized_stream(doc);
    const auto got = PhraseMatcher(phrase_text).matches(normalized);
    const auto want = brute_force_matches(phrases, stream);
    if (normalized != stream || got != want) {
      std::string ps;
      for (const auto& p : phrase_text) ps += "[" + p + "]";
      r.fail("case " + std::to_string(k) + ": " + quote(text) + " phrases " + ps +
             " got " + std::to_string(got.size()) + " want " +
             std::to_string(want.size()));
    }
  }
  return r;
}

inline bool same_report(const CorpusReport& a, const CorpusReport& b) {
  if (a.sources.size() != b.sources.size() || a.best != b.best ||
      a.warnings != b.warnings) {
    return false;
  }
  for (std::size_t k = 0; k < a.sources.size(); ++k) {
    if (a.sources[k].label != b.sources[k].label ||
        a.sources[k].count != b.sources[k].count ||
        a.sources[k].values != b.sources[k].values) {
      return false;
    }
  }
  return true;
}

inline ScoreVector random_scores(Rng& rng) {
  ScoreVector v;
  v.sentiment = rng.real(0, 1);
  v.readability = rng.real(-5, 20);
  v.persuasiveness = rng.real(0, 0.3);
  v.seo = rng.real(0, 0.2);
  v.clarity = rng.real(0.1, 0.4);
  v.emotional_appeal = rng.real(0, 0.05);
  v.cta = static_cast<std::int64_t>(rng.below(4));
  return v;
}

// Shuffling the input changes nothing, bit for bit; k copies of one vector
// average to that vector.
inline CheckResult check_aggregation_permutation(std::size_t cases = kCases) {
  CheckResult r{"aggregation permutation invariance"};
  Rng rng(kSeed ^ 6);
  const std::vector<std::string> labels = {"GPT2", "GPT2 (Sample)", "LLAMA",
                                           "Human Generated", "mock"};
  for (std::size_t k = 0; k < cases; ++k, ++r.cases) {
    std::vector<LabeledScore> scores;
    const std::size_t n = rng.between(1, 40);
    const std::size_t nl = rng.between(1, labels.size());
    for (std::size_t j = 0; j < n; ++j) {
      scores.emplace_back(labels[rng.below(nl)], random_scores(rng));
    }
    auto shuffled = scores;
    std::shuffle(shuffled.begin(), shuffled.end(), rng.engine());
    const auto how = rng.chance(0.5) ? Aggregation::mean : Aggregation::median;
    const auto a = highlight_best(aggregate(scores, how));
    const auto b = highlight_best(aggregate(shuffled, how));

    const auto one = random_scores(rng);
    const std::vector<LabeledScore> same(rng.between(1, 30), {"x", one});
    const auto c = aggregate(same);
    bool identity = true;
    for (auto m : kMetrics) identity = identity && c.sources[0].value(m) == one.value(m);

    if (!same_report(a, b) || !identity) {
      r.fail("case " + std::to_string(k) + (identity ? ": permutation" : ": identity"));
    }
  }
  return r;
}

inline std::vector<CheckResult> property_suite() {
  return {check_ratio_ranges(),           check_duplication(),
          check_persuasiveness_monotonic(), check_sentiment_monotonic(),
          check_phrase_oracle(),          check_aggregation_permutation()};
}

// ---------------------------------------------------------------------------
// Golden fixtures: tests/data/golden_records.jsonl, values derived by hand
// and re-derived with tests/oracle/derive_golden.py.

struct GoldenExpectation {
  std::string product_name;
  double sentiment;
  double readability;
  double persuasiveness;
  double seo;
  double clarity;
  double emotional_appeal;
  std::int64_t cta;
};

inline const std::vector<GoldenExpectation>& golden_expectations() {
  static const std::vector<GoldenExpectation> kGolden = {
      // 15 words, 3 sentences, 23 syllables ("players" is one vowel group),
      // 75 letters. Persuasive: discover, ultimate, now. Emotion: cozy.
      // Keywords {board, games, toys}: board. Valence: ultimate, cozy.
      // CTA: "shop now".
      {"Snow Folk Board Game", 1.0, 334.0 / 75.0, 3.0 / 15.0, 1.0 / 15.0,
       15.0 / 75.0, 1.0 / 15.0, 1},
      // 15 words, 3 sentences, 20 syllables, 60 alphanumerics. "not bad"
      // flips to positive; with beautiful and durable P=3, N=0. Persuasive:
      // durable. Emotion: beautiful. No category word appears. CTA: the
      // curly-apostrophe "Don’t miss out".
      {"Board & Dice Inuit: The Snow Folk", 1.0, 157.0 / 75.0, 1.0 / 15.0, 0.0,
       15.0 / 60.0, 1.0 / 15.0, 1},
      // 30 words, 2 sentences (the second has no terminator), 43 syllables,
      // 137 letters. "never leaves a bitter" flips bitter; P = premium, rich,
      // smooth, bitter, perfect; N = flimsy, noisy. Persuasive: premium,
      // perfect. Keywords hit: coffee x2, kitchen ("maker" is not "makers").
      {"Brew Master Coffee Maker", 5.0 / 7.0, 538.0 / 75.0, 2.0 / 30.0, 3.0 / 30.0,
       30.0 / 137.0, 0.0, 0},
  };
  return kGolden;
}

inline std::filesystem::path golden_records_path() {
  return std::filesystem::path(COPYGRADE_TEST_DATA_DIR) / "golden_records.jsonl";
}

// Ratios must agree to machine precision (1 ulp-scale relative error),
// readability within 1e-9.
inline CheckResult check_golden() {
  CheckResult r{"golden fixtures"};
  const auto records = load_products(golden_records_path(), FileFormat::jsonl);
  const auto& want = golden_expectations();
  if (records.size() != want.size()) {
    r.cases = 1;
    r.fail("expected " + std::to_string(want.size()) + " records, loaded " +
           std::to_string(records.size()));
    return r;
  }
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() *
                                  std::max(1.0, std::abs(b));
  };
  for (std::size_t k = 0; k < records.size(); ++k, ++r.cases) {
    const auto& e = want[k];
    const auto v = score_all(records[k], default_lexicons(), SentimentMode::lexicon);
    std::ostringstream why;
    why.precision(17);
    if (records[k].product_name != e.product_name) why << " name";
    if (!close(v.sentiment, e.sentiment)) why << " sentiment " << v.sentiment;
    if (std::abs(v.readability - e.readability) > 1e-9) why << " readability " << v.readability;
    if (!close(v.persuasiveness, e.persuasiveness)) why << " persuasiveness " << v.persuasiveness;
    if (!close(v.seo, e.seo)) why << " seo " << v.seo;
    if (!close(v.clarity, e.clarity)) why << " clarity " << v.clarity;
    if (!close(v.emotional_appeal, e.emotional_appeal)) why << " emotional_appeal " << v.emotional_appeal;
    if (v.cta != e.cta) why << " cta " << v.cta;
    if (!why.str().empty()) r.fail(e.product_name + ":" + why.str());
  }
  return r;
}


// ---------------------------------------------------------------------------
// Bold cells of the published benchmark table, recomputed from its own
// numbers (tests/data/published_table.json).

inline CorpusReport published_report(bool with_human) {
  const auto text = read_file_text(std::filesystem::path(COPYGRADE_TEST_DATA_DIR) / "published_table.json");
  auto report = report_from_json(nlohmann::json::parse(text));
  if (!with_human) {
    std::erase_if(report.sources,
                  [](const SourceSummary& s) { return s.label == kHumanSourceLabel; });
  }
  return report;
}

inline const std::map<Metric, std::string>& published_bold() {
  static const std::map<Metric, std::string> kBold = {
      {Metric::sentiment, "ChatGPT4 (manual)"},
      {Metric::readability, "GPT2 (Sample)"},
      {Metric::persuasiveness, "ChatGPT4 (manual)"},
      {Metric::seo, "ChatGPT4 (manual)"},
      {Metric::clarity, "GPT2"},
      {Metric::emotional_appeal, "ChatGPT4 (manual)"},
      {Metric::cta, "ChatGPT4 (manual)"},
  };
  return kBold;
}

// The seven model rows alone, and all eight rows with the human row as a
// reference, must both give the published bold cells.
inline CheckResult check_published_bolding() {
  CheckResult r{"published table bolding"};
  const std::vector<std::pair<std::string, CorpusReport>> variants = {
      {"model rows", highlight_best(published_report(false))},
      {"human as reference", highlight_best(published_report(true), {kHumanSourceLabel})},
  };
  for (const auto& [name, report] : variants) {
    ++r.cases;
    for (auto m : kMetrics) {
      const auto it = report.best.find(m);
      const std::string got = it == report.best.end() ? "<none>" : it->second;
      if (got != published_bold().at(m)) {
        r.fail(name + ": " + std::string(metric_key(m)) + " -> " + got + ", expected " +
               published_bold().at(m));
      }
    }
  }
  return r;
}

}  // namespace copygrade::testing

#endif  // COPYGRADE_TESTS_SUPPORT_CHECKS_HPP_

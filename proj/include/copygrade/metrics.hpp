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

// The seven description-quality metrics and the combined scorer.
//
//   sentiment         lexicon polarity balance in [0,1], or the positive-class
//                     probability from a remote classifier
//   readability       Flesch-Kincaid grade level
//   persuasiveness    persuasive words / words
//   seo               category keyword occurrences / words
//   clarity           1 / average word length
//   emotional_appeal  emotion words / words
//   cta               call-to-action phrase occurrences (raw count)
//
// All lexicon matching is exact on case-folded tokens; there is no stemming.

#ifndef COPYGRADE_METRICS_HPP_
#define COPYGRADE_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <semaphore>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "copygrade/error.hpp"
#include "copygrade/http.hpp"
#include "copygrade/lexicon.hpp"
#include "copygrade/record.hpp"
#include "copygrade/text_core.hpp"

namespace copygrade {

enum class Metric {
  sentiment,
  readability,
  persuasiveness,
  seo,
  clarity,
  emotional_appeal,
  cta,
};

// Column order of the comparison table.
inline constexpr std::array<Metric, 7> kMetrics = {
    Metric::sentiment, Metric::readability,      Metric::persuasiveness,
    Metric::seo,       Metric::clarity,          Metric::emotional_appeal,
    Metric::cta,
};

// Machine name, used as the JSON/CSV key.
inline std::string_view metric_key(Metric m) {
  switch (m) {
    case Metric::sentiment: return "sentiment";
    case Metric::readability: return "readability";
    case Metric::persuasiveness: return "persuasiveness";
    case Metric::seo: return "seo";
    case Metric::clarity: return "clarity";
    case Metric::emotional_appeal: return "emotional_appeal";
    case Metric::cta: return "cta";
  }
  return "";
}

inline std::string_view metric_title(Metric m) {
  switch (m) {
    case Metric::sentiment: return "Sentiment";
    case Metric::readability: return "Readability";
    case Metric::persuasiveness: return "Persuasiveness";
    case Metric::seo: return "SEO";
    case Metric::clarity: return "Clarity";
    case Metric::emotional_appeal: return "Emotional Appeal";
    case Metric::cta: return "Call-to-Action";
  }
  return "";
}

struct ScoreVector {
  double sentiment = 0.0;
  double readability = 0.0;
  double persuasiveness = 0.0;
  double seo = 0.0;
  double clarity = 0.0;
  double emotional_appeal = 0.0;
  std::int64_t cta = 0;
  // Non-fatal conditions, e.g. a category with no usable keywords.
  std::vector<std::string> warnings;

  double value(Metric m) const {
    switch (m) {
      case Metric::sentiment: return sentiment;
      case Metric::readability: return readability;
      case Metric::persuasiveness: return persuasiveness;
      case Metric::seo: return seo;
      case Metric::clarity: return clarity;
      case Metric::emotional_appeal: return emotional_appeal;
      case Metric::cta: return static_cast<double>(cta);
    }
    return 0.0;
  }

  friend bool operator==(const ScoreVector&, const ScoreVector&) = default;
};

// ---------------------------------------------------------------------------
// Lexicon-free metrics.

inline constexpr double kFkSentenceWeight = 0.39;
inline constexpr double kFkSyllableWeight = 11.8;
inline constexpr double kFkOffset = 15.59;

// Flesch-Kincaid grade level. Not clamped: very simple text goes negative.
inline double readability_fk(const TextStats& stats) {
  if (stats.word_count == 0 || stats.sentence_count == 0) {
    throw EmptyDescription();
  }
  const double words = static_cast<double>(stats.word_count);
  return kFkSentenceWeight * (words / static_cast<double>(stats.sentence_count)) +
         kFkSyllableWeight * (static_cast<double>(stats.syllable_count) / words) -
         kFkOffset;
}

inline double clarity(const TextStats& stats) {
  if (stats.word_count == 0 || stats.avg_word_length <= 0.0) {
    throw EmptyDescription();
  }
  return 1.0 / stats.avg_word_length;
}

// ---------------------------------------------------------------------------
// Word-list ratios.

namespace detail {

inline std::size_t require_words(const Document& doc) {
  const std::size_t n = doc.word_count();
  if (n == 0) throw EmptyDescription();
  return n;
}

inline double membership_ratio(const Document& doc,
                               const std::set<std::string>& words) {
  const std::size_t n = require_words(doc);
  std::size_t hits = 0;
  for (const auto& t : doc.tokens) {
    if (t.is_word && words.contains(t.normalized)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace detail

inline double persuasiveness(const Document& doc, const LexiconSet& lex) {
  return detail::membership_ratio(doc, lex.persuasive);
}

inline double emotional_appeal(const Document& doc, const LexiconSet& lex) {
  return detail::membership_ratio(doc, lex.emotion);
}

// Keywords from a pipe-delimited category path: every word token of every
// segment, case-folded, minus stopwords.
inline std::set<std::string> category_keywords(std::string_view category,
                                               const LexiconSet& lex) {
  std::set<std::string> out;
  std::size_t pos = 0;
  while (pos <= category.size()) {
    std::size_t bar = category.find('|', pos);
    if (bar == std::string_view::npos) bar = category.size();
    for (const auto& t : tokenize(category.substr(pos, bar - pos)).tokens) {
      if (t.is_word && !lex.stopwords.contains(t.normalized)) {
        out.insert(t.normalized);
      }
    }
    pos = bar + 1;
  }
  return out;
}

struct SeoResult {
  double score = 0.0;
  // Set when the category yields no keywords; score is then 0.
  bool no_keywords = false;
};

inline SeoResult seo(const Document& doc, std::string_view category,
                     const LexiconSet& lex) {
  const std::size_t n = detail::require_words(doc);
  const auto keywords = category_keywords(category, lex);
  if (keywords.empty()) return {0.0, true};
  std::size_t hits = 0;
  for (const auto& t : doc.tokens) {
    if (t.is_word && keywords.contains(t.normalized)) ++hits;
  }
  return {std::clamp(static_cast<double>(hits) / static_cast<double>(n), 0.0,
                     1.0),
          false};
}

inline double seo_score(const Document& doc, std::string_view category,
                        const LexiconSet& lex) {
  return seo(doc, category, lex).score;
}

// ---------------------------------------------------------------------------
// Call-to-action phrase matching.

struct PhraseMatch {
  std::size_t begin = 0;
  std::size_t length = 0;

  friend bool operator==(const PhraseMatch&, const PhraseMatch&) = default;
};

// Counts non-overlapping phrase occurrences in a normalized token stream.
// Longer phrases claim tokens first; among equal lengths the leftmost
// occurrence wins. Punctuation tokens sit in the stream, so a match never
// spans them.
class PhraseMatcher {
 public:
  explicit PhraseMatcher(const std::set<std::string>& phrases) {
    for (const auto& phrase : phrases) {
      std::vector<std::string> toks;
      for (const auto& t : tokenize(phrase).tokens) toks.push_back(t.normalized);
      if (toks.empty()) continue;
      const std::size_t len = toks.size();
      if (by_length_.size() < len + 1) by_length_.resize(len + 1);
      by_length_[len].insert(join(toks.begin(), toks.end()));
    }
  }

  std::vector<PhraseMatch> matches(const std::vector<std::string>& stream) const {
    std::vector<PhraseMatch> out;
    std::vector<bool> taken(stream.size(), false);
    for (std::size_t len = by_length_.empty() ? 0 : by_length_.size() - 1;
         len >= 1; --len) {
      const auto& keys = by_length_[len];
      if (keys.empty()) continue;
      std::size_t i = 0;
      while (i + len <= stream.size()) {
        const auto first = taken.begin() + static_cast<std::ptrdiff_t>(i);
        if (std::find(first, first + static_cast<std::ptrdiff_t>(len), true) !=
            first + static_cast<std::ptrdiff_t>(len)) {
          ++i;
          continue;
        }
        const auto b = stream.begin() + static_cast<std::ptrdiff_t>(i);
        if (keys.contains(join(b, b + static_cast<std::ptrdiff_t>(len)))) {
          out.push_back({i, len});
          std::fill(first, first + static_cast<std::ptrdiff_t>(len), true);
          i += len;
        } else {
          ++i;
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.begin < b.begin; });
    return out;
  }

  std::size_t count(const std::vector<std::string>& stream) const {
    return matches(stream).size();
  }

 private:
  template <typename It>
  static std::string join(It first, It last) {
    std::string key;
    for (auto it = first; it != last; ++it) {
      if (it != first) key.push_back('\x1f');
      key += *it;
    }
    return key;
  }

  // Index = phrase length in tokens.
  std::vector<std::unordered_set<std::string>> by_length_;
};

inline std::vector<std::string> normalized_stream(const Document& doc) {
  std::vector<std::string> out;
  out.reserve(doc.tokens.size());
  for (const auto& t : doc.tokens) out.push_back(t.normalized);
  return out;
}

inline std::int64_t cta_effectiveness(const Document& doc,
                                      const PhraseMatcher& matcher) {
  detail::require_words(doc);
  return static_cast<std::int64_t>(matcher.count(normalized_stream(doc)));
}

inline std::int64_t cta_effectiveness(const Document& doc,
                                      const LexiconSet& lex) {
  return cta_effectiveness(doc, PhraseMatcher(lex.cta_phrases));
}

// ---------------------------------------------------------------------------
// Sentiment.

inline constexpr std::size_t kNegationWindow = 3;

struct PolarityCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

// A valence word is flipped when a negator occurs among the preceding
// kNegationWindow word tokens of the same sentence.
inline PolarityCounts polarity_counts(const Document& doc,
                                      const LexiconSet& lex) {
  PolarityCounts c;
  for (const auto& s : doc.sentences) {
    std::vector<const Token*> words;
    for (std::size_t k = s.begin; k < s.end; ++k) {
      if (doc.tokens[k].is_word) words.push_back(&doc.tokens[k]);
    }
    for (std::size_t w = 0; w < words.size(); ++w) {
      const auto it = lex.valence.find(words[w]->normalized);
      if (it == lex.valence.end()) continue;
      int polarity = it->second;
      const std::size_t from = w > kNegationWindow ? w - kNegationWindow : 0;
      for (std::size_t p = from; p < w; ++p) {
        if (lex.negators.contains(words[p]->normalized)) {
          polarity = -polarity;
          break;
        }
      }
      (polarity > 0 ? c.positive : c.negative) += 1;
    }
  }
  return c;
}

inline double sentiment_lexicon(const Document& doc, const LexiconSet& lex) {
  detail::require_words(doc);
  const auto c = polarity_counts(doc, lex);
  const std::size_t total = c.positive + c.negative;
  if (total == 0) return 0.5;
  return 0.5 + 0.5 * (static_cast<double>(c.positive) -
                      static_cast<double>(c.negative)) /
                   static_cast<double>(total);
}

inline constexpr const char* kDefaultSentimentModel =
    "distilbert-base-uncased-finetuned-sst-2-english";

struct SentimentClientConfig {
  std::string url;
  std::string model = kDefaultSentimentModel;
  std::chrono::milliseconds timeout{30000};
  // Input is cut after this many tokens before sending.
  std::size_t max_tokens = 512;
  int retries = 2;
  std::chrono::milliseconds backoff{200};
  std::ptrdiff_t max_in_flight = 4;
};

// Maps a classifier reply to P(positive). Accepts {"label","score"} or a
// (possibly nested) array of such objects.
inline double parse_sentiment_response(std::string_view body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("sentiment response is not JSON: ") +
                        e.what());
  }
  std::vector<nlohmann::json> items;
  std::vector<nlohmann::json> pending{j};
  while (!pending.empty()) {
    auto cur = std::move(pending.back());
    pending.pop_back();
    if (cur.is_array()) {
      for (auto it = cur.rbegin(); it != cur.rend(); ++it) pending.push_back(*it);
    } else {
      items.push_back(std::move(cur));
    }
  }
  auto lower = [](std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
  };
  std::optional<double> negative;
  for (const auto& item : items) {
    if (!item.is_object() || !item.contains("label") || !item.contains("score") ||
        !item["label"].is_string() || !item["score"].is_number()) {
      throw ProtocolError("sentiment response lacks label/score: " +
                          std::string(body.substr(0, 200)));
    }
    const double score = item["score"].get<double>();
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ProtocolError("sentiment score out of range: " +
                          std::to_string(score));
    }
    const auto label = lower(item["label"].get<std::string>());
    if (label == "positive" || label == "label_1") return score;
    if (label == "negative" || label == "label_0") {
      if (!negative) negative = 1.0 - score;
    } else {
      throw ProtocolError("unknown sentiment label \"" + label + "\"");
    }
  }
  if (negative) return *negative;
  throw ProtocolError("empty sentiment response");
}

// Prefix of `raw` holding at most `max_tokens` tokens.
inline std::string truncate_tokens(std::string_view raw, std::size_t max_tokens) {
  const auto doc = tokenize(raw);
  if (doc.tokens.size() <= max_tokens) return std::string(raw);
  if (max_tokens == 0) return {};
  return std::string(raw.substr(0, doc.tokens[max_tokens - 1].end()));
}

// Client for the remote classifier: POST {"text": ...}, reply
// {"label": "positive"|"negative", "score": p}. Thread-safe; at most
// max_in_flight requests run at once.
class SentimentClient {
 public:
  explicit SentimentClient(SentimentClientConfig cfg)
      : cfg_(std::move(cfg)),
        url_(http::parse_url(cfg_.url)),
        slots_(std::max<std::ptrdiff_t>(1, cfg_.max_in_flight)) {
    if (cfg_.max_in_flight < 1 || cfg_.max_in_flight > kMaxInFlight) {
      throw Error("sentiment client: max_in_flight must be in [1, " +
                  std::to_string(kMaxInFlight) + "]");
    }
    if (cfg_.retries < 0) throw Error("sentiment client: retries must be >= 0");
  }

  const SentimentClientConfig& config() const { return cfg_; }

  // Sends `text` unchanged. Retries transport and HTTP failures up to the
  // configured budget; malformed replies fail immediately.
  double classify(std::string_view text) const {
    const std::string body = nlohmann::json{{"text", text}}.dump();
    for (int attempt = 0;; ++attempt) {
      try {
        slots_.acquire();
        struct Release {
          std::counting_semaphore<kMaxInFlight>& s;
          ~Release() { s.release(); }
        } release{slots_};
        const auto res = http::post_json(url_, body, cfg_.timeout);
        if (res.status >= 400) {
          throw RetryableError("sentiment service returned HTTP " +
                               std::to_string(res.status));
        }
        return parse_sentiment_response(res.body);
      } catch (const RetryableError&) {
        if (attempt >= cfg_.retries) throw;
        std::this_thread::sleep_for(cfg_.backoff * (1 << std::min(attempt, 10)));
      }
    }
  }

 private:
  static constexpr std::ptrdiff_t kMaxInFlight = 256;

  SentimentClientConfig cfg_;
  http::Url url_;
  mutable std::counting_semaphore<kMaxInFlight> slots_;
};

inline double sentiment_remote(std::string_view raw,
                               const SentimentClient& client) {
  return client.classify(truncate_tokens(raw, client.config().max_tokens));
}

// ---------------------------------------------------------------------------

enum class SentimentMode { lexicon, remote };

// Scores one record on all seven metrics. Remote mode needs `client`.
inline ScoreVector score_all(const ProductRecord& record, const LexiconSet& lex,
                             SentimentMode mode,
                             const SentimentClient* client = nullptr,
                             const PhraseMatcher* matcher = nullptr) {
  const Document doc = tokenize(record.description);
  const TextStats stats = compute_stats(doc);
  ScoreVector v;
  if (mode == SentimentMode::remote) {
    if (client == nullptr) throw Error("remote sentiment requires a client");
    v.sentiment = sentiment_remote(record.description, *client);
  } else {
    v.sentiment = sentiment_lexicon(doc, lex);
  }
  v.readability = readability_fk(stats);
  v.persuasiveness = persuasiveness(doc, lex);
  const auto s = seo(doc, record.product_category, lex);
  v.seo = s.score;
  if (s.no_keywords) v.warnings.push_back("no usable category keywords");
  v.clarity = clarity(stats);
  v.emotional_appeal = emotional_appeal(doc, lex);
  v.cta = matcher ? cta_effectiveness(doc, *matcher)
                  : cta_effectiveness(doc, lex);
  return v;
}

}  // namespace copygrade

#endif  // COPYGRADE_METRICS_HPP_

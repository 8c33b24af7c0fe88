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

#ifndef COPYGRADE_LEXICON_HPP_
#define COPYGRADE_LEXICON_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "copygrade/default_lexicon_data.hpp"
#include "copygrade/error.hpp"
#include "copygrade/text_core.hpp"
#include "copygrade/utf8.hpp"

namespace copygrade {

inline constexpr std::size_t kMaxCtaPhraseTokens = 5;

enum class LexiconKind {
  persuasive,
  emotion,
  cta,
  valence_pos,
  valence_neg,
  negators,
  stopwords,
};

inline constexpr std::array<LexiconKind, 7> kLexiconKinds = {
    LexiconKind::persuasive,  LexiconKind::emotion,     LexiconKind::cta,
    LexiconKind::valence_pos, LexiconKind::valence_neg, LexiconKind::negators,
    LexiconKind::stopwords,
};

inline std::string_view lexicon_file_name(LexiconKind kind) {
  switch (kind) {
    case LexiconKind::persuasive: return "persuasive.txt";
    case LexiconKind::emotion: return "emotion.txt";
    case LexiconKind::cta: return "cta.txt";
    case LexiconKind::valence_pos: return "valence_pos.txt";
    case LexiconKind::valence_neg: return "valence_neg.txt";
    case LexiconKind::negators: return "negators.txt";
    case LexiconKind::stopwords: return "stopwords.txt";
  }
  return "";
}

// All entries are normalized (case-folded, single-spaced) and non-empty.
// Ordered containers make two set-equal lexicons compare equal no matter
// what order their files listed the terms in.
struct LexiconSet {
  std::set<std::string> persuasive;
  std::set<std::string> emotion;
  std::set<std::string> cta_phrases;
  // +1 positive, -1 negative.
  std::map<std::string, int> valence;
  std::set<std::string> negators;
  std::set<std::string> stopwords;

  friend bool operator==(const LexiconSet&, const LexiconSet&) = default;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace detail

// Parses lexicon text: one term per line, `#` comments and blank lines
// skipped, terms case-folded and whitespace-normalized, duplicates dropped
// keeping the first. `origin` prefixes error messages.
inline std::vector<std::string> parse_lexicon_text(std::string_view text,
                                                   LexiconKind kind,
                                                   std::string_view origin) {
  std::vector<std::string> terms;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto fail = [&](const std::string& what) {
      throw ParseError(std::string(origin) + ":" + std::to_string(line_no) +
                       ": " + what);
    };
    if (!utf8::is_valid(line)) fail("invalid UTF-8");
    const auto words = detail::split_ws(line);
    if (words.empty() || words.front().front() == '#') {
      if (eol == text.size()) break;
      continue;
    }
    std::string term;
    for (const auto& w : words) {
      if (!term.empty()) term.push_back(' ');
      term += normalize(w);
    }
    if (kind == LexiconKind::cta) {
      if (words.size() > kMaxCtaPhraseTokens) {
        fail("phrase \"" + term + "\" has " + std::to_string(words.size()) +
             " tokens; at most " + std::to_string(kMaxCtaPhraseTokens) +
             " allowed");
      }
    } else if (words.size() > 1) {
      fail("expected a single word, got \"" + term + "\"");
    }
    if (seen.insert(term).second) terms.push_back(std::move(term));
    if (eol == text.size()) break;
  }
  return terms;
}

inline std::vector<std::string> load_lexicon_file(
    const std::filesystem::path& path, LexiconKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lexicon_text(buf.str(), kind, path.string());
}

// Assembles a LexiconSet from one term list per kind and checks the
// cross-list invariants.
inline LexiconSet build_lexicon_set(
    const std::map<LexiconKind, std::vector<std::string>>& lists) {
  auto get = [&](LexiconKind k) -> const std::vector<std::string>& {
    static const std::vector<std::string> kEmpty;
    auto it = lists.find(k);
    return it == lists.end() ? kEmpty : it->second;
  };
  LexiconSet lex;
  lex.persuasive = {get(LexiconKind::persuasive).begin(),
                    get(LexiconKind::persuasive).end()};
  lex.emotion = {get(LexiconKind::emotion).begin(),
                 get(LexiconKind::emotion).end()};
  lex.cta_phrases = {get(LexiconKind::cta).begin(), get(LexiconKind::cta).end()};
  lex.negators = {get(LexiconKind::negators).begin(),
                  get(LexiconKind::negators).end()};
  lex.stopwords = {get(LexiconKind::stopwords).begin(),
                   get(LexiconKind::stopwords).end()};
  for (const auto& w : get(LexiconKind::valence_pos)) lex.valence[w] = +1;
  for (const auto& w : get(LexiconKind::valence_neg)) {
    auto [it, inserted] = lex.valence.emplace(w, -1);
    if (!inserted) {
      throw Error("lexicon: \"" + w + "\" is listed as both positive and " +
                  "negative valence");
    }
  }
  for (const auto& w : lex.negators) {
    if (lex.valence.contains(w)) {
      throw Error("lexicon: negator \"" + w + "\" also has a valence entry");
    }
  }
  return lex;
}

namespace detail {

inline std::string_view default_lexicon_text(LexiconKind kind) {
  switch (kind) {
    case LexiconKind::persuasive: return lexicon_data::k_persuasive;
    case LexiconKind::emotion: return lexicon_data::k_emotion;
    case LexiconKind::cta: return lexicon_data::k_cta;
    case LexiconKind::valence_pos: return lexicon_data::k_valence_pos;
    case LexiconKind::valence_neg: return lexicon_data::k_valence_neg;
    case LexiconKind::negators: return lexicon_data::k_negators;
    case LexiconKind::stopwords: return lexicon_data::k_stopwords;
  }
  return {};
}

}  // namespace detail

inline std::vector<std::string> default_lexicon_terms(LexiconKind kind) {
  return parse_lexicon_text(detail::default_lexicon_text(kind), kind,
                            std::string("<builtin>/") +
                                std::string(lexicon_file_name(kind)));
}

// The shipped lists, compiled in from lexicons/*.txt.
inline const LexiconSet& default_lexicons() {
  static const LexiconSet lex = [] {
    std::map<LexiconKind, std::vector<std::string>> lists;
    for (auto kind : kLexiconKinds) lists[kind] = default_lexicon_terms(kind);
    return build_lexicon_set(lists);
  }();
  return lex;
}

struct LoadedLexicons {
  LexiconSet set;
  // Per kind: "default" or the override file path.
  std::map<LexiconKind, std::string> sources;
  std::map<LexiconKind, std::size_t> sizes;
};

// Loads overrides from `dir`. Files that are present replace the matching
// default list; absent ones fall back to the defaults. A directory holding
// none of the lexicon files is an error.
inline LoadedLexicons load_lexicon_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error("lexicon directory " + dir.string() + " does not exist");
  }
  LoadedLexicons out;
  std::map<LexiconKind, std::vector<std::string>> lists;
  bool any = false;
  for (auto kind : kLexiconKinds) {
    const auto path = dir / lexicon_file_name(kind);
    if (std::filesystem::exists(path)) {
      lists[kind] = load_lexicon_file(path, kind);
      out.sources[kind] = path.string();
      any = true;
    } else {
      lists[kind] = default_lexicon_terms(kind);
      out.sources[kind] = "default";
    }
    out.sizes[kind] = lists[kind].size();
  }
  if (!any) {
    throw Error("lexicon directory " + dir.string() +
                " contains no lexicon files");
  }
  out.set = build_lexicon_set(lists);
  return out;
}

inline LoadedLexicons loaded_default_lexicons() {
  LoadedLexicons out;
  out.set = default_lexicons();
  for (auto kind : kLexiconKinds) {
    out.sources[kind] = "default";
    out.sizes[kind] = default_lexicon_terms(kind).size();
  }
  return out;
}

}  // namespace copygrade

#endif  // COPYGRADE_LEXICON_HPP_

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

// Tokenization, sentence segmentation and the word statistics every metric
// is computed from.
//
// Token rules:
//   * Whitespace (ASCII and Unicode spaces) separates tokens and is dropped.
//   * Punctuation characters form their own tokens. Runs of `.`, `!`, `?`
//     are kept together as one terminator token ("?!", "...").
//   * Everything else (letters, digits, symbols such as `+`, `$`, `%`) is
//     word material. Apostrophes and hyphens between two alphanumerics stay
//     inside the token ("don't", "card-based", "2-4"), as do `.` and `,`
//     between two digits ("19.99", "1,000").
//   * A token is a word when it holds at least one alphanumeric character,
//     so "13+" and "45" are words.
//
// Sentence rules: a sentence ends after a terminator token that is followed
// by whitespace or the end of the text. Trailing material without a
// terminator forms the last sentence. A span holding no word token is folded
// into its neighbour, so every sentence carries at least one word unless the
// whole text has none.

#ifndef COPYGRADE_TEXT_CORE_HPP_
#define COPYGRADE_TEXT_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "copygrade/error.hpp"
#include "copygrade/utf8.hpp"

namespace copygrade {

struct Token {
  std::string surface;
  std::string normalized;
  bool is_word = false;
  // Byte offset of the surface in the original text.
  std::size_t offset = 0;

  std::size_t end() const { return offset + surface.size(); }
};

// Half-open range of token indices.
struct Sentence {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Document {
  std::string original;
  std::vector<Token> tokens;
  std::vector<Sentence> sentences;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& t : tokens) n += t.is_word ? 1 : 0;
    return n;
  }
};

struct TextStats {
  std::size_t word_count = 0;
  std::size_t sentence_count = 0;
  std::size_t syllable_count = 0;
  std::size_t word_char_count = 0;
  double avg_word_length = 0.0;
};

namespace detail {

inline bool is_space(char32_t c) {
  switch (c) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\f': case U'\v':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000: case 0x200B: case 0xFEFF:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// Unicode punctuation (general category P*) for the ranges that show up in
// English copy. ASCII symbols ($ + < = > ^ ` | ~) are deliberately absent.
inline bool is_punct(char32_t c) {
  if (c < 0x80) {
    switch (c) {
      case U'!': case U'"': case U'#': case U'%': case U'&': case U'\'':
      case U'(': case U')': case U'*': case U',': case U'-': case U'.':
      case U'/': case U':': case U';': case U'?': case U'@': case U'[':
      case U'\\': case U']': case U'_': case U'{': case U'}':
        return true;
      default:
        return false;
    }
  }
  switch (c) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x3001 && c <= 0x3003) || (c >= 0x3008 && c <= 0x3011);
}

inline bool is_alnum(char32_t c) {
  if (c < 0x80) {
    return (c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'z') ||
           (c >= U'A' && c <= U'Z');
  }
  if (c < 0xC0) return c == 0xAA || c == 0xB5 || c == 0xBA;
  if (c == 0xD7 || c == 0xF7) return false;
  if (c >= 0x2000 && c <= 0x2BFF) return false;  // punctuation, symbols
  if (c >= 0xFE00 && c <= 0xFE0F) return false;  // variation selectors
  if (c >= 0x1F000) return false;                // emoji and pictographs
  return !is_space(c) && !is_punct(c);
}

inline bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

inline bool is_terminator(char32_t c) {
  return c == U'.' || c == U'!' || c == U'?';
}

inline bool is_apostrophe(char32_t c) {
  return c == U'\'' || c == 0x2019 || c == 0x2018;
}

inline bool is_hyphen(char32_t c) {
  return c == U'-' || c == 0x2010 || c == 0x2011;
}

inline char32_t fold(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 0x20;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
  if (c == 0x2018 || c == 0x2019) return U'\'';
  if (c == 0x2010 || c == 0x2011) return U'-';
  return c;
}

struct Decoded {
  char32_t cp;
  std::size_t offset;
  std::size_t size;
};

inline std::vector<Decoded> decode_all(std::string_view text) {
  std::vector<Decoded> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = pos;
    auto cp = utf8::decode(text, pos);
    if (!cp) {
      // Invalid byte: keep it as opaque word material.
      cp = 0xFFFD;
      pos = at + 1;
    }
    out.push_back({*cp, at, pos - at});
  }
  return out;
}

}  // namespace detail

// Case-folded form used for all lexicon and keyword matching. Typographic
// apostrophes and hyphens map to their ASCII forms.
inline std::string normalize(std::string_view surface) {
  std::string out;
  out.reserve(surface.size());
  for (const auto& d : detail::decode_all(surface)) {
    if (d.cp == 0xFFFD) {
      out.append(surface.substr(d.offset, d.size));
    } else {
      utf8::append(out, detail::fold(d.cp));
    }
  }
  return out;
}

inline Document tokenize(std::string_view raw) {
  using namespace detail;
  Document doc;
  doc.original = std::string(raw);
  const auto cps = decode_all(raw);
  const std::size_t n = cps.size();

  auto emit = [&](std::size_t first, std::size_t last, bool word) {
    Token t;
    t.offset = cps[first].offset;
    const std::size_t end = cps[last - 1].offset + cps[last - 1].size;
    t.surface = std::string(raw.substr(t.offset, end - t.offset));
    t.normalized = normalize(t.surface);
    t.is_word = word;
    doc.tokens.push_back(std::move(t));
  };

  std::size_t i = 0;
  while (i < n) {
    const char32_t c = cps[i].cp;
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_terminator(c)) {
      std::size_t j = i + 1;
      while (j < n && is_terminator(cps[j].cp)) ++j;
      emit(i, j, false);
      i = j;
      continue;
    }
    if (is_punct(c)) {
      emit(i, i + 1, false);
      ++i;
      continue;
    }
    // Word material.
    std::size_t j = i;
    bool has_alnum = false;
    while (j < n) {
      const char32_t d = cps[j].cp;
      if (is_space(d)) break;
      if (is_punct(d)) {
        const bool prev_alnum = j > i && is_alnum(cps[j - 1].cp);
        const bool next_alnum = j + 1 < n && is_alnum(cps[j + 1].cp);
        const bool joins =
            ((is_apostrophe(d) || is_hyphen(d)) && prev_alnum && next_alnum) ||
            ((d == U'.' || d == U',') && j > i && is_digit(cps[j - 1].cp) &&
             j + 1 < n && is_digit(cps[j + 1].cp));
        if (!joins) break;
      }
      has_alnum = has_alnum || is_alnum(d);
      ++j;
    }
    emit(i, j, has_alnum);
    i = j;
  }

  // Sentence segmentation over the token stream.
  const auto& toks = doc.tokens;
  auto followed_by_space_or_end = [&](const Token& t) {
    const std::size_t end = t.end();
    if (end >= raw.size()) return true;
    std::size_t pos = end;
    auto cp = utf8::decode(raw, pos);
    return cp && is_space(*cp);
  };
  auto is_terminator_token = [](const Token& t) {
    return !t.surface.empty() &&
           t.surface.find_first_not_of(".!?") == std::string::npos;
  };

  std::size_t start = 0;
  bool has_word = false;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    has_word = has_word || toks[k].is_word;
    if (has_word && is_terminator_token(toks[k]) &&
        followed_by_space_or_end(toks[k])) {
      doc.sentences.push_back({start, k + 1});
      start = k + 1;
      has_word = false;
    }
  }
  if (start < toks.size()) {
    if (has_word || doc.sentences.empty()) {
      doc.sentences.push_back({start, toks.size()});
    } else {
      doc.sentences.back().end = toks.size();
    }
  }
  return doc;
}

// Token surfaces in order, with a single space wherever the original had
// whitespace between two tokens.
inline std::string reconstruct(const Document& doc) {
  std::string out;
  for (std::size_t k = 0; k < doc.tokens.size(); ++k) {
    const auto& t = doc.tokens[k];
    if (k > 0 && t.offset > doc.tokens[k - 1].end()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

// Vowel-group heuristic: count maximal runs of a/e/i/o/u/y, drop one for a
// silent final "e" (not "le", and only when at least two groups), and never
// return less than one.
inline std::size_t count_syllables(std::string_view word) {
  if (word.empty()) {
    throw std::invalid_argument("count_syllables: empty word");
  }
  auto vowel = [](char c) {
    switch (c) {
      case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      case 'A': case 'E': case 'I': case 'O': case 'U': case 'Y':
        return true;
      default:
        return false;
    }
  };
  std::size_t groups = 0;
  bool in_group = false;
  for (char c : word) {
    const bool v = vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const auto lower = [](char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c + 0x20) : c;
  };
  const std::size_t n = word.size();
  const bool ends_e = lower(word[n - 1]) == 'e';
  const bool ends_le = n >= 2 && lower(word[n - 2]) == 'l' && ends_e;
  if (ends_e && !ends_le && groups >= 2) --groups;
  return groups < 1 ? 1 : groups;
}

inline std::size_t alnum_count(std::string_view surface) {
  std::size_t n = 0;
  for (const auto& d : detail::decode_all(surface)) {
    n += detail::is_alnum(d.cp) ? 1 : 0;
  }
  return n;
}

inline TextStats compute_stats(const Document& doc) {
  TextStats s;
  for (const auto& t : doc.tokens) {
    if (!t.is_word) continue;
    ++s.word_count;
    s.syllable_count += count_syllables(t.normalized);
    s.word_char_count += alnum_count(t.surface);
  }
  if (s.word_count == 0) throw EmptyDescription();
  s.sentence_count = doc.sentences.size();
  s.avg_word_length = static_cast<double>(s.word_char_count) /
                      static_cast<double>(s.word_count);
  return s;
}

}  // namespace copygrade

#endif  // COPYGRADE_TEXT_CORE_HPP_

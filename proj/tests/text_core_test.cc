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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "copygrade/text_core.hpp"
#include "support/gen.hpp"

namespace copygrade {
namespace {

std::vector<std::string> surfaces(const Document& d) {
  std::vector<std::string> out;
  for (const auto& t : d.tokens) out.push_back(t.surface);
  return out;
}

std::size_t words_in(const Document& d) { return d.word_count(); }

TEST(Tokenize, EmptyInput) {
  const auto d = tokenize("");
  EXPECT_TRUE(d.tokens.empty());
  EXPECT_TRUE(d.sentences.empty());
}

TEST(Tokenize, WhitespaceOnly) {
  const auto d = tokenize(" \t\n ");
  EXPECT_TRUE(d.tokens.empty());
  EXPECT_TRUE(d.sentences.empty());
}

TEST(Tokenize, TwoTerminatedSentences) {
  const auto d = tokenize("Shop now! Buy today.");
  EXPECT_EQ(words_in(d), 4u);
  ASSERT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"Shop", "now", "!", "Buy", "today", "."}));
  EXPECT_EQ(d.sentences[0], (Sentence{0, 3}));
  EXPECT_EQ(d.sentences[1], (Sentence{3, 6}));
}

TEST(Tokenize, AgesAndNumbers) {
  const auto d = tokenize("Ages 13+. 45 minute playing time.");
  EXPECT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(surfaces(d),
            (std::vector<std::string>{"Ages", "13+", ".", "45", "minute", "playing", "time", "."}));
  EXPECT_TRUE(d.tokens[1].is_word);
  EXPECT_TRUE(d.tokens[3].is_word);
  EXPECT_FALSE(d.tokens[2].is_word);
}

TEST(Tokenize, ApostrophesAndHyphensStayInside) {
  const auto d = tokenize("Don't miss this high-quality, kid-friendly set for 2-4 players.");
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"Don't", "miss", "this", "high-quality", ",",
                                                   "kid-friendly", "set", "for", "2-4",
                                                   "players", "."}));
}

TEST(Tokenize, TypographicApostropheNormalizes) {
  const auto d = tokenize("Don’t stop");
  ASSERT_EQ(d.tokens.size(), 2u);
  EXPECT_EQ(d.tokens[0].surface, "Don’t");
  EXPECT_EQ(d.tokens[0].normalized, "don't");
}

TEST(Tokenize, EdgeApostropheAndHyphenSplit) {
  const auto d = tokenize("kids' toys -- 'quoted'");
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"kids", "'", "toys", "-", "-", "'", "quoted", "'"}));
}

TEST(Tokenize, DecimalsAndThousands) {
  const auto d = tokenize("Holds 1,000 cards in 3.5 inches.");
  EXPECT_EQ(surfaces(d),
            (std::vector<std::string>{"Holds", "1,000", "cards", "in", "3.5", "inches", "."}));
  EXPECT_EQ(d.sentences.size(), 1u);
}

TEST(Tokenize, TerminatorRunsAndAttachedTerminators) {
  const auto d = tokenize("Really?! Yes... v1.2 works.Great");
  // ".G" is not followed by whitespace, so it does not end a sentence.
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"Really", "?!", "Yes", "...", "v1.2",
                                                   "works", ".", "Great"}));
  ASSERT_EQ(d.sentences.size(), 3u);
  EXPECT_EQ(d.sentences[2], (Sentence{4, 8}));
}

TEST(Tokenize, TrailingUnterminatedSentence) {
  const auto d = tokenize("First one. Then more words");
  ASSERT_EQ(d.sentences.size(), 2u);
  EXPECT_EQ(d.sentences[1], (Sentence{3, 6}));
}

TEST(Tokenize, WordlessTailJoinsLastSentence) {
  const auto d = tokenize("Great gift. :) !!");
  ASSERT_EQ(d.sentences.size(), 1u);
  EXPECT_EQ(d.sentences[0].end, d.tokens.size());
}

TEST(Tokenize, PunctuationOnly) {
  const auto d = tokenize("... !!");
  EXPECT_EQ(words_in(d), 0u);
  // Tokens still need a home.
  ASSERT_EQ(d.sentences.size(), 1u);
  EXPECT_EQ(d.sentences[0], (Sentence{0, d.tokens.size()}));
}

TEST(Tokenize, UnicodeWhitespaceAndPunctuation) {
  const auto d = tokenize("Café crème — délicieux… Voilà");
  EXPECT_EQ(surfaces(d), (std::vector<std::string>{"Café", "crème", "—",
                                                   "délicieux", "…", "Voilà"}));
  EXPECT_EQ(d.tokens[0].normalized, "café");
  EXPECT_EQ(normalize("ÉTÉ"), "été");
}

TEST(Tokenize, OffsetsPointIntoOriginal) {
  const std::string raw = "  Shop  now!\nBuy";
  const auto d = tokenize(raw);
  for (const auto& t : d.tokens) EXPECT_EQ(raw.substr(t.offset, t.surface.size()), t.surface);
}

TEST(Tokenize, Reconstruct) {
  EXPECT_EQ(reconstruct(tokenize("  Shop \n\t now!Buy  today. ")), "Shop now!Buy today.");
}

TEST(Syllables, Examples) {
  EXPECT_EQ(count_syllables("a"), 1u);
  EXPECT_EQ(count_syllables("beautiful"), 3u);
  EXPECT_EQ(count_syllables("immersive"), 3u);
  EXPECT_EQ(count_syllables("the"), 1u);
  EXPECT_EQ(count_syllables("game"), 1u);
  EXPECT_EQ(count_syllables("puzzle"), 2u);
  // One group ("y"); dictionaries say 2, inside the heuristic's +/-1.
  EXPECT_EQ(count_syllables("rhythm"), 1u);
  EXPECT_EQ(count_syllables("candle"), 2u);
  EXPECT_EQ(count_syllables("45"), 1u);
  EXPECT_EQ(count_syllables("2-4"), 1u);
  EXPECT_EQ(count_syllables("brrr"), 1u);
}

TEST(Syllables, EmptyIsAnError) {
  EXPECT_THROW(count_syllables(""), std::invalid_argument);
}

TEST(Stats, Examples) {
  const auto cat = compute_stats(tokenize("The cat sat on the mat."));
  EXPECT_EQ(cat.word_count, 6u);
  EXPECT_EQ(cat.sentence_count, 1u);
  EXPECT_EQ(cat.syllable_count, 6u);

  EXPECT_DOUBLE_EQ(compute_stats(tokenize("a bb ccc.")).avg_word_length, 2.0);

  const auto shop = compute_stats(tokenize("Shop now! Buy today."));
  EXPECT_EQ(shop.sentence_count, 2u);
  EXPECT_EQ(shop.word_count, 4u);
}

TEST(Stats, WordCharsCountAlphanumericsOnly) {
  const auto s = compute_stats(tokenize("Don't buy 2-4 13+"));
  EXPECT_EQ(s.word_char_count, 4u + 3u + 2u + 2u);
}

TEST(Stats, EmptyDescription) {
  EXPECT_THROW(compute_stats(tokenize("")), EmptyDescription);
  EXPECT_THROW(compute_stats(tokenize("?! ...")), EmptyDescription);
  try {
    compute_stats(tokenize(" "));
  } catch (const EmptyDescription& e) {
    EXPECT_STREQ(e.what(), "empty description");
  }
}

// ---------------------------------------------------------------------------
// Properties

using testing::CopyGenerator;
using testing::Rng;

constexpr std::size_t kCases = 1000;

TEST(TextCoreProperty, SyllablesAtLeastOne) {
  Rng rng(101);
  for (std::size_t k = 0; k < kCases; ++k) {
    const auto w = testing::random_ascii_word(rng);
    ASSERT_GE(count_syllables(w), 1u) << w;
  }
}

TEST(TextCoreProperty, DocumentInvariants) {
  Rng rng(102);
  CopyGenerator gen;
  for (std::size_t k = 0; k < kCases; ++k) {
    const auto text = gen.document(rng);
    const auto d = tokenize(text);
    ASSERT_FALSE(d.sentences.empty()) << text;
    std::size_t expect = 0;
    for (const auto& s : d.sentences) {
      ASSERT_EQ(s.begin, expect) << text;
      ASSERT_LT(s.begin, s.end) << text;
      expect = s.end;
    }
    ASSERT_EQ(expect, d.tokens.size()) << text;
    for (const auto& t : d.tokens) {
      ASSERT_EQ(t.normalized, normalize(t.surface));
      ASSERT_EQ(text.substr(t.offset, t.surface.size()), t.surface);
    }
  }
}

TEST(TextCoreProperty, TokenizeReconstructIsIdempotent) {
  Rng rng(103);
  CopyGenerator gen;
  for (std::size_t k = 0; k < kCases; ++k) {
    const auto text = gen.document(rng);
    const auto a = tokenize(text);
    const auto b = tokenize(reconstruct(a));
    ASSERT_EQ(surfaces(a), surfaces(b)) << text;
    ASSERT_EQ(a.sentences, b.sentences) << text;
  }
}

TEST(TextCoreProperty, ConcatenationAddsCounts) {
  Rng rng(104);
  CopyGenerator gen;
  for (std::size_t k = 0; k < kCases; ++k) {
    const auto x = gen.document(rng);
    const auto y = gen.document(rng);
    const auto a = compute_stats(tokenize(x));
    const auto b = compute_stats(tokenize(y));
    const auto ab = compute_stats(tokenize(x + " " + y));
    ASSERT_EQ(ab.word_count, a.word_count + b.word_count) << x << " | " << y;
    ASSERT_EQ(ab.sentence_count, a.sentence_count + b.sentence_count) << x << " | " << y;
    ASSERT_EQ(ab.syllable_count, a.syllable_count + b.syllable_count) << x << " | " << y;
  }
}

TEST(TextCoreProperty, AverageWordLengthSurvivesDuplication) {
  Rng rng(105);
  CopyGenerator gen;
  for (std::size_t k = 0; k < kCases; ++k) {
    const auto x = gen.document(rng);
    const auto a = compute_stats(tokenize(x));
    ASSERT_GE(a.syllable_count, a.word_count);
    ASSERT_GT(a.avg_word_length, 0.0);
    ASSERT_EQ(compute_stats(tokenize(x + " " + x)).avg_word_length, a.avg_word_length) << x;
  }
}

}  // namespace
}  // namespace copygrade

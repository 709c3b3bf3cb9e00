/*
 * Copyright 2026 The icmup Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <cmath>

#include "icmup/pattern.hpp"

using namespace icmup;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no icmup::Error thrown";
  return ErrorCode::Io;
}

}  // namespace

TEST(Symbol, RejectsEmptyAndWhitespace) {
  EXPECT_EQ(code_of([] { Symbol(""); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(code_of([] { Symbol("a b"); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(code_of([] { Symbol("a\tb"); }), ErrorCode::InvalidSymbol);
  EXPECT_EQ(Symbol("#Nr").text(), "#Nr");
}

TEST(Symbol, EqualityIsByteIdentity) {
  EXPECT_EQ(Symbol("a"), Symbol("a"));
  EXPECT_NE(Symbol("a"), Symbol("A"));
}

TEST(Pattern, Validates) {
  EXPECT_EQ(code_of([] { Pattern("", symbols_of("a")); }), ErrorCode::InvalidPattern);
  EXPECT_EQ(code_of([] { Pattern("p", {}); }), ErrorCode::InvalidPattern);
  EXPECT_EQ(code_of([] { Pattern("p", symbols_of("a"), 0); }), ErrorCode::InvalidPattern);
}

TEST(Tokenize, Whitespace) {
  auto s = tokenize("a b c", TokenizeMode::Whitespace);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(render(s), "a b c");
  EXPECT_EQ(tokenize("t w o k i t t e n s p l a y", TokenizeMode::Whitespace).size(), 14u);
  EXPECT_TRUE(tokenize("  \n\t ", TokenizeMode::Whitespace).empty());
}

TEST(Tokenize, Chars) {
  auto s = tokenize("INFORMATION", TokenizeMode::Chars);
  ASSERT_EQ(s.size(), 11u);
  EXPECT_EQ(s.front().text(), "I");
  EXPECT_EQ(s.back().text(), "N");
  EXPECT_EQ(tokenize("a b\n", TokenizeMode::Chars).size(), 2u);
}

TEST(Cost, SymbolCost) {
  EXPECT_EQ(code_of([] { symbol_cost_bits(0); }), ErrorCode::DegenerateAlphabet);
  EXPECT_DOUBLE_EQ(symbol_cost_bits(1), 1.0);
  EXPECT_DOUBLE_EQ(symbol_cost_bits(2), 1.0);
  EXPECT_DOUBLE_EQ(symbol_cost_bits(4), 2.0);
}

TEST(Cost, RawCost) {
  EXPECT_DOUBLE_EQ(raw_cost(symbols_of("A C G T A"), 4), 10.0);
  EXPECT_DOUBLE_EQ(raw_cost(symbols_of("0 1 1 0 1 0 0 1"), 2), 8.0);
  EXPECT_NEAR(raw_cost(tokenize("INFORMATION", TokenizeMode::Chars), 27), 52.30, 0.005);  // 11 * log2(27) = 52.3038
  EXPECT_NEAR(raw_cost(tokenize("INFORMATION", TokenizeMode::Chars), 27), 11 * std::log2(27.0), 1e-12);
}

TEST(Cost, CodeCost) {
  EXPECT_DOUBLE_EQ(code_cost_bits(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(code_cost_bits(1, 2), 1.0);
  EXPECT_NEAR(code_cost_bits(3, 4), 0.415, 0.0005);
  EXPECT_NEAR(code_cost_bits(3, 4), -std::log2(0.75), 1e-12);
}

TEST(PatternStore, AlphabetAndFrequency) {
  PatternStore s;
  s.add(Pattern("p", symbols_of("a b"), 2));
  s.add(Pattern("q", symbols_of("b c"), 3));
  EXPECT_EQ(s.alphabet(), (std::set<std::string>{"a", "b", "c"}));
  EXPECT_EQ(s.total_frequency(), 5);
  EXPECT_EQ(code_of([&] { s.add(Pattern("p", symbols_of("z"))); }), ErrorCode::DuplicateId);
  EXPECT_EQ(code_of([&] { s.at("zz"); }), ErrorCode::UnknownPattern);
  EXPECT_NEAR(code_cost("q", s), -std::log2(3.0 / 5.0), 1e-12);
  EXPECT_EQ(s.containing("b").size(), 2u);
  EXPECT_EQ(s.alphabet_size_with(symbols_of("a d")), 4u);
}

TEST(PatternStore, InsertionOrder) {
  PatternStore s;
  for (auto id : {"z", "a", "m"}) s.add(Pattern(id, symbols_of("x")));
  auto ps = s.patterns();
  ASSERT_EQ(ps.size(), 3u);
  EXPECT_EQ(ps[0]->id, "z");
  EXPECT_EQ(ps[2]->id, "m");
}

TEST(Grammar, Parses) {
  auto s = parse_grammar("# comment\nPATTERN a 3: x y\n\nPATTERN b: y z\n");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(s.at("a").frequency, 3);
  EXPECT_EQ(render(s.at("b").symbols), "y z");
}

TEST(Grammar, ReportsLineNumbers) {
  try {
    parse_grammar("PATTERN a: x\nbogus line\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Grammar, KittensFile) {
  auto s = parse_grammar(std::string_view(
      "PATTERN Nr5: Nr 5 k i t t e n #Nr\nPATTERN N: N Np Nr #Nr s #N\n"));
  EXPECT_EQ(s.at("Nr5").size(), 9u);
}

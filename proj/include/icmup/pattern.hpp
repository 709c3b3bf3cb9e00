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

// Atomic symbols, patterns, pattern stores and the bit-cost model shared by
// every other part of the library.

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "icmup/error.hpp"

namespace icmup {

namespace detail {

inline bool is_space(char c) noexcept {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace detail

/// An atomic SP-symbol: a non-empty token without whitespace. Equality is
/// byte equality of the text.
class Symbol {
 public:
  explicit Symbol(std::string text) : text_(std::move(text)) {
    if (text_.empty()) throw Error(ErrorCode::InvalidSymbol, "empty symbol");
    if (std::any_of(text_.begin(), text_.end(), detail::is_space))
      throw Error(ErrorCode::InvalidSymbol, "whitespace in symbol '" + text_ + "'");
  }
  explicit Symbol(std::string_view text) : Symbol(std::string(text)) {}
  explicit Symbol(const char* text) : Symbol(std::string(text)) {}

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;

 private:
  std::string text_;
};

using SymbolSeq = std::vector<Symbol>;

enum class PatternKind { New, Old };

/// An SP-pattern: an identified, ordered, non-empty array of symbols with a
/// frequency of occurrence.
struct Pattern {
  std::string id;
  SymbolSeq symbols;
  std::int64_t frequency = 1;
  PatternKind kind = PatternKind::Old;

  Pattern() = default;
  Pattern(std::string id_, SymbolSeq symbols_, std::int64_t frequency_ = 1,
          PatternKind kind_ = PatternKind::Old)
      : id(std::move(id_)), symbols(std::move(symbols_)), frequency(frequency_), kind(kind_) {
    if (id.empty()) throw Error(ErrorCode::InvalidPattern, "pattern id is empty");
    if (symbols.empty()) throw Error(ErrorCode::InvalidPattern, "pattern '" + id + "' has no symbols");
    if (frequency < 1) throw Error(ErrorCode::InvalidPattern, "pattern '" + id + "' frequency < 1");
  }

  std::size_t size() const noexcept { return symbols.size(); }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

enum class TokenizeMode { Chars, Whitespace };

inline SymbolSeq tokenize(std::string_view text, TokenizeMode mode) {
  SymbolSeq out;
  if (mode == TokenizeMode::Whitespace) {
    for (auto tok : detail::split_ws(text)) out.emplace_back(tok);
  } else {
    for (char c : text)
      if (!detail::is_space(c)) out.emplace_back(std::string(1, c));
  }
  return out;
}

/// Single-space rendering; whitespace tokenization of the result gives back
/// the same sequence.
inline std::string render(std::span<const Symbol> symbols, std::string_view sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += sep;
    out += symbols[i].text();
  }
  return out;
}

inline SymbolSeq symbols_of(std::string_view text) {
  return tokenize(text, TokenizeMode::Whitespace);
}

// ---------------------------------------------------------------------------
// Cost model

/// Fixed-length cost of one symbol drawn from an alphabet of `alphabet_size`.
/// A one-symbol alphabet is charged one bit.
inline double symbol_cost_bits(std::size_t alphabet_size) {
  if (alphabet_size == 0) throw Error(ErrorCode::DegenerateAlphabet, "alphabet size 0");
  if (alphabet_size == 1) return 1.0;
  return std::log2(static_cast<double>(alphabet_size));
}

/// Ideal code length, in bits, of a pattern with frequency f among total F.
inline double code_cost_bits(std::int64_t frequency, std::int64_t total) {
  if (frequency < 1 || total < frequency)
    throw Error(ErrorCode::InvalidArgument, "code cost needs 1 <= f <= F");
  if (frequency == total) return 0.0;
  return -std::log2(static_cast<double>(frequency) / static_cast<double>(total));
}

inline double raw_cost(std::span<const Symbol> symbols, std::size_t alphabet_size) {
  return static_cast<double>(symbols.size()) * symbol_cost_bits(alphabet_size);
}

inline double raw_cost(const Pattern& pattern, std::size_t alphabet_size) {
  return raw_cost(pattern.symbols, alphabet_size);
}

// ---------------------------------------------------------------------------
// PatternStore

/// Dictionary of Old patterns keyed by id, with the derived alphabet and an
/// index from symbol text to the patterns containing it.
class PatternStore {
 public:
  PatternStore() = default;

  explicit PatternStore(std::vector<Pattern> patterns) {
    for (auto& p : patterns) add(std::move(p));
  }

  void add(Pattern p) {
    if (patterns_.contains(p.id))
      throw Error(ErrorCode::DuplicateId, "duplicate pattern id '" + p.id + "'");
    p.kind = PatternKind::Old;
    total_frequency_ += p.frequency;
    for (const auto& s : p.symbols) {
      alphabet_.insert(s.text());
      auto& ids = index_[s.text()];
      if (ids.empty() || ids.back() != p.id) ids.push_back(p.id);
    }
    order_.push_back(p.id);
    patterns_.emplace(p.id, std::move(p));
  }

  bool empty() const noexcept { return patterns_.empty(); }
  std::size_t size() const noexcept { return patterns_.size(); }
  bool contains(std::string_view id) const { return patterns_.contains(std::string(id)); }

  const Pattern& at(std::string_view id) const {
    auto it = patterns_.find(std::string(id));
    if (it == patterns_.end()) throw Error(ErrorCode::UnknownPattern, "unknown pattern '" + std::string(id) + "'");
    return it->second;
  }

  /// Patterns in insertion (file) order.
  std::vector<const Pattern*> patterns() const {
    std::vector<const Pattern*> out;
    out.reserve(order_.size());
    for (const auto& id : order_) out.push_back(&patterns_.at(id));
    return out;
  }

  const std::set<std::string>& alphabet() const noexcept { return alphabet_; }
  std::int64_t total_frequency() const noexcept { return total_frequency_; }

  /// Ids of patterns that contain `text` (insertion order, no repeats).
  std::span<const std::string> containing(const std::string& text) const {
    auto it = index_.find(text);
    if (it == index_.end()) return {};
    return it->second;
  }

  /// Alphabet size of the store joined with extra symbols.
  std::size_t alphabet_size_with(std::span<const Symbol> extra) const {
    std::set<std::string> all = alphabet_;
    for (const auto& s : extra) all.insert(s.text());
    return all.size();
  }

 private:
  std::map<std::string, Pattern> patterns_;
  std::vector<std::string> order_;
  std::set<std::string> alphabet_;
  std::map<std::string, std::vector<std::string>> index_;
  std::int64_t total_frequency_ = 0;
};

inline double code_cost(std::string_view pattern_id, const PatternStore& store) {
  const auto& p = store.at(pattern_id);
  return code_cost_bits(p.frequency, store.total_frequency());
}

// ---------------------------------------------------------------------------
// Grammar file:  PATTERN <id> [<freq>]: <sym> <sym> ...

inline PatternStore parse_grammar(std::istream& in) {
  PatternStore store;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto colon = body.find(':');
    if (colon == std::string_view::npos) fail("missing ':'");
    auto head = detail::split_ws(body.substr(0, colon));
    if (head.empty() || head[0] != "PATTERN") fail("expected 'PATTERN <id> <freq>:'");
    if (head.size() < 2 || head.size() > 3) fail("expected 'PATTERN <id> <freq>:'");
    std::int64_t freq = 1;
    if (head.size() == 3) {
      try {
        std::size_t used = 0;
        freq = std::stoll(std::string(head[2]), &used);
        if (used != head[2].size()) fail("bad frequency '" + std::string(head[2]) + "'");
      } catch (const std::logic_error&) {
        fail("bad frequency '" + std::string(head[2]) + "'");
      }
      if (freq < 1) fail("frequency must be >= 1");
    }
    auto syms = symbols_of(body.substr(colon + 1));
    if (syms.empty()) fail("pattern has no symbols");
    if (store.contains(head[1])) fail("duplicate pattern id '" + std::string(head[1]) + "'");
    store.add(Pattern(std::string(head[1]), std::move(syms), freq));
  }
  return store;
}

inline PatternStore parse_grammar(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_grammar(in);
}

}  // namespace icmup

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

// Codecs built from matching and unifying repeated patterns:
//
//   - basic unification (lossy: occurrences collapse to one counted pattern)
//   - chunking-with-codes (lossless: occurrences replaced by a short code)
//   - run-length coding of immediately repeated blocks
//   - schema-plus-correction (a template whose slots are filled per instance)
//
// Occurrences are always counted non-overlapping, scanning left to right.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "icmup/error.hpp"
#include "icmup/pattern.hpp"

namespace icmup {

namespace detail {

/// Start positions of non-overlapping occurrences of `needle` in `hay`.
inline std::vector<std::size_t> find_non_overlapping(std::span<const Symbol> hay,
                                                     std::span<const Symbol> needle) {
  std::vector<std::size_t> out;
  if (needle.empty() || needle.size() > hay.size()) return out;
  std::size_t i = 0;
  while (i + needle.size() <= hay.size()) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) {
      out.push_back(i);
      i += needle.size();
    } else {
      ++i;
    }
  }
  return out;
}

/// Interned corpus: every distinct symbol text mapped to a dense integer.
struct Interned {
  std::vector<std::uint32_t> ids;
  std::vector<std::string> texts;
  std::vector<std::size_t> counts;
};

inline Interned intern(std::span<const Symbol> seq) {
  Interned out;
  std::unordered_map<std::string, std::uint32_t> table;
  out.ids.reserve(seq.size());
  for (const auto& s : seq) {
    auto [it, fresh] = table.emplace(s.text(), static_cast<std::uint32_t>(out.texts.size()));
    if (fresh) {
      out.texts.push_back(s.text());
      out.counts.push_back(0);
    }
    out.ids.push_back(it->second);
    ++out.counts[it->second];
  }
  return out;
}

struct SeqHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Length of the longest substring occurring at least twice (overlap allowed).
inline std::size_t longest_repeat(const std::vector<std::uint32_t>& ids) {
  auto repeats = [&](std::size_t len) {
    std::unordered_set<std::vector<std::uint32_t>, SeqHash> seen;
    for (std::size_t i = 0; i + len <= ids.size(); ++i) {
      std::vector<std::uint32_t> key(ids.begin() + static_cast<std::ptrdiff_t>(i),
                                     ids.begin() + static_cast<std::ptrdiff_t>(i + len));
      if (!seen.insert(std::move(key)).second) return true;
    }
    return false;
  };
  std::size_t lo = 0, hi = ids.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (repeats(mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Chunk dictionary and discovery

struct ChunkEntry {
  std::string code;
  Pattern chunk;  // chunk.id == code
  std::int64_t count = 0;

  friend bool operator==(const ChunkEntry&, const ChunkEntry&) = default;
};

struct ChunkDictionary {
  std::vector<ChunkEntry> entries;

  bool empty() const noexcept { return entries.empty(); }
  std::size_t size() const noexcept { return entries.size(); }

  const ChunkEntry* find(std::string_view code) const {
    for (const auto& e : entries)
      if (e.code == code) return &e;
    return nullptr;
  }

  /// Store of the chunks with their corpus counts as frequencies; this is
  /// what code costs are computed against.
  PatternStore store() const {
    PatternStore s;
    for (const auto& e : entries) s.add(Pattern(e.code, e.chunk.symbols, std::max<std::int64_t>(e.count, 1)));
    return s;
  }

  friend bool operator==(const ChunkDictionary&, const ChunkDictionary&) = default;
};

/// Expected number of occurrences of an n-gram under a zero-order model of
/// the corpus: (N - n + 1) * prod p(symbol).
inline double expected_count(std::span<const std::uint32_t> gram, const detail::Interned& corpus) {
  const double n_total = static_cast<double>(corpus.ids.size());
  if (gram.size() > corpus.ids.size()) return 0.0;
  double expected = n_total - static_cast<double>(gram.size()) + 1.0;
  for (auto id : gram) expected *= static_cast<double>(corpus.counts[id]) / n_total;
  return expected;
}

/// Greedy longest-first discovery of repeated contiguous chunks. A chunk is
/// accepted when it has at least `min_count` non-overlapping occurrences on
/// positions not yet claimed by an earlier chunk, and when that count beats
/// the zero-order expectation. Among chunks of the same length the one with
/// the higher count wins, then the one occurring first. Codes are w1, w2, ...
inline ChunkDictionary discover_chunks(std::span<const Symbol> corpus, std::size_t min_len,
                                       std::size_t min_count) {
  if (min_len < 2) throw Error(ErrorCode::InvalidArgument, "min_len must be >= 2");
  if (min_count < 2) throw Error(ErrorCode::InvalidArgument, "min_count must be >= 2");

  ChunkDictionary dict;
  const auto interned = detail::intern(corpus);
  const auto& ids = interned.ids;
  const std::size_t n = ids.size();
  std::vector<bool> claimed(n, false);

  std::size_t len = std::min(detail::longest_repeat(ids), n / min_count);
  while (len >= min_len) {
    struct Candidate {
      std::vector<std::uint32_t> gram;
      std::vector<std::size_t> starts;
    };
    std::unordered_map<std::vector<std::uint32_t>, std::vector<std::size_t>, detail::SeqHash> grams;
    std::vector<std::vector<std::uint32_t>> order;  // first-occurrence order
    std::size_t free_run = 0;
    for (std::size_t i = 0; i < n; ++i) {
      free_run = claimed[i] ? 0 : free_run + 1;
      if (free_run < len) continue;
      std::size_t start = i + 1 - len;
      std::vector<std::uint32_t> key(ids.begin() + static_cast<std::ptrdiff_t>(start),
                                     ids.begin() + static_cast<std::ptrdiff_t>(i + 1));
      auto [it, fresh] = grams.try_emplace(key);
      if (fresh) order.push_back(std::move(key));
      auto& starts = it->second;
      if (starts.empty() || starts.back() + len <= start) starts.push_back(start);
    }

    std::optional<Candidate> best;
    for (const auto& key : order) {
      const auto& starts = grams.at(key);
      if (starts.size() < min_count) continue;
      if (!(static_cast<double>(starts.size()) > expected_count(key, interned))) continue;
      if (!best || starts.size() > best->starts.size()) best = Candidate{key, starts};
    }
    if (!best) {
      --len;
      continue;
    }
    for (auto s : best->starts)
      for (std::size_t k = 0; k < len; ++k) claimed[s + k] = true;

    SymbolSeq chunk;
    for (auto id : best->gram) chunk.emplace_back(interned.texts[id]);
    std::string code = "w" + std::to_string(dict.entries.size() + 1);
    dict.entries.push_back(
        ChunkEntry{code, Pattern(code, std::move(chunk), static_cast<std::int64_t>(best->starts.size())),
                   static_cast<std::int64_t>(best->starts.size())});
  }
  return dict;
}

// ---------------------------------------------------------------------------
// Basic unification

struct Unification {
  Pattern unified;  // frequency = number of occurrences merged
  SymbolSeq residue;
};

/// Merges all non-overlapping occurrences of `chunk` into a single counted
/// pattern. Positions are not kept, so this is lossy.
inline Unification unify_basic(std::span<const Symbol> corpus, const Pattern& chunk) {
  auto starts = detail::find_non_overlapping(corpus, chunk.symbols);
  if (starts.empty()) throw Error(ErrorCode::NotPresent, "chunk '" + chunk.id + "' does not occur");
  Unification out{Pattern(chunk.id, chunk.symbols, static_cast<std::int64_t>(starts.size())), {}};
  out.residue.reserve(corpus.size() - starts.size() * chunk.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < corpus.size();) {
    if (next < starts.size() && starts[next] == i) {
      i += chunk.size();
      ++next;
    } else {
      out.residue.push_back(corpus[i++]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chunking-with-codes

struct CodeRef {
  std::string code;
  friend bool operator==(const CodeRef&, const CodeRef&) = default;
};

using StreamToken = std::variant<CodeRef, Symbol>;

struct EncodedStream {
  ChunkDictionary dictionary;
  std::vector<StreamToken> tokens;

  std::size_t code_refs() const {
    return static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), [](const auto& t) {
      return std::holds_alternative<CodeRef>(t);
    }));
  }
};

/// Replaces chunk occurrences by codes, taking at each position the longest
/// chunk that matches there (earliest-discovered on ties).
inline EncodedStream chunk_encode(std::span<const Symbol> corpus, const ChunkDictionary& dict) {
  EncodedStream out{dict, {}};
  for (std::size_t i = 0; i < corpus.size();) {
    const ChunkEntry* best = nullptr;
    for (const auto& e : dict.entries) {
      const auto& c = e.chunk.symbols;
      if (c.empty() || i + c.size() > corpus.size()) continue;
      if (best && c.size() <= best->chunk.size()) continue;
      if (std::equal(c.begin(), c.end(), corpus.begin() + static_cast<std::ptrdiff_t>(i))) best = &e;
    }
    if (best) {
      out.tokens.emplace_back(CodeRef{best->code});
      i += best->chunk.size();
    } else {
      out.tokens.emplace_back(corpus[i++]);
    }
  }
  return out;
}

inline SymbolSeq chunk_decode(const EncodedStream& stream) {
  SymbolSeq out;
  for (const auto& tok : stream.tokens) {
    if (const auto* ref = std::get_if<CodeRef>(&tok)) {
      const auto* e = stream.dictionary.find(ref->code);
      if (!e) throw Error(ErrorCode::UnknownCode, "unknown code '" + ref->code + "'");
      out.insert(out.end(), e->chunk.symbols.begin(), e->chunk.symbols.end());
    } else {
      out.push_back(std::get<Symbol>(tok));
    }
  }
  return out;
}

/// Sum of code costs (against the dictionary's own store) plus the raw
/// fixed-length cost of every literal.
inline double encoded_cost(const EncodedStream& stream, std::size_t alphabet_size) {
  double bits = 0.0;
  const auto store = stream.dictionary.store();
  for (const auto& tok : stream.tokens) {
    if (const auto* ref = std::get_if<CodeRef>(&tok)) bits += code_cost(ref->code, store);
    else bits += symbol_cost_bits(alphabet_size);
  }
  return bits;
}

inline std::size_t alphabet_size_of(std::span<const Symbol> seq) {
  std::set<std::string_view> seen;
  for (const auto& s : seq) seen.insert(s.text());
  return seen.size();
}

// ---------------------------------------------------------------------------
// Run-length coding

struct Run {
  SymbolSeq block;
  std::optional<std::int64_t> count;  // nullopt: unbounded, display only

  bool unbounded() const noexcept { return !count.has_value(); }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Maximal munch over immediately repeated blocks. At each position the
/// block/count pair covering the most symbols wins, ties going to the higher
/// count (shorter block). Symbols not starting any repetition are gathered
/// into a single run of count 1.
inline std::vector<Run> rle_encode(std::span<const Symbol> seq) {
  std::vector<Run> runs;
  SymbolSeq pending;
  auto flush = [&] {
    if (!pending.empty()) runs.push_back(Run{std::move(pending), 1});
    pending.clear();
  };
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t best_len = 0, best_count = 0;
    for (std::size_t len = 1; 2 * len <= n - i; ++len) {
      std::size_t count = 1;
      while (i + (count + 1) * len <= n &&
             std::equal(seq.begin() + static_cast<std::ptrdiff_t>(i),
                        seq.begin() + static_cast<std::ptrdiff_t>(i + len),
                        seq.begin() + static_cast<std::ptrdiff_t>(i + count * len)))
        ++count;
      if (count < 2) continue;
      if (len * count > best_len * best_count) {
        best_len = len;
        best_count = count;
      }
    }
    if (best_count >= 2) {
      flush();
      runs.push_back(Run{SymbolSeq(seq.begin() + static_cast<std::ptrdiff_t>(i),
                                   seq.begin() + static_cast<std::ptrdiff_t>(i + best_len)),
                         static_cast<std::int64_t>(best_count)});
      i += best_len * best_count;
    } else {
      pending.push_back(seq[i++]);
    }
  }
  flush();
  return runs;
}

inline SymbolSeq rle_decode(std::span<const Run> runs) {
  SymbolSeq out;
  for (const auto& r : runs) {
    if (r.unbounded()) throw Error(ErrorCode::NotDecodable, "unbounded run (" + render(r.block) + ")*");
    if (*r.count < 1) throw Error(ErrorCode::NotDecodable, "run count < 1");
    for (std::int64_t k = 0; k < *r.count; ++k) out.insert(out.end(), r.block.begin(), r.block.end());
  }
  return out;
}

/// `(I N F O)x5`, or `(I N F O)*` for an unbounded run.
inline std::string render_run(const Run& r) {
  std::string out = "(" + render(r.block) + ")";
  out += r.unbounded() ? std::string("*") : "x" + std::to_string(*r.count);
  return out;
}

// ---------------------------------------------------------------------------
// Schema-plus-correction

struct Filler {
  std::string code;
  SymbolSeq symbols;
  friend bool operator==(const Filler&, const Filler&) = default;
};

struct Slot {
  std::string name;
  std::vector<Filler> fillers;
  friend bool operator==(const Slot&, const Slot&) = default;
};

using SchemaElement = std::variant<Symbol, Slot>;

class Schema {
 public:
  Schema(std::string id, std::vector<SchemaElement> elements)
      : id_(std::move(id)), elements_(std::move(elements)) {
    std::set<std::string> names;
    for (const auto& el : elements_) {
      const auto* slot = std::get_if<Slot>(&el);
      if (!slot) continue;
      if (!names.insert(slot->name).second)
        throw Error(ErrorCode::InvalidArgument, "duplicate slot '" + slot->name + "'");
      std::set<std::string> codes;
      for (const auto& f : slot->fillers) {
        if (f.symbols.empty()) throw Error(ErrorCode::InvalidArgument, "empty filler '" + f.code + "'");
        if (!codes.insert(f.code).second)
          throw Error(ErrorCode::InvalidArgument, "duplicate filler code '" + f.code + "' in " + slot->name);
      }
    }
  }

  const std::string& id() const noexcept { return id_; }
  const std::vector<SchemaElement>& elements() const noexcept { return elements_; }

  std::vector<const Slot*> slots() const {
    std::vector<const Slot*> out;
    for (const auto& el : elements_)
      if (const auto* s = std::get_if<Slot>(&el)) out.push_back(s);
    return out;
  }

 private:
  std::string id_;
  std::vector<SchemaElement> elements_;
};

using Corrections = std::map<std::string, std::string>;

inline Pattern schema_instantiate(const Schema& schema, const Corrections& corrections) {
  SymbolSeq out;
  std::size_t used = 0;
  for (const auto& el : schema.elements()) {
    if (const auto* sym = std::get_if<Symbol>(&el)) {
      out.push_back(*sym);
      continue;
    }
    const auto& slot = std::get<Slot>(el);
    auto it = corrections.find(slot.name);
    if (it == corrections.end()) throw Error(ErrorCode::BadCorrection, "no filler for slot " + slot.name);
    auto f = std::find_if(slot.fillers.begin(), slot.fillers.end(),
                          [&](const Filler& x) { return x.code == it->second; });
    if (f == slot.fillers.end())
      throw Error(ErrorCode::BadCorrection, "unknown filler '" + it->second + "' for slot " + slot.name);
    out.insert(out.end(), f->symbols.begin(), f->symbols.end());
    ++used;
  }
  if (used != corrections.size()) throw Error(ErrorCode::BadCorrection, "correction names an unknown slot");
  if (out.empty()) throw Error(ErrorCode::BadCorrection, "schema instance is empty");
  return Pattern(schema.id(), std::move(out));
}

/// Recovers the slot fillers of an instance. Fillers are tried in declared
/// order with backtracking; the first complete match is returned.
inline Corrections schema_encode(const Pattern& instance, const Schema& schema) {
  const auto& els = schema.elements();
  const auto& syms = instance.symbols;
  Corrections picked;
  auto match = [&](auto&& self, std::size_t e, std::size_t pos) -> bool {
    if (e == els.size()) return pos == syms.size();
    if (const auto* sym = std::get_if<Symbol>(&els[e])) {
      return pos < syms.size() && syms[pos] == *sym && self(self, e + 1, pos + 1);
    }
    const auto& slot = std::get<Slot>(els[e]);
    for (const auto& f : slot.fillers) {
      if (pos + f.symbols.size() > syms.size()) continue;
      if (!std::equal(f.symbols.begin(), f.symbols.end(), syms.begin() + static_cast<std::ptrdiff_t>(pos)))
        continue;
      picked[slot.name] = f.code;
      if (self(self, e + 1, pos + f.symbols.size())) return true;
    }
    picked.erase(slot.name);
    return false;
  };
  if (!match(match, 0, 0))
    throw Error(ErrorCode::NoSchemaMatch, "'" + render(syms) + "' does not fit schema " + schema.id());
  return picked;
}

/// Compact form, e.g. `MN: ST(st2) MC(mc5) PG(pg3)`.
inline std::string render_corrections(const Schema& schema, const Corrections& corrections) {
  std::string out;
  for (const auto& el : schema.elements()) {
    if (!out.empty()) out += ' ';
    if (const auto* sym = std::get_if<Symbol>(&el)) {
      out += sym->text();
    } else {
      const auto& slot = std::get<Slot>(el);
      auto it = corrections.find(slot.name);
      out += slot.name + "(" + (it == corrections.end() ? std::string("?") : it->second) + ")";
    }
  }
  return out;
}

}  // namespace icmup

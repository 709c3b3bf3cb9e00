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

// SP-multiple-alignment: one New pattern (row 0) and zero or more Old
// patterns (rows 1..k) laid out over a shared sequence of columns. Each
// column holds occurrences of a single symbol text; a column holding two or
// more rows is a hit. Every row reads left to right across the columns, so
// no two rows ever cross.
//
// Cost model:
//   encoding_cost = sum of code costs of the Old rows
//                 + raw cost of every New symbol that is not in a hit column
//   compression_difference = raw_cost(New) - encoding_cost
// Old-row symbols outside hit columns are free: they are predictions.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "icmup/error.hpp"
#include "icmup/pattern.hpp"

namespace icmup {

struct Cell {
  std::size_t row = 0;  // 0 = New, i = old_rows[i - 1]
  std::size_t pos = 0;  // index into that row's symbols
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct Column {
  std::string symbol;
  std::vector<Cell> cells;

  bool hit() const noexcept { return cells.size() >= 2; }
  bool has_row(std::size_t row) const noexcept {
    return std::any_of(cells.begin(), cells.end(), [row](const Cell& c) { return c.row == row; });
  }
  friend bool operator==(const Column&, const Column&) = default;
};

struct Alignment {
  Pattern new_row;
  std::vector<Pattern> old_rows;
  std::vector<Column> columns;
  double encoding_cost = 0.0;
  double compression_difference = 0.0;

  std::size_t rows() const noexcept { return old_rows.size() + 1; }

  const Pattern& row(std::size_t r) const { return r == 0 ? new_row : old_rows.at(r - 1); }

  std::size_t hit_columns() const {
    return static_cast<std::size_t>(std::count_if(columns.begin(), columns.end(), [](const Column& c) { return c.hit(); }));
  }

  /// New symbols sitting in a hit column.
  std::size_t new_hits() const {
    return static_cast<std::size_t>(std::count_if(columns.begin(), columns.end(), [](const Column& c) {
      return c.hit() && c.has_row(0);
    }));
  }

  std::vector<std::string> old_ids() const {
    std::vector<std::string> ids;
    for (const auto& p : old_rows) ids.push_back(p.id);
    return ids;
  }

  std::vector<std::string> sorted_old_ids() const {
    auto ids = old_ids();
    std::sort(ids.begin(), ids.end());
    return ids;
  }
};

/// The alignment with no Old rows: one column per New symbol.
inline Alignment literal_alignment(const Pattern& new_pattern) {
  Alignment al;
  al.new_row = new_pattern;
  al.new_row.kind = PatternKind::New;
  for (std::size_t i = 0; i < new_pattern.size(); ++i)
    al.columns.push_back(Column{new_pattern.symbols[i].text(), {Cell{0, i}}});
  return al;
}

/// Adds `pattern` as a new row. Its symbols may join columns that still hold
/// a single unmatched symbol of the same text; the placement maximises New
/// symbols brought into hits first and other hits second. Unmatched symbols
/// of the new row get fresh columns: a leading run sits just before the
/// first joined column, later runs just after the preceding joined column.
/// Returns nothing when the row would join no column at all.
inline std::optional<Alignment> extend_alignment(const Alignment& al, const Pattern& pattern) {
  const auto& cols = al.columns;
  const auto& syms = pattern.symbols;
  const std::size_t n = cols.size(), m = syms.size();
  const long new_weight = static_cast<long>(n + m + 1);

  auto weight = [&](std::size_t i, std::size_t j) -> long {
    const auto& c = cols[j];
    if (c.cells.size() != 1 || c.symbol != syms[i].text()) return 0;
    return c.cells.front().row == 0 ? new_weight : 1;
  };

  // best[i][j]: optimum for syms[i..] against cols[j..]
  std::vector<std::vector<long>> best(m + 1, std::vector<long>(n + 1, 0));
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      long v = std::max(best[i + 1][j], best[i][j + 1]);
      if (long w = weight(i, j); w > 0) v = std::max(v, w + best[i + 1][j + 1]);
      best[i][j] = v;
    }
  }
  if (best[0][0] == 0) return std::nullopt;

  // Leftmost traceback: take a match when optimal, else drop the pattern
  // symbol, else drop the column.
  std::vector<std::optional<std::size_t>> match_of(m);
  for (std::size_t i = 0, j = 0; i < m && j < n;) {
    long w = weight(i, j);
    if (w > 0 && w + best[i + 1][j + 1] == best[i][j]) {
      match_of[i] = j;
      ++i;
      ++j;
    } else if (best[i + 1][j] == best[i][j]) {
      ++i;
    } else {
      ++j;
    }
  }

  const std::size_t row = al.rows();
  std::vector<std::vector<std::size_t>> before(n), after(n);
  std::optional<std::size_t> prev;
  std::vector<std::size_t> leading;
  for (std::size_t i = 0; i < m; ++i) {
    if (match_of[i]) {
      if (!prev) {
        before[*match_of[i]] = leading;
      }
      prev = match_of[i];
    } else if (!prev) {
      leading.push_back(i);
    } else {
      after[*prev].push_back(i);
    }
  }

  Alignment out;
  out.new_row = al.new_row;
  out.old_rows = al.old_rows;
  out.old_rows.push_back(pattern);
  out.old_rows.back().kind = PatternKind::Old;
  out.columns.reserve(n + m);
  std::vector<std::optional<std::size_t>> joined(n);
  for (std::size_t i = 0; i < m; ++i)
    if (match_of[i]) joined[*match_of[i]] = i;
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i : before[j]) out.columns.push_back(Column{syms[i].text(), {Cell{row, i}}});
    out.columns.push_back(cols[j]);
    if (joined[j]) out.columns.back().cells.push_back(Cell{row, *joined[j]});
    for (auto i : after[j]) out.columns.push_back(Column{syms[i].text(), {Cell{row, i}}});
  }
  return out;
}

/// Two-row alignment with the greatest number of hits (the LCS of the two
/// symbol sequences). Costs are left at zero; see score_alignment.
inline Alignment align_pair(const Pattern& a, const Pattern& b) {
  auto lit = literal_alignment(a);
  if (auto ext = extend_alignment(lit, b)) return *ext;
  // Nothing in common: b's symbols follow a's.
  Alignment al = lit;
  al.old_rows.push_back(b);
  al.old_rows.back().kind = PatternKind::Old;
  for (std::size_t i = 0; i < b.size(); ++i) al.columns.push_back(Column{b.symbols[i].text(), {Cell{1, i}}});
  return al;
}

inline double encoding_cost(const Alignment& al, const PatternStore& store, std::size_t alphabet_size) {
  double bits = 0.0;
  for (const auto& p : al.old_rows) bits += code_cost(p.id, store);
  const std::size_t unmatched = al.new_row.size() - al.new_hits();
  bits += static_cast<double>(unmatched) * symbol_cost_bits(alphabet_size);
  return bits;
}

/// Fills in encoding_cost and compression_difference.
inline void score_alignment(Alignment& al, const PatternStore& store, std::size_t alphabet_size) {
  al.encoding_cost = encoding_cost(al, store, alphabet_size);
  al.compression_difference = raw_cost(al.new_row, alphabet_size) - al.encoding_cost;
}

/// Ranking order: higher compression difference, then fewer Old rows, then
/// the lexicographically smaller sorted Old-id sequence.
inline bool ranks_before(const Alignment& a, const Alignment& b) {
  constexpr double eps = 1e-9;
  if (std::abs(a.compression_difference - b.compression_difference) > eps)
    return a.compression_difference > b.compression_difference;
  if (a.old_rows.size() != b.old_rows.size()) return a.old_rows.size() < b.old_rows.size();
  return a.sorted_old_ids() < b.sorted_old_ids();
}

/// p_i = 2^-cost_i / sum_j 2^-cost_j, computed relative to the cheapest.
inline std::vector<double> alignment_probabilities(const std::vector<Alignment>& ranking) {
  if (ranking.empty()) throw Error(ErrorCode::EmptyRanking, "no alignments to weigh");
  double lo = ranking.front().encoding_cost;
  for (const auto& a : ranking) lo = std::min(lo, a.encoding_cost);
  std::vector<double> p;
  p.reserve(ranking.size());
  double sum = 0.0;
  for (const auto& a : ranking) {
    p.push_back(std::exp2(-(a.encoding_cost - lo)));
    sum += p.back();
  }
  for (auto& x : p) x /= sum;
  return p;
}

struct AlignmentRanking {
  std::vector<Alignment> alignments;
  std::vector<double> probabilities;
};

struct SearchOptions {
  std::size_t beam = 50;
  std::size_t max_old_rows = 12;
};

/// Beam search for good alignments of `new_pattern` against the store.
///
/// Seeds are the literal alignment and New aligned with each Old pattern.
/// Each round extends every kept candidate by every unused Old pattern that
/// joins some still-unmatched column (of New or of an Old row already
/// placed), and keeps the best `beam`. The search ends when a round improves
/// no candidate, when the kept set stops changing, or when every kept
/// candidate has `max_old_rows` rows.
inline AlignmentRanking build_alignments(const Pattern& new_pattern, const PatternStore& store,
                                         SearchOptions opts = {}) {
  if (opts.beam < 1) throw Error(ErrorCode::InvalidArgument, "beam must be >= 1");
  const std::size_t alphabet = store.alphabet_size_with(new_pattern.symbols);
  const auto patterns = store.patterns();

  using Key = std::vector<std::string>;
  auto add_to_pool = [](std::map<Key, Alignment>& pool, Alignment al) {
    auto key = al.sorted_old_ids();
    auto it = pool.find(key);
    if (it == pool.end()) pool.emplace(std::move(key), std::move(al));
    else if (ranks_before(al, it->second)) it->second = std::move(al);
  };
  auto top = [&](const std::map<Key, Alignment>& pool) {
    std::vector<Alignment> v;
    for (const auto& [_, al] : pool) v.push_back(al);
    std::stable_sort(v.begin(), v.end(), ranks_before);
    if (v.size() > opts.beam) v.resize(opts.beam);
    return v;
  };

  auto extensions = [&](const Alignment& al) {
    std::vector<Alignment> out;
    if (al.old_rows.size() >= opts.max_old_rows) return out;
    std::set<std::string> used;
    for (const auto& p : al.old_rows) used.insert(p.id);
    std::set<std::string> open_symbols;
    for (const auto& c : al.columns)
      if (c.cells.size() == 1) open_symbols.insert(c.symbol);
    for (const auto* p : patterns) {
      if (used.contains(p->id)) continue;
      bool touches = std::any_of(p->symbols.begin(), p->symbols.end(),
                                 [&](const Symbol& s) { return open_symbols.contains(s.text()); });
      if (!touches) continue;
      if (auto ext = extend_alignment(al, *p)) {
        score_alignment(*ext, store, alphabet);
        out.push_back(std::move(*ext));
      }
    }
    return out;
  };

  std::map<Key, Alignment> pool;
  auto literal = literal_alignment(new_pattern);
  score_alignment(literal, store, alphabet);
  for (auto& e : extensions(literal)) add_to_pool(pool, std::move(e));
  add_to_pool(pool, std::move(literal));
  auto kept = top(pool);

  for (;;) {
    bool improved = false;
    std::map<Key, Alignment> next;
    for (const auto& al : kept) add_to_pool(next, al);
    for (const auto& al : kept) {
      for (auto& e : extensions(al)) {
        if (e.compression_difference > al.compression_difference + 1e-9) improved = true;
        add_to_pool(next, std::move(e));
      }
    }
    auto fresh = top(next);
    bool same = fresh.size() == kept.size() &&
                std::equal(fresh.begin(), fresh.end(), kept.begin(), [](const Alignment& a, const Alignment& b) {
                  return a.old_ids() == b.old_ids() && a.columns == b.columns;
                });
    kept = std::move(fresh);
    if (!improved || same) break;
  }

  AlignmentRanking ranking;
  ranking.alignments = std::move(kept);
  ranking.probabilities = alignment_probabilities(ranking.alignments);
  return ranking;
}

struct Prediction {
  std::string row_id;
  Symbol symbol;
  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Old-row symbols in non-hit columns, in column order.
inline std::vector<Prediction> infer_unmatched(const Alignment& al) {
  std::vector<Prediction> out;
  for (const auto& c : al.columns) {
    if (c.hit()) continue;
    for (const auto& cell : c.cells)
      if (cell.row != 0) out.push_back(Prediction{al.row(cell.row).id, Symbol(c.symbol)});
  }
  return out;
}

struct RetrievalHit {
  std::string id;
  double compression_difference = 0.0;
};

/// Store patterns sharing at least one symbol with the query, ranked by
/// pairwise compression difference (ties by id).
inline std::vector<RetrievalHit> retrieve(const Pattern& query, const PatternStore& store, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<RetrievalHit> hits;
  if (store.empty()) return hits;
  const std::size_t alphabet = store.alphabet_size_with(query.symbols);
  const auto lit = literal_alignment(query);
  for (const auto* p : store.patterns()) {
    auto al = extend_alignment(lit, *p);
    if (!al) continue;
    score_alignment(*al, store, alphabet);
    hits.push_back(RetrievalHit{p->id, al->compression_difference});
  }
  std::sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (std::abs(a.compression_difference - b.compression_difference) > 1e-9)
      return a.compression_difference > b.compression_difference;
    return a.id < b.id;
  });
  if (hits.size() > k) hits.resize(k);
  return hits;
}

/// Bracketed rendering of the New symbols with every Old row as
/// `<id>( ... )` around the New symbols lying inside its column span.
/// Spans are nested by containment; equal spans put the row with the wider
/// column extent outside. A span that would cross its enclosing span is cut
/// at the enclosing span's end. Rows covering no New symbol render as
/// `<id>( )` where they start.
inline std::string parse_render(const Alignment& al) {
  // New position of each column: index of the next New symbol at or after it.
  const std::size_t ncols = al.columns.size();
  std::vector<std::size_t> new_before(ncols + 1, 0);  // New symbols in columns [0, c)
  for (std::size_t c = 0; c < ncols; ++c) new_before[c + 1] = new_before[c] + (al.columns[c].has_row(0) ? 1 : 0);

  struct Span {
    std::size_t row, start, end, first_col, last_col;
  };
  std::vector<Span> spans;
  for (std::size_t r = 1; r < al.rows(); ++r) {
    std::optional<std::size_t> first, last;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (!al.columns[c].has_row(r)) continue;
      if (!first) first = c;
      last = c;
    }
    if (!first) continue;
    spans.push_back(Span{r, new_before[*first], new_before[*last + 1], *first, *last});
  }
  std::stable_sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.end != b.end) return a.end > b.end;
    if (a.last_col - a.first_col != b.last_col - b.first_col) return a.last_col - a.first_col > b.last_col - b.first_col;
    return a.row < b.row;
  });

  std::vector<std::string> tokens;
  std::vector<std::size_t> open_ends;
  const std::size_t n = al.new_row.size();
  std::size_t next_span = 0;
  for (std::size_t pos = 0; pos <= n; ++pos) {
    while (!open_ends.empty() && open_ends.back() <= pos) {
      tokens.emplace_back(")");
      open_ends.pop_back();
    }
    for (; next_span < spans.size() && spans[next_span].start == pos; ++next_span) {
      auto sp = spans[next_span];
      if (!open_ends.empty()) sp.end = std::min(sp.end, open_ends.back());
      tokens.push_back(al.row(sp.row).id + "(");
      if (sp.end <= pos) tokens.emplace_back(")");
      else open_ends.push_back(sp.end);
    }
    if (pos < n) tokens.push_back(al.new_row.symbols[pos].text());
  }
  while (!open_ends.empty()) {
    tokens.emplace_back(")");
    open_ends.pop_back();
  }
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

/// One line per column: `<index>\t<symbol>\t<row ids>`, row ids in row order.
inline std::string dump_columns(const Alignment& al) {
  std::string out;
  for (std::size_t c = 0; c < al.columns.size(); ++c) {
    const auto& col = al.columns[c];
    std::vector<std::size_t> rows;
    for (const auto& cell : col.cells) rows.push_back(cell.row);
    std::sort(rows.begin(), rows.end());
    out += std::to_string(c) + '\t' + col.symbol + '\t';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) out += ',';
      out += al.row(rows[i]).id;
    }
    out += '\n';
  }
  return out;
}

}  // namespace icmup

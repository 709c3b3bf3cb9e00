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
#include <numeric>
#include <random>

#include "icmup/alignment.hpp"
#include "icmup/io.hpp"
#include "oracles.hpp"

using namespace icmup;

namespace {

const std::string kData = ICMUP_DATA_DIR;
const char* kKittens = "t w o k i t t e n s p l a y";

Pattern new_of(const char* text) { return Pattern("New", symbols_of(text), 1, PatternKind::New); }

PatternStore kittens() { return parse_grammar(read_file(kData + "/kittens.grammar")); }

std::vector<std::string> strings(const SymbolSeq& s) {
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(x.text());
  return out;
}

/// Structural invariants every alignment must satisfy.
void expect_well_formed(const Alignment& al) {
  std::vector<std::vector<bool>> placed(al.rows());
  for (std::size_t r = 0; r < al.rows(); ++r) placed[r].assign(al.row(r).size(), false);
  std::vector<long> last(al.rows(), -1);
  for (const auto& col : al.columns) {
    std::set<std::size_t> rows;
    for (const auto& cell : col.cells) {
      ASSERT_LT(cell.row, al.rows());
      ASSERT_LT(cell.pos, al.row(cell.row).size());
      EXPECT_EQ(al.row(cell.row).symbols[cell.pos].text(), col.symbol);
      EXPECT_TRUE(rows.insert(cell.row).second) << "row twice in one column";
      EXPECT_FALSE(placed[cell.row][cell.pos]) << "symbol placed twice";
      placed[cell.row][cell.pos] = true;
      EXPECT_GT(static_cast<long>(cell.pos), last[cell.row]) << "row order broken";
      last[cell.row] = static_cast<long>(cell.pos);
    }
  }
  for (const auto& row : placed)
    for (bool b : row) EXPECT_TRUE(b) << "symbol missing from every column";
}

}  // namespace

TEST(AlignPair, Identical) {
  auto al = align_pair(Pattern("a", symbols_of("x y z")), Pattern("b", symbols_of("x y z")));
  EXPECT_EQ(al.hit_columns(), 3u);
  expect_well_formed(al);
}

TEST(AlignPair, Dna) {
  auto al = align_pair(Pattern("a", symbols_of("G G A G")), Pattern("b", symbols_of("G G C G")));
  EXPECT_EQ(al.hit_columns(), 3u);
  const char* r1 = "G G A G C A G G G A G G A T G G G G A";
  const char* r2 = "G G G G C C C A G G G A G G A G G C G G G A";
  auto dna = align_pair(Pattern("a", symbols_of(r1)), Pattern("b", symbols_of(r2)));
  EXPECT_EQ(dna.hit_columns(), oracle::lcs(strings(symbols_of(r1)), strings(symbols_of(r2))));
  expect_well_formed(dna);
}

TEST(AlignPair, MatchesLcsOracle) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto a = oracle::random_word(rng, 40, 1 + i % 5, 1);
    auto b = oracle::random_word(rng, 40, 1 + i % 5, 1);
    SymbolSeq sa, sb;
    for (auto& x : a) sa.emplace_back(x);
    for (auto& x : b) sb.emplace_back(x);
    auto al = align_pair(Pattern("A", sa), Pattern("B", sb));
    ASSERT_EQ(al.hit_columns(), oracle::lcs(a, b)) << render(sa) << " | " << render(sb);
    expect_well_formed(al);
  }
}

TEST(Build, KittensBestAlignment) {
  auto store = kittens();
  auto np = new_of(kKittens);
  auto ranking = build_alignments(np, store, {});
  const auto& best = ranking.alignments.front();
  EXPECT_EQ(best.new_hits(), 14u);
  EXPECT_GT(best.compression_difference, 0.0);
  auto ids = best.sorted_old_ids();
  for (auto word : {"D4", "Nr5", "Vr1"}) EXPECT_NE(std::find(ids.begin(), ids.end(), word), ids.end()) << word;
  EXPECT_LT(best.encoding_cost, raw_cost(np.symbols, store.alphabet_size_with(np.symbols)));
  EXPECT_NEAR(std::accumulate(ranking.probabilities.begin(), ranking.probabilities.end(), 0.0), 1.0, 1e-9);
  for (const auto& al : ranking.alignments) expect_well_formed(al);
}

TEST(Build, SingleStoredPattern) {
  PatternStore s;
  s.add(Pattern("P1", symbols_of("a b")));
  auto ranking = build_alignments(new_of("a b"), s, {});
  const auto& best = ranking.alignments.front();
  EXPECT_EQ(best.old_ids(), (std::vector<std::string>{"P1"}));
  EXPECT_EQ(best.new_hits(), 2u);
  EXPECT_EQ(parse_render(best), "P1( a b )");
}

TEST(Build, NothingShared) {
  PatternStore s;
  s.add(Pattern("P1", symbols_of("x y")));
  auto ranking = build_alignments(new_of("a b"), s, {});
  ASSERT_EQ(ranking.alignments.size(), 1u);
  EXPECT_TRUE(ranking.alignments[0].old_rows.empty());
  EXPECT_DOUBLE_EQ(ranking.alignments[0].compression_difference, 0.0);
  EXPECT_DOUBLE_EQ(ranking.probabilities[0], 1.0);
}

TEST(Build, EmptyStore) {
  auto ranking = build_alignments(new_of("a b"), PatternStore{}, {});
  ASSERT_EQ(ranking.alignments.size(), 1u);
  EXPECT_DOUBLE_EQ(ranking.probabilities[0], 1.0);
}

TEST(Build, TwoEqualMatchesSplitProbability) {
  // both cover New fully; equal frequency and equal code cost
  PatternStore t;
  t.add(Pattern("P1", symbols_of("S a b c #S")));
  t.add(Pattern("P2", symbols_of("T a b c #T")));
  auto ranking = build_alignments(new_of("a b c"), t, {});
  ASSERT_GE(ranking.alignments.size(), 2u);
  EXPECT_DOUBLE_EQ(ranking.probabilities[0], ranking.probabilities[1]);
  const std::vector<Alignment> top2(ranking.alignments.begin(), ranking.alignments.begin() + 2);
  const auto p = alignment_probabilities(top2);
  EXPECT_NEAR(p[0], 0.5, 1e-9);
  EXPECT_NEAR(p[1], 0.5, 1e-9);
}

TEST(Score, LiteralAndSingleRow) {
  PatternStore s;
  s.add(Pattern("P1", symbols_of("a b"), 3));
  s.add(Pattern("P2", symbols_of("c"), 1));
  auto np = new_of("a b");
  auto lit = literal_alignment(np);
  score_alignment(lit, s, 3);
  EXPECT_DOUBLE_EQ(lit.encoding_cost, raw_cost(np.symbols, 3));
  EXPECT_DOUBLE_EQ(lit.compression_difference, 0.0);
  auto one = *extend_alignment(lit, s.at("P1"));
  score_alignment(one, s, 3);
  EXPECT_NEAR(one.encoding_cost, -std::log2(3.0 / 4.0), 1e-12);
  EXPECT_NEAR(one.compression_difference, raw_cost(np.symbols, 3) - one.encoding_cost, 1e-12);
}

TEST(Probabilities, Normalisation) {
  Alignment a, b;
  a.encoding_cost = 5;
  EXPECT_EQ(alignment_probabilities({a}), (std::vector<double>{1.0}));
  b.encoding_cost = 5;
  auto p = alignment_probabilities({a, b});
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  b.encoding_cost = 6;
  p = alignment_probabilities({a, b});
  EXPECT_NEAR(p[0], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(p[1], 1.0 / 3.0, 1e-12);
  EXPECT_THROW(alignment_probabilities({}), Error);
}

TEST(Inference, UnmatchedOldSymbols) {
  PatternStore s;
  s.add(Pattern("Nr5", symbols_of("Nr 5 k i t t e n #Nr")));
  auto al = *extend_alignment(literal_alignment(new_of("k i t t e n")), s.at("Nr5"));
  std::set<std::string> predicted;
  for (const auto& p : infer_unmatched(al)) predicted.insert(p.symbol.text());
  EXPECT_EQ(predicted, (std::set<std::string>{"Nr", "5", "#Nr"}));
  EXPECT_TRUE(infer_unmatched(literal_alignment(new_of("a"))).empty());
  auto full = align_pair(Pattern("a", symbols_of("x y")), Pattern("b", symbols_of("x y")));
  EXPECT_TRUE(infer_unmatched(full).empty());
}

TEST(Retrieve, Ranking) {
  auto store = kittens();
  auto hits = retrieve(new_of("k i t t e n"), store, 3);
  ASSERT_FALSE(hits.empty());
  EXPECT_EQ(hits[0].id, "Nr5");
  auto exact = retrieve(new_of("V Vp Vr #Vr #V"), store, 1);
  ASSERT_EQ(exact.size(), 1u);
  EXPECT_EQ(exact[0].id, "V");
  EXPECT_TRUE(retrieve(new_of("a"), PatternStore{}, 3).empty());
}

TEST(ParseRender, Literal) { EXPECT_EQ(parse_render(literal_alignment(new_of("a b c"))), "a b c"); }

TEST(ParseRender, KittensFullStructure) {
  auto store = kittens();
  auto al = literal_alignment(new_of(kKittens));
  for (auto id : {"Nr5", "N", "D4", "NP", "Vr1", "V", "S", "NumPL"}) {
    auto next = extend_alignment(al, store.at(id));
    ASSERT_TRUE(next) << id;
    al = *next;
  }
  expect_well_formed(al);
  EXPECT_EQ(al.new_hits(), 14u);
  EXPECT_EQ(parse_render(al),
            "S( NumPL( NP( D4( t w o ) N( Nr5( k i t t e n ) s ) ) ) V( Vr1( p l a y ) ) )");
}

TEST(DumpColumns, Format) {
  PatternStore s;
  s.add(Pattern("P1", symbols_of("a b")));
  auto al = *extend_alignment(literal_alignment(new_of("a b")), s.at("P1"));
  EXPECT_EQ(dump_columns(al), "0\ta\tNew,P1\n1\tb\tNew,P1\n");
}

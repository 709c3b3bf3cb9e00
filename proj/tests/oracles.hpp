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

// Reference implementations for tests. None of these use the library: they
// work on plain strings and integers.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Classic O(nm) longest common subsequence length.
inline std::size_t lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
  return t[a.size()][b.size()];
}

/// Distances of the falling-body table as printed to one decimal place.
inline const std::array<const char*, 17>& table1_distances() {
  static const std::array<const char*, 17> rows = {"0.0",   "4.9",   "19.6",  "44.1",  "78.5",  "122.6",
                                                   "176.5", "240.3", "313.8", "397.2", "490.3", "593.3",
                                                   "706.1", "828.7", "961.1", "1103.2", "1255.3"};
  return rows;
}

// ---------------------------------------------------------------------------
// Class hierarchies as index lists

struct Cls {
  std::string name;
  std::vector<std::string> own;
  std::vector<int> parents;
};

inline std::set<std::string> inherited_closure(const std::vector<Cls>& h, int c) {
  std::set<std::string> out;
  std::vector<bool> seen(h.size(), false);
  std::function<void(int)> walk = [&](int k) {
    if (seen[static_cast<std::size_t>(k)]) return;
    seen[static_cast<std::size_t>(k)] = true;
    for (const auto& a : h[static_cast<std::size_t>(k)].own) out.insert(a);
    for (int p : h[static_cast<std::size_t>(k)].parents) walk(p);
  };
  walk(c);
  return out;
}

/// Writes both renderings out as token lists and counts the tokens.
/// Flat: `name attr...` for each class, attributes fully resolved.
/// Hierarchical: `name attr... ^parent...` with own attributes only.
inline std::pair<std::size_t, std::size_t> rendered_symbol_counts(const std::vector<Cls>& h) {
  std::vector<std::string> flat, tree;
  for (std::size_t c = 0; c < h.size(); ++c) {
    flat.push_back(h[c].name);
    for (const auto& a : inherited_closure(h, static_cast<int>(c))) flat.push_back(a);
    tree.push_back(h[c].name);
    for (const auto& a : h[c].own) tree.push_back(a);
    for (int p : h[c].parents) tree.push_back("^" + h[static_cast<std::size_t>(p)].name);
  }
  return {flat.size(), tree.size()};
}

inline bool is_ancestor(const std::vector<Cls>& h, int anc, int c) {
  for (int p : h[static_cast<std::size_t>(c)].parents)
    if (p == anc || is_ancestor(h, anc, p)) return true;
  return false;
}

/// Two distinct leaves below one class that carries at least two attributes.
inline bool has_shared_inheritance(const std::vector<Cls>& h) {
  const int n = static_cast<int>(h.size());
  std::vector<bool> has_child(h.size(), false);
  for (const auto& c : h)
    for (int p : c.parents) has_child[static_cast<std::size_t>(p)] = true;
  for (int x = 0; x < n; ++x) {
    if (inherited_closure(h, x).size() < 2) continue;
    int leaves = 0;
    for (int l = 0; l < n; ++l)
      if (!has_child[static_cast<std::size_t>(l)] && is_ancestor(h, x, l)) ++leaves;
    if (leaves >= 2) return true;
  }
  return false;
}

/// Every hierarchy of 1..max_nodes classes whose parents precede them in
/// index order (every DAG has such a labelling), with each class owning
/// 0..max_own fresh attributes and every class with children owning at
/// least one. Visits each one once.
inline void enumerate_hierarchies(int max_nodes, int max_own, const std::function<void(const std::vector<Cls>&)>& visit) {
  for (int n = 1; n <= max_nodes; ++n) {
    const int edge_bits = n * (n - 1) / 2;
    for (std::uint32_t edges = 0; edges < (1u << edge_bits); ++edges) {
      std::vector<Cls> h(static_cast<std::size_t>(n));
      int bit = 0;
      std::vector<bool> has_child(static_cast<std::size_t>(n), false);
      for (int c = 0; c < n; ++c) {
        h[static_cast<std::size_t>(c)].name = "c" + std::to_string(c);
        for (int p = 0; p < c; ++p, ++bit)
          if (edges >> bit & 1u) {
            h[static_cast<std::size_t>(c)].parents.push_back(p);
            has_child[static_cast<std::size_t>(p)] = true;
          }
      }
      std::vector<int> own(static_cast<std::size_t>(n), 0);
      for (int c = 0; c < n; ++c) own[static_cast<std::size_t>(c)] = has_child[static_cast<std::size_t>(c)] ? 1 : 0;
      for (;;) {
        int next_attr = 0;
        for (int c = 0; c < n; ++c) {
          auto& cls = h[static_cast<std::size_t>(c)];
          cls.own.clear();
          for (int k = 0; k < own[static_cast<std::size_t>(c)]; ++k) cls.own.push_back("a" + std::to_string(next_attr++));
        }
        visit(h);
        int c = 0;
        for (; c < n; ++c) {
          auto& o = own[static_cast<std::size_t>(c)];
          if (o < max_own) {
            ++o;
            break;
          }
          o = has_child[static_cast<std::size_t>(c)] ? 1 : 0;
        }
        if (c == n) break;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Turing machine, written as a plain switch over the four transitions

struct TmConfig {
  std::string state;
  long head;
  std::string tape;
  friend bool operator==(const TmConfig&, const TmConfig&) = default;
};

/// Configurations visited by the increment machine, starting configuration
/// included, until no transition applies.
inline std::vector<TmConfig> increment_machine(std::string tape, long head) {
  std::vector<TmConfig> out{{"s0", head, tape}};
  for (int guard = 0; guard < 100000; ++guard) {
    auto cur = out.back();
    if (cur.head < 0) break;
    if (static_cast<std::size_t>(cur.head) >= cur.tape.size()) cur.tape.resize(static_cast<std::size_t>(cur.head) + 1, '0');
    char r = cur.tape[static_cast<std::size_t>(cur.head)];
    if (cur.state == "s0" && r == '1') ++cur.head;
    else if (cur.state == "s0" && r == '0') { cur.state = "s1"; cur.tape[static_cast<std::size_t>(cur.head)] = '1'; }
    else if (cur.state == "s1" && r == '1') --cur.head;
    else if (cur.state == "s1" && r == '0') { cur.state = "s2"; ++cur.head; }
    else break;
    out.push_back(cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random helpers

inline std::vector<std::string> random_word(std::mt19937& rng, std::size_t max_len, int alphabet,
                                            std::size_t min_len = 0) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<int> sym(0, alphabet - 1);
  std::vector<std::string> w(len(rng));
  for (auto& s : w) s = std::string(1, static_cast<char>('a' + sym(rng)));
  return w;
}

}  // namespace oracle

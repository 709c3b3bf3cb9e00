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

// Class-inclusion hierarchies (with cross-classification) and part-whole
// hierarchies. Attributes are atomic presence symbols; there is no
// overriding, so inheritance is plain set union over ancestors.

#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "icmup/error.hpp"
#include "icmup/pattern.hpp"

namespace icmup {

struct ClassNode {
  std::string name;
  std::set<Symbol> attributes;
  std::vector<std::string> parents;
  std::vector<std::string> parts;
};

class Hierarchy {
 public:
  Hierarchy() = default;

  explicit Hierarchy(std::vector<ClassNode> nodes) {
    for (auto& n : nodes) {
      if (n.name.empty()) throw Error(ErrorCode::InvalidArgument, "class with empty name");
      std::string name = n.name;
      if (!nodes_.emplace(name, std::move(n)).second)
        throw Error(ErrorCode::DuplicateId, "duplicate class '" + name + "'");
    }
    for (const auto& [name, n] : nodes_) {
      for (const auto& p : n.parents)
        if (!nodes_.contains(p)) throw Error(ErrorCode::UnknownClass, name + ": unknown parent '" + p + "'");
      for (const auto& p : n.parts)
        if (!nodes_.contains(p)) throw Error(ErrorCode::UnknownClass, name + ": unknown part '" + p + "'");
    }
    check_acyclic(&ClassNode::parents, "parents");
    check_acyclic(&ClassNode::parts, "parts");
  }

  const ClassNode& at(const std::string& name) const {
    auto it = nodes_.find(name);
    if (it == nodes_.end()) throw Error(ErrorCode::UnknownClass, "unknown class '" + name + "'");
    return it->second;
  }

  bool contains(const std::string& name) const { return nodes_.contains(name); }
  const std::map<std::string, ClassNode>& nodes() const noexcept { return nodes_; }

  /// Classes that no other class names as a parent.
  std::vector<std::string> leaves() const {
    std::set<std::string> has_child;
    for (const auto& [_, n] : nodes_)
      for (const auto& p : n.parents) has_child.insert(p);
    std::vector<std::string> out;
    for (const auto& [name, _] : nodes_)
      if (!has_child.contains(name)) out.push_back(name);
    return out;
  }

 private:
  void check_acyclic(std::vector<std::string> ClassNode::*edges, const char* what) const {
    enum class Mark { None, Active, Done };
    std::map<std::string, Mark> mark;
    auto visit = [&](auto&& self, const std::string& name) -> void {
      auto& m = mark[name];
      if (m == Mark::Done) return;
      if (m == Mark::Active) throw Error(ErrorCode::CyclicHierarchy, std::string("cycle under ") + what + " at '" + name + "'");
      m = Mark::Active;
      for (const auto& next : nodes_.at(name).*edges) self(self, next);
      mark[name] = Mark::Done;
    };
    for (const auto& [name, _] : nodes_) visit(visit, name);
  }

  std::map<std::string, ClassNode> nodes_;
};

/// Own attributes joined with those of every ancestor. An attribute reached
/// along several paths appears once.
inline std::set<Symbol> resolve_attributes(const Hierarchy& h, const std::string& name) {
  std::set<Symbol> out;
  std::set<std::string> seen;
  std::vector<std::string> stack{name};
  h.at(name);
  while (!stack.empty()) {
    auto cur = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    const auto& node = h.at(cur);
    out.insert(node.attributes.begin(), node.attributes.end());
    for (const auto& p : node.parents) stack.push_back(p);
  }
  return out;
}

enum class DescriptionForm { Flat, Hierarchical };

/// Symbol count of a rendering of the hierarchy.
///
/// Flat: every class written out with its name, its fully resolved attribute
/// list and its parts. Hierarchical: every class written with its name, its
/// own attributes, one symbol per parent link and one per part.
inline std::size_t description_symbols(const Hierarchy& h, DescriptionForm form) {
  std::size_t total = 0;
  for (const auto& [name, node] : h.nodes()) {
    total += 1 + node.parts.size();
    if (form == DescriptionForm::Flat) total += resolve_attributes(h, name).size();
    else total += node.attributes.size() + node.parents.size();
  }
  return total;
}

inline double description_length(const Hierarchy& h, DescriptionForm form, std::size_t alphabet_size) {
  return static_cast<double>(description_symbols(h, form)) * symbol_cost_bits(alphabet_size);
}

/// Distinct symbols needed to write the hierarchy: class names plus attributes.
inline std::size_t hierarchy_alphabet_size(const Hierarchy& h) {
  std::set<std::string> all;
  for (const auto& [name, node] : h.nodes()) {
    all.insert(name);
    for (const auto& a : node.attributes) all.insert(a.text());
  }
  return all.size();
}

/// Enclosing wholes of a part, innermost first. Where several wholes list
/// the same part, the lexicographically first is followed.
inline std::vector<std::string> part_context(const Hierarchy& h, const std::string& part) {
  h.at(part);
  std::vector<std::string> chain;
  std::string cur = part;
  for (;;) {
    const std::string* whole = nullptr;
    for (const auto& [name, node] : h.nodes()) {
      if (std::find(node.parts.begin(), node.parts.end(), cur) != node.parts.end()) {
        whole = &name;
        break;
      }
    }
    if (!whole) break;
    chain.push_back(*whole);
    cur = *whole;
  }
  return chain;
}

// ---------------------------------------------------------------------------
// Hierarchy file:  CLASS <name> : attrs=<a,b,...> parents=<p,...> parts=<q,...>

inline Hierarchy parse_hierarchy(std::istream& in) {
  std::vector<ClassNode> nodes;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto list = [](std::string_view v) {
    std::vector<std::string> out;
    if (v.empty()) return out;
    for (auto& item : detail::split(v, ','))
      if (!item.empty()) out.push_back(item);
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto colon = body.find(':');
    if (colon == std::string_view::npos) fail("missing ':'");
    auto head = detail::split_ws(body.substr(0, colon));
    if (head.size() != 2 || head[0] != "CLASS") fail("expected 'CLASS <name> :'");
    ClassNode node;
    node.name = std::string(head[1]);
    for (auto field : detail::split_ws(body.substr(colon + 1))) {
      auto eq = field.find('=');
      if (eq == std::string_view::npos) fail("bad field '" + std::string(field) + "'");
      auto key = field.substr(0, eq);
      auto items = list(field.substr(eq + 1));
      if (key == "attrs") {
        for (auto& a : items) node.attributes.emplace(a);
      } else if (key == "parents") {
        node.parents = std::move(items);
      } else if (key == "parts") {
        node.parts = std::move(items);
      } else {
        fail("unknown field '" + std::string(key) + "'");
      }
    }
    nodes.push_back(std::move(node));
  }
  try {
    return Hierarchy(std::move(nodes));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownClass || e.code() == ErrorCode::DuplicateId)
      throw Error(ErrorCode::Parse, e.what());
    throw;
  }
}

inline Hierarchy parse_hierarchy(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hierarchy(in);
}

}  // namespace icmup

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

#include "icmup/hierarchy.hpp"
#include "icmup/io.hpp"
#include "oracles.hpp"

using namespace icmup;

namespace {

const std::string kData = ICMUP_DATA_DIR;

std::set<Symbol> attrs(std::initializer_list<const char*> xs) {
  std::set<Symbol> out;
  for (auto x : xs) out.emplace(x);
  return out;
}

Hierarchy mammals() {
  return Hierarchy({{"mammal", attrs({"fur"}), {}, {}},
                    {"cat", {}, {"mammal"}, {}},
                    {"dog", {}, {"mammal"}, {}},
                    {"rabbit", {}, {"mammal"}, {}}});
}

}  // namespace

TEST(Hierarchy, Inheritance) {
  auto h = mammals();
  EXPECT_EQ(resolve_attributes(h, "cat"), attrs({"fur"}));
  EXPECT_EQ(resolve_attributes(h, "mammal"), attrs({"fur"}));
}

TEST(Hierarchy, MultipleInheritance) {
  auto h = parse_hierarchy(read_file(kData + "/animals.hier"));
  auto jane = resolve_attributes(h, "jane");
  EXPECT_TRUE(jane.contains(Symbol("child-bearing")));
  EXPECT_TRUE(jane.contains(Symbol("treats-patients")));
  for (const auto& a : resolve_attributes(h, "woman")) EXPECT_TRUE(jane.contains(a));
  for (const auto& a : resolve_attributes(h, "doctor")) EXPECT_TRUE(jane.contains(a));
}

TEST(Hierarchy, RootHasOwnAttributesOnly) {
  Hierarchy h({{"r", attrs({"x"}), {}, {}}});
  EXPECT_EQ(resolve_attributes(h, "r"), attrs({"x"}));
  EXPECT_EQ(description_symbols(h, DescriptionForm::Flat), description_symbols(h, DescriptionForm::Hierarchical));
}

TEST(Hierarchy, Validation) {
  auto code = [](std::vector<ClassNode> n) {
    try {
      Hierarchy h(std::move(n));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code({{"a", {}, {"b"}, {}}, {"b", {}, {"a"}, {}}}), ErrorCode::CyclicHierarchy);
  EXPECT_EQ(code({{"a", {}, {}, {"b"}}, {"b", {}, {}, {"a"}}}), ErrorCode::CyclicHierarchy);
  EXPECT_EQ(code({{"a", {}, {"zz"}, {}}}), ErrorCode::UnknownClass);
  EXPECT_EQ(code({{"a", {}, {}, {}}, {"a", {}, {}, {}}}), ErrorCode::DuplicateId);
}

TEST(DescriptionLength, MammalsFur) {
  auto h = mammals();
  // flat: mammal fur | cat fur | dog fur | rabbit fur
  EXPECT_EQ(description_symbols(h, DescriptionForm::Flat), 8u);
  // hierarchical: mammal fur | cat ^mammal | dog ^mammal | rabbit ^mammal
  EXPECT_EQ(description_symbols(h, DescriptionForm::Hierarchical), 8u);
  const auto a = hierarchy_alphabet_size(h);
  EXPECT_EQ(a, 5u);
  EXPECT_DOUBLE_EQ(description_length(h, DescriptionForm::Flat, a), 8 * std::log2(5.0));
}

TEST(DescriptionLength, TwoSharedAttributesSave) {
  Hierarchy h({{"mammal", attrs({"fur", "warm-blooded"}), {}, {}},
               {"cat", attrs({"meows"}), {"mammal"}, {}},
               {"dog", attrs({"barks"}), {"mammal"}, {}}});
  const auto a = hierarchy_alphabet_size(h);
  EXPECT_LT(description_length(h, DescriptionForm::Hierarchical, a), description_length(h, DescriptionForm::Flat, a));
}

TEST(DescriptionLength, MatchesBruteForceCounterOnEveryHierarchy) {
  std::size_t seen = 0;
  oracle::enumerate_hierarchies(4, 2, [&](const std::vector<oracle::Cls>& cls) {
    std::vector<ClassNode> nodes;
    for (const auto& c : cls) {
      ClassNode n{c.name, {}, {}, {}};
      for (const auto& x : c.own) n.attributes.emplace(x);
      for (int p : c.parents) n.parents.push_back(cls[static_cast<std::size_t>(p)].name);
      nodes.push_back(std::move(n));
    }
    Hierarchy h(std::move(nodes));
    auto [flat, tree] = oracle::rendered_symbol_counts(cls);
    ASSERT_EQ(description_symbols(h, DescriptionForm::Flat), flat);
    ASSERT_EQ(description_symbols(h, DescriptionForm::Hierarchical), tree);
    if (oracle::has_shared_inheritance(cls)) {
      EXPECT_LE(tree, flat);
    }
    ++seen;
  });
  EXPECT_GT(seen, 1000u);
}

TEST(PartContext, Car) {
  auto h = parse_hierarchy(read_file(kData + "/car.hier"));
  EXPECT_EQ(part_context(h, "wheel"), (std::vector<std::string>{"car"}));
  EXPECT_EQ(part_context(h, "handle"), (std::vector<std::string>{"door", "car"}));
  EXPECT_TRUE(part_context(h, "car").empty());
  EXPECT_THROW(part_context(h, "boat"), Error);
}

TEST(Parse, BadLine) {
  EXPECT_THROW(parse_hierarchy(std::string_view("CLASS a : attrs=x\nNOPE\n")), Error);
}

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

// Sets from multisets, union and intersection by unification; natural
// numbers as unary strings with arithmetic exposed as nested run-length
// coding (every operation returns a step trace); Peano numerals; positional
// notation as recursive chunking of unary digits; the falling-body table.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cctype>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "icmup/error.hpp"
#include "icmup/pattern.hpp"

namespace icmup {

// ---------------------------------------------------------------------------
// Sets

struct SetReduction {
  SymbolSeq set;
  std::size_t unifications = 0;  // elements merged into an earlier equal one
};

/// Each element is matched against the elements kept so far (themselves the
/// product of earlier unifications) and merged on a match.
inline SetReduction multiset_to_set(std::span<const Symbol> multiset) {
  SetReduction out;
  for (const auto& e : multiset) {
    if (std::find(out.set.begin(), out.set.end(), e) != out.set.end()) ++out.unifications;
    else out.set.push_back(e);
  }
  return out;
}

namespace detail {
inline void require_set(std::span<const Symbol> s, const char* which) {
  std::set<Symbol> seen;
  for (const auto& e : s)
    if (!seen.insert(e).second) throw Error(ErrorCode::NotASet, std::string(which) + " repeats '" + e.text() + "'");
}
}  // namespace detail

/// Lexicographically ordered union.
inline SymbolSeq set_union(std::span<const Symbol> a, std::span<const Symbol> b) {
  detail::require_set(a, "first set");
  detail::require_set(b, "second set");
  std::set<Symbol> u(a.begin(), a.end());
  u.insert(b.begin(), b.end());
  return SymbolSeq(u.begin(), u.end());
}

/// The elements unified across the two sets, lexicographically ordered.
inline SymbolSeq set_intersection(std::span<const Symbol> a, std::span<const Symbol> b) {
  detail::require_set(a, "first set");
  detail::require_set(b, "second set");
  std::set<Symbol> sb(b.begin(), b.end());
  std::set<Symbol> out;
  for (const auto& e : a)
    if (sb.contains(e)) out.insert(e);
  return SymbolSeq(out.begin(), out.end());
}

inline std::string render_set(std::span<const Symbol> s) { return "{" + render(s, ", ") + "}"; }

// ---------------------------------------------------------------------------
// Unary numbers and traces

class UnaryNumber {
 public:
  static constexpr std::int64_t kMax = 1'000'000;

  UnaryNumber() = default;
  explicit UnaryNumber(std::int64_t count) : count_(count) {
    if (count < 0) throw Error(ErrorCode::InvalidArgument, "unary numbers are natural");
    if (count > kMax) throw Error(ErrorCode::TooLarge, std::to_string(count) + " exceeds the unary cap of 10^6");
  }

  std::int64_t count() const noexcept { return count_; }
  std::string render() const { return std::string(static_cast<std::size_t>(count_), '/'); }

  static UnaryNumber parse(std::string_view s) {
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c == '/'; }))
      throw Error(ErrorCode::BadDigit, "unary strings contain only '/'");
    return UnaryNumber(static_cast<std::int64_t>(s.size()));
  }

  friend bool operator==(const UnaryNumber&, const UnaryNumber&) = default;

 private:
  std::int64_t count_ = 0;
};

enum class StepKind { Transfer, Removal, AddIteration, SubtractIteration, MultiplyIteration };

inline std::string_view step_name(StepKind k) noexcept {
  switch (k) {
    case StepKind::Transfer: return "transfer";
    case StepKind::Removal: return "remove";
    case StepKind::AddIteration: return "add-iteration";
    case StepKind::SubtractIteration: return "subtract-iteration";
    case StepKind::MultiplyIteration: return "multiply-iteration";
  }
  return "?";
}

/// One step of a unary computation. `a` is the accumulator before the step
/// (after it, for digit-level steps) and `b` the operand or digits left.
struct TraceStep {
  StepKind kind;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::string note;
  std::vector<TraceStep> substeps;
};

struct OperationTrace {
  std::string operation;
  std::vector<TraceStep> steps;

  std::size_t step_count() const noexcept { return steps.size(); }

  std::size_t count(StepKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(steps.begin(), steps.end(), [kind](const TraceStep& s) { return s.kind == kind; }));
  }

  /// Nesting depth: 1 for flat traces, 0 when empty.
  std::size_t depth() const {
    auto rec = [](auto&& self, const std::vector<TraceStep>& v) -> std::size_t {
      std::size_t d = 0;
      for (const auto& s : v) d = std::max(d, 1 + self(self, s.substeps));
      return d;
    };
    return rec(rec, steps);
  }
};

inline std::string step_detail(const TraceStep& s) {
  std::string d;
  switch (s.kind) {
    case StepKind::Transfer: d = "acc=" + std::to_string(s.a) + " left=" + std::to_string(s.b); break;
    case StepKind::Removal: d = "value=" + std::to_string(s.a) + " left=" + std::to_string(s.b); break;
    case StepKind::AddIteration: d = std::to_string(s.a) + "+" + std::to_string(s.b); break;
    case StepKind::SubtractIteration: d = std::to_string(s.a) + "-" + std::to_string(s.b); break;
    case StepKind::MultiplyIteration: d = std::to_string(s.a) + "*" + std::to_string(s.b); break;
  }
  if (!s.note.empty()) d += " " + s.note;
  return d;
}

/// Trace dump: one line per step, `<depth> <kind> <detail>`, depth first.
inline std::string dump_trace(const OperationTrace& t) {
  std::string out;
  auto rec = [&](auto&& self, const std::vector<TraceStep>& v, std::size_t depth) -> void {
    for (const auto& s : v) {
      out += std::to_string(depth) + ' ' + std::string(step_name(s.kind)) + ' ' + step_detail(s) + '\n';
      self(self, s.substeps, depth + 1);
    }
  };
  rec(rec, t.steps, 0);
  return out;
}

struct UnaryResult {
  UnaryNumber value;
  OperationTrace trace;
};

struct DivisionResult {
  UnaryNumber quotient;
  UnaryNumber remainder;
  OperationTrace trace;
};

namespace detail {

inline void check_cap(std::int64_t v) {
  if (v > UnaryNumber::kMax) throw Error(ErrorCode::TooLarge, std::to_string(v) + " exceeds the unary cap of 10^6");
}

/// Moves `addend` digits onto `acc`, one transfer per digit.
inline std::vector<TraceStep> transfers(std::int64_t& acc, std::int64_t addend) {
  std::vector<TraceStep> out;
  out.reserve(static_cast<std::size_t>(addend));
  for (std::int64_t left = addend; left > 0;) {
    ++acc;
    --left;
    out.push_back(TraceStep{StepKind::Transfer, acc, left, {}, {}});
  }
  return out;
}

inline std::vector<TraceStep> removals(std::int64_t& value, std::int64_t amount) {
  std::vector<TraceStep> out;
  out.reserve(static_cast<std::size_t>(amount));
  for (std::int64_t left = amount; left > 0;) {
    --value;
    --left;
    out.push_back(TraceStep{StepKind::Removal, value, left, {}, {}});
  }
  return out;
}

/// acc * times as `times` add-iterations of acc onto a zero accumulator.
inline TraceStep multiply_iteration(std::int64_t& acc, std::int64_t times) {
  check_cap(acc * times);
  TraceStep step{StepKind::MultiplyIteration, acc, times, {}, {}};
  std::int64_t product = 0;
  for (std::int64_t j = 0; j < times; ++j) {
    TraceStep add{StepKind::AddIteration, product, acc, {}, {}};
    add.substeps = transfers(product, acc);
    step.substeps.push_back(std::move(add));
  }
  acc = product;
  return step;
}

}  // namespace detail

/// a + b: b digits transferred one at a time.
inline UnaryResult unary_add(UnaryNumber a, UnaryNumber b) {
  detail::check_cap(a.count() + b.count());
  std::int64_t acc = a.count();
  UnaryResult r{{}, {"add", detail::transfers(acc, b.count())}};
  r.value = UnaryNumber(acc);
  return r;
}

inline UnaryResult unary_subtract(UnaryNumber a, UnaryNumber b) {
  if (a.count() < b.count())
    throw Error(ErrorCode::Underflow, std::to_string(a.count()) + " - " + std::to_string(b.count()));
  std::int64_t v = a.count();
  UnaryResult r{{}, {"subtract", detail::removals(v, b.count())}};
  r.value = UnaryNumber(v);
  return r;
}

/// a * b: b add-iterations of a, each a run of a transfers.
inline UnaryResult unary_multiply(UnaryNumber a, UnaryNumber b) {
  detail::check_cap(a.count() * b.count());
  std::int64_t acc = 0;
  UnaryResult r{{}, {"multiply", {}}};
  for (std::int64_t j = 0; j < b.count(); ++j) {
    TraceStep add{StepKind::AddIteration, acc, a.count(), {}, {}};
    add.substeps = detail::transfers(acc, a.count());
    r.trace.steps.push_back(std::move(add));
  }
  r.value = UnaryNumber(acc);
  return r;
}

/// a / b: subtract b until what is left is smaller than b.
inline DivisionResult unary_divide(UnaryNumber a, UnaryNumber b) {
  if (b.count() == 0) throw Error(ErrorCode::DivisionByZero, std::to_string(a.count()) + " / 0");
  std::int64_t rest = a.count(), q = 0;
  OperationTrace trace{"divide", {}};
  while (rest >= b.count()) {
    TraceStep sub{StepKind::SubtractIteration, rest, b.count(), {}, {}};
    sub.substeps = detail::removals(rest, b.count());
    trace.steps.push_back(std::move(sub));
    ++q;
  }
  return DivisionResult{UnaryNumber(q), UnaryNumber(rest), std::move(trace)};
}

/// a^k: k multiply-iterations from 1. Three nested levels of repetition:
/// multiply-iteration, add-iteration, transfer.
inline UnaryResult unary_power(UnaryNumber a, std::int64_t k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  if (a.count() == 0 && k == 0) throw Error(ErrorCode::Indeterminate, "0^0");
  std::int64_t acc = 1;
  UnaryResult r{{}, {"power", {}}};
  for (std::int64_t j = 0; j < k; ++j) {
    // acc * a, guarded before any digits move
    detail::check_cap(acc * a.count());
    std::int64_t times = a.count();
    TraceStep step{StepKind::MultiplyIteration, acc, times, {}, {}};
    std::int64_t product = 0;
    for (std::int64_t i = 0; i < times; ++i) {
      TraceStep add{StepKind::AddIteration, product, acc, {}, {}};
      add.substeps = detail::transfers(product, acc);
      step.substeps.push_back(std::move(add));
    }
    acc = product;
    r.trace.steps.push_back(std::move(step));
  }
  r.value = UnaryNumber(acc);
  return r;
}

/// n!: multiply the accumulator by the counter, then remove one digit from
/// the counter, until the counter is empty.
inline UnaryResult unary_factorial(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "factorial of a negative number");
  std::int64_t acc = 1, k = n;
  UnaryResult r{{}, {"factorial", {}}};
  while (k > 0) {
    r.trace.steps.push_back(detail::multiply_iteration(acc, k));
    TraceStep sub{StepKind::SubtractIteration, k, 1, {}, {}};
    sub.substeps = detail::removals(k, 1);
    r.trace.steps.push_back(std::move(sub));
  }
  r.value = UnaryNumber(acc);
  return r;
}

using TermFn = std::function<double(std::int64_t)>;

namespace detail {
inline std::int64_t integer_term(const TermFn& term, std::int64_t i) {
  double v = term(i);
  if (!std::isfinite(v) || v != std::floor(v))
    throw Error(ErrorCode::NonIntegerTerm, "term(" + std::to_string(i) + ") is not an integer");
  if (v < 0) throw Error(ErrorCode::InvalidArgument, "term(" + std::to_string(i) + ") is negative");
  check_cap(static_cast<std::int64_t>(v));
  return static_cast<std::int64_t>(v);
}

inline std::string term_note(std::int64_t i, std::int64_t t, std::optional<std::int64_t> prev) {
  std::string note = "i=" + std::to_string(i) + " term=" + std::to_string(t);
  if (prev) note += " change=" + std::string(t >= *prev ? "+" : "") + std::to_string(t - *prev);
  return note;
}
}  // namespace detail

/// Sum of term(i) for i = lo..hi: one add-iteration per index, each noting
/// how the term changed from the previous one.
inline UnaryResult bounded_sum(const TermFn& term, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  std::int64_t acc = 0;
  std::optional<std::int64_t> prev;
  UnaryResult r{{}, {"sum", {}}};
  for (std::int64_t i = lo; i <= hi; ++i) {
    std::int64_t t = detail::integer_term(term, i);
    detail::check_cap(acc + t);
    TraceStep add{StepKind::AddIteration, acc, t, detail::term_note(i, t, prev), {}};
    add.substeps = detail::transfers(acc, t);
    r.trace.steps.push_back(std::move(add));
    prev = t;
  }
  r.value = UnaryNumber(acc);
  return r;
}

inline UnaryResult bounded_product(const TermFn& term, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty range " + std::to_string(lo) + ".." + std::to_string(hi));
  std::int64_t acc = 1;
  std::optional<std::int64_t> prev;
  UnaryResult r{{}, {"product", {}}};
  for (std::int64_t i = lo; i <= hi; ++i) {
    std::int64_t t = detail::integer_term(term, i);
    auto step = detail::multiply_iteration(acc, t);
    step.note = detail::term_note(i, t, prev);
    r.trace.steps.push_back(std::move(step));
    prev = t;
  }
  r.value = UnaryNumber(acc);
  return r;
}

// ---------------------------------------------------------------------------
// Peano numerals

struct PeanoNumeral {
  std::int64_t depth = 0;

  std::string render() const {
    std::string out;
    out.reserve(static_cast<std::size_t>(3 * depth + 1));
    for (std::int64_t i = 0; i < depth; ++i) out += "S(";
    out += '0';
    out.append(static_cast<std::size_t>(depth), ')');
    return out;
  }

  friend bool operator==(const PeanoNumeral&, const PeanoNumeral&) = default;
};

inline PeanoNumeral to_peano(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "Peano numerals are natural");
  return PeanoNumeral{n};
}

inline PeanoNumeral peano_succ(PeanoNumeral p) { return PeanoNumeral{p.depth + 1}; }

/// Levels at which the two numerals' S symbols match and unify.
inline std::int64_t peano_shared_depth(PeanoNumeral p, PeanoNumeral q) { return std::min(p.depth, q.depth); }

inline PeanoNumeral parse_peano(std::string_view s) {
  std::int64_t depth = 0;
  std::size_t i = 0;
  while (i + 1 < s.size() && s[i] == 'S' && s[i + 1] == '(') {
    ++depth;
    i += 2;
  }
  if (i >= s.size() || s[i] != '0') throw Error(ErrorCode::Parse, "malformed Peano numeral");
  ++i;
  if (s.size() - i != static_cast<std::size_t>(depth) ||
      !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), [](char c) { return c == ')'; }))
    throw Error(ErrorCode::Parse, "malformed Peano numeral");
  return PeanoNumeral{depth};
}

// ---------------------------------------------------------------------------
// Positional notation

namespace detail {
constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";

inline void check_base(int base) {
  if (base < 2 || base > 36) throw Error(ErrorCode::InvalidArgument, "base must be in 2..36");
}
}  // namespace detail

/// Groups the unary digits into chunks of `base`; what is left over is coded
/// by one digit and the chunks themselves are grouped again at the next
/// position.
inline std::string unary_to_positional(UnaryNumber u, int base) {
  detail::check_base(base);
  if (u.count() == 0) return "0";
  std::string digits;
  for (std::int64_t level = u.count(); level > 0;) {
    std::int64_t chunks = 0, rest = level;
    while (rest >= base) {
      rest -= base;
      ++chunks;
    }
    digits += detail::kDigits[static_cast<std::size_t>(rest)];
    level = chunks;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

inline UnaryNumber positional_to_unary(std::string_view s, int base) {
  detail::check_base(base);
  if (s.empty()) throw Error(ErrorCode::BadDigit, "empty digit string");
  std::int64_t n = 0;
  for (char c : s) {
    char lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto d = detail::kDigits.find(lc);
    if (d == std::string_view::npos || static_cast<int>(d) >= base)
      throw Error(ErrorCode::BadDigit, std::string("'") + c + "' is not a base-" + std::to_string(base) + " digit");
    n = n * base + static_cast<std::int64_t>(d);
    detail::check_cap(n);
  }
  return UnaryNumber(n);
}

/// Unary symbol count over positional symbol count.
inline double positional_compression_ratio(UnaryNumber u, int base) {
  auto digits = unary_to_positional(u, base);
  return static_cast<double>(std::max<std::int64_t>(u.count(), 1)) / static_cast<double>(digits.size());
}

// ---------------------------------------------------------------------------
// Falling-body table

struct NewtonRow {
  std::int64_t t = 0;
  std::string distance;  // metres, one decimal
};

struct NewtonReport {
  double g = 0.0;
  std::vector<NewtonRow> rows;
  std::string formula_text;
  std::string table_text;
  double formula_bits = 0.0;
  double table_bits = 0.0;
};

/// Round half away from zero to one decimal place and print it.
inline std::string one_decimal(double x) {
  double r = std::round(x * 10.0) / 10.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", r);
  return buf;
}

inline std::string format_g(double g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", g);
  return buf;
}

/// s = g t^2 / 2 for t = 0..t_max, with the description length of the table
/// and of the formula (plus its parameters) under a shared character alphabet.
inline NewtonReport newton_table(double g, std::int64_t t_max) {
  if (!(g > 0)) throw Error(ErrorCode::InvalidArgument, "g must be positive");
  if (t_max < 0) throw Error(ErrorCode::InvalidArgument, "t_max must be >= 0");
  NewtonReport rep;
  rep.g = g;
  rep.table_text = "t s\n";
  for (std::int64_t t = 0; t <= t_max; ++t) {
    double td = static_cast<double>(t);
    rep.rows.push_back(NewtonRow{t, one_decimal(g * td * td / 2.0)});
    rep.table_text += std::to_string(t) + ' ' + rep.rows.back().distance + '\n';
  }
  rep.formula_text = "s=(g*t^2)/2 g=" + format_g(g) + " t=0.." + std::to_string(t_max);

  auto formula = tokenize(rep.formula_text, TokenizeMode::Chars);
  auto table = tokenize(rep.table_text, TokenizeMode::Chars);
  std::set<std::string> alphabet;
  for (const auto& s : formula) alphabet.insert(s.text());
  for (const auto& s : table) alphabet.insert(s.text());
  rep.formula_bits = raw_cost(formula, alphabet.size());
  rep.table_bits = raw_cost(table, alphabet.size());
  return rep;
}

}  // namespace icmup

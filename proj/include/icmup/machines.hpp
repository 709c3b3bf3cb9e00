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

// Function tables evaluated by matching inputs against rows and unifying
// with the row that matches best; NAND circuits whose every gate is such a
// table lookup; and a Turing machine whose transition function is one too.

#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "icmup/error.hpp"
#include "icmup/pattern.hpp"

namespace icmup {

struct TableRow {
  SymbolSeq inputs;
  SymbolSeq outputs;
  friend bool operator==(const TableRow&, const TableRow&) = default;
};

class FunctionTable {
 public:
  FunctionTable(std::string name, std::vector<std::string> input_cols, std::vector<std::string> output_cols,
                std::vector<TableRow> rows)
      : name_(std::move(name)), inputs_(std::move(input_cols)), outputs_(std::move(output_cols)), rows_(std::move(rows)) {
    if (inputs_.empty()) throw Error(ErrorCode::InvalidArgument, name_ + ": table has no input columns");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].inputs.size() != inputs_.size() || rows_[r].outputs.size() != outputs_.size())
        throw Error(ErrorCode::InvalidArgument, name_ + ": row " + std::to_string(r + 1) + " has the wrong arity");
      for (std::size_t q = 0; q < r; ++q)
        if (rows_[q].inputs == rows_[r].inputs && rows_[q].outputs != rows_[r].outputs)
          throw Error(ErrorCode::NonDeterministicTable,
                      name_ + ": rows " + std::to_string(q + 1) + " and " + std::to_string(r + 1) + " conflict");
    }
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& input_cols() const noexcept { return inputs_; }
  const std::vector<std::string>& output_cols() const noexcept { return outputs_; }
  const std::vector<TableRow>& rows() const noexcept { return rows_; }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::string name_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<TableRow> rows_;
};

/// Outcome of matching an input tuple against every row of a table.
struct TableEvaluation {
  std::vector<std::size_t> matches;  // matched input cells per row
  std::size_t best_row = 0;          // 0-based
  std::size_t best_matches = 0;
  bool full = false;                 // best row matched every input cell
  SymbolSeq outputs;
};

/// Match-and-unify row selection. Partial matches are reported but never
/// yield outputs.
inline TableEvaluation match_table(const FunctionTable& t, std::span<const Symbol> inputs) {
  if (inputs.size() != t.input_cols().size())
    throw Error(ErrorCode::InvalidArgument, t.name() + ": expected " + std::to_string(t.input_cols().size()) +
                                                " inputs, got " + std::to_string(inputs.size()));
  TableEvaluation ev;
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    const auto& row = t.rows()[r].inputs;
    std::size_t m = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) m += row[i] == inputs[i] ? 1 : 0;
    ev.matches.push_back(m);
    if (r == 0 || m > ev.best_matches) {
      ev.best_row = r;
      ev.best_matches = m;
    }
  }
  ev.full = !t.rows().empty() && ev.best_matches == inputs.size();
  if (ev.full) ev.outputs = t.rows()[ev.best_row].outputs;
  return ev;
}

inline SymbolSeq eval_table(const FunctionTable& t, std::span<const Symbol> inputs) {
  auto ev = match_table(t, inputs);
  if (!ev.full) {
    std::string msg = t.name() + ": no row matches (" + render(inputs) + ")";
    if (!t.rows().empty())
      msg += "; best row " + std::to_string(ev.best_row + 1) + " matched " + std::to_string(ev.best_matches) + "/" +
             std::to_string(inputs.size());
    throw Error(ErrorCode::NoMatch, msg);
  }
  return ev.outputs;
}

inline Symbol bit_symbol(int bit) { return Symbol(bit ? "1" : "0"); }

inline FunctionTable nand_table() {
  std::vector<TableRow> rows;
  for (int a : {1, 0})
    for (int b : {1, 0})
      rows.push_back(TableRow{{bit_symbol(a), bit_symbol(b)}, {bit_symbol(!(a && b))}});
  return FunctionTable("NAND", {"a", "b"}, {"y"}, std::move(rows));
}

// ---------------------------------------------------------------------------
// Table file: tab-separated; header cells `in:<name>` / `out:<name>`.

inline FunctionTable parse_table(std::istream& in, std::string name = "table") {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  std::vector<std::string> in_cols, out_cols;
  std::vector<bool> is_input;
  std::vector<TableRow> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto cells = detail::split(body, '\t');
    for (auto& c : cells) c = std::string(detail::trim(c));
    if (!header) {
      for (const auto& c : cells) {
        if (c.rfind("in:", 0) == 0 && c.size() > 3) {
          in_cols.push_back(c.substr(3));
          is_input.push_back(true);
        } else if (c.rfind("out:", 0) == 0 && c.size() > 4) {
          out_cols.push_back(c.substr(4));
          is_input.push_back(false);
        } else {
          fail("header cell '" + c + "' must be in:<name> or out:<name>");
        }
      }
      header = true;
      continue;
    }
    if (cells.size() != is_input.size())
      fail("expected " + std::to_string(is_input.size()) + " cells, got " + std::to_string(cells.size()));
    TableRow row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty()) fail("empty cell");
      try {
        (is_input[i] ? row.inputs : row.outputs).emplace_back(cells[i]);
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  if (!header) throw Error(ErrorCode::Parse, "table has no header row");
  try {
    return FunctionTable(std::move(name), std::move(in_cols), std::move(out_cols), std::move(rows));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline FunctionTable parse_table(std::string_view text, std::string name = "table") {
  std::istringstream in{std::string(text)};
  return parse_table(in, std::move(name));
}

inline std::string format_table(const FunctionTable& t) {
  std::string out;
  bool first = true;
  for (const auto& c : t.input_cols()) out += (first ? "" : "\t") + std::string("in:") + c, first = false;
  for (const auto& c : t.output_cols()) out += (first ? "" : "\t") + std::string("out:") + c, first = false;
  out += '\n';
  for (const auto& r : t.rows()) {
    first = true;
    for (const auto& s : r.inputs) out += (first ? "" : "\t") + s.text(), first = false;
    for (const auto& s : r.outputs) out += (first ? "" : "\t") + s.text(), first = false;
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// NAND circuits

struct Gate {
  std::string id;
  std::string a;
  std::string b;
};

class NandCircuit {
 public:
  NandCircuit(std::vector<std::string> inputs, std::vector<Gate> gates, std::vector<std::string> outputs)
      : inputs_(std::move(inputs)), gates_(std::move(gates)), outputs_(std::move(outputs)) {
    std::set<std::string> defined;
    for (const auto& t : inputs_)
      if (!defined.insert(t).second) throw Error(ErrorCode::InvalidArgument, "duplicate terminal '" + t + "'");
    for (const auto& g : gates_) {
      for (const auto* src : {&g.a, &g.b})
        if (!defined.contains(*src))
          throw Error(ErrorCode::InvalidArgument, "gate " + g.id + ": source '" + *src + "' used before definition");
      if (!defined.insert(g.id).second) throw Error(ErrorCode::InvalidArgument, "duplicate name '" + g.id + "'");
    }
    if (outputs_.empty()) throw Error(ErrorCode::InvalidArgument, "circuit has no outputs");
    for (const auto& o : outputs_)
      if (!defined.contains(o)) throw Error(ErrorCode::InvalidArgument, "unknown output '" + o + "'");
  }

  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<std::string>& outputs() const noexcept { return outputs_; }

 private:
  std::vector<std::string> inputs_;
  std::vector<Gate> gates_;
  std::vector<std::string> outputs_;
};

struct CircuitEvaluation {
  std::map<std::string, int> outputs;
  std::size_t table_lookups = 0;  // one NAND-table row selection per gate
};

/// Gates evaluate in declaration order (which is topological by
/// construction); each one is a row selection in the NAND table.
inline CircuitEvaluation eval_circuit_traced(const NandCircuit& c, const std::map<std::string, int>& inputs) {
  static const FunctionTable nand = nand_table();
  std::map<std::string, Symbol> value;
  for (const auto& t : c.inputs()) {
    auto it = inputs.find(t);
    if (it == inputs.end()) throw Error(ErrorCode::MissingInput, "terminal '" + t + "' not assigned");
    if (it->second != 0 && it->second != 1) throw Error(ErrorCode::InvalidArgument, "terminal '" + t + "' is not 0/1");
    value.insert_or_assign(t, bit_symbol(it->second));
  }
  CircuitEvaluation ev;
  for (const auto& g : c.gates()) {
    const Symbol in[2] = {value.at(g.a), value.at(g.b)};
    auto out = eval_table(nand, in);
    ++ev.table_lookups;
    value.insert_or_assign(g.id, out.front());
  }
  for (const auto& o : c.outputs()) ev.outputs[o] = value.at(o).text() == "1" ? 1 : 0;
  return ev;
}

inline std::map<std::string, int> eval_circuit(const NandCircuit& c, const std::map<std::string, int>& inputs) {
  return eval_circuit_traced(c, inputs).outputs;
}

/// Truth table of a circuit over all input assignments, in binary counting
/// order with the first terminal as the most significant bit.
inline FunctionTable compile_truth_table(const NandCircuit& c, std::string name = "circuit") {
  constexpr std::size_t kMaxInputs = 16;
  if (c.inputs().size() > kMaxInputs)
    throw Error(ErrorCode::TooLarge, std::to_string(c.inputs().size()) + " inputs (max 16)");
  const std::size_t k = c.inputs().size();
  std::vector<TableRow> rows;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::map<std::string, int> assign;
    TableRow row;
    for (std::size_t i = 0; i < k; ++i) {
      int bit = static_cast<int>((mask >> (k - 1 - i)) & 1u);
      assign[c.inputs()[i]] = bit;
      row.inputs.push_back(bit_symbol(bit));
    }
    auto out = eval_circuit(c, assign);
    for (const auto& o : c.outputs()) row.outputs.push_back(bit_symbol(out.at(o)));
    rows.push_back(std::move(row));
  }
  return FunctionTable(std::move(name), c.inputs(), c.outputs(), std::move(rows));
}

/// Circuit file:
///   INPUT a b
///   GATE <id> <src> <src>
///   OUTPUT <name> ...
inline NandCircuit parse_circuit(std::istream& in) {
  std::vector<std::string> inputs, outputs;
  std::vector<Gate> gates;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto toks = detail::split_ws(body);
    if (toks[0] == "INPUT") {
      for (std::size_t i = 1; i < toks.size(); ++i) inputs.emplace_back(toks[i]);
    } else if (toks[0] == "OUTPUT") {
      for (std::size_t i = 1; i < toks.size(); ++i) outputs.emplace_back(toks[i]);
    } else if (toks[0] == "GATE") {
      if (toks.size() != 4) fail("expected 'GATE <id> <src> <src>'");
      gates.push_back(Gate{std::string(toks[1]), std::string(toks[2]), std::string(toks[3])});
    } else {
      fail("unknown directive '" + std::string(toks[0]) + "'");
    }
  }
  try {
    return NandCircuit(std::move(inputs), std::move(gates), std::move(outputs));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline NandCircuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_circuit(in);
}

// ---------------------------------------------------------------------------
// Turing machine

enum class TmAction { Write0, Write1, MoveLeft, MoveRight };

inline std::string_view action_code(TmAction a) noexcept {
  switch (a) {
    case TmAction::Write0: return "W0";
    case TmAction::Write1: return "W1";
    case TmAction::MoveLeft: return "L";
    case TmAction::MoveRight: return "R";
  }
  return "?";
}

inline TmAction parse_action(std::string_view s) {
  if (s == "W0") return TmAction::Write0;
  if (s == "W1") return TmAction::Write1;
  if (s == "L") return TmAction::MoveLeft;
  if (s == "R") return TmAction::MoveRight;
  throw Error(ErrorCode::Parse, "unknown action '" + std::string(s) + "'");
}

struct Transition {
  std::string state;
  int read = 0;
  std::string next;
  TmAction action = TmAction::MoveRight;
};

/// Transition function held as a (state, read) -> (next, action) table, so
/// every step is a match-and-unify row selection.
class TuringMachine {
 public:
  explicit TuringMachine(std::vector<Transition> rows) : rows_(std::move(rows)), table_(build(rows_)) {}

  const std::vector<Transition>& rows() const noexcept { return rows_; }
  const FunctionTable& table() const noexcept { return table_; }

 private:
  static FunctionTable build(const std::vector<Transition>& rows) {
    std::vector<TableRow> t;
    for (const auto& r : rows) {
      if (r.read != 0 && r.read != 1) throw Error(ErrorCode::InvalidArgument, "read symbol must be 0 or 1");
      TableRow row{{Symbol(r.state), bit_symbol(r.read)}, {Symbol(r.next), Symbol(std::string(action_code(r.action)))}};
      for (const auto& prev : t)
        if (prev.inputs == row.inputs)
          throw Error(ErrorCode::NonDeterministicTable,
                      "two transitions for (" + r.state + ", " + std::to_string(r.read) + ")");
      t.push_back(std::move(row));
    }
    return FunctionTable("transitions", {"state", "read"}, {"next", "action"}, std::move(t));
  }

  std::vector<Transition> rows_;
  FunctionTable table_;
};

struct TapeState {
  std::map<long, int> cells;  // absent cells read as 0
  long head = 0;
  std::string state;
  std::size_t steps = 0;

  int read() const {
    auto it = cells.find(head);
    return it == cells.end() ? 0 : it->second;
  }

  friend bool operator==(const TapeState&, const TapeState&) = default;
};

/// One transition, or nothing when no row matches (the machine halts).
inline std::optional<TapeState> tm_step(const TuringMachine& m, const TapeState& s) {
  if (m.rows().empty()) return std::nullopt;
  const Symbol in[2] = {Symbol(s.state), bit_symbol(s.read())};
  auto ev = match_table(m.table(), in);
  if (!ev.full) return std::nullopt;
  TapeState next = s;
  next.state = ev.outputs[0].text();
  switch (parse_action(ev.outputs[1].text())) {
    case TmAction::Write0: next.cells[next.head] = 0; break;
    case TmAction::Write1: next.cells[next.head] = 1; break;
    case TmAction::MoveLeft: --next.head; break;
    case TmAction::MoveRight: ++next.head; break;
  }
  ++next.steps;
  return next;
}

struct TmRun {
  TapeState final_state;
  bool halted = false;
  /// Transitions plus the failed lookup that halted the machine, if any.
  std::size_t cycles = 0;
  std::vector<TapeState> trajectory;  // filled when requested; includes the initial state
};

inline TapeState make_tape(std::string_view bits, long head, std::string state) {
  TapeState s;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw Error(ErrorCode::InvalidArgument, "tape must be 0/1 digits");
    s.cells[static_cast<long>(i)] = bits[i] - '0';
  }
  s.head = head;
  s.state = std::move(state);
  return s;
}

inline TmRun tm_run(const TuringMachine& m, TapeState start, std::size_t max_steps, bool record = false) {
  TmRun run;
  run.final_state = std::move(start);
  if (record) run.trajectory.push_back(run.final_state);
  while (run.final_state.steps < max_steps) {
    auto next = tm_step(m, run.final_state);
    ++run.cycles;
    if (!next) {
      run.halted = true;
      break;
    }
    run.final_state = std::move(*next);
    if (record) run.trajectory.push_back(run.final_state);
  }
  return run;
}

/// Cells from min(0, lowest written) to the highest written position.
inline std::string render_tape(const TapeState& s) {
  if (s.cells.empty()) return "";
  long lo = std::min(0L, s.cells.begin()->first);
  long hi = s.cells.rbegin()->first;
  std::string out;
  for (long p = lo; p <= hi; ++p) {
    auto it = s.cells.find(p);
    out += (it == s.cells.end() || it->second == 0) ? '0' : '1';
  }
  return out;
}

/// TM file: lines `<state> <read> -> <next> <W0|W1|L|R>`.
inline TuringMachine parse_tm(std::istream& in) {
  std::vector<Transition> rows;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto t = detail::split_ws(body);
    if (t.size() != 5 || t[2] != "->" || (t[1] != "0" && t[1] != "1"))
      fail("expected '<state> <0|1> -> <next> <W0|W1|L|R>'");
    try {
      rows.push_back(Transition{std::string(t[0]), t[1] == "1" ? 1 : 0, std::string(t[3]), parse_action(t[4])});
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  try {
    return TuringMachine(std::move(rows));
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline TuringMachine parse_tm(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tm(in);
}

}  // namespace icmup

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

// icmup: command-line front end.
//
// Exit status: 0 success, 2 input or parse error, 3 domain error.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icmup/icmup.hpp"

namespace {

using namespace icmup;

constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::Io, "sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& item : detail::split(s, ',')) {
    auto t = std::string(detail::trim(item));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

SymbolSeq comma_symbols(const std::string& s) {
  SymbolSeq out;
  for (auto& t : comma_list(s)) out.emplace_back(t);
  return out;
}

std::int64_t to_int(const std::string& s) {
  try {
    std::size_t used = 0;
    auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::InvalidArgument, "not an integer: '" + s + "'");
}

void maybe_write_report(const std::string& path, const json& j) {
  if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct CompressArgs {
  std::string corpus, mode = "chunk", out, report;
  std::size_t min_len = 2, min_count = 2;
  bool chars = false;
};

int cmd_compress(const CompressArgs& a) {
  const auto text = read_file(a.corpus);
  const auto mode = a.chars ? TokenizeMode::Chars : TokenizeMode::Whitespace;
  const auto corpus = tokenize(text, mode);
  const std::size_t alphabet = alphabet_size_of(corpus);

  StreamDocument doc;
  doc.tokenize = mode;
  RunReport rep;
  rep.command = "compress";
  rep.inputs.push_back(FileDigest{a.corpus, sha256_hex(text)});
  rep.raw_bits = corpus.empty() ? 0.0 : raw_cost(corpus, alphabet);

  if (a.mode == "chunk") {
    auto dict = corpus.empty() ? ChunkDictionary{} : discover_chunks(corpus, a.min_len, a.min_count);
    doc.chunks = chunk_encode(corpus, dict);
    rep.encoded_bits = corpus.empty() ? 0.0 : encoded_cost(doc.chunks, alphabet);
    json entries = json::array();
    for (const auto& e : dict.entries)
      entries.push_back(json{{"code", e.code}, {"symbols", render(e.chunk.symbols)}, {"count", e.count},
                             {"code_bits", format_bits(code_cost(e.code, dict.store()))}});
    rep.details = json{{"mode", "chunk"}, {"dictionary", entries}, {"tokens", doc.chunks.tokens.size()},
                       {"code_refs", doc.chunks.code_refs()}};
  } else if (a.mode == "rle") {
    doc.rle = true;
    doc.runs = rle_encode(corpus);
    // each run: its block at raw cost plus its count written in decimal digits
    double bits = 0.0;
    for (const auto& r : doc.runs)
      if (!corpus.empty())
        bits += raw_cost(r.block, alphabet) +
                (r.count && *r.count > 1 ? static_cast<double>(std::to_string(*r.count).size()) * std::log2(10.0) : 0.0);
    rep.encoded_bits = bits;
    json runs = json::array();
    for (const auto& r : doc.runs) runs.push_back(render_run(r));
    rep.details = json{{"mode", "rle"}, {"runs", runs}};
  } else {
    throw Error(ErrorCode::InvalidArgument, "--mode must be chunk or rle");
  }

  if (!a.out.empty()) write_file(a.out, to_json(doc).dump(2) + "\n");
  std::cout << "symbols " << corpus.size() << " alphabet " << alphabet << "\n";
  if (doc.rle) {
    for (const auto& r : doc.runs) std::cout << "run " << render_run(r) << "\n";
  } else {
    for (const auto& e : doc.chunks.dictionary.entries)
      std::cout << "chunk " << e.code << " x" << e.count << ": " << render(e.chunk.symbols) << "\n";
  }
  std::cout << "raw_bits " << format_bits(rep.raw_bits) << "\n"
            << "encoded_bits " << format_bits(rep.encoded_bits) << "\n"
            << "ratio " << format_bits(rep.ratio()) << "\n";
  maybe_write_report(a.report, to_json(rep));
  return 0;
}

struct DecompressArgs {
  std::string stream, out;
};

int cmd_decompress(const DecompressArgs& a) {
  std::string text;
  try {
    text = decode_document(parse_stream(read_file(a.stream)));
  } catch (const Error& e) {
    // every failure here is a malformed stream
    throw Error(ErrorCode::Parse, e.what());
  }
  if (a.out.empty()) std::cout << text;
  else write_file(a.out, text);
  return 0;
}

// ---------------------------------------------------------------------------

struct AlignArgs {
  std::string grammar, new_symbols, report, rows;
  std::size_t beam = 50, max_rows = 12, top = 1;
  bool chars = false;
};

Pattern new_pattern(const std::string& text, bool chars) {
  auto syms = tokenize(text, chars ? TokenizeMode::Chars : TokenizeMode::Whitespace);
  if (syms.empty()) throw Error(ErrorCode::InvalidArgument, "New pattern is empty");
  return Pattern("New", std::move(syms), 1, PatternKind::New);
}

int cmd_align(const AlignArgs& a) {
  const auto store = parse_grammar(read_file(a.grammar));
  const auto np = new_pattern(a.new_symbols, a.chars);
  auto ranking = build_alignments(np, store, SearchOptions{a.beam, a.max_rows});
  json out = json::array();
  const std::size_t k = std::min(a.top, ranking.alignments.size());
  // probabilities relative to the alignments actually printed
  const std::vector<Alignment> shown(ranking.alignments.begin(), ranking.alignments.begin() + static_cast<long>(k));
  const auto probs = alignment_probabilities(shown);
  for (std::size_t i = 0; i < k; ++i) {
    const auto& al = ranking.alignments[i];
    std::cout << "alignment " << (i + 1) << " rows " << al.old_rows.size() << " cd "
              << format_bits(al.compression_difference) << " cost " << format_bits(al.encoding_cost) << " p "
              << format_bits(probs[i]) << "\n";
    std::cout << dump_columns(al);
    std::cout << "parse " << parse_render(al) << "\n";
    out.push_back(json{{"old_rows", al.old_ids()},
                       {"compression_difference", format_bits(al.compression_difference)},
                       {"encoding_cost", format_bits(al.encoding_cost)},
                       {"probability", format_bits(probs[i])},
                       {"new_hits", al.new_hits()},
                       {"parse", parse_render(al)}});
  }
  maybe_write_report(a.report, json{{"command", "align"}, {"alignments", out}});
  return 0;
}

int cmd_parse(const AlignArgs& a) {
  const auto store = parse_grammar(read_file(a.grammar));
  const auto np = new_pattern(a.new_symbols, a.chars);
  const std::size_t alphabet = store.alphabet_size_with(np.symbols);
  Alignment al;
  if (a.rows.empty()) {
    al = build_alignments(np, store, SearchOptions{a.beam, a.max_rows}).alignments.front();
  } else {
    al = literal_alignment(np);
    for (const auto& id : comma_list(a.rows)) {
      auto ext = extend_alignment(al, store.at(id));
      if (!ext) throw Error(ErrorCode::NoMatch, "row '" + id + "' joins no open column");
      al = std::move(*ext);
    }
    score_alignment(al, store, alphabet);
  }
  std::cout << parse_render(al) << "\n";
  std::cout << "cd " << format_bits(al.compression_difference) << " hits " << al.new_hits() << "/"
            << np.size() << "\n";
  for (const auto& p : infer_unmatched(al)) std::cout << "predict " << p.row_id << " " << p.symbol.text() << "\n";
  return 0;
}

struct RetrieveArgs {
  std::string grammar, query;
  std::size_t k = 3;
  bool chars = false;
};

int cmd_retrieve(const RetrieveArgs& a) {
  const auto store = parse_grammar(read_file(a.grammar));
  for (const auto& h : retrieve(new_pattern(a.query, a.chars), store, a.k))
    std::cout << h.id << " " << format_bits(h.compression_difference) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct TableArgs {
  std::string table, in;
  bool diagnostics = false;
};

int cmd_table(const TableArgs& a) {
  const auto t = parse_table(read_file(a.table), a.table);
  const auto inputs = comma_symbols(a.in);
  auto ev = match_table(t, inputs);
  if (a.diagnostics) {
    std::cout << "row " << (ev.best_row + 1) << " matched " << ev.best_matches << "/" << inputs.size() << "\n";
    for (std::size_t r = 0; r < ev.matches.size(); ++r)
      std::cout << "  row " << (r + 1) << ": " << ev.matches[r] << "\n";
  }
  auto outputs = eval_table(t, inputs);
  for (std::size_t i = 0; i < outputs.size(); ++i)
    std::cout << (i ? " " : "") << t.output_cols()[i] << "=" << outputs[i].text();
  std::cout << "\n";
  return 0;
}

struct CircuitArgs {
  std::string circuit, in;
  bool compile = false;
};

int cmd_circuit(const CircuitArgs& a) {
  const auto c = parse_circuit(read_file(a.circuit));
  if (a.compile || a.in.empty()) {
    std::cout << format_table(compile_truth_table(c));
    return 0;
  }
  std::map<std::string, int> assign;
  for (const auto& kv : comma_list(a.in)) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected name=bit, got '" + kv + "'");
    assign[kv.substr(0, eq)] = static_cast<int>(to_int(kv.substr(eq + 1)));
  }
  auto ev = eval_circuit_traced(c, assign);
  bool first = true;
  for (const auto& o : c.outputs()) {
    std::cout << (first ? "" : " ") << o << "=" << ev.outputs.at(o);
    first = false;
  }
  std::cout << "\nnand_lookups " << ev.table_lookups << "\n";
  return 0;
}

struct TmArgs {
  std::string tm, tape = "0", state = "s0";
  long head = 0;
  std::size_t max_steps = 10000;
  bool trace = false;
};

int cmd_tm(const TmArgs& a) {
  const auto m = parse_tm(read_file(a.tm));
  auto run = tm_run(m, make_tape(a.tape, a.head, a.state), a.max_steps, a.trace);
  if (a.trace)
    for (const auto& s : run.trajectory)
      std::cout << "step " << s.steps << " state " << s.state << " head " << s.head << " tape " << render_tape(s)
                << "\n";
  const auto& f = run.final_state;
  std::cout << "halted " << (run.halted ? "yes" : "no") << "\n"
            << "state " << f.state << "\n"
            << "head " << f.head << "\n"
            << "steps " << f.steps << "\n"
            << "cycles " << run.cycles << "\n"
            << "tape " << render_tape(f) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct SetsArgs {
  std::string op, a, b;
};

int cmd_sets(const SetsArgs& a) {
  const auto x = comma_symbols(a.a);
  if (a.op == "multiset") {
    auto r = multiset_to_set(x);
    std::cout << render_set(r.set) << "\nunifications " << r.unifications << "\n";
    return 0;
  }
  const auto y = comma_symbols(a.b);
  if (a.op == "union") {
    std::cout << render_set(set_union(x, y)) << "\n";
  } else if (a.op == "intersection") {
    std::cout << render_set(set_intersection(x, y)) << "\n";
  } else {
    throw Error(ErrorCode::InvalidArgument, "operation must be multiset, union or intersection");
  }
  return 0;
}

struct UnaryArgs {
  std::string op;
  std::vector<std::string> operands;
  std::string terms;
  bool trace = false;
};

int cmd_unary(const UnaryArgs& a) {
  auto arg = [&](std::size_t i) {
    if (i >= a.operands.size()) throw Error(ErrorCode::InvalidArgument, a.op + " needs more operands");
    return to_int(a.operands[i]);
  };
  auto num = [&](std::size_t i) { return UnaryNumber(arg(i)); };
  auto print = [&](const std::string& value, const OperationTrace& trace) {
    std::cout << value << "\n";
    std::cout << "steps " << trace.step_count();
    for (auto k : {StepKind::Transfer, StepKind::Removal, StepKind::AddIteration, StepKind::SubtractIteration,
                   StepKind::MultiplyIteration})
      if (auto n = trace.count(k)) std::cout << " " << step_name(k) << "s=" << n;
    std::cout << " depth " << trace.depth() << "\n";
    if (a.trace) std::cout << dump_trace(trace);
  };
  TermFn term = [](std::int64_t i) { return static_cast<double>(i); };
  if (!a.terms.empty()) {
    std::vector<double> values;
    for (const auto& t : comma_list(a.terms)) {
      try {
        values.push_back(std::stod(t));
      } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "bad term '" + t + "'");
      }
    }
    const std::int64_t lo = arg(0);
    term = [values, lo](std::int64_t i) {
      auto k = static_cast<std::size_t>(i - lo);
      if (k >= values.size()) throw Error(ErrorCode::InvalidArgument, "too few --terms for the range");
      return values[k];
    };
  }

  if (a.op == "add") { auto r = unary_add(num(0), num(1)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "sub") { auto r = unary_subtract(num(0), num(1)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "mul") { auto r = unary_multiply(num(0), num(1)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "div") {
    auto r = unary_divide(num(0), num(1));
    print(std::to_string(r.quotient.count()) + " r " + std::to_string(r.remainder.count()), r.trace);
  }
  else if (a.op == "pow") { auto r = unary_power(num(0), arg(1)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "fact") { auto r = unary_factorial(arg(0)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "sum") { auto r = bounded_sum(term, arg(0), arg(1)); print(std::to_string(r.value.count()), r.trace); }
  else if (a.op == "prod") { auto r = bounded_product(term, arg(0), arg(1)); print(std::to_string(r.value.count()), r.trace); }
  else throw Error(ErrorCode::InvalidArgument, "unknown unary operation '" + a.op + "'");
  return 0;
}

struct PeanoArgs {
  std::string value;
  std::optional<std::int64_t> shared;
  bool succ = false;
};

int cmd_peano(const PeanoArgs& a) {
  PeanoNumeral p = a.value.find('S') != std::string::npos || a.value == "0" ? parse_peano(a.value)
                                                                           : to_peano(to_int(a.value));
  if (a.succ) p = peano_succ(p);
  std::cout << p.render() << "\ndepth " << p.depth << "\n";
  if (a.shared) std::cout << "shared " << peano_shared_depth(p, to_peano(*a.shared)) << "\n";
  return 0;
}

struct BaseArgs {
  std::string value;
  int base = 10;
  bool to_unary = false;
};

int cmd_base(const BaseArgs& a) {
  if (a.to_unary) {
    auto u = positional_to_unary(a.value, a.base);
    std::cout << u.render() << "\ncount " << u.count() << "\n";
    return 0;
  }
  UnaryNumber u = a.value.find('/') != std::string::npos ? UnaryNumber::parse(a.value) : UnaryNumber(to_int(a.value));
  auto digits = unary_to_positional(u, a.base);
  std::cout << digits << "\nunary_symbols " << u.count() << " positional_symbols " << digits.size() << " ratio "
            << format_bits(positional_compression_ratio(u, a.base)) << "\n";
  return 0;
}

struct NewtonArgs {
  double g = 9.80665;
  std::int64_t tmax = 16;
  std::string report;
};

int cmd_newton(const NewtonArgs& a) {
  auto rep = newton_table(a.g, a.tmax);
  std::cout << "t s\n";
  for (const auto& r : rep.rows) std::cout << r.t << " " << r.distance << "\n";
  std::cout << "formula " << rep.formula_text << "\n"
            << "formula_bits " << format_bits(rep.formula_bits) << "\n"
            << "table_bits " << format_bits(rep.table_bits) << "\n";
  maybe_write_report(a.report, to_json(rep));
  return 0;
}

struct HierarchyArgs {
  std::string file, resolve, context;
};

int cmd_hierarchy(const HierarchyArgs& a) {
  const auto h = parse_hierarchy(read_file(a.file));
  if (!a.resolve.empty()) {
    auto attrs = resolve_attributes(h, a.resolve);
    std::cout << a.resolve << " " << render_set(SymbolSeq(attrs.begin(), attrs.end())) << "\n";
  }
  if (!a.context.empty()) {
    auto chain = part_context(h, a.context);
    std::cout << a.context << " in [";
    for (std::size_t i = 0; i < chain.size(); ++i) std::cout << (i ? ", " : "") << chain[i];
    std::cout << "]\n";
  }
  const auto alphabet = hierarchy_alphabet_size(h);
  const double flat = description_length(h, DescriptionForm::Flat, alphabet);
  const double hier = description_length(h, DescriptionForm::Hierarchical, alphabet);
  std::cout << "flat_symbols " << description_symbols(h, DescriptionForm::Flat) << " flat_bits "
            << format_bits(flat) << "\n"
            << "hierarchical_symbols " << description_symbols(h, DescriptionForm::Hierarchical)
            << " hierarchical_bits " << format_bits(hier) << "\n"
            << "savings_bits " << format_bits(flat - hier) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compression by matching and unification of patterns"};
  app.require_subcommand(1);

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "Chunk or run-length encode a corpus");
  c->add_option("corpus", compress.corpus, "Corpus file")->required();
  c->add_option("--mode", compress.mode, "chunk or rle")->check(CLI::IsMember({"chunk", "rle"}));
  c->add_option("--min-len", compress.min_len, "Shortest chunk")->check(CLI::Range(2, 1 << 20));
  c->add_option("--min-count", compress.min_count, "Fewest occurrences")->check(CLI::Range(2, 1 << 20));
  c->add_option("--out", compress.out, "Encoded stream file");
  c->add_option("--report", compress.report, "Structured report file");
  c->add_flag("--chars", compress.chars, "One symbol per character");

  DecompressArgs decompress;
  auto* d = app.add_subcommand("decompress", "Rebuild a corpus from an encoded stream");
  d->add_option("stream", decompress.stream, "Encoded stream file")->required();
  d->add_option("--out", decompress.out, "Output corpus file (default stdout)");

  AlignArgs align;
  auto* al = app.add_subcommand("align", "Rank alignments of a New pattern against a grammar");
  al->add_option("grammar", align.grammar, "Grammar file")->required();
  al->add_option("--new", align.new_symbols, "New pattern symbols")->required();
  al->add_option("--beam", align.beam, "Beam width")->check(CLI::PositiveNumber);
  al->add_option("--max-rows", align.max_rows, "Most Old rows per alignment");
  al->add_option("--top", align.top, "Alignments to print")->check(CLI::PositiveNumber);
  al->add_option("--report", align.report, "Structured report file");
  al->add_flag("--chars", align.chars, "One symbol per character");

  AlignArgs parse;
  auto* pa = app.add_subcommand("parse", "Bracketed parse of a New pattern");
  pa->add_option("grammar", parse.grammar, "Grammar file")->required();
  pa->add_option("--new", parse.new_symbols, "New pattern symbols")->required();
  pa->add_option("--rows", parse.rows, "Build the alignment from these Old rows, in order");
  pa->add_option("--beam", parse.beam, "Beam width")->check(CLI::PositiveNumber);
  pa->add_option("--max-rows", parse.max_rows, "Most Old rows per alignment");
  pa->add_flag("--chars", parse.chars, "One symbol per character");

  RetrieveArgs retr;
  auto* r = app.add_subcommand("retrieve", "Patterns matching a query, best first");
  r->add_option("grammar", retr.grammar, "Grammar file")->required();
  r->add_option("--query", retr.query, "Query symbols")->required();
  r->add_option("--k", retr.k, "Results")->check(CLI::PositiveNumber);
  r->add_flag("--chars", retr.chars, "One symbol per character");

  TableArgs table;
  auto* t = app.add_subcommand("table", "Evaluate a function table");
  t->add_option("table", table.table, "Table file (TSV)")->required();
  t->add_option("--in", table.in, "Comma-separated inputs")->required();
  t->add_flag("--diagnostics", table.diagnostics, "Show per-row match counts");

  CircuitArgs circuit;
  auto* ci = app.add_subcommand("circuit", "Evaluate or compile a NAND circuit");
  ci->add_option("circuit", circuit.circuit, "Circuit file")->required();
  ci->add_option("--in", circuit.in, "Assignments name=bit,...");
  ci->add_flag("--compile", circuit.compile, "Print the truth table");

  TmArgs tm;
  auto* tmc = app.add_subcommand("tm", "Run a transition-table Turing machine");
  tmc->add_option("machine", tm.tm, "Transition file")->required();
  tmc->add_option("--tape", tm.tape, "Initial tape as 0/1 digits");
  tmc->add_option("--head", tm.head, "Initial head position");
  tmc->add_option("--state", tm.state, "Start state");
  tmc->add_option("--max-steps", tm.max_steps, "Step limit");
  tmc->add_flag("--trace", tm.trace, "Print every configuration");

  SetsArgs sets;
  auto* s = app.add_subcommand("sets", "Multiset reduction, union, intersection");
  s->add_option("op", sets.op, "multiset | union | intersection")->required();
  s->add_option("a", sets.a, "Comma-separated elements")->required();
  s->add_option("b", sets.b, "Comma-separated elements");

  UnaryArgs unary;
  auto* u = app.add_subcommand("unary", "Unary arithmetic with traces");
  u->add_option("op", unary.op, "add sub mul div pow fact sum prod")->required();
  u->add_option("operands", unary.operands, "Operands (sum/prod: lo hi)");
  u->add_option("--terms", unary.terms, "sum/prod term values for lo..hi (default: i)");
  u->add_flag("--trace", unary.trace, "Dump every step");

  PeanoArgs peano;
  auto* pe = app.add_subcommand("peano", "Peano numerals");
  pe->add_option("value", peano.value, "Integer or S(...) numeral")->required();
  pe->add_flag("--succ", peano.succ, "Apply the successor");
  pe->add_option("--shared", peano.shared, "Shared S-depth with this number");

  BaseArgs base;
  auto* b = app.add_subcommand("base", "Unary to positional and back");
  b->add_option("value", base.value, "Count, unary string, or digits with --to-unary")->required();
  b->add_option("--base", base.base, "Radix 2..36");
  b->add_flag("--to-unary", base.to_unary, "Read value as positional digits");

  NewtonArgs newton;
  auto* n = app.add_subcommand("newton", "Falling-body distance table and its description length");
  n->add_option("--g", newton.g, "Acceleration (m/s^2)");
  n->add_option("--tmax", newton.tmax, "Last time (s)");
  n->add_option("--report", newton.report, "Structured report file");

  HierarchyArgs hier;
  auto* h = app.add_subcommand("hierarchy", "Inheritance, part contexts and description length");
  h->add_option("file", hier.file, "Hierarchy file")->required();
  h->add_option("--resolve", hier.resolve, "Class whose attributes to resolve");
  h->add_option("--context", hier.context, "Part whose enclosing wholes to list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*c) return cmd_compress(compress);
    if (*d) return cmd_decompress(decompress);
    if (*al) return cmd_align(align);
    if (*pa) return cmd_parse(parse);
    if (*r) return cmd_retrieve(retr);
    if (*t) return cmd_table(table);
    if (*ci) return cmd_circuit(circuit);
    if (*tmc) return cmd_tm(tm);
    if (*s) return cmd_sets(sets);
    if (*u) return cmd_unary(unary);
    if (*pe) return cmd_peano(peano);
    if (*b) return cmd_base(base);
    if (*n) return cmd_newton(newton);
    if (*h) return cmd_hierarchy(hier);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return is_input_error(e.code()) ? kExitInput : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}

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

// Structured-text (JSON) documents: encoded streams, run reports, newton
// reports. Also the fixed 3-decimal rendering used for every bit count.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "icmup/codecs.hpp"
#include "icmup/error.hpp"
#include "icmup/pattern.hpp"
#include "icmup/setnum.hpp"

namespace icmup {

using json = nlohmann::ordered_json;

/// Three decimals, halves rounded away from zero.
inline std::string format_bits(double bits) {
  double r = std::round(bits * 1000.0) / 1000.0;
  if (r == 0.0) r = 0.0;  // no "-0.000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  out << data;
  if (!out) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

inline std::string_view mode_name(TokenizeMode m) { return m == TokenizeMode::Chars ? "chars" : "whitespace"; }

/// Rendering a corpus after tokenization: whitespace mode joins with single
/// spaces, chars mode concatenates; non-empty output ends with a newline.
inline std::string render_corpus(std::span<const Symbol> symbols, TokenizeMode mode) {
  if (symbols.empty()) return "";
  return render(symbols, mode == TokenizeMode::Chars ? "" : " ") + "\n";
}

namespace detail {
inline json symbols_json(std::span<const Symbol> s) {
  json arr = json::array();
  for (const auto& x : s) arr.push_back(x.text());
  return arr;
}

inline SymbolSeq symbols_from(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "symbols must be an array");
  SymbolSeq out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(ErrorCode::Parse, "symbol must be a string");
    out.emplace_back(x.get<std::string>());
  }
  return out;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Encoded-stream documents

/// What a stream file holds: either a chunk-coded stream or a list of runs.
struct StreamDocument {
  TokenizeMode tokenize = TokenizeMode::Whitespace;
  bool rle = false;
  EncodedStream chunks;
  std::vector<Run> runs;
};

inline json to_json(const StreamDocument& doc) {
  json j;
  j["mode"] = doc.rle ? "rle" : "chunk";
  j["tokenize"] = std::string(mode_name(doc.tokenize));
  if (doc.rle) {
    json runs = json::array();
    for (const auto& r : doc.runs) {
      json jr;
      jr["symbols"] = detail::symbols_json(r.block);
      if (r.count) jr["count"] = *r.count;
      else jr["count"] = "*";
      runs.push_back(std::move(jr));
    }
    j["runs"] = std::move(runs);
    return j;
  }
  json dict = json::array();
  for (const auto& e : doc.chunks.dictionary.entries) {
    json je;
    je["code"] = e.code;
    je["symbols"] = detail::symbols_json(e.chunk.symbols);
    je["count"] = e.count;
    dict.push_back(std::move(je));
  }
  json stream = json::array();
  for (const auto& t : doc.chunks.tokens) {
    if (const auto* ref = std::get_if<CodeRef>(&t)) stream.push_back(json{{"code", ref->code}});
    else stream.push_back(json{{"lit", std::get<Symbol>(t).text()}});
  }
  j["dictionary"] = std::move(dict);
  j["stream"] = std::move(stream);
  return j;
}

inline StreamDocument stream_from_json(const json& j) {
  try {
    StreamDocument doc;
    if (!j.is_object()) throw Error(ErrorCode::Parse, "stream document must be an object");
    auto tok = j.value("tokenize", std::string("whitespace"));
    if (tok == "chars") doc.tokenize = TokenizeMode::Chars;
    else if (tok != "whitespace") throw Error(ErrorCode::Parse, "unknown tokenize mode '" + tok + "'");
    auto mode = j.value("mode", std::string(j.contains("runs") ? "rle" : "chunk"));
    if (mode == "rle") {
      doc.rle = true;
      for (const auto& jr : j.at("runs")) {
        Run r{detail::symbols_from(jr.at("symbols")), {}};
        if (r.block.empty()) throw Error(ErrorCode::Parse, "run with no symbols");
        const auto& c = jr.at("count");
        if (c.is_number_integer()) r.count = c.get<std::int64_t>();
        else if (!(c.is_string() && c.get<std::string>() == "*")) throw Error(ErrorCode::Parse, "bad run count");
        doc.runs.push_back(std::move(r));
      }
      return doc;
    }
    if (mode != "chunk") throw Error(ErrorCode::Parse, "unknown mode '" + mode + "'");
    for (const auto& je : j.at("dictionary")) {
      auto code = je.at("code").get<std::string>();
      auto syms = detail::symbols_from(je.at("symbols"));
      auto count = je.at("count").get<std::int64_t>();
      if (doc.chunks.dictionary.find(code)) throw Error(ErrorCode::Parse, "duplicate code '" + code + "'");
      doc.chunks.dictionary.entries.push_back(ChunkEntry{code, Pattern(code, std::move(syms), std::max<std::int64_t>(count, 1)), count});
    }
    for (const auto& jt : j.at("stream")) {
      if (jt.contains("code")) doc.chunks.tokens.emplace_back(CodeRef{jt.at("code").get<std::string>()});
      else if (jt.contains("lit")) doc.chunks.tokens.emplace_back(Symbol(jt.at("lit").get<std::string>()));
      else throw Error(ErrorCode::Parse, "stream entries need 'code' or 'lit'");
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, e.what());
  }
}

inline StreamDocument parse_stream(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return stream_from_json(j);
}

/// Decodes a stream document back to the rendered corpus text.
inline std::string decode_document(const StreamDocument& doc) {
  SymbolSeq syms = doc.rle ? rle_decode(doc.runs) : chunk_decode(doc.chunks);
  return render_corpus(syms, doc.tokenize);
}

// ---------------------------------------------------------------------------
// Reports

struct FileDigest {
  std::string path;
  std::string sha256;
};

struct RunReport {
  std::string command;
  std::vector<FileDigest> inputs;
  double raw_bits = 0.0;
  double encoded_bits = 0.0;
  json details = json::object();

  double ratio() const { return raw_bits > 0 ? encoded_bits / raw_bits : 1.0; }
};

inline json to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  json inputs = json::array();
  for (const auto& d : r.inputs) inputs.push_back(json{{"path", d.path}, {"sha256", d.sha256}});
  j["inputs"] = std::move(inputs);
  j["raw_bits"] = format_bits(r.raw_bits);
  j["encoded_bits"] = format_bits(r.encoded_bits);
  j["ratio"] = format_bits(r.ratio());
  j["details"] = r.details;
  return j;
}

inline json to_json(const NewtonReport& r) {
  json j;
  j["g"] = r.g;
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(json{{"t", row.t}, {"s", row.distance}});
  j["rows"] = std::move(rows);
  j["formula_bits"] = format_bits(r.formula_bits);
  j["table_bits"] = format_bits(r.table_bits);
  return j;
}

}  // namespace icmup

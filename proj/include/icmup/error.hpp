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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace icmup {

enum class ErrorCode {
  // input / parse
  Parse,
  Io,
  InvalidSymbol,
  InvalidPattern,
  DuplicateId,
  InvalidArgument,
  // domain
  DegenerateAlphabet,
  UnknownPattern,
  NotPresent,
  UnknownCode,
  NotDecodable,
  BadCorrection,
  NoSchemaMatch,
  UnknownClass,
  CyclicHierarchy,
  EmptyRanking,
  NoMatch,
  NonDeterministicTable,
  MissingInput,
  TooLarge,
  Underflow,
  DivisionByZero,
  Indeterminate,
  NotASet,
  NonIntegerTerm,
  BadDigit,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::InvalidSymbol: return "InvalidSymbol";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateAlphabet: return "DegenerateAlphabet";
    case ErrorCode::UnknownPattern: return "UnknownPattern";
    case ErrorCode::NotPresent: return "NotPresent";
    case ErrorCode::UnknownCode: return "UnknownCode";
    case ErrorCode::NotDecodable: return "NotDecodable";
    case ErrorCode::BadCorrection: return "BadCorrection";
    case ErrorCode::NoSchemaMatch: return "NoSchemaMatch";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::CyclicHierarchy: return "CyclicHierarchy";
    case ErrorCode::EmptyRanking: return "EmptyRanking";
    case ErrorCode::NoMatch: return "NoMatch";
    case ErrorCode::NonDeterministicTable: return "NonDeterministicTable";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Indeterminate: return "Indeterminate";
    case ErrorCode::NotASet: return "NotASet";
    case ErrorCode::NonIntegerTerm: return "NonIntegerTerm";
    case ErrorCode::BadDigit: return "BadDigit";
  }
  return "Unknown";
}

/// True for errors caused by malformed input rather than by the domain
/// operation itself. The CLI maps these to exit status 2.
constexpr bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::Io:
    case ErrorCode::InvalidSymbol:
    case ErrorCode::InvalidPattern:
    case ErrorCode::DuplicateId:
    case ErrorCode::InvalidArgument:
    case ErrorCode::CyclicHierarchy:
    case ErrorCode::NonDeterministicTable:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace icmup

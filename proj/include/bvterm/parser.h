// Copyright 2026 The bvterm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "bvterm/lctrs.h"
#include "bvterm/term.h"

namespace bvterm {

// Surface syntax (one declaration per s-expression, `;` line comments):
//
//   (sort <name>)
//   (fun <name> (<sort> ...) <sort>)      sorts: Bool | (bv N) | <name>
//   (rule <lhs> <rhs> [:guard <formula>] [:name <id>])
//
// Identifiers in rules that are neither declared functions nor theory
// operators are variables; their sorts are inferred from context.

enum class ErrorCode {
  Syntax = 1,
  UnknownSymbol = 2,
  SortMismatch = 3,
  DuplicateDeclaration = 4,
  LiteralWidth = 5,
  Arity = 6,
  UnresolvedSort = 7,
  InvalidRule = 8,
};

/// "E001" .. "E008"
std::string code_name(ErrorCode code);

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ErrorCode code, SourceLocation where, const std::string& message);

  ErrorCode code() const { return code_; }
  const SourceLocation& where() const { return where_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  SourceLocation where_;
  std::string detail_;
};

Lctrs parse(std::string_view text);

/// Parses a term over the signature of `system`. Free identifiers are
/// rejected unless `allow_variables` is set, in which case their sorts are
/// inferred like in rules.
Term parse_term(std::string_view text, const Lctrs& system, bool allow_variables = false);

std::string print(const Term& t);
std::string print(const Rule& r);
std::string print(const Lctrs& system);

}  // namespace bvterm

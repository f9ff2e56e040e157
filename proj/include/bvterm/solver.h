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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvterm/formula.h"
#include "bvterm/term.h"

namespace bvterm {

using Assignment = std::map<Variable, Value>;

namespace detail {
struct Program;
}

std::string to_string(const Assignment& a);

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A variable whose sort has no finite carrier was asked to be enumerated.
class UnsupportedSort : public EvalError {
 public:
  using EvalError::EvalError;
};

/// The enumeration needed to decide a query exceeds the configured cap.
/// Callers must read this as "unknown", never as a verdict.
class CapacityExceeded : public std::runtime_error {
 public:
  explicit CapacityExceeded(std::uint64_t required);
  /// Saturates at UINT64_MAX.
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// Number of values of an enumerable sort, saturating at UINT64_MAX.
std::uint64_t domain_size(const Sort& s);

/// Theory term compiled against a fixed slot layout, for repeated
/// evaluation under many assignments.
class CompiledTerm {
 public:
  /// Throws EvalError if `t` has a non-theory symbol or a variable outside `slots`.
  CompiledTerm(const Term& t, std::span<const Variable> slots);
  Value operator()(std::span<const Value> values) const;

 private:
  std::shared_ptr<const detail::Program> program_;
};

/// Closed-over-slots formula compiled for repeated evaluation.
class CompiledFormula {
 public:
  CompiledFormula(const Formula& f, std::span<const Variable> slots);
  bool operator()(std::span<const Value> values) const;
  /// Product of the domain sizes of all bound variables (saturating).
  std::uint64_t quantifier_work() const;

 private:
  friend class Solver;
  std::shared_ptr<const detail::Program> program_;
};

/// Visits every assignment of `vars` in enumeration order (first variable
/// fastest, values ascending) until `visit` returns false. Throws
/// CapacityExceeded if the domain product exceeds `cap`.
void for_each_assignment(std::span<const Variable> vars, std::uint64_t cap,
                         const std::function<bool(std::span<const Value>)>& visit);

Value eval_term(const Term& t, const Assignment& alpha);
bool eval_formula(const Formula& f, const Assignment& alpha);

struct SolverOptions {
  std::uint64_t enum_cap = std::uint64_t{1} << 24;
};

struct SatResult {
  bool satisfiable = false;
  /// First satisfying assignment in enumeration order.
  std::optional<Assignment> witness;
};

/// Decision procedure by exhaustive enumeration of the free variables.
///
/// Free variables are taken in order of first occurrence; the first one
/// varies fastest and each runs through its values in ascending unsigned
/// order. The total work (free domain product times bound domain product)
/// must not exceed `enum_cap`, otherwise CapacityExceeded is thrown.
class Solver {
 public:
  Solver() = default;
  explicit Solver(SolverOptions options) : options_(options) {}

  const SolverOptions& options() const { return options_; }

  SatResult check(const Formula& f) const;
  bool is_satisfiable(const Formula& f) const { return check(f).satisfiable; }
  bool is_valid(const Formula& f) const { return !is_satisfiable(!f); }

  /// The unique value `t` takes under every assignment of `vars` (plus any
  /// further variables of `t`), if there is one.
  std::optional<BitVec> constant_value(const Term& t, std::span<const Variable> vars) const;

  /// Work needed to decide `f` with this enumeration strategy.
  std::uint64_t required_work(const Formula& f) const;

 private:
  SolverOptions options_;
};

}  // namespace bvterm

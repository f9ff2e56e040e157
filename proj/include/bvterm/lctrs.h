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

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bvterm/formula.h"
#include "bvterm/solver.h"
#include "bvterm/term.h"

namespace bvterm {

/// lhs -> rhs [guard]
class Rule {
 public:
  /// Throws SortError if the rule is malformed: variable or theory-rooted
  /// lhs, sort mismatch between sides, or a non-Bool / non-theory guard.
  Rule(Term lhs, Term rhs, Term guard = bool_literal(true), std::string name = {});

  const Term& lhs() const { return lhs_; }
  const Term& rhs() const { return rhs_; }
  const Term& guard() const { return guard_; }
  const std::string& name() const { return name_; }
  bool unconstrained() const { return guard_ == bool_literal(true); }

  Formula guard_formula() const { return Formula::atom(guard_); }

  /// Var(rhs) \ Var(lhs), in order of occurrence.
  std::vector<Variable> fresh_rhs_variables() const;
  /// Var(guard) \ Var(lhs).
  std::vector<Variable> fresh_guard_variables() const;

  bool operator==(const Rule& o) const {
    return lhs_ == o.lhs_ && rhs_ == o.rhs_ && guard_ == o.guard_ && name_ == o.name_;
  }

 private:
  Term lhs_;
  Term rhs_;
  Term guard_;
  std::string name_;
};

std::string to_string(const Rule& r);

class Lctrs {
 public:
  void add_sort(const std::string& name);
  /// Throws std::invalid_argument on a duplicate name.
  void add_function(const Symbol& f);
  void add_rule(Rule r) { rules_.push_back(std::move(r)); }

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::vector<Symbol>& functions() const { return functions_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const Symbol* find_function(const std::string& name) const;
  bool has_sort(const std::string& name) const;

  /// Symbols at the root of some lhs.
  std::set<std::string> defined_symbols() const;
  bool is_defined(const Symbol& f) const;

  bool operator==(const Lctrs& o) const = default;

 private:
  std::vector<std::string> sorts_;
  std::vector<Symbol> functions_;
  std::vector<Rule> rules_;
};

/// Substitution γ respects `rule` iff it maps every guard variable and
/// every rhs-only variable to a value and the guard evaluates to true.
bool respects(const Substitution& gamma, const Rule& rule);

/// Implicit calculation rule: f(v1..vn) with f a theory operator and all
/// vi values evaluates to a value.
std::optional<Term> calculation_step(const Term& t);

/// Syntactic matching; extends `sigma`, returns false on clash.
bool match(const Term& pattern, const Term& t, Substitution& sigma);

/// A rule that cannot be used for rewriting (rhs-only variable outside the guard).
class RewriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// All one-step successors, sorted and deduplicated.
std::vector<Term> rewrite_successors(const Lctrs& system, const Term& t, const Solver& solver = Solver());

struct RewriteStep {
  Term result;
  Position position;
  /// Index into the rule list, or nullopt for a calculation step.
  std::optional<std::size_t> rule;
};

struct RewriteResult {
  Term term;
  std::vector<RewriteStep> trace;
  /// False when the step cap was hit first; `term` is then the last reached term.
  bool normal_form = true;
};

/// Leftmost-innermost rewriting, calculation steps before rules at each
/// position, rules in declaration order.
RewriteResult rewrite_to_normal_form(const Lctrs& system, const Term& t, std::size_t step_cap,
                                     const Solver& solver = Solver());

}  // namespace bvterm

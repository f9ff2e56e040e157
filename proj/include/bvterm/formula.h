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

#include <memory>
#include <string>
#include <vector>

#include "bvterm/term.h"

namespace bvterm {

enum class FormulaKind { Atom, Not, And, Or, Implies, Iff, Forall, Exists };

/// Quantified boolean formula whose atoms are boolean theory terms.
class Formula {
 public:
  /// Throws SortError unless `t` has sort Bool.
  static Formula atom(Term t);
  static Formula truth(bool b) { return atom(bool_literal(b)); }
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula equivalence(Formula a, Formula b);
  /// An empty variable list yields `body` unchanged.
  static Formula forall(std::vector<Variable> vars, Formula body);
  static Formula exists(std::vector<Variable> vars, Formula body);

  FormulaKind kind() const { return node_->kind; }
  const Term& atom_term() const { return *node_->atom; }
  const std::vector<Formula>& children() const { return node_->children; }
  const std::vector<Variable>& bound() const { return node_->bound; }

  /// Free variables in order of first occurrence.
  std::vector<Variable> free_variables() const;

  /// Capture-avoiding substitution of free variables.
  Formula substitute(const Substitution& sigma) const;

 private:
  struct Node {
    FormulaKind kind;
    std::optional<Term> atom;
    std::vector<Formula> children;
    std::vector<Variable> bound;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(FormulaKind kind, std::vector<Formula> children, std::vector<Variable> bound = {});

  std::shared_ptr<const Node> node_;
};

inline Formula operator!(const Formula& f) { return Formula::negation(f); }
inline Formula operator&&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
inline Formula operator||(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }
inline Formula implies(const Formula& a, const Formula& b) { return Formula::implication(a, b); }
inline Formula iff(const Formula& a, const Formula& b) { return Formula::equivalence(a, b); }

std::string to_string(const Formula& f);

}  // namespace bvterm

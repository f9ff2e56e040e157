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

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bvterm/bitvec.h"

namespace bvterm {

/// A theory value: true/false or a bit-vector literal.
using Value = std::variant<bool, BitVec>;

std::string to_string(const Value& v);

enum class SortKind { Bool, Bv, Dp, Named };

class Sort {
 public:
  static Sort boolean() { return Sort(SortKind::Bool, 0, {}); }
  static Sort bv(unsigned width);
  static Sort dp() { return Sort(SortKind::Dp, 0, {}); }
  static Sort named(std::string name) { return Sort(SortKind::Named, 0, std::move(name)); }

  SortKind kind() const { return kind_; }
  bool is_bool() const { return kind_ == SortKind::Bool; }
  bool is_bv() const { return kind_ == SortKind::Bv; }
  unsigned width() const { return width_; }
  const std::string& name() const { return name_; }

  /// Bool and bit-vector sorts have finite, enumerable carriers.
  bool enumerable() const { return is_bool() || is_bv(); }

  std::string to_string() const;

  auto operator<=>(const Sort&) const = default;

 private:
  Sort(SortKind kind, unsigned width, std::string name)
      : kind_(kind), width_(width), name_(std::move(name)) {}

  SortKind kind_;
  unsigned width_;
  std::string name_;
};

Sort sort_of(const Value& v);

enum class SymbolKind { Theory, Function, Marked };

/// Interpreted operators of the bit-vector theory.
enum class TheoryOp { None, Literal, Add, Sub, Eq, Ult, Slt, Uge, Sge, Ule, Sle, And, Or, Not };

class Symbol {
 public:
  /// An uninterpreted (possibly defined) function symbol.
  static Symbol function(std::string name, std::vector<Sort> args, Sort result);
  /// The marked copy f# of a function symbol f, with result sort dpsort.
  static Symbol marked(const Symbol& f);
  /// Nullary theory constant for a value.
  static Symbol literal(const Value& v);
  /// A theory operator; `operand` is the sort of the operands (ignored for
  /// the boolean connectives).
  static Symbol theory(TheoryOp op, const Sort& operand);

  const std::string& name() const { return name_; }
  std::span<const Sort> arg_sorts() const { return arg_sorts_; }
  std::size_t arity() const { return arg_sorts_.size(); }
  const Sort& result_sort() const { return result_; }
  SymbolKind kind() const { return kind_; }
  TheoryOp op() const { return op_; }
  bool is_theory() const { return kind_ == SymbolKind::Theory; }
  bool is_value() const { return value_.has_value(); }
  const std::optional<Value>& value() const { return value_; }

  /// For a marked symbol, the name of the unmarked symbol.
  std::string unmarked_name() const;

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;

 private:
  Symbol(std::string name, std::vector<Sort> args, Sort result, SymbolKind kind, TheoryOp op,
         std::optional<Value> value)
      : name_(std::move(name)),
        arg_sorts_(std::move(args)),
        result_(std::move(result)),
        kind_(kind),
        op_(op),
        value_(std::move(value)) {}

  std::string name_;
  std::vector<Sort> arg_sorts_;
  Sort result_;
  SymbolKind kind_;
  TheoryOp op_;
  std::optional<Value> value_;
};

struct Variable {
  std::string name;
  Sort sort;

  auto operator<=>(const Variable&) const = default;
};

class SortError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotMarkable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable, shared, well-sorted term.
class Term {
 public:
  static Term var(Variable v);
  static Term var(std::string name, Sort sort) { return var(Variable{std::move(name), std::move(sort)}); }
  /// Throws SortError unless the arguments match the symbol's signature.
  static Term app(Symbol f, std::vector<Term> args = {});
  static Term value(const Value& v) { return app(Symbol::literal(v)); }

  bool is_var() const { return std::holds_alternative<Variable>(node_->head); }
  const Variable& variable() const { return std::get<Variable>(node_->head); }
  const Symbol& symbol() const { return std::get<Symbol>(node_->head); }
  std::span<const Term> args() const { return node_->args; }
  const Term& arg(std::size_t k) const { return node_->args.at(k); }
  const Sort& sort() const { return node_->sort; }

  bool is_value() const { return !is_var() && symbol().is_value(); }
  /// The value of a literal term.
  const Value& as_value() const { return *symbol().value(); }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    std::variant<Variable, Symbol> head;
    std::vector<Term> args;
    Sort sort;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Child indices from the root, 1-based; the root is the empty position.
using Position = std::vector<std::size_t>;

using Substitution = std::map<Variable, Term>;

/// All subterms in pre-order, the term itself first.
std::vector<std::pair<Position, Term>> subterms(const Term& t);

const Term& subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);

/// Homomorphic substitution. Throws SortError if an image changes a sort.
Term apply(const Substitution& sigma, const Term& t);

/// f(t1..tn) -> f#(t1..tn). Throws NotMarkable unless the root is a
/// (non-theory) function symbol.
Term mark(const Term& t);

/// True iff every symbol of `t` is a theory symbol.
bool is_theory_term(const Term& t);

/// Variables of `t` in order of first occurrence.
std::vector<Variable> variables(const Term& t);
void collect_variables(const Term& t, std::vector<Variable>& out);

/// S-expression surface syntax.
std::string to_string(const Term& t);
std::ostream& operator<<(std::ostream& os, const Term& t);

// Builders for theory terms.
Term bv_literal(std::string_view digits);
Term bool_literal(bool b);
Term bvadd(const Term& x, const Term& y);
Term bvsub(const Term& x, const Term& y);
Term bv_cmp(CompareOp op, const Term& x, const Term& y);
Term eq(const Term& x, const Term& y);
Term land(const Term& x, const Term& y);
Term lor(const Term& x, const Term& y);
Term lnot(const Term& x);

}  // namespace bvterm

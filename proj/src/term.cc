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

#include "bvterm/term.h"

#include <algorithm>
#include <sstream>

namespace bvterm {

std::string to_string(const Value& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  return std::get<BitVec>(v).to_smtlib();
}

Sort Sort::bv(unsigned width) {
  if (width == 0) throw SortError("bit-vector sort width must be >= 1");
  return Sort(SortKind::Bv, width, {});
}

std::string Sort::to_string() const {
  switch (kind_) {
    case SortKind::Bool:
      return "Bool";
    case SortKind::Bv:
      return "(bv " + std::to_string(width_) + ")";
    case SortKind::Dp:
      return "dpsort";
    case SortKind::Named:
      return name_;
  }
  return "?";
}

Sort sort_of(const Value& v) {
  if (std::holds_alternative<bool>(v)) return Sort::boolean();
  return Sort::bv(std::get<BitVec>(v).width());
}

namespace {

const char* theory_name(TheoryOp op) {
  switch (op) {
    case TheoryOp::Add: return "bvadd";
    case TheoryOp::Sub: return "bvsub";
    case TheoryOp::Eq: return "=";
    case TheoryOp::Ult: return "bvult";
    case TheoryOp::Slt: return "bvslt";
    case TheoryOp::Uge: return "bvuge";
    case TheoryOp::Sge: return "bvsge";
    case TheoryOp::Ule: return "bvule";
    case TheoryOp::Sle: return "bvsle";
    case TheoryOp::And: return "and";
    case TheoryOp::Or: return "or";
    case TheoryOp::Not: return "not";
    case TheoryOp::None:
    case TheoryOp::Literal:
      break;
  }
  throw std::invalid_argument("theory_name: not an operator");
}

TheoryOp compare_to_theory(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return TheoryOp::Eq;
    case CompareOp::Ult: return TheoryOp::Ult;
    case CompareOp::Slt: return TheoryOp::Slt;
    case CompareOp::Uge: return TheoryOp::Uge;
    case CompareOp::Sge: return TheoryOp::Sge;
    case CompareOp::Ule: return TheoryOp::Ule;
    case CompareOp::Sle: return TheoryOp::Sle;
  }
  return TheoryOp::None;
}

}  // namespace

Symbol Symbol::function(std::string name, std::vector<Sort> args, Sort result) {
  for (const Sort& s : args) {
    if (s.kind() == SortKind::Dp) throw SortError("dpsort cannot be an argument sort");
  }
  return Symbol(std::move(name), std::move(args), std::move(result), SymbolKind::Function,
                TheoryOp::None, std::nullopt);
}

Symbol Symbol::marked(const Symbol& f) {
  if (f.kind() != SymbolKind::Function) {
    throw NotMarkable("only function symbols can be marked, got " + f.name());
  }
  return Symbol(f.name() + "#", f.arg_sorts_, Sort::dp(), SymbolKind::Marked, TheoryOp::None,
                std::nullopt);
}

std::string Symbol::unmarked_name() const {
  if (kind_ != SymbolKind::Marked) return name_;
  return name_.substr(0, name_.size() - 1);
}

Symbol Symbol::literal(const Value& v) {
  return Symbol(to_string(v), {}, sort_of(v), SymbolKind::Theory, TheoryOp::Literal, v);
}

Symbol Symbol::theory(TheoryOp op, const Sort& operand) {
  const Sort boolean = Sort::boolean();
  switch (op) {
    case TheoryOp::Add:
    case TheoryOp::Sub:
      if (!operand.is_bv()) throw SortError(std::string(theory_name(op)) + " needs bit-vector operands");
      return Symbol(theory_name(op), {operand, operand}, operand, SymbolKind::Theory, op, std::nullopt);
    case TheoryOp::Ult:
    case TheoryOp::Slt:
    case TheoryOp::Uge:
    case TheoryOp::Sge:
    case TheoryOp::Ule:
    case TheoryOp::Sle:
      if (!operand.is_bv()) throw SortError(std::string(theory_name(op)) + " needs bit-vector operands");
      return Symbol(theory_name(op), {operand, operand}, boolean, SymbolKind::Theory, op, std::nullopt);
    case TheoryOp::Eq:
      if (!operand.enumerable()) throw SortError("= needs Bool or bit-vector operands");
      return Symbol(theory_name(op), {operand, operand}, boolean, SymbolKind::Theory, op, std::nullopt);
    case TheoryOp::And:
    case TheoryOp::Or:
      return Symbol(theory_name(op), {boolean, boolean}, boolean, SymbolKind::Theory, op, std::nullopt);
    case TheoryOp::Not:
      return Symbol(theory_name(op), {boolean}, boolean, SymbolKind::Theory, op, std::nullopt);
    case TheoryOp::None:
    case TheoryOp::Literal:
      break;
  }
  throw std::invalid_argument("Symbol::theory: not an operator");
}

Term Term::var(Variable v) {
  if (v.sort.kind() == SortKind::Dp) throw SortError("variables cannot have sort dpsort");
  Sort s = v.sort;
  return Term(std::make_shared<const Node>(Node{std::move(v), {}, std::move(s)}));
}

Term Term::app(Symbol f, std::vector<Term> args) {
  if (args.size() != f.arity()) {
    throw SortError(f.name() + " expects " + std::to_string(f.arity()) + " argument(s), got " +
                    std::to_string(args.size()));
  }
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k].sort() != f.arg_sorts()[k]) {
      throw SortError("argument " + std::to_string(k + 1) + " of " + f.name() + " has sort " +
                      args[k].sort().to_string() + ", expected " + f.arg_sorts()[k].to_string());
    }
  }
  Sort s = f.result_sort();
  return Term(std::make_shared<const Node>(Node{std::move(f), std::move(args), std::move(s)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.node_->head == b.node_->head && a.node_->args == b.node_->args;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->head <=> b.node_->head; c != 0) return c;
  return std::lexicographical_compare_three_way(a.node_->args.begin(), a.node_->args.end(),
                                                b.node_->args.begin(), b.node_->args.end());
}

namespace {

void collect_subterms(const Term& t, Position& pos, std::vector<std::pair<Position, Term>>& out) {
  out.emplace_back(pos, t);
  if (t.is_var()) return;
  for (std::size_t k = 0; k < t.args().size(); ++k) {
    pos.push_back(k + 1);
    collect_subterms(t.args()[k], pos, out);
    pos.pop_back();
  }
}

}  // namespace

std::vector<std::pair<Position, Term>> subterms(const Term& t) {
  std::vector<std::pair<Position, Term>> out;
  Position pos;
  collect_subterms(t, pos, out);
  return out;
}

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t k : p) {
    if (cur->is_var() || k == 0 || k > cur->args().size()) {
      throw std::out_of_range("subterm_at: invalid position");
    }
    cur = &cur->args()[k - 1];
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t depth, const Term& replacement) {
  if (depth == p.size()) return replacement;
  std::size_t k = p[depth];
  if (t.is_var() || k == 0 || k > t.args().size()) {
    throw std::out_of_range("replace_at: invalid position");
  }
  std::vector<Term> args(t.args().begin(), t.args().end());
  args[k - 1] = replace_from(args[k - 1], p, depth + 1, replacement);
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_from(t, p, 0, replacement);
}

Term apply(const Substitution& sigma, const Term& t) {
  if (sigma.empty()) return t;
  if (t.is_var()) {
    auto it = sigma.find(t.variable());
    if (it == sigma.end()) return t;
    if (it->second.sort() != t.sort()) {
      throw SortError("substitution maps " + t.variable().name + " to a term of sort " +
                      it->second.sort().to_string());
    }
    return it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(bvterm::apply(sigma, a));
  return Term::app(t.symbol(), std::move(args));
}

Term mark(const Term& t) {
  if (t.is_var()) throw NotMarkable("cannot mark variable " + t.variable().name);
  if (t.symbol().kind() != SymbolKind::Function) {
    throw NotMarkable("cannot mark term rooted by " + t.symbol().name());
  }
  return Term::app(Symbol::marked(t.symbol()), std::vector<Term>(t.args().begin(), t.args().end()));
}

bool is_theory_term(const Term& t) {
  if (t.is_var()) return true;
  if (!t.symbol().is_theory()) return false;
  return std::all_of(t.args().begin(), t.args().end(), is_theory_term);
}

void collect_variables(const Term& t, std::vector<Variable>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.variable()) == out.end()) out.push_back(t.variable());
    return;
  }
  for (const Term& a : t.args()) collect_variables(a, out);
}

std::vector<Variable> variables(const Term& t) {
  std::vector<Variable> out;
  collect_variables(t, out);
  return out;
}

namespace {

void print_term(std::ostream& os, const Term& t) {
  if (t.is_var()) {
    os << t.variable().name;
    return;
  }
  if (t.args().empty()) {
    os << t.symbol().name();
    return;
  }
  os << '(' << t.symbol().name();
  for (const Term& a : t.args()) {
    os << ' ';
    print_term(os, a);
  }
  os << ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  print_term(os, t);
  return os;
}

Term bv_literal(std::string_view digits) {
  if (digits.starts_with("#b")) digits.remove_prefix(2);
  return Term::value(BitVec::from_digits(digits));
}

Term bool_literal(bool b) { return Term::value(b); }

Term bvadd(const Term& x, const Term& y) { return Term::app(Symbol::theory(TheoryOp::Add, x.sort()), {x, y}); }

Term bvsub(const Term& x, const Term& y) { return Term::app(Symbol::theory(TheoryOp::Sub, x.sort()), {x, y}); }

Term bv_cmp(CompareOp op, const Term& x, const Term& y) {
  return Term::app(Symbol::theory(compare_to_theory(op), x.sort()), {x, y});
}

Term eq(const Term& x, const Term& y) { return Term::app(Symbol::theory(TheoryOp::Eq, x.sort()), {x, y}); }

Term land(const Term& x, const Term& y) { return Term::app(Symbol::theory(TheoryOp::And, Sort::boolean()), {x, y}); }

Term lor(const Term& x, const Term& y) { return Term::app(Symbol::theory(TheoryOp::Or, Sort::boolean()), {x, y}); }

Term lnot(const Term& x) { return Term::app(Symbol::theory(TheoryOp::Not, Sort::boolean()), {x}); }

}  // namespace bvterm

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

#include "bvterm/formula.h"

#include <algorithm>
#include <sstream>

namespace bvterm {

Formula Formula::make(FormulaKind kind, std::vector<Formula> children, std::vector<Variable> bound) {
  return Formula(std::make_shared<const Node>(Node{kind, std::nullopt, std::move(children), std::move(bound)}));
}

Formula Formula::atom(Term t) {
  if (!t.sort().is_bool()) throw SortError("formula atom must have sort Bool: " + to_string(t));
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Atom, std::move(t), {}, {}}));
}

Formula Formula::negation(Formula f) { return make(FormulaKind::Not, {std::move(f)}); }

Formula Formula::conjunction(Formula a, Formula b) { return make(FormulaKind::And, {std::move(a), std::move(b)}); }

Formula Formula::disjunction(Formula a, Formula b) { return make(FormulaKind::Or, {std::move(a), std::move(b)}); }

Formula Formula::implication(Formula a, Formula b) {
  return make(FormulaKind::Implies, {std::move(a), std::move(b)});
}

Formula Formula::equivalence(Formula a, Formula b) { return make(FormulaKind::Iff, {std::move(a), std::move(b)}); }

Formula Formula::forall(std::vector<Variable> vars, Formula body) {
  if (vars.empty()) return body;
  return make(FormulaKind::Forall, {std::move(body)}, std::move(vars));
}

Formula Formula::exists(std::vector<Variable> vars, Formula body) {
  if (vars.empty()) return body;
  return make(FormulaKind::Exists, {std::move(body)}, std::move(vars));
}

namespace {

void collect_free(const Formula& f, std::vector<Variable>& bound, std::vector<Variable>& out) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      for (const Variable& v : variables(f.atom_term())) {
        if (std::find(bound.begin(), bound.end(), v) != bound.end()) continue;
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::size_t mark = bound.size();
      bound.insert(bound.end(), f.bound().begin(), f.bound().end());
      collect_free(f.children()[0], bound, out);
      bound.erase(bound.begin() + static_cast<std::ptrdiff_t>(mark), bound.end());
      return;
    }
    default:
      for (const Formula& c : f.children()) collect_free(c, bound, out);
  }
}

bool mentions(const Substitution& sigma, const Variable& v) {
  for (const auto& [from, to] : sigma) {
    auto vs = variables(to);
    if (std::find(vs.begin(), vs.end(), v) != vs.end()) return true;
  }
  return false;
}

}  // namespace

std::vector<Variable> Formula::free_variables() const {
  std::vector<Variable> bound;
  std::vector<Variable> out;
  collect_free(*this, bound, out);
  return out;
}

Formula Formula::substitute(const Substitution& sigma) const {
  if (sigma.empty()) return *this;
  switch (kind()) {
    case FormulaKind::Atom:
      return atom(bvterm::apply(sigma, atom_term()));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Substitution inner = sigma;
      for (const Variable& v : bound()) inner.erase(v);
      // Rename binders that an image would capture.
      std::vector<Variable> binders = bound();
      auto body_vars = children()[0].free_variables();
      for (Variable& b : binders) {
        if (!mentions(inner, b)) continue;
        Variable fresh = b;
        do {
          fresh.name += "'";
        } while (mentions(inner, fresh) || std::find(body_vars.begin(), body_vars.end(), fresh) != body_vars.end() ||
                 std::find(binders.begin(), binders.end(), fresh) != binders.end());
        inner.insert_or_assign(b, Term::var(fresh));
        b = fresh;
      }
      Formula body = children()[0].substitute(inner);
      return kind() == FormulaKind::Forall ? forall(std::move(binders), std::move(body))
                                           : exists(std::move(binders), std::move(body));
    }
    default: {
      std::vector<Formula> cs;
      cs.reserve(children().size());
      for (const Formula& c : children()) cs.push_back(c.substitute(sigma));
      return make(kind(), std::move(cs));
    }
  }
}

namespace {

void print_formula(std::ostream& os, const Formula& f) {
  auto binary = [&](const char* op) {
    os << '(' << op << ' ';
    print_formula(os, f.children()[0]);
    os << ' ';
    print_formula(os, f.children()[1]);
    os << ')';
  };
  switch (f.kind()) {
    case FormulaKind::Atom:
      os << f.atom_term();
      return;
    case FormulaKind::Not:
      os << "(not ";
      print_formula(os, f.children()[0]);
      os << ')';
      return;
    case FormulaKind::And: binary("and"); return;
    case FormulaKind::Or: binary("or"); return;
    case FormulaKind::Implies: binary("=>"); return;
    case FormulaKind::Iff: binary("="); return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      os << '(' << (f.kind() == FormulaKind::Forall ? "forall" : "exists") << " (";
      for (std::size_t k = 0; k < f.bound().size(); ++k) {
        if (k > 0) os << ' ';
        os << '(' << f.bound()[k].name << ' ' << f.bound()[k].sort.to_string() << ')';
      }
      os << ") ";
      print_formula(os, f.children()[0]);
      os << ')';
      return;
    }
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}

}  // namespace bvterm

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

#include "bvterm/lctrs.h"

#include <algorithm>
#include <functional>

namespace bvterm {

namespace {

bool contains(const std::vector<Variable>& vs, const Variable& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::vector<Variable> minus(const std::vector<Variable>& a, const std::vector<Variable>& b) {
  std::vector<Variable> out;
  for (const Variable& v : a) {
    if (!contains(b, v)) out.push_back(v);
  }
  return out;
}

}  // namespace

Rule::Rule(Term lhs, Term rhs, Term guard, std::string name)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)), guard_(std::move(guard)), name_(std::move(name)) {
  if (lhs_.is_var()) throw SortError("rule lhs must not be a variable");
  if (lhs_.symbol().is_theory()) throw SortError("rule lhs must not be rooted by theory symbol " + lhs_.symbol().name());
  if (lhs_.sort() != rhs_.sort()) {
    throw SortError("rule sides have different sorts: " + lhs_.sort().to_string() + " vs " +
                    rhs_.sort().to_string());
  }
  if (!guard_.sort().is_bool() || !is_theory_term(guard_)) {
    throw SortError("rule guard must be a boolean theory term: " + to_string(guard_));
  }
}

std::vector<Variable> Rule::fresh_rhs_variables() const { return minus(variables(rhs_), variables(lhs_)); }

std::vector<Variable> Rule::fresh_guard_variables() const { return minus(variables(guard_), variables(lhs_)); }

std::string to_string(const Rule& r) {
  std::string out = "(rule " + to_string(r.lhs()) + " " + to_string(r.rhs());
  if (!r.unconstrained()) out += " :guard " + to_string(r.guard());
  if (!r.name().empty()) out += " :name " + r.name();
  return out + ")";
}

void Lctrs::add_sort(const std::string& name) {
  if (has_sort(name)) throw std::invalid_argument("duplicate sort " + name);
  sorts_.push_back(name);
}

void Lctrs::add_function(const Symbol& f) {
  if (find_function(f.name()) != nullptr) throw std::invalid_argument("duplicate function " + f.name());
  functions_.push_back(f);
}

const Symbol* Lctrs::find_function(const std::string& name) const {
  for (const Symbol& f : functions_) {
    if (f.name() == name) return &f;
  }
  return nullptr;
}

bool Lctrs::has_sort(const std::string& name) const {
  return std::find(sorts_.begin(), sorts_.end(), name) != sorts_.end();
}

std::set<std::string> Lctrs::defined_symbols() const {
  std::set<std::string> out;
  for (const Rule& r : rules_) out.insert(r.lhs().symbol().name());
  return out;
}

bool Lctrs::is_defined(const Symbol& f) const {
  if (f.kind() != SymbolKind::Function) return false;
  return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.lhs().symbol() == f; });
}

bool respects(const Substitution& gamma, const Rule& rule) {
  std::vector<Variable> must_be_values = variables(rule.guard());
  for (const Variable& v : rule.fresh_rhs_variables()) {
    if (!contains(must_be_values, v)) must_be_values.push_back(v);
  }
  Assignment alpha;
  for (const Variable& v : must_be_values) {
    auto it = gamma.find(v);
    if (it == gamma.end() || !it->second.is_value()) return false;
    alpha.emplace(v, it->second.as_value());
  }
  return std::get<bool>(eval_term(rule.guard(), alpha));
}

std::optional<Term> calculation_step(const Term& t) {
  if (t.is_var() || !t.symbol().is_theory() || t.symbol().is_value()) return std::nullopt;
  for (const Term& a : t.args()) {
    if (!a.is_value()) return std::nullopt;
  }
  return Term::value(eval_term(t, {}));
}

bool match(const Term& pattern, const Term& t, Substitution& sigma) {
  if (pattern.is_var()) {
    if (pattern.sort() != t.sort()) return false;
    auto [it, inserted] = sigma.try_emplace(pattern.variable(), t);
    return inserted || it->second == t;
  }
  if (t.is_var() || pattern.symbol() != t.symbol()) return false;
  for (std::size_t k = 0; k < pattern.args().size(); ++k) {
    if (!match(pattern.args()[k], t.args()[k], sigma)) return false;
  }
  return true;
}

namespace {

/// Visits each reduct of `t` at its root by `rule`, in enumeration order of
/// the guard-only variables. Stops when `visit` returns false.
void rule_reducts(const Rule& rule, const Term& t, const Solver& solver,
                  const std::function<bool(const Term&)>& visit) {
  Substitution sigma;
  if (!match(rule.lhs(), t, sigma)) return;

  std::vector<Variable> fresh = rule.fresh_guard_variables();
  for (const Variable& v : rule.fresh_rhs_variables()) {
    if (!contains(fresh, v)) {
      throw RewriteError("rule " + to_string(rule) + " has rhs-only variable " + v.name +
                         " outside its guard; rewriting with it is not supported");
    }
  }
  // Guard variables bound by matching must be instantiated by values.
  Substitution ground;
  for (const Variable& v : variables(rule.guard())) {
    auto it = sigma.find(v);
    if (it == sigma.end()) continue;
    if (!it->second.is_value()) return;
    ground.emplace(v, it->second);
  }
  Term guard = bvterm::apply(ground, rule.guard());
  CompiledTerm compiled(guard, fresh);
  for_each_assignment(fresh, solver.options().enum_cap, [&](std::span<const Value> values) {
    if (!std::get<bool>(compiled(values))) return true;
    Substitution gamma = sigma;
    for (std::size_t k = 0; k < fresh.size(); ++k) gamma.insert_or_assign(fresh[k], Term::value(values[k]));
    return visit(bvterm::apply(gamma, rule.rhs()));
  });
}

void post_order(const Term& t, Position& pos, std::vector<Position>& out) {
  if (!t.is_var()) {
    for (std::size_t k = 0; k < t.args().size(); ++k) {
      pos.push_back(k + 1);
      post_order(t.args()[k], pos, out);
      pos.pop_back();
    }
  }
  out.push_back(pos);
}

}  // namespace

std::vector<Term> rewrite_successors(const Lctrs& system, const Term& t, const Solver& solver) {
  std::vector<Term> out;
  for (const auto& [pos, sub] : subterms(t)) {
    if (auto calc = calculation_step(sub)) out.push_back(replace_at(t, pos, *calc));
    for (const Rule& rule : system.rules()) {
      rule_reducts(rule, sub, solver, [&](const Term& reduct) {
        out.push_back(replace_at(t, pos, reduct));
        return true;
      });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RewriteResult rewrite_to_normal_form(const Lctrs& system, const Term& t, std::size_t step_cap,
                                     const Solver& solver) {
  RewriteResult result{t, {}, true};
  while (true) {
    std::optional<RewriteStep> step;
    std::vector<Position> positions;
    Position root;
    post_order(result.term, root, positions);
    for (const Position& pos : positions) {
      const Term& sub = subterm_at(result.term, pos);
      if (auto calc = calculation_step(sub)) {
        step = RewriteStep{replace_at(result.term, pos, *calc), pos, std::nullopt};
        break;
      }
      for (std::size_t r = 0; r < system.rules().size() && !step; ++r) {
        rule_reducts(system.rules()[r], sub, solver, [&](const Term& reduct) {
          step = RewriteStep{replace_at(result.term, pos, reduct), pos, r};
          return false;
        });
      }
      if (step) break;
    }
    if (!step) return result;
    if (result.trace.size() == step_cap) {
      result.normal_form = false;
      return result;
    }
    result.term = step->result;
    result.trace.push_back(std::move(*step));
  }
}

}  // namespace bvterm

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

#include "bvterm/dp.h"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace bvterm {

std::string to_string(const DependencyPair& p) { return "(" + std::to_string(p.id) + ") " + to_string(p.rule); }

DpProblem::DpProblem(std::vector<DependencyPair> pairs, std::shared_ptr<const Lctrs> system)
    : pairs_(std::move(pairs)), system_(std::move(system)) {
  std::sort(pairs_.begin(), pairs_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
}

std::vector<int> DpProblem::ids() const {
  std::vector<int> out;
  for (const DependencyPair& p : pairs_) out.push_back(p.id);
  return out;
}

const DependencyPair& DpProblem::pair(int id) const {
  for (const DependencyPair& p : pairs_) {
    if (p.id == id) return p;
  }
  throw std::out_of_range("no dependency pair with id " + std::to_string(id));
}

DpProblem DpProblem::restrict_to(const std::vector<int>& ids) const {
  std::vector<DependencyPair> out;
  for (const DependencyPair& p : pairs_) {
    if (std::find(ids.begin(), ids.end(), p.id) != ids.end()) out.push_back(p);
  }
  return DpProblem(std::move(out), system_);
}

std::string id_set(const DpProblem& p) {
  std::string out = "{";
  for (std::size_t k = 0; k < p.pairs().size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(p.pairs()[k].id);
  }
  return out + "}";
}

DpProblem dependency_pairs(std::shared_ptr<const Lctrs> system) {
  std::vector<DependencyPair> out;
  auto defined = system->defined_symbols();
  for (const Rule& rule : system->rules()) {
    Term lhs = mark(rule.lhs());
    for (const auto& [pos, t] : subterms(rule.rhs())) {
      if (t.is_var() || t.symbol().kind() != SymbolKind::Function || !defined.contains(t.symbol().name())) continue;
      Rule dp(lhs, mark(t), rule.guard());
      bool seen = std::any_of(out.begin(), out.end(), [&](const DependencyPair& p) { return p.rule == dp; });
      if (!seen) out.push_back({static_cast<int>(out.size()) + 1, std::move(dp)});
    }
  }
  return DpProblem(std::move(out), std::move(system));
}

DpProblem dependency_pairs(const Lctrs& system) { return dependency_pairs(std::make_shared<const Lctrs>(system)); }

bool DepGraph::has_edge(int from, int to) const {
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

namespace {

bool mentions(const std::vector<Variable>& vs, const std::string& name) {
  return std::any_of(vs.begin(), vs.end(), [&](const Variable& v) { return v.name == name; });
}

/// Renames every variable of `rule` away from `taken`.
Substitution rename_apart(const Rule& rule, std::vector<Variable>& taken) {
  std::vector<Variable> vars = variables(rule.lhs());
  collect_variables(rule.rhs(), vars);
  collect_variables(rule.guard(), vars);
  Substitution out;
  for (const Variable& v : vars) {
    Variable fresh = v;
    while (mentions(taken, fresh.name)) fresh.name += "'";
    taken.push_back(fresh);
    out.emplace(v, Term::var(fresh));
  }
  return out;
}

/// Replaces each occurrence of a variable outside `keep` by its own fresh
/// variable: such variables may be instantiated by non-values whose copies
/// need not reduce to the same value.
Term split_occurrences(const Term& t, const std::vector<Variable>& keep, std::vector<Variable>& taken) {
  if (t.is_var()) {
    if (std::find(keep.begin(), keep.end(), t.variable()) != keep.end()) return t;
    Variable fresh = t.variable();
    while (mentions(taken, fresh.name)) fresh.name += "'";
    taken.push_back(fresh);
    return Term::var(fresh);
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(split_occurrences(a, keep, taken));
  return Term::app(t.symbol(), std::move(args));
}

}  // namespace

bool may_follow(const DependencyPair& first, const DependencyPair& second, const Solver& solver) {
  const Term& target = first.rule.rhs();
  if (target.symbol() != second.rule.lhs().symbol()) return false;

  // Variables that a respecting substitution maps to values.
  std::vector<Variable> valued = variables(first.rule.guard());
  for (const Variable& v : first.rule.fresh_rhs_variables()) {
    if (std::find(valued.begin(), valued.end(), v) == valued.end()) valued.push_back(v);
  }
  std::vector<Variable> taken = variables(first.rule.lhs());
  collect_variables(first.rule.rhs(), taken);
  collect_variables(first.rule.guard(), taken);

  Substitution rename = rename_apart(second.rule, taken);
  Term next_lhs = bvterm::apply(rename, second.rule.lhs());
  Term next_guard = bvterm::apply(rename, second.rule.guard());

  Substitution flow;
  for (std::size_t j = 0; j < next_lhs.args().size(); ++j) {
    const Term& pattern = next_lhs.args()[j];
    const Term& actual = target.args()[j];
    if (!pattern.is_var() || !is_theory_term(actual)) continue;
    flow.try_emplace(pattern.variable(), split_occurrences(actual, valued, taken));
  }
  Formula constraint = Formula::atom(first.rule.guard()) && Formula::atom(bvterm::apply(flow, next_guard));
  try {
    return solver.is_satisfiable(constraint);
  } catch (const CapacityExceeded&) {
    return true;
  } catch (const EvalError&) {
    return true;
  }
}

DepGraph dg_approximation(const DpProblem& p, const Solver& solver) {
  DepGraph g;
  g.nodes = p.ids();
  for (const DependencyPair& a : p.pairs()) {
    for (const DependencyPair& b : p.pairs()) {
      if (may_follow(a, b, solver)) g.edges.emplace_back(a.id, b.id);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

std::vector<std::vector<int>> sccs(const DepGraph& g) {
  std::map<int, std::vector<int>> succ;
  for (int n : g.nodes) succ[n];
  for (const auto& [a, b] : g.edges) succ[a].push_back(b);

  // Tarjan.
  std::map<int, int> index;
  std::map<int, int> low;
  std::vector<int> stack;
  std::map<int, bool> on_stack;
  std::vector<std::vector<int>> found;
  int counter = 0;
  std::function<void(int)> connect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : succ[v]) {
      if (!index.contains(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      found.push_back(std::move(comp));
    }
  };
  for (int n : g.nodes) {
    if (!index.contains(n)) connect(n);
  }

  // Topological order of the condensation; among ready components the one
  // with the smallest id goes first, so unrelated components come out sorted.
  std::map<int, std::size_t> comp_of;
  for (std::size_t c = 0; c < found.size(); ++c) {
    std::sort(found[c].begin(), found[c].end());
    for (int v : found[c]) comp_of[v] = c;
  }
  std::vector<std::set<std::size_t>> after(found.size());
  std::vector<int> indegree(found.size(), 0);
  for (const auto& [a, b] : g.edges) {
    std::size_t ca = comp_of[a], cb = comp_of[b];
    if (ca != cb && after[ca].insert(cb).second) ++indegree[cb];
  }
  auto by_first_id = [&](std::size_t x, std::size_t y) { return found[x][0] > found[y][0]; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_first_id)> ready(by_first_id);
  for (std::size_t c = 0; c < found.size(); ++c) {
    if (indegree[c] == 0) ready.push(c);
  }
  std::vector<std::vector<int>> out;
  while (!ready.empty()) {
    std::size_t c = ready.top();
    ready.pop();
    const std::vector<int>& comp = found[c];
    if (comp.size() > 1 || g.has_edge(comp[0], comp[0])) out.push_back(comp);
    for (std::size_t d : after[c]) {
      if (--indegree[d] == 0) ready.push(d);
    }
  }
  return out;
}

std::vector<DpProblem> proc_dg(const DpProblem& p, const Solver& solver) {
  std::vector<DpProblem> out;
  for (const auto& comp : sccs(dg_approximation(p, solver))) out.push_back(p.restrict_to(comp));
  return out;
}

void write_dot(std::ostream& os, const DepGraph& g, const std::string& name) {
  os << "digraph " << name << " {\n";
  for (int n : g.nodes) os << "  n" << n << " [label=\"(" << n << ")\"];\n";
  for (const auto& [a, b] : g.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
}

}  // namespace bvterm

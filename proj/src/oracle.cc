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

#include "bvterm/oracle.h"

#include <algorithm>

namespace bvterm {

std::vector<BitVec> GroundGraph::decode(std::uint64_t node) const {
  std::vector<BitVec> out;
  for (unsigned w : widths) {
    out.emplace_back(w, node & ((std::uint64_t{1} << w) - 1));
    node >>= w;
  }
  return out;
}

std::uint64_t GroundGraph::encode(const std::vector<BitVec>& tuple) const {
  std::uint64_t node = 0;
  unsigned shift = 0;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    node |= tuple.at(k).low_word() << shift;
    shift += widths[k];
  }
  return node;
}

std::string GroundGraph::label(std::uint64_t node) const {
  std::vector<BitVec> tuple = decode(node);
  if (tuple.size() == 1) return tuple[0].to_smtlib();
  std::string out = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k > 0) out += ", ";
    out += tuple[k].to_smtlib();
  }
  return out + ")";
}

GroundGraph ground_transition_graph(const SingletonSelfLoop& view, const OracleOptions& options) {
  GroundGraph g;
  unsigned bits = 0;
  for (const Variable& x : view.lhs_vars) {
    if (!x.sort.is_bv()) throw OracleInapplicable("argument " + x.name + " is not a bit-vector");
    g.widths.push_back(x.sort.width());
    bits += x.sort.width();
  }
  if (bits >= 64 || (std::uint64_t{1} << bits) > options.state_cap) {
    throw OracleInapplicable("state space of 2^" + std::to_string(bits) + " tuples exceeds the oracle cap");
  }
  g.node_count = std::uint64_t{1} << bits;

  auto closed = [&](const std::vector<Variable>& vs) {
    return std::all_of(vs.begin(), vs.end(), [&](const Variable& v) {
      return std::find(view.lhs_vars.begin(), view.lhs_vars.end(), v) != view.lhs_vars.end();
    });
  };
  if (!closed(view.guard.free_variables())) throw OracleInapplicable("guard has variables outside the lhs");
  std::vector<CompiledTerm> successors;
  for (const Term& t : view.rhs_args) {
    if (!is_theory_term(t)) throw OracleInapplicable("argument " + to_string(t) + " is not a theory term");
    if (!closed(variables(t))) throw OracleInapplicable("argument " + to_string(t) + " has fresh variables");
    successors.emplace_back(t, view.lhs_vars);
  }
  CompiledFormula guard(view.guard, view.lhs_vars);

  std::vector<Value> env;
  std::vector<BitVec> next;
  for (std::uint64_t node = 0; node < g.node_count; ++node) {
    env.clear();
    for (BitVec& b : g.decode(node)) env.emplace_back(std::move(b));
    if (!guard(env)) continue;
    next.clear();
    for (const CompiledTerm& t : successors) next.push_back(std::get<BitVec>(t(env)));
    g.edges.emplace_back(node, g.encode(next));
  }
  return g;  // generated in source order, hence sorted
}

GroundGraph project(const GroundGraph& g, std::size_t i) {
  if (i == 0 || i > g.widths.size()) throw std::out_of_range("projection position out of range");
  GroundGraph p;
  p.widths = {g.widths[i - 1]};
  p.node_count = std::uint64_t{1} << p.widths[0];
  p.projection = i;
  unsigned shift = 0;
  for (std::size_t k = 0; k + 1 < i; ++k) shift += g.widths[k];
  const std::uint64_t mask = p.node_count - 1;
  for (const auto& [a, b] : g.edges) p.edges.emplace_back((a >> shift) & mask, (b >> shift) & mask);
  std::sort(p.edges.begin(), p.edges.end());
  p.edges.erase(std::unique(p.edges.begin(), p.edges.end()), p.edges.end());
  return p;
}

GroundGraph projection_graph(const SingletonSelfLoop& view, std::size_t i, const OracleOptions& options) {
  return project(ground_transition_graph(view, options), i);
}

std::optional<std::vector<std::uint64_t>> find_cycle(const GroundGraph& g) {
  // Edges are sorted by source, so a node's successors are a contiguous run.
  std::vector<std::size_t> first(g.node_count + 1, 0);
  for (const auto& e : g.edges) ++first[e.first + 1];
  for (std::uint64_t n = 0; n < g.node_count; ++n) first[n + 1] += first[n];

  enum : unsigned char { White, Grey, Black };
  std::vector<unsigned char> colour(g.node_count, White);
  std::vector<std::pair<std::uint64_t, std::size_t>> stack;  // node, next edge index
  for (std::uint64_t root = 0; root < g.node_count; ++root) {
    if (colour[root] != White) continue;
    colour[root] = Grey;
    stack.emplace_back(root, first[root]);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next == first[node + 1]) {
        colour[node] = Black;
        stack.pop_back();
        continue;
      }
      std::uint64_t succ = g.edges[next++].second;
      if (colour[succ] == Grey) {
        std::vector<std::uint64_t> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& f) { return f.first == succ; });
        for (; it != stack.end(); ++it) cycle.push_back(it->first);
        return cycle;
      }
      if (colour[succ] == White) {
        colour[succ] = Grey;
        stack.emplace_back(succ, first[succ]);
      }
    }
  }
  return std::nullopt;
}

bool is_acyclic(const GroundGraph& g) { return !find_cycle(g).has_value(); }

bool is_chain_free_bruteforce(const SingletonSelfLoop& view, const OracleOptions& options) {
  return is_acyclic(ground_transition_graph(view, options));
}

void write_dot(std::ostream& os, const GroundGraph& g, const std::string& name) {
  os << "digraph " << name << " {\n";
  for (std::uint64_t n = 0; n < g.node_count; ++n) os << "  n" << n << " [label=\"" << g.label(n) << "\"];\n";
  for (const auto& [a, b] : g.edges) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
}

}  // namespace bvterm

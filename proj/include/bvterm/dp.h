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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bvterm/lctrs.h"
#include "bvterm/solver.h"

namespace bvterm {

/// l# -> t# [guard], labelled by a 1-based id in generation order.
struct DependencyPair {
  int id;
  Rule rule;

  bool operator==(const DependencyPair&) const = default;
};

std::string to_string(const DependencyPair& p);

/// A set of dependency pairs of an underlying system.
class DpProblem {
 public:
  DpProblem() = default;
  DpProblem(std::vector<DependencyPair> pairs, std::shared_ptr<const Lctrs> system);

  const std::vector<DependencyPair>& pairs() const { return pairs_; }
  const std::shared_ptr<const Lctrs>& system() const { return system_; }
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }
  std::vector<int> ids() const;
  const DependencyPair& pair(int id) const;

  /// The pairs whose ids are listed, in id order.
  DpProblem restrict_to(const std::vector<int>& ids) const;

  bool operator==(const DpProblem& o) const { return pairs_ == o.pairs_; }

 private:
  std::vector<DependencyPair> pairs_;  // sorted by id
  std::shared_ptr<const Lctrs> system_;
};

/// "{1, 2}"
std::string id_set(const DpProblem& p);

/// DP(R): for each rule l -> r [g] and each subterm t of r with a defined
/// root, the pair l# -> t# [g]. Pre-order over r, rules in order, duplicates
/// dropped.
DpProblem dependency_pairs(std::shared_ptr<const Lctrs> system);
DpProblem dependency_pairs(const Lctrs& system);

struct DepGraph {
  std::vector<int> nodes;
  /// Sorted, unique.
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int from, int to) const;
};

/// Over-approximating edge test: roots agree and the guard of `first`
/// conjoined with the guard of `second`, with `second`'s lhs variables bound
/// to `first`'s theory-term rhs arguments, is satisfiable. Solver capacity
/// failures keep the edge.
bool may_follow(const DependencyPair& first, const DependencyPair& second, const Solver& solver);

DepGraph dg_approximation(const DpProblem& p, const Solver& solver = Solver());

/// Strongly connected components carrying at least one internal edge, in
/// topological order with ties broken by smallest id; ids ascending inside
/// each component.
std::vector<std::vector<int>> sccs(const DepGraph& g);

/// One sub-problem per edge-bearing SCC of the DG approximation.
std::vector<DpProblem> proc_dg(const DpProblem& p, const Solver& solver = Solver());

/// Graphviz rendering, nodes labelled "(id)".
void write_dot(std::ostream& os, const DepGraph& g, const std::string& name = "dg");

}  // namespace bvterm

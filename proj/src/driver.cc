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

#include "bvterm/driver.h"

#include <functional>

namespace bvterm {

std::string to_string(Processor p) {
  switch (p) {
    case Processor::None: return "none";
    case Processor::DependencyGraph: return "dependency graph";
    case Processor::SingletonSelfLoopRemoval: return "singleton self-loop removal";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

std::chrono::microseconds since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
}

ProofNode run_ssr(const DpProblem& p, const Solver& solver, const ProverOptions& options) {
  ProofNode node{p, Processor::None, {}, {}, std::nullopt, {}};
  auto start = Clock::now();
  SsrResult r = proc_ssr(p, solver, options.ssr);
  node.elapsed = since(start);
  if (!r.problems) {
    node.detail = r.note;
    return node;
  }
  node.processor = Processor::SingletonSelfLoopRemoval;
  node.certificate = r.certificate;
  node.detail = to_string(*r.certificate);
  for (const DpProblem& q : *r.problems) node.children.push_back({q, Processor::None, {}, {}, std::nullopt, {}});
  return node;
}

bool any_open(const ProofNode& n) {
  if (n.open()) return true;
  for (const ProofNode& c : n.children) {
    if (any_open(c)) return true;
  }
  return false;
}

}  // namespace

ProofResult prove_termination(const Lctrs& system, const ProverOptions& options) {
  Solver solver(options.solver);
  ProofResult result;
  result.root.problem = dependency_pairs(system);
  if (!result.root.problem.empty()) {
    auto start = Clock::now();
    DepGraph g = dg_approximation(result.root.problem, solver);
    result.root.processor = Processor::DependencyGraph;
    for (const auto& comp : sccs(g)) {
      result.root.children.push_back(run_ssr(result.root.problem.restrict_to(comp), solver, options));
    }
    result.root.elapsed = since(start);
    result.root.detail = std::to_string(g.edges.size()) + " edge(s), " + std::to_string(result.root.children.size()) +
                         " cyclic component(s)";
    result.graph = std::move(g);
  }
  result.verdict = any_open(result.root) ? Verdict::Unknown : Verdict::Terminating;
  return result;
}

namespace {

void print_node(std::ostream& os, const ProofNode& n, int depth) {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  os << indent << id_set(n.problem);
  if (n.problem.empty()) {
    os << " solved\n";
    return;
  }
  if (n.open()) {
    os << " open: " << n.detail << '\n';
  } else {
    os << " by " << to_string(n.processor) << " (" << n.detail << ", " << n.elapsed.count() << " us)\n";
  }
  if (depth == 0 || n.open()) {
    for (const DependencyPair& p : n.problem.pairs()) os << indent << "  " << to_string(p) << '\n';
  }
  for (const ProofNode& c : n.children) print_node(os, c, depth + 1);
}

}  // namespace

void print_proof(std::ostream& os, const ProofResult& result) {
  os << (result.verdict == Verdict::Terminating ? "YES" : "MAYBE") << '\n';
  print_node(os, result.root, 0);
}

std::vector<OracleCheck> cross_check_with_oracle(const ProofResult& result, const ProverOptions& options,
                                                 const OracleOptions& oracle) {
  Solver solver(options.solver);
  std::vector<OracleCheck> out;
  std::function<void(const ProofNode&)> visit = [&](const ProofNode& n) {
    if (n.processor == Processor::SingletonSelfLoopRemoval || n.open()) {
      OracleCheck check{n.problem, n.processor == Processor::SingletonSelfLoopRemoval, {}, {}, {}, {}};
      SelfLoopResult shape = as_singleton_self_loop(n.problem, solver);
      if (!shape) {
        check.note = "oracle inapplicable: not a singleton self-loop (" + to_string(*shape.reason) + ")";
      } else {
        try {
          GroundGraph g = ground_transition_graph(*shape.view, oracle);
          check.cycle = find_cycle(g);
          check.acyclic = !check.cycle.has_value();
          check.note = *check.acyclic ? "oracle: ground graph acyclic"
                                      : "oracle: ground cycle of length " + std::to_string(check.cycle->size());
          check.graph = std::move(g);
        } catch (const OracleInapplicable& e) {
          check.note = std::string("oracle inapplicable: ") + e.what();
        }
      }
      out.push_back(std::move(check));
    }
    for (const ProofNode& c : n.children) visit(c);
  };
  visit(result.root);
  return out;
}

}  // namespace bvterm

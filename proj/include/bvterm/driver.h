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

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bvterm/dp.h"
#include "bvterm/lctrs.h"
#include "bvterm/oracle.h"
#include "bvterm/ssr.h"

namespace bvterm {

enum class Verdict { Terminating, Unknown };

enum class Processor { None, DependencyGraph, SingletonSelfLoopRemoval };

std::string to_string(Processor p);

struct ProofNode {
  DpProblem problem;
  Processor processor = Processor::None;
  std::vector<ProofNode> children;
  /// Processor-specific justification, or why nothing applied.
  std::string detail;
  std::optional<SsrCertificate> certificate;
  std::chrono::microseconds elapsed{0};

  /// The empty problem, or a processor that produced no sub-problems.
  bool solved() const { return problem.empty() || (processor != Processor::None && children.empty()); }
  bool open() const { return processor == Processor::None && !problem.empty(); }
};

struct ProofResult {
  Verdict verdict = Verdict::Unknown;
  ProofNode root;
  std::optional<DepGraph> graph;  // of the initial problem
};

struct ProverOptions {
  SolverOptions solver;
  SsrOptions ssr;
};

/// DP(R), then the graph processor, then singleton self-loop removal on each
/// component. Terminating iff no leaf is left open.
ProofResult prove_termination(const Lctrs& system, const ProverOptions& options = {});

/// Indented, one problem per line.
void print_proof(std::ostream& os, const ProofResult& result);

struct OracleCheck {
  DpProblem problem;
  bool claimed_solved = false;  // by the prover
  std::optional<bool> acyclic;  // empty if the oracle was inapplicable
  std::optional<std::vector<std::uint64_t>> cycle;
  std::optional<GroundGraph> graph;
  std::string note;

  /// The prover solved a problem the oracle shows has an infinite chain.
  bool disagrees() const { return claimed_solved && acyclic == false; }
};

/// Runs the ground oracle on every singleton self-loop node of the tree.
std::vector<OracleCheck> cross_check_with_oracle(const ProofResult& result, const ProverOptions& options = {},
                                                 const OracleOptions& oracle = {});

}  // namespace bvterm

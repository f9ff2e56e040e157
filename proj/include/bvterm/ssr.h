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

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bvterm/dp.h"
#include "bvterm/formula.h"
#include "bvterm/solver.h"

namespace bvterm {

// Singleton self-loop removal.
//
// A problem {f#(x1..xn) -> f#(t1..tn) [phi]} is chain-free if some
// bit-vector argument i acts as a loop variable: the guard is insensitive to
// the other arguments, x_i moves by a fixed nonzero step each application,
// and there is an interval of values, fixed along the loop and at least as
// long as the step's lowest set bit, in which the guard is false. The loop
// variable must eventually land in that interval, so no chain is infinite.
// For odd steps the interval condition reduces to "forall x_i. phi" being
// unsatisfiable, which needs no witness search.

/// Positions are 1-based throughout, matching argument numbering.
struct SingletonSelfLoop {
  DependencyPair pair;
  Symbol symbol;                     // f#
  std::vector<Variable> lhs_vars;    // x1..xn
  std::vector<Term> rhs_args;        // t1..tn
  Formula guard;                     // phi
  std::vector<std::size_t> bv_positions;

  std::size_t arity() const { return lhs_vars.size(); }
  const Variable& x(std::size_t i) const { return lhs_vars.at(i - 1); }
  const Term& t(std::size_t i) const { return rhs_args.at(i - 1); }
  /// Var(phi) minus {x1..xn}.
  std::vector<Variable> guard_only_variables() const;
};

enum class SelfLoopReason { NotSingleton, RootMismatch, LhsNotDistinctVariables, GuardUnsatisfiable, NoSelfEdge, SolverUnknown };

std::string to_string(SelfLoopReason r);

struct SelfLoopResult {
  std::optional<SingletonSelfLoop> view;
  std::optional<SelfLoopReason> reason;

  explicit operator bool() const { return view.has_value(); }
};

SelfLoopResult as_singleton_self_loop(const DpProblem& p, const Solver& solver = Solver());

/// Result of a side condition that may need more enumeration than allowed.
enum class Outcome { Holds, Fails, Unknown };

std::string to_string(Outcome o);

/// The pair preserves its constraint w.r.t. `kept` when the guard mentions
/// every x_i outside `kept`, every t_j with x_j in the guard is a theory
/// term, and (exists y. phi) <=> (exists y. phi)theta is valid for
/// theta = {x_j -> t_j | j in kept}, y ranging over the guard-only variables.
Outcome preserves_constraint(const SingletonSelfLoop& view, const std::set<std::size_t>& kept,
                             const Solver& solver = Solver());

struct IncrementInfo {
  std::size_t position;
  BitVec delta;     // constant value of t_i - x_i
  unsigned a;       // trailing zeros of delta
  std::string c;    // leading width-a-1 digits of delta
};

/// Constant nonzero step of argument `i`, if t_i - x_i is constant.
/// Throws CapacityExceeded when the enumeration is too large.
std::optional<IncrementInfo> increment_analysis(const SingletonSelfLoop& view, std::size_t i,
                                                const Solver& solver = Solver());

Outcome check_theorem3(const SingletonSelfLoop& view, std::size_t i, const Solver& solver = Solver());

struct IntervalWitness {
  Term u;
  Term v;
};

/// Checks the interval conditions for (u, v) given the step of argument `i`.
/// The preservation and constant-step conditions are the caller's to
/// establish; see proc_ssr.
Outcome check_theorem2(const SingletonSelfLoop& view, std::size_t i, const IncrementInfo& info,
                       const IntervalWitness& w, const Solver& solver = Solver());
/// Same, computing the step first; Fails if there is no constant step.
Outcome check_theorem2(const SingletonSelfLoop& view, std::size_t i, const IntervalWitness& w,
                       const Solver& solver = Solver());

struct SsrOptions {
  /// Largest bit width for which witness templates are enumerated.
  unsigned width_cap = 8;
};

/// Candidate interval bounds, in search order: constants ascending, then
/// for each loop-header variable y occurring in the guard (declaration
/// order) y itself followed by y + k for k ascending.
std::vector<Term> witness_templates(const SingletonSelfLoop& view, std::size_t i);

struct WitnessSearch {
  std::optional<IntervalWitness> witness;
  bool unknown = false;  // width cap or solver capacity hit
};

/// First (u, v) over the template space with check_theorem2 holding; u
/// varies slowest.
WitnessSearch search_interval_witness(const SingletonSelfLoop& view, std::size_t i, const IncrementInfo& info,
                                      const Solver& solver = Solver(), const SsrOptions& options = {});

struct SsrCertificate {
  int theorem;  // 2 or 3
  std::size_t position;
  BitVec delta;
  unsigned a;
  std::optional<IntervalWitness> witness;
};

std::string to_string(const SsrCertificate& c);

struct SsrResult {
  /// {empty problem} when the processor applies.
  std::optional<std::vector<DpProblem>> problems;
  std::optional<SsrCertificate> certificate;
  /// Why the processor did not apply.
  std::string note;
};

SsrResult proc_ssr(const DpProblem& p, const Solver& solver = Solver(), const SsrOptions& options = {});

}  // namespace bvterm

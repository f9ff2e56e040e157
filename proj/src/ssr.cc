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

#include "bvterm/ssr.h"

#include <algorithm>
#include <stdexcept>

namespace bvterm {

namespace {

bool contains(const std::vector<Variable>& vs, const Variable& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

Outcome from_bool(bool b) { return b ? Outcome::Holds : Outcome::Fails; }

/// Runs a solver query, mapping capacity and evaluation failures to Unknown.
template <typename F>
Outcome guarded(F&& query) {
  try {
    return query();
  } catch (const CapacityExceeded&) {
    return Outcome::Unknown;
  } catch (const EvalError&) {
    return Outcome::Unknown;
  }
}

void check_position(const SingletonSelfLoop& view, std::size_t i) {
  if (i == 0 || i > view.arity()) {
    throw std::out_of_range("argument position " + std::to_string(i) + " out of range");
  }
}

BitVec power_of_two(unsigned width, unsigned a) {
  std::string digits(width, '0');
  digits[width - 1 - a] = '1';
  return BitVec::from_digits(digits);
}

/// theta = {x_j -> t_j} over the positions in `kept` whose t_j is a theory term.
Substitution loop_substitution(const SingletonSelfLoop& view, const std::vector<std::size_t>& kept) {
  Substitution theta;
  for (std::size_t j : kept) {
    if (is_theory_term(view.t(j))) theta.insert_or_assign(view.x(j), view.t(j));
  }
  return theta;
}

std::vector<std::size_t> all_positions(const SingletonSelfLoop& view) {
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= view.arity(); ++j) out.push_back(j);
  return out;
}

}  // namespace

std::vector<Variable> SingletonSelfLoop::guard_only_variables() const {
  std::vector<Variable> out;
  for (const Variable& v : guard.free_variables()) {
    if (!contains(lhs_vars, v)) out.push_back(v);
  }
  return out;
}

std::string to_string(SelfLoopReason r) {
  switch (r) {
    case SelfLoopReason::NotSingleton: return "not-singleton";
    case SelfLoopReason::RootMismatch: return "root-mismatch";
    case SelfLoopReason::LhsNotDistinctVariables: return "lhs-not-distinct-vars";
    case SelfLoopReason::GuardUnsatisfiable: return "guard-unsat";
    case SelfLoopReason::NoSelfEdge: return "no-self-edge";
    case SelfLoopReason::SolverUnknown: return "unknown";
  }
  return "?";
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Holds: return "holds";
    case Outcome::Fails: return "fails";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

SelfLoopResult as_singleton_self_loop(const DpProblem& p, const Solver& solver) {
  auto fail = [](SelfLoopReason r) { return SelfLoopResult{std::nullopt, r}; };
  if (p.size() != 1) return fail(SelfLoopReason::NotSingleton);
  const DependencyPair& pair = p.pairs().front();
  const Term& lhs = pair.rule.lhs();
  const Term& rhs = pair.rule.rhs();
  if (rhs.is_var() || rhs.symbol() != lhs.symbol()) return fail(SelfLoopReason::RootMismatch);

  SingletonSelfLoop view{pair, lhs.symbol(), {}, {}, Formula::atom(pair.rule.guard()), {}};
  for (std::size_t k = 0; k < lhs.args().size(); ++k) {
    const Term& a = lhs.args()[k];
    if (!a.is_var() || contains(view.lhs_vars, a.variable())) return fail(SelfLoopReason::LhsNotDistinctVariables);
    view.lhs_vars.push_back(a.variable());
    view.rhs_args.push_back(rhs.args()[k]);
    if (a.sort().is_bv()) view.bv_positions.push_back(k + 1);
  }

  try {
    if (!solver.is_satisfiable(view.guard)) return fail(SelfLoopReason::GuardUnsatisfiable);
  } catch (const CapacityExceeded&) {
    return fail(SelfLoopReason::SolverUnknown);
  } catch (const EvalError&) {
    return fail(SelfLoopReason::SolverUnknown);
  }
  if (!may_follow(pair, pair, solver)) return fail(SelfLoopReason::NoSelfEdge);
  return SelfLoopResult{std::move(view), std::nullopt};
}

Outcome preserves_constraint(const SingletonSelfLoop& view, const std::set<std::size_t>& kept,
                             const Solver& solver) {
  for (std::size_t j : kept) check_position(view, j);
  std::vector<Variable> in_guard = view.guard.free_variables();
  for (std::size_t j = 1; j <= view.arity(); ++j) {
    if (!kept.contains(j) && !contains(in_guard, view.x(j))) return Outcome::Fails;
  }
  for (std::size_t j = 1; j <= view.arity(); ++j) {
    if (contains(in_guard, view.x(j)) && !is_theory_term(view.t(j))) return Outcome::Fails;
  }
  // Positions whose variable is absent from the guard cannot change it.
  std::vector<std::size_t> relevant;
  for (std::size_t j : kept) {
    if (contains(in_guard, view.x(j))) relevant.push_back(j);
  }
  Formula projected = Formula::exists(view.guard_only_variables(), view.guard);
  Formula condition = iff(projected, projected.substitute(loop_substitution(view, relevant)));
  return guarded([&] { return from_bool(solver.is_valid(condition)); });
}

std::optional<IncrementInfo> increment_analysis(const SingletonSelfLoop& view, std::size_t i, const Solver& solver) {
  check_position(view, i);
  const Variable& x = view.x(i);
  const Term& t = view.t(i);
  if (!x.sort.is_bv() || !is_theory_term(t)) return std::nullopt;
  Term diff = bvsub(t, Term::var(x));
  std::vector<Variable> vars = variables(diff);
  std::optional<BitVec> delta = solver.constant_value(diff, vars);
  if (!delta || delta->is_zero()) return std::nullopt;
  unsigned a = trailing_zeros(*delta);
  std::string c = delta->digits().substr(0, x.sort.width() - a - 1);
  return IncrementInfo{i, *delta, a, std::move(c)};
}

Outcome check_theorem3(const SingletonSelfLoop& view, std::size_t i, const Solver& solver) {
  check_position(view, i);
  if (!view.x(i).sort.is_bv()) return Outcome::Fails;
  std::set<std::size_t> others;
  for (std::size_t j = 1; j <= view.arity(); ++j) {
    if (j != i) others.insert(j);
  }
  if (Outcome o = preserves_constraint(view, others, solver); o != Outcome::Holds) return o;
  return guarded([&] {
    std::optional<IncrementInfo> info = increment_analysis(view, i, solver);
    if (!info || info->a != 0) return Outcome::Fails;
    // Guard-only variables are chosen afresh at every step, so they are
    // existentially bound under x_i; leaving them free would let a single
    // choice refute the formula while every step still finds a witness.
    Formula every = Formula::forall({view.x(i)}, Formula::exists(view.guard_only_variables(), view.guard));
    return from_bool(!solver.is_satisfiable(every));
  });
}

Outcome check_theorem2(const SingletonSelfLoop& view, std::size_t i, const IncrementInfo& info,
                       const IntervalWitness& w, const Solver& solver) {
  check_position(view, i);
  const Variable& xi = view.x(i);
  if (!xi.sort.is_bv() || w.u.sort() != xi.sort || w.v.sort() != xi.sort) return Outcome::Fails;
  if (!is_theory_term(w.u) || !is_theory_term(w.v)) return Outcome::Fails;

  // Bounds may only mention loop-header variables of the guard, each of
  // which must be carried along by a theory term.
  std::vector<Variable> in_guard = view.guard.free_variables();
  std::vector<Variable> used = variables(w.u);
  collect_variables(w.v, used);
  for (const Variable& y : used) {
    auto it = std::find(view.lhs_vars.begin(), view.lhs_vars.end(), y);
    if (it == view.lhs_vars.end() || !contains(in_guard, y)) return Outcome::Fails;
    if (!is_theory_term(view.t(static_cast<std::size_t>(it - view.lhs_vars.begin()) + 1))) return Outcome::Fails;
  }

  Substitution theta = loop_substitution(view, all_positions(view));
  Term x = Term::var(xi);
  const Term& u = w.u;
  const Term& v = w.v;
  Term step = Term::value(power_of_two(xi.sort.width(), info.a));

  Formula fixed = Formula::atom(eq(u, bvterm::apply(theta, u))) && Formula::atom(eq(v, bvterm::apply(theta, v))) &&
                  Formula::atom(bv_cmp(CompareOp::Uge, bvsub(v, u), step));
  Formula six_a = implies(view.guard, fixed);

  Formula guard = Formula::exists(view.guard_only_variables(), view.guard);
  Term outside = land(lor(bv_cmp(CompareOp::Ult, x, u), bv_cmp(CompareOp::Ule, v, x)), bv_cmp(CompareOp::Ult, u, v));
  Term wrapped = land(bv_cmp(CompareOp::Ule, v, x), bv_cmp(CompareOp::Ult, x, u));
  Formula six_b = Formula::forall({xi}, implies(guard, Formula::atom(outside))) ||
                  Formula::forall({xi}, implies(guard, Formula::atom(wrapped)));

  return guarded([&] {
    if (!solver.is_valid(six_a)) return Outcome::Fails;
    return from_bool(solver.is_valid(six_b));
  });
}

Outcome check_theorem2(const SingletonSelfLoop& view, std::size_t i, const IntervalWitness& w, const Solver& solver) {
  Outcome result = Outcome::Fails;
  Outcome o = guarded([&] {
    std::optional<IncrementInfo> info = increment_analysis(view, i, solver);
    if (info) result = check_theorem2(view, i, *info, w, solver);
    return Outcome::Holds;
  });
  return o == Outcome::Unknown ? o : result;
}

std::vector<Term> witness_templates(const SingletonSelfLoop& view, std::size_t i) {
  check_position(view, i);
  const Sort& sort = view.x(i).sort;
  if (!sort.is_bv() || sort.width() > 16) throw std::invalid_argument("witness templates need a narrow bit-vector position");
  const std::uint64_t count = std::uint64_t{1} << sort.width();
  std::vector<Term> constants;
  for (std::uint64_t k = 0; k < count; ++k) constants.push_back(Term::value(BitVec(sort.width(), k)));

  std::vector<Term> out = constants;
  std::vector<Variable> in_guard = view.guard.free_variables();
  for (const Variable& y : view.lhs_vars) {
    if (y.sort != sort || !contains(in_guard, y)) continue;
    Term var = Term::var(y);
    out.push_back(var);
    for (std::uint64_t k = 1; k < count; ++k) out.push_back(bvadd(var, constants[k]));
  }
  return out;
}

WitnessSearch search_interval_witness(const SingletonSelfLoop& view, std::size_t i, const IncrementInfo& info,
                                      const Solver& solver, const SsrOptions& options) {
  check_position(view, i);
  WitnessSearch result;
  const Sort& sort = view.x(i).sort;
  if (!sort.is_bv() || sort.width() > options.width_cap) {
    result.unknown = true;
    return result;
  }

  // (6a) asks both bounds to be loop invariant; filtering templates by that
  // first keeps the pair loop small without changing which pair is first.
  Substitution theta = loop_substitution(view, all_positions(view));
  std::vector<Term> invariant;
  for (const Term& t : witness_templates(view, i)) {
    std::vector<Variable> used = variables(t);
    bool carried = std::all_of(used.begin(), used.end(), [&](const Variable& y) { return theta.contains(y); });
    if (!carried) continue;
    Outcome o = guarded([&] {
      return from_bool(solver.is_valid(implies(view.guard, Formula::atom(eq(t, bvterm::apply(theta, t))))));
    });
    if (o == Outcome::Holds) invariant.push_back(t);
    if (o == Outcome::Unknown) result.unknown = true;
  }

  for (const Term& u : invariant) {
    for (const Term& v : invariant) {
      if (u == v) continue;
      IntervalWitness w{u, v};
      Outcome o = check_theorem2(view, i, info, w, solver);
      if (o == Outcome::Holds) {
        result.witness = std::move(w);
        result.unknown = false;
        return result;
      }
      if (o == Outcome::Unknown) result.unknown = true;
    }
  }
  return result;
}

std::string to_string(const SsrCertificate& c) {
  std::string out = "theorem " + std::to_string(c.theorem) + " at position " + std::to_string(c.position) +
                    ", delta " + c.delta.to_smtlib() + ", a = " + std::to_string(c.a);
  if (c.witness) out += ", u = " + to_string(c.witness->u) + ", v = " + to_string(c.witness->v);
  return out;
}

SsrResult proc_ssr(const DpProblem& p, const Solver& solver, const SsrOptions& options) {
  SsrResult result;
  SelfLoopResult shape = as_singleton_self_loop(p, solver);
  if (!shape) {
    result.note = "not a singleton self-loop (" + to_string(*shape.reason) + ")";
    return result;
  }
  const SingletonSelfLoop& view = *shape.view;
  auto solved = [&](SsrCertificate cert) {
    result.problems = std::vector<DpProblem>{DpProblem({}, p.system())};
    result.certificate = std::move(cert);
    result.note.clear();
    return result;
  };

  std::vector<std::string> notes;
  for (std::size_t i : view.bv_positions) {
    if (check_theorem3(view, i, solver) == Outcome::Holds) {
      std::optional<IncrementInfo> info = increment_analysis(view, i, solver);
      return solved({3, i, info->delta, info->a, std::nullopt});
    }
    std::set<std::size_t> others;
    for (std::size_t j = 1; j <= view.arity(); ++j) {
      if (j != i) others.insert(j);
    }
    Outcome preserved = preserves_constraint(view, others, solver);
    if (preserved != Outcome::Holds) {
      notes.push_back(std::to_string(i) + ": constraint not preserved (" + to_string(preserved) + ")");
      continue;
    }
    std::optional<IncrementInfo> info;
    Outcome stepped = guarded([&] {
      info = increment_analysis(view, i, solver);
      return from_bool(info.has_value());
    });
    if (stepped != Outcome::Holds) {
      notes.push_back(std::to_string(i) + ": no constant nonzero step (" + to_string(stepped) + ")");
      continue;
    }
    WitnessSearch search = search_interval_witness(view, i, *info, solver, options);
    if (search.witness) return solved({2, i, info->delta, info->a, search.witness});
    notes.push_back(std::to_string(i) + (search.unknown ? ": witness search inconclusive" : ": no interval witness"));
  }
  result.note = "no position qualifies";
  for (const std::string& n : notes) result.note += "; " + n;
  return result;
}

}  // namespace bvterm

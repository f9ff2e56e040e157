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

#include "bvterm/solver.h"

#include <algorithm>
#include <limits>
#include <sstream>

namespace bvterm {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

}  // namespace

CapacityExceeded::CapacityExceeded(std::uint64_t required)
    : std::runtime_error("enumeration cap exceeded: " +
                         (required == kSaturated ? std::string(">= 2^64") : std::to_string(required)) +
                         " assignments required"),
      required_(required) {}

std::uint64_t domain_size(const Sort& s) {
  if (s.is_bool()) return 2;
  if (s.is_bv()) return s.width() >= 64 ? kSaturated : (std::uint64_t{1} << s.width());
  throw UnsupportedSort("sort " + s.to_string() + " has no enumerable carrier");
}

std::string to_string(const Assignment& a) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [var, val] : a) {
    if (!first) os << ", ";
    first = false;
    os << var.name << " -> " << to_string(val);
  }
  os << '}';
  return os.str();
}

namespace detail {

enum class OpCode : std::uint8_t {
  Slot, Const, Add, Sub, Eq, Ult, Slt, Uge, Sge, Ule, Sle, And, Or, Not, Implies, Iff, Forall, Exists
};

struct Instr {
  explicit Instr(OpCode o, std::uint32_t l = 0, std::uint32_t r = 0, std::uint32_t s = 0)
      : op(o), lhs(l), rhs(r), slot(s) {}

  OpCode op;
  std::uint32_t lhs;
  std::uint32_t rhs;
  std::uint32_t slot;
  Value constant{false};
  std::vector<std::uint32_t> binders;
};

Value first_value(const Sort& s) {
  if (s.is_bool()) return false;
  return BitVec::zeros(s.width());
}

/// Steps `v` to the next value of its sort; false once it wraps around.
bool advance(Value& v) {
  if (bool* b = std::get_if<bool>(&v)) {
    *b = !*b;
    return *b;
  }
  BitVec& x = std::get<BitVec>(v);
  x = x.successor();
  return !x.is_zero();
}

/// Odometer over `slots`, first slot fastest; false once all wrapped.
bool advance_all(std::vector<Value>& env, std::span<const std::uint32_t> slots) {
  for (std::uint32_t s : slots) {
    if (advance(env[s])) return true;
  }
  return false;
}

struct Program {
  std::vector<Instr> code;
  std::uint32_t root = 0;
  std::vector<Sort> slot_sorts;
  std::uint64_t quantifier_work = 1;

  Value value(std::uint32_t at, std::vector<Value>& env) const {
    const Instr& in = code[at];
    switch (in.op) {
      case OpCode::Slot:
        return env[in.slot];
      case OpCode::Const:
        return in.constant;
      case OpCode::Add:
        return bv_add(std::get<BitVec>(value(in.lhs, env)), std::get<BitVec>(value(in.rhs, env)));
      case OpCode::Sub:
        return bv_sub(std::get<BitVec>(value(in.lhs, env)), std::get<BitVec>(value(in.rhs, env)));
      default:
        return truth(at, env);
    }
  }

  bool compare(CompareOp op, const Instr& in, std::vector<Value>& env) const {
    return bv_compare(op, std::get<BitVec>(value(in.lhs, env)), std::get<BitVec>(value(in.rhs, env)));
  }

  bool truth(std::uint32_t at, std::vector<Value>& env) const {
    const Instr& in = code[at];
    switch (in.op) {
      case OpCode::Slot:
        return std::get<bool>(env[in.slot]);
      case OpCode::Const:
        return std::get<bool>(in.constant);
      case OpCode::Eq:
        return value(in.lhs, env) == value(in.rhs, env);
      case OpCode::Ult: return compare(CompareOp::Ult, in, env);
      case OpCode::Slt: return compare(CompareOp::Slt, in, env);
      case OpCode::Uge: return compare(CompareOp::Uge, in, env);
      case OpCode::Sge: return compare(CompareOp::Sge, in, env);
      case OpCode::Ule: return compare(CompareOp::Ule, in, env);
      case OpCode::Sle: return compare(CompareOp::Sle, in, env);
      case OpCode::And:
        return truth(in.lhs, env) && truth(in.rhs, env);
      case OpCode::Or:
        return truth(in.lhs, env) || truth(in.rhs, env);
      case OpCode::Not:
        return !truth(in.lhs, env);
      case OpCode::Implies:
        return !truth(in.lhs, env) || truth(in.rhs, env);
      case OpCode::Iff:
        return truth(in.lhs, env) == truth(in.rhs, env);
      case OpCode::Forall:
      case OpCode::Exists: {
        bool want = in.op == OpCode::Exists;
        for (std::uint32_t s : in.binders) env[s] = first_value(slot_sorts[s]);
        do {
          if (truth(in.lhs, env) == want) return want;
        } while (advance_all(env, in.binders));
        return !want;
      }
      case OpCode::Add:
      case OpCode::Sub:
        break;
    }
    throw EvalError("evaluator: non-boolean instruction in boolean context");
  }
};

class Compiler {
 public:
  explicit Compiler(std::span<const Variable> slots) {
    for (const Variable& v : slots) bind(v);
  }

  std::uint32_t term(const Term& t) {
    if (t.is_var()) {
      for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
        if (it->first == t.variable()) return emit(Instr(OpCode::Slot, 0, 0, it->second));
      }
      throw EvalError("unbound variable " + t.variable().name);
    }
    const Symbol& f = t.symbol();
    if (!f.is_theory()) throw EvalError("cannot evaluate non-theory symbol " + f.name());
    if (f.is_value()) {
      Instr in(OpCode::Const);
      in.constant = *f.value();
      return emit(std::move(in));
    }
    OpCode op = OpCode::Const;
    switch (f.op()) {
      case TheoryOp::Add: op = OpCode::Add; break;
      case TheoryOp::Sub: op = OpCode::Sub; break;
      case TheoryOp::Eq: op = OpCode::Eq; break;
      case TheoryOp::Ult: op = OpCode::Ult; break;
      case TheoryOp::Slt: op = OpCode::Slt; break;
      case TheoryOp::Uge: op = OpCode::Uge; break;
      case TheoryOp::Sge: op = OpCode::Sge; break;
      case TheoryOp::Ule: op = OpCode::Ule; break;
      case TheoryOp::Sle: op = OpCode::Sle; break;
      case TheoryOp::And: op = OpCode::And; break;
      case TheoryOp::Or: op = OpCode::Or; break;
      case TheoryOp::Not: op = OpCode::Not; break;
      case TheoryOp::None:
      case TheoryOp::Literal:
        throw EvalError("unexpected theory symbol " + f.name());
    }
    std::uint32_t lhs = term(t.args()[0]);
    std::uint32_t rhs = t.args().size() > 1 ? term(t.args()[1]) : 0;
    return emit(Instr(op, lhs, rhs));
  }

  std::uint32_t formula(const Formula& f) {
    auto binary = [&](OpCode op) {
      std::uint32_t lhs = formula(f.children()[0]);
      std::uint32_t rhs = formula(f.children()[1]);
      return emit(Instr(op, lhs, rhs));
    };
    switch (f.kind()) {
      case FormulaKind::Atom:
        return term(f.atom_term());
      case FormulaKind::Not:
        return emit(Instr(OpCode::Not, formula(f.children()[0])));
      case FormulaKind::And: return binary(OpCode::And);
      case FormulaKind::Or: return binary(OpCode::Or);
      case FormulaKind::Implies: return binary(OpCode::Implies);
      case FormulaKind::Iff: return binary(OpCode::Iff);
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        std::size_t mark = scope_.size();
        std::vector<std::uint32_t> binders;
        for (const Variable& v : f.bound()) {
          program_.quantifier_work = saturating_mul(program_.quantifier_work, domain_size(v.sort));
          binders.push_back(bind(v));
        }
        std::uint32_t body = formula(f.children()[0]);
        scope_.erase(scope_.begin() + static_cast<std::ptrdiff_t>(mark), scope_.end());
        Instr in(f.kind() == FormulaKind::Forall ? OpCode::Forall : OpCode::Exists, body);
        in.binders = std::move(binders);
        return emit(std::move(in));
      }
    }
    throw EvalError("unknown formula kind");
  }

  std::shared_ptr<const Program> finish(std::uint32_t root) {
    program_.root = root;
    return std::make_shared<const Program>(std::move(program_));
  }

 private:
  std::uint32_t bind(const Variable& v) {
    auto slot = static_cast<std::uint32_t>(program_.slot_sorts.size());
    program_.slot_sorts.push_back(v.sort);
    scope_.emplace_back(v, slot);
    return slot;
  }

  std::uint32_t emit(Instr in) {
    program_.code.push_back(std::move(in));
    return static_cast<std::uint32_t>(program_.code.size() - 1);
  }

  Program program_;
  std::vector<std::pair<Variable, std::uint32_t>> scope_;
};

std::vector<Value> make_env(const Program& p, std::span<const Value> values) {
  std::vector<Value> env;
  env.reserve(p.slot_sorts.size());
  env.assign(values.begin(), values.end());
  for (std::size_t k = env.size(); k < p.slot_sorts.size(); ++k) env.push_back(first_value(p.slot_sorts[k]));
  return env;
}

}  // namespace detail

CompiledTerm::CompiledTerm(const Term& t, std::span<const Variable> slots) {
  detail::Compiler c(slots);
  program_ = c.finish(c.term(t));
}

Value CompiledTerm::operator()(std::span<const Value> values) const {
  auto env = detail::make_env(*program_, values);
  return program_->value(program_->root, env);
}

CompiledFormula::CompiledFormula(const Formula& f, std::span<const Variable> slots) {
  detail::Compiler c(slots);
  program_ = c.finish(c.formula(f));
}

bool CompiledFormula::operator()(std::span<const Value> values) const {
  auto env = detail::make_env(*program_, values);
  return program_->truth(program_->root, env);
}

std::uint64_t CompiledFormula::quantifier_work() const { return program_->quantifier_work; }

namespace {

std::vector<Value> lookup(std::span<const Variable> vars, const Assignment& alpha) {
  std::vector<Value> values;
  values.reserve(vars.size());
  for (const Variable& v : vars) {
    auto it = alpha.find(v);
    if (it == alpha.end()) throw EvalError("unbound variable " + v.name);
    if (sort_of(it->second) != v.sort) {
      throw EvalError("variable " + v.name + " of sort " + v.sort.to_string() + " bound to " +
                      to_string(it->second));
    }
    values.push_back(it->second);
  }
  return values;
}

}  // namespace

void for_each_assignment(std::span<const Variable> vars, std::uint64_t cap,
                         const std::function<bool(std::span<const Value>)>& visit) {
  std::uint64_t work = 1;
  for (const Variable& v : vars) work = saturating_mul(work, domain_size(v.sort));
  if (work > cap) throw CapacityExceeded(work);
  std::vector<Value> env;
  env.reserve(vars.size());
  for (const Variable& v : vars) env.push_back(detail::first_value(v.sort));
  std::vector<std::uint32_t> all(vars.size());
  for (std::uint32_t k = 0; k < all.size(); ++k) all[k] = k;
  do {
    if (!visit(env)) return;
  } while (detail::advance_all(env, all));
}

Value eval_term(const Term& t, const Assignment& alpha) {
  auto vars = variables(t);
  auto values = lookup(vars, alpha);
  return CompiledTerm(t, vars)(values);
}

bool eval_formula(const Formula& f, const Assignment& alpha) {
  auto vars = f.free_variables();
  auto values = lookup(vars, alpha);
  CompiledFormula compiled(f, vars);
  if (compiled.quantifier_work() > SolverOptions{}.enum_cap) throw CapacityExceeded(compiled.quantifier_work());
  return compiled(values);
}

std::uint64_t Solver::required_work(const Formula& f) const {
  std::uint64_t work = 1;
  for (const Variable& v : f.free_variables()) work = saturating_mul(work, domain_size(v.sort));
  auto vars = f.free_variables();
  return saturating_mul(work, CompiledFormula(f, vars).quantifier_work());
}

SatResult Solver::check(const Formula& f) const {
  auto vars = f.free_variables();
  CompiledFormula compiled(f, vars);
  std::uint64_t work = compiled.quantifier_work();
  for (const Variable& v : vars) work = saturating_mul(work, domain_size(v.sort));
  if (work > options_.enum_cap) throw CapacityExceeded(work);

  const detail::Program& p = *compiled.program_;
  auto env = detail::make_env(p, {});
  std::vector<std::uint32_t> free_slots(vars.size());
  for (std::uint32_t k = 0; k < free_slots.size(); ++k) free_slots[k] = k;
  do {
    if (p.truth(p.root, env)) {
      Assignment witness;
      for (std::size_t k = 0; k < vars.size(); ++k) witness.emplace(vars[k], env[k]);
      return {true, std::move(witness)};
    }
  } while (detail::advance_all(env, free_slots));
  return {false, std::nullopt};
}

std::optional<BitVec> Solver::constant_value(const Term& t, std::span<const Variable> vars) const {
  if (!t.sort().is_bv()) throw SortError("constant_value needs a bit-vector term");
  std::vector<Variable> slots(vars.begin(), vars.end());
  collect_variables(t, slots);
  CompiledTerm compiled(t, slots);
  std::optional<Value> seen;
  bool constant = true;
  for_each_assignment(slots, options_.enum_cap, [&](std::span<const Value> env) {
    Value v = compiled(env);
    if (!seen) {
      seen = std::move(v);
    } else if (*seen != v) {
      constant = false;
    }
    return constant;
  });
  if (!constant) return std::nullopt;
  return std::get<BitVec>(*seen);
}

}  // namespace bvterm

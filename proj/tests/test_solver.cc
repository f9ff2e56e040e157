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

#include <random>

#include "bvterm/solver.h"
#include "doctest.h"
#include "random_problems.h"
#include "support.h"

using namespace bvterm;
using bvterm::testing::lit;
using bvterm::testing::var4;

namespace {

const Sort bv4 = Sort::bv(4);
const Variable x{"x", bv4};
const Variable i{"i", bv4};

Formula slt(const Term& a, const Term& b) { return Formula::atom(bv_cmp(CompareOp::Slt, a, b)); }

Value bv(std::string_view digits) { return BitVec::from_digits(digits); }

}  // namespace

TEST_CASE("term evaluation") {
  CHECK(eval_term(bvadd(lit("0000"), lit("0001")), {}) == bv("0001"));
  CHECK(eval_term(bv_cmp(CompareOp::Slt, var4("i"), var4("x")), {{i, bv("0010")}, {x, bv("0010")}}) == Value(false));
  CHECK(eval_term(var4("x"), {{x, bv("1111")}}) == bv("1111"));
  CHECK(eval_term(lnot(land(bool_literal(true), lor(bool_literal(false), bool_literal(false)))), {}) == Value(true));
  CHECK_THROWS_AS(eval_term(var4("x"), {}), EvalError);
  Symbol f = Symbol::function("f", {bv4}, bv4);
  CHECK_THROWS_AS(eval_term(Term::app(f, {lit("0001")}), {}), EvalError);
}

TEST_CASE("formula evaluation with quantifiers") {
  CHECK_FALSE(eval_formula(Formula::forall({i}, slt(var4("i"), var4("x"))), {{x, bv("0111")}}));
  CHECK(eval_formula(Formula::exists({i}, slt(var4("i"), var4("x"))), {{x, bv("0000")}}));
  CHECK(eval_formula(Formula::truth(true), {}));
  CHECK_THROWS_AS(eval_formula(slt(var4("i"), var4("x")), {{x, bv("0000")}}), EvalError);
  Variable n{"n", Sort::named("nat")};
  CHECK_THROWS_AS(eval_formula(Formula::forall({n}, Formula::truth(true)), {}), UnsupportedSort);
}

TEST_CASE("satisfiability and validity") {
  Solver solver;
  CHECK(solver.is_satisfiable(slt(var4("i"), var4("x"))));
  CHECK_FALSE(solver.is_satisfiable(Formula::forall({i}, slt(var4("i"), var4("x")))));
  Term step = bvsub(bvadd(var4("i"), lit("0001")), var4("i"));
  CHECK(solver.is_valid(Formula::atom(eq(step, lit("0001")))));
  CHECK_FALSE(solver.is_valid(slt(var4("i"), var4("x"))));
}

TEST_CASE("the first witness follows enumeration order") {
  Solver solver;
  SatResult r = solver.check(slt(var4("i"), var4("x")));
  REQUIRE(r.satisfiable);
  // i varies fastest: i=0000 with x=0000 fails, then i=0001.. until i=1000.
  CHECK(r.witness->at(i) == bv("1000"));
  CHECK(r.witness->at(x) == bv("0000"));
}

TEST_CASE("constant values") {
  Solver solver;
  std::vector<Variable> vi = {i};
  CHECK(solver.constant_value(bvsub(bvadd(var4("i"), lit("0001")), var4("i")), vi) == BitVec::from_digits("0001"));
  CHECK(solver.constant_value(bvsub(var4("i"), var4("i")), vi) == BitVec::zeros(4));
  std::vector<Variable> vix = {i, x};
  CHECK_FALSE(solver.constant_value(bvadd(var4("i"), var4("x")), vix).has_value());
}

TEST_CASE("capacity is reported, not decided") {
  Solver small(SolverOptions{255});
  CHECK_THROWS_AS(small.is_satisfiable(slt(var4("i"), var4("x"))), CapacityExceeded);
  // Bound variables count towards the work as well.
  Solver medium(SolverOptions{16});
  CHECK_THROWS_AS(medium.is_satisfiable(Formula::forall({i}, slt(var4("i"), var4("x")))), CapacityExceeded);
  Variable w{"w", Sort::bv(40)};
  try {
    Solver().is_satisfiable(Formula::atom(eq(Term::var(w), Term::value(BitVec::zeros(40)))));
    FAIL("expected capacity error");
  } catch (const CapacityExceeded& e) {
    CHECK(e.required() == (std::uint64_t{1} << 40));
  }
  CHECK(Solver().required_work(Formula::forall({i}, slt(var4("i"), var4("x")))) == 256);
}

TEST_CASE("nested quantifiers across an equivalence") {
  Solver solver;
  Variable y{"y", bv4};
  // (exists y. x = y + 1) <=> (exists y. x + 1 = y + 1): both always true.
  Formula a = Formula::exists({y}, Formula::atom(eq(var4("x"), bvadd(var4("y"), lit("0001")))));
  Formula b = a.substitute({{x, bvadd(var4("x"), lit("0001"))}});
  CHECK(solver.is_valid(iff(a, b)));
  // Capture avoidance: substituting y for x must not bind it.
  Formula c = Formula::exists({y}, Formula::atom(bv_cmp(CompareOp::Ult, var4("x"), var4("y"))));
  Formula d = c.substitute({{x, var4("y")}});
  CHECK(d.free_variables().size() == 1);
  CHECK(solver.is_satisfiable(d));
  CHECK_FALSE(solver.is_valid(d));
}

TEST_CASE("duality and determinism on random formulas") {
  bvterm::testing::ProblemGenerator gen(11);
  Solver solver;
  std::vector<Variable> vars = {{"a", Sort::bv(2)}, {"b", Sort::bv(2)}, {"c", Sort::bv(2)}};
  for (int n = 0; n < 300; ++n) {
    Formula f = Formula::atom(gen.guard(vars, 2, 3));
    if (gen.coin()) f = Formula::forall({vars[gen.pick(3)]}, f);
    if (gen.coin()) f = Formula::exists({vars[gen.pick(3)]}, f);
    bool valid = solver.is_valid(f);
    bool sat = solver.is_satisfiable(f);
    REQUIRE(valid == !solver.is_satisfiable(!f));
    if (valid) REQUIRE(sat);
    REQUIRE(solver.is_satisfiable(f) == sat);
  }
}

TEST_CASE("quantifiers agree with explicit loops at width 2") {
  bvterm::testing::ProblemGenerator gen(12);
  std::vector<Variable> vars = {{"a", Sort::bv(2)}, {"b", Sort::bv(2)}};
  for (int n = 0; n < 200; ++n) {
    Formula body = Formula::atom(gen.guard(vars, 2, 2));
    for (std::uint64_t bval = 0; bval < 4; ++bval) {
      bool all = true, some = false;
      for (std::uint64_t aval = 0; aval < 4; ++aval) {
        bool v = eval_formula(body, {{vars[0], BitVec(2, aval)}, {vars[1], BitVec(2, bval)}});
        all = all && v;
        some = some || v;
      }
      Assignment alpha{{vars[1], BitVec(2, bval)}};
      REQUIRE(eval_formula(Formula::forall({vars[0]}, body), alpha) == all);
      REQUIRE(eval_formula(Formula::exists({vars[0]}, body), alpha) == some);
    }
  }
}

TEST_CASE("constant values hold under random assignments") {
  bvterm::testing::ProblemGenerator gen(13);
  Solver solver;
  std::vector<Variable> vars = {{"a", Sort::bv(3)}, {"b", Sort::bv(3)}};
  std::mt19937_64 rng(13);
  int constants = 0;
  for (int n = 0; n < 300; ++n) {
    Term t = gen.operand(vars, 3);
    if (gen.coin()) t = bvsub(t, gen.operand(vars, 3));
    auto c = solver.constant_value(t, vars);
    if (!c) continue;
    ++constants;
    for (int k = 0; k < 100; ++k) {
      Assignment alpha{{vars[0], BitVec(3, rng() % 8)}, {vars[1], BitVec(3, rng() % 8)}};
      REQUIRE(eval_term(t, alpha) == Value(*c));
    }
  }
  CHECK(constants > 0);
}

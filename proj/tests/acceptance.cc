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

// Acceptance checks for the prover on the counting example and random
// problems. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bvterm/driver.h"
#include "bvterm/oracle.h"
#include "random_problems.h"
#include "support.h"

using namespace bvterm;
using bvterm::testing::lit;
using bvterm::testing::p1;
using bvterm::testing::p1_view;
using bvterm::testing::r1;
using bvterm::testing::read_fixture;

namespace {

using Clock = std::chrono::steady_clock;

struct Result {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double limit_ms;
  std::function<Result()> run;
};

Term call(const Lctrs& sys, const std::string& name, std::vector<Term> args) {
  return Term::app(*sys.find_function(name), std::move(args));
}

Result dependency_pairs_of_r1() {
  Result o;
  Lctrs sys = r1();
  DpProblem dp = dependency_pairs(sys);
  o.require(dp.size() == 2, "expected two pairs");
  if (dp.size() != 2) return o;
  Term x = Term::var("x", Sort::bv(4)), i = Term::var("i", Sort::bv(4)), z = Term::var("z", Sort::bv(4));
  Rule first(mark(call(sys, "cnt", {x})), mark(call(sys, "u1", {x, lit("0000"), lit("0000")})));
  Rule second(mark(call(sys, "u1", {x, i, z})), mark(call(sys, "u1", {x, bvadd(i, lit("0001")), bvadd(z, lit("0001"))})),
              bv_cmp(CompareOp::Slt, i, x));
  o.require(dp.pair(1).id == 1 && dp.pair(1).rule == first, "pair (1) differs: " + to_string(dp.pair(1)));
  o.require(dp.pair(2).id == 2 && dp.pair(2).rule == second, "pair (2) differs: " + to_string(dp.pair(2)));
  return o;
}

Result graph_of_r1() {
  Result o;
  DpProblem dp = dependency_pairs(r1());
  DepGraph g = dg_approximation(dp);
  o.require(g.edges == std::vector<std::pair<int, int>>{{1, 2}, {2, 2}}, "edge set differs");
  std::vector<DpProblem> out = proc_dg(dp);
  o.require(out.size() == 1 && out[0] == p1(), "proc_dg is not {P1}");
  return o;
}

Result constraint_preservation() {
  Result o;
  SingletonSelfLoop v = p1_view();
  o.require(preserves_constraint(v, {1, 3}) == bvterm::Outcome::Holds, "{1,3} should hold");
  o.require(preserves_constraint(v, {1, 2, 3}) == bvterm::Outcome::Fails, "{1,2,3} should fail");
  o.require(preserves_constraint(v, {2}) == bvterm::Outcome::Fails, "{2} should fail");
  return o;
}

Result theorem3_on_p1() {
  Result o;
  SingletonSelfLoop v = p1_view();
  auto info = increment_analysis(v, 2);
  o.require(info && info->delta == BitVec::from_digits("0001") && info->a == 0, "delta is not #b0001");
  Formula all_i = Formula::forall({v.x(2)}, v.guard);
  o.require(!Solver().is_satisfiable(all_i), "forall i. i <_S x is satisfiable");
  o.require(check_theorem3(v, 2) == bvterm::Outcome::Holds, "check_theorem3 does not hold");
  std::ostringstream os;
  print_proof(os, prove_termination(r1()));
  o.require(os.str().rfind("YES\n", 0) == 0, "prover does not print YES");
  return o;
}

Result theorem2_on_p1() {
  Result o;
  SingletonSelfLoop v = p1_view();
  Term x = Term::var(v.x(1));
  IntervalWitness stated_witness{bvadd(x, lit("1000")), bvadd(x, lit("1001"))};
  bvterm::Outcome stated = check_theorem2(v, 2, stated_witness);
  o.require(stated == bvterm::Outcome::Holds,
            "u = x+1000, v = x+1001 gives " + to_string(stated) + " (x = 0010, i = 1010 is in [u, v) and satisfies the guard)");
  auto info = increment_analysis(v, 2);
  if (!info) {
    o.require(false, "no increment at position 2");
    return o;
  }
  WitnessSearch found = search_interval_witness(v, 2, *info);
  o.require(found.witness.has_value(), "search found no witness");
  if (found.witness) {
    o.require(check_theorem2(v, 2, *info, *found.witness) == bvterm::Outcome::Holds, "found witness does not validate");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("search found u = ") + print(found.witness->u) +
                ", v = " + print(found.witness->v);
  }
  return o;
}

Result counter_projection() {
  Result o;
  GroundGraph g = projection_graph(p1_view(), 2);
  o.require(g.node_count == 16, "node count");
  o.require(g.edges.size() == 15, "edge count");
  for (std::uint64_t b = 0; b < 16; ++b) {
    bool has = std::binary_search(g.edges.begin(), g.edges.end(), std::make_pair(b, (b + 1) % 16));
    o.require(has == (b != 7), "edge from " + g.label(b));
  }
  o.require(is_acyclic(g), "cyclic");

  std::ifstream in(bvterm::testing::fixture_dir().parent_path() / "tests" / "data" / "counter_projection_edges.txt");
  std::vector<std::pair<std::string, std::string>> expected, actual;
  std::string a, b;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("#b", 0) != 0) continue;
    std::istringstream fields(line);
    fields >> a >> b;
    expected.emplace_back(a, b);
  }
  for (const auto& [from, to] : g.edges) actual.emplace_back(g.label(from), g.label(to));
  o.require(!expected.empty() && actual == expected, "differs from the checked-in edge list");
  return o;
}

Result ssr_soundness() {
  Result o;
  bvterm::testing::ProblemGenerator gen(20261017);
  std::size_t problems = 0, removed = 0, disagreements = 0;
  while (problems < 240) {
    unsigned width = 2 + static_cast<unsigned>(gen.pick(3));
    std::size_t arity = 1 + gen.pick(3);
    DpProblem dp = dependency_pairs(gen.self_loop_system(width, arity));
    SelfLoopResult shape = as_singleton_self_loop(dp);
    if (!shape) continue;  // unsatisfiable guard: not a self-loop problem
    ++problems;
    SsrResult r = proc_ssr(dp);
    if (!r.problems) continue;
    ++removed;
    if (!is_chain_free_bruteforce(*shape.view)) {
      ++disagreements;
      o.require(false, "unsound removal of " + to_string(dp.pairs().front()));
    }
  }
  o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(problems) + " problems, " + std::to_string(removed) +
              " removed, " + std::to_string(disagreements) + " disagreements";
  return o;
}

Result rewrite_trace() {
  Result o;
  Lctrs sys = r1();
  RewriteResult r = rewrite_to_normal_form(sys, call(sys, "cnt", {lit("0010")}), 100);
  o.require(r.normal_form && r.term == lit("0010"), "cnt(#b0010) does not end at #b0010");
  o.require(!r.trace.empty() && r.trace.front().result == call(sys, "u1", {lit("0010"), lit("0000"), lit("0000")}),
            "first step is not u1(#b0010, #b0000, #b0000)");
  for (std::uint64_t v = 0; v < 8; ++v) {
    Term x = Term::value(BitVec(4, v));
    RewriteResult n = rewrite_to_normal_form(sys, call(sys, "cnt", {x}), 100);
    o.require(n.normal_form && n.term == x, "cnt(" + print(x) + ") does not normalize to itself");
  }
  return o;
}

Result negative_control() {
  Result o;
  Lctrs sys = parse(read_fixture("cnt_unguarded.lctrs"));
  ProofResult r = prove_termination(sys);
  o.require(r.verdict == Verdict::Unknown, "prover claims termination");
  bool sixteen = false;
  for (const OracleCheck& c : cross_check_with_oracle(r)) {
    o.require(!c.disagrees(), "oracle disagreement");
    if (c.cycle && c.cycle->size() == 16) sixteen = true;
  }
  o.require(sixteen, "oracle shows no 16-cycle");

  std::filesystem::path out = std::filesystem::temp_directory_path() / "bvterm_acceptance_out.txt";
  std::string cmd = std::string(BVTERM_CLI) + " prove --oracle " +
                    (bvterm::testing::fixture_dir() / "cnt_unguarded.lctrs").string() + " > " + out.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  o.require(status == 1, "cli exit status " + std::to_string(status));
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  o.require(first == "MAYBE", "cli first line is '" + first + "'");
  std::filesystem::remove(out);
  return o;
}

Result bitvec_properties() {
  Result o;
  std::size_t failures = 0;
  for (std::uint64_t q = 0; q < 65536; ++q) {
    BitVec x(4, q & 15), y(4, (q >> 4) & 15), z(4, (q >> 8) & 15), w(4, q >> 12);
    BitVec zero(4, 0);
    bool ok = x + y == y + x && (x + y) + z == x + (y + z) && x + zero == x && x + (zero - x) == zero &&
              (x + y) - y == x && (x + y) - (z + w) == (x - z) + (y - w);
    failures += ok ? 0 : 1;
  }
  std::mt19937_64 rng(10);
  for (int n = 0; n < 20000; ++n) {
    std::int64_t x = static_cast<std::int64_t>(rng() % 256), y = static_cast<std::int64_t>(rng() % 256);
    std::int64_t sx = x >= 128 ? x - 256 : x, sy = y >= 128 ? y - 256 : y;
    BitVec bx(8, static_cast<std::uint64_t>(x)), by(8, static_cast<std::uint64_t>(y));
    bool ok = (bx + by).to_unsigned() == static_cast<std::uint64_t>((x + y) % 256) &&
              (bx - by).to_unsigned() == static_cast<std::uint64_t>((x - y + 256) % 256) &&
              bv_compare(CompareOp::Eq, bx, by) == (x == y) && bv_compare(CompareOp::Ult, bx, by) == (x < y) &&
              bv_compare(CompareOp::Ule, bx, by) == (x <= y) && bv_compare(CompareOp::Uge, bx, by) == (x >= y) &&
              bv_compare(CompareOp::Slt, bx, by) == (sx < sy) && bv_compare(CompareOp::Sle, bx, by) == (sx <= sy) &&
              bv_compare(CompareOp::Sge, bx, by) == (sx >= sy);
    failures += ok ? 0 : 1;
  }
  o.require(failures == 0, std::to_string(failures) + " failures");
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dependency pairs of the counting system", 10, dependency_pairs_of_r1},
      {2, "dependency graph and its processor", 100, graph_of_r1},
      {3, "constraint preservation", 1000, constraint_preservation},
      {4, "odd-step removal and the full proof", 1000, theorem3_on_p1},
      {5, "interval witnesses", 5000, theorem2_on_p1},
      {6, "projection graph of the loop counter", 1000, counter_projection},
      {7, "removal soundness against the ground oracle", 60000, ssr_soundness},
      {8, "rewrite trace", 1000, rewrite_trace},
      {9, "negative control", 10000, negative_control},
      {10, "bit-vector properties", 5000, bitvec_properties},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = Clock::now();
    Result o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (ms > c.limit_ms) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time limit");
    }
    failed += o.pass ? 0 : 1;
    std::ostringstream time;
    time.precision(1);
    time << std::fixed << ms << " ms of " << c.limit_ms << " ms";
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " (" << time.str()
              << ")" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

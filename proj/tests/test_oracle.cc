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

#include <fstream>
#include <sstream>

#include "bvterm/oracle.h"
#include "doctest.h"
#include "support.h"

using namespace bvterm;
using bvterm::testing::lit;
using bvterm::testing::p1_view;
using bvterm::testing::read_fixture;
using bvterm::testing::view_of;

namespace {

/// The view with its guard replaced; views are plain data.
SingletonSelfLoop with_guard(SingletonSelfLoop v, Term guard) {
  v.guard = Formula::atom(std::move(guard));
  return v;
}

SingletonSelfLoop identity_loop() {
  return view_of("(fun u ((bv 2) (bv 3)) (bv 2)) (rule (u a b) (u a b))");
}

std::vector<std::pair<std::string, std::string>> labelled_edges(const GroundGraph& g) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : g.edges) out.emplace_back(g.label(a), g.label(b));
  return out;
}

}  // namespace

TEST_CASE("ground graph of the counting loop") {
  SingletonSelfLoop v = p1_view();
  GroundGraph g = ground_transition_graph(v);
  CHECK(g.node_count == 4096);
  CHECK(g.widths == std::vector<unsigned>{4, 4, 4});

  // Independent count: one edge per (x, i, z) with i <_S x.
  std::size_t expected = 0;
  for (int x = -8; x < 8; ++x) {
    for (int i = -8; i < 8; ++i) {
      if (i < x) expected += 16;
    }
  }
  CHECK(g.edges.size() == expected);
  for (const auto& [from, to] : g.edges) {
    std::vector<BitVec> a = g.decode(from), b = g.decode(to);
    REQUIRE(a[1].to_signed() < a[0].to_signed());
    REQUIRE(b[0] == a[0]);
    REQUIRE(b[1] == bv_add(a[1], BitVec(4, 1)));
    REQUIRE(b[2] == bv_add(a[2], BitVec(4, 1)));
    REQUIRE(g.encode(a) == from);
  }
  CHECK(is_chain_free_bruteforce(v));
}

TEST_CASE("degenerate guards") {
  SingletonSelfLoop never = with_guard(p1_view(), bool_literal(false));
  CHECK(ground_transition_graph(never).edges.empty());
  CHECK(is_chain_free_bruteforce(never));
  GroundGraph flat = projection_graph(never, 2);
  CHECK(flat.node_count == 16);
  CHECK(flat.edges.empty());

  GroundGraph id = ground_transition_graph(identity_loop());
  CHECK(id.node_count == 32);
  REQUIRE(id.edges.size() == 32);
  for (const auto& [a, b] : id.edges) CHECK(a == b);
  CHECK_FALSE(is_acyclic(id));
}

TEST_CASE("the projection onto the loop counter") {
  GroundGraph g = projection_graph(p1_view(), 2);
  CHECK(g.node_count == 16);
  CHECK(g.projection == 2u);
  CHECK(g.edges.size() == 15);
  CHECK(is_acyclic(g));

  std::ifstream in(bvterm::testing::fixture_dir().parent_path() / "tests" / "data" / "counter_projection_edges.txt");
  REQUIRE(in);
  std::vector<std::pair<std::string, std::string>> expected;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] != '#' || line[1] != 'b') continue;
    std::istringstream fields(line);
    std::string a, b;
    fields >> a >> b;
    expected.emplace_back(a, b);
  }
  CHECK(labelled_edges(g) == expected);
}

TEST_CASE("projection consistency on the counting loop") {
  SingletonSelfLoop v = p1_view();
  GroundGraph full = ground_transition_graph(v);
  for (const auto& [a, b] : full.edges) REQUIRE(full.decode(a)[1] != full.decode(b)[1]);
  CHECK(is_acyclic(project(full, 2)));
  CHECK(is_acyclic(full));
}

TEST_CASE("cycles of the unguarded loop") {
  SingletonSelfLoop loop = view_of(
      "(fun u ((bv 4) (bv 4)) (bv 4))\n"
      "(rule (u x i) (u x (bvadd i #b0001)))\n");
  GroundGraph p = projection_graph(loop, 2);
  CHECK(p.edges.size() == 16);
  auto cycle = find_cycle(p);
  REQUIRE(cycle);
  CHECK(cycle->size() == 16);
  CHECK_FALSE(is_chain_free_bruteforce(loop));

  GroundGraph full = ground_transition_graph(loop);
  auto c = find_cycle(full);
  REQUIRE(c);
  CHECK(c->size() == 16);
  for (std::size_t k = 0; k < c->size(); ++k) {
    auto edge = std::make_pair((*c)[k], (*c)[(k + 1) % c->size()]);
    REQUIRE(std::binary_search(full.edges.begin(), full.edges.end(), edge));
  }
}

TEST_CASE("the oracle refuses what it cannot decide exactly") {
  CHECK_THROWS_AS(ground_transition_graph(view_of(read_fixture("fresh_guard_unbounded.lctrs"))), OracleInapplicable);
  OracleOptions tiny;
  tiny.state_cap = 1000;
  CHECK_THROWS_AS(ground_transition_graph(p1_view(), tiny), OracleInapplicable);

  Lctrs boolean = parse(read_fixture("bool_arg.lctrs"));
  DpProblem first = proc_dg(dependency_pairs(boolean)).front();
  CHECK_THROWS_AS(ground_transition_graph(*as_singleton_self_loop(first).view), OracleInapplicable);

  SingletonSelfLoop v = p1_view();
  Symbol f = Symbol::function("f", {Sort::bv(4)}, Sort::bv(4));
  v.rhs_args[2] = Term::app(f, {v.rhs_args[2]});
  CHECK_THROWS_AS(ground_transition_graph(v), OracleInapplicable);
}

TEST_CASE("dot output") {
  std::ostringstream os;
  write_dot(os, projection_graph(p1_view(), 2), "projection");
  std::string dot = os.str();
  CHECK(dot.rfind("digraph projection {", 0) == 0);
  CHECK(dot.find("n7 [label=\"#b0111\"];") != std::string::npos);
  CHECK(dot.find("n15 -> n0;") != std::string::npos);
  CHECK(dot.find("n7 -> n8;") == std::string::npos);
}

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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bvterm/dp.h"
#include "bvterm/parser.h"
#include "bvterm/ssr.h"

namespace bvterm::testing {

inline std::filesystem::path fixture_dir() { return BVTERM_FIXTURE_DIR; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_dir() / name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Lctrs r1() { return parse(read_fixture("cnt.lctrs")); }

inline Term lit(std::string_view digits) { return bv_literal(digits); }

inline Term var4(const std::string& name) { return Term::var(name, Sort::bv(4)); }

/// The dependency pairs of `text` whose lhs and rhs share a root.
inline DpProblem self_loops(const std::string& text) {
  DpProblem all = dependency_pairs(parse(text));
  std::vector<int> ids;
  for (const DependencyPair& p : all.pairs()) {
    if (p.rule.lhs().symbol() == p.rule.rhs().symbol()) ids.push_back(p.id);
  }
  return all.restrict_to(ids);
}

/// The singleton self-loop view of a one-rule system; throws if there is none.
inline SingletonSelfLoop view_of(const std::string& text) {
  SelfLoopResult r = as_singleton_self_loop(self_loops(text));
  if (!r) throw std::runtime_error("not a singleton self-loop: " + to_string(*r.reason));
  return *r.view;
}

/// P1 of the counting example: {(2)}.
inline DpProblem p1() { return dependency_pairs(r1()).restrict_to({2}); }

inline SingletonSelfLoop p1_view() { return *as_singleton_self_loop(p1()).view; }

}  // namespace bvterm::testing

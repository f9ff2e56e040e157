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

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bvterm/ssr.h"

namespace bvterm {

// Ground-level chain analysis for small singleton self-loops. Every value
// tuple is a node; the pair contributes an edge wherever its guard holds.
// The successor is unique, so an infinite chain exists iff the graph has a
// cycle. This is a test instrument, never a source of verdicts.

class OracleInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::uint64_t state_cap = std::uint64_t{1} << 20;
};

struct GroundGraph {
  /// Width of each tuple component; node ids are mixed-radix with the first
  /// component in the lowest bits.
  std::vector<unsigned> widths;
  std::uint64_t node_count = 0;
  /// Sorted, unique.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  /// 1-based argument position the graph was projected to, if any.
  std::optional<std::size_t> projection;

  std::vector<BitVec> decode(std::uint64_t node) const;
  std::uint64_t encode(const std::vector<BitVec>& tuple) const;
  /// "(#b0000, #b0001)" or "#b0001" for one component.
  std::string label(std::uint64_t node) const;
};

GroundGraph ground_transition_graph(const SingletonSelfLoop& view, const OracleOptions& options = {});

/// Image of the ground graph under the projection to argument `i`.
GroundGraph projection_graph(const SingletonSelfLoop& view, std::size_t i, const OracleOptions& options = {});
GroundGraph project(const GroundGraph& g, std::size_t i);

/// Some cycle as a node sequence (first node not repeated), if one exists.
std::optional<std::vector<std::uint64_t>> find_cycle(const GroundGraph& g);
bool is_acyclic(const GroundGraph& g);

bool is_chain_free_bruteforce(const SingletonSelfLoop& view, const OracleOptions& options = {});

void write_dot(std::ostream& os, const GroundGraph& g, const std::string& name = "ground");

}  // namespace bvterm

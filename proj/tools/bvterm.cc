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

// bvterm prove <file> [--width-cap N] [--enum-cap N] [--oracle] [--emit-dot DIR] [--trace TERM]
//
// Exit status: 0 YES, 1 MAYBE, 2 bad input, 3 the oracle refuted a proof.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "bvterm/driver.h"
#include "bvterm/parser.h"

namespace {

constexpr int kYes = 0;
constexpr int kMaybe = 1;
constexpr int kInputError = 2;
constexpr int kSoundnessFailure = 3;

// Dot files for graphs beyond this many nodes are not useful to look at.
constexpr std::uint64_t kDotNodeLimit = std::uint64_t{1} << 16;

struct Args {
  std::string file;
  unsigned width_cap = bvterm::SsrOptions{}.width_cap;
  std::uint64_t enum_cap = bvterm::SolverOptions{}.enum_cap;
  bool oracle = false;
  std::string dot_dir;
  std::string trace;
};

bool write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

int prove(const Args& args) {
  std::ifstream in(args.file);
  if (!in) {
    std::cerr << "bvterm: cannot read " << args.file << '\n';
    return kInputError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  bvterm::ProverOptions options;
  options.solver.enum_cap = args.enum_cap;
  options.ssr.width_cap = args.width_cap;
  if (const char* env = std::getenv("BVTERM_ENUM_CAP")) {
    try {
      std::size_t used = 0;
      options.solver.enum_cap = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      std::cerr << "bvterm: BVTERM_ENUM_CAP is not a number: " << env << '\n';
      return kInputError;
    }
  }

  bvterm::Lctrs system;
  std::optional<bvterm::Term> start;
  try {
    system = bvterm::parse(buffer.str());
    if (!args.trace.empty()) start = bvterm::parse_term(args.trace, system);
  } catch (const bvterm::ParseError& e) {
    std::cerr << args.file << ":" << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "bvterm: " << e.what() << '\n';
    return kInputError;
  }

  bvterm::ProofResult result = bvterm::prove_termination(system, options);
  bvterm::print_proof(std::cout, result);

  int status = result.verdict == bvterm::Verdict::Terminating ? kYes : kMaybe;
  std::filesystem::path dot_dir(args.dot_dir);
  if (!args.dot_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dot_dir, ec);
    if (result.graph) {
      std::ostringstream os;
      bvterm::write_dot(os, *result.graph, "dg");
      if (!write_file(dot_dir / "dg.dot", os.str())) std::cerr << "bvterm: cannot write " << (dot_dir / "dg.dot") << '\n';
    }
  }

  if (args.oracle) {
    std::cout << "oracle:\n";
    int n = 0;
    for (const bvterm::OracleCheck& c : bvterm::cross_check_with_oracle(result, options)) {
      ++n;
      std::cout << "  " << bvterm::id_set(c.problem) << (c.claimed_solved ? " solved, " : " open, ") << c.note << '\n';
      if (c.disagrees()) {
        std::cerr << "bvterm: internal soundness failure: " << bvterm::id_set(c.problem)
                  << " was removed but has an infinite ground chain\n";
        status = kSoundnessFailure;
      }
      if (!args.dot_dir.empty() && c.graph && c.graph->node_count <= kDotNodeLimit) {
        std::ostringstream os;
        bvterm::write_dot(os, *c.graph, "ground");
        write_file(dot_dir / ("oracle_" + std::to_string(n) + ".dot"), os.str());
      }
    }
    // Projections for problems removed by singleton self-loop removal.
    std::function<void(const bvterm::ProofNode&)> visit = [&](const bvterm::ProofNode& node) {
      if (!args.dot_dir.empty() && node.certificate) {
        if (auto shape = bvterm::as_singleton_self_loop(node.problem, bvterm::Solver(options.solver))) {
          try {
            bvterm::GroundGraph g = bvterm::projection_graph(*shape.view, node.certificate->position);
            std::ostringstream os;
            bvterm::write_dot(os, g, "projection");
            std::string ids = std::to_string(node.problem.pairs().front().id);
            write_file(dot_dir / ("projection_" + ids + ".dot"), os.str());
          } catch (const bvterm::OracleInapplicable&) {
          }
        }
      }
      for (const bvterm::ProofNode& c : node.children) visit(c);
    };
    visit(result.root);
  }

  if (start) {
    bvterm::Solver solver(options.solver);
    try {
      bvterm::RewriteResult r = bvterm::rewrite_to_normal_form(system, *start, 1000, solver);
      std::cout << "trace:\n  " << bvterm::print(*start) << '\n';
      for (const bvterm::RewriteStep& s : r.trace) std::cout << "  -> " << bvterm::print(s.result) << '\n';
      if (!r.normal_form) std::cout << "  (step limit reached)\n";
    } catch (const std::exception& e) {
      std::cerr << "bvterm: trace: " << e.what() << '\n';
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Termination prover for bit-vector constrained rewrite systems"};
  app.require_subcommand(1);
  Args args;
  CLI::App* cmd = app.add_subcommand("prove", "Try to prove termination of an .lctrs file");
  cmd->add_option("file", args.file, "Input system")->required();
  cmd->add_option("--width-cap", args.width_cap, "Largest width for interval witness search")->check(CLI::Range(1u, 16u));
  cmd->add_option("--enum-cap", args.enum_cap, "Solver enumeration budget per query");
  cmd->add_flag("--oracle", args.oracle, "Cross-check removed self-loops on the ground transition graph");
  cmd->add_option("--emit-dot", args.dot_dir, "Write Graphviz files to this directory");
  cmd->add_option("--trace", args.trace, "Rewrite a ground term to normal form and print the steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }
  return prove(args);
}

// Copyright 2026 The lame-dessins Authors
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

#include <CLI11.hpp>

#include <iostream>

#include "lame/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "lame-dessins: Lame operators with dihedral projective monodromy via plane trees"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  lame::cli::RunConfig cfg;
  long precision = 256;
  unsigned long long seed = 0;
  app.add_option("--precision", precision, "working precision in bits (>= 128)")
      ->check(CLI::Range(128L, 1L << 20));
  app.add_option("--seed", seed, "RNG seed (outputs are deterministic per seed)");
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default $LAME_CACHE_DIR)");
  app.add_flag("--no-cache", cfg.no_cache, "bypass the on-disk cache");
  app.add_option("--format", cfg.output_format, "output format: json or markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  int degree = 7;
  long prime = 7;
  auto* trees_cmd = app.add_subcommand("trees", "enumerate trees with invariants and predictions");
  trees_cmd->add_option("--degree", degree, "tree degree N >= 3")->required();
  auto* solve_cmd = app.add_subcommand("solve", "solve the Shabat systems for a degree");
  solve_cmd->add_option("--degree", degree, "tree degree N >= 3")->required();
  auto* certify_cmd =
      app.add_subcommand("certify", "full pipeline: curves, torsion, theta, monodromy, reduction");
  certify_cmd->add_option("--degree", degree, "tree degree N >= 3")->required();
  auto* report_cmd = app.add_subcommand("report", "render the prediction/measured report");
  report_cmd->add_option("--prime", prime, "odd prime p")->required();

  CLI11_PARSE(app, argc, argv);
  cfg.precision_bits = precision;
  cfg.rng_seed = seed;

  try {
    if (trees_cmd->parsed()) return lame::cli::run_trees(degree, cfg, std::cout);
    if (solve_cmd->parsed()) return lame::cli::run_solve(degree, cfg, std::cout);
    if (certify_cmd->parsed()) return lame::cli::run_certify(degree, cfg, std::cout);
    if (report_cmd->parsed()) return lame::cli::run_report(prime, cfg, std::cout);
  } catch (const lame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == "Incomplete" || e.kind() == "NonConvergence") {
      return lame::cli::kExitIncomplete;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

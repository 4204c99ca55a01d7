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

#pragma once

#include <string>
#include <vector>

#include "lame/monodromy.hpp"

namespace lame::pipeline {

/// One row of the measured-vs-predicted matrix. `kind` tags every value
/// the way reports print them: "measured", "predicted" or "annotation".
struct CheckItem {
  std::string name;
  std::string measured;
  std::string predicted;
  bool pass = true;
  std::string kind = "measured";
};

struct TreeCertification {
  trees::Tree tree;
  belyi::BelyiSolution solution;
  belyi::VerifyReport verification;
  curves::EllipticModel model;
  curves::TorsionResult torsion;
  Real theta_abs;        // |theta(P)|
  bool scan_found_marked = false;
  int scan_zero_pairs = 0;
  monodromy::MonodromyCertificate monodromy;
  trees::PredictionRecord prediction;
  curves::ReductionReport reduction;
  std::vector<CheckItem> checks;
  bool pass = true;
  std::string failure;  // first failed check or exception text
};

struct DegreeReport {
  int N = 0;
  bool prime_degree = false;
  mpfr_prec_t precision_bits = 256;
  uint64_t seed = 0;
  belyi::SolveDiagnostics solve_diagnostics;
  std::vector<trees::Tree> missing;
  std::vector<TreeCertification> certifications;
  curves::OrbitReport orbits;
  std::vector<CheckItem> orbit_checks;
  std::vector<std::string> annotations;  // paper-sourced remarks, tagged (A) in reports
  bool complete = false;
  bool all_pass = false;
};

struct PipelineConfig {
  mpfr_prec_t precision_bits = 256;
  int max_restarts = 64;
  uint64_t rng_seed = 0;
  int recognition_max_degree = 0;  // 0 = derive from the census
};

/// Solves degree N and runs the full certification chain on every
/// primitive solution: verification, curve construction, periods, torsion
/// by two routes, the theta zero criterion with an independent scan,
/// numerical monodromy, field-of-moduli recognition with precision
/// escalation (doubling, capped at 8x), Galois orbits and exact reduction
/// reports at p = N. Nothing throws for a failed check; failures land in
/// the per-tree verdicts.
DegreeReport certify_degree(int N, const PipelineConfig& cfg);

/// Solve-only entry (shared by the solve command): solutions with
/// verification but no curve pipeline.
belyi::SolveResult solve_degree(int N, const PipelineConfig& cfg);

}  // namespace lame::pipeline

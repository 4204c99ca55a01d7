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

#include <optional>
#include <vector>

#include "lame/poly.hpp"
#include "lame/trees.hpp"

namespace lame::belyi {

/// Unknown layout of the factorized Shabat system for degree N and
/// signature s: beta = x^3 q g^2 and beta - 1 = f h^2, all factors monic.
/// The unknowns are the N free coefficients of q, g, f, h; the residual is
/// the first N coefficients of x^3 q g^2 - f h^2 - 1 (the x^N coefficient
/// cancels by monicity). The only gauge freedom left by the normalization
/// is x -> lambda x with lambda^N = 1.
struct SystemShape {
  int N = 0;
  int s = 0;
  int deg_q = 0, deg_g = 0, deg_f = 0, deg_h = 0;

  int unknowns() const { return deg_q + deg_g + deg_f + deg_h; }

  /// Throws Error("ShapeError") unless N = 3 + s (mod 2) and the implied
  /// degrees are nonnegative.
  static SystemShape for_signature(int N, int s);
};

SystemShape build_system(const trees::Tree& t);

/// Signatures whose shapes exist at degree N ({0,2} for odd N, {1,3} for
/// even N, clipped to nonnegative factor degrees).
std::vector<int> signatures_for_degree(int N);

struct BelyiSolution {
  int N = 0;
  int s = 0;
  Poly q, g, f, h;  // monic factors
  mpfr_prec_t precision_bits = 256;
  std::optional<trees::Tree> decoded_tree;
  Real residual_norm;

  Poly beta() const;        // x^3 q g^2
  Poly beta_minus_1() const;  // f h^2
  bool primitive() const { return decoded_tree && decoded_tree->primitive(); }
};

struct SolveConfig {
  mpfr_prec_t precision_bits = 256;
  int max_restarts = 64;  // multistart batches; each batch tries a handful of starts
  int newton_max_iters = 80;
  long newton_tolerance_exponent = 0;  // 0 selects precision_bits / 2
  uint64_t rng_seed = 0;

  long tolerance_exponent() const {
    return newton_tolerance_exponent > 0 ? newton_tolerance_exponent
                                         : static_cast<long>(precision_bits) / 2;
  }
};

struct SolveDiagnostics {
  long newton_attempts = 0;
  long newton_converged = 0;
  long duplicates = 0;
  long decode_failures = 0;
  long degenerate = 0;
  int precision_escalations = 0;
};

struct SolveResult {
  std::vector<BelyiSolution> solutions;  // deduplicated, decode attempted
  std::vector<trees::Tree> missing;      // primitive census trees with no solution
  SolveDiagnostics diagnostics;

  bool complete() const { return missing.empty(); }
};

/// Multistart Newton over every signature shape of degree N until each
/// primitive tree of the census is matched by exactly one solution class
/// (modulo the lambda^N = 1 rescaling), or restarts run out. Incompleteness
/// is reported in the result, not thrown, so partial sets stay usable.
SolveResult solve_all(int N, const SolveConfig& cfg);

/// The gauge action x -> lambda x on a solution (lambda^N = 1).
BelyiSolution rescale(const BelyiSolution& sol, const Complex& lambda);
/// Coefficient-wise complex conjugation (solves the system again, decodes
/// to the mirror tree).
BelyiSolution conjugated(const BelyiSolution& sol);
/// Distance min over lambda^N = 1 rescalings, the dedup metric.
Real gauge_distance(const BelyiSolution& a, const BelyiSolution& b);

/// Reads the plane tree off a numeric solution by lifting the segment
/// (0,1) from every black vertex. Throws Error("DecodeAmbiguous") when the
/// combinatorics cannot be resolved (merged fibers, stray path endpoints).
trees::Tree decode_tree(const BelyiSolution& sol);

struct VerifyReport {
  bool ok = true;
  std::string failed_check;    // empty when ok
  Real residual_recheck;       // residual at doubled precision
  Real critical_value_defect;  // max distance of critical values from {0,1}
  Real derivative_defect;      // || beta' - N x^2 g h ||
};

/// Re-certifies a solution: residual at doubled precision, critical values
/// of beta inside {0,1}, and the forced factorization beta' = N x^2 g h.
/// Throws Error("VerificationFailed") naming the first failing check.
VerifyReport verify_solution(const BelyiSolution& sol);

/// Newton-polishes an existing solution at a (typically higher) target
/// precision; returns the refined solution. Used for precision escalation.
BelyiSolution polish(const BelyiSolution& sol, mpfr_prec_t target_bits);

}  // namespace lame::belyi

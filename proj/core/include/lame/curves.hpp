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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lame/belyi.hpp"
#include "lame/numberfield.hpp"
#include "lame/theta.hpp"

namespace lame::curves {

/// Branch locus of the double cover: the tree center 0 and the three odd
/// ramification points (roots of q and f).
struct BranchData {
  std::vector<Complex> S;  // size 4, S[0] = 0
};

/// Weierstrass data (y^2 = 4x^3 - g2 x - g3, marked point abscissa B) with
/// the scalar-equivalence invariants of the operator.
struct EllipticModel {
  Complex g2, g3, B, Delta;
  Complex j, j1, j2, j3;
  Complex yB;  // ordinate of P with Im >= 0 (ties: Re >= 0)
  mpfr_prec_t precision_bits = 256;
  std::map<std::string, AlgebraicNumber> recognized;  // subset of {j,j1,j2,j3,g2,g3,B}
};

BranchData branch_points(const belyi::BelyiSolution& sol);

/// Moves the center to infinity (x -> 1/x), normalizes the resulting cubic
/// to 4x^3 - g2 x - g3 and marks P = preimage of the original infinity.
/// Throws Error("SingularCurve") when the discriminant vanishes to
/// tolerance.
EllipticModel build_pair(const BranchData& bd);

struct TorsionResult {
  long order = 0;          // agreed exact order of P
  long order_2p = 0;       // exact order of 2P
  long log_order = 0;      // from the elliptic logarithm
  long divpoly_order = 0;  // from division-polynomial vanishing
  Real alpha, beta;        // lattice coordinates of the elliptic log of P
};

/// Exact order of the marked point by two independent routes: lattice
/// coordinates of the elliptic log, and vanishing of division-polynomial
/// values along k = 1..max_order. Throws Error("TorsionUncertain") when the
/// routes disagree.
TorsionResult torsion_order(const EllipticModel& m, const theta::LatticeData& lat, int max_order);

/// Division-polynomial values psi_k(P), k = 0..kmax, on the short model
/// y^2 = x^3 + A x + B with A = -g2/4, B = -g3/4; y_half = yB / 2.
std::vector<Complex> division_poly_values(const EllipticModel& m, const Complex& x,
                                          const Complex& y_half, int kmax);

/// Doubling on the short model; input/output y-coordinates are y_half.
std::pair<Complex, Complex> double_point(const EllipticModel& m, const Complex& x,
                                         const Complex& y_half);

struct FieldDescription {
  std::map<std::string, AlgebraicNumber> generators;  // recognized j, j1, j2, j3
  std::optional<AlgebraicNumber> primitive;           // xi = j + c1 j1 + c2 j2 + c3 j3
  int degree = 0;                                     // 0 while unrecognized
  bool ok() const { return degree > 0; }
};

/// Recognizes the field of moduli K = Q(j, j1, j2, j3). The primitive
/// element is certified by degree stabilization across two random small
/// rational coefficient draws. Recognized invariants are cached on the
/// model. Returns degree 0 (with whatever was recognized) on failure.
FieldDescription field_of_moduli(EllipticModel& m, int max_degree, uint64_t seed);

struct Orbit {
  std::vector<trees::Tree> members;
  IntPoly j_min_poly;
  int field_degree = 0;
  Int min_poly_disc;
  std::map<Int, int> disc_factorization;  // found factors (bounded effort)
  Int disc_cofactor = 1;                  // unfactored remainder, 1 if none
  std::vector<long> ramified_primes;  // primes ramifying in Q(j) (degree <= 3 fields)
  std::string note;
};

struct OrbitReport {
  int N = 0;
  std::vector<Orbit> orbits;
  std::vector<trees::Tree> unrecognized;  // singletons without a recognized j
};

/// Groups trees whose recognized j-invariants share one irreducible minimal
/// polynomial; checks orbit sizes against field degrees.
OrbitReport galois_orbits(int N,
                          const std::vector<std::pair<trees::Tree, std::optional<AlgebraicNumber>>>&
                              recognized_js);

struct ReductionReport {
  long p = 0;
  bool exact_ok = false;  // false = prediction-only (see degrade_reason)
  std::string degrade_reason;
  int field_degree = 0;
  int e_p = 0, f_p = 0, num_primes = 0;
  long v_j = 0, v_j1728 = 0;
  long v_delta = 0;      // of the canonical Q(j)-model j^2/(j-1728)^3
  int v_delta_mod6 = -1;
  bool potentially_good = false;  // v_p(j) >= 0
  bool good_reduction = false;    // v_delta = 0 (mod 6)
  bool predicted_good = false;    // Prop-5-style modulus divides e_p
  bool thm2_divides = false;      // e | e_p
  bool supersingular_predicted = false;
  std::optional<long> v_delta_formula;  // 12 e_p / (p+1), signature 0 only
};

/// Exact reduction data above p from the recognized j minimal polynomial:
/// prime splitting via the Dedekind test, valuations via norms, and
/// v(Delta) mod 6 of a Q(j)-rational model (twist-invariant for
/// j != 0, 1728). Degrades to prediction-only mode (exact_ok = false) for
/// degree > 3 fields, split primes, index obstructions or j in {0, 1728}.
ReductionReport reduction_report(const std::optional<AlgebraicNumber>& j_alg, long p,
                                 const trees::PredictionRecord& pred);

}  // namespace lame::curves

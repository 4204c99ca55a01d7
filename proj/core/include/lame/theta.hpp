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

#include <utility>
#include <vector>

#include "lame/poly.hpp"

namespace lame::theta {

/// Period lattice of y^2 = 4x^3 - g2 x - g3 with quasi-period data.
///
/// The basis is Gauss-reduced with Im(omega2/omega1) > 0, so the nome
/// q = exp(i pi tau) is small and every series here converges fast. The
/// construction certifies itself: g2, g3 are recovered from Eisenstein
/// series of the lattice and the Legendre relation
/// eta1 omega2 - eta2 omega1 = 2 pi i is checked to working tolerance.
struct LatticeData {
  Complex omega1, omega2;
  Complex eta1, eta2;
  Complex tau;
  Complex g2, g3;
  mpfr_prec_t bits = 256;
};

/// Periods by AGM on the root differences of 4x^3 - g2 x - g3, quasi-periods
/// from the theta-constant formula eta1 = -pi^2 theta1'''(0)/(3 omega1
/// theta1'(0)) and eta2 = 2 zeta(omega2/2). Throws Error("AGMFailure") when
/// no root ordering passes certification (e.g. near Delta = 0).
LatticeData lattice_from_model(const Complex& g2, const Complex& g3, mpfr_prec_t bits);

/// Optimal-branch complex arithmetic-geometric mean.
Complex cagm(Complex a, Complex b, mpfr_prec_t bits);

/// Weierstrass zeta(z); z must not be a lattice point.
Complex weier_zeta(const LatticeData& lat, const Complex& z);
/// Weierstrass p-function and its derivative.
Complex weier_p(const LatticeData& lat, const Complex& z);
Complex weier_p_prime(const LatticeData& lat, const Complex& z);

/// Coordinates (alpha, beta) of z in the period basis: z = a w1 + b w2.
std::pair<Real, Real> lattice_coords(const LatticeData& lat, const Complex& z);

struct ThetaEvaluation {
  Real alpha, beta;
  Complex theta_value;
  long tolerance_exponent;
};

/// theta(z) = zeta(z) - alpha eta1 - beta eta2 at z = alpha w1 + beta w2.
/// Quasi-periodicity makes this well defined on the curve minus the origin;
/// arguments within 2^(-bits/8) of the lattice throw Error("PoleProximity").
ThetaEvaluation theta_eval(const LatticeData& lat, const Real& alpha, const Real& beta);

/// Brute-force scan of (a/2N, b/2N) torsion classes, 0 <= a,b < 2N,
/// excluding E[2]; returns the classes with |theta| < 2^(-bits/3), each hit
/// re-verified at doubled precision. Closed under negation since theta is
/// odd.
std::vector<std::pair<int, int>> scan_torsion(const LatticeData& lat, int N, mpfr_prec_t bits);

/// Elliptic logarithm: a z with weier_p(z) = x, found by Newton from a grid
/// of starting points over the fundamental cell. The sign ambiguity z vs -z
/// is harmless for order computations.
Complex elliptic_log(const LatticeData& lat, const Complex& x);

}  // namespace lame::theta

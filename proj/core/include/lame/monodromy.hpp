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

#include <array>
#include <string>
#include <vector>

#include "lame/curves.hpp"

namespace lame::monodromy {

/// 2x2 complex matrix, row-major.
using Mat2 = std::array<Complex, 4>;

Mat2 mat_mul(const Mat2& a, const Mat2& b);
Mat2 mat_identity(mpfr_prec_t prec);
Complex mat_det(const Mat2& m);
Mat2 mat_inverse(const Mat2& m);
Real mat_norm(const Mat2& m);
/// Projective distance: Frobenius distance after unit-norm phase alignment.
Real projective_distance(const Mat2& a, const Mat2& b);

/// The exponent-1 Lame operator D^2 + (f'/2f) D - (2x + B)/f with
/// f = 4x^3 - g2 x - g3; regular singular at the three roots of f and at
/// infinity, exponent difference 1/2 at each finite singularity.
struct LameODE {
  Complex g2, g3, B;
  std::vector<Complex> singular;  // the three finite singular points
  mpfr_prec_t bits = 256;
};

LameODE make_ode(const curves::EllipticModel& m);

/// Transfer matrix along the polygonal path through the given points:
/// (u, u') at the end = M * (u, u') at the start, by Taylor-series stepping
/// with step <= 0.4 x distance to the nearest singularity. Throws
/// Error("StepSizeUnderflow") when the series cannot converge.
Mat2 integrate_path(const LameODE& ode, const std::vector<Complex>& points, mpfr_prec_t bits);

/// Closed-loop monodromy around the path; certifies by integrating the
/// reversed loop and checking the product against the identity.
Mat2 integrate_loop(const LameODE& ode, const std::vector<Complex>& loop, mpfr_prec_t bits);

/// Star-shaped loop (basepoint -> circle around the singularity -> back),
/// counterclockwise, with detours when the spoke passes near another
/// singularity.
std::vector<Complex> star_loop(const LameODE& ode, const Complex& basepoint, int sing_index,
                               mpfr_prec_t bits);

struct MonodromyCertificate {
  Complex basepoint;
  std::vector<Mat2> loop_matrices;      // around the finite singularities (det -1 each)
  std::vector<Mat2> det_normalized;     // det-1 lifts for reporting
  long projective_group_order = 0;
  long linear_group_order = 0;
  bool dihedral = false;
  long cyclic_order = 0;                // order of the rotation subgroup generator found
  Real separation_margin;               // min projective distance between distinct elements
  Real dedup_threshold;
  Real reversal_residual;               // worst loop-reversal identity defect
  Real relation_residual;               // product relation vs big-loop defect
  long residual_exponent = 0;
};

/// Generates the projective and linear monodromy groups from the three
/// finite-singularity loops by breadth-first products with numerical
/// deduplication, asserts the dihedral shape of order 2N, and reports
/// separation margins. Throws Error("GroupBlowup") past 8N elements and
/// Error("OrderMismatch") when the projective order is not 2N.
MonodromyCertificate certify_dihedral(const LameODE& ode, int N, mpfr_prec_t bits);

}  // namespace lame::monodromy

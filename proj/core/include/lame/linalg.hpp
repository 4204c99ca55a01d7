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

#include <vector>

#include "lame/complex.hpp"

namespace lame {

/// Solves A x = b in place by Gaussian elimination with partial pivoting.
/// The systems here are small (dimension <= a few dozen), dense and well
/// conditioned at solutions; near-singular pivots throw.
inline std::vector<Complex> solve_dense(std::vector<std::vector<Complex>> a,
                                        std::vector<Complex> b, long pivot_floor_exp = -1000000) {
  const int n = static_cast<int>(a.size());
  mpfr_prec_t prec = n > 0 ? a[0][0].prec() : kMinPrecision;
  Real floor_val = Real::pow2(pivot_floor_exp, prec);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col].abs() > a[piv][col].abs()) piv = r;
    }
    if (a[piv][col].abs() <= floor_val) {
      throw Error("SingularSystem", "pivot below floor in dense solve");
    }
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    Complex inv = a[col][col].inv();
    for (int r = col + 1; r < n; ++r) {
      if (a[r][col].is_exact_zero()) continue;
      Complex f = a[r][col] * inv;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Complex> x(n, Complex::zero(prec));
  for (int r = n - 1; r >= 0; --r) {
    Complex acc = b[r];
    for (int c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace lame

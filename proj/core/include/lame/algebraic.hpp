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

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <string>
#include <vector>

#include "lame/poly.hpp"

namespace lame {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// Integer polynomial, ascending coefficients.
using IntPoly = std::vector<Int>;

/// An algebraic number: a primitive integer minimal polynomial together
/// with a certified numeric approximation of one of its roots.
struct AlgebraicNumber {
  IntPoly min_poly;
  Complex root_approx;
  long height_bound = 0;    // log2 bound on |coefficients|
  long certified_bits = 0;  // residual certified below 2^(-certified_bits/2)

  int degree() const { return static_cast<int>(min_poly.size()) - 1; }
  bool is_rational() const { return degree() == 1; }
  std::string poly_str() const;
};

/// In-place LLL reduction (delta = 0.99) of the given integer row basis,
/// exact rational Gram-Schmidt bookkeeping. Rows must be linearly
/// independent.
void lll_reduce(std::vector<std::vector<Int>>& basis);

/// Attempts to recognize x as an algebraic number of degree <= max_degree
/// with coefficient heights <= 2^max_height_log2, by LLL on the lattice of
/// scaled powers [1, x, ..., x^d].
///
/// Requires prec(x) >= 8 * max_degree * max_height_log2, else throws
/// Error("InsufficientPrecision"). Degrees are searched in increasing
/// order, so a hit is a minimal-degree (hence irreducible) relation.
/// Returns nullopt when no relation exists within the bounds.
std::optional<AlgebraicNumber> recognize_algebraic(const Complex& x, int max_degree,
                                                   int max_height_log2);

/// Finds a nonzero integer vector c with |sum c_i x_i| vanishing to the
/// working tolerance and |c_i| <= 2^max_height_log2, or nullopt. The same
/// LLL machinery as recognize_algebraic, for linear dependencies (e.g.
/// expressing a value inside an already-recognized number field).
std::optional<std::vector<Int>> integer_relation(const std::vector<Complex>& xs,
                                                 int max_height_log2);

/// Evaluates an integer polynomial at a complex point.
Complex eval_int_poly(const IntPoly& p, const Complex& x);

Real int_poly_coeff_norm(const IntPoly& p, mpfr_prec_t prec);

}  // namespace lame

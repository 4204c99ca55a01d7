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

#include "lame/algebraic.hpp"

namespace lame::nf {

using QPoly = std::vector<Rat>;  // ascending coefficients

QPoly to_q(const IntPoly& p);
IntPoly primitive_part(const QPoly& p);
QPoly q_trim(QPoly p);
QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
QPoly q_mul(const QPoly& a, const QPoly& b);
/// Euclidean division a = q*b + r over Q; returns {q, r}.
std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b);
QPoly q_derivative(const QPoly& p);
Rat q_eval(const QPoly& p, const Rat& x);

/// Exact resultant via the Sylvester determinant (fraction-free enough for
/// the small degrees used here).
Rat q_resultant(const QPoly& a, const QPoly& b);
/// disc(p) = (-1)^(d(d-1)/2) res(p, p') / lc(p), exact.
Rat q_discriminant(const QPoly& p);
Int int_poly_discriminant(const IntPoly& p);

/// p-adic valuation of a nonzero rational.
long val_p(const Rat& x, const Int& p);

/// Bounded-effort factorization: trial division, then a few Pollard-rho
/// rounds. Whatever resists stays in `cofactor` (1 when complete); callers
/// must treat an incomplete cofactor honestly.
struct Factorization {
  std::map<Int, int> factors;
  Int cofactor = 1;
  bool complete() const { return cofactor == 1; }
};
Factorization factor_int_bounded(Int n, int effort = 1);

/// Complete factorization of |n|; throws Error("FactorizationFailed") when
/// the bounded effort leaves a cofactor.
std::map<Int, int> factor_int(Int n);

/// Squarefree kernel of n (sign preserved): n / (largest square divisor).
/// Throws when the unfactored cofactor prevents a certified answer.
Int squarefree_kernel(const Int& n);

/// Exact test: is n a perfect square (n >= 0)?
bool is_perfect_square(const Int& n);

/// Factor a monic polynomial of degree <= 3 over F_p into irreducibles.
/// Returns factors (each monic, ascending coefficients) with multiplicity.
std::vector<std::pair<std::vector<Int>, int>> factor_mod_p_cubic(const IntPoly& f, const Int& p);

struct PrimeStructure {
  bool index_coprime = false;  // Dedekind: p does not divide [O_K : Z[theta]]
  int num_primes = 0;
  std::vector<std::pair<int, int>> ef;  // (e_i, f_i) per prime above p
};

/// Splitting data of p in Q[x]/(f) for monic integer f of degree <= 3.
PrimeStructure prime_structure(const IntPoly& monic_f, const Int& p);

/// Number field Q(theta) for theta a root of a primitive (not necessarily
/// monic) irreducible integer polynomial. Elements are polynomials in theta
/// over Q, reduced mod the minimal polynomial.
class NumberField {
 public:
  explicit NumberField(IntPoly min_poly);

  int degree() const { return static_cast<int>(f_.size()) - 1; }
  const IntPoly& min_poly() const { return f_; }

  /// theta as an element.
  QPoly generator() const;
  QPoly from_rational(const Rat& r) const;
  QPoly reduce(const QPoly& a) const;
  QPoly add(const QPoly& a, const QPoly& b) const { return reduce(q_add(a, b)); }
  QPoly sub(const QPoly& a, const QPoly& b) const { return reduce(q_sub(a, b)); }
  QPoly mul(const QPoly& a, const QPoly& b) const { return reduce(q_mul(a, b)); }
  QPoly inv(const QPoly& a) const;

  /// Field norm N_{K/Q}(a) = res(f, a) / lc(f)^deg(a), exact.
  Rat norm(const QPoly& a) const;

  /// v_P(a) at the unique prime P above p; requires a unique prime and the
  /// Dedekind test to pass on the monic transform. Throws
  /// Error("MultiplePrimesAbove") / Error("IndexObstruction") otherwise.
  long valuation_above(const QPoly& a, const Int& p) const;

  /// Splitting of p, computed on the monic transform of the generator.
  /// Requires p coprime to the leading coefficient.
  PrimeStructure splitting(const Int& p) const;

  /// Monic integer minimal polynomial of lc*theta.
  IntPoly monic_transform() const;

  /// Exact minimal polynomial (primitive, positive leading coefficient) of
  /// the element gamma, from the characteristic polynomial of the
  /// multiplication-by-gamma matrix on the power basis. Degrees <= 3 only.
  IntPoly element_min_poly(const QPoly& gamma) const;

 private:
  IntPoly f_;
};

}  // namespace lame::nf

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

#include <cstdint>
#include <vector>

#include "lame/complex.hpp"

namespace lame {

/// Dense univariate polynomial over Complex, coefficients in ascending
/// degree. The zero polynomial has degree -1 and an empty coefficient list.
/// Exact trailing zeros are kept; exact *leading* zeros are trimmed on
/// normalization so that degree() == coeffs().size() - 1 always holds.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(Complex v) { return Poly(std::vector<Complex>{std::move(v)}); }
  static Poly one(mpfr_prec_t prec) { return constant(Complex::one(prec)); }
  /// x^k with unit leading coefficient.
  static Poly monomial(int k, mpfr_prec_t prec);
  /// Monic product of (x - r) over the given roots.
  static Poly from_roots(const std::vector<Complex>& roots, mpfr_prec_t prec);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Complex>& coeffs() const { return c_; }
  const Complex& operator[](size_t i) const { return c_[i]; }
  const Complex& leading() const { return c_.back(); }
  mpfr_prec_t prec() const;

  /// Max |coefficient| (0 for the zero polynomial).
  Real coeff_norm() const;

  Complex eval(const Complex& x) const;
  /// Horner evaluation of p and p' in one pass.
  std::pair<Complex, Complex> eval_with_derivative(const Complex& x) const;

  Poly derivative() const;
  /// p(x + a) via iterated synthetic division (exact Taylor shift).
  Poly shifted(const Complex& a) const;
  /// p(s*x) with coefficient-wise scaling.
  Poly scaled_arg(const Complex& s) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Complex& s);
  Poly operator-() const;

  Poly at_prec(mpfr_prec_t p) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
  }
  std::vector<Complex> c_;
};

/// A root with the multiplicity assigned by cluster detection.
struct RootCluster {
  Complex location;
  int multiplicity = 1;
};

struct RootConfig {
  int max_iterations = 600;
  int max_restarts = 8;
  uint64_t rng_seed = 0x5eed;
};

/// All complex roots of p with multiplicities.
///
/// Aberth-Ehrlich simultaneous iteration at elevated working precision with
/// random-perturbation restarts. Multiplicities come from clustering at
/// radius 2^(-precision_bits/4); the result is certified by re-expanding
/// lc * prod (x-r)^m and comparing coefficients against p at relative
/// tolerance 2^(-precision_bits/2). Throws Error("NonConvergence") when the
/// certification cannot be met after the configured restarts.
std::vector<RootCluster> poly_roots(const Poly& p, mpfr_prec_t precision_bits,
                                    const RootConfig& cfg = {});

/// Convenience: roots flattened with multiplicity.
std::vector<Complex> poly_roots_flat(const Poly& p, mpfr_prec_t precision_bits);

/// Resultant of p and q via the Sylvester matrix (Gaussian elimination).
Complex poly_resultant(const Poly& p, const Poly& q);

/// Discriminant via the resultant of p and p':
/// disc(p) = (-1)^(d(d-1)/2) * res(p, p') / lc(p).
Complex poly_resultant_discriminant(const Poly& p);

}  // namespace lame

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

#include "lame/real.hpp"

namespace lame {

/// Complex number over `Real`. Both components are kept at the same
/// precision; binary operations inherit the minimum operand precision.
class Complex {
 public:
  Real re, im;

  Complex() : re(), im() {}
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(Real(re.prec())) {}

  static Complex of(long r, long i, mpfr_prec_t prec) {
    return Complex(Real::of(r, prec), Real::of(i, prec));
  }
  static Complex of(double r, double i, mpfr_prec_t prec) {
    return Complex(Real::of(r, prec), Real::of(i, prec));
  }
  static Complex zero(mpfr_prec_t prec) { return Complex(prec); }
  static Complex one(mpfr_prec_t prec) { return of(1L, 0L, prec); }
  static Complex i_unit(mpfr_prec_t prec) { return of(0L, 1L, prec); }
  /// exp(2*pi*i * k/n)
  static Complex unit_root(long k, long n, mpfr_prec_t prec);

  mpfr_prec_t prec() const { return re.prec() < im.prec() ? re.prec() : im.prec(); }
  Complex at_prec(mpfr_prec_t p) const { return Complex(re.at_prec(p), im.at_prec(p)); }

  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_exact_zero() const { return re.is_zero() && im.is_zero(); }

  Complex conj() const { return Complex(re, -im); }
  Real abs() const { return hypot(re, im); }
  Real norm() const { return re * re + im * im; }
  Real arg() const { return atan2(im, re); }
  Complex ldexp(long e) const { return Complex(re.ldexp(e), im.ldexp(e)); }

  friend Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
  }
  friend Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
  }
  Complex operator-() const { return Complex(-re, -im); }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend Complex operator*(const Complex& a, const Real& s) {
    return Complex(a.re * s, a.im * s);
  }
  friend Complex operator*(const Real& s, const Complex& a) { return a * s; }
  friend Complex operator*(const Complex& a, long s) { return Complex(a.re * s, a.im * s); }
  friend Complex operator*(long s, const Complex& a) { return a * s; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm();
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  friend Complex operator/(const Complex& a, const Real& s) {
    return Complex(a.re / s, a.im / s);
  }
  friend Complex operator/(const Complex& a, long s) { return Complex(a.re / s, a.im / s); }

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
  }

  /// Multiplication by the imaginary unit.
  Complex mul_i() const { return Complex(-im, re); }

  /// Principal square root (branch cut on the negative real axis).
  Complex sqrt() const;
  /// exp(z)
  Complex exp() const;
  /// Integer power by repeated squaring.
  Complex pow(unsigned long n) const;
  Complex inv() const {
    Real d = norm();
    return Complex(re / d, -(im / d));
  }

  std::string str(size_t digits = 0) const {
    return "(" + re.str(digits) + ", " + im.str(digits) + ")";
  }
};

inline Real abs_dist(const Complex& a, const Complex& b) { return (a - b).abs(); }

}  // namespace lame

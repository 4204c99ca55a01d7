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

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace lame {

/// Base class of all library errors. `kind()` names the failure the way the
/// operation contracts do (NonConvergence, InsufficientPrecision, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

constexpr mpfr_prec_t kMinPrecision = 64;

/// Arbitrary-precision real number backed by MPFR.
///
/// Every value carries its own precision (>= 64 bits). Binary operations
/// round to the *minimum* of the operand precisions, so precision never
/// silently inflates past what the inputs support. All rounding is
/// to-nearest.
class Real {
 public:
  Real() : Real(kMinPrecision) {}
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinPrecision);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  /// Parses a decimal string.
  static Real parse(const std::string& s, mpfr_prec_t prec);
  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e as an exact value (useful as a tolerance threshold).
  static Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static Real nan(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_nan(r.v_);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  /// Decimal string, round-trippable at this precision (`digits` 0 = auto).
  std::string str(size_t digits = 0) const;

  /// log2 of the absolute value (-inf for 0); cheap magnitude probe.
  Real log2abs() const {
    Real r(prec());
    mpfr_t a;
    mpfr_init2(a, prec());
    mpfr_abs(a, v_, MPFR_RNDN);
    mpfr_log2(r.v_, a, MPFR_RNDN);
    mpfr_clear(a);
    return r;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(minp(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator+(const Real& a, long b) {
    Real r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, long b) {
    Real r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& o) {
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  int cmp(long x) const { return mpfr_cmp_si(v_, x); }

  Real abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real sqrt() const {
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real ldexp(long e) const {
    Real r(prec());
    mpfr_mul_2si(r.v_, v_, e, MPFR_RNDN);
    return r;
  }
  Real round() const {
    Real r(prec());
    mpfr_rint(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real floor() const {
    Real r(prec());
    mpfr_floor(r.v_, v_);
    return r;
  }
  /// Re-rounds this value to a new precision.
  Real at_prec(mpfr_prec_t p) const {
    Real r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real sin() const {
    Real r(prec());
    mpfr_sin(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real cos() const {
    Real r(prec());
    mpfr_cos(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real exp() const {
    Real r(prec());
    mpfr_exp(r.v_, v_, MPFR_RNDN);
    return r;
  }
  friend Real atan2(const Real& y, const Real& x) {
    Real r(minp(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& x, const Real& y) {
    Real r(minp(x, y));
    mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }
  friend Real fma_sub(const Real& acc, const Real& a, const Real& b) {
    Real r(acc.prec());
    mpfr_fms(r.v_, a.v_, b.v_, acc.v_, MPFR_RNDN);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  static mpfr_prec_t clamp(mpfr_prec_t p) { return p < kMinPrecision ? kMinPrecision : p; }
  static mpfr_prec_t minp(const Real& a, const Real& b) {
    return a.prec() < b.prec() ? a.prec() : b.prec();
  }
  mpfr_t v_;
};

inline Real min(const Real& a, const Real& b) { return a < b ? a : b; }
inline Real max(const Real& a, const Real& b) { return a > b ? a : b; }

}  // namespace lame

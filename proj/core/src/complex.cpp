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

#include "lame/complex.hpp"

namespace lame {

Complex Complex::unit_root(long k, long n, mpfr_prec_t prec) {
  Real angle = Real::pi(prec) * (2 * k) / n;
  Real c(prec), s(prec);
  mpfr_sin_cos(s.raw(), c.raw(), angle.raw(), MPFR_RNDN);
  return Complex(c, s);
}

Complex Complex::sqrt() const {
  mpfr_prec_t p = prec();
  if (im.is_zero()) {
    if (re.sign() >= 0) return Complex(re.sqrt(), Real(p));
    return Complex(Real(p), (-re).sqrt());
  }
  // w = sqrt((|z| + re)/2), sqrt(z) = w + i*im/(2w), stable for re >= 0;
  // otherwise compute via the conjugate quadrant.
  Real a = abs();
  if (re.sign() >= 0) {
    Real w = ((a + re) / 2).sqrt();
    return Complex(w, im / (w * 2));
  }
  Real w = ((a - re) / 2).sqrt();
  if (im.sign() >= 0) return Complex(im / (w * 2), w);
  return Complex(-(im / (w * 2)), -w);
}

Complex Complex::exp() const {
  Real er = re.exp();
  Real c(prec()), s(prec());
  mpfr_sin_cos(s.raw(), c.raw(), im.raw(), MPFR_RNDN);
  return Complex(er * c, er * s);
}

Complex Complex::pow(unsigned long n) const {
  Complex acc = Complex::one(prec());
  Complex base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

}  // namespace lame

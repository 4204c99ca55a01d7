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

#include "lame/real.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace lame {

Real Real::parse(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.raw(), s.c_str(), 10, MPFR_RNDN) != 0 && !s.empty() && s != "nan") {
    throw Error("ParseError", "bad decimal literal: " + s);
  }
  return r;
}

std::string Real::str(size_t digits) const {
  if (is_nan()) return "nan";
  if (!is_finite()) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  if (digits == 0) {
    digits = static_cast<size_t>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 3;
  }
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign_part;
  if (!mant.empty() && mant[0] == '-') {
    sign_part = "-";
    mant = mant.substr(1);
  }
  // Trim trailing zeros of the mantissa but keep at least one digit.
  size_t last = mant.find_last_not_of('0');
  mant = mant.substr(0, last == std::string::npos ? 1 : last + 1);
  // mpfr convention: value = 0.mant * 10^e
  return sign_part + "0." + mant + "e" + std::to_string(static_cast<long>(e));
}

}  // namespace lame

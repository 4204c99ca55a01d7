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
#include <random>

#include "lame/complex.hpp"

namespace lame {

/// Deterministic RNG handed around explicitly; no global state. Seeds are
/// part of every run configuration so outputs are reproducible bytes.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  double uniform() { return dist_(gen_); }
  uint64_t bits() { return gen_(); }

  /// Uniform point in the disk of the given radius (double-resolution
  /// randomness is plenty for starting points).
  Complex in_disk(double radius, mpfr_prec_t prec) {
    double r = radius * std::sqrt(uniform());
    double a = 6.283185307179586 * uniform();
    return Complex::of(r * std::cos(a), r * std::sin(a), prec);
  }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

}  // namespace lame

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

#include <benchmark/benchmark.h>

#include <random>

#include "lame/algebraic.hpp"
#include "lame/monodromy.hpp"
#include "lame/theta.hpp"

namespace {

using namespace lame;

Poly random_poly(int degree, mpfr_prec_t prec, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coef(-9, 9);
  std::vector<Complex> c;
  for (int i = 0; i < degree; ++i) c.push_back(Complex::of(coef(rng), coef(rng), prec));
  c.push_back(Complex::one(prec));
  return Poly(std::move(c));
}

void BM_PolyRoots(benchmark::State& state) {
  const mpfr_prec_t prec = state.range(1);
  Poly p = random_poly(static_cast<int>(state.range(0)), prec, 77);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_roots(p, prec));
  }
}
BENCHMARK(BM_PolyRoots)->Args({6, 128})->Args({12, 128})->Args({12, 256});

void BM_RecognizeAlgebraic(benchmark::State& state) {
  Complex x(Real::of(2L, 400).sqrt());
  for (auto _ : state) {
    benchmark::DoNotOptimize(recognize_algebraic(x, static_cast<int>(state.range(0)), 10));
  }
}
BENCHMARK(BM_RecognizeAlgebraic)->Arg(2)->Arg(4);

void BM_ThetaEval(benchmark::State& state) {
  const mpfr_prec_t prec = state.range(0);
  auto lat = theta::lattice_from_model(Complex::of(7L, 0L, prec), Complex::of(3L, 0L, prec), prec);
  Real a = Real::of(0.3, prec), b = Real::of(0.4, prec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta::theta_eval(lat, a, b));
  }
}
BENCHMARK(BM_ThetaEval)->Arg(128)->Arg(256);

void BM_LatticeFromModel(benchmark::State& state) {
  const mpfr_prec_t prec = state.range(0);
  Complex g2 = Complex::of(7L, 0L, prec), g3 = Complex::of(3L, 0L, prec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta::lattice_from_model(g2, g3, prec));
  }
}
BENCHMARK(BM_LatticeFromModel)->Arg(256);

void BM_LoopIntegration(benchmark::State& state) {
  const mpfr_prec_t prec = state.range(0);
  curves::EllipticModel m;
  m.precision_bits = prec;
  m.g2 = Complex::of(4L, 0L, prec);
  m.g3 = Complex::of(1L, 0L, prec);
  m.B = Complex::of(2L, 0L, prec);
  auto ode = monodromy::make_ode(m);
  Complex base = Complex::of(6L, 0L, prec);
  auto loop = monodromy::star_loop(ode, base, 0, prec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monodromy::integrate_path(ode, loop, prec));
  }
}
BENCHMARK(BM_LoopIntegration)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lame/monodromy.hpp"

using namespace lame;
using monodromy::Mat2;

namespace {

constexpr mpfr_prec_t P = 128;

monodromy::LameODE cube_ode(mpfr_prec_t bits) {
  // the [1,1,1] operator: g2 = 0, g3 = 4, B = 0
  curves::EllipticModel m;
  m.precision_bits = bits;
  m.g2 = Complex::zero(bits);
  m.g3 = Complex::of(4L, 0L, bits);
  m.B = Complex::zero(bits);
  m.Delta = m.g2.pow(3) - m.g3 * m.g3 * 27;
  return monodromy::make_ode(m);
}

Real id_dist(const Mat2& m, mpfr_prec_t bits) {
  return monodromy::mat_norm(
      {m[0] - Complex::one(bits), m[1], m[2], m[3] - Complex::one(bits)});
}

}  // namespace

TEST_CASE("matrix helpers") {
  Mat2 a{Complex::of(1L, 0L, P), Complex::of(2L, 0L, P), Complex::of(3L, 0L, P),
         Complex::of(4L, 0L, P)};
  Mat2 inv = monodromy::mat_inverse(a);
  Mat2 prod = monodromy::mat_mul(a, inv);
  CHECK(id_dist(prod, P) < Real::pow2(-100, P));
  CHECK((monodromy::mat_det(a) - Complex::of(-2L, 0L, P)).abs() < Real::pow2(-100, P));
  // projective distance ignores scalar multiples
  Mat2 b{a[0] * Complex::of(0L, 3L, P), a[1] * Complex::of(0L, 3L, P),
         a[2] * Complex::of(0L, 3L, P), a[3] * Complex::of(0L, 3L, P)};
  CHECK(monodromy::projective_distance(a, b) < Real::pow2(-100, P));
}

TEST_CASE("trivial loop integrates to the identity") {
  auto ode = cube_ode(P);
  // small square loop far from all singularities
  std::vector<Complex> loop;
  for (auto [x, y] : {std::pair{9.0, 0.0}, {9.5, 0.5}, {10.0, 0.0}, {9.5, -0.5}, {9.0, 0.0}}) {
    loop.push_back(Complex::of(x, y, P));
  }
  Mat2 m = monodromy::integrate_loop(ode, loop, P);
  CHECK(id_dist(m, P) < Real::pow2(-static_cast<long>(P) / 2, P));
}

TEST_CASE("single-singularity loop is a projective involution with det -1") {
  auto ode = cube_ode(P);
  Complex base = Complex::of(6L, 0L, P);
  auto loop = monodromy::star_loop(ode, base, 0, P);
  Mat2 m = monodromy::integrate_loop(ode, loop, P);
  // local exponents 0, 1/2: the square is scalar and det is -1
  CHECK((monodromy::mat_det(m) + Complex::one(P)).abs() < Real::pow2(-40, P));
  Mat2 sq = monodromy::mat_mul(m, m);
  Mat2 id{Complex::one(P), Complex::zero(P), Complex::zero(P), Complex::one(P)};
  CHECK(monodromy::projective_distance(sq, id) < Real::pow2(-30, P));
}

TEST_CASE("property: loop reversal residuals stay below 2^(-bits/2)") {
  auto ode = cube_ode(P);
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int cases = 0;
  while (cases < 50) {
    // random triangle loops with vertices away from the singularities
    std::vector<Complex> pts;
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      Complex v = Complex::of(3 * unif(rng), 3 * unif(rng), P);
      Real dmin = Real::pow2(20, P);
      for (const auto& s : ode.singular) dmin = min(dmin, abs_dist(v, s));
      if (dmin < Real::of(0.4, P)) ok = false;
      pts.push_back(v);
    }
    if (!ok) continue;
    ++cases;
    pts.push_back(pts[0]);
    Mat2 fwd = monodromy::integrate_path(ode, pts, P);
    std::vector<Complex> rev(pts.rbegin(), pts.rend());
    Mat2 bwd = monodromy::integrate_path(ode, rev, P);
    Mat2 prod = monodromy::mat_mul(bwd, fwd);
    CHECK(id_dist(prod, P) / monodromy::mat_norm(fwd) <
          Real::pow2(-static_cast<long>(P) / 2, P));
  }
}

TEST_CASE("the cube-map operator has dihedral projective monodromy of order 6") {
  auto ode = cube_ode(192);
  auto cert = monodromy::certify_dihedral(ode, 3, 192);
  CHECK(cert.projective_group_order == 6);
  CHECK(cert.linear_group_order == 6);
  CHECK(cert.dihedral);
  CHECK(cert.cyclic_order == 3);
  CHECK(cert.separation_margin >= cert.dedup_threshold.ldexp(16));
  CHECK(cert.relation_residual < Real::pow2(-60, 192));
  // product relation: M3 M2 M1 conjugate to the loop at infinity => the
  // certificate's relation residual witnesses M1 M2 M3 Minf ~ 1.
}

TEST_CASE("basepoint invariance of the certified orders") {
  auto ode = cube_ode(160);
  auto c1 = monodromy::certify_dihedral(ode, 3, 160);
  CHECK(c1.projective_group_order == 6);
  // Loops from a second basepoint on the other side of the singularities:
  // generators stay involutions and some pairwise product has order 3.
  Complex base = Complex::of(-7L, 0L, 160);
  std::vector<Mat2> gens;
  for (int i = 0; i < 3; ++i) {
    auto loop = monodromy::star_loop(ode, base, i, 160);
    gens.push_back(monodromy::integrate_loop(ode, loop, 160));
  }
  Mat2 id{Complex::one(160), Complex::zero(160), Complex::zero(160), Complex::one(160)};
  for (const auto& g : gens) {
    CHECK(monodromy::projective_distance(monodromy::mat_mul(g, g), id) < Real::pow2(-30, 160));
  }
  bool found_rotation = false;
  for (int i = 0; i < 3 && !found_rotation; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Mat2 r = monodromy::mat_mul(gens[i], gens[j]);
      Mat2 r3 = monodromy::mat_mul(r, monodromy::mat_mul(r, r));
      if (monodromy::projective_distance(r, id) > Real::pow2(-30, 160) &&
          monodromy::projective_distance(r3, id) < Real::pow2(-30, 160)) {
        found_rotation = true;
        break;
      }
    }
  }
  CHECK(found_rotation);
}

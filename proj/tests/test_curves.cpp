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

#include "lame/curves.hpp"

using namespace lame;
using trees::Tree;

namespace {

constexpr mpfr_prec_t P = 256;

belyi::BelyiSolution cube_solution() {
  belyi::BelyiSolution sol;
  sol.N = 3;
  sol.s = 0;
  sol.precision_bits = P;
  sol.q = Poly::one(P);
  sol.g = Poly::one(P);
  sol.h = Poly::one(P);
  sol.f = Poly(std::vector<Complex>{Complex::of(-1L, 0L, P), Complex::zero(P), Complex::zero(P),
                                    Complex::one(P)});
  sol.residual_norm = Real(P);
  sol.decoded_tree = Tree{1, 1, 1};
  return sol;
}

curves::EllipticModel short_model(long A, long Bs) {
  // y^2 = x^3 + A x + Bs corresponds to g2 = -4A, g3 = -4Bs.
  curves::EllipticModel m;
  m.precision_bits = P;
  m.g2 = Complex::of(-4 * A, 0L, P);
  m.g3 = Complex::of(-4 * Bs, 0L, P);
  m.Delta = m.g2.pow(3) - m.g3 * m.g3 * 27;
  return m;
}

}  // namespace

TEST_CASE("branch points of the cube map") {
  auto bd = curves::branch_points(cube_solution());
  REQUIRE(bd.S.size() == 4);
  CHECK(bd.S[0].is_exact_zero());
  for (size_t i = 1; i < 4; ++i) {
    CHECK((bd.S[i].pow(3) - Complex::one(P)).abs() < Real::pow2(-120, P));
  }
}

TEST_CASE("build_pair on the cube map: j = 0, marked point at x = 0") {
  auto m = curves::build_pair(curves::branch_points(cube_solution()));
  CHECK(m.g2.abs() < Real::pow2(-100, P));
  CHECK((m.g3 - Complex::of(4L, 0L, P)).abs() < Real::pow2(-100, P));
  CHECK(m.B.abs() < Real::pow2(-100, P));
  CHECK(m.j.abs() < Real::pow2(-90, P));
  CHECK((m.Delta - Complex::of(-432L, 0L, P)).abs() < Real::pow2(-90, P));
  // yB = 2 sqrt(-1) with Im >= 0: 2i
  CHECK((m.yB - Complex::of(0L, 2L, P)).abs() < Real::pow2(-100, P));
  CHECK(m.j1.abs() < Real::pow2(-90, P));
  CHECK(m.j2.abs() < Real::pow2(-90, P));
  CHECK(m.j3.abs() < Real::pow2(-90, P));
}

TEST_CASE("property: scalar equivalence leaves the moduli invariants fixed") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  auto base = curves::branch_points(cube_solution());
  auto m0 = curves::build_pair(base);
  int cases = 0;
  while (cases < 50) {
    Complex u = Complex::of(unif(rng), unif(rng), P);
    if (u.abs() < Real::of(0.3, P)) continue;
    ++cases;
    curves::BranchData scaled;
    for (const auto& s : base.S) scaled.S.push_back(s * u);
    auto m1 = curves::build_pair(scaled);
    CHECK((m0.j - m1.j).abs() < Real::pow2(-90, P));
    CHECK((m0.j1 - m1.j1).abs() < Real::pow2(-90, P));
    CHECK((m0.j2 - m1.j2).abs() < Real::pow2(-90, P));
    CHECK((m0.j3 - m1.j3).abs() < Real::pow2(-90, P));
  }
}

TEST_CASE("division polynomial values on y^2 = x^3 + 1 at (2, 3)") {
  // Classical fixture: P = (2, 3) on y^2 = x^3 + 1 has order 6.
  auto m = short_model(0, 1);
  Complex x = Complex::of(2L, 0L, P);
  Complex y = Complex::of(3L, 0L, P);
  auto psi = curves::division_poly_values(m, x, y, 7);
  for (int k = 2; k <= 5; ++k) {
    CHECK(psi[k].abs() > Real::of(0.5, P));  // no vanishing before the order
  }
  CHECK(psi[6].abs() < Real::pow2(-200, P));
}

TEST_CASE("doubling on y^2 = x^3 + 1") {
  auto m = short_model(0, 1);
  auto [x2, y2] = curves::double_point(m, Complex::of(2L, 0L, P), Complex::of(3L, 0L, P));
  CHECK((x2 - Complex::zero(P)).abs() < Real::pow2(-200, P));
  CHECK((y2 - Complex::one(P)).abs() < Real::pow2(-200, P));
}

TEST_CASE("torsion of the cube-map model is 3") {
  auto m = curves::build_pair(curves::branch_points(cube_solution()));
  auto lat = theta::lattice_from_model(m.g2, m.g3, P);
  auto tor = curves::torsion_order(m, lat, 8);
  CHECK(tor.order == 3);
  CHECK(tor.order_2p == 3);
  CHECK(tor.log_order == tor.divpoly_order);
}

TEST_CASE("field of moduli of the cube-map model is rational") {
  auto m = curves::build_pair(curves::branch_points(cube_solution()));
  auto fd = curves::field_of_moduli(m, 4, 7);
  REQUIRE(fd.ok());
  CHECK(fd.degree == 1);
  REQUIRE(m.recognized.count("j"));
  CHECK(m.recognized.at("j").min_poly == IntPoly({Int(0), Int(1)}));
}

TEST_CASE("number field: norm-based valuation matches direct valuation over Q") {
  nf::NumberField K({Int(-5), Int(1)});  // Q itself, theta = 5
  CHECK(K.degree() == 1);
  // v_3(45) = 2
  CHECK(K.valuation_above(K.from_rational(Rat(45)), 3) == 2);
  CHECK(K.valuation_above(K.from_rational(Rat(45, 7)), 7) == -1);
}

TEST_CASE("number field: Q(sqrt(21)) ramifies at 3 and 7, not at 2") {
  nf::NumberField K({Int(-21), Int(0), Int(1)});
  auto s7 = K.splitting(7);
  REQUIRE(s7.num_primes == 1);
  CHECK(s7.ef[0].first == 2);
  CHECK(s7.ef[0].second == 1);
  auto s3 = K.splitting(3);
  CHECK(s3.ef[0].first == 2);
  // 2 is unramified (21 = 1 mod 4) but divides [O_K : Z[sqrt(21)]]
  CHECK_THROWS_AS(K.splitting(2), Error);
  // norm and valuation of sqrt(21) above 7: N = -21, v = 1
  CHECK(K.norm(K.generator()) == Rat(-21));
  CHECK(K.valuation_above(K.generator(), 7) == 1);
}

TEST_CASE("number field: inverses and arithmetic in a cubic field") {
  // x^3 - x - 1, the smallest totally real... (just a handy irreducible cubic)
  nf::NumberField K({Int(-1), Int(-1), Int(0), Int(1)});
  nf::QPoly t = K.generator();
  nf::QPoly ti = K.inv(t);
  nf::QPoly prod = K.mul(t, ti);
  REQUIRE(prod.size() == 1);
  CHECK(prod[0] == 1);
  // theta^3 = theta + 1
  nf::QPoly cube = K.mul(t, K.mul(t, t));
  nf::QPoly expect = K.add(t, K.from_rational(Rat(1)));
  CHECK(nf::q_trim(nf::q_sub(cube, expect)).empty());
}

TEST_CASE("galois orbits group by shared minimal polynomial") {
  AlgebraicNumber a1, a2, b;
  a1.min_poly = {Int(-21), Int(0), Int(1)};
  a2.min_poly = {Int(-21), Int(0), Int(1)};
  b.min_poly = {Int(-7), Int(1)};
  std::vector<std::pair<Tree, std::optional<AlgebraicNumber>>> input{
      {Tree{1, 1, 5}, a1}, {Tree{1, 3, 3}, a2}, {Tree{2, 2, 3}, b}, {Tree{1, 2, 4}, std::nullopt}};
  auto rep = curves::galois_orbits(7, input);
  REQUIRE(rep.orbits.size() == 2);
  CHECK(rep.unrecognized.size() == 1);
  for (const auto& orb : rep.orbits) {
    if (orb.field_degree == 2) {
      CHECK(orb.members.size() == 2);
      CHECK(orb.min_poly_disc == 84);
      CHECK(nf::squarefree_kernel(orb.min_poly_disc) == 21);
    } else {
      CHECK(orb.members.size() == 1);
    }
  }
}

TEST_CASE("reduction report on a synthetic rational j") {
  // j = 7^3 * 2: v_7(j) = 3, v_7(j - 1728) = 0, so v(Delta) = 6 = 0 mod 6.
  AlgebraicNumber ja;
  ja.min_poly = {Int(-686), Int(1)};
  trees::PredictionRecord pred = trees::predict(7, 2);
  auto rr = curves::reduction_report(ja, 7, pred);
  REQUIRE(rr.exact_ok);
  CHECK(rr.e_p == 1);
  CHECK(rr.f_p == 1);
  CHECK(rr.v_j == 3);
  CHECK(rr.v_j1728 == 0);
  CHECK(rr.v_delta == 6);
  CHECK(rr.v_delta_mod6 == 0);
  CHECK(rr.good_reduction);
  CHECK(rr.potentially_good);
  // prediction side: modulus 3 does not divide e_p = 1
  CHECK_FALSE(rr.predicted_good);
}

TEST_CASE("reduction report degrades on j = 0") {
  AlgebraicNumber ja;
  ja.min_poly = {Int(0), Int(1)};
  auto rr = curves::reduction_report(ja, 7, trees::predict(7, 0));
  CHECK_FALSE(rr.exact_ok);
}

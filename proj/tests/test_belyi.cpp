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

#include <array>
#include <set>

#include "lame/belyi.hpp"

using namespace lame;
using trees::Tree;

namespace {

belyi::SolveResult& solved5() {
  static belyi::SolveResult res = [] {
    belyi::SolveConfig cfg;
    cfg.precision_bits = 256;
    cfg.rng_seed = 42;
    return belyi::solve_all(5, cfg);
  }();
  return res;
}

}  // namespace

TEST_CASE("system shapes from trees") {
  belyi::SystemShape sh = belyi::build_system(Tree{1, 1, 1});
  CHECK(sh.s == 0);
  CHECK(sh.deg_q == 0);
  CHECK(sh.deg_g == 0);
  CHECK(sh.deg_f == 3);
  CHECK(sh.deg_h == 0);
  CHECK(sh.unknowns() == 3);

  sh = belyi::build_system(Tree{1, 1, 5});
  CHECK(sh.s == 0);
  CHECK(sh.deg_g == 2);
  CHECK(sh.deg_h == 2);
  CHECK(sh.deg_f == 3);
  CHECK(sh.unknowns() == 7);

  sh = belyi::build_system(Tree{1, 2, 4});
  CHECK(sh.s == 2);
  CHECK(sh.deg_q == 2);
  CHECK(sh.deg_g == 1);
  CHECK(sh.deg_f == 1);
  CHECK(sh.deg_h == 3);
  CHECK(sh.unknowns() == 7);
  // degree bookkeeping: 3 + s + 2 deg g = N and (3 - s) + 2 deg h = N
  CHECK(3 + sh.s + 2 * sh.deg_g == 7);
  CHECK(3 - sh.s + 2 * sh.deg_h == 7);

  CHECK_THROWS_AS(belyi::SystemShape::for_signature(8, 0), Error);  // parity mismatch
}

TEST_CASE("degree 3 is forced: beta = x^3, f = x^3 - 1") {
  belyi::SolveConfig cfg;
  cfg.precision_bits = 192;
  cfg.rng_seed = 9;
  auto res = belyi::solve_all(3, cfg);
  REQUIRE(res.complete());
  REQUIRE(res.solutions.size() == 1);
  const auto& sol = res.solutions[0];
  CHECK(*sol.decoded_tree == Tree{1, 1, 1});
  CHECK(sol.f.degree() == 3);
  // the unique monic solution has exact integer coefficients
  CHECK(sol.f[0].re.cmp(-1) == 0);
  CHECK(sol.f[0].im.is_zero());
  CHECK(sol.f[1].abs() < Real::pow2(-90, 192));
  CHECK(sol.f[2].abs() < Real::pow2(-90, 192));
  CHECK(sol.residual_norm < Real::pow2(-96, 192));
}

TEST_CASE("degree 5 completeness and decoding") {
  auto& res = solved5();
  REQUIRE(res.complete());
  std::set<std::array<int, 3>> got;
  for (const auto& s : res.solutions) {
    if (s.decoded_tree) got.insert(s.decoded_tree->key());
  }
  CHECK(got.count({1, 1, 3}) == 1);
  CHECK(got.count({1, 2, 2}) == 1);
  for (const auto& s : res.solutions) {
    CHECK(s.residual_norm < Real::pow2(-128, 256));
  }
}

TEST_CASE("verification passes on solutions and rejects corruption") {
  auto& res = solved5();
  for (const auto& sol : res.solutions) {
    if (!sol.primitive()) continue;
    auto rep = belyi::verify_solution(sol);
    CHECK(rep.ok);
    // corrupt one coefficient by 2^-20
    belyi::BelyiSolution bad = sol;
    std::vector<Complex> cs;
    for (int i = 0; i <= bad.f.degree(); ++i) cs.push_back(bad.f[i]);
    cs[0] += Complex(Real::pow2(-20, sol.precision_bits));
    bad.f = Poly(cs);
    CHECK_THROWS_AS(belyi::verify_solution(bad), Error);
  }
}

TEST_CASE("property: gauge rescaling preserves solutions and trees") {
  auto& res = solved5();
  int cases = 0;
  for (const auto& sol : res.solutions) {
    if (!sol.primitive()) continue;
    for (int k = 0; k < sol.N; ++k) {
      Complex lambda = Complex::unit_root(k, sol.N, sol.precision_bits);
      belyi::BelyiSolution re = belyi::rescale(sol, lambda);
      // still a solution of the same system
      belyi::BelyiSolution chk = re;
      auto rep = belyi::verify_solution(chk);
      CHECK(rep.ok);
      CHECK(belyi::decode_tree(re) == *sol.decoded_tree);
      CHECK(belyi::gauge_distance(sol, re) < Real::pow2(-100, sol.precision_bits));
      ++cases;
    }
  }
  CHECK(cases >= 10);
}

TEST_CASE("property: conjugation decodes to the conjugate tree") {
  auto& res = solved5();
  for (const auto& sol : res.solutions) {
    if (!sol.primitive()) continue;
    belyi::BelyiSolution conj = belyi::conjugated(sol);
    CHECK(belyi::decode_tree(conj) == sol.decoded_tree->conjugate());
  }
}

TEST_CASE("real trees admit a real gauge representative") {
  auto& res = solved5();
  for (const auto& sol : res.solutions) {
    if (!sol.primitive()) continue;
    if (!sol.decoded_tree->is_real()) continue;
    Real best = Real::pow2(20, sol.precision_bits);
    for (int k = 0; k < sol.N; ++k) {
      belyi::BelyiSolution re = belyi::rescale(sol, Complex::unit_root(k, sol.N, sol.precision_bits));
      Real imag_norm(sol.precision_bits);
      for (const Poly* p : {&re.q, &re.g, &re.f, &re.h}) {
        for (int i = 0; i <= p->degree(); ++i) imag_norm = max(imag_norm, (*p)[i].im.abs());
      }
      best = min(best, imag_norm);
    }
    CHECK(best < Real::pow2(-100, sol.precision_bits));
  }
}

TEST_CASE("decode of beta = x^3") {
  belyi::BelyiSolution sol;
  sol.N = 3;
  sol.s = 0;
  mpfr_prec_t P = 192;
  sol.precision_bits = P;
  sol.q = Poly::one(P);
  sol.g = Poly::one(P);
  sol.h = Poly::one(P);
  sol.f = Poly(std::vector<Complex>{Complex::of(-1L, 0L, P), Complex::zero(P), Complex::zero(P),
                                    Complex::one(P)});
  sol.residual_norm = Real(P);
  CHECK(belyi::decode_tree(sol) == Tree{1, 1, 1});
}

TEST_CASE("fiber structure invariants") {
  auto& res = solved5();
  for (const auto& sol : res.solutions) {
    Poly beta = sol.beta();
    Poly bm1 = sol.beta_minus_1();
    CHECK(beta.degree() == sol.N);
    CHECK(bm1.degree() == sol.N);
    CHECK((beta.leading() - Complex::one(sol.precision_bits)).abs() <
          Real::pow2(-100, sol.precision_bits));
    CHECK((bm1.leading() - Complex::one(sol.precision_bits)).abs() <
          Real::pow2(-100, sol.precision_bits));
    // black multiplicities {3} + {1}^s + {2}^deg g; white {1}^(3-s) + {2}^deg h
    CHECK(sol.q.degree() == sol.s);
    CHECK(sol.f.degree() == 3 - sol.s);
    CHECK(3 + sol.s + 2 * sol.g.degree() == sol.N);
    CHECK(3 - sol.s + 2 * sol.h.degree() == sol.N);
  }
}

TEST_CASE("polish raises precision without moving the solution") {
  auto& res = solved5();
  const auto& sol = res.solutions[0];
  belyi::BelyiSolution fine = belyi::polish(sol, 512);
  CHECK(fine.precision_bits == 512);
  CHECK(fine.residual_norm < Real::pow2(-250, 512));
  CHECK(belyi::gauge_distance(sol, fine) < Real::pow2(-120, 256));
}

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
#include <set>

#include "lame/cli.hpp"
#include "lame/trees.hpp"

using namespace lame;
using trees::Tree;

TEST_CASE("census at degree 7 matches the order-14 classification") {
  auto ts = trees::enumerate_trees(7);
  std::set<std::array<int, 3>> got;
  for (const auto& t : ts) got.insert(t.key());
  std::set<std::array<int, 3>> want{{1, 1, 5}, {1, 3, 3}, {1, 2, 4}, {1, 4, 2}, {2, 2, 3}};
  CHECK(got == want);
  // lexicographic order of the canonical representatives
  for (size_t i = 1; i < ts.size(); ++i) CHECK(ts[i - 1] < ts[i]);
}

TEST_CASE("census at degree 3 and 6") {
  auto t3 = trees::enumerate_trees(3);
  REQUIRE(t3.size() == 1);
  CHECK(t3[0] == Tree{1, 1, 1});

  auto t6 = trees::enumerate_trees(6);
  std::set<std::array<int, 3>> got;
  for (const auto& t : t6) got.insert(t.key());
  CHECK(got == std::set<std::array<int, 3>>{{1, 1, 4}, {1, 2, 3}, {1, 3, 2}});
  // [2,2,2] exists but has order 2 < 6
  auto all6 = trees::enumerate_trees_all(6);
  bool has222 = false;
  for (const auto& t : all6) has222 = has222 || t == Tree{2, 2, 2};
  CHECK(has222);
  CHECK_FALSE(Tree{2, 2, 2}.primitive());
}

TEST_CASE("invariants of the degree-7 examples") {
  auto inv = trees::tree_invariants(Tree{1, 1, 5});
  CHECK(inv.signature == 0);
  CHECK(inv.order == 7);
  CHECK(inv.real);
  CHECK(inv.conjugate == Tree{1, 1, 5});

  inv = trees::tree_invariants(Tree{1, 2, 4});
  CHECK(inv.signature == 2);
  CHECK_FALSE(inv.real);
  CHECK(inv.conjugate == Tree{1, 4, 2});

  inv = trees::tree_invariants(Tree{1, 1, 1});
  CHECK(inv.signature == 0);
  CHECK(inv.order == 3);
  CHECK(inv.real);
}

TEST_CASE("class counts") {
  auto c7 = trees::count_classes(7);
  CHECK(c7.total == 5);
  CHECK(c7.sig0 == 2);
  CHECK(c7.sig2 == 3);
  auto c5 = trees::count_classes(5);
  CHECK(c5.total == 2);
  CHECK(c5.sig0 == 1);
  CHECK(c5.sig2 == 1);
  auto c13 = trees::count_classes(13);
  CHECK(c13.total == 22);
  CHECK(c13.sig0 == 7);
  CHECK(c13.sig2 == 15);
  CHECK_THROWS_AS(trees::count_classes(3), Error);
  CHECK_THROWS_AS(trees::count_classes(9), Error);
}

TEST_CASE("census equals the closed forms for primes below 50") {
  for (long p : {5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    auto cc = trees::count_classes(p);
    long total = 0, s0 = 0, s2 = 0;
    for (const auto& t : trees::enumerate_trees(static_cast<int>(p))) {
      ++total;
      if (t.signature() == 0) ++s0;
      if (t.signature() == 2) ++s2;
    }
    CHECK(total == cc.total);
    CHECK(s0 == cc.sig0);
    CHECK(s2 == cc.sig2);
    CHECK(cc.total == cc.sig0 + cc.sig2);
  }
}

TEST_CASE("predictions for p = 7 match the worked example") {
  auto p0 = trees::predict(7, 0);
  CHECK(p0.e == 2);  // 8/gcd(8,12)
  CHECK(p0.supersingular);
  CHECK(p0.torsion_order == 7);
  CHECK(p0.full_monodromy_order == 14);
  CHECK(p0.projective_monodromy_order == 14);
  CHECK(p0.good_reduction_modulus == 4);  // (p+1-s)/2

  auto p2 = trees::predict(7, 2);
  CHECK(p2.e == 3);  // 6/gcd(6,4)
  CHECK_FALSE(p2.supersingular);
  CHECK(p2.torsion_order == 14);
  CHECK(p2.full_monodromy_order == 28);
  CHECK(p2.good_reduction_modulus == 3);

  CHECK(trees::predict(13, 0).e == 7);  // (p+1)/2 row
}

TEST_CASE("prediction handles the automorphism factor") {
  auto pz = trees::predict(7, 0, trees::JClass::j_zero);
  CHECK(pz.automorphism_factor == 3);
  auto pi = trees::predict(7, 0, trees::JClass::j_1728);
  CHECK(pi.automorphism_factor == 2);
}

TEST_CASE("ramification table rows reproduced for the three smallest primes per row") {
  // Qualifying primes per residue row, smallest three.
  struct Row {
    std::vector<long> primes;
    int s;
  };
  const auto& table = cli::ramification_table();
  std::vector<Row> fixtures = {
      {{13, 37, 61}, 0}, {{5, 13, 17}, 2}, {{7, 19, 31}, 0},
      {{7, 11, 19}, 2},  {{5, 17, 29}, 0}, {{11, 23, 47}, 0},
  };
  for (size_t r = 0; r < table.size(); ++r) {
    for (long p : fixtures[r].primes) {
      REQUIRE(table[r].applies(p));
      CHECK(table[r].eval(p) == trees::predict(p, table[r].signature).e);
    }
  }
}

TEST_CASE("unramified/good-reduction bound") {
  CHECK(trees::unramified_good_reduction_bound(7, 11));
  CHECK_FALSE(trees::unramified_good_reduction_bound(7, 7));
  CHECK_FALSE(trees::unramified_good_reduction_bound(7, 5));
}

TEST_CASE("property: conjugation is an involution preserving invariants") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> d(1, 30);
  for (int it = 0; it < 50; ++it) {
    Tree t = Tree{d(rng), d(rng), d(rng)}.canonical();
    Tree c = t.conjugate();
    CHECK(c.conjugate() == t);
    CHECK(c.degree() == t.degree());
    CHECK(c.signature() == t.signature());
    CHECK(c.order() == t.order());
    CHECK(t.is_real() == (c == t));
  }
}

TEST_CASE("prime degree forces primitivity") {
  for (long p : {5, 7, 11, 13}) {
    for (const auto& t : trees::enumerate_trees_all(static_cast<int>(p))) {
      CHECK(t.primitive());
    }
  }
}

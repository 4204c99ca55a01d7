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

#include "lame/trees.hpp"

#include <algorithm>

namespace lame::trees {

std::vector<Tree> enumerate_trees_all(int N) {
  if (N < 3) throw Error("Precondition", "trees need degree >= 3");
  std::vector<Tree> out;
  for (int a = 1; a <= N - 2; ++a) {
    for (int b = 1; a + b <= N - 1; ++b) {
      Tree t{a, b, N - a - b};
      if (t.is_canonical()) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tree> enumerate_trees(int N) {
  std::vector<Tree> all = enumerate_trees_all(N);
  std::vector<Tree> out;
  for (const Tree& t : all) {
    if (t.primitive()) out.push_back(t);
  }
  return out;
}

TreeInvariants tree_invariants(const Tree& t) {
  return TreeInvariants{t.degree(), t.signature(), t.order(), t.is_real(), t.conjugate()};
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

ClassCounts count_classes(long p) {
  if (p <= 3 || !is_prime(p)) {
    throw Error("NotApplicable", "count_classes requires a prime p > 3");
  }
  return ClassCounts{(p - 1) * (p - 2) / 6, (p * p - 1) / 24, (p - 1) * (p - 3) / 8};
}

PredictionRecord predict(long p, int s, JClass j_class) {
  if (!is_prime(p) || p < 3) throw Error("NotApplicable", "predict requires an odd prime");
  if (s != 0 && s != 2) throw Error("Precondition", "signature must be 0 or 2 at odd degree");
  PredictionRecord r;
  r.p = p;
  r.s = s;
  if (p > 3) {
    long num = p + 1 - s;
    r.e = num / std::gcd(num, 4L * (3 - s));
  } else {
    r.e = 1;
  }
  r.supersingular = (s == 0);
  r.torsion_order = (s == 0) ? p : 2 * p;
  r.full_monodromy_order = 2 * r.torsion_order;
  r.projective_monodromy_order = 2 * p;
  switch (j_class) {
    case JClass::j_zero:
      r.automorphism_factor = 3;
      break;
    case JClass::j_1728:
      r.automorphism_factor = 2;
      break;
    default:
      r.automorphism_factor = 1;
  }
  // Good-reduction criterion: (p+1-s)/m divides e_p with m = 2n. Stored as
  // the equivalent integer modulus (p+1-s)/gcd(p+1-s, 2n), which equals
  // (p+1-s)/(2n) whenever the division is exact.
  long num = p + 1 - s;
  long m = 2L * r.automorphism_factor;
  r.good_reduction_modulus = num / std::gcd(num, m);
  return r;
}

bool unramified_good_reduction_bound(int N, long p) { return p > N; }

}  // namespace lame::trees

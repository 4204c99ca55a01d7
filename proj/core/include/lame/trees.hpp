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

#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "lame/real.hpp"

namespace lame::trees {

/// Plane tree with one trivalent center and three branches of a, b, c edges
/// read counterclockwise. Cyclic rotations describe the same tree; the
/// canonical form is the lexicographically smallest rotation.
struct Tree {
  int a = 0, b = 0, c = 0;

  Tree() = default;
  Tree(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {}

  int degree() const { return a + b + c; }
  std::array<int, 3> branches() const { return {a, b, c}; }

  Tree canonical() const {
    Tree r1{b, c, a}, r2{c, a, b};
    Tree best = *this;
    for (const Tree& t : {r1, r2}) {
      if (t.key() < best.key()) best = t;
    }
    return best;
  }
  bool is_canonical() const {
    Tree c0 = canonical();
    return c0.a == a && c0.b == b && c0.c == c;
  }

  /// Number of black valency-1 vertices = number of even branch lengths
  /// (colors alternate along a branch starting black at the center).
  int signature() const { return (a % 2 == 0) + (b % 2 == 0) + (c % 2 == 0); }
  int order() const { return degree() / std::gcd(std::gcd(a, b), c); }
  bool primitive() const { return order() == degree(); }
  /// Complex conjugation reverses the cyclic orientation: [a,b,c] -> [a,c,b].
  Tree conjugate() const { return Tree{a, c, b}.canonical(); }
  bool is_real() const { return a == b || b == c || a == c; }

  std::string str() const {
    return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
  }

  std::array<int, 3> key() const { return {a, b, c}; }
  friend bool operator==(const Tree& x, const Tree& y) { return x.key() == y.key(); }
  friend bool operator<(const Tree& x, const Tree& y) { return x.key() < y.key(); }
};

struct TreeInvariants {
  int degree;
  int signature;
  int order;
  bool real;
  Tree conjugate;
};

/// Arithmetic predictions attached to a (prime degree, signature) class.
struct PredictionRecord {
  long p = 0;
  int s = 0;
  long e = 0;                       // ramification divisor bound of Thm 2 type
  bool supersingular = false;       // potentially supersingular reduction
  long torsion_order = 0;           // order of the marked point P
  long full_monodromy_order = 0;    // 2 * torsion_order
  long projective_monodromy_order = 0;  // 2p
  long good_reduction_modulus = 0;  // good reduction iff this divides e_p
  int automorphism_factor = 1;      // n = 3 (j=0), 2 (j=1728), 1 otherwise
};

enum class JClass { generic, j_zero, j_1728 };

/// All canonical primitive trees of the given degree, lexicographically
/// sorted. Throws on N < 3.
std::vector<Tree> enumerate_trees(int N);

/// All canonical trees of degree N including non-primitive ones.
std::vector<Tree> enumerate_trees_all(int N);

TreeInvariants tree_invariants(const Tree& t);

struct ClassCounts {
  long total;
  long sig0;
  long sig2;
};

/// Closed-form class counts for prime p > 3:
/// total (p-1)(p-2)/6 = sig0 (p^2-1)/24 + sig2 (p-1)(p-3)/8.
/// Throws Error("NotApplicable") for p <= 3 or composite p.
ClassCounts count_classes(long p);

bool is_prime(long n);

/// Predictions for dihedral projective monodromy of order 2p.
/// The ramification bound e = (p+1-s)/gcd(p+1-s, 4(3-s)) needs p > 3; the
/// torsion and monodromy entries are meaningful for any odd prime p >= 3.
PredictionRecord predict(long p, int s, JClass j_class = JClass::generic);

/// Field of moduli unramified and good reduction guaranteed when p > N.
bool unramified_good_reduction_bound(int N, long p);

}  // namespace lame::trees

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

#include "lame/algebraic.hpp"

#include <algorithm>
#include <sstream>

namespace lame {

namespace {

Int round_rat(const Rat& r) {
  // floor(r + 1/2)
  Int num = numerator(r) * 2 + denominator(r);
  Int den = denominator(r) * 2;
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

Rat dot_int(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return Rat(s);
}

struct Gso {
  std::vector<std::vector<Rat>> mu;
  std::vector<Rat> B;
};

Gso compute_gso(const std::vector<std::vector<Int>>& b) {
  const size_t n = b.size();
  Gso g;
  g.mu.assign(n, std::vector<Rat>(n, Rat(0)));
  g.B.assign(n, Rat(0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      Rat c = dot_int(b[i], b[j]);
      for (size_t l = 0; l < j; ++l) c -= g.mu[j][l] * g.mu[i][l] * g.B[l];
      g.mu[i][j] = c / g.B[j];
    }
    Rat c = dot_int(b[i], b[i]);
    for (size_t l = 0; l < i; ++l) c -= g.mu[i][l] * g.mu[i][l] * g.B[l];
    g.B[i] = c;
  }
  return g;
}

void size_reduce(std::vector<std::vector<Int>>& b, Gso& g, size_t k, size_t l) {
  Rat half(1, 2);
  if (abs(g.mu[k][l]) <= half) return;
  Int q = round_rat(g.mu[k][l]);
  for (size_t j = 0; j < b[k].size(); ++j) b[k][j] -= q * b[l][j];
  g.mu[k][l] -= Rat(q);
  for (size_t j = 0; j < l; ++j) g.mu[k][j] -= Rat(q) * g.mu[l][j];
}

}  // namespace

void lll_reduce(std::vector<std::vector<Int>>& basis) {
  const size_t n = basis.size();
  if (n < 2) return;
  const Rat delta(99, 100);
  Gso g = compute_gso(basis);
  size_t k = 1;
  while (k < n) {
    size_reduce(basis, g, k, k - 1);
    if (g.B[k] < (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.B[k - 1]) {
      // Swap rows k-1 and k, update the orthogonalization in place.
      Rat mu_t = g.mu[k][k - 1];
      Rat B_t = g.B[k] + mu_t * mu_t * g.B[k - 1];
      g.mu[k][k - 1] = mu_t * g.B[k - 1] / B_t;
      g.B[k] = g.B[k - 1] * g.B[k] / B_t;
      g.B[k - 1] = B_t;
      std::swap(basis[k], basis[k - 1]);
      for (size_t j = 0; j + 1 < k; ++j) std::swap(g.mu[k][j], g.mu[k - 1][j]);
      for (size_t i = k + 1; i < n; ++i) {
        Rat t = g.mu[i][k];
        g.mu[i][k] = g.mu[i][k - 1] - mu_t * t;
        g.mu[i][k - 1] = t + g.mu[k][k - 1] * g.mu[i][k];
      }
      k = k > 1 ? k - 1 : 1;
    } else {
      for (size_t l = k - 1; l-- > 0;) size_reduce(basis, g, k, l);
      ++k;
    }
  }
}

Complex eval_int_poly(const IntPoly& p, const Complex& x) {
  mpfr_prec_t prec = x.prec();
  Complex acc = Complex::zero(prec);
  for (size_t i = p.size(); i-- > 0;) {
    Real c(prec);
    mpfr_set_z(c.raw(), p[i].backend().data(), MPFR_RNDN);
    acc = acc * x + Complex(c);
  }
  return acc;
}

Real int_poly_coeff_norm(const IntPoly& p, mpfr_prec_t prec) {
  Real m(prec);
  for (const Int& c : p) {
    Real r(prec);
    mpfr_set_z(r.raw(), c.backend().data(), MPFR_RNDN);
    m = max(m, r.abs());
  }
  return m;
}

std::string AlgebraicNumber::poly_str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = min_poly.size(); i-- > 0;) {
    if (min_poly[i] == 0) continue;
    Int c = min_poly[i];
    if (!first) os << (c > 0 ? " + " : " - ");
    if (first && c < 0) os << "-";
    Int a = abs(c);
    if (a != 1 || i == 0) os << a.str();
    if (i >= 1) {
      if (a != 1) os << "*";
      os << "x";
      if (i >= 2) os << "^" << i;
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {

IntPoly normalize_primitive(IntPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  if (a.empty()) return a;
  Int g = 0;
  for (const Int& c : a) g = gcd(g, abs(c));
  if (g > 1) {
    for (Int& c : a) c /= g;
  }
  if (a.back() < 0) {
    for (Int& c : a) c = -c;
  }
  return a;
}

long height_log2(const IntPoly& a) {
  Int m = 0;
  for (const Int& c : a) {
    Int ac = abs(c);
    if (ac > m) m = ac;
  }
  long bits = 0;
  while (m > 0) {
    m >>= 1;
    ++bits;
  }
  return std::max(bits, 1L);
}

Int scaled_to_int(const Real& r, long scale_exp) {
  Real s = r.ldexp(scale_exp);
  Int out;
  mpfr_get_z(out.backend().data(), s.raw(), MPFR_RNDN);
  return out;
}

}  // namespace

std::optional<std::vector<Int>> integer_relation(const std::vector<Complex>& xs,
                                                 int max_height_log2) {
  if (xs.size() < 2) return std::nullopt;
  mpfr_prec_t prec = MPFR_PREC_MAX;
  for (const auto& x : xs) prec = std::min(prec, x.prec());
  const size_t n = xs.size();
  if (prec < 2 * static_cast<mpfr_prec_t>(max_height_log2) + 512) {
    throw Error("InsufficientPrecision", "integer_relation needs >= 2*max_height_log2 + 512 bits");
  }
  const long scale_exp = std::max(static_cast<long>(prec) - 128, 64L);
  Int height_cap = Int(1) << max_height_log2;
  std::vector<std::vector<Int>> basis(n, std::vector<Int>(n + 2, Int(0)));
  for (size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = scaled_to_int(xs[i].re.at_prec(prec), scale_exp);
    basis[i][n + 1] = scaled_to_int(xs[i].im.at_prec(prec), scale_exp);
  }
  lll_reduce(basis);
  Real tol = Real::pow2(-static_cast<long>(prec) / 2, prec);
  for (const auto& row : basis) {
    std::vector<Int> cand(row.begin(), row.begin() + n);
    bool zero = true, tall = false;
    for (const Int& c : cand) {
      if (c != 0) zero = false;
      if (abs(c) > height_cap) tall = true;
    }
    if (zero || tall) continue;
    Complex acc = Complex::zero(prec);
    Real scale(prec);
    for (size_t i = 0; i < n; ++i) {
      Real ci(prec);
      mpfr_set_z(ci.raw(), cand[i].backend().data(), MPFR_RNDN);
      acc += xs[i].at_prec(prec) * Complex(ci);
      scale = max(scale, ci.abs() * max(Real::of(1L, prec), xs[i].abs()));
    }
    if (acc.abs() <= scale * tol) return cand;
  }
  return std::nullopt;
}

std::optional<AlgebraicNumber> recognize_algebraic(const Complex& x, int max_degree,
                                                   int max_height_log2) {
  const mpfr_prec_t prec = x.prec();
  if (prec < static_cast<mpfr_prec_t>(8) * max_degree * max_height_log2) {
    throw Error("InsufficientPrecision",
                "recognize_algebraic needs >= 8*max_degree*max_height_log2 bits");
  }
  // Guard band: tolerate up to ~128 bits of value noise below the type
  // precision without drowning the relation vector.
  const long scale_exp = std::max(static_cast<long>(prec) - 128, 64L);
  const long certified_bits = static_cast<long>(prec) / 2;
  const Real tol = Real::pow2(-static_cast<long>(prec) / 2, prec);
  Int height_cap = Int(1) << max_height_log2;

  std::vector<Complex> powers{Complex::one(prec)};
  for (int d = 1; d <= max_degree; ++d) {
    powers.push_back(powers.back() * x);
    const size_t rows = static_cast<size_t>(d) + 1;
    std::vector<std::vector<Int>> basis(rows, std::vector<Int>(rows + 2, Int(0)));
    for (size_t i = 0; i < rows; ++i) {
      basis[i][i] = 1;
      basis[i][rows] = scaled_to_int(powers[i].re, scale_exp);
      basis[i][rows + 1] = scaled_to_int(powers[i].im, scale_exp);
    }
    lll_reduce(basis);
    for (const auto& row : basis) {
      IntPoly cand = normalize_primitive(IntPoly(row.begin(), row.begin() + rows));
      if (cand.size() < 2) continue;  // constants and the zero vector
      bool too_tall = false;
      for (const Int& c : cand) too_tall = too_tall || abs(c) > height_cap;
      if (too_tall) continue;
      Complex val = eval_int_poly(cand, x);
      Real xmag = max(Real::of(1L, prec), x.abs());
      Real scale = int_poly_coeff_norm(cand, prec);
      for (size_t k = 1; k < cand.size(); ++k) scale = scale * xmag;
      if (!(val.abs() <= scale * tol)) continue;
      // Certify: the spec invariant plus single-root isolation around x.
      if (!(val.abs() < int_poly_coeff_norm(cand, prec).ldexp(-certified_bits / 2))) continue;
      std::vector<Complex> pc;
      pc.reserve(cand.size());
      for (const Int& c : cand) {
        Real r(prec);
        mpfr_set_z(r.raw(), c.backend().data(), MPFR_RNDN);
        pc.push_back(Complex(r));
      }
      int nearby = 0;
      Real radius = Real::pow2(-certified_bits / 4, prec);
      for (const auto& rc : poly_roots(Poly(pc), std::max<mpfr_prec_t>(certified_bits, 64))) {
        if (abs_dist(rc.location.at_prec(prec), x) < radius) nearby += rc.multiplicity;
      }
      if (nearby != 1) continue;
      AlgebraicNumber out;
      out.min_poly = cand;
      out.root_approx = x;
      out.height_bound = height_log2(cand);
      out.certified_bits = certified_bits;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace lame

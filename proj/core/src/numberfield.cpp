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

#include "lame/numberfield.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>

namespace lame::nf {

QPoly to_q(const IntPoly& p) {
  QPoly out;
  out.reserve(p.size());
  for (const Int& c : p) out.push_back(Rat(c));
  return out;
}

QPoly q_trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

IntPoly primitive_part(const QPoly& p) {
  QPoly t = q_trim(p);
  Int den = 1;
  for (const Rat& c : t) den = lcm(den, denominator(c));
  IntPoly out;
  out.reserve(t.size());
  Int g = 0;
  for (const Rat& c : t) {
    Int v = numerator(c) * (den / denominator(c));
    out.push_back(v);
    g = gcd(g, abs(v));
  }
  if (g > 1) {
    for (Int& v : out) v /= g;
  }
  if (!out.empty() && out.back() < 0) {
    for (Int& v : out) v = -v;
  }
  return out;
}

QPoly q_add(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return q_trim(out);
}

QPoly q_sub(const QPoly& a, const QPoly& b) {
  QPoly out(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return q_trim(out);
}

QPoly q_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return q_trim(out);
}

std::pair<QPoly, QPoly> q_divmod(const QPoly& a, const QPoly& b) {
  QPoly r = q_trim(a);
  QPoly bb = q_trim(b);
  if (bb.empty()) throw Error("DivisionByZero", "polynomial division by zero");
  if (r.size() < bb.size()) return {{}, r};
  QPoly q(r.size() - bb.size() + 1, Rat(0));
  while (r.size() >= bb.size() && !r.empty()) {
    Rat c = r.back() / bb.back();
    size_t off = r.size() - bb.size();
    q[off] = c;
    for (size_t i = 0; i < bb.size(); ++i) r[off + i] -= c * bb[i];
    r = q_trim(r);
    if (r.size() >= bb.size() + q.size()) break;  // unreachable guard
  }
  return {q_trim(q), r};
}

QPoly q_derivative(const QPoly& p) {
  QPoly out;
  for (size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * Rat(static_cast<long>(i)));
  return q_trim(out);
}

Rat q_eval(const QPoly& p, const Rat& x) {
  Rat acc(0);
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

Rat q_resultant(const QPoly& a, const QPoly& b) {
  QPoly p = q_trim(a), q = q_trim(b);
  if (p.empty() || q.empty()) return Rat(0);
  const int dp = static_cast<int>(p.size()) - 1;
  const int dq = static_cast<int>(q.size()) - 1;
  if (dp == 0) {
    Rat r(1);
    for (int i = 0; i < dq; ++i) r *= p[0];
    return r;
  }
  if (dq == 0) {
    Rat r(1);
    for (int i = 0; i < dp; ++i) r *= q[0];
    return r;
  }
  const int n = dp + dq;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < dq; ++i) {
    for (int j = 0; j <= dp; ++j) m[i][i + j] = p[dp - j];
  }
  for (int i = 0; i < dp; ++i) {
    for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = q[dq - j];
  }
  Rat det(1);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return Rat(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Rat inv = Rat(1) / m[col][col];
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rat f = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

Rat q_discriminant(const QPoly& p) {
  QPoly t = q_trim(p);
  const int d = static_cast<int>(t.size()) - 1;
  if (d < 2) throw Error("Precondition", "discriminant requires degree >= 2");
  Rat r = q_resultant(t, q_derivative(t)) / t.back();
  if ((static_cast<long>(d) * (d - 1) / 2) % 2 == 1) r = -r;
  return r;
}

Int int_poly_discriminant(const IntPoly& p) {
  Rat d = q_discriminant(to_q(p));
  if (denominator(d) != 1) throw Error("Internal", "integer discriminant not integral");
  return numerator(d);
}

long val_p(const Rat& x, const Int& p) {
  if (x == 0) throw Error("Precondition", "valuation of zero");
  long v = 0;
  Int n = abs(numerator(x));
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  Int d = denominator(x);
  while (d % p == 0) {
    d /= p;
    --v;
  }
  return v;
}

namespace {

Int pollard_rho(const Int& n, uint64_t c0, long iter_cap) {
  // Brent's variant; n odd composite. Bounded iterations.
  Int y = 2, c = c0 % 1000 + 1, m = 128, g = 1, r = 1, q = 1, x = 0, ys = 0;
  auto f = [&](const Int& v) { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (Int i = 0; i < r; ++i) y = f(y);
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      Int lim = r - k < m ? r - k : m;
      for (Int i = 0; i < lim; ++i) {
        y = f(y);
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
    if (r > Int(1) << iter_cap) return 0;
  }
  if (g == n) {
    do {
      ys = f(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

void factor_bounded_rec(Int n, Factorization& out, int effort, int depth) {
  if (n == 1) return;
  if (boost::multiprecision::miller_rabin_test(n, 40)) {
    out.factors[n] += 1;
    return;
  }
  if (is_perfect_square(n)) {
    Int r = sqrt(n);
    factor_bounded_rec(r, out, effort, depth + 1);
    factor_bounded_rec(r, out, effort, depth + 1);
    return;
  }
  if (depth <= 48) {
    const long cap = effort >= 2 ? 20 : 16;  // rho iteration budget 2^cap
    for (uint64_t c = 1; c <= static_cast<uint64_t>(2 * effort); ++c) {
      Int d = pollard_rho(n, c, cap);
      if (d > 1 && d < n) {
        factor_bounded_rec(d, out, effort, depth + 1);
        factor_bounded_rec(n / d, out, effort, depth + 1);
        return;
      }
    }
  }
  out.cofactor *= n;
}

}  // namespace

bool is_perfect_square(const Int& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.backend().data()) != 0;
}

Factorization factor_int_bounded(Int n, int effort) {
  Factorization out;
  n = abs(n);
  if (n <= 1) return out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    while (n % p == 0) {
      out.factors[Int(p)] += 1;
      n /= p;
    }
  }
  long d = 17;
  const long trial_cap = effort >= 2 ? 1000000 : 100000;
  while (Int(d) * d <= n && d < trial_cap) {
    while (n % d == 0) {
      out.factors[Int(d)] += 1;
      n /= d;
    }
    d += 2;
  }
  if (n > 1) factor_bounded_rec(n, out, effort, 0);
  return out;
}

std::map<Int, int> factor_int(Int n) {
  Factorization f = factor_int_bounded(std::move(n), 2);
  if (!f.complete()) throw Error("FactorizationFailed", "cofactor resists splitting");
  return f.factors;
}

Int squarefree_kernel(const Int& n) {
  if (n == 0) return 0;
  Int k = n < 0 ? Int(-1) : Int(1);
  Factorization f = factor_int_bounded(n, 2);
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 1) k *= p;
  }
  if (!f.complete()) {
    // a square cofactor would not change the kernel; anything else is
    // uncertifiable
    if (!is_perfect_square(f.cofactor)) {
      throw Error("FactorizationFailed", "squarefree kernel not certified");
    }
  }
  return k;
}

namespace {

Int mod_p(const Int& a, const Int& p) {
  Int r = a % p;
  if (r < 0) r += p;
  return r;
}

std::vector<Int> fp_trim(std::vector<Int> v, const Int& p) {
  for (Int& c : v) c = mod_p(c, p);
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

Int fp_inv(const Int& a, const Int& p) {
  Int t = 0, nt = 1, r = p, nr = mod_p(a, p);
  while (nr != 0) {
    Int q = r / nr;
    Int t2 = t - q * nt;
    t = nt;
    nt = t2;
    Int r2 = r - q * nr;
    r = nr;
    nr = r2;
  }
  return mod_p(t, p);
}

std::vector<Int> fp_monic(std::vector<Int> v, const Int& p) {
  v = fp_trim(std::move(v), p);
  if (v.empty()) return v;
  Int inv = fp_inv(v.back(), p);
  for (Int& c : v) c = mod_p(c * inv, p);
  return v;
}

std::vector<Int> fp_mul(const std::vector<Int>& a, const std::vector<Int>& b, const Int& p) {
  if (a.empty() || b.empty()) return {};
  std::vector<Int> out(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return fp_trim(std::move(out), p);
}

std::vector<Int> fp_mod(std::vector<Int> a, const std::vector<Int>& m, const Int& p) {
  a = fp_trim(std::move(a), p);
  std::vector<Int> mm = fp_monic(m, p);
  while (a.size() >= mm.size() && !a.empty()) {
    Int c = a.back();
    size_t off = a.size() - mm.size();
    for (size_t i = 0; i < mm.size(); ++i) a[off + i] = mod_p(a[off + i] - c * mm[i], p);
    a = fp_trim(std::move(a), p);
  }
  return a;
}

std::vector<Int> fp_gcd(std::vector<Int> a, std::vector<Int> b, const Int& p) {
  a = fp_trim(std::move(a), p);
  b = fp_trim(std::move(b), p);
  while (!b.empty()) {
    std::vector<Int> r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

Int fp_eval(const std::vector<Int>& f, const Int& x, const Int& p) {
  Int acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = mod_p(acc * x + f[i], p);
  return acc;
}

}  // namespace

std::vector<std::pair<std::vector<Int>, int>> factor_mod_p_cubic(const IntPoly& f, const Int& p) {
  std::vector<Int> g = fp_monic(std::vector<Int>(f.begin(), f.end()), p);
  if (g.empty() || g.size() > 4) {
    throw Error("FieldTooLarge", "mod-p factorization implemented for degree <= 3");
  }
  std::vector<std::pair<std::vector<Int>, int>> out;
  // Strip linear factors by root enumeration (p is small here).
  bool progress = true;
  while (g.size() > 1 && progress) {
    progress = false;
    for (Int r = 0; r < p; ++r) {
      if (fp_eval(g, r, p) == 0) {
        std::vector<Int> lin{mod_p(-r, p), Int(1)};
        // synthetic division by (x - r)
        std::vector<Int> q(g.size() - 1, Int(0));
        Int carry = 0;
        for (size_t i = g.size(); i-- > 1;) {
          carry = mod_p(g[i] + carry * r, p);
          q[i - 1] = carry;
        }
        bool found = false;
        for (auto& fac : out) {
          if (fac.first == lin) {
            fac.second += 1;
            found = true;
          }
        }
        if (!found) out.push_back({lin, 1});
        g = fp_trim(std::move(q), p);
        progress = true;
        break;
      }
    }
  }
  // Whatever remains of degree 2 or 3 has no roots, hence is irreducible.
  if (g.size() > 1) out.push_back({g, 1});
  return out;
}

PrimeStructure prime_structure(const IntPoly& monic_f, const Int& p) {
  auto factors = factor_mod_p_cubic(monic_f, p);
  PrimeStructure ps;
  ps.num_primes = static_cast<int>(factors.size());
  for (const auto& [fac, e] : factors) {
    ps.ef.push_back({e, static_cast<int>(fac.size()) - 1});
  }
  // Dedekind test: with f = prod g_i^{e_i} mod p, set g* = prod g_i,
  // h* = prod g_i^{e_i - 1}, F = (g* h* - f)/p; p | index iff
  // gcd(F, g*, h*) != 1 over F_p.
  std::vector<Int> gstar{Int(1)}, hstar{Int(1)};
  for (const auto& [fac, e] : factors) {
    gstar = fp_mul(gstar, fac, p);
    for (int i = 0; i + 1 < e; ++i) hstar = fp_mul(hstar, fac, p);
  }
  // Lift g*, h* to Z with coefficients in [0, p) and form F over Z.
  QPoly gz = to_q(IntPoly(gstar.begin(), gstar.end()));
  QPoly hz = to_q(IntPoly(hstar.begin(), hstar.end()));
  QPoly fz = to_q(monic_f);
  QPoly prod = q_mul(gz, hz);
  QPoly diff = q_sub(prod, fz);
  std::vector<Int> Fp;
  for (const Rat& c : diff) {
    Int num = numerator(c);
    if (num % p != 0) throw Error("Internal", "Dedekind lift not divisible by p");
    Fp.push_back(num / p);
  }
  std::vector<Int> g1 = fp_gcd(Fp, gstar, p);
  std::vector<Int> g2 = fp_gcd(g1, hstar, p);
  ps.index_coprime = g2.size() == 1;
  return ps;
}

NumberField::NumberField(IntPoly min_poly) : f_(std::move(min_poly)) {
  if (f_.size() < 2) throw Error("Precondition", "number field needs degree >= 1");
}

QPoly NumberField::generator() const {
  if (degree() == 1) {
    // theta = -a0/a1 is rational.
    return q_trim({Rat(-f_[0], f_[1])});
  }
  return {Rat(0), Rat(1)};
}

QPoly NumberField::from_rational(const Rat& r) const { return q_trim({r}); }

QPoly NumberField::reduce(const QPoly& a) const {
  return q_divmod(a, to_q(f_)).second;
}

QPoly NumberField::inv(const QPoly& a) const {
  // Extended Euclid over Q: s*a + t*f = gcd = const.
  QPoly r0 = to_q(f_), r1 = reduce(a);
  if (q_trim(r1).empty()) throw Error("DivisionByZero", "inverse of zero field element");
  QPoly t0 = {}, t1 = {Rat(1)};
  while (!q_trim(r1).empty()) {
    auto [q, r] = q_divmod(r0, r1);
    QPoly t2 = q_sub(t0, q_mul(q, t1));
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t2;
  }
  if (r0.size() != 1) throw Error("Internal", "minimal polynomial not irreducible over Q");
  Rat inv_c = Rat(1) / r0[0];
  QPoly out;
  for (const Rat& c : t0) out.push_back(c * inv_c);
  return reduce(out);
}

Rat NumberField::norm(const QPoly& a) const {
  QPoly aa = q_trim(a);
  if (aa.empty()) return Rat(0);
  Rat res = q_resultant(to_q(f_), aa);
  // res(f, a) = lc(f)^deg(a) * prod a(theta_i); the norm is the product.
  Rat lead(f_.back());
  Rat scale(1);
  for (size_t i = 1; i < aa.size(); ++i) scale *= lead;
  return res / scale;
}

IntPoly NumberField::monic_transform() const {
  // mu = lc * theta has monic minimal polynomial lc^(d-1) f(x/lc), i.e.
  // x^d + sum_{i<d} f_i lc^{d-1-i} x^i.
  const Int lc = f_.back();
  const int d = degree();
  IntPoly out(f_.size(), Int(0));
  out[d] = 1;
  Int pw = 1;
  for (int i = d - 1; i >= 0; --i) {
    out[i] = f_[i] * pw;
    pw *= lc;
  }
  return out;
}

IntPoly NumberField::element_min_poly(const QPoly& gamma) const {
  const int d = degree();
  if (d > 3) throw Error("FieldTooLarge", "element_min_poly implemented for degree <= 3");
  QPoly g = reduce(gamma);
  if (g.size() <= 1) {
    // rational element c: minimal polynomial x - c, primitive
    Rat c = g.empty() ? Rat(0) : g[0];
    return primitive_part({-c, Rat(1)});
  }
  // Multiplication matrix M[i][j]: coefficient of theta^i in gamma * theta^j.
  std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d, Rat(0)));
  QPoly pw = {Rat(1)};
  for (int jcol = 0; jcol < d; ++jcol) {
    QPoly col = mul(g, pw);
    for (size_t i = 0; i < col.size(); ++i) M[i][jcol] = col[i];
    pw = reduce(q_mul(pw, QPoly{Rat(0), Rat(1)}));
  }
  QPoly chi;  // char poly det(y I - M), ascending in y
  if (d == 2) {
    Rat tr = M[0][0] + M[1][1];
    Rat det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    chi = {det, -tr, Rat(1)};
  } else {
    Rat tr = M[0][0] + M[1][1] + M[2][2];
    Rat m01 = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    Rat m02 = M[0][0] * M[2][2] - M[0][2] * M[2][0];
    Rat m12 = M[1][1] * M[2][2] - M[1][2] * M[2][1];
    Rat det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
              M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
              M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    chi = {-det, m01 + m02 + m12, -tr, Rat(1)};
  }
  // gamma is irrational and [K:Q] is 2 or 3, so Q(gamma) = K and the
  // characteristic polynomial is already the minimal polynomial.
  return primitive_part(chi);
}

PrimeStructure NumberField::splitting(const Int& p) const {
  if (degree() > 3) throw Error("FieldTooLarge", "splitting implemented for degree <= 3");
  if (f_.back() % p == 0) {
    throw Error("IndexObstruction", "p divides the leading coefficient of the minimal polynomial");
  }
  PrimeStructure ps = prime_structure(monic_transform(), p);
  if (!ps.index_coprime) {
    throw Error("IndexObstruction", "p divides the index of the generator order");
  }
  return ps;
}

long NumberField::valuation_above(const QPoly& a, const Int& p) const {
  PrimeStructure ps = splitting(p);
  if (ps.num_primes != 1) {
    throw Error("MultiplePrimesAbove", "valuation_above requires a unique prime over p");
  }
  const int f_residue = ps.ef[0].second;
  Rat n = norm(a);
  long v = val_p(n, p);
  if (v % f_residue != 0) throw Error("Internal", "norm valuation not divisible by f");
  return v / f_residue;
}

}  // namespace lame::nf

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

#include "lame/poly.hpp"

#include <algorithm>
#include <numeric>

#include "lame/rng.hpp"

namespace lame {

Poly Poly::monomial(int k, mpfr_prec_t prec) {
  std::vector<Complex> c;
  c.reserve(k + 1);
  for (int i = 0; i < k; ++i) c.push_back(Complex::zero(prec));
  c.push_back(Complex::one(prec));
  return Poly(std::move(c));
}

Poly Poly::from_roots(const std::vector<Complex>& roots, mpfr_prec_t prec) {
  Poly p = Poly::one(prec);
  for (const Complex& r : roots) {
    std::vector<Complex> lin{-r.at_prec(prec), Complex::one(prec)};
    p = p * Poly(std::move(lin));
  }
  return p;
}

mpfr_prec_t Poly::prec() const {
  mpfr_prec_t p = MPFR_PREC_MAX;
  for (const Complex& x : c_) p = std::min(p, x.prec());
  return c_.empty() ? kMinPrecision : p;
}

Real Poly::coeff_norm() const {
  Real m(prec());
  for (const Complex& x : c_) m = max(m, x.abs());
  return m;
}

Complex Poly::eval(const Complex& x) const {
  if (c_.empty()) return Complex::zero(x.prec());
  Complex acc = c_.back();
  for (int i = degree() - 1; i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

std::pair<Complex, Complex> Poly::eval_with_derivative(const Complex& x) const {
  if (c_.empty()) return {Complex::zero(x.prec()), Complex::zero(x.prec())};
  Complex p = c_.back();
  Complex dp = Complex::zero(x.prec());
  for (int i = degree() - 1; i >= 0; --i) {
    dp = dp * x + p;
    p = p * x + c_[i];
  }
  return {p, dp};
}

Poly Poly::derivative() const {
  if (degree() <= 0) return Poly();
  std::vector<Complex> d;
  d.reserve(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return Poly(std::move(d));
}

Poly Poly::shifted(const Complex& a) const {
  if (degree() < 1 || a.is_exact_zero()) return *this;
  // Repeated synthetic division by (x - (-a)) accumulates p(x+a) coefficients.
  std::vector<Complex> w = c_;
  std::vector<Complex> out;
  out.reserve(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) {
    for (size_t i = w.size() - 1; i >= k + 1; --i) w[i - 1] += w[i] * a;
    out.push_back(w[k]);
  }
  return Poly(std::move(out));
}

Poly Poly::scaled_arg(const Complex& s) const {
  std::vector<Complex> out;
  out.reserve(c_.size());
  Complex pw = Complex::one(s.prec());
  for (size_t i = 0; i < c_.size(); ++i) {
    out.push_back(c_[i] * pw);
    pw = pw * s;
  }
  return Poly(std::move(out));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Complex> out;
  size_t n = std::max(a.c_.size(), b.c_.size());
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c_.size() && i < b.c_.size())
      out.push_back(a.c_[i] + b.c_[i]);
    else if (i < a.c_.size())
      out.push_back(a.c_[i]);
    else
      out.push_back(b.c_[i]);
  }
  return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  std::vector<Complex> out;
  out.reserve(c_.size());
  for (const Complex& x : c_) out.push_back(-x);
  return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  mpfr_prec_t prec = std::min(a.prec(), b.prec());
  std::vector<Complex> out(a.c_.size() + b.c_.size() - 1, Complex::zero(prec));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_exact_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(out));
}

Poly operator*(const Poly& a, const Complex& s) {
  std::vector<Complex> out;
  out.reserve(a.c_.size());
  for (const Complex& x : a.c_) out.push_back(x * s);
  return Poly(std::move(out));
}

Poly Poly::at_prec(mpfr_prec_t p) const {
  std::vector<Complex> out;
  out.reserve(c_.size());
  for (const Complex& x : c_) out.push_back(x.at_prec(p));
  return Poly(std::move(out));
}

namespace {

// Cauchy-style inclusion radius: all roots lie within 1 + max |c_i / c_d|.
double root_radius(const Poly& p) {
  double lc = p.leading().abs().to_double();
  double m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, p[i].abs().to_double());
  double r = 1.0 + m / lc;
  return std::min(r, 1e6);
}

struct AberthState {
  std::vector<Complex> z;
  std::vector<bool> done;
};

// One full Aberth-Ehrlich sweep; returns max |correction| / max(1,|z|).
Real aberth_sweep(const Poly& p, const Poly& dp, AberthState& st, const Real& stop_scale,
                  mpfr_prec_t wp) {
  const int n = static_cast<int>(st.z.size());
  Real worst(wp);
  for (int i = 0; i < n; ++i) {
    auto [pv, dv] = p.eval_with_derivative(st.z[i]);
    Real local_scale = stop_scale * max(Real::of(1L, wp), st.z[i].abs()).ldexp(0);
    // Residual-based stop: |p(z)| below the absolute certification floor.
    if (pv.abs() < local_scale) {
      st.done[i] = true;
      continue;
    }
    st.done[i] = false;
    if (dv.abs().is_zero()) {
      st.z[i] += Complex::of(1e-3, 1.7e-3, wp);
      worst = max(worst, Real::of(1L, wp));
      continue;
    }
    Complex w = pv / dv;
    Complex s = Complex::zero(wp);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      Complex d = st.z[i] - st.z[j];
      if (d.abs().is_zero()) {
        d = Complex::of(1e-20, 1e-20, wp);
      }
      s += d.inv();
    }
    Complex denom = Complex::one(wp) - w * s;
    Complex corr = denom.abs().is_zero() ? w : w / denom;
    st.z[i] -= corr;
    worst = max(worst, corr.abs() / max(Real::of(1L, wp), st.z[i].abs()));
  }
  return worst;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& zs, long cluster_exp,
                                       mpfr_prec_t out_prec) {
  const int n = static_cast<int>(zs.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Real scale = max(Real::of(1L, out_prec), zs[i].abs());
      if (abs_dist(zs[i], zs[j]) < scale.ldexp(cluster_exp)) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::vector<RootCluster> out;
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (used[r]) continue;
    used[r] = true;
    Complex mean = Complex::zero(out_prec);
    int m = 0;
    for (int j = 0; j < n; ++j) {
      if (find(j) == r) {
        mean += zs[j];
        ++m;
      }
    }
    out.push_back({(mean / static_cast<long>(m)).at_prec(out_prec), m});
  }
  // Deterministic order: by real part, then imaginary part.
  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.location.re != b.location.re) return a.location.re < b.location.re;
    return a.location.im < b.location.im;
  });
  return out;
}

bool certify_roots(const Poly& p, const std::vector<RootCluster>& roots, long tol_exp) {
  std::vector<Complex> flat;
  for (const auto& rc : roots) {
    for (int k = 0; k < rc.multiplicity; ++k) flat.push_back(rc.location);
  }
  Poly rebuilt = Poly::from_roots(flat, p.prec()) * p.leading();
  Poly diff = rebuilt - p;
  return diff.coeff_norm() <= p.coeff_norm().ldexp(tol_exp);
}

}  // namespace

std::vector<RootCluster> poly_roots(const Poly& p, mpfr_prec_t precision_bits,
                                    const RootConfig& cfg) {
  if (p.is_zero() || p.degree() < 1) {
    throw Error("Precondition", "poly_roots requires a nonzero polynomial of degree >= 1");
  }
  // Deflate exact zero roots first (the x^3 factor of Shabat polynomials is
  // built exactly and must stay an exact multiplicity).
  int zero_mult = 0;
  std::vector<Complex> cs = p.coeffs();
  while (zero_mult < p.degree() && cs[zero_mult].is_exact_zero()) ++zero_mult;
  Poly q = zero_mult == 0
               ? p
               : Poly(std::vector<Complex>(cs.begin() + zero_mult, cs.end()));

  Rng rng(cfg.rng_seed);
  mpfr_prec_t wp = 2 * precision_bits + 64;
  for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
    std::vector<RootCluster> result;
    if (q.degree() == 0) {
      // Whole polynomial was c * x^k.
    } else {
      Poly qw = q.at_prec(wp);
      Poly dq = qw.derivative();
      const int n = qw.degree();
      double radius = root_radius(qw);
      AberthState st;
      st.done.assign(n, false);
      double phase = rng.uniform();
      for (int i = 0; i < n; ++i) {
        double a = 6.283185307179586 * (static_cast<double>(i) / n + phase);
        double r = radius * (0.5 + 0.5 * rng.uniform());
        Complex base = Complex::of(r * std::cos(a), r * std::sin(a), wp);
        st.z.push_back(base);
      }
      Real stop = qw.coeff_norm().ldexp(-static_cast<long>(wp) + 24);
      bool converged = false;
      for (int it = 0; it < cfg.max_iterations; ++it) {
        Real worst = aberth_sweep(qw, dq, st, stop, wp);
        bool all = true;
        for (bool d : st.done) all = all && d;
        if (all || worst < Real::pow2(-static_cast<long>(wp) + 16, wp)) {
          converged = true;
          break;
        }
      }
      if (!converged && attempt < cfg.max_restarts) {
        wp += precision_bits / 2;
        continue;
      }
      result = cluster_roots(st.z, -static_cast<long>(precision_bits) / 4, precision_bits);
    }
    if (zero_mult > 0) {
      result.push_back({Complex::zero(precision_bits), zero_mult});
      std::sort(result.begin(), result.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.location.re != b.location.re) return a.location.re < b.location.re;
        return a.location.im < b.location.im;
      });
    }
    int total = 0;
    for (const auto& rc : result) total += rc.multiplicity;
    if (total == p.degree() &&
        certify_roots(p.at_prec(wp), result, -static_cast<long>(precision_bits) / 2)) {
      return result;
    }
    wp += precision_bits;  // escalate and retry with fresh starting points
  }
  throw Error("NonConvergence", "root finder failed after configured restarts");
}

std::vector<Complex> poly_roots_flat(const Poly& p, mpfr_prec_t precision_bits) {
  std::vector<Complex> out;
  for (const auto& rc : poly_roots(p, precision_bits)) {
    for (int i = 0; i < rc.multiplicity; ++i) out.push_back(rc.location);
  }
  return out;
}

Complex poly_resultant(const Poly& p, const Poly& q) {
  const int dp = p.degree(), dq = q.degree();
  if (dp < 0 || dq < 0) {
    throw Error("Precondition", "resultant of a zero polynomial");
  }
  mpfr_prec_t prec = std::min(p.prec(), q.prec());
  if (dp == 0) return p[0].pow(static_cast<unsigned long>(dq));
  if (dq == 0) return q[0].pow(static_cast<unsigned long>(dp));
  const int n = dp + dq;
  // Sylvester matrix, rows of q-shifts then p-shifts.
  std::vector<std::vector<Complex>> m(n, std::vector<Complex>(n, Complex::zero(prec)));
  for (int i = 0; i < dq; ++i) {
    for (int j = 0; j <= dp; ++j) m[i][i + j] = p[dp - j];
  }
  for (int i = 0; i < dp; ++i) {
    for (int j = 0; j <= dq; ++j) m[dq + i][i + j] = q[dq - j];
  }
  // Gaussian elimination with partial pivoting; determinant with sign.
  Complex det = Complex::one(prec);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].abs() > m[piv][col].abs()) piv = r;
    }
    if (m[piv][col].abs().is_zero()) return Complex::zero(prec);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    Complex inv = m[col][col].inv();
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_exact_zero()) continue;
      Complex f = m[r][col] * inv;
      for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
    }
  }
  return det;
}

Complex poly_resultant_discriminant(const Poly& p) {
  if (p.degree() < 2) {
    throw Error("Precondition", "discriminant requires degree >= 2");
  }
  Complex r = poly_resultant(p, p.derivative());
  int d = p.degree();
  Complex disc = r / p.leading();
  if (((static_cast<long>(d) * (d - 1)) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace lame

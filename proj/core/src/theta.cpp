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

#include "lame/theta.hpp"

#include <algorithm>
#include <array>

namespace lame::theta {

namespace {

// theta1 and its first three v-derivatives at nome q:
//   theta1(v) = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1) v)
// Only ratios of these values are ever used downstream, so the overall
// q^(1/4) branch factor is immaterial.
struct Theta1Values {
  Complex t0, t1, t2, t3;
};

Theta1Values theta1_all(const Complex& v, const Complex& q, mpfr_prec_t wp) {
  Theta1Values out{Complex::zero(wp), Complex::zero(wp), Complex::zero(wp), Complex::zero(wp)};
  const Real tiny = Real::pow2(-static_cast<long>(wp) - 32, wp);
  Real scale = Real::of(1L, wp);
  const Complex E = v.mul_i().exp();  // e^{iv}
  const Complex E2 = E * E;
  const Complex q2 = q * q;
  const Complex two_i = Complex::of(0L, 2L, wp);
  Complex P = E;                  // E^(2n+1)
  Complex qe = q.sqrt().sqrt();   // q^((n+1/2)^2)
  Complex qstep = q2;             // q^(2n+2)
  for (int n = 0;; ++n) {
    const long k = 2L * n + 1;
    Complex Pi = P.inv();
    Complex s = (P - Pi) / two_i;  // sin(kv)
    Complex c = (P + Pi) / 2;      // cos(kv)
    long sign = (n % 2 == 0) ? 1 : -1;
    Complex qs = qe * s * (2 * sign);
    Complex qc = qe * c * (2 * sign);
    out.t0 += qs;
    out.t1 += qc * k;
    out.t2 -= qs * (k * k);
    out.t3 -= qc * (k * k * k);
    Real magnitude = qe.abs() * max(P.abs(), Pi.abs()) * (k * k * k);
    scale = max(scale, magnitude);
    if (n > 3 && magnitude < tiny * scale) break;
    if (n > 4096) throw Error("NonConvergence", "theta series did not converge");
    qe = qe * qstep;
    qstep = qstep * q2;
    P = P * E2;
  }
  return out;
}

// E4, E6 by divisor q-series in Q = exp(2 pi i tau) = q^2.
std::pair<Complex, Complex> eisenstein(const Complex& Q, mpfr_prec_t wp) {
  Complex e4 = Complex::one(wp);
  Complex e6 = Complex::one(wp);
  const Real tiny = Real::pow2(-static_cast<long>(wp) - 16, wp);
  Complex Qn = Complex::one(wp);
  for (int n = 1;; ++n) {
    Qn = Qn * Q;
    Complex frac = Qn / (Complex::one(wp) - Qn);
    long n3 = static_cast<long>(n) * n * n;
    Complex t4 = frac * (240 * n3);
    Complex t6 = frac * (504 * n3 * n * n);
    e4 += t4;
    e6 -= t6;
    if (t6.abs() < tiny && n > 4) break;
    if (n > 100000) throw Error("NonConvergence", "Eisenstein series did not converge");
  }
  return {e4, e6};
}

struct ReducedBasis {
  Complex w1, w2;
};

// Gauss reduction; afterwards |Re(w2/w1)| <= 1/2 <= |w2/w1| and Im tau > 0.
ReducedBasis reduce_basis(Complex w1, Complex w2, mpfr_prec_t wp) {
  for (int it = 0; it < 4096; ++it) {
    Complex ratio = w2 / w1;
    Real n = ratio.re.round();
    if (!n.is_zero()) w2 = w2 - w1 * Complex(n);
    if (w2.abs() < w1.abs()) {
      std::swap(w1, w2);
      continue;
    }
    break;
  }
  Complex tau = w2 / w1;
  if (tau.im.sign() < 0) w2 = -w2;
  return {w1, w2};
}

}  // namespace

Complex cagm(Complex a, Complex b, mpfr_prec_t bits) {
  const Real tol = Real::pow2(-static_cast<long>(bits) + 8, bits);
  for (int it = 0; it < 8 * 64; ++it) {
    Complex a1 = (a + b) / 2;
    Complex b1 = (a * b).sqrt();
    // optimal branch: |a1 - b1| <= |a1 + b1|
    if ((a1 - b1).abs() > (a1 + b1).abs()) b1 = -b1;
    a = a1;
    b = b1;
    if ((a - b).abs() <= a.abs() * tol) return a;
  }
  throw Error("AGMFailure", "complex AGM did not converge");
}

namespace {

struct LatticeInternals {
  Complex q;       // nome exp(i pi tau)
  Complex pi_w1;   // pi / omega1
  Theta1Values t0; // theta1 derivatives at v = 0
};

LatticeInternals internals(const LatticeData& lat) {
  mpfr_prec_t wp = lat.bits + 64;
  LatticeInternals li;
  Complex ipitau = lat.tau.at_prec(wp).mul_i() * Real::pi(wp);
  li.q = ipitau.exp();
  li.pi_w1 = Complex(Real::pi(wp)) / lat.omega1.at_prec(wp);
  li.t0 = theta1_all(Complex::zero(wp), li.q, wp);
  return li;
}

Complex zeta_at(const LatticeData& lat, const LatticeInternals& li, const Complex& z) {
  mpfr_prec_t wp = lat.bits + 64;
  Complex v = li.pi_w1 * z.at_prec(wp);
  Theta1Values t = theta1_all(v, li.q, wp);
  return lat.eta1.at_prec(wp) * z.at_prec(wp) / lat.omega1.at_prec(wp) +
         li.pi_w1 * (t.t1 / t.t0);
}

}  // namespace

LatticeData lattice_from_model(const Complex& g2_in, const Complex& g3_in, mpfr_prec_t bits) {
  const mpfr_prec_t wp = bits + 64;
  Complex g2 = g2_in.at_prec(wp);
  Complex g3 = g3_in.at_prec(wp);
  Complex delta = g2.pow(3) - g3 * g3 * 27;
  if (delta.abs() < Real::pow2(-static_cast<long>(bits) / 2, wp)) {
    throw Error("AGMFailure", "discriminant vanishes to tolerance");
  }
  Poly quartic(std::vector<Complex>{-g3, -g2, Complex::zero(wp), Complex::of(4L, 0L, wp)});
  std::vector<Complex> e = poly_roots_flat(quartic, wp);
  if (e.size() != 3) throw Error("AGMFailure", "cubic must have three roots");

  const Real pi = Real::pi(wp);
  const int orders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  Real best_err = Real::pow2(60, wp);
  LatticeData best;
  bool found = false;
  for (const auto& ord : orders) {
    const Complex &e1 = e[ord[0]], &e2 = e[ord[1]], &e3 = e[ord[2]];
    Complex m1, m2;
    try {
      m1 = cagm((e1 - e2).sqrt(), (e1 - e3).sqrt(), wp);
      m2 = cagm((e1 - e3).sqrt(), (e2 - e3).sqrt(), wp);
    } catch (const Error&) {
      continue;
    }
    if (m1.abs().is_zero() || m2.abs().is_zero()) continue;
    Complex w1 = Complex(pi) / m1;
    Complex w2 = (Complex(pi) / m2).mul_i();
    ReducedBasis rb = reduce_basis(w1, w2, wp);
    LatticeData cand;
    cand.bits = bits;
    cand.omega1 = rb.w1;
    cand.omega2 = rb.w2;
    cand.tau = rb.w2 / rb.w1;
    // Certify the lattice by recovering g2, g3 from Eisenstein series.
    Complex Q = (cand.tau.mul_i() * pi * 2).exp();
    auto [E4, E6] = eisenstein(Q, wp);
    Complex twopi_w1 = Complex(pi * 2) / cand.omega1;
    Complex g2_rec = twopi_w1.pow(4) * E4 / 12;
    Complex g3_rec = twopi_w1.pow(6) * E6 / 216;
    Real err = (g2_rec - g2).abs() / max(Real::of(1L, wp), g2.abs()) +
               (g3_rec - g3).abs() / max(Real::of(1L, wp), g3.abs());
    if (err < best_err) {
      best_err = err;
      cand.g2 = g2;
      cand.g3 = g3;
      best = cand;
      found = true;
    }
  }
  if (!found || !(best_err < Real::pow2(-static_cast<long>(bits) / 2, wp))) {
    throw Error("AGMFailure", "no AGM root ordering certified against Eisenstein recovery");
  }

  // Quasi-periods: eta1 from theta constants, eta2 = 2 zeta(omega2 / 2),
  // then certify the Legendre relation.
  LatticeInternals li = internals(best);
  Complex pi_w1 = li.pi_w1;
  best.eta1 = -(pi_w1 * pi_w1 * best.omega1.at_prec(wp)) * (li.t0.t3 / li.t0.t1) / 3;
  best.eta2 = zeta_at(best, li, best.omega2 / 2) * 2;
  Complex legendre = best.eta1 * best.omega2 - best.eta2 * best.omega1;
  Complex expect = Complex::i_unit(wp) * (pi * 2);
  if (!((legendre - expect).abs() < Real::pow2(-static_cast<long>(bits) / 2, wp))) {
    throw Error("AGMFailure", "Legendre relation failed certification");
  }
  best.omega1 = best.omega1.at_prec(bits + 32);
  best.omega2 = best.omega2.at_prec(bits + 32);
  best.eta1 = best.eta1.at_prec(bits + 32);
  best.eta2 = best.eta2.at_prec(bits + 32);
  best.tau = best.tau.at_prec(bits + 32);
  return best;
}

std::pair<Real, Real> lattice_coords(const LatticeData& lat, const Complex& z) {
  mpfr_prec_t wp = lat.bits + 32;
  // Solve [Re w1 Re w2; Im w1 Im w2] (a, b) = (Re z, Im z).
  Real a11 = lat.omega1.re.at_prec(wp), a12 = lat.omega2.re.at_prec(wp);
  Real a21 = lat.omega1.im.at_prec(wp), a22 = lat.omega2.im.at_prec(wp);
  Real det = a11 * a22 - a12 * a21;
  Real alpha = (z.re * a22 - z.im * a12) / det;
  Real beta = (z.im * a11 - z.re * a21) / det;
  return {alpha, beta};
}

Complex weier_zeta(const LatticeData& lat, const Complex& z) {
  LatticeInternals li = internals(lat);
  return zeta_at(lat, li, z);
}

Complex weier_p(const LatticeData& lat, const Complex& z) {
  mpfr_prec_t wp = lat.bits + 64;
  LatticeInternals li = internals(lat);
  Complex v = li.pi_w1 * z.at_prec(wp);
  Theta1Values t = theta1_all(v, li.q, wp);
  Complex r1 = t.t1 / t.t0;
  Complex d1 = t.t2 / t.t0 - r1 * r1;
  return -(lat.eta1.at_prec(wp) / lat.omega1.at_prec(wp)) - li.pi_w1 * li.pi_w1 * d1;
}

Complex weier_p_prime(const LatticeData& lat, const Complex& z) {
  mpfr_prec_t wp = lat.bits + 64;
  LatticeInternals li = internals(lat);
  Complex v = li.pi_w1 * z.at_prec(wp);
  Theta1Values t = theta1_all(v, li.q, wp);
  Complex r1 = t.t1 / t.t0;
  Complex d2 = t.t3 / t.t0 - (t.t2 / t.t0) * r1 * 3 + r1.pow(3) * 2;
  return -(li.pi_w1.pow(3)) * d2;
}

ThetaEvaluation theta_eval(const LatticeData& lat, const Real& alpha_in, const Real& beta_in) {
  mpfr_prec_t wp = lat.bits + 64;
  // Reduce to the centered cell; theta is lattice-periodic by construction.
  Real alpha = alpha_in.at_prec(wp);
  Real beta = beta_in.at_prec(wp);
  Real am = alpha - alpha.round();
  Real bm = beta - beta.round();
  Complex z = lat.omega1.at_prec(wp) * Complex(am) + lat.omega2.at_prec(wp) * Complex(bm);
  if (z.abs() < Real::pow2(-static_cast<long>(lat.bits) / 8, wp)) {
    throw Error("PoleProximity", "theta argument too close to the lattice");
  }
  Complex zeta = weier_zeta(lat, z);
  Complex theta = zeta - lat.eta1.at_prec(wp) * Complex(am) - lat.eta2.at_prec(wp) * Complex(bm);
  ThetaEvaluation out{alpha_in, beta_in, theta, -static_cast<long>(lat.bits) / 3};
  return out;
}

std::vector<std::pair<int, int>> scan_torsion(const LatticeData& lat, int N, mpfr_prec_t bits) {
  if (N < 2) throw Error("Precondition", "scan_torsion needs N >= 2");
  std::vector<std::pair<int, int>> hits;
  const Real threshold = Real::pow2(-static_cast<long>(bits) / 3, bits);
  const int M = 2 * N;
  for (int a = 0; a < M; ++a) {
    for (int b = 0; b < M; ++b) {
      bool two_torsion = (a == 0 || a == N) && (b == 0 || b == N);
      if (two_torsion) continue;
      Real alpha = Real::of(static_cast<long>(a), bits) / M;
      Real beta = Real::of(static_cast<long>(b), bits) / M;
      Complex th = theta_eval(lat, alpha, beta).theta_value;
      if (th.abs() < threshold) hits.push_back({a, b});
    }
  }
  // Mandatory re-verification at doubled precision. The refined lattice may
  // come back in a different (unimodular) basis, so each hit is transported
  // as a point, not as a coordinate label.
  LatticeData fine = lattice_from_model(lat.g2, lat.g3, 2 * lat.bits);
  std::vector<std::pair<int, int>> confirmed;
  for (auto [a, b] : hits) {
    Complex z = lat.omega1 * Complex(Real::of(static_cast<long>(a), 2 * bits) / M) +
                lat.omega2 * Complex(Real::of(static_cast<long>(b), 2 * bits) / M);
    auto [af, bf] = lattice_coords(fine, z);
    Complex th = theta_eval(fine, af, bf).theta_value;
    if (th.abs() < Real::pow2(-static_cast<long>(bits) / 2, 2 * bits)) {
      confirmed.push_back({a, b});
    }
  }
  return confirmed;
}

Complex elliptic_log(const LatticeData& lat, const Complex& x) {
  mpfr_prec_t wp = lat.bits + 32;
  const Real tol = Real::pow2(-static_cast<long>(lat.bits) / 2, wp) *
                   max(Real::of(1L, wp), x.abs() * x.abs());
  const int grid = 6;
  for (int gi = 0; gi < grid; ++gi) {
    for (int gj = 0; gj < grid; ++gj) {
      Real a = (Real::of(2L * gi + 1, wp)) / (2 * grid);
      Real b = (Real::of(2L * gj + 1, wp)) / (2 * grid);
      Complex z = lat.omega1.at_prec(wp) * Complex(a) + lat.omega2.at_prec(wp) * Complex(b);
      bool ok = false;
      for (int it = 0; it < 60; ++it) {
        Complex pv = weier_p(lat, z);
        Complex err = pv - x.at_prec(wp);
        if (err.abs() <= tol) {
          ok = true;
          break;
        }
        Complex dp = weier_p_prime(lat, z);
        if (dp.abs() < Real::pow2(-static_cast<long>(lat.bits), wp)) break;
        Complex step = err / dp;
        // clamp runaway steps to half a cell diameter
        Real cell = lat.omega1.abs() + lat.omega2.abs();
        if (step.abs() > cell / 2) step = step * ((cell / 2) / step.abs());
        z = z - step;
        auto [za, zb] = lattice_coords(lat, z);
        Real za_m = za - za.floor();
        Real zb_m = zb - zb.floor();
        z = lat.omega1.at_prec(wp) * Complex(za_m) + lat.omega2.at_prec(wp) * Complex(zb_m);
      }
      if (ok) return z;
    }
  }
  throw Error("NonConvergence", "elliptic logarithm inversion failed");
}

}  // namespace lame::theta

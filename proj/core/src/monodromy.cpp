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

#include "lame/monodromy.hpp"

#include <algorithm>

namespace lame::monodromy {

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
  return Mat2{a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
              a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat_identity(mpfr_prec_t prec) {
  return Mat2{Complex::one(prec), Complex::zero(prec), Complex::zero(prec), Complex::one(prec)};
}

Complex mat_det(const Mat2& m) { return m[0] * m[3] - m[1] * m[2]; }

Mat2 mat_inverse(const Mat2& m) {
  Complex inv_det = mat_det(m).inv();
  return Mat2{m[3] * inv_det, -(m[1] * inv_det), -(m[2] * inv_det), m[0] * inv_det};
}

Real mat_norm(const Mat2& m) {
  Real s = m[0].norm() + m[1].norm() + m[2].norm() + m[3].norm();
  return s.sqrt();
}

namespace {

Mat2 mat_scale(const Mat2& m, const Complex& c) {
  return Mat2{m[0] * c, m[1] * c, m[2] * c, m[3] * c};
}

Mat2 mat_sub(const Mat2& a, const Mat2& b) {
  return Mat2{a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

/// Unit Frobenius norm with the largest entry rotated to the positive real
/// axis: a canonical representative of the projective class.
Mat2 projective_normalize(const Mat2& m) {
  int big = 0;
  for (int i = 1; i < 4; ++i) {
    if (m[i].abs() > m[big].abs()) big = i;
  }
  Complex phase = m[big] / m[big].abs();
  Complex scale = phase.conj() / mat_norm(m);
  return mat_scale(m, scale);
}

}  // namespace

Real projective_distance(const Mat2& a, const Mat2& b) {
  Mat2 na = projective_normalize(a);
  Mat2 nb = projective_normalize(b);
  return mat_norm(mat_sub(na, nb));
}

LameODE make_ode(const curves::EllipticModel& m) {
  LameODE ode;
  ode.g2 = m.g2;
  ode.g3 = m.g3;
  ode.B = m.B;
  ode.bits = m.precision_bits;
  const mpfr_prec_t prec = m.precision_bits;
  Poly f(std::vector<Complex>{-m.g3, -m.g2, Complex::zero(prec), Complex::of(4L, 0L, prec)});
  ode.singular = poly_roots_flat(f, prec);
  if (ode.singular.size() != 3) throw Error("SingularCurve", "f must have three simple roots");
  return ode;
}

namespace {

// One Taylor step of the fundamental system from x0 to x0 + delta.
// State transfer: (u, u')(x0+delta) = M (u, u')(x0).
Mat2 taylor_step(const LameODE& ode, const Complex& x0, const Complex& delta, mpfr_prec_t wp) {
  // f = 4x^3 - g2 x - g3 shifted to x0: A0 + A1 t + A2 t^2 + A3 t^3
  Complex A0 = ((Complex::of(4L, 0L, wp) * x0 * x0 - ode.g2) * x0) - ode.g3;
  Complex A1 = Complex::of(12L, 0L, wp) * x0 * x0 - ode.g2;
  Complex A2 = Complex::of(12L, 0L, wp) * x0;
  Complex A3 = Complex::of(4L, 0L, wp);
  // f'/2 = 6x^2 - g2/2 shifted: C0 + C1 t + C2 t^2
  Complex C0 = Complex::of(6L, 0L, wp) * x0 * x0 - ode.g2 / 2;
  Complex C1 = Complex::of(12L, 0L, wp) * x0;
  Complex C2 = Complex::of(6L, 0L, wp);
  // 2x + B shifted: D0 + D1 t
  Complex D0 = x0 * 2 + ode.B;
  Complex D1 = Complex::of(2L, 0L, wp);

  const Real tiny = Real::pow2(-static_cast<long>(wp) - 16, wp);
  Mat2 out;
  for (int col = 0; col < 2; ++col) {
    std::vector<Complex> a;
    a.reserve(64);
    a.push_back(col == 0 ? Complex::one(wp) : Complex::zero(wp));
    a.push_back(col == 0 ? Complex::zero(wp) : Complex::one(wp));
    Complex u = a[0] + a[1] * delta;
    Complex du = a[1];
    Complex dpow = delta * delta;  // delta^(k) when evaluating a_k
    Real peak = max(u.abs(), Real::of(1L, wp));
    int quiet = 0;
    Complex u_acc = u;
    Complex du_acc = du;
    for (long k = 0;; ++k) {
      // recurrence gives a_{k+2}
      Complex num = Complex::zero(wp);
      auto at = [&](long idx) -> Complex {
        return idx >= 0 && idx < static_cast<long>(a.size()) ? a[idx] : Complex::zero(wp);
      };
      num += A1 * at(k + 1) * ((k + 1) * k);
      num += A2 * at(k) * (k * (k - 1));
      num += A3 * at(k - 1) * ((k - 1) * (k - 2));
      num += C0 * at(k + 1) * (k + 1);
      num += C1 * at(k) * k;
      num += C2 * at(k - 1) * (k - 1);
      num -= D0 * at(k);
      num -= D1 * at(k - 1);
      Complex ak2 = -(num / (A0 * ((k + 2) * (k + 1))));
      a.push_back(ak2);
      Complex term = ak2 * dpow;
      u_acc += term;
      du_acc += ak2 * dpow * (k + 2) / delta;
      dpow = dpow * delta;
      Real t_abs = term.abs() * (k + 2);
      peak = max(peak, u_acc.abs());
      if (t_abs < tiny * peak) {
        if (++quiet >= 4) break;
      } else {
        quiet = 0;
      }
      if (k > 16000) throw Error("StepSizeUnderflow", "Taylor series failed to converge");
    }
    out[col] = u_acc;
    out[2 + col] = du_acc;
  }
  return out;
}

Real nearest_singularity(const LameODE& ode, const Complex& x) {
  Real d = abs_dist(x, ode.singular[0]);
  for (size_t i = 1; i < ode.singular.size(); ++i) d = min(d, abs_dist(x, ode.singular[i]));
  return d;
}

}  // namespace

Mat2 integrate_path(const LameODE& ode, const std::vector<Complex>& points, mpfr_prec_t bits) {
  const mpfr_prec_t wp = bits + 64;
  Mat2 m = mat_identity(wp);
  if (points.size() < 2) return m;
  Complex cur = points[0].at_prec(wp);
  for (size_t i = 1; i < points.size(); ++i) {
    Complex target = points[i].at_prec(wp);
    for (int guard = 0; guard < 100000; ++guard) {
      Complex leg = target - cur;
      Real len = leg.abs();
      if (len.is_zero()) break;
      Real dmin = nearest_singularity(ode, cur);
      if (dmin < Real::pow2(-16, wp)) {
        throw Error("StepSizeUnderflow", "path runs into a singular point");
      }
      Real cap = dmin * 2 / 5;
      Complex step = leg;
      bool final_step = true;
      if (len > cap) {
        step = leg * (cap / len);
        final_step = false;
      }
      m = mat_mul(taylor_step(ode, cur, step, wp), m);
      cur += step;
      if (final_step) break;
    }
  }
  return m;
}

Mat2 integrate_loop(const LameODE& ode, const std::vector<Complex>& loop, mpfr_prec_t bits) {
  Mat2 fwd = integrate_path(ode, loop, bits);
  std::vector<Complex> rev(loop.rbegin(), loop.rend());
  Mat2 bwd = integrate_path(ode, rev, bits);
  Mat2 check = mat_mul(bwd, fwd);
  Real defect = mat_norm(mat_sub(check, mat_identity(bits))) / mat_norm(fwd);
  if (!(defect < Real::pow2(-static_cast<long>(bits) / 2, bits))) {
    throw Error("NonConvergence", "loop reversal certification failed");
  }
  return fwd;
}

std::vector<Complex> star_loop(const LameODE& ode, const Complex& basepoint, int sing_index,
                               mpfr_prec_t bits) {
  const mpfr_prec_t wp = bits + 32;
  const Complex s = ode.singular[sing_index].at_prec(wp);
  Real gap = Real::pow2(30, wp);
  for (size_t j = 0; j < ode.singular.size(); ++j) {
    if (static_cast<int>(j) == sing_index) continue;
    gap = min(gap, abs_dist(s, ode.singular[j]));
  }
  gap = min(gap, abs_dist(s, basepoint));
  Real radius = gap / 4;
  Complex dir = (basepoint.at_prec(wp) - s) / abs_dist(basepoint, s).at_prec(wp);
  Complex entry = s + dir * radius;

  // Spoke from the basepoint to the circle entry, detouring any leg that
  // passes too close to a foreign singular point.
  std::vector<Complex> path{basepoint.at_prec(wp), entry};
  for (int pass = 0; pass < 6; ++pass) {
    bool changed = false;
    std::vector<Complex> next{path.front()};
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      const Complex &a = path[i], &b = path[i + 1];
      for (size_t j = 0; j < ode.singular.size(); ++j) {
        if (static_cast<int>(j) == sing_index) continue;
        const Complex sj = ode.singular[j].at_prec(wp);
        Complex ab = b - a;
        Real ab2 = ab.norm();
        Complex as = sj - a;
        Real t = (as.re * ab.re + as.im * ab.im) / ab2;
        if (t.sign() > 0 && t < Real::of(1L, wp)) {
          Complex foot = a + ab * Complex(t);
          Real d = abs_dist(foot, sj);
          Real ring = Real::pow2(30, wp);
          for (size_t l = 0; l < ode.singular.size(); ++l) {
            if (l != j) ring = min(ring, abs_dist(sj, ode.singular[l]));
          }
          ring = min(ring, abs_dist(sj, basepoint)) / 4;
          if (d < ring) {
            Complex away = d.is_zero() ? Complex::i_unit(wp) : (foot - sj) / Complex(d);
            next.push_back(sj + away * ring * 2);
            changed = true;
            break;
          }
        }
      }
      next.push_back(b);
    }
    path = std::move(next);
    if (!changed) break;
  }

  std::vector<Complex> loop = path;  // basepoint ... entry
  const int segs = 24;
  for (int k = 1; k <= segs; ++k) {
    Complex rot = Complex::unit_root(k, segs, wp);
    loop.push_back(s + (entry - s) * rot);
  }
  for (size_t i = path.size() - 1; i-- > 0;) loop.push_back(path[i]);
  return loop;
}

namespace {

struct GroupScan {
  std::vector<Mat2> elements;
  Real separation;
  long order = 0;
};

GroupScan generate_group(const std::vector<Mat2>& gens, bool projective, const Real& threshold,
                         long cap, mpfr_prec_t prec) {
  GroupScan gs;
  gs.separation = Real::pow2(30, prec);
  auto dist = [&](const Mat2& a, const Mat2& b) {
    if (projective) return projective_distance(a, b);
    return mat_norm(mat_sub(a, b));
  };
  std::vector<Mat2> todo{mat_identity(prec)};
  while (!todo.empty()) {
    Mat2 cur = todo.back();
    todo.pop_back();
    bool known = false;
    for (const Mat2& e : gs.elements) {
      Real d = dist(cur, e);
      if (d < threshold) {
        known = true;
        break;
      }
    }
    if (known) continue;
    for (const Mat2& e : gs.elements) gs.separation = min(gs.separation, dist(cur, e));
    gs.elements.push_back(cur);
    if (static_cast<long>(gs.elements.size()) > cap) {
      throw Error("GroupBlowup", "monodromy group exceeded the cap (tolerance failure?)");
    }
    for (const Mat2& g : gens) todo.push_back(mat_mul(g, cur));
  }
  gs.order = static_cast<long>(gs.elements.size());
  return gs;
}

long projective_element_order(const Mat2& m, long cap, const Real& threshold, mpfr_prec_t prec) {
  Mat2 acc = m;
  Mat2 id = mat_identity(prec);
  for (long k = 1; k <= cap; ++k) {
    if (projective_distance(acc, id) < threshold) return k;
    acc = mat_mul(acc, m);
  }
  return 0;
}

}  // namespace

MonodromyCertificate certify_dihedral(const LameODE& ode, int N, mpfr_prec_t bits) {
  const mpfr_prec_t prec = bits;
  MonodromyCertificate cert;
  cert.separation_margin = Real(prec);
  cert.dedup_threshold = Real::pow2(-static_cast<long>(bits) / 4, prec);
  cert.reversal_residual = Real(prec);

  // Basepoint on the real axis, well right of every singularity.
  Real rmax(prec);
  for (const Complex& s : ode.singular) rmax = max(rmax, s.abs());
  cert.basepoint = Complex(rmax * 2 + 2);

  // Loop order: counterclockwise by argument as seen from the basepoint.
  std::vector<int> order{0, 1, 2};
  std::vector<Real> args;
  for (const Complex& s : ode.singular) args.push_back((s - cert.basepoint).arg());
  std::sort(order.begin(), order.end(), [&](int a, int b) { return args[a] < args[b]; });

  for (int idx : order) {
    std::vector<Complex> loop = star_loop(ode, cert.basepoint, idx, bits);
    Mat2 fwd = integrate_path(ode, loop, bits);
    std::vector<Complex> rev(loop.rbegin(), loop.rend());
    Mat2 bwd = integrate_path(ode, rev, bits);
    Real defect = mat_norm(mat_sub(mat_mul(bwd, fwd), mat_identity(prec))) / mat_norm(fwd);
    cert.reversal_residual = max(cert.reversal_residual, defect);
    if (!(defect < Real::pow2(-static_cast<long>(bits) / 2, prec))) {
      throw Error("NonConvergence", "loop reversal certification failed");
    }
    cert.loop_matrices.push_back(fwd);
  }

  // Product relation: the ordered product of the three loops is homotopic
  // to the big counterclockwise circle through the basepoint.
  std::vector<Complex> big;
  const int segs = 64;
  for (int k = 0; k <= segs; ++k) {
    big.push_back(cert.basepoint * Complex::unit_root(k, segs, prec));
  }
  Mat2 mbig = integrate_loop(ode, big, bits);
  Mat2 prod = mat_mul(cert.loop_matrices[2], mat_mul(cert.loop_matrices[1], cert.loop_matrices[0]));
  cert.relation_residual = Real::pow2(30, prec);
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& pm : perms) {
    Mat2 cand = mat_mul(cert.loop_matrices[pm[2]],
                        mat_mul(cert.loop_matrices[pm[1]], cert.loop_matrices[pm[0]]));
    cert.relation_residual =
        min(cert.relation_residual, mat_norm(mat_sub(cand, mbig)) / mat_norm(mbig));
  }

  // Group generation.
  GroupScan proj = generate_group(cert.loop_matrices, true, cert.dedup_threshold, 8L * N + 8, prec);
  cert.projective_group_order = proj.order;
  cert.separation_margin = proj.separation;
  GroupScan lin = generate_group(cert.loop_matrices, false,
                                 cert.dedup_threshold * max(Real::of(1L, prec), mat_norm(prod)),
                                 16L * N + 8, prec);
  cert.linear_group_order = lin.order;

  // Dihedral shape: generators are projective involutions; some pairwise
  // product realizes the full rotation order N; a generator inverts it.
  Mat2 id = mat_identity(prec);
  for (const Mat2& g : cert.loop_matrices) {
    long o = projective_element_order(g, 4, cert.dedup_threshold, prec);
    if (o != 2) throw Error("OrderMismatch", "singular loop is not a projective involution");
  }
  long best_rot = 0;
  Mat2 rot = id;
  for (int i = 0; i < 3 && best_rot != N; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      Mat2 r = mat_mul(cert.loop_matrices[i], cert.loop_matrices[j]);
      long o = projective_element_order(r, 2L * N + 2, cert.dedup_threshold, prec);
      if (o > best_rot) {
        best_rot = o;
        rot = r;
      }
      if (best_rot == N) break;
    }
  }
  cert.cyclic_order = best_rot;
  bool inverted = false;
  if (best_rot == N) {
    Mat2 rinv = mat_inverse(rot);
    for (const Mat2& g : cert.loop_matrices) {
      Mat2 conj = mat_mul(g, mat_mul(rot, mat_inverse(g)));
      if (projective_distance(conj, rinv) < cert.dedup_threshold) {
        inverted = true;
        break;
      }
    }
  }
  cert.dihedral = (best_rot == N) && inverted && cert.projective_group_order == 2L * N;
  if (cert.projective_group_order != 2L * N) {
    throw Error("OrderMismatch", "projective monodromy order " +
                                     std::to_string(cert.projective_group_order) + ", expected " +
                                     std::to_string(2L * N));
  }

  // det-1 lifts for the certificate payload.
  for (const Mat2& m : cert.loop_matrices) {
    Complex d = mat_det(m);
    Complex scale = d.sqrt().inv();
    cert.det_normalized.push_back(mat_scale(m, scale));
  }
  cert.residual_exponent = -static_cast<long>(bits) / 2;
  return cert;
}

}  // namespace lame::monodromy

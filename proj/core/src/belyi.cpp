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

#include "lame/belyi.hpp"

#include <algorithm>
#include <map>

#include "lame/linalg.hpp"
#include "lame/rng.hpp"

namespace lame::belyi {

SystemShape SystemShape::for_signature(int N, int s) {
  if (N < 3 || s < 0 || (N - 3 - s) % 2 != 0 || N - 3 - s < 0 || 3 - s < 0) {
    throw Error("ShapeError", "no factor shape for degree " + std::to_string(N) +
                                  " signature " + std::to_string(s));
  }
  SystemShape sh;
  sh.N = N;
  sh.s = s;
  sh.deg_q = s;
  sh.deg_g = (N - 3 - s) / 2;
  sh.deg_f = 3 - s;
  sh.deg_h = (N - 3 + s) / 2;
  return sh;
}

SystemShape build_system(const trees::Tree& t) {
  return SystemShape::for_signature(t.degree(), t.signature());
}

std::vector<int> signatures_for_degree(int N) {
  std::vector<int> out;
  for (int s : {0, 1, 2, 3}) {
    if ((3 + s) % 2 != N % 2) continue;
    if (N - 3 - s < 0 || 3 - s < 0) continue;
    out.push_back(s);
  }
  return out;
}

namespace {

Poly monic_from(const std::vector<Complex>& coeffs, int offset, int deg, mpfr_prec_t prec) {
  std::vector<Complex> c;
  c.reserve(deg + 1);
  for (int i = 0; i < deg; ++i) c.push_back(coeffs[offset + i].at_prec(prec));
  c.push_back(Complex::one(prec));
  return Poly(std::move(c));
}

struct Factors {
  Poly q, g, f, h;
};

Factors unpack(const SystemShape& sh, const std::vector<Complex>& u, mpfr_prec_t prec) {
  Factors fa;
  int off = 0;
  fa.q = monic_from(u, off, sh.deg_q, prec);
  off += sh.deg_q;
  fa.g = monic_from(u, off, sh.deg_g, prec);
  off += sh.deg_g;
  fa.f = monic_from(u, off, sh.deg_f, prec);
  off += sh.deg_f;
  fa.h = monic_from(u, off, sh.deg_h, prec);
  return fa;
}

// Coefficients 0..N-1 of x^3 q g^2 - f h^2 - 1.
std::vector<Complex> residual_vec(const SystemShape& sh, const Factors& fa, mpfr_prec_t prec) {
  Poly t1 = Poly::monomial(3, prec) * fa.q * fa.g * fa.g;
  Poly t2 = fa.f * fa.h * fa.h;
  Poly d = t1 - t2;
  std::vector<Complex> r(sh.N, Complex::zero(prec));
  for (int k = 0; k < sh.N && k <= d.degree(); ++k) r[k] = d[k];
  r[0] -= Complex::one(prec);
  return r;
}

Real inf_norm(const std::vector<Complex>& v, mpfr_prec_t prec) {
  Real m(prec);
  for (const Complex& x : v) m = max(m, x.abs());
  return m;
}

// Writes poly coefficients (up to x^{N-1}) shifted by `shift` into column.
void fill_column(std::vector<std::vector<Complex>>& jac, int col, const Poly& p, int shift,
                 const Complex& scale, int N) {
  for (int k = 0; k <= p.degree(); ++k) {
    int row = k + shift;
    if (row < N) jac[row][col] = p[k] * scale;
  }
}

std::vector<std::vector<Complex>> jacobian(const SystemShape& sh, const Factors& fa,
                                           mpfr_prec_t prec) {
  const int N = sh.N;
  std::vector<std::vector<Complex>> jac(N, std::vector<Complex>(N, Complex::zero(prec)));
  Poly g2 = fa.g * fa.g;
  Poly x3qg = Poly::monomial(3, prec) * fa.q * fa.g;
  Poly h2 = fa.h * fa.h;
  Poly fh = fa.f * fa.h;
  Complex one = Complex::one(prec);
  Complex two = Complex::of(2L, 0L, prec);
  int col = 0;
  for (int i = 0; i < sh.deg_q; ++i) fill_column(jac, col++, g2, 3 + i, one, N);
  for (int i = 0; i < sh.deg_g; ++i) fill_column(jac, col++, x3qg, i, two, N);
  for (int i = 0; i < sh.deg_f; ++i) fill_column(jac, col++, h2, i, -one, N);
  for (int i = 0; i < sh.deg_h; ++i) fill_column(jac, col++, fh, i, -two, N);
  return jac;
}

// Damped Newton iteration on the packed coefficient vector. Returns true on
// convergence to the tolerance; `u` holds the refined coefficients.
bool newton_run(const SystemShape& sh, std::vector<Complex>& u, mpfr_prec_t prec, long tol_exp,
                int max_iters) {
  const Real tol = Real::pow2(-tol_exp, prec);
  const Real blowup = Real::pow2(20, prec);
  Factors fa = unpack(sh, u, prec);
  std::vector<Complex> r = residual_vec(sh, fa, prec);
  Real rn = inf_norm(r, prec);
  int stalls = 0;
  for (int it = 0; it < max_iters; ++it) {
    if (rn <= tol) return true;
    if (!rn.is_finite() || inf_norm(u, prec) > blowup) return false;
    std::vector<Complex> step;
    try {
      std::vector<Complex> rhs;
      rhs.reserve(r.size());
      for (const Complex& x : r) rhs.push_back(-x);
      step = solve_dense(jacobian(sh, fa, prec), rhs, -8 * static_cast<long>(prec));
    } catch (const Error&) {
      return false;  // singular Jacobian: degenerate target, abandon start
    }
    bool improved = false;
    for (int halve = 0; halve < 4 && !improved; ++halve) {
      std::vector<Complex> cand = u;
      for (size_t i = 0; i < cand.size(); ++i) cand[i] += step[i].ldexp(-halve);
      Factors fc = unpack(sh, cand, prec);
      std::vector<Complex> rc = residual_vec(sh, fc, prec);
      Real rcn = inf_norm(rc, prec);
      if (rcn < rn || (halve == 0 && it < 4)) {
        u = std::move(cand);
        fa = std::move(fc);
        r = std::move(rc);
        rn = rcn;
        improved = true;
      }
    }
    if (!improved) {
      if (++stalls >= 3) return false;
      // take the full step anyway to escape a plateau
      for (size_t i = 0; i < u.size(); ++i) u[i] += step[i];
      fa = unpack(sh, u, prec);
      r = residual_vec(sh, fa, prec);
      rn = inf_norm(r, prec);
    }
  }
  return rn <= tol;
}

std::vector<Complex> pack(const BelyiSolution& sol) {
  std::vector<Complex> u;
  auto push = [&](const Poly& p, int deg) {
    for (int i = 0; i < deg; ++i) u.push_back(p[i]);
  };
  SystemShape sh = SystemShape::for_signature(sol.N, sol.s);
  push(sol.q, sh.deg_q);
  push(sol.g, sh.deg_g);
  push(sol.f, sh.deg_f);
  push(sol.h, sh.deg_h);
  return u;
}

BelyiSolution make_solution(const SystemShape& sh, const std::vector<Complex>& u,
                            mpfr_prec_t prec) {
  Factors fa = unpack(sh, u, prec);
  BelyiSolution sol;
  sol.N = sh.N;
  sol.s = sh.s;
  sol.q = fa.q;
  sol.g = fa.g;
  sol.f = fa.f;
  sol.h = fa.h;
  sol.precision_bits = prec;
  sol.residual_norm = inf_norm(residual_vec(sh, fa, prec), prec);
  return sol;
}

}  // namespace

Poly BelyiSolution::beta() const {
  return Poly::monomial(3, precision_bits) * q * g * g;
}

Poly BelyiSolution::beta_minus_1() const { return f * h * h; }

BelyiSolution rescale(const BelyiSolution& sol, const Complex& lambda) {
  auto act = [&](const Poly& p) {
    // p(lambda x) / lambda^deg keeps the factor monic.
    Poly scaled = p.scaled_arg(lambda);
    Complex norm = lambda.pow(static_cast<unsigned long>(std::max(p.degree(), 0))).inv();
    return scaled * norm;
  };
  BelyiSolution out = sol;
  out.q = act(sol.q);
  out.g = act(sol.g);
  out.f = act(sol.f);
  out.h = act(sol.h);
  out.decoded_tree.reset();
  return out;
}

BelyiSolution conjugated(const BelyiSolution& sol) {
  auto conj_poly = [](const Poly& p) {
    std::vector<Complex> c;
    c.reserve(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) c.push_back(p[i].conj());
    return Poly(std::move(c));
  };
  BelyiSolution out = sol;
  out.q = conj_poly(sol.q);
  out.g = conj_poly(sol.g);
  out.f = conj_poly(sol.f);
  out.h = conj_poly(sol.h);
  out.decoded_tree.reset();
  return out;
}

Real gauge_distance(const BelyiSolution& a, const BelyiSolution& b) {
  mpfr_prec_t prec = std::min(a.precision_bits, b.precision_bits);
  if (a.N != b.N || a.s != b.s) return Real::pow2(30, prec);
  std::vector<Complex> ua = pack(a);
  Real best = Real::pow2(30, prec);
  for (int k = 0; k < a.N; ++k) {
    BelyiSolution rb = rescale(b, Complex::unit_root(k, a.N, prec));
    std::vector<Complex> ub = pack(rb);
    Real d(prec);
    for (size_t i = 0; i < ua.size(); ++i) d = max(d, abs_dist(ua[i], ub[i]));
    best = min(best, d);
  }
  return best;
}

namespace {

struct Vertex {
  Complex at;
  int valency;
  bool black;
};

// Follows x(tau) with beta(x(tau)) = tau from tau0 to tau1 along the real
// segment; predictor-corrector with adaptive steps.
Complex lift_segment(const Poly& beta, const Poly& dbeta, Complex x, Real tau, const Real& tau_end,
                     mpfr_prec_t prec) {
  Real dtau = Real::of(1L, prec) / 16;
  const Real dtau_floor = Real::pow2(-28, prec);
  const Real tol = Real::pow2(-static_cast<long>(prec) / 2, prec);
  while (tau < tau_end) {
    Real step = min(dtau, tau_end - tau);
    Real target = tau + step;
    auto [bv, dv] = beta.eval_with_derivative(x);
    Complex xn = x + Complex(step) / dv;
    bool ok = false;
    int used = 0;
    for (int k = 0; k < 6; ++k) {
      auto [b2, d2] = beta.eval_with_derivative(xn);
      Complex err = b2 - Complex(target);
      if (err.abs() <= tol) {
        ok = true;
        used = k;
        break;
      }
      xn = xn - err / d2;
    }
    if (!ok) {
      dtau = dtau / 2;
      if (dtau < dtau_floor) {
        throw Error("DecodeAmbiguous", "path lifting stalled (step underflow)");
      }
      continue;
    }
    x = xn;
    tau = target;
    if (used <= 2) dtau = min(dtau * 2, Real::of(1L, prec) / 8);
  }
  return x;
}

}  // namespace

trees::Tree decode_tree(const BelyiSolution& sol) {
  const mpfr_prec_t prec = sol.precision_bits;
  std::vector<Vertex> verts;
  verts.push_back({Complex::zero(prec), 3, true});
  auto add_roots = [&](const Poly& p, int valency, bool black) {
    if (p.degree() < 1) return;
    for (const auto& rc : poly_roots(p, prec)) {
      if (rc.multiplicity != 1) {
        throw Error("DecodeAmbiguous", "factor has a multiple root (degenerate solution)");
      }
      verts.push_back({rc.location, valency, black});
    }
  };
  add_roots(sol.q, 1, true);
  add_roots(sol.g, 2, true);
  add_roots(sol.f, 1, false);
  add_roots(sol.h, 2, false);

  // Separation of the combined vertex set.
  Real sep = Real::pow2(20, prec);
  for (size_t i = 0; i < verts.size(); ++i) {
    for (size_t j = i + 1; j < verts.size(); ++j) {
      sep = min(sep, abs_dist(verts[i].at, verts[j].at));
    }
  }
  if (verts.size() > 1 && sep < Real::pow2(-static_cast<long>(prec) / 8, prec)) {
    throw Error("DecodeAmbiguous", "fibers over 0 and 1 not separated");
  }

  Poly beta = sol.beta();
  Poly dbeta = beta.derivative();
  const Real tau_lo = Real::pow2(-16, prec);
  const Real tau_hi = Real::of(1L, prec) - Real::pow2(-16, prec);

  // Edges from every black vertex, one per positive-real direction of the
  // local model c (x - v)^k.
  std::vector<std::pair<int, int>> edges;  // (black index, white index)
  std::vector<std::vector<double>> center_order;  // angles of center edges
  for (size_t vi = 0; vi < verts.size(); ++vi) {
    if (!verts[vi].black) continue;
    const int k = verts[vi].valency;
    Poly local = beta.shifted(verts[vi].at);
    Complex lead = local[k];
    Real r0 = Real(prec);
    {
      Real ratio = tau_lo / lead.abs();
      mpfr_rootn_ui(r0.raw(), ratio.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
    }
    // keep the start point well inside the vertex's neighborhood
    if (verts.size() > 1) {
      Real cap = sep / 8;
      if (r0 > cap) r0 = cap;
    }
    Real base_angle = -lead.arg() / k;
    for (int j = 0; j < k; ++j) {
      Real ang = base_angle + Real::pi(prec) * (2 * j) / k;
      Real c(prec), sn(prec);
      mpfr_sin_cos(sn.raw(), c.raw(), ang.raw(), MPFR_RNDN);
      Complex x0 = verts[vi].at + Complex(c, sn) * r0;
      // settle exactly onto beta(x) = beta(x0).abs() positive real
      auto [b0, d0] = beta.eval_with_derivative(x0);
      Real t0 = b0.abs();
      for (int it = 0; it < 8; ++it) {
        auto [bv, dv] = beta.eval_with_derivative(x0);
        Complex err = bv - Complex(t0);
        if (err.abs() <= Real::pow2(-static_cast<long>(prec) / 2, prec)) break;
        x0 = x0 - err / dv;
      }
      Complex x_end = lift_segment(beta, dbeta, x0, t0, tau_hi, prec);
      // nearest white vertex
      int best = -1;
      Real best_d = Real::pow2(30, prec);
      Real second = best_d;
      for (size_t wi = 0; wi < verts.size(); ++wi) {
        if (verts[wi].black) continue;
        Real d = abs_dist(x_end, verts[wi].at);
        if (d < best_d) {
          second = best_d;
          best_d = d;
          best = static_cast<int>(wi);
        } else if (d < second) {
          second = d;
        }
      }
      if (best < 0 || !(best_d * 4 < second)) {
        throw Error("DecodeAmbiguous", "lifted path endpoint not resolvable");
      }
      edges.push_back({static_cast<int>(vi), best});
      if (vi == 0) {
        center_order.push_back({ang.to_double(), static_cast<double>(edges.size() - 1)});
      }
    }
  }

  // Incidence checks: every vertex carries exactly its valency.
  std::vector<int> inc(verts.size(), 0);
  for (auto& [b, w] : edges) {
    inc[b] += 1;
    inc[w] += 1;
  }
  for (size_t i = 0; i < verts.size(); ++i) {
    if (inc[i] != verts[i].valency) {
      throw Error("DecodeAmbiguous", "vertex valency mismatch after lifting");
    }
  }

  // Walk the three branches from the center in counterclockwise order.
  std::sort(center_order.begin(), center_order.end());
  std::vector<std::vector<int>> adj(verts.size());
  for (size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].push_back(static_cast<int>(e));
    adj[edges[e].second].push_back(static_cast<int>(e));
  }
  std::array<int, 3> lengths{};
  for (int bi = 0; bi < 3; ++bi) {
    int e = static_cast<int>(center_order[bi][1]);
    int prev = 0;  // center index
    int cur = edges[e].second;
    int len = 1;
    while (true) {
      int next_edge = -1;
      for (int cand : adj[cur]) {
        int other = edges[cand].first == cur ? edges[cand].second : edges[cand].first;
        if (other != prev) {
          next_edge = cand;
          prev = cur;
          cur = other;
          break;
        }
      }
      if (next_edge < 0) break;
      ++len;
    }
    lengths[bi] = len;
  }
  if (lengths[0] + lengths[1] + lengths[2] != sol.N) {
    throw Error("DecodeAmbiguous", "branch lengths do not sum to the degree");
  }
  return trees::Tree{lengths[0], lengths[1], lengths[2]}.canonical();
}

VerifyReport verify_solution(const BelyiSolution& sol) {
  VerifyReport rep;
  const mpfr_prec_t prec = sol.precision_bits;
  const mpfr_prec_t dprec = 2 * prec;
  SystemShape sh = SystemShape::for_signature(sol.N, sol.s);

  // 1. residual re-evaluated at doubled precision on the exact coefficients
  Factors fa{sol.q.at_prec(dprec), sol.g.at_prec(dprec), sol.f.at_prec(dprec),
             sol.h.at_prec(dprec)};
  rep.residual_recheck = inf_norm(residual_vec(sh, fa, dprec), dprec);
  Real res_tol = Real::pow2(-static_cast<long>(prec) / 2 + 16, dprec);
  if (!(rep.residual_recheck < max(res_tol, sol.residual_norm.at_prec(dprec).ldexp(4)))) {
    rep.ok = false;
    rep.failed_check = "residual";
    throw Error("VerificationFailed", "residual at doubled precision: 2^" +
                                          std::to_string(static_cast<long>(
                                              rep.residual_recheck.log2abs().to_double())));
  }

  // 2. critical values of beta lie in {0, 1}
  Poly beta = sol.beta();
  Poly dbeta = beta.derivative();
  Real defect(prec);
  for (const auto& rc : poly_roots(dbeta, prec)) {
    Complex bv = beta.eval(rc.location);
    Real d0 = bv.abs();
    Real d1 = (bv - Complex::one(prec)).abs();
    defect = max(defect, min(d0, d1));
  }
  rep.critical_value_defect = defect;
  if (!(defect < Real::pow2(-static_cast<long>(prec) / 4, prec))) {
    rep.ok = false;
    rep.failed_check = "critical_values";
    throw Error("VerificationFailed", "critical value escaped {0,1}");
  }

  // 3. beta' = N x^2 g h, the root structure the factorization forces
  Poly expect = Poly::monomial(2, prec) * sol.g * sol.h * Complex::of(sol.N, 0L, prec);
  Poly diff = dbeta - expect;
  rep.derivative_defect = diff.coeff_norm();
  if (!(rep.derivative_defect <=
        max(dbeta.coeff_norm().ldexp(-static_cast<long>(prec) / 2 + 16),
            sol.residual_norm.ldexp(8)))) {
    rep.ok = false;
    rep.failed_check = "derivative_factorization";
    throw Error("VerificationFailed", "beta' != N x^2 g h to tolerance");
  }
  return rep;
}

BelyiSolution polish(const BelyiSolution& sol, mpfr_prec_t target_bits) {
  SystemShape sh = SystemShape::for_signature(sol.N, sol.s);
  std::vector<Complex> u = pack(sol);
  for (Complex& x : u) x = x.at_prec(target_bits);
  // Drive the residual near the rounding floor so downstream recognition
  // really gets target_bits of value accuracy, not just type precision.
  if (!newton_run(sh, u, target_bits, static_cast<long>(target_bits) - 64, 64)) {
    throw Error("NonConvergence", "polish failed at target precision");
  }
  BelyiSolution out = make_solution(sh, u, target_bits);
  out.decoded_tree = sol.decoded_tree;
  return out;
}

SolveResult solve_all(int N, const SolveConfig& cfg) {
  SolveResult result;
  std::vector<trees::Tree> primitive = trees::enumerate_trees(N);
  std::map<std::array<int, 3>, bool> matched;
  for (const auto& t : primitive) matched[t.key()] = false;

  Rng rng(cfg.rng_seed + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(N));
  mpfr_prec_t prec = cfg.precision_bits;
  const long tol_exp = cfg.tolerance_exponent();
  const int batch = 16;

  auto all_matched = [&]() {
    for (const auto& [k, v] : matched) {
      if (!v) return false;
    }
    return true;
  };

  for (int attempt = 0; attempt < cfg.max_restarts && !all_matched(); ++attempt) {
    // escalate by doubling once at half budget if still incomplete
    if (attempt == cfg.max_restarts / 2 && prec < 2 * cfg.precision_bits) {
      prec = 2 * cfg.precision_bits;
      result.diagnostics.precision_escalations += 1;
    }
    for (int s : signatures_for_degree(N)) {
      bool shape_done = true;
      for (const auto& t : primitive) {
        if (t.signature() == s && !matched[t.key()]) shape_done = false;
      }
      if (shape_done) continue;
      SystemShape sh = SystemShape::for_signature(N, s);
      for (int b = 0; b < batch; ++b) {
        std::vector<Complex> u;
        u.reserve(sh.unknowns());
        for (int i = 0; i < sh.unknowns(); ++i) u.push_back(rng.in_disk(2.0, prec));
        result.diagnostics.newton_attempts += 1;
        if (!newton_run(sh, u, prec, tol_exp, cfg.newton_max_iters)) continue;
        result.diagnostics.newton_converged += 1;
        BelyiSolution sol = make_solution(sh, u, prec);
        bool dup = false;
        for (const auto& have : result.solutions) {
          if (have.s != s) continue;
          if (gauge_distance(have, sol) <
              Real::pow2(-static_cast<long>(prec) / 8, prec) *
                  max(Real::of(1L, prec), sol.q.coeff_norm() + sol.h.coeff_norm())) {
            dup = true;
            break;
          }
        }
        if (dup) {
          result.diagnostics.duplicates += 1;
          continue;
        }
        try {
          sol.decoded_tree = decode_tree(sol);
        } catch (const Error& e) {
          result.diagnostics.decode_failures += 1;
          if (std::string(e.kind()) == "DecodeAmbiguous") {
            result.diagnostics.degenerate += 1;
          }
          result.solutions.push_back(std::move(sol));
          continue;
        }
        if (sol.decoded_tree->primitive()) {
          auto it = matched.find(sol.decoded_tree->key());
          if (it != matched.end()) it->second = true;
        }
        result.solutions.push_back(std::move(sol));
      }
    }
  }

  for (const auto& [key, seen] : matched) {
    if (!seen) result.missing.push_back(trees::Tree{key[0], key[1], key[2]});
  }
  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const BelyiSolution& a, const BelyiSolution& b) {
              auto ka = a.decoded_tree ? a.decoded_tree->key() : std::array<int, 3>{99, 99, 99};
              auto kb = b.decoded_tree ? b.decoded_tree->key() : std::array<int, 3>{99, 99, 99};
              if (ka != kb) return ka < kb;
              return a.s < b.s;
            });
  return result;
}

}  // namespace lame::belyi

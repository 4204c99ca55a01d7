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

#include "lame/serialize.hpp"

namespace lame::io {

Json real_json(const Real& r) { return Json(r.str()); }

Json complex_json(const Complex& z) {
  Json j;
  j["re"] = z.re.str();
  j["im"] = z.im.str();
  j["precision_bits"] = static_cast<long>(z.prec());
  return j;
}

Json int_poly_json(const IntPoly& p) {
  Json arr = Json::array();
  for (const Int& c : p) arr.push_back(c.str());
  return arr;
}

Json tree_json(const trees::Tree& t) {
  Json j;
  j["branches"] = {t.a, t.b, t.c};
  j["degree"] = t.degree();
  j["signature"] = t.signature();
  j["order"] = t.order();
  j["primitive"] = t.primitive();
  j["real"] = t.is_real();
  j["conjugate"] = {t.conjugate().a, t.conjugate().b, t.conjugate().c};
  return j;
}

Json prediction_json(const trees::PredictionRecord& p) {
  Json j;
  j["p"] = p.p;
  j["signature"] = p.s;
  j["e"] = p.e;
  j["supersingular"] = p.supersingular;
  j["torsion_order"] = p.torsion_order;
  j["full_monodromy_order"] = p.full_monodromy_order;
  j["projective_monodromy_order"] = p.projective_monodromy_order;
  j["good_reduction_modulus"] = p.good_reduction_modulus;
  j["automorphism_factor"] = p.automorphism_factor;
  j["kind"] = "predicted";
  return j;
}

namespace {

Json poly_json(const Poly& p) {
  Json arr = Json::array();
  for (int i = 0; i <= p.degree(); ++i) arr.push_back(complex_json(p[i]));
  return arr;
}

std::string exp_str(const Real& r) {
  if (r.is_zero()) return "0";
  return "2^" + std::to_string(static_cast<long>(r.log2abs().to_double()));
}

}  // namespace

Json solution_json(const belyi::BelyiSolution& sol) {
  Json j;
  j["degree"] = sol.N;
  j["signature"] = sol.s;
  if (sol.decoded_tree) {
    j["tree"] = {sol.decoded_tree->a, sol.decoded_tree->b, sol.decoded_tree->c};
    j["primitive"] = sol.decoded_tree->primitive();
  } else {
    j["tree"] = nullptr;
    j["primitive"] = false;
  }
  j["precision_bits"] = static_cast<long>(sol.precision_bits);
  j["residual"] = exp_str(sol.residual_norm);
  j["q"] = poly_json(sol.q);
  j["g"] = poly_json(sol.g);
  j["f"] = poly_json(sol.f);
  j["h"] = poly_json(sol.h);
  return j;
}

Json model_json(const curves::EllipticModel& m) {
  Json j;
  j["g2"] = complex_json(m.g2);
  j["g3"] = complex_json(m.g3);
  j["B"] = complex_json(m.B);
  j["yB"] = complex_json(m.yB);
  j["Delta"] = complex_json(m.Delta);
  j["j"] = complex_json(m.j);
  j["j1"] = complex_json(m.j1);
  j["j2"] = complex_json(m.j2);
  j["j3"] = complex_json(m.j3);
  if (!m.recognized.empty()) {
    Json rec;
    for (const auto& [name, alg] : m.recognized) {
      Json a;
      a["min_poly"] = int_poly_json(alg.min_poly);
      a["min_poly_pretty"] = alg.poly_str();
      a["degree"] = alg.degree();
      a["height_bound_log2"] = alg.height_bound;
      a["certified_bits"] = alg.certified_bits;
      rec[name] = a;
    }
    j["recognized"] = rec;
  }
  j["kind"] = "measured";
  return j;
}

Json certification_json(const pipeline::TreeCertification& tc) {
  Json j;
  j["tree"] = tree_json(tc.tree);
  j["solution"] = solution_json(tc.solution);
  j["model"] = model_json(tc.model);
  Json tor;
  tor["order"] = tc.torsion.order;
  tor["order_2P"] = tc.torsion.order_2p;
  tor["elliptic_log_order"] = tc.torsion.log_order;
  tor["division_poly_order"] = tc.torsion.divpoly_order;
  tor["alpha"] = tc.torsion.alpha.str(20);
  tor["beta"] = tc.torsion.beta.str(20);
  tor["kind"] = "measured";
  j["torsion"] = tor;
  Json th;
  th["abs_theta_at_P"] = exp_str(tc.theta_abs);
  th["scan_found_marked_point"] = tc.scan_found_marked;
  th["scan_zero_pairs"] = tc.scan_zero_pairs;
  th["kind"] = "measured";
  j["theta"] = th;
  Json mon;
  mon["projective_group_order"] = tc.monodromy.projective_group_order;
  mon["linear_group_order"] = tc.monodromy.linear_group_order;
  mon["dihedral"] = tc.monodromy.dihedral;
  mon["cyclic_order"] = tc.monodromy.cyclic_order;
  mon["separation_margin"] = exp_str(tc.monodromy.separation_margin);
  mon["dedup_threshold"] = exp_str(tc.monodromy.dedup_threshold);
  mon["reversal_residual"] = exp_str(tc.monodromy.reversal_residual);
  mon["relation_residual"] = exp_str(tc.monodromy.relation_residual);
  mon["basepoint"] = complex_json(tc.monodromy.basepoint);
  Json mats = Json::array();
  for (const auto& m : tc.monodromy.det_normalized) {
    mats.push_back(Json::array(
        {complex_json(m[0]), complex_json(m[1]), complex_json(m[2]), complex_json(m[3])}));
  }
  mon["det1_lifts"] = mats;
  mon["kind"] = "measured";
  j["monodromy"] = mon;
  if (tc.prediction.p > 0) j["prediction"] = prediction_json(tc.prediction);
  if (tc.reduction.p > 0) {
    Json rr;
    rr["p"] = tc.reduction.p;
    rr["exact"] = tc.reduction.exact_ok;
    if (!tc.reduction.exact_ok) {
      rr["degraded"] = tc.reduction.degrade_reason;
    } else {
      rr["e_p"] = tc.reduction.e_p;
      rr["f_p"] = tc.reduction.f_p;
      rr["v_j"] = tc.reduction.v_j;
      rr["v_j_minus_1728"] = tc.reduction.v_j1728;
      rr["v_delta"] = tc.reduction.v_delta;
      rr["v_delta_mod6"] = tc.reduction.v_delta_mod6;
      rr["potentially_good"] = tc.reduction.potentially_good;
      rr["good_reduction"] = tc.reduction.good_reduction;
      rr["predicted_good"] = tc.reduction.predicted_good;
      rr["thm2_e_divides_ep"] = tc.reduction.thm2_divides;
      if (tc.reduction.v_delta_formula) rr["v_delta_formula"] = *tc.reduction.v_delta_formula;
      rr["kind"] = "measured";
    }
    j["reduction"] = rr;
  }
  Json checks = Json::array();
  for (const auto& c : tc.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["measured"] = c.measured;
    cj["predicted"] = c.predicted;
    cj["pass"] = c.pass;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["pass"] = tc.pass;
  if (!tc.failure.empty()) j["failure"] = tc.failure;
  return j;
}

Json trees_payload(int N) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "trees";
  j["degree"] = N;
  Json rows = Json::array();
  for (const auto& t : trees::enumerate_trees_all(N)) {
    Json row = tree_json(t);
    if (t.primitive() && trees::is_prime(N) && N >= 3) {
      row["prediction"] = prediction_json(trees::predict(N, t.signature()));
    }
    if (!t.primitive()) {
      row["note"] = "non-primitive (order " + std::to_string(t.order()) +
                    " < degree): excluded from the dihedral correspondence";
    }
    rows.push_back(row);
  }
  j["trees"] = rows;
  if (trees::is_prime(N) && N > 3) {
    trees::ClassCounts cc = trees::count_classes(N);
    Json counts;
    counts["total"] = cc.total;
    counts["signature_0"] = cc.sig0;
    counts["signature_2"] = cc.sig2;
    counts["kind"] = "predicted";
    j["class_counts"] = counts;
  }
  return j;
}

Json solve_payload(const belyi::SolveResult& result, int N, mpfr_prec_t bits, uint64_t seed) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "solve";
  j["degree"] = N;
  j["precision_bits"] = static_cast<long>(bits);
  j["seed"] = seed;
  j["solver_version"] = kSolverVersion;
  j["complete"] = result.complete();
  Json sols = Json::array();
  for (const auto& s : result.solutions) sols.push_back(solution_json(s));
  j["solutions"] = sols;
  Json missing = Json::array();
  for (const auto& t : result.missing) missing.push_back({t.a, t.b, t.c});
  j["missing"] = missing;
  Json d;
  d["newton_attempts"] = result.diagnostics.newton_attempts;
  d["newton_converged"] = result.diagnostics.newton_converged;
  d["duplicates"] = result.diagnostics.duplicates;
  d["decode_failures"] = result.diagnostics.decode_failures;
  d["precision_escalations"] = result.diagnostics.precision_escalations;
  j["diagnostics"] = d;
  return j;
}

Json certify_payload(const pipeline::DegreeReport& rep) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = "certify";
  j["degree"] = rep.N;
  j["prime_degree"] = rep.prime_degree;
  j["precision_bits"] = static_cast<long>(rep.precision_bits);
  j["seed"] = rep.seed;
  j["solver_version"] = kSolverVersion;
  j["complete"] = rep.complete;
  j["all_pass"] = rep.all_pass;
  Json certs = Json::array();
  for (const auto& tc : rep.certifications) certs.push_back(certification_json(tc));
  j["certifications"] = certs;
  Json orbits = Json::array();
  for (const auto& orb : rep.orbits.orbits) {
    Json oj;
    Json members = Json::array();
    for (const auto& t : orb.members) members.push_back({t.a, t.b, t.c});
    oj["members"] = members;
    oj["j_min_poly"] = int_poly_json(orb.j_min_poly);
    oj["field_degree"] = orb.field_degree;
    oj["min_poly_disc"] = orb.min_poly_disc.str();
    Json fac;
    for (const auto& [p, e] : orb.disc_factorization) fac[p.str()] = e;
    oj["disc_factorization"] = fac;
    if (orb.disc_cofactor != 1) oj["disc_unfactored_cofactor"] = orb.disc_cofactor.str();
    Json ram = Json::array();
    for (long p : orb.ramified_primes) ram.push_back(p);
    oj["ramified_primes"] = ram;
    if (!orb.note.empty()) oj["note"] = orb.note;
    oj["kind"] = "measured";
    orbits.push_back(oj);
  }
  j["orbits"] = orbits;
  Json ochecks = Json::array();
  for (const auto& c : rep.orbit_checks) {
    Json cj;
    cj["name"] = c.name;
    cj["measured"] = c.measured;
    cj["predicted"] = c.predicted;
    cj["pass"] = c.pass;
    ochecks.push_back(cj);
  }
  j["orbit_checks"] = ochecks;
  Json notes = Json::array();
  for (const auto& n : rep.annotations) {
    Json nj;
    nj["text"] = n;
    nj["kind"] = "annotation";
    notes.push_back(nj);
  }
  j["annotations"] = notes;
  Json missing = Json::array();
  for (const auto& t : rep.missing) missing.push_back({t.a, t.b, t.c});
  j["missing"] = missing;
  return j;
}

}  // namespace lame::io

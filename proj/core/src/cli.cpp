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

#include "lame/cli.hpp"

#include <ostream>
#include <sstream>

#include "lame/pipeline.hpp"

namespace lame::cli {

namespace {

pipeline::PipelineConfig to_pipeline(const RunConfig& cfg) {
  pipeline::PipelineConfig pc;
  pc.precision_bits = cfg.precision_bits;
  pc.max_restarts = cfg.max_restarts;
  pc.rng_seed = cfg.rng_seed;
  return pc;
}

void emit(const io::Json& payload, const RunConfig& cfg, std::ostream& out,
          const std::string& markdown) {
  if (cfg.output_format == "markdown" && !markdown.empty()) {
    out << markdown;
  } else {
    out << payload.dump(1) << "\n";
  }
}

std::string trees_markdown(const io::Json& payload) {
  std::ostringstream md;
  md << "# Trees of degree " << payload["degree"] << "\n\n";
  md << "| tree | signature | order | primitive | real | conjugate | e (P) |\n";
  md << "|---|---|---|---|---|---|---|\n";
  for (const auto& row : payload["trees"]) {
    auto br = row["branches"];
    md << "| [" << br[0] << "," << br[1] << "," << br[2] << "] | " << row["signature"] << " | "
       << row["order"] << " | " << (row["primitive"].get<bool>() ? "yes" : "no") << " | "
       << (row["real"].get<bool>() ? "yes" : "no") << " | [" << row["conjugate"][0] << ","
       << row["conjugate"][1] << "," << row["conjugate"][2] << "] | ";
    if (row.contains("prediction")) {
      md << row["prediction"]["e"];
    } else {
      md << "-";
    }
    md << " |\n";
  }
  if (payload.contains("class_counts")) {
    const auto& cc = payload["class_counts"];
    md << "\nClass counts (P): total " << cc["total"] << ", signature 0: " << cc["signature_0"]
       << ", signature 2: " << cc["signature_2"] << "\n";
  }
  md << "\nLegend: (M) measured, (P) predicted, (A) paper annotation.\n";
  return md.str();
}

std::string certify_markdown(const io::Json& payload) {
  std::ostringstream md;
  md << "# Certification for degree " << payload["degree"] << "\n\n";
  md << "| tree | sig | torsion (M) | torsion (P) | ord 2P (M) | abs theta(P) (M) | proj (M/P) | "
        "linear (M/P) | field deg (M) | v(Delta) mod 6 (M) | good red (M/P) | verdict |\n";
  md << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& c : payload["certifications"]) {
    auto t = c["tree"]["branches"];
    md << "| [" << t[0] << "," << t[1] << "," << t[2] << "] | " << c["tree"]["signature"] << " | ";
    md << c["torsion"]["order"] << " | ";
    md << (c.contains("prediction") ? c["prediction"]["torsion_order"].dump() : "-") << " | ";
    md << c["torsion"]["order_2P"] << " | ";
    md << c["theta"]["abs_theta_at_P"].get<std::string>() << " | ";
    md << c["monodromy"]["projective_group_order"] << "/"
       << (c.contains("prediction") ? c["prediction"]["projective_monodromy_order"].dump() : "-")
       << " | ";
    md << c["monodromy"]["linear_group_order"] << "/"
       << (c.contains("prediction") ? c["prediction"]["full_monodromy_order"].dump() : "-")
       << " | ";
    if (c["model"].contains("recognized") && c["model"]["recognized"].contains("j")) {
      md << c["model"]["recognized"]["j"]["degree"];
    } else {
      md << "?";
    }
    md << " | ";
    if (c.contains("reduction") && c["reduction"]["exact"].get<bool>()) {
      md << c["reduction"]["v_delta_mod6"] << " | " << (c["reduction"]["good_reduction"].get<bool>() ? "yes" : "no")
         << "/" << (c["reduction"]["predicted_good"].get<bool>() ? "yes" : "no");
    } else {
      md << "- | -";
    }
    md << " | " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << " |\n";
  }
  md << "\n## Orbits\n\n";
  for (const auto& orb : payload["orbits"]) {
    md << "- members:";
    for (const auto& m : orb["members"]) {
      md << " [" << m[0] << "," << m[1] << "," << m[2] << "]";
    }
    md << "  field degree (M): " << orb["field_degree"] << ", disc factor (M): ";
    for (auto it = orb["disc_factorization"].begin(); it != orb["disc_factorization"].end(); ++it) {
      md << it.key() << "^" << it.value().dump() << " ";
    }
    md << "\n";
  }
  if (!payload["annotations"].empty()) {
    md << "\n## Annotations (A)\n\n";
    for (const auto& a : payload["annotations"]) {
      md << "- " << a["text"].get<std::string>() << "\n";
    }
  }
  md << "\nLegend: (M) measured, (P) predicted, (A) paper annotation.\n";
  return md.str();
}

}  // namespace

const std::vector<TableRow>& ramification_table() {
  static const std::vector<TableRow> rows = {
      {{1, 9}, 0, "(p+1)/2"},  {{1, 5, 9}, 2, "(p-1)/4"}, {{3, 7}, 0, "(p+1)/4"},
      {{3, 7, 11}, 2, "(p-1)/2"}, {{5}, 0, "(p+1)/6"},    {{11}, 0, "(p+1)/12"},
  };
  return rows;
}

long TableRow::eval(long p) const {
  if (formula == "(p+1)/2") return (p + 1) / 2;
  if (formula == "(p-1)/4") return (p - 1) / 4;
  if (formula == "(p+1)/4") return (p + 1) / 4;
  if (formula == "(p-1)/2") return (p - 1) / 2;
  if (formula == "(p+1)/6") return (p + 1) / 6;
  return (p + 1) / 12;
}

bool TableRow::applies(long p) const {
  for (int r : residues) {
    if (p % 12 == r) return true;
  }
  return false;
}

int run_trees(int N, const RunConfig& cfg, std::ostream& out) {
  io::Json payload = io::trees_payload(N);
  // Cross-check the census against the closed-form counts.
  if (trees::is_prime(N) && N > 3) {
    trees::ClassCounts cc = trees::count_classes(N);
    long total = 0, s0 = 0, s2 = 0;
    for (const auto& t : trees::enumerate_trees(N)) {
      ++total;
      if (t.signature() == 0) ++s0;
      if (t.signature() == 2) ++s2;
    }
    if (total != cc.total || s0 != cc.sig0 || s2 != cc.sig2) {
      out << "census does not match the closed-form counts\n";
      return kExitInconsistent;
    }
  }
  emit(payload, cfg, out, trees_markdown(payload));
  return kExitOk;
}

int run_solve(int N, const RunConfig& cfg, std::ostream& out) {
  io::Cache cache(cfg.cache_dir);
  if (!cfg.no_cache) {
    if (auto hit = cache.load("solve", N, cfg.precision_bits, cfg.rng_seed)) {
      emit(*hit, cfg, out, "");
      return (*hit)["complete"].get<bool>() ? kExitOk : kExitIncomplete;
    }
  }
  belyi::SolveResult result = pipeline::solve_degree(N, to_pipeline(cfg));
  for (const auto& sol : result.solutions) {
    if (!sol.primitive()) continue;
    belyi::verify_solution(sol);  // throws on a bad certificate
  }
  io::Json payload = io::solve_payload(result, N, cfg.precision_bits, cfg.rng_seed);
  if (!cfg.no_cache) cache.store("solve", N, cfg.precision_bits, cfg.rng_seed, payload);
  emit(payload, cfg, out, "");
  if (!result.complete()) {
    return kExitIncomplete;
  }
  return kExitOk;
}

int run_certify(int N, const RunConfig& cfg, std::ostream& out) {
  io::Cache cache(cfg.cache_dir);
  io::Json payload;
  if (!cfg.no_cache) {
    if (auto hit = cache.load("certify", N, cfg.precision_bits, cfg.rng_seed)) {
      payload = *hit;
    }
  }
  if (payload.is_null()) {
    pipeline::DegreeReport rep = pipeline::certify_degree(N, to_pipeline(cfg));
    payload = io::certify_payload(rep);
    if (!cfg.no_cache) cache.store("certify", N, cfg.precision_bits, cfg.rng_seed, payload);
  }
  emit(payload, cfg, out, certify_markdown(payload));
  if (!payload["complete"].get<bool>()) return kExitIncomplete;
  if (!payload["all_pass"].get<bool>()) return kExitContradiction;
  return kExitOk;
}

int run_report(long p, const RunConfig& cfg, std::ostream& out) {
  std::ostringstream md;
  md << "# Dihedral Lame operators, projective monodromy order " << 2 * p << " (p = " << p
     << ")\n\n";
  bool prime = trees::is_prime(p);
  if (prime && p > 3) {
    trees::ClassCounts cc = trees::count_classes(p);
    md << "Equivalence classes (P): " << cc.total << " total = " << cc.sig0
       << " of signature 0 + " << cc.sig2 << " of signature 2.\n\n";
  }
  md << "## Ramification bound e (P)\n\n";
  md << "| p mod 12 | signature | formula | e at p = " << p << " |\n|---|---|---|---|\n";
  int shown = 0;
  for (const auto& row : ramification_table()) {
    std::string residues;
    for (size_t i = 0; i < row.residues.size(); ++i) {
      residues += (i ? "," : "") + std::to_string(row.residues[i]);
    }
    md << "| " << residues << " | " << row.signature << " | " << row.formula << " | ";
    if (prime && p > 3 && row.applies(p)) {
      long e_table = row.eval(p);
      long e_predict = trees::predict(p, row.signature).e;
      if (e_table != e_predict) {
        out << "table row disagrees with the gcd formula\n";
        return kExitInconsistent;
      }
      md << e_table;
      ++shown;
    } else {
      md << "-";
    }
    md << " |\n";
  }
  if (prime && p > 3 && shown != 2) {
    out << "expected exactly two applicable table rows\n";
    return kExitInconsistent;
  }
  md << "\nGood-reduction modulus (p+1-s)/2 (P): s=0: " << (p + 1) / 2 << ", s=2: " << (p - 1) / 2
     << " (divides e_p iff the curve has good reduction above p).\n";

  // Measured matrix from the certify cache, when present.
  io::Cache cache(cfg.cache_dir);
  if (!cfg.no_cache && p >= 3 && p < (1 << 20)) {
    if (auto hit = cache.load("certify", static_cast<int>(p), cfg.precision_bits, cfg.rng_seed)) {
      md << "\n" << certify_markdown(*hit);
    } else {
      md << "\n(no certified data cached for this configuration; run `certify --degree "
         << p << "` first)\n";
    }
  }
  out << md.str();
  return kExitOk;
}

}  // namespace lame::cli

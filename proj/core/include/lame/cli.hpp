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

#include <iosfwd>
#include <string>

#include "lame/cache.hpp"

namespace lame::cli {

/// Exit codes shared by every command, scriptable by the acceptance suite:
/// 0 success, 2 combinatorial inconsistency, 3 solver incompleteness,
/// 4 measured value contradicts a prediction.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 2;
inline constexpr int kExitIncomplete = 3;
inline constexpr int kExitContradiction = 4;

struct RunConfig {
  mpfr_prec_t precision_bits = 256;
  int max_restarts = 64;
  uint64_t rng_seed = 0;
  std::string cache_dir;               // empty: $LAME_CACHE_DIR, else .lame-cache
  std::string output_format = "json";  // json | markdown
  bool no_cache = false;
};

int run_trees(int N, const RunConfig& cfg, std::ostream& out);
int run_solve(int N, const RunConfig& cfg, std::ostream& out);
int run_certify(int N, const RunConfig& cfg, std::ostream& out);
int run_report(long p, const RunConfig& cfg, std::ostream& out);

/// The six rows of the ramification-bound table (residues of p mod 12,
/// signature, closed form of e). Exposed for tests and the report command.
struct TableRow {
  std::vector<int> residues;
  int signature;
  std::string formula;
  long eval(long p) const;
  bool applies(long p) const;
};
const std::vector<TableRow>& ramification_table();

}  // namespace lame::cli

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

#include <optional>
#include <string>

#include "lame/serialize.hpp"

namespace lame::io {

/// On-disk cache of solved/certified degrees. Entries are immutable once
/// written; writes go through a temp file and an atomic rename; a checksum
/// over the canonical payload dump is validated on read, and any mismatch
/// reads as a miss (recompute, never crash).
class Cache {
 public:
  /// dir empty: resolve from LAME_CACHE_DIR, else ".lame-cache".
  explicit Cache(std::string dir);

  const std::string& dir() const { return dir_; }

  std::string entry_path(const std::string& command, int N, mpfr_prec_t bits,
                         uint64_t seed) const;

  std::optional<Json> load(const std::string& command, int N, mpfr_prec_t bits,
                           uint64_t seed) const;
  void store(const std::string& command, int N, mpfr_prec_t bits, uint64_t seed,
             const Json& payload) const;

 private:
  std::string dir_;
};

uint64_t fnv1a64(const std::string& bytes);

}  // namespace lame::io

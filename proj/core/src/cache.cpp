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

#include "lame/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lame::io {

namespace fs = std::filesystem;

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Cache::Cache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) {
    const char* env = std::getenv("LAME_CACHE_DIR");
    dir_ = env && *env ? env : ".lame-cache";
  }
}

std::string Cache::entry_path(const std::string& command, int N, mpfr_prec_t bits,
                              uint64_t seed) const {
  std::ostringstream os;
  os << command << "_N" << N << "_p" << bits << "_s" << seed << "_v" << kSolverVersion << ".json";
  return (fs::path(dir_) / os.str()).string();
}

std::optional<Json> Cache::load(const std::string& command, int N, mpfr_prec_t bits,
                                uint64_t seed) const {
  std::string path = entry_path(command, N, bits, seed);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  Json entry;
  try {
    in >> entry;
  } catch (...) {
    return std::nullopt;  // corrupted: silent miss, caller recomputes
  }
  if (!entry.contains("checksum") || !entry.contains("payload")) return std::nullopt;
  std::string expect = entry["checksum"].get<std::string>();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(entry["payload"].dump())));
  if (expect != buf) return std::nullopt;
  return entry["payload"];
}

void Cache::store(const std::string& command, int N, mpfr_prec_t bits, uint64_t seed,
                  const Json& payload) const {
  fs::create_directories(dir_);
  Json entry;
  entry["schema"] = kSchema;
  entry["kind"] = "cache-entry";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(payload.dump())));
  entry["checksum"] = buf;
  entry["payload"] = payload;
  std::string path = entry_path(command, N, bits, seed);
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << entry.dump(1) << "\n";
  }
  fs::rename(tmp, path);
}

}  // namespace lame::io

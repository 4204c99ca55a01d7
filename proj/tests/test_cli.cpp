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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lame/cli.hpp"

using namespace lame;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("lame-test-" + std::to_string(::getpid()) + "-" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

cli::RunConfig test_config(const TempDir& dir) {
  cli::RunConfig cfg;
  cfg.precision_bits = 192;
  cfg.rng_seed = 3;
  cfg.cache_dir = dir.path.string();
  return cfg;
}

}  // namespace

TEST_CASE("trees command: json payload and exit code") {
  TempDir dir;
  std::ostringstream out;
  int rc = cli::run_trees(7, test_config(dir), out);
  CHECK(rc == cli::kExitOk);
  auto j = io::Json::parse(out.str());
  CHECK(j["schema"] == "lame-dessins/1");
  CHECK(j["trees"].size() == 5);
  CHECK(j["class_counts"]["total"] == 5);
  // every numeric cell carries a kind tag on its parent object
  for (const auto& row : j["trees"]) {
    CHECK(row.contains("prediction"));
    CHECK(row["prediction"]["kind"] == "predicted");
  }
}

TEST_CASE("trees command: degree 6 excludes [2,2,2] with a note") {
  TempDir dir;
  std::ostringstream out;
  int rc = cli::run_trees(6, test_config(dir), out);
  CHECK(rc == cli::kExitOk);
  auto j = io::Json::parse(out.str());
  int rows = 0, noted = 0;
  for (const auto& row : j["trees"]) {
    if (row["primitive"].get<bool>()) ++rows;
    if (row.contains("note")) ++noted;
  }
  CHECK(rows == 3);
  CHECK(noted == 1);
}

TEST_CASE("solve command: exact cube solution, cached determinism") {
  TempDir dir;
  auto cfg = test_config(dir);
  std::ostringstream out1, out2;
  int rc1 = cli::run_solve(3, cfg, out1);
  CHECK(rc1 == cli::kExitOk);
  // second invocation reads the cache and must give identical bytes
  int rc2 = cli::run_solve(3, cfg, out2);
  CHECK(rc2 == cli::kExitOk);
  CHECK(out1.str() == out2.str());
  auto j = io::Json::parse(out1.str());
  CHECK(j["complete"] == true);
  CHECK(j["solutions"].size() == 1);
  // beta = x^3: f has integer coefficients -1, 0, 0, 1
  auto f = j["solutions"][0]["f"];
  REQUIRE(f.size() == 4);
  CHECK(f[0]["re"].get<std::string>().substr(0, 4) == "-0.1");
  CHECK(f[1]["re"] == "0");
  CHECK(f[2]["re"] == "0");
}

TEST_CASE("cache: corrupted checksum falls back to recompute") {
  TempDir dir;
  auto cfg = test_config(dir);
  std::ostringstream out1;
  CHECK(cli::run_solve(3, cfg, out1) == cli::kExitOk);
  io::Cache cache(cfg.cache_dir);
  std::string path = cache.entry_path("solve", 3, cfg.precision_bits, cfg.rng_seed);
  REQUIRE(fs::exists(path));
  {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    std::ofstream f(path, std::ios::trunc);
    f << bytes.substr(0, bytes.size() / 2);  // torn write
  }
  CHECK_FALSE(cache.load("solve", 3, cfg.precision_bits, cfg.rng_seed).has_value());
  std::ostringstream out2;
  CHECK(cli::run_solve(3, cfg, out2) == cli::kExitOk);
  CHECK(out1.str() == out2.str());
}

TEST_CASE("cache: tampered payload fails the checksum") {
  TempDir dir;
  auto cfg = test_config(dir);
  std::ostringstream out;
  CHECK(cli::run_solve(3, cfg, out) == cli::kExitOk);
  io::Cache cache(cfg.cache_dir);
  std::string path = cache.entry_path("solve", 3, cfg.precision_bits, cfg.rng_seed);
  std::ifstream in(path);
  io::Json entry;
  in >> entry;
  in.close();
  entry["payload"]["degree"] = 4;  // tamper without fixing the checksum
  std::ofstream outf(path, std::ios::trunc);
  outf << entry.dump(1);
  outf.close();
  CHECK_FALSE(cache.load("solve", 3, cfg.precision_bits, cfg.rng_seed).has_value());
}

TEST_CASE("fnv1a64 reference value") {
  // standard FNV-1a test vector
  CHECK(io::fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(io::fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("report command: table rows for p = 7, 11, 13") {
  TempDir dir;
  auto cfg = test_config(dir);
  std::ostringstream r7;
  CHECK(cli::run_report(7, cfg, r7) == cli::kExitOk);
  CHECK(r7.str().find("| 3,7 | 0 | (p+1)/4 | 2 |") != std::string::npos);
  CHECK(r7.str().find("| 3,7,11 | 2 | (p-1)/2 | 3 |") != std::string::npos);
  std::ostringstream r13;
  CHECK(cli::run_report(13, cfg, r13) == cli::kExitOk);
  CHECK(r13.str().find("| 1,9 | 0 | (p+1)/2 | 7 |") != std::string::npos);
  std::ostringstream r11;
  CHECK(cli::run_report(11, cfg, r11) == cli::kExitOk);
  CHECK(r11.str().find("| 11 | 0 | (p+1)/12 | 1 |") != std::string::npos);
}

TEST_CASE("solve command json is deterministic without cache") {
  TempDir dir;
  auto cfg = test_config(dir);
  cfg.no_cache = true;
  std::ostringstream out1, out2;
  CHECK(cli::run_solve(3, cfg, out1) == cli::kExitOk);
  CHECK(cli::run_solve(3, cfg, out2) == cli::kExitOk);
  CHECK(out1.str() == out2.str());
}

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

#include <json.hpp>

#include "lame/pipeline.hpp"

namespace lame::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "lame-dessins/1";
inline constexpr const char* kSolverVersion = "1";

/// Multiprecision values serialize as decimal strings with an explicit
/// precision field; JSON numbers would silently truncate to doubles.
Json complex_json(const Complex& z);
Json real_json(const Real& r);
Json int_poly_json(const IntPoly& p);
Json tree_json(const trees::Tree& t);
Json prediction_json(const trees::PredictionRecord& p);

Json solution_json(const belyi::BelyiSolution& sol);
Json model_json(const curves::EllipticModel& m);
Json certification_json(const pipeline::TreeCertification& tc);

/// Whole-command payloads (cacheable units).
Json trees_payload(int N);
Json solve_payload(const belyi::SolveResult& result, int N, mpfr_prec_t bits, uint64_t seed);
Json certify_payload(const pipeline::DegreeReport& rep);

}  // namespace lame::io

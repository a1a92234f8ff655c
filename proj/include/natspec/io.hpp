// Copyright 2026 The natspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON and CSV serialization.
//
// Measure JSON:
//   {"basis": [{"name": str, "value": float}],
//    "atoms": [{"angle": {"turns": "p/q", "coeffs": {"<name>": int}}, "re": float, "im": float}],
//    "ac":    [{"k": int, "re": float, "im": float}]}
// Missing "atoms"/"ac" mean empty parts; missing coefficients are zero.

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "natspec/decomposition.hpp"
#include "natspec/measure.hpp"
#include "natspec/spectrum.hpp"

namespace natspec::io {

using Json = nlohmann::ordered_json;

Json angle_to_json(const Angle& a, const GeneratorBasis& basis);
/// Throws InvalidArgument on unknown generator names or malformed turns.
Angle angle_from_json(const Json& j, const GeneratorBasis& basis);

Json basis_to_json(const GeneratorBasis& basis);
GeneratorBasis basis_from_json(const Json& j);

Json measure_to_json(const MixedMeasure& mu);
/// Throws InvalidArgument on any schema violation.
MixedMeasure measure_from_json(const Json& j);

/// Reads and parses a measure file; parse and schema errors become InvalidArgument.
MixedMeasure read_measure(const std::filesystem::path& path);

Json fekete_to_json(const FeketeReport& r);
Json report_to_json(const VerificationReport& r);
Json decomposition_to_json(const DecompositionResult& r, const DecompositionOptions& opts);

/// Pretty JSON with a "timestamp" member placed first, alone on the second
/// line, so that reruns differ on that line only.
std::string dump_with_timestamp(const Json& body, const std::string& timestamp);
/// Current UTC time, ISO 8601.
std::string utc_timestamp();

/// "re,im" rows with a header line.
std::string points_to_csv(std::span<const Complex> points);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal string that reads back as the same double.
std::string format_double(double v);

}  // namespace natspec::io

// Copyright 2026 The povmf Authors
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

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "povmf/filtering.hpp"
#include "povmf/instruments.hpp"
#include "povmf/quantum_objects.hpp"

namespace povmf {

using Json = nlohmann::json;

// Matrices are written as a flat row-major list of [re, im] pairs. Readers
// also accept a bare number for a real entry.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Index dim, const std::string& what);

// { "dim": d, "labels": [...], "numeric_values": [...]?, "elements": [matrix, ...] }
// Readers also accept the shorthand { "qubit_phase": M }.
Json povm_to_json(const Povm& povm);
Povm povm_from_json(const Json& j, double tol = kDefaultTol);

// { "dim": d, "labels": [...], "kraus": { label: [matrix, ...] } }
Json instrument_to_json(const Instrument& ins);
Instrument instrument_from_json(const Json& j, double tol = kDefaultTol);

/// Chain model plus the optional run parameters a scenario file may carry.
struct Scenario {
    ChainModel model;
    std::optional<std::uint64_t> seed = std::nullopt;
    std::optional<std::size_t> steps = std::nullopt;
    std::optional<std::size_t> trajectories = std::nullopt;
    std::optional<double> tol = std::nullopt;
};

// { "sys_dim", "probe_dim", "horizon", "initial_state", "probe_state",
//   "unitaries": matrix or [matrix, ...], "povms": povm or [povm, ...],
//   "seed"?, "steps"?, "trajectories"?, "tol"? }
// "probe_state" is likewise a single matrix or a per-step list. Errors name
// the offending field.
Scenario scenario_from_json(const Json& j);
Json model_to_json(const ChainModel& model);

/// Parses text as JSON, mapping syntax errors to ParseError.
Json parse_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace povmf

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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "povmf/filtering.hpp"

namespace povmf {

struct SimulationOptions {
    std::uint64_t seed = 0;
    std::size_t steps = 0;
    std::size_t trajectories = 1;
    /// Worker threads; 0 picks the hardware concurrency. Output does not
    /// depend on this value.
    unsigned threads = 0;
    double tol = kDefaultTol;
};

/// Trajectory k draws from the random stream (seed, k).
std::vector<Trajectory> simulate(const ChainModel& model, const SimulationOptions& options);

/// Columns: step, outcome_label, outcome_probability, log_likelihood, then the
/// state entries row-major with real and imaginary parts interleaved. Row 0
/// is the initial state (empty label, probability 1).
std::string trajectory_csv(const ChainModel& model, const Trajectory& trajectory);

/// Final states and log-likelihoods of a batch, as pretty-printed JSON.
std::string simulation_summary_json(const ChainModel& model, const SimulationOptions& options,
                                    const std::vector<Trajectory>& trajectories);

}  // namespace povmf

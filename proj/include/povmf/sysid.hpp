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
#include <memory>
#include <string_view>
#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/quantum_objects.hpp"

namespace povmf {

/// Tomographically complete pure states: |j>, then for each j < k the pair
/// (|j> + |k>)/sqrt2 and (|j> + i|k>)/sqrt2. dim^2 states in total.
std::vector<Vector> probe_basis(Index dim);

/// Source of empirical outcome frequencies for the probe states. `probe`
/// indexes probe_basis(dim); the result has one frequency per outcome.
class ShotSampler {
public:
    virtual ~ShotSampler() = default;
    virtual std::vector<double> frequencies(const Vector& state, std::size_t probe) = 0;
    /// Total shots consumed so far; 0 for exact samplers.
    virtual std::uint64_t shots_used() const = 0;
};

/// Returns exact Born-rule probabilities.
class ExactSampler final : public ShotSampler {
public:
    explicit ExactSampler(Povm target) : target_(std::move(target)) {}
    std::vector<double> frequencies(const Vector& state, std::size_t probe) override;
    std::uint64_t shots_used() const override { return 0; }

private:
    Povm target_;
};

/// Draws `shots` outcomes per probe state; probe k uses the random stream
/// (seed, k), so results do not depend on query order.
class SimulatedSampler final : public ShotSampler {
public:
    SimulatedSampler(Povm target, std::uint64_t shots, std::uint64_t seed);
    std::vector<double> frequencies(const Vector& state, std::size_t probe) override;
    std::uint64_t shots_used() const override { return used_; }

private:
    Povm target_;
    std::uint64_t shots_;
    std::uint64_t seed_;
    std::uint64_t used_ = 0;
};

/// Replays recorded counts, indexed [probe][outcome].
class RecordedSampler final : public ShotSampler {
public:
    explicit RecordedSampler(std::vector<std::vector<std::uint64_t>> counts);
    std::vector<double> frequencies(const Vector& state, std::size_t probe) override;
    std::uint64_t shots_used() const override { return total_; }

private:
    std::vector<std::vector<std::uint64_t>> counts_;
    std::uint64_t total_ = 0;
};

/// Parses "probe_state_index,outcome_label,count" rows (an optional header
/// line is skipped). Throws UnknownLabel for labels outside `space` and
/// ParseError for malformed rows or probes without data.
RecordedSampler parse_recorded_counts(std::string_view csv, const OutcomeSpace& space, Index dim);

struct EstimatedPovm {
    std::vector<Matrix> raw;  // polarization estimates before projection
    Povm projected;
    std::uint64_t shots_used = 0;
    /// Largest Frobenius distance between a raw and a projected element.
    double residual = 0.0;
};

/// Polarization estimate of every element followed by projection onto valid
/// POVMs: eigenvalues clipped at zero, then B_i <- S^{-1/2} B_i S^{-1/2} with
/// S = sum_i B_i. A raw family that is already valid is returned unchanged.
EstimatedPovm estimate_povm(ShotSampler& sampler, const OutcomeSpace& space, Index dim, double tol = kDefaultTol);

/// Max over outcomes of the Frobenius distance between elements.
double povm_distance(const Povm& a, const Povm& b);

}  // namespace povmf

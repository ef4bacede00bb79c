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
#include <span>
#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/quantum_objects.hpp"
#include "povmf/rng.hpp"

namespace povmf {

/// Repeated-interaction model: a system couples through U_n to the n-th
/// fresh probe subsystem (prepared in rho^P_n), which is then measured with
/// the POVM B_n. Per-step lists hold either one entry (used for every step)
/// or exactly `horizon` entries. Steps are numbered from 1.
class ChainModel {
public:
    /// Throws DimensionMismatch, NotUnitary or InvalidArgument.
    static ChainModel create(DensityOperator initial_state, std::vector<DensityOperator> probe_states,
                             std::vector<Matrix> unitaries, std::vector<Povm> povms, std::size_t horizon,
                             double tol = kDefaultTol);

    Index sys_dim() const noexcept { return initial_.dim(); }
    Index probe_dim() const noexcept { return probe_states_.front().dim(); }
    std::size_t horizon() const noexcept { return horizon_; }
    const DensityOperator& initial_state() const noexcept { return initial_; }

    const DensityOperator& probe_state(std::size_t step) const;
    const Matrix& unitary(std::size_t step) const;
    const Povm& povm(std::size_t step) const;

    const std::vector<DensityOperator>& probe_states() const noexcept { return probe_states_; }
    const std::vector<Matrix>& unitaries() const noexcept { return unitaries_; }
    const std::vector<Povm>& povms() const noexcept { return povms_; }

private:
    ChainModel(DensityOperator initial, std::vector<DensityOperator> probes, std::vector<Matrix> unitaries,
               std::vector<Povm> povms, std::size_t horizon)
        : initial_(std::move(initial)),
          probe_states_(std::move(probes)),
          unitaries_(std::move(unitaries)),
          povms_(std::move(povms)),
          horizon_(horizon) {}

    DensityOperator initial_;
    std::vector<DensityOperator> probe_states_;
    std::vector<Matrix> unitaries_;
    std::vector<Povm> povms_;
    std::size_t horizon_;
};

/// Outcome indices w_1..w_n, one per step.
struct MeasurementRecord {
    std::vector<std::size_t> outcomes;
};

struct FilterState {
    std::size_t step = 0;
    DensityOperator state;
    /// Sum of log outcome probabilities so far.
    double log_likelihood = 0.0;
};

/// Records with probability below this are treated as impossible.
inline constexpr double kImpossibleProbability = 1e-12;

/// Largest joint dimension sys_dim * probe_dim^n accepted by direct_joint_filter.
inline constexpr Index kDirectFilterCap = Index{1} << 14;

/// U (rho (x) rho^P) U*.
Matrix interaction_state(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                         double tol = kDefaultTol);

/// Conditioned system state and probability for one observed probe effect.
/// Only the effect of the observed outcome enters.
struct ConditionedState {
    DensityOperator state;
    double probability;
};
ConditionedState condition_on_effect(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                                     const Matrix& effect, double tol = kDefaultTol);

/// Probability of every outcome of `povm` after the interaction.
std::vector<double> step_outcome_probabilities(const DensityOperator& rho, const Matrix& u,
                                               const DensityOperator& probe_state, const Povm& povm,
                                               double tol = kDefaultTol);

/// One filter update. Throws NotUnitary, DimensionMismatch, UnknownLabel or
/// ImpossibleOutcome (probability below 1e-12).
FilterState filter_step(const FilterState& prev, const Matrix& u, const DensityOperator& probe_state,
                        const Povm& povm, std::size_t outcome, double tol = kDefaultTol);

/// Initial state followed by the state after each recorded outcome.
std::vector<FilterState> filter_run(const ChainModel& model, const MeasurementRecord& record,
                                    double tol = kDefaultTol);

struct DirectFilterResult {
    FilterState state;
    double probability = 0.0;
};

/// Evaluates the conditioned state on the full space H_S (x) H_1 (x) ... (x) H_n
/// with the product unitary and the product probe effect. Exponential in n;
/// throws CapacityExceeded above kDirectFilterCap.
DirectFilterResult direct_joint_filter(const ChainModel& model, const MeasurementRecord& record,
                                       double tol = kDefaultTol);

/// The same update performed with the probe POVM replaced by its Naimark
/// dilation: the post-interaction state is pushed through I (x) V and the
/// projective measurement I (x) I (x) |w><w| is applied before tracing out
/// probe and ancilla.
FilterState dilated_filter_step(const FilterState& prev, const Matrix& u, const DensityOperator& probe_state,
                                const Povm& povm, std::size_t outcome, double tol = kDefaultTol);

struct Trajectory {
    MeasurementRecord record;
    std::vector<double> probabilities;  // per step, probability of the drawn outcome
    std::vector<FilterState> states;    // initial state first
};

Trajectory sample_trajectory(const ChainModel& model, std::size_t n_steps, Rng& rng, double tol = kDefaultTol);

/// Outcome d of qubit_phase_povm(M).
struct PhasePoint {
    int m = 2;
    int d = 0;
};

struct PhaseDistance {
    std::size_t i = 0;
    std::size_t j = 0;
    double distance = 0.0;
};

struct PhaseReport {
    std::vector<PhasePoint> points;
    std::vector<double> probabilities;
    std::vector<DensityOperator> states;
    std::vector<PhaseDistance> distances;  // all pairs i < j
    double max_distance = 0.0;
};

/// Conditions one step on the outcome of each qubit phase POVM in `points`.
/// All points must describe the same phase d/M; otherwise PhaseMismatch.
PhaseReport phase_invariance_check(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                                   std::span<const PhasePoint> points, double tol = kDefaultTol);

}  // namespace povmf

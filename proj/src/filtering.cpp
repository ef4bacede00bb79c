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

#include "povmf/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "povmf/conditioning.hpp"
#include "povmf/error.hpp"

namespace povmf {

namespace {

template <typename T>
const T& per_step(const std::vector<T>& list, std::size_t step, const char* what) {
    if (step < 1) fail(ErrorCode::InvalidArgument, std::string(what) + ": steps are numbered from 1");
    if (list.size() == 1) return list.front();
    if (step > list.size()) {
        fail(ErrorCode::InvalidArgument, std::string(what) + ": no entry for step " + std::to_string(step));
    }
    return list[step - 1];
}

template <typename T>
void check_list_length(const std::vector<T>& list, std::size_t horizon, const char* what) {
    if (list.empty() || (list.size() != 1 && list.size() != horizon)) {
        fail(ErrorCode::InvalidArgument, std::string(what) + ": expected 1 or " + std::to_string(horizon) +
                                             " entries, got " + std::to_string(list.size()));
    }
}

void require_step_inputs(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                         double tol) {
    const Index joint = rho.dim() * probe_state.dim();
    if (u.rows() != joint || u.cols() != joint) {
        fail(ErrorCode::DimensionMismatch, "interaction unitary is " + std::to_string(u.rows()) + "x" +
                                               std::to_string(u.cols()) + ", expected " + std::to_string(joint));
    }
    if (!is_unitary(u, tol)) fail(ErrorCode::NotUnitary, "interaction operator is not unitary");
}

ConditionedState normalize_conditioned(const Matrix& numerator, double tol) {
    const double p = numerator.trace().real();
    if (!(p >= kImpossibleProbability)) {
        fail(ErrorCode::ImpossibleOutcome, "observed outcome has probability " + std::to_string(p));
    }
    return {DensityOperator::from_matrix(hermitize(numerator) / p, tol), p};
}

}  // namespace

ChainModel ChainModel::create(DensityOperator initial_state, std::vector<DensityOperator> probe_states,
                              std::vector<Matrix> unitaries, std::vector<Povm> povms, std::size_t horizon,
                              double tol) {
    check_list_length(probe_states, horizon, "probe_state");
    check_list_length(unitaries, horizon, "unitaries");
    check_list_length(povms, horizon, "povms");
    const Index probe_dim = probe_states.front().dim();
    for (const auto& p : probe_states) {
        if (p.dim() != probe_dim) fail(ErrorCode::DimensionMismatch, "probe states must share one dimension");
    }
    for (const auto& b : povms) {
        if (b.dim() != probe_dim) fail(ErrorCode::DimensionMismatch, "probe POVM dimension differs from probe_dim");
    }
    const Index joint = initial_state.dim() * probe_dim;
    for (const auto& u : unitaries) {
        if (u.rows() != joint || u.cols() != joint) {
            fail(ErrorCode::DimensionMismatch, "unitary must act on sys_dim * probe_dim = " + std::to_string(joint));
        }
        if (!u.allFinite()) fail(ErrorCode::InvalidArgument, "unitary has non-finite entries");
        if (!is_unitary(u, tol)) fail(ErrorCode::NotUnitary, "interaction operator is not unitary");
    }
    return ChainModel(std::move(initial_state), std::move(probe_states), std::move(unitaries), std::move(povms),
                      horizon);
}

const DensityOperator& ChainModel::probe_state(std::size_t step) const {
    return per_step(probe_states_, step, "probe_state");
}
const Matrix& ChainModel::unitary(std::size_t step) const { return per_step(unitaries_, step, "unitary"); }
const Povm& ChainModel::povm(std::size_t step) const { return per_step(povms_, step, "povm"); }

Matrix interaction_state(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                         double tol) {
    require_step_inputs(rho, u, probe_state, tol);
    return u * tensor(rho.matrix(), probe_state.matrix()) * u.adjoint();
}

ConditionedState condition_on_effect(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                                     const Matrix& effect, double tol) {
    if (effect.rows() != probe_state.dim() || effect.cols() != probe_state.dim()) {
        fail(ErrorCode::DimensionMismatch, "probe effect dimension does not match the probe");
    }
    const Matrix sigma = interaction_state(rho, u, probe_state, tol);
    const TensorFactorization f({rho.dim(), probe_state.dim()});
    const std::size_t probe_slot[] = {1};
    const Matrix lifted = tensor(identity(rho.dim()), effect);
    return normalize_conditioned(partial_trace(sigma * lifted, f, probe_slot), tol);
}

std::vector<double> step_outcome_probabilities(const DensityOperator& rho, const Matrix& u,
                                               const DensityOperator& probe_state, const Povm& povm, double tol) {
    if (povm.dim() != probe_state.dim()) fail(ErrorCode::DimensionMismatch, "probe POVM dimension mismatch");
    const Matrix sigma = interaction_state(rho, u, probe_state, tol);
    const TensorFactorization f({rho.dim(), probe_state.dim()});
    const std::size_t system_slot[] = {0};
    const Matrix probe_marginal = partial_trace(sigma, f, system_slot);
    std::vector<double> p(povm.size());
    for (std::size_t w = 0; w < povm.size(); ++w) {
        const double v = (probe_marginal * povm.element(w)).trace().real();
        if (v < -tol) fail(ErrorCode::NotPositive, "negative outcome probability " + std::to_string(v));
        p[w] = std::clamp(v, 0.0, 1.0);
    }
    return p;
}

FilterState filter_step(const FilterState& prev, const Matrix& u, const DensityOperator& probe_state,
                        const Povm& povm, std::size_t outcome, double tol) {
    if (povm.dim() != probe_state.dim()) fail(ErrorCode::DimensionMismatch, "probe POVM dimension mismatch");
    if (outcome >= povm.size()) fail(ErrorCode::UnknownLabel, "outcome index out of range for the probe POVM");
    auto [state, p] = condition_on_effect(prev.state, u, probe_state, povm.element(outcome), tol);
    return FilterState{prev.step + 1, std::move(state), prev.log_likelihood + std::log(p)};
}

std::vector<FilterState> filter_run(const ChainModel& model, const MeasurementRecord& record, double tol) {
    if (record.outcomes.size() > model.horizon()) {
        fail(ErrorCode::InvalidArgument, "record is longer than the model horizon");
    }
    std::vector<FilterState> states{FilterState{0, model.initial_state(), 0.0}};
    states.reserve(record.outcomes.size() + 1);
    for (std::size_t n = 1; n <= record.outcomes.size(); ++n) {
        states.push_back(filter_step(states.back(), model.unitary(n), model.probe_state(n), model.povm(n),
                                     record.outcomes[n - 1], tol));
    }
    return states;
}

DirectFilterResult direct_joint_filter(const ChainModel& model, const MeasurementRecord& record, double tol) {
    const std::size_t n = record.outcomes.size();
    if (n > model.horizon()) fail(ErrorCode::InvalidArgument, "record is longer than the model horizon");

    std::vector<Index> dims{model.sys_dim()};
    Index total = model.sys_dim();
    for (std::size_t k = 0; k < n; ++k) {
        if (total > kDirectFilterCap / model.probe_dim()) {
            fail(ErrorCode::CapacityExceeded, "joint space for " + std::to_string(n) + " steps exceeds " +
                                                  std::to_string(kDirectFilterCap) + " dimensions");
        }
        total *= model.probe_dim();
        dims.push_back(model.probe_dim());
    }
    const TensorFactorization f(dims);

    std::vector<Matrix> initial{model.initial_state().matrix()};
    for (std::size_t k = 1; k <= n; ++k) initial.push_back(model.probe_state(k).matrix());
    const Matrix rho_tot = tensor(initial);

    // U_{n]} = U_n ... U_1, each U_k acting on the system and probe k.
    Matrix u_total = identity(total);
    Matrix effect = identity(total);
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t pair[] = {0, k};
        u_total = embed_operator(model.unitary(k), f, pair) * u_total;
        const Povm& b = model.povm(k);
        if (record.outcomes[k - 1] >= b.size()) fail(ErrorCode::UnknownLabel, "record outcome out of range");
        const std::size_t slot[] = {k};
        effect = effect * embed_operator(b.element(record.outcomes[k - 1]), f, slot);
    }

    std::vector<std::size_t> probes(n);
    std::iota(probes.begin(), probes.end(), std::size_t{1});
    const Matrix evolved = u_total * rho_tot * u_total.adjoint();
    auto [state, p] = normalize_conditioned(partial_trace(evolved * effect, f, probes), tol);
    return DirectFilterResult{FilterState{n, std::move(state), std::log(p)}, p};
}

FilterState dilated_filter_step(const FilterState& prev, const Matrix& u, const DensityOperator& probe_state,
                                const Povm& povm, std::size_t outcome, double tol) {
    if (povm.dim() != probe_state.dim()) fail(ErrorCode::DimensionMismatch, "probe POVM dimension mismatch");
    if (outcome >= povm.size()) fail(ErrorCode::UnknownLabel, "outcome index out of range for the probe POVM");

    const DilatedPvm dil = naimark_dilate(povm, tol);
    const Index s = prev.state.dim();
    const Index m = static_cast<Index>(povm.size());
    const Matrix sigma = interaction_state(prev.state, u, probe_state, tol);

    // H_S (x) H_P  ->  H_S (x) H_P (x) C^M
    const Matrix lift = tensor(identity(s), dil.isometry);
    const Matrix lifted = lift * sigma * lift.adjoint();
    const Matrix projector = tensor(identity(s), dil.pvm.element(outcome));
    const TensorFactorization f({s, probe_state.dim(), m});
    const std::size_t traced[] = {1, 2};
    auto [state, p] = normalize_conditioned(partial_trace(projector * lifted * projector, f, traced), tol);
    return FilterState{prev.step + 1, std::move(state), prev.log_likelihood + std::log(p)};
}

Trajectory sample_trajectory(const ChainModel& model, std::size_t n_steps, Rng& rng, double tol) {
    if (n_steps > model.horizon()) fail(ErrorCode::InvalidArgument, "n_steps exceeds the model horizon");
    Trajectory t;
    t.states.push_back(FilterState{0, model.initial_state(), 0.0});
    for (std::size_t n = 1; n <= n_steps; ++n) {
        const auto& prev = t.states.back();
        const auto p = step_outcome_probabilities(prev.state, model.unitary(n), model.probe_state(n), model.povm(n), tol);
        const std::size_t w = sample_index(p, rng);
        t.states.push_back(filter_step(prev, model.unitary(n), model.probe_state(n), model.povm(n), w, tol));
        t.record.outcomes.push_back(w);
        t.probabilities.push_back(p[w]);
    }
    return t;
}

PhaseReport phase_invariance_check(const DensityOperator& rho, const Matrix& u, const DensityOperator& probe_state,
                                   std::span<const PhasePoint> points, double tol) {
    if (points.empty()) fail(ErrorCode::InvalidArgument, "phase_invariance_check needs at least one M");
    if (probe_state.dim() != 2) fail(ErrorCode::DimensionMismatch, "qubit phase probes are two-dimensional");
    for (const auto& pt : points) {
        if (pt.m < 2) fail(ErrorCode::InvalidArgument, "M must be at least 2");
        if (pt.d < 0 || pt.d >= pt.m) {
            fail(ErrorCode::PhaseMismatch, "outcome " + std::to_string(pt.d) + " is not an outcome of M = " +
                                               std::to_string(pt.m));
        }
        const auto& ref = points.front();
        // d/M == d0/M0, compared exactly in integers.
        if (static_cast<long long>(pt.d) * ref.m != static_cast<long long>(ref.d) * pt.m) {
            fail(ErrorCode::PhaseMismatch, "phase " + std::to_string(pt.d) + "/" + std::to_string(pt.m) +
                                               " differs from " + std::to_string(ref.d) + "/" + std::to_string(ref.m));
        }
    }

    PhaseReport report;
    report.points.assign(points.begin(), points.end());
    for (const auto& pt : points) {
        const Povm b = qubit_phase_povm(pt.m);
        auto c = condition_on_effect(rho, u, probe_state, b.element(static_cast<std::size_t>(pt.d)), tol);
        report.probabilities.push_back(c.probability);
        report.states.push_back(std::move(c.state));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = trace_distance(report.states[i].matrix(), report.states[j].matrix());
            report.distances.push_back({i, j, d});
            report.max_distance = std::max(report.max_distance, d);
        }
    }
    return report;
}

}  // namespace povmf

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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/rng.hpp"

namespace povmf {

/// A set of outcomes, given as indices into an OutcomeSpace. Order and
/// repetitions are irrelevant; the empty event is allowed.
using Event = std::vector<std::size_t>;

/// Quantum state: Hermitian, positive semidefinite, unit trace.
class DensityOperator {
public:
    /// Validates `m`; throws NotHermitian, NotPositive or InvalidArgument (trace).
    static DensityOperator from_matrix(const Matrix& m, double tol = kDefaultTol);
    static DensityOperator pure(const Vector& psi);
    static DensityOperator maximally_mixed(Index dim);
    /// |k><k| in dimension `dim`.
    static DensityOperator basis(Index dim, Index k);

    const Matrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

private:
    explicit DensityOperator(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

/// Finite outcome set with optional real values attached to the labels.
class OutcomeSpace {
public:
    explicit OutcomeSpace(std::vector<std::string> labels, std::optional<std::vector<double>> values = std::nullopt);
    /// Labels "0", "1", ..., "n-1" with numeric values 0..n-1.
    static OutcomeSpace range(std::size_t n);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    bool has_values() const noexcept { return values_.has_value(); }
    const std::optional<std::vector<double>>& values() const noexcept { return values_; }
    /// Throws NotNumeric when the space carries no values.
    double value(std::size_t i) const;

    /// Throws UnknownLabel.
    std::size_t index_of(std::string_view label) const;
    std::optional<std::size_t> find(std::string_view label) const;
    Event event(std::span<const std::string> labels) const;
    Event all() const;

    bool operator==(const OutcomeSpace&) const = default;

private:
    std::vector<std::string> labels_;
    std::optional<std::vector<double>> values_;
};

/// Sorted, duplicate-free copy of `e`; throws UnknownLabel for indices >= n.
Event normalize_event(const Event& e, std::size_t n);

/// Positive operator valued measure on a finite outcome space. Events are
/// subsets of the outcome set and element(E) is the sum over singletons.
class Povm {
public:
    /// Throws DimensionMismatch, NotPositive or NotComplete.
    static Povm create(OutcomeSpace space, std::vector<Matrix> elements, double tol = kDefaultTol);

    const OutcomeSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return elements_.size(); }
    Index dim() const noexcept { return elements_.front().rows(); }
    const Matrix& element(std::size_t outcome) const { return elements_.at(outcome); }
    Matrix element(const Event& event) const;
    const std::vector<Matrix>& elements() const noexcept { return elements_; }

private:
    Povm(OutcomeSpace space, std::vector<Matrix> elements) : space_(std::move(space)), elements_(std::move(elements)) {}
    OutcomeSpace space_;
    std::vector<Matrix> elements_;
};

/// Tr(rho * element(event)), clamped to [0, 1]. Values below -tol are
/// reported as NotPositive rather than clamped.
double outcome_probability(const DensityOperator& rho, const Povm& povm, const Event& event, double tol = kDefaultTol);
double outcome_probability(const DensityOperator& rho, const Povm& povm, std::size_t outcome, double tol = kDefaultTol);

/// Probabilities of every singleton, in label order.
std::vector<double> outcome_distribution(const DensityOperator& rho, const Povm& povm, double tol = kDefaultTol);

double expectation(const DensityOperator& rho, const Povm& povm);

/// Spectral measure of a Hermitian matrix: one outcome per distinct
/// eigenvalue (ascending), eigenvalues within 1e-8 * ||a||_2 merged.
Povm pvm_from_hermitian(const Matrix& a, double tol = kDefaultTol);

/// Qubit phase POVM with elements (1/M)(|0> + w^d|1>)(<0| + w^-d <1|),
/// w = exp(2 pi i / M), labels "0".."M-1" carrying values 0..M-1.
Povm qubit_phase_povm(int m);

/// The single-outcome POVM {I}.
Povm trivial_povm(Index dim);

/// Inverse-CDF draw over the label order.
std::size_t sample_index(std::span<const double> probabilities, Rng& rng);
std::size_t sample_outcome(const DensityOperator& rho, const Povm& povm, Rng& rng);

}  // namespace povmf

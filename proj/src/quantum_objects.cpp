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

#include "povmf/quantum_objects.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <unordered_set>

#include <Eigen/Eigenvalues>

#include "povmf/error.hpp"

namespace povmf {

DensityOperator DensityOperator::from_matrix(const Matrix& m, double tol) {
    require_square_finite(m, "density operator");
    if (!is_hermitian(m, tol)) {
        fail(ErrorCode::NotHermitian, "density operator is not Hermitian");
    }
    if (!is_psd(m, tol)) {
        fail(ErrorCode::NotPositive, "density operator is not positive semidefinite");
    }
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > tol * std::max(1.0, m.norm())) {
        fail(ErrorCode::InvalidArgument, "density operator trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    return DensityOperator(hermitize(m));
}

DensityOperator DensityOperator::pure(const Vector& psi) {
    if (psi.size() < 1 || !psi.allFinite()) {
        fail(ErrorCode::InvalidArgument, "pure state vector must be non-empty and finite");
    }
    const double n = psi.norm();
    if (n == 0.0) {
        fail(ErrorCode::InvalidArgument, "pure state vector has zero norm");
    }
    const Vector v = psi / n;
    return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(Index dim) {
    if (dim < 1) fail(ErrorCode::InvalidArgument, "dimension must be positive");
    return DensityOperator(identity(dim) / static_cast<double>(dim));
}

DensityOperator DensityOperator::basis(Index dim, Index k) {
    if (dim < 1 || k < 0 || k >= dim) fail(ErrorCode::InvalidArgument, "basis state index out of range");
    Matrix m = Matrix::Zero(dim, dim);
    m(k, k) = 1.0;
    return DensityOperator(std::move(m));
}

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels, std::optional<std::vector<double>> values)
    : labels_(std::move(labels)), values_(std::move(values)) {
    if (labels_.empty()) {
        fail(ErrorCode::InvalidArgument, "outcome space must have at least one label");
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            fail(ErrorCode::InvalidArgument, "duplicate outcome label '" + l + "'");
        }
    }
    if (values_ && values_->size() != labels_.size()) {
        fail(ErrorCode::InvalidArgument, "numeric_values must have one entry per label");
    }
    if (values_) {
        for (double v : *values_) {
            if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "numeric_values must be finite");
        }
    }
}

OutcomeSpace OutcomeSpace::range(std::size_t n) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        values.push_back(static_cast<double>(i));
    }
    return OutcomeSpace(std::move(labels), std::move(values));
}

double OutcomeSpace::value(std::size_t i) const {
    if (!values_) fail(ErrorCode::NotNumeric, "outcome space has no numeric values");
    return values_->at(i);
}

std::optional<std::size_t> OutcomeSpace::find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return i;
    }
    return std::nullopt;
}

std::size_t OutcomeSpace::index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    fail(ErrorCode::UnknownLabel, "unknown outcome label '" + std::string(label) + "'");
}

Event OutcomeSpace::event(std::span<const std::string> labels) const {
    Event e;
    for (const auto& l : labels) e.push_back(index_of(l));
    return normalize_event(e, size());
}

Event OutcomeSpace::all() const {
    Event e(size());
    std::iota(e.begin(), e.end(), std::size_t{0});
    return e;
}

Event normalize_event(const Event& e, std::size_t n) {
    Event out = e;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!out.empty() && out.back() >= n) {
        fail(ErrorCode::UnknownLabel, "event refers to outcome index " + std::to_string(out.back()) +
                                          " of a space with " + std::to_string(n) + " outcomes");
    }
    return out;
}

Povm Povm::create(OutcomeSpace space, std::vector<Matrix> elements, double tol) {
    if (elements.size() != space.size()) {
        fail(ErrorCode::DimensionMismatch, "POVM needs one element per outcome label");
    }
    const Index dim = elements.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        require_square_finite(elements[i], "POVM element");
        if (elements[i].rows() != dim) {
            fail(ErrorCode::DimensionMismatch, "POVM elements must share one dimension");
        }
        if (!is_psd(elements[i], tol)) {
            fail(ErrorCode::NotPositive, "POVM element '" + space.label(i) + "' is not positive semidefinite");
        }
        sum += elements[i];
    }
    const double defect = (sum - identity(dim)).norm();
    if (defect > tol * std::max(1.0, std::sqrt(static_cast<double>(dim)))) {
        fail(ErrorCode::NotComplete, "POVM elements sum to identity only up to " + std::to_string(defect));
    }
    return Povm(std::move(space), std::move(elements));
}

Matrix Povm::element(const Event& event) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (std::size_t i : normalize_event(event, size())) out += elements_[i];
    return out;
}

namespace {

double clamp_probability(double p, double tol) {
    if (p < -tol || p > 1.0 + tol) {
        fail(ErrorCode::NotPositive, "probability " + std::to_string(p) + " outside [0, 1]");
    }
    return std::clamp(p, 0.0, 1.0);
}

void require_dims(const DensityOperator& rho, const Povm& povm) {
    if (rho.dim() != povm.dim()) {
        fail(ErrorCode::DimensionMismatch, "state dimension " + std::to_string(rho.dim()) +
                                               " does not match POVM dimension " + std::to_string(povm.dim()));
    }
}

}  // namespace

double outcome_probability(const DensityOperator& rho, const Povm& povm, const Event& event, double tol) {
    require_dims(rho, povm);
    return clamp_probability((rho.matrix() * povm.element(event)).trace().real(), tol);
}

double outcome_probability(const DensityOperator& rho, const Povm& povm, std::size_t outcome, double tol) {
    require_dims(rho, povm);
    if (outcome >= povm.size()) fail(ErrorCode::UnknownLabel, "outcome index out of range");
    return clamp_probability((rho.matrix() * povm.element(outcome)).trace().real(), tol);
}

std::vector<double> outcome_distribution(const DensityOperator& rho, const Povm& povm, double tol) {
    std::vector<double> p(povm.size());
    for (std::size_t i = 0; i < povm.size(); ++i) p[i] = outcome_probability(rho, povm, i, tol);
    return p;
}

double expectation(const DensityOperator& rho, const Povm& povm) {
    require_dims(rho, povm);
    const auto& space = povm.space();
    if (!space.has_values()) fail(ErrorCode::NotNumeric, "expectation needs numeric outcome values");
    double e = 0.0;
    for (std::size_t i = 0; i < povm.size(); ++i) {
        e += space.value(i) * (rho.matrix() * povm.element(i)).trace().real();
    }
    return e;
}

Povm pvm_from_hermitian(const Matrix& a, double tol) {
    require_square_finite(a, "pvm_from_hermitian");
    if (!is_hermitian(a, tol)) fail(ErrorCode::NotHermitian, "pvm_from_hermitian: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(a));
    const Eigen::VectorXd& ev = es.eigenvalues();
    const Matrix& vecs = es.eigenvectors();
    const double merge = 1e-8 * ev.cwiseAbs().maxCoeff();

    std::vector<std::pair<Index, Index>> clusters;  // [begin, end) in ascending order
    Index begin = 0;
    for (Index k = 1; k <= ev.size(); ++k) {
        if (k == ev.size() || ev(k) - ev(k - 1) > merge) {
            clusters.emplace_back(begin, k);
            begin = k;
        }
    }

    std::vector<std::string> labels;
    std::vector<double> values;
    std::vector<Matrix> projectors;
    for (auto [b, e] : clusters) {
        const double value = ev.segment(b, e - b).mean();
        const Matrix basis = vecs.middleCols(b, e - b);
        projectors.push_back(basis * basis.adjoint());
        values.push_back(value);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.10g", value);
        std::string label = buf;
        if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
            label += "#" + std::to_string(labels.size());
        }
        labels.push_back(std::move(label));
    }
    return Povm::create(OutcomeSpace(std::move(labels), std::move(values)), std::move(projectors), tol);
}

Povm qubit_phase_povm(int m) {
    if (m < 2) fail(ErrorCode::InvalidArgument, "qubit_phase_povm needs M >= 2, got " + std::to_string(m));
    std::vector<Matrix> elements;
    for (int d = 0; d < m; ++d) {
        const double angle = 2.0 * std::numbers::pi * d / m;
        Vector v(2);
        v << 1.0, std::polar(1.0, angle);
        elements.push_back(v * v.adjoint() / static_cast<double>(m));
    }
    return Povm::create(OutcomeSpace::range(static_cast<std::size_t>(m)), std::move(elements));
}

Povm trivial_povm(Index dim) {
    return Povm::create(OutcomeSpace({"1"}, std::vector<double>{1.0}), {identity(dim)});
}

std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
    if (probabilities.empty()) fail(ErrorCode::InvalidArgument, "cannot sample from an empty distribution");
    const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
    const double u = rng.uniform() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0.0) last_positive = i;
        acc += probabilities[i];
        if (u < acc) return i;
    }
    return last_positive;
}

std::size_t sample_outcome(const DensityOperator& rho, const Povm& povm, Rng& rng) {
    const auto p = outcome_distribution(rho, povm);
    return sample_index(p, rng);
}

}  // namespace povmf

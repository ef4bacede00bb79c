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

#include "povmf/conditioning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povmf/error.hpp"

namespace povmf {

namespace {

void require_dim(const Matrix& g, const DensityOperator& rho) {
    if (g.rows() != rho.dim() || g.cols() != rho.dim()) {
        fail(ErrorCode::DimensionMismatch, "operator dimension does not match state");
    }
}

void require_commuting(const Povm& a, const Povm& b, double tol) {
    if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "POVM dimensions differ");
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double c = commutator(a.element(i), b.element(j)).norm();
            if (c > tol) {
                fail(ErrorCode::NotCommuting, "elements '" + a.space().label(i) + "' and '" + b.space().label(j) +
                                                  "' do not commute (|[A,B]|_F = " + std::to_string(c) + ")");
            }
        }
    }
}

}  // namespace

double rho_seminorm(const Matrix& g, const DensityOperator& rho) {
    require_dim(g, rho);
    return std::abs((g * rho.matrix()).trace());
}

bool rho_equivalent(const Matrix& g1, const Matrix& g2, const DensityOperator& rho, double tol) {
    require_dim(g1, rho);
    require_dim(g2, rho);
    return rho_seminorm(g1 - g2, rho) <= tol;
}

Povm joint_povm(const Povm& a, const Povm& b, double tol) {
    require_commuting(a, b, tol);
    std::vector<std::string> labels;
    std::vector<Matrix> elements;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            labels.push_back(a.space().label(i) + "," + b.space().label(j));
            elements.push_back(hermitize(a.element(i) * b.element(j)));
        }
    }
    return Povm::create(OutcomeSpace(std::move(labels)), std::move(elements), tol);
}

ConditionalPovm::ConditionalPovm(const Povm& a, const Povm& b, const DensityOperator& rho, double tol)
    : space_a_(a.space()), space_b_(b.space()), rho_(rho) {
    require_commuting(a, b, tol);
    if (rho.dim() != a.dim()) fail(ErrorCode::DimensionMismatch, "state dimension does not match POVMs");

    support_.assign(b.size(), false);
    marginal_b_.assign(b.size(), 0.0);
    table_.assign(a.size() * b.size(), Matrix());
    for (std::size_t j = 0; j < b.size(); ++j) {
        const double mu = (rho.matrix() * b.element(j)).trace().real();
        marginal_b_[j] = std::max(mu, 0.0);
        if (mu < kSupportThreshold) continue;
        support_[j] = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
            table_[i * b.size() + j] = a.element(i) * b.element(j) / mu;
        }
    }
}

std::vector<std::size_t> ConditionalPovm::support() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < support_.size(); ++j) {
        if (support_[j]) out.push_back(j);
    }
    return out;
}

const Matrix& ConditionalPovm::table(std::size_t omega_a, std::size_t omega_b) const {
    if (omega_a >= space_a_.size() || omega_b >= space_b_.size()) {
        fail(ErrorCode::UnknownLabel, "conditional POVM index out of range");
    }
    if (!support_[omega_b]) {
        fail(ErrorCode::ImpossibleOutcome, "outcome '" + space_b_.label(omega_b) + "' has zero probability");
    }
    return table_[omega_a * space_b_.size() + omega_b];
}

Matrix ConditionalPovm::element(const Event& event_a, std::size_t omega_b) const {
    (void)table(0, omega_b);
    Matrix out = Matrix::Zero(rho_.dim(), rho_.dim());
    for (std::size_t i : normalize_event(event_a, space_a_.size())) out += table(i, omega_b);
    return out;
}

ConditionalPovm conditional_povm(const Povm& a, const Povm& b, const DensityOperator& rho, double tol) {
    return ConditionalPovm(a, b, rho, tol);
}

double conditional_probability(const ConditionalPovm& cp, const Event& event_a, std::size_t omega_b) {
    const Matrix p = cp.element(event_a, omega_b);
    return std::clamp((cp.base_state().matrix() * p).trace().real(), 0.0, 1.0);
}

double conditional_expectation_given_outcome(const ConditionalPovm& cp, std::size_t omega_b) {
    const auto& space = cp.space_a();
    if (!space.has_values()) fail(ErrorCode::NotNumeric, "conditional expectation needs numeric outcome values");
    double e = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        e += space.value(i) * (cp.base_state().matrix() * cp.table(i, omega_b)).trace().real();
    }
    return e;
}

Matrix ConditionalExpectationPovm::element(const Event& atoms) const {
    Matrix out = Matrix::Zero(null_element.rows(), null_element.cols());
    for (std::size_t k : normalize_event(atoms, atom_elements.size())) out += atom_elements[k];
    return out;
}

ConditionalExpectationPovm conditional_expectation_povm(const Povm& a, const Povm& b, const DensityOperator& rho,
                                                        double tol) {
    if (!a.space().has_values()) fail(ErrorCode::NotNumeric, "conditional expectation needs numeric outcome values");
    const ConditionalPovm cp(a, b, rho, tol);

    std::vector<std::pair<double, std::size_t>> means;
    for (std::size_t j : cp.support()) means.emplace_back(conditional_expectation_given_outcome(cp, j), j);
    std::sort(means.begin(), means.end());

    ConditionalExpectationPovm out;
    out.atom_of_outcome.assign(b.size(), -1);
    out.null_element = Matrix::Zero(b.dim(), b.dim());
    double anchor = 0.0;
    for (const auto& [m, j] : means) {
        if (out.atom_values.empty() || m - anchor > kAtomMergeTol) {
            anchor = m;
            out.atom_values.push_back(m);
            out.atom_elements.push_back(Matrix::Zero(b.dim(), b.dim()));
        }
        out.atom_elements.back() += b.element(j);
        out.atom_of_outcome[j] = static_cast<long>(out.atom_values.size() - 1);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (out.atom_of_outcome[j] < 0) out.null_element += b.element(j);
    }
    return out;
}

DilatedPvm naimark_dilate(const Povm& b, double tol) {
    const Index d = b.dim();
    const auto m = static_cast<Index>(b.size());
    const Index big = d * m;

    Matrix v = Matrix::Zero(big, d);
    for (Index w = 0; w < m; ++w) {
        // Rows w, w + m, w + 2m, ... carry the ancilla basis vector |w>.
        const Matrix root = psd_sqrt(b.element(static_cast<std::size_t>(w)), tol);
        for (Index r = 0; r < d; ++r) v.row(r * m + w) = root.row(r);
    }

    std::vector<Matrix> projectors;
    for (Index w = 0; w < m; ++w) {
        Matrix ket = Matrix::Zero(m, m);
        ket(w, w) = 1.0;
        projectors.push_back(tensor(identity(d), ket));
    }
    return DilatedPvm{d, big, std::move(v), Povm::create(b.space(), std::move(projectors), tol)};
}

}  // namespace povmf

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
#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/quantum_objects.hpp"

namespace povmf {

/// |Tr(g rho)|.
double rho_seminorm(const Matrix& g, const DensityOperator& rho);
bool rho_equivalent(const Matrix& g1, const Matrix& g2, const DensityOperator& rho, double tol = kDefaultTol);

/// Product POVM with elements A(wa) B(wb) on the product space (A slowest).
/// Throws NotCommuting when some pair of singleton elements fails to commute.
Povm joint_povm(const Povm& a, const Povm& b, double tol = kDefaultTol);

/// Outcomes of B with probability below this are excluded from conditioning.
inline constexpr double kSupportThreshold = 1e-12;

/// Conditional POVM of A given an outcome of B under a fixed state, in the
/// finite closed form P(wa | wb) = A(wa) B(wb) / Tr(rho B(wb)).
class ConditionalPovm {
public:
    ConditionalPovm(const Povm& a, const Povm& b, const DensityOperator& rho, double tol = kDefaultTol);

    const OutcomeSpace& space_a() const noexcept { return space_a_; }
    const OutcomeSpace& space_b() const noexcept { return space_b_; }
    const DensityOperator& base_state() const noexcept { return rho_; }
    bool supported(std::size_t omega_b) const { return support_.at(omega_b); }
    /// Indices of B outcomes with positive probability under the base state.
    std::vector<std::size_t> support() const;
    double marginal_b(std::size_t omega_b) const { return marginal_b_.at(omega_b); }

    /// P({wa}, wb); throws ImpossibleOutcome for unsupported wb.
    const Matrix& table(std::size_t omega_a, std::size_t omega_b) const;
    /// P(E, wb) = sum over wa in E.
    Matrix element(const Event& event_a, std::size_t omega_b) const;

private:
    OutcomeSpace space_a_;
    OutcomeSpace space_b_;
    DensityOperator rho_;
    std::vector<bool> support_;
    std::vector<double> marginal_b_;
    std::vector<Matrix> table_;  // row-major over (wa, wb)
};

ConditionalPovm conditional_povm(const Povm& a, const Povm& b, const DensityOperator& rho, double tol = kDefaultTol);

/// Tr(rho P(E, wb)) clamped to [0, 1].
double conditional_probability(const ConditionalPovm& cp, const Event& event_a, std::size_t omega_b);

/// sum_wa value(wa) Tr(rho P({wa}, wb)).
double conditional_expectation_given_outcome(const ConditionalPovm& cp, std::size_t omega_b);

/// E -> B(m^{-1}(E)) where m(wb) is the classical conditional mean of A's
/// values given wb. Atoms are the distinct values of m over supported
/// outcomes (ties within 1e-9 merged), sorted ascending. B elements of
/// zero-probability outcomes are kept apart in `null_element`.
struct ConditionalExpectationPovm {
    std::vector<double> atom_values;
    std::vector<Matrix> atom_elements;
    /// Atom index per B outcome, or -1 for unsupported outcomes.
    std::vector<long> atom_of_outcome;
    Matrix null_element;

    /// Sum of the atom elements selected by `atoms`.
    Matrix element(const Event& atoms) const;
};

inline constexpr double kAtomMergeTol = 1e-9;

ConditionalExpectationPovm conditional_expectation_povm(const Povm& a, const Povm& b, const DensityOperator& rho,
                                                        double tol = kDefaultTol);

/// Projective realization of a POVM on H (x) C^M: V = sum_w sqrt(B(w)) (x) |w>
/// and Pi_w = I (x) |w><w|, so that V* Pi_w V = B(w).
struct DilatedPvm {
    Index dim = 0;
    Index big_dim = 0;
    Matrix isometry;  // big_dim x dim
    Povm pvm;
};

DilatedPvm naimark_dilate(const Povm& b, double tol = kDefaultTol);

}  // namespace povmf

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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "povmf/quantum_objects.hpp"
#include "povmf/random.hpp"
#include "test_util.hpp"

namespace povmf {
namespace {

Povm z_pvm() {
    return Povm::create(OutcomeSpace({"+1", "-1"}, std::vector<double>{1.0, -1.0}), {test::proj0(), test::proj1()});
}

TEST(DensityOperator, Validation) {
    EXPECT_NO_THROW(DensityOperator::from_matrix(test::proj_plus()));
    EXPECT_POVMF_ERROR(DensityOperator::from_matrix(test::mat2(1, 1, 0, 0)), ErrorCode::NotHermitian);
    EXPECT_POVMF_ERROR(DensityOperator::from_matrix(test::mat2(1.5, 0, 0, -0.5)), ErrorCode::NotPositive);
    EXPECT_POVMF_ERROR(DensityOperator::from_matrix(identity(2)), ErrorCode::InvalidArgument);
}

TEST(DensityOperator, Constructors) {
    Vector psi(2);
    psi << 3.0, 4.0;
    const auto rho = DensityOperator::pure(psi);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(rho.matrix()(0, 0).real(), 9.0 / 25, 1e-15);
    EXPECT_MATRIX_NEAR(DensityOperator::maximally_mixed(3).matrix(), identity(3) / 3.0, 1e-16);
    EXPECT_MATRIX_NEAR(DensityOperator::basis(2, 1).matrix(), test::proj1(), 0.0);
    EXPECT_POVMF_ERROR(DensityOperator::basis(2, 2), ErrorCode::InvalidArgument);
}

TEST(OutcomeSpace, LabelsAndValues) {
    const auto s = OutcomeSpace::range(3);
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.label(2), "2");
    EXPECT_EQ(s.value(2), 2.0);
    EXPECT_EQ(s.index_of("1"), 1u);
    EXPECT_FALSE(s.find("7").has_value());
    EXPECT_POVMF_ERROR(s.index_of("7"), ErrorCode::UnknownLabel);
    EXPECT_POVMF_ERROR(OutcomeSpace({"a", "a"}), ErrorCode::InvalidArgument);
    EXPECT_POVMF_ERROR(OutcomeSpace({"a"}).value(0), ErrorCode::NotNumeric);
    EXPECT_POVMF_ERROR(OutcomeSpace({"a", "b"}, std::vector<double>{1.0}), ErrorCode::InvalidArgument);
    const std::vector<std::string> labels{"2", "0", "2"};
    EXPECT_EQ(s.event(labels), (Event{0, 2}));
}

TEST(Povm, CreateExamples) {
    EXPECT_NO_THROW(Povm::create(OutcomeSpace::range(2), {test::proj0(), test::proj1()}));
    EXPECT_NO_THROW(Povm::create(OutcomeSpace::range(2), {identity(2) / 2.0, identity(2) / 2.0}));
    EXPECT_POVMF_ERROR(Povm::create(OutcomeSpace::range(2), {test::proj0(), test::proj0()}), ErrorCode::NotComplete);
    EXPECT_POVMF_ERROR(Povm::create(OutcomeSpace::range(2), {test::mat2(1.5, 0, 0, 1), test::mat2(-0.5, 0, 0, 0)}),
                       ErrorCode::NotPositive);
    EXPECT_POVMF_ERROR(Povm::create(OutcomeSpace::range(2), {identity(2)}), ErrorCode::DimensionMismatch);
}

TEST(Povm, EventElements) {
    const Povm b = qubit_phase_povm(4);
    EXPECT_MATRIX_NEAR(b.element(Event{}), Matrix::Zero(2, 2), 0.0);
    EXPECT_MATRIX_NEAR(b.element(b.space().all()), identity(2), 1e-15);
    EXPECT_MATRIX_NEAR(b.element(Event{0, 2}), identity(2) / 2.0, 1e-15);
    EXPECT_POVMF_ERROR(b.element(Event{4}), ErrorCode::UnknownLabel);
}

TEST(OutcomeProbability, Examples) {
    Rng rng(21);
    const auto rho = random_density(3, rng);
    const Povm b = random_povm(3, 4, rng);
    EXPECT_NEAR(outcome_probability(rho, b, b.space().all()), 1.0, 1e-14);
    for (int m = 2; m <= 8; ++m) {
        const Povm phase = qubit_phase_povm(m);
        for (std::size_t d = 0; d < phase.size(); ++d) {
            EXPECT_NEAR(outcome_probability(DensityOperator::basis(2, 0), phase, d), 1.0 / m, 1e-15);
        }
    }
    const Povm q = random_povm(2, 3, rng);
    for (std::size_t w = 0; w < q.size(); ++w) {
        EXPECT_NEAR(outcome_probability(DensityOperator::maximally_mixed(2), q, w), q.element(w).trace().real() / 2,
                    1e-15);
    }
}

TEST(Expectation, Examples) {
    EXPECT_NEAR(expectation(DensityOperator::basis(2, 0), z_pvm()), 1.0, 1e-15);
    const Povm sym = Povm::create(OutcomeSpace({"+", "-"}, std::vector<double>{1.0, -1.0}),
                                  {test::proj_plus(), test::proj_minus()});
    EXPECT_NEAR(expectation(DensityOperator::maximally_mixed(2), sym), 0.0, 1e-15);
    EXPECT_NEAR(expectation(DensityOperator::basis(2, 0), qubit_phase_povm(4)), 1.5, 1e-15);
    EXPECT_POVMF_ERROR(expectation(DensityOperator::basis(2, 0), Povm::create(OutcomeSpace({"x"}), {identity(2)})),
                       ErrorCode::NotNumeric);
}

TEST(PvmFromHermitian, PauliZ) {
    const Povm p = pvm_from_hermitian(test::pauli_z());
    ASSERT_EQ(p.size(), 2u);
    const auto plus = p.space().index_of("1");
    const auto minus = p.space().index_of("-1");
    EXPECT_MATRIX_NEAR(p.element(plus), test::proj0(), 1e-14);
    EXPECT_MATRIX_NEAR(p.element(minus), test::proj1(), 1e-14);
    EXPECT_EQ(p.space().value(plus), 1.0);
}

TEST(PvmFromHermitian, DegenerateCollapses) {
    const Povm p = pvm_from_hermitian(identity(2));
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.space().label(0), "1");
    EXPECT_MATRIX_NEAR(p.element(std::size_t{0}), identity(2), 1e-14);
}

TEST(PvmFromHermitian, PauliX) {
    const Povm p = pvm_from_hermitian(test::pauli_x());
    EXPECT_MATRIX_NEAR(p.element(p.space().index_of("1")), test::proj_plus(), 1e-14);
    EXPECT_MATRIX_NEAR(p.element(p.space().index_of("-1")), test::proj_minus(), 1e-14);
    EXPECT_POVMF_ERROR(pvm_from_hermitian(test::mat2(0, 1, 0, 0)), ErrorCode::NotHermitian);
}

TEST(QubitPhasePovm, MEqualsTwoIsXBasis) {
    const Povm p = qubit_phase_povm(2);
    EXPECT_MATRIX_NEAR(p.element(std::size_t{0}), test::proj_plus(), 1e-15);
    EXPECT_MATRIX_NEAR(p.element(std::size_t{1}), test::proj_minus(), 1e-15);
}

TEST(QubitPhasePovm, ElementsRankOneAndComplete) {
    for (int m = 2; m <= 8; ++m) {
        const Povm p = qubit_phase_povm(m);
        Matrix sum = Matrix::Zero(2, 2);
        for (std::size_t d = 0; d < p.size(); ++d) {
            const Matrix& e = p.element(d);
            EXPECT_TRUE(is_psd(e));
            EXPECT_NEAR(e.trace().real(), 2.0 / m, 1e-15);
            // Rank one: e^2 = Tr(e) e.
            EXPECT_MATRIX_NEAR(e * e, e.trace() * e, 1e-15);
            const double phase = 2 * std::numbers::pi * static_cast<double>(d) / m;
            EXPECT_NEAR(std::abs(e(1, 0) - std::polar(1.0 / m, phase)), 0.0, 1e-15);
            sum += e;
        }
        EXPECT_MATRIX_NEAR(sum, identity(2), 1e-14);
    }
    EXPECT_POVMF_ERROR(qubit_phase_povm(1), ErrorCode::InvalidArgument);
}

TEST(Sampling, CertainOutcome) {
    Rng rng(1);
    const Povm p = Povm::create(OutcomeSpace::range(2), {test::proj0(), test::proj1()});
    for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_outcome(DensityOperator::basis(2, 0), p, rng), 0u);
}

TEST(Sampling, FrequenciesWithinFourSigma) {
    Rng rng(2);
    const Povm p = qubit_phase_povm(4);
    const int n = 100000;
    std::vector<int> counts(4, 0);
    for (int i = 0; i < n; ++i) ++counts[sample_outcome(DensityOperator::maximally_mixed(2), p, rng)];
    const double sigma = std::sqrt(0.25 * 0.75 / n);
    for (int c : counts) EXPECT_LT(std::abs(c / double(n) - 0.25), 4 * sigma);
}

TEST(Sampling, SkipsZeroProbability) {
    Rng rng(3);
    const std::vector<double> probs{0.0, 0.5, 0.0, 0.5};
    for (int i = 0; i < 2000; ++i) {
        const auto k = sample_index(probs, rng);
        EXPECT_TRUE(k == 1 || k == 3);
    }
}

}  // namespace
}  // namespace povmf

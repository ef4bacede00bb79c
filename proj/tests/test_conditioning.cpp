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
#include <vector>

#include "povmf/conditioning.hpp"
#include "povmf/instruments.hpp"
#include "povmf/random.hpp"
#include "test_util.hpp"

namespace povmf {
namespace {

Povm z_pvm() {
    return Povm::create(OutcomeSpace({"+1", "-1"}, std::vector<double>{1.0, -1.0}), {test::proj0(), test::proj1()});
}

Povm local(const Povm& p, bool first) {
    std::vector<Matrix> els;
    for (const auto& e : p.elements()) els.push_back(first ? tensor(e, identity(2)) : tensor(identity(2), e));
    return Povm::create(p.space(), std::move(els));
}

struct LocalPair {
    Povm a;
    Povm b;
    DensityOperator rho;
};

LocalPair random_pair(Rng& rng) {
    Povm pa = random_povm(2, 2 + rng.below(2), rng);
    const std::vector<double> values{-1.0, 0.5, 2.0};
    std::vector<double> v(values.begin(), values.begin() + static_cast<long>(pa.size()));
    pa = Povm::create(OutcomeSpace(pa.space().labels(), v), pa.elements());
    return {local(pa, true), local(random_povm(2, 2 + rng.below(2), rng), false), random_density(4, rng)};
}

TEST(RhoSeminorm, Examples) {
    Rng rng(1);
    const auto rho = random_density(3, rng);
    EXPECT_EQ(rho_seminorm(Matrix::Zero(3, 3), rho), 0.0);
    EXPECT_NEAR(rho_seminorm(identity(3), rho), 1.0, 1e-14);
    const Matrix g = random_hermitian(3, rng);
    const Matrix x = random_hermitian(3, rng);
    const Matrix c = x - (x * rho.matrix()).trace() * identity(3);
    EXPECT_TRUE(rho_equivalent(g, g + c, rho, 1e-12));
    EXPECT_FALSE(rho_equivalent(g, g + identity(3), rho));
    EXPECT_POVMF_ERROR(rho_seminorm(identity(2), rho), ErrorCode::DimensionMismatch);
}

TEST(JointPovm, TrivialPartner) {
    Rng rng(2);
    const Povm a = random_povm(2, 3, rng);
    const Povm j = joint_povm(a, trivial_povm(2));
    ASSERT_EQ(j.size(), a.size());
    for (std::size_t w = 0; w < a.size(); ++w) {
        EXPECT_MATRIX_NEAR(j.element(w), a.element(w), 1e-15);
        EXPECT_EQ(j.space().label(w), a.space().label(w) + ",1");
    }
}

TEST(JointPovm, TensorSlotsAndMarginal) {
    Rng rng(3);
    const Povm a = random_povm(2, 2, rng), b = random_povm(2, 3, rng);
    const Povm j = joint_povm(local(a, true), local(b, false));
    for (std::size_t wa = 0; wa < a.size(); ++wa) {
        Matrix marginal = Matrix::Zero(4, 4);
        for (std::size_t wb = 0; wb < b.size(); ++wb) {
            EXPECT_MATRIX_NEAR(j.element(wa * b.size() + wb), tensor(a.element(wa), b.element(wb)), 1e-14);
            marginal += j.element(wa * b.size() + wb);
        }
        EXPECT_MATRIX_NEAR(marginal, tensor(a.element(wa), identity(2)), 1e-14);
    }
}

TEST(JointPovm, RejectsNonCommuting) {
    EXPECT_POVMF_ERROR(joint_povm(z_pvm(), qubit_phase_povm(2)), ErrorCode::NotCommuting);
}

TEST(ConditionalPovm, TrivialConditioning) {
    Rng rng(4);
    const Povm a = random_povm(2, 3, rng);
    const auto rho = random_density(2, rng);
    const auto cp = conditional_povm(a, trivial_povm(2), rho);
    for (std::size_t wa = 0; wa < a.size(); ++wa) EXPECT_MATRIX_NEAR(cp.table(wa, 0), a.element(wa), 1e-14);
}

TEST(ConditionalPovm, PerfectSelfConditioning) {
    const auto rho = DensityOperator::from_matrix(test::mat2(0.3, 0.2, 0.2, 0.7));
    const auto cp = conditional_povm(z_pvm(), z_pvm(), rho);
    const Matrix& r = rho.matrix();
    EXPECT_NEAR((r * cp.table(0, 0)).trace().real(), 1.0, 1e-14);
    EXPECT_NEAR((r * cp.table(1, 0)).trace().real(), 0.0, 1e-14);
    EXPECT_NEAR((r * cp.table(1, 1)).trace().real(), 1.0, 1e-14);
}

TEST(ConditionalPovm, FiniteFormIdentityAndCompleteness) {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const auto inst = random_pair(rng);
        const auto cp = conditional_povm(inst.a, inst.b, inst.rho);
        for (std::size_t wb : cp.support()) {
            double total = 0.0;
            for (std::size_t wa = 0; wa < inst.a.size(); ++wa) {
                EXPECT_MATRIX_NEAR(cp.table(wa, wb) * cp.marginal_b(wb), inst.a.element(wa) * inst.b.element(wb),
                                   1e-12);
                total += (inst.rho.matrix() * cp.table(wa, wb)).trace().real();
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
            EXPECT_TRUE(rho_equivalent(cp.element(inst.a.space().all(), wb), identity(4), inst.rho, 1e-12));
        }
    }
}

TEST(ConditionalPovm, CompletenessIsOnlyRhoEquivalence) {
    // The closed form sums to B(w)/mu(w), which is not the identity operator.
    const auto rho = DensityOperator::maximally_mixed(2);
    const auto cp = conditional_povm(trivial_povm(2), z_pvm(), rho);
    EXPECT_MATRIX_NEAR(cp.element(Event{0}, 0), 2.0 * test::proj0(), 1e-15);
    EXPECT_GT(test::max_abs(cp.element(Event{0}, 0) - identity(2)), 0.5);
    EXPECT_NEAR(rho_seminorm(cp.element(Event{0}, 0) - identity(2), rho), 0.0, 1e-15);
}

TEST(ConditionalPovm, Additivity) {
    Rng rng(6);
    const auto inst = random_pair(rng);
    const auto cp = conditional_povm(inst.a, inst.b, inst.rho);
    const Event e1{0}, rest = [&] {
        Event e;
        for (std::size_t k = 1; k < inst.a.size(); ++k) e.push_back(k);
        return e;
    }();
    for (std::size_t wb : cp.support()) {
        EXPECT_MATRIX_NEAR(cp.element(inst.a.space().all(), wb), cp.element(e1, wb) + cp.element(rest, wb), 1e-14);
    }
}

TEST(ConditionalPovm, UnsupportedOutcome) {
    const auto cp = conditional_povm(z_pvm(), z_pvm(), DensityOperator::basis(2, 0));
    EXPECT_TRUE(cp.supported(0));
    EXPECT_FALSE(cp.supported(1));
    EXPECT_EQ(cp.support(), (std::vector<std::size_t>{0}));
    EXPECT_POVMF_ERROR(cp.table(0, 1), ErrorCode::ImpossibleOutcome);
    EXPECT_POVMF_ERROR(cp.element(Event{}, 1), ErrorCode::ImpossibleOutcome);
    EXPECT_POVMF_ERROR(conditional_probability(cp, Event{0}, 1), ErrorCode::ImpossibleOutcome);
}

TEST(ConditionalPovm, KrausRepresentationDoesNotMatter) {
    // Two instruments with the same induced POVM yield the same table.
    Rng rng(7);
    const Povm b = random_povm(2, 2, rng);
    std::vector<KrausList> k1, k2;
    for (const auto& e : b.elements()) {
        const Matrix s = psd_sqrt(e);
        k1.push_back({s});
        k2.push_back({random_unitary(2, rng) * s});
    }
    const Povm b1 = induced_povm(Instrument::create(b.space(), k1));
    const Povm b2 = induced_povm(Instrument::create(b.space(), k2));
    const Povm a = random_povm(2, 3, rng);
    const auto rho = random_density(4, rng);
    const auto cp1 = conditional_povm(local(a, true), local(b1, false), rho);
    const auto cp2 = conditional_povm(local(a, true), local(b2, false), rho);
    for (std::size_t wb : cp1.support()) {
        for (std::size_t wa = 0; wa < a.size(); ++wa) {
            EXPECT_LE(rho_seminorm(cp1.table(wa, wb) - cp2.table(wa, wb), rho), 1e-10);
        }
    }
}

TEST(ConditionalProbability, Examples) {
    Rng rng(8);
    const auto inst = random_pair(rng);
    const auto cp = conditional_povm(inst.a, inst.b, inst.rho);
    const Matrix& r = inst.rho.matrix();
    for (std::size_t wb : cp.support()) {
        EXPECT_NEAR(conditional_probability(cp, inst.a.space().all(), wb), 1.0, 1e-14);
        EXPECT_EQ(conditional_probability(cp, Event{}, wb), 0.0);
        const Event e{0};
        const double bayes = (r * inst.a.element(e) * inst.b.element(wb)).trace().real() /
                             (r * inst.b.element(wb)).trace().real();
        EXPECT_NEAR(conditional_probability(cp, e, wb), bayes, 1e-12);
    }
}

TEST(ConditionalExpectation, Examples) {
    Rng rng(9);
    const auto rho = random_density(2, rng);
    const auto trivial = conditional_povm(qubit_phase_povm(3), trivial_povm(2), rho);
    EXPECT_NEAR(conditional_expectation_given_outcome(trivial, 0), expectation(rho, qubit_phase_povm(3)), 1e-14);

    const auto mixed = DensityOperator::from_matrix(test::mat2(0.4, 0.1, 0.1, 0.6));
    const auto zz = conditional_povm(z_pvm(), z_pvm(), mixed);
    EXPECT_NEAR(conditional_expectation_given_outcome(zz, 0), 1.0, 1e-14);
    EXPECT_NEAR(conditional_expectation_given_outcome(zz, 1), -1.0, 1e-14);

    const auto no_values = conditional_povm(Povm::create(OutcomeSpace({"a", "b"}), z_pvm().elements()), z_pvm(), mixed);
    EXPECT_POVMF_ERROR(conditional_expectation_given_outcome(no_values, 0), ErrorCode::NotNumeric);
}

TEST(ConditionalExpectation, Tower) {
    Rng rng(10);
    for (int t = 0; t < 10; ++t) {
        const auto inst = random_pair(rng);
        const auto cp = conditional_povm(inst.a, inst.b, inst.rho);
        double total = 0.0;
        for (std::size_t wb : cp.support()) total += cp.marginal_b(wb) * conditional_expectation_given_outcome(cp, wb);
        EXPECT_NEAR(total, expectation(inst.rho, inst.a), 1e-10);
    }
}

TEST(ConditionalExpectationPovm, TrivialPartnerHasOneAtom) {
    Rng rng(11);
    const auto rho = random_density(2, rng);
    const auto ce = conditional_expectation_povm(qubit_phase_povm(4), trivial_povm(2), rho);
    ASSERT_EQ(ce.atom_values.size(), 1u);
    EXPECT_NEAR(ce.atom_values[0], expectation(rho, qubit_phase_povm(4)), 1e-14);
    EXPECT_MATRIX_NEAR(ce.element(Event{0}), identity(2), 1e-15);
}

TEST(ConditionalExpectationPovm, CorrelatedPairReproducesAtoms) {
    const auto rho = DensityOperator::from_matrix(test::mat2(0.4, 0.1, 0.1, 0.6));
    const auto ce = conditional_expectation_povm(z_pvm(), z_pvm(), rho);
    ASSERT_EQ(ce.atom_values.size(), 2u);
    for (std::size_t wb = 0; wb < 2; ++wb) {
        const auto atom = static_cast<std::size_t>(ce.atom_of_outcome[wb]);
        EXPECT_MATRIX_NEAR(ce.atom_elements[atom], z_pvm().element(wb), 1e-15);
        EXPECT_NEAR(ce.atom_values[atom], z_pvm().space().value(wb), 1e-14);
    }
}

TEST(ConditionalExpectationPovm, ConsistentWithMarginals) {
    Rng rng(12);
    for (int t = 0; t < 10; ++t) {
        const auto inst = random_pair(rng);
        const auto ce = conditional_expectation_povm(inst.a, inst.b, inst.rho);
        const auto cp = conditional_povm(inst.a, inst.b, inst.rho);
        Event all_atoms;
        for (std::size_t k = 0; k < ce.atom_values.size(); ++k) {
            all_atoms.push_back(k);
            double mass = 0.0;
            for (std::size_t wb = 0; wb < inst.b.size(); ++wb) {
                if (ce.atom_of_outcome[wb] == static_cast<long>(k)) {
                    mass += cp.marginal_b(wb);
                    EXPECT_NEAR(conditional_expectation_given_outcome(cp, wb), ce.atom_values[k], 1e-9);
                }
            }
            EXPECT_NEAR((inst.rho.matrix() * ce.element(Event{k})).trace().real(), mass, 1e-10);
        }
        EXPECT_NEAR((inst.rho.matrix() * ce.element(all_atoms)).trace().real(), 1.0, 1e-10);
    }
}

TEST(NaimarkDilate, PvmRecoveredExactly) {
    const Povm z = z_pvm();
    const auto dil = naimark_dilate(z);
    for (std::size_t w = 0; w < z.size(); ++w) {
        EXPECT_MATRIX_NEAR(dil.isometry.adjoint() * dil.pvm.element(w) * dil.isometry, z.element(w), 1e-15);
    }
}

TEST(NaimarkDilate, QubitPhaseThree) {
    const Povm b = qubit_phase_povm(3);
    const auto dil = naimark_dilate(b);
    EXPECT_EQ(dil.big_dim, 6);
    EXPECT_EQ(dil.dim, 2);
    EXPECT_MATRIX_NEAR(dil.isometry.adjoint() * dil.isometry, identity(2), 1e-14);
    Rng rng(13);
    const auto rho = random_density(2, rng);
    const Matrix lifted = dil.isometry * rho.matrix() * dil.isometry.adjoint();
    for (std::size_t w = 0; w < b.size(); ++w) {
        const Matrix& pi = dil.pvm.element(w);
        EXPECT_MATRIX_NEAR(pi * pi, pi, 0.0);
        EXPECT_MATRIX_NEAR(dil.isometry.adjoint() * pi * dil.isometry, b.element(w), 1e-12);
        EXPECT_NEAR((lifted * pi).trace().real(), outcome_probability(rho, b, w), 1e-12);
    }
}

}  // namespace
}  // namespace povmf

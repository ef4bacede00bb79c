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

#include "povmf/instruments.hpp"
#include "povmf/random.hpp"
#include "test_util.hpp"

namespace povmf {
namespace {

Instrument z_instrument() { return Instrument::create(OutcomeSpace::range(2), {{test::proj0()}, {test::proj1()}}); }
Instrument x_instrument() {
    return Instrument::create(OutcomeSpace::range(2), {{test::proj_plus()}, {test::proj_minus()}});
}

std::vector<Event> powerset(std::size_t n) {
    std::vector<Event> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Event e;
        for (std::size_t k = 0; k < n; ++k) {
            if (mask & (std::size_t{1} << k)) e.push_back(k);
        }
        out.push_back(e);
    }
    return out;
}

TEST(Instrument, CreateExamples) {
    EXPECT_NO_THROW(z_instrument());
    const Matrix half = identity(2) / std::sqrt(2.0);
    EXPECT_NO_THROW(Instrument::create(OutcomeSpace::range(2), {{half}, {half}}));
    EXPECT_POVMF_ERROR(Instrument::create(OutcomeSpace::range(2), {{identity(2)}, {identity(2)}}),
                       ErrorCode::NotTracePreserving);
    EXPECT_POVMF_ERROR(Instrument::create(OutcomeSpace::range(2), {{identity(2)}}), ErrorCode::DimensionMismatch);
}

TEST(InducedPovm, Examples) {
    const Povm p = induced_povm(z_instrument());
    EXPECT_MATRIX_NEAR(p.element(std::size_t{0}), test::proj0(), 0.0);
    EXPECT_MATRIX_NEAR(p.element(std::size_t{1}), test::proj1(), 0.0);
    Rng rng(3);
    const Instrument u = Instrument::create(OutcomeSpace({"u"}), {{random_unitary(3, rng)}});
    EXPECT_MATRIX_NEAR(induced_povm(u).element(std::size_t{0}), identity(3), 1e-14);
}

TEST(Apply, TraceMatchesInducedPovm) {
    Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        const Instrument ins = random_instrument(3, 3, 2, rng);
        const Povm p = induced_povm(ins);
        const auto rho = random_density(3, rng);
        for (const auto& e : powerset(ins.size())) {
            const Matrix out = apply(ins, e, rho);
            EXPECT_NEAR(out.trace().real(), outcome_probability(rho, p, e), 1e-10);
            EXPECT_TRUE(is_psd(out));
        }
        EXPECT_NEAR(apply(ins, ins.space().all(), rho).trace().real(), 1.0, 1e-12);
    }
}

TEST(Apply, ProjectiveAndEmpty) {
    Rng rng(6);
    const auto rho = random_density(2, rng);
    const Instrument z = z_instrument();
    EXPECT_MATRIX_NEAR(apply(z, Event{0}, rho), test::proj0() * rho.matrix() * test::proj0(), 1e-15);
    EXPECT_MATRIX_NEAR(apply(z, Event{}, rho), Matrix::Zero(2, 2), 0.0);
    EXPECT_POVMF_ERROR(apply(z, Event{}, identity(3)), ErrorCode::DimensionMismatch);
}

TEST(PostMeasurementState, Examples) {
    const auto plus = DensityOperator::from_matrix(test::proj_plus());
    EXPECT_MATRIX_NEAR(post_measurement_state(z_instrument(), Event{0}, plus).matrix(), test::proj0(), 1e-15);
    Rng rng(7);
    const auto rho = random_density(2, rng);
    EXPECT_MATRIX_NEAR(post_measurement_state(identity_instrument(2), Event{0}, rho).matrix(), rho.matrix(), 1e-15);
    EXPECT_POVMF_ERROR(post_measurement_state(z_instrument(), Event{1}, DensityOperator::basis(2, 0)),
                       ErrorCode::ImpossibleOutcome);
}

TEST(StronglyCommutes, Examples) {
    const TensorFactorization f({2, 2});
    Rng rng(8);
    const Instrument a = embed_probe_local(random_instrument(2, 2, 2, rng), 0, f);
    const Instrument b = embed_probe_local(random_instrument(2, 3, 1, rng), 1, f);
    EXPECT_TRUE(strongly_commutes(a, b));
    EXPECT_FALSE(strongly_commutes(z_instrument(), x_instrument()));
    EXPECT_TRUE(strongly_commutes(z_instrument(), z_instrument()));
}

TEST(ComposeJoint, IdentityThenInstrument) {
    Rng rng(9);
    const Instrument ins = random_instrument(2, 3, 2, rng);
    const Instrument parts[] = {identity_instrument(2), ins};
    const Instrument joint = compose_joint(parts);
    ASSERT_EQ(joint.size(), ins.size());
    const auto rho = random_density(2, rng);
    for (std::size_t w = 0; w < ins.size(); ++w) {
        EXPECT_MATRIX_NEAR(apply(joint, Event{w}, rho), apply(ins, Event{w}, rho), 1e-14);
        EXPECT_EQ(joint.space().label(w), "1," + ins.space().label(w));
    }
}

TEST(ComposeJoint, RepeatedZHasNoMixedOutcomes) {
    const Instrument parts[] = {z_instrument(), z_instrument()};
    const Instrument joint = compose_joint(parts);
    ASSERT_EQ(joint.size(), 4u);
    const std::size_t sizes[] = {2, 2};
    const std::size_t mixed[] = {0, 1};
    const std::size_t idx = product_index(sizes, mixed);
    EXPECT_EQ(joint.space().label(idx), "0,1");
    Rng rng(10);
    for (int t = 0; t < 5; ++t) {
        EXPECT_NEAR(apply(joint, Event{idx}, random_density(2, rng)).trace().real(), 0.0, 1e-15);
    }
}

TEST(ComposeJoint, OrderIsLastAppliedLeftmost) {
    // Z then X: Kraus for (0,+) is |+><+| |0><0|.
    const Instrument parts[] = {z_instrument(), x_instrument()};
    const Instrument joint = compose_joint(parts);
    EXPECT_MATRIX_NEAR(joint.kraus(0).front(), test::proj_plus() * test::proj0(), 1e-15);
}

TEST(ComposeJoint, TracePreservingAndCapped) {
    Rng rng(11);
    const std::vector<Instrument> parts{random_instrument(2, 2, 2, rng), random_instrument(2, 3, 2, rng),
                                       random_instrument(2, 2, 3, rng)};
    const Instrument joint = compose_joint(parts);
    EXPECT_MATRIX_NEAR(induced_povm(joint).element(joint.space().all()), identity(2), 1e-12);
    EXPECT_POVMF_ERROR(compose_joint(parts, 10), ErrorCode::CapacityExceeded);
}

TEST(ProductEvent, RectangleIndices) {
    const std::size_t sizes[] = {2, 3};
    const Event events[] = {Event{1}, Event{0, 2}};
    EXPECT_EQ(product_event(sizes, events), (Event{3, 5}));
}

TEST(EmbedProbeLocal, Examples) {
    const TensorFactorization f({2, 3});
    const Instrument id = embed_probe_local(identity_instrument(3), 1, f);
    EXPECT_MATRIX_NEAR(id.kraus(0).front(), identity(6), 0.0);
    Rng rng(12);
    const Instrument local = random_instrument(3, 2, 2, rng);
    const Instrument big = embed_probe_local(local, 1, f);
    const Povm p_big = induced_povm(big);
    const Povm p_local = induced_povm(local);
    for (std::size_t w = 0; w < local.size(); ++w) {
        EXPECT_MATRIX_NEAR(p_big.element(w), tensor(identity(2), p_local.element(w)), 1e-13);
    }
    EXPECT_POVMF_ERROR(embed_probe_local(local, 0, f), ErrorCode::DimensionMismatch);
    EXPECT_POVMF_ERROR(embed_probe_local(local, 2, f), ErrorCode::InvalidArgument);
}

TEST(VonNeumannInstrument, Examples) {
    const Povm z = pvm_from_hermitian(test::pauli_z());
    const Instrument ins = von_neumann_instrument(z);
    const Povm back = induced_povm(ins);
    for (std::size_t w = 0; w < z.size(); ++w) {
        EXPECT_MATRIX_NEAR(ins.kraus(w).front(), z.element(w), 1e-14);
        EXPECT_MATRIX_NEAR(back.element(w), z.element(w), 1e-14);
    }
    EXPECT_POVMF_ERROR(von_neumann_instrument(qubit_phase_povm(3)), ErrorCode::NotProjective);
}

}  // namespace
}  // namespace povmf

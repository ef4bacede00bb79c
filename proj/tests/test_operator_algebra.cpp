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

#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/random.hpp"
#include "test_util.hpp"

namespace povmf {
namespace {

using test::kI;
using test::mat2;

TEST(Tensor, IdentityTimesIdentity) { EXPECT_MATRIX_NEAR(tensor(identity(2), identity(2)), identity(4), 0.0); }

TEST(Tensor, ProjectorSlowestFactor) {
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = expected(1, 1) = 1.0;
    EXPECT_MATRIX_NEAR(tensor(test::proj0(), identity(2)), expected, 0.0);
}

TEST(Tensor, PauliXZHandExpanded) {
    // X (x) Z = [[0, Z], [Z, 0]]
    Matrix expected(4, 4);
    expected << 0, 0, 1, 0,
                0, 0, 0, -1,
                1, 0, 0, 0,
                0, -1, 0, 0;
    EXPECT_MATRIX_NEAR(tensor(test::pauli_x(), test::pauli_z()), expected, 0.0);
}

TEST(Tensor, SpanOfThree) {
    Rng rng(3);
    const std::vector<Matrix> fs{random_gaussian(2, 2, rng), random_gaussian(3, 3, rng), random_gaussian(2, 2, rng)};
    EXPECT_MATRIX_NEAR(tensor(fs), tensor(tensor(fs[0], fs[1]), fs[2]), 1e-14);
    EXPECT_EQ(tensor(std::vector<Matrix>{}).rows(), 1);
}

TEST(TensorFactorization, RejectsZeroDims) {
    EXPECT_POVMF_ERROR(TensorFactorization({2, 0}), ErrorCode::InvalidArgument);
    const TensorFactorization f({2, 3, 4});
    EXPECT_EQ(f.total(), 24);
    EXPECT_EQ(f.dim(1), 3);
}

TEST(PartialTrace, ProductStateFactorizes) {
    Rng rng(5);
    const Matrix rho = random_hermitian(2, rng);
    const Matrix sigma = random_hermitian(3, rng);
    const TensorFactorization f({2, 3});
    const std::size_t second[] = {1};
    const std::size_t first[] = {0};
    EXPECT_MATRIX_NEAR(partial_trace(tensor(rho, sigma), f, second), rho * sigma.trace(), 1e-13);
    EXPECT_MATRIX_NEAR(partial_trace(tensor(rho, sigma), f, first), sigma * rho.trace(), 1e-13);
}

TEST(PartialTrace, IdentityFactor) {
    const std::size_t second[] = {1};
    EXPECT_MATRIX_NEAR(partial_trace(identity(4), TensorFactorization({2, 2}), second), 2.0 * identity(2), 0.0);
}

TEST(PartialTrace, BellStateIsMaximallyMixed) {
    Vector phi = Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const Matrix bell = phi * phi.adjoint();
    const TensorFactorization f({2, 2});
    for (std::size_t slot : {0u, 1u}) {
        const std::size_t traced[] = {slot};
        EXPECT_MATRIX_NEAR(partial_trace(bell, f, traced), 0.5 * identity(2), 1e-15);
    }
}

TEST(PartialTrace, MiddleSlotAndAllSlots) {
    Rng rng(9);
    const Matrix a = random_hermitian(2, rng), b = random_hermitian(3, rng), c = random_hermitian(2, rng);
    const std::vector<Matrix> fs{a, b, c};
    const TensorFactorization f({2, 3, 2});
    const std::size_t middle[] = {1};
    EXPECT_MATRIX_NEAR(partial_trace(tensor(fs), f, middle), tensor(a, c) * b.trace(), 1e-12);
    const std::size_t all[] = {0, 1, 2};
    const Matrix scalar = partial_trace(tensor(fs), f, all);
    ASSERT_EQ(scalar.rows(), 1);
    EXPECT_NEAR(std::abs(scalar(0, 0) - a.trace() * b.trace() * c.trace()), 0.0, 1e-12);
}

TEST(PartialTrace, InvalidSlots) {
    const TensorFactorization f({2, 2});
    const std::size_t bad[] = {2};
    const std::size_t dup[] = {0, 0};
    EXPECT_POVMF_ERROR(partial_trace(identity(4), f, bad), ErrorCode::InvalidArgument);
    EXPECT_POVMF_ERROR(partial_trace(identity(4), f, dup), ErrorCode::InvalidArgument);
    const std::size_t ok[] = {0};
    EXPECT_POVMF_ERROR(partial_trace(identity(3), f, ok), ErrorCode::DimensionMismatch);
}

TEST(EmbedOperator, MatchesKronecker) {
    Rng rng(13);
    const Matrix b = random_gaussian(3, 3, rng);
    const TensorFactorization f({2, 3, 2});
    const std::size_t slot[] = {1};
    EXPECT_MATRIX_NEAR(embed_operator(b, f, slot), tensor(tensor(identity(2), b), identity(2)), 1e-14);
}

TEST(EmbedOperator, NonAdjacentSlots) {
    // An operator on slots {0,2} of a 2x2x2 space: embedding a x c must equal a x I x c.
    Rng rng(17);
    const Matrix a = random_gaussian(2, 2, rng), c = random_gaussian(2, 2, rng);
    const TensorFactorization f({2, 2, 2});
    const std::size_t slots[] = {0, 2};
    const std::vector<Matrix> expected{a, identity(2), c};
    EXPECT_MATRIX_NEAR(embed_operator(tensor(a, c), f, slots), tensor(expected), 1e-14);
}

TEST(Adjoint, Examples) {
    EXPECT_MATRIX_NEAR(adjoint(identity(3)), identity(3), 0.0);
    EXPECT_MATRIX_NEAR(adjoint(mat2(kI, 0, 0, -kI)), mat2(-kI, 0, 0, kI), 0.0);
    Rng rng(1);
    const Matrix m = random_gaussian(3, 3, rng);
    EXPECT_MATRIX_NEAR(adjoint(adjoint(m)), m, 0.0);
}

TEST(Commutator, Examples) {
    Rng rng(2);
    const Matrix m = random_gaussian(2, 2, rng);
    EXPECT_MATRIX_NEAR(commutator(identity(2), m), Matrix::Zero(2, 2), 1e-15);
    EXPECT_MATRIX_NEAR(commutator(test::pauli_x(), test::pauli_z()), -2.0 * kI * test::pauli_y(), 0.0);
    const Matrix a = random_gaussian(2, 2, rng), b = random_gaussian(2, 2, rng);
    EXPECT_MATRIX_NEAR(commutator(tensor(a, identity(2)), tensor(identity(2), b)), Matrix::Zero(4, 4), 1e-14);
    EXPECT_POVMF_ERROR(commutator(identity(2), identity(3)), ErrorCode::DimensionMismatch);
}

TEST(Predicates, Psd) {
    EXPECT_TRUE(is_psd(identity(3)));
    EXPECT_FALSE(is_psd(mat2(1, 0, 0, -0.5)));
    Rng rng(4);
    const Matrix v = random_gaussian(4, 1, rng);
    EXPECT_TRUE(is_psd(v * v.adjoint()));
    EXPECT_FALSE(is_psd(mat2(1, 1, 0, 1)));  // not Hermitian
}

TEST(Predicates, HermitianAndUnitary) {
    EXPECT_TRUE(is_hermitian(test::pauli_y()));
    EXPECT_FALSE(is_hermitian(mat2(0, 1, 0, 0)));
    Rng rng(6);
    EXPECT_TRUE(is_unitary(random_unitary(5, rng)));
    EXPECT_FALSE(is_unitary(2.0 * identity(2)));
}

TEST(PsdSqrt, Examples) {
    EXPECT_MATRIX_NEAR(psd_sqrt(identity(2)), identity(2), 1e-15);
    EXPECT_MATRIX_NEAR(psd_sqrt(mat2(4, 0, 0, 9)), mat2(2, 0, 0, 3), 1e-14);
    Rng rng(8);
    const Matrix g = random_gaussian(3, 3, rng);
    const Matrix p = g * g.adjoint();
    const Matrix r = psd_sqrt(p);
    EXPECT_MATRIX_NEAR(r * r, p, 1e-12);
    EXPECT_TRUE(is_psd(r));
    EXPECT_POVMF_ERROR(psd_sqrt(mat2(1, 0, 0, -1)), ErrorCode::NotPositive);
}

TEST(InverseSqrt, InvertsPositiveDefinite) {
    Rng rng(10);
    const Matrix g = random_gaussian(3, 3, rng);
    const Matrix p = g * g.adjoint() + identity(3);
    const Matrix s = inverse_sqrt(p);
    EXPECT_MATRIX_NEAR(s * p * s, identity(3), 1e-12);
}

TEST(TraceDistance, Examples) {
    EXPECT_NEAR(trace_distance(test::proj0(), test::proj1()), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(test::proj0(), test::proj0()), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(test::proj0(), test::proj_plus()), std::sqrt(0.5), 1e-14);
    EXPECT_NEAR(spectral_norm(mat2(3, 0, 0, -4)), 4.0, 1e-14);
}

TEST(Validation, RejectsNonFinite) {
    Matrix m = identity(2);
    m(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_POVMF_ERROR(require_square_finite(m, "m"), ErrorCode::InvalidArgument);
    EXPECT_POVMF_ERROR(require_square_finite(Matrix::Zero(2, 3), "m"), ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace povmf

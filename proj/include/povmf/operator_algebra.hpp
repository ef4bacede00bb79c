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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace povmf {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Relative tolerance used for Hermiticity, positivity and completeness checks.
inline constexpr double kDefaultTol = 1e-9;

/// Ordered factor dimensions of a tensor-product space. The first factor is
/// the slowest-varying one in the Kronecker layout (system first, then probe
/// subsystems in time order).
class TensorFactorization {
public:
    explicit TensorFactorization(std::vector<Index> factor_dims);

    const std::vector<Index>& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return dims_.size(); }
    Index dim(std::size_t slot) const { return dims_.at(slot); }
    Index total() const noexcept { return total_; }

private:
    std::vector<Index> dims_;
    Index total_ = 1;
};

Matrix identity(Index dim);

/// Throws DimensionMismatch unless `m` is square and non-empty, and
/// InvalidArgument if it holds a NaN or infinity.
void require_square_finite(const Matrix& m, const char* what);

/// Kronecker product with `a` as the slower-varying factor.
Matrix tensor(const Matrix& a, const Matrix& b);
Matrix tensor(std::span<const Matrix> factors);

/// Reduced matrix on the factors not listed in `traced` (0-based slots).
Matrix partial_trace(const Matrix& m, const TensorFactorization& f, std::span<const std::size_t> traced);

/// Places `op`, which acts on the factors `slots` (in that order), into the
/// full space of `f` with identities on every other factor.
Matrix embed_operator(const Matrix& op, const TensorFactorization& f, std::span<const std::size_t> slots);

Matrix adjoint(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);

bool is_hermitian(const Matrix& m, double tol = kDefaultTol);
bool is_psd(const Matrix& m, double tol = kDefaultTol);
bool is_unitary(const Matrix& u, double tol = kDefaultTol);

/// Hermitian part (m + m*)/2.
Matrix hermitize(const Matrix& m);

/// PSD square root through the Hermitian eigendecomposition; eigenvalues that
/// are negative within tolerance are clamped to zero.
Matrix psd_sqrt(const Matrix& m, double tol = kDefaultTol);

/// Inverse square root of a positive definite matrix.
Matrix inverse_sqrt(const Matrix& m, double tol = kDefaultTol);

double spectral_norm(const Matrix& m);

/// Half the trace norm of a - b.
double trace_distance(const Matrix& a, const Matrix& b);

}  // namespace povmf

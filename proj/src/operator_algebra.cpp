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

#include "povmf/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "povmf/error.hpp"

namespace povmf {

namespace {

// Mixed-radix digits of `flat` with the first factor most significant.
void split_index(Index flat, const std::vector<Index>& dims, std::vector<Index>& digits) {
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = flat % dims[k];
        flat /= dims[k];
    }
}

std::vector<bool> slot_mask(std::span<const std::size_t> slots, std::size_t n, const char* what) {
    std::vector<bool> mask(n, false);
    for (std::size_t s : slots) {
        if (s >= n) {
            fail(ErrorCode::InvalidArgument, std::string(what) + ": factor index " + std::to_string(s) +
                                                 " out of range for " + std::to_string(n) + " factors");
        }
        if (mask[s]) {
            fail(ErrorCode::InvalidArgument, std::string(what) + ": factor index " + std::to_string(s) + " repeated");
        }
        mask[s] = true;
    }
    return mask;
}

Eigen::SelfAdjointEigenSolver<Matrix> hermitian_eigen(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    if (es.info() != Eigen::Success) {
        fail(ErrorCode::InvalidArgument, "Hermitian eigendecomposition did not converge");
    }
    return es;
}

}  // namespace

TensorFactorization::TensorFactorization(std::vector<Index> factor_dims) : dims_(std::move(factor_dims)) {
    if (dims_.empty()) {
        fail(ErrorCode::InvalidArgument, "tensor factorization needs at least one factor");
    }
    for (Index d : dims_) {
        if (d < 1) {
            fail(ErrorCode::InvalidArgument, "tensor factor dimensions must be positive");
        }
        total_ *= d;
    }
}

Matrix identity(Index dim) { return Matrix::Identity(dim, dim); }

void require_square_finite(const Matrix& m, const char* what) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
        fail(ErrorCode::DimensionMismatch, std::string(what) + ": expected a non-empty square matrix, got " +
                                               std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) {
        fail(ErrorCode::InvalidArgument, std::string(what) + ": matrix has non-finite entries");
    }
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix tensor(std::span<const Matrix> factors) {
    if (factors.empty()) {
        return identity(1);
    }
    Matrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = tensor(out, factors[k]);
    }
    return out;
}

Matrix partial_trace(const Matrix& m, const TensorFactorization& f, std::span<const std::size_t> traced) {
    if (m.rows() != f.total() || m.cols() != f.total()) {
        fail(ErrorCode::DimensionMismatch, "partial_trace: matrix dimension does not match factorization");
    }
    const std::vector<bool> is_traced = slot_mask(traced, f.size(), "partial_trace");
    const auto& dims = f.dims();

    Index kept_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (!is_traced[k]) kept_dim *= dims[k];
    }

    // Flat index -> (kept index, traced index) lookup.
    const Index total = f.total();
    std::vector<Index> kept_of(static_cast<std::size_t>(total)), traced_of(static_cast<std::size_t>(total));
    std::vector<Index> digits(dims.size());
    for (Index flat = 0; flat < total; ++flat) {
        split_index(flat, dims, digits);
        Index kept = 0, tr = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (is_traced[k]) {
                tr = tr * dims[k] + digits[k];
            } else {
                kept = kept * dims[k] + digits[k];
            }
        }
        kept_of[static_cast<std::size_t>(flat)] = kept;
        traced_of[static_cast<std::size_t>(flat)] = tr;
    }

    Matrix out = Matrix::Zero(kept_dim, kept_dim);
    for (Index j = 0; j < total; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        for (Index i = 0; i < total; ++i) {
            const auto si = static_cast<std::size_t>(i);
            if (traced_of[si] == traced_of[sj]) {
                out(kept_of[si], kept_of[sj]) += m(i, j);
            }
        }
    }
    return out;
}

Matrix embed_operator(const Matrix& op, const TensorFactorization& f, std::span<const std::size_t> slots) {
    const std::vector<bool> in_op = slot_mask(slots, f.size(), "embed_operator");
    const auto& dims = f.dims();
    Index op_dim = 1;
    for (std::size_t s : slots) op_dim *= dims[s];
    if (op.rows() != op_dim || op.cols() != op_dim) {
        fail(ErrorCode::DimensionMismatch, "embed_operator: operator dimension " + std::to_string(op.rows()) +
                                               " does not match the selected factors (" + std::to_string(op_dim) + ")");
    }

    const Index total = f.total();
    std::vector<Index> op_of(static_cast<std::size_t>(total)), rest_of(static_cast<std::size_t>(total));
    std::vector<Index> digits(dims.size());
    for (Index flat = 0; flat < total; ++flat) {
        split_index(flat, dims, digits);
        Index o = 0, r = 0;
        for (std::size_t s : slots) o = o * dims[s] + digits[s];
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (!in_op[k]) r = r * dims[k] + digits[k];
        }
        op_of[static_cast<std::size_t>(flat)] = o;
        rest_of[static_cast<std::size_t>(flat)] = r;
    }

    Matrix out = Matrix::Zero(total, total);
    for (Index j = 0; j < total; ++j) {
        const auto sj = static_cast<std::size_t>(j);
        for (Index i = 0; i < total; ++i) {
            const auto si = static_cast<std::size_t>(i);
            if (rest_of[si] == rest_of[sj]) {
                out(i, j) = op(op_of[si], op_of[sj]);
            }
        }
    }
    return out;
}

Matrix adjoint(const Matrix& m) { return m.adjoint(); }

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::DimensionMismatch, "commutator: operand dimensions differ");
    }
    return a * b - b * a;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

bool is_psd(const Matrix& m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    const auto es = hermitian_eigen(m);
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    return ev.minCoeff() >= -tol * scale;
}

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const Matrix id = identity(u.rows());
    return (u.adjoint() * u - id).norm() <= tol * std::max(1.0, std::sqrt(static_cast<double>(u.rows())));
}

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix psd_sqrt(const Matrix& m, double tol) {
    require_square_finite(m, "psd_sqrt");
    if (!is_psd(m, tol)) {
        fail(ErrorCode::NotPositive, "psd_sqrt: matrix is not positive semidefinite");
    }
    const auto es = hermitian_eigen(m);
    const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

Matrix inverse_sqrt(const Matrix& m, double tol) {
    require_square_finite(m, "inverse_sqrt");
    if (!is_hermitian(m, tol)) {
        fail(ErrorCode::NotHermitian, "inverse_sqrt: matrix is not Hermitian");
    }
    const auto es = hermitian_eigen(m);
    const auto& ev = es.eigenvalues();
    if (ev.minCoeff() <= tol * std::max(1.0, ev.cwiseAbs().maxCoeff())) {
        fail(ErrorCode::NotPositive, "inverse_sqrt: matrix is not positive definite");
    }
    const Eigen::VectorXd inv = ev.cwiseSqrt().cwiseInverse();
    return es.eigenvectors() * inv.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double trace_distance(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::DimensionMismatch, "trace_distance: operand dimensions differ");
    }
    Eigen::JacobiSVD<Matrix> svd(a - b);
    return 0.5 * svd.singularValues().sum();
}

}  // namespace povmf

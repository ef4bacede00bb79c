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

#include "povmf/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace povmf {

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
    Matrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

Matrix random_unitary(Index dim, Rng& rng) {
    const Matrix g = random_gaussian(dim, dim, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phases of R's diagonal so Q is Haar distributed.
    for (Index k = 0; k < dim; ++k) {
        const Complex d = r(k, k);
        const double a = std::abs(d);
        if (a > 0.0) q.col(k) *= d / a;
    }
    return q;
}

Matrix random_hermitian(Index dim, Rng& rng) { return hermitize(random_gaussian(dim, dim, rng)); }

DensityOperator random_density(Index dim, Rng& rng, Index rank) {
    const Matrix g = random_gaussian(dim, rank > 0 ? rank : dim, rng);
    const Matrix m = g * g.adjoint();
    return DensityOperator::from_matrix(hermitize(m / m.trace().real()));
}

Vector random_pure_vector(Index dim, Rng& rng) {
    Vector v = random_gaussian(dim, 1, rng).col(0);
    return v / v.norm();
}

Povm random_povm(Index dim, std::size_t outcomes, Rng& rng) {
    std::vector<Matrix> gram;
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < outcomes; ++i) {
        const Matrix g = random_gaussian(dim, dim, rng);
        gram.push_back(g.adjoint() * g);
        sum += gram.back();
    }
    const Matrix s = inverse_sqrt(hermitize(sum));
    std::vector<Matrix> elements;
    for (const auto& m : gram) elements.push_back(hermitize(s * m * s));
    return Povm::create(OutcomeSpace::range(outcomes), std::move(elements));
}

Instrument random_instrument(Index dim, std::size_t outcomes, std::size_t kraus_per_outcome, Rng& rng) {
    std::vector<KrausList> raw(outcomes);
    Matrix sum = Matrix::Zero(dim, dim);
    for (auto& list : raw) {
        for (std::size_t n = 0; n < kraus_per_outcome; ++n) {
            list.push_back(random_gaussian(dim, dim, rng));
            sum += list.back().adjoint() * list.back();
        }
    }
    const Matrix s = inverse_sqrt(hermitize(sum));
    for (auto& list : raw) {
        for (auto& k : list) k = k * s;
    }
    return Instrument::create(OutcomeSpace::range(outcomes), std::move(raw));
}

ChainModel random_chain_model(Index sys_dim, const Povm& probe_povm, std::size_t horizon, Rng& rng) {
    const Index probe_dim = probe_povm.dim();
    auto initial = random_density(sys_dim, rng);
    Matrix u = random_unitary(sys_dim * probe_dim, rng);
    return ChainModel::create(std::move(initial), {DensityOperator::basis(probe_dim, 0)}, {std::move(u)},
                              {probe_povm}, horizon);
}

}  // namespace povmf

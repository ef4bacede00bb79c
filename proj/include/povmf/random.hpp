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

#include "povmf/filtering.hpp"
#include "povmf/instruments.hpp"
#include "povmf/operator_algebra.hpp"
#include "povmf/quantum_objects.hpp"
#include "povmf/rng.hpp"

namespace povmf {

/// Entries with independent standard normal real and imaginary parts.
Matrix random_gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed unitary from the QR decomposition of a Gaussian matrix.
Matrix random_unitary(Index dim, Rng& rng);

Matrix random_hermitian(Index dim, Rng& rng);

/// G G* / Tr(G G*) with G of shape dim x rank (rank 0 means full rank).
DensityOperator random_density(Index dim, Rng& rng, Index rank = 0);

Vector random_pure_vector(Index dim, Rng& rng);

/// B_i = S^{-1/2} G_i* G_i S^{-1/2}, S = sum_i G_i* G_i.
Povm random_povm(Index dim, std::size_t outcomes, Rng& rng);

/// Kraus operators A_{i,n} = G_{i,n} S^{-1/2}, S = sum G* G, so the family is
/// trace preserving by construction.
Instrument random_instrument(Index dim, std::size_t outcomes, std::size_t kraus_per_outcome, Rng& rng);

/// Chain with a random initial state, the probe prepared in |0>, one random
/// interaction unitary and the given probe POVM, all used at every step.
ChainModel random_chain_model(Index sys_dim, const Povm& probe_povm, std::size_t horizon, Rng& rng);

}  // namespace povmf

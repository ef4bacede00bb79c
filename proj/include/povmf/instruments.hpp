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
#include <span>
#include <vector>

#include "povmf/operator_algebra.hpp"
#include "povmf/quantum_objects.hpp"

namespace povmf {

/// Kraus family of one outcome.
using KrausList = std::vector<Matrix>;

/// Completely positive instrument in operator-sum form. Each outcome owns a
/// finite Kraus list; the representation is kept exactly as supplied.
class Instrument {
public:
    /// Throws DimensionMismatch or NotTracePreserving.
    static Instrument create(OutcomeSpace space, std::vector<KrausList> kraus, double tol = kDefaultTol);

    const OutcomeSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return kraus_.size(); }
    Index dim() const noexcept { return dim_; }
    const KrausList& kraus(std::size_t outcome) const { return kraus_.at(outcome); }
    const std::vector<KrausList>& kraus() const noexcept { return kraus_; }

private:
    Instrument(OutcomeSpace space, std::vector<KrausList> kraus, Index dim)
        : space_(std::move(space)), kraus_(std::move(kraus)), dim_(dim) {}
    OutcomeSpace space_;
    std::vector<KrausList> kraus_;
    Index dim_;
};

/// Single outcome with Kraus operator I.
Instrument identity_instrument(Index dim);

/// POVM with elements sum_n A_n* A_n.
Povm induced_povm(const Instrument& ins, double tol = kDefaultTol);

/// Unnormalized post-measurement operator sum_{w in event} sum_n A_n rho A_n*.
Matrix apply(const Instrument& ins, const Event& event, const Matrix& rho);
Matrix apply(const Instrument& ins, const Event& event, const DensityOperator& rho);

/// apply(...) normalized by its trace; throws ImpossibleOutcome when the
/// event probability is below `tol`.
DensityOperator post_measurement_state(const Instrument& ins, const Event& event, const DensityOperator& rho,
                                       double tol = kDefaultTol);

/// True when every Kraus operator of `a` commutes with every Kraus operator
/// of `b` and with its adjoint, for the representations as given. This is a
/// sufficient certificate only: a false result does not rule out some other
/// commuting representation.
bool strongly_commutes(const Instrument& a, const Instrument& b, double tol = kDefaultTol);

inline constexpr std::size_t kDefaultKrausCap = 4096;

/// Sequential composition on the product outcome space. Outcome tuples are
/// indexed with the first instrument slowest-varying and labelled by joining
/// the component labels with ','. The Kraus operator for (w1..wp) and choice
/// (n1..np) is A^p_{np}(wp) ... A^1_{n1}(w1). Throws CapacityExceeded when an
/// outcome would carry more than `cap` Kraus operators.
Instrument compose_joint(std::span<const Instrument> instruments, std::size_t cap = kDefaultKrausCap);

/// Flat index of an outcome tuple in a product space with the given sizes.
std::size_t product_index(std::span<const std::size_t> sizes, std::span<const std::size_t> outcomes);

/// Event E1 x E2 x ... in a product space with the given component sizes.
Event product_event(std::span<const std::size_t> sizes, std::span<const Event> events);

/// Lifts each Kraus operator b to I x ... x b x ... x I with b in `slot`.
Instrument embed_probe_local(const Instrument& local, std::size_t slot, const TensorFactorization& f);

/// Kraus operator P_w per outcome of a projection valued measure; throws
/// NotProjective when the elements are not orthogonal projections.
Instrument von_neumann_instrument(const Povm& pvm, double tol = kDefaultTol);

}  // namespace povmf

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

#include "povmf/instruments.hpp"

#include <cmath>
#include <string>

#include "povmf/error.hpp"

namespace povmf {

Instrument Instrument::create(OutcomeSpace space, std::vector<KrausList> kraus, double tol) {
    if (kraus.size() != space.size()) {
        fail(ErrorCode::DimensionMismatch, "instrument needs one Kraus list per outcome label");
    }
    Index dim = -1;
    for (const auto& list : kraus) {
        for (const auto& k : list) {
            require_square_finite(k, "Kraus operator");
            if (dim < 0) dim = k.rows();
            if (k.rows() != dim) fail(ErrorCode::DimensionMismatch, "Kraus operators must share one dimension");
        }
    }
    if (dim < 0) fail(ErrorCode::InvalidArgument, "instrument has no Kraus operators");

    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& list : kraus) {
        for (const auto& k : list) sum += k.adjoint() * k;
    }
    const double defect = (sum - identity(dim)).norm();
    if (defect > tol * std::max(1.0, std::sqrt(static_cast<double>(dim)))) {
        fail(ErrorCode::NotTracePreserving,
             "sum of A*A over all outcomes differs from identity by " + std::to_string(defect));
    }
    return Instrument(std::move(space), std::move(kraus), dim);
}

Instrument identity_instrument(Index dim) {
    return Instrument::create(OutcomeSpace({"1"}, std::vector<double>{1.0}), {{identity(dim)}});
}

Povm induced_povm(const Instrument& ins, double tol) {
    std::vector<Matrix> elements;
    elements.reserve(ins.size());
    for (const auto& list : ins.kraus()) {
        Matrix e = Matrix::Zero(ins.dim(), ins.dim());
        for (const auto& k : list) e += k.adjoint() * k;
        elements.push_back(hermitize(e));
    }
    return Povm::create(ins.space(), std::move(elements), tol);
}

Matrix apply(const Instrument& ins, const Event& event, const Matrix& rho) {
    if (rho.rows() != ins.dim() || rho.cols() != ins.dim()) {
        fail(ErrorCode::DimensionMismatch, "apply: state dimension does not match instrument");
    }
    Matrix out = Matrix::Zero(ins.dim(), ins.dim());
    for (std::size_t w : normalize_event(event, ins.size())) {
        for (const auto& k : ins.kraus(w)) out += k * rho * k.adjoint();
    }
    return out;
}

Matrix apply(const Instrument& ins, const Event& event, const DensityOperator& rho) {
    return apply(ins, event, rho.matrix());
}

DensityOperator post_measurement_state(const Instrument& ins, const Event& event, const DensityOperator& rho,
                                       double tol) {
    const Matrix out = apply(ins, event, rho);
    const double p = out.trace().real();
    if (p < tol) {
        fail(ErrorCode::ImpossibleOutcome, "event probability " + std::to_string(p) + " is below tolerance");
    }
    return DensityOperator::from_matrix(hermitize(out) / p, tol);
}

bool strongly_commutes(const Instrument& a, const Instrument& b, double tol) {
    if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "strongly_commutes: instrument dimensions differ");
    for (const auto& la : a.kraus()) {
        for (const auto& ka : la) {
            for (const auto& lb : b.kraus()) {
                for (const auto& kb : lb) {
                    if ((ka * kb - kb * ka).norm() > tol) return false;
                    const Matrix kb_adj = kb.adjoint();
                    if ((ka * kb_adj - kb_adj * ka).norm() > tol) return false;
                }
            }
        }
    }
    return true;
}

std::size_t product_index(std::span<const std::size_t> sizes, std::span<const std::size_t> outcomes) {
    if (sizes.size() != outcomes.size()) fail(ErrorCode::InvalidArgument, "product_index: arity mismatch");
    std::size_t flat = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (outcomes[k] >= sizes[k]) fail(ErrorCode::UnknownLabel, "product_index: outcome out of range");
        flat = flat * sizes[k] + outcomes[k];
    }
    return flat;
}

Event product_event(std::span<const std::size_t> sizes, std::span<const Event> events) {
    if (sizes.size() != events.size()) fail(ErrorCode::InvalidArgument, "product_event: arity mismatch");
    std::vector<Event> norm;
    for (std::size_t k = 0; k < sizes.size(); ++k) norm.push_back(normalize_event(events[k], sizes[k]));
    Event out;
    std::vector<std::size_t> pos(sizes.size(), 0), tuple(sizes.size());
    for (const auto& e : norm) {
        if (e.empty()) return out;
    }
    while (true) {
        for (std::size_t k = 0; k < sizes.size(); ++k) tuple[k] = norm[k][pos[k]];
        out.push_back(product_index(sizes, tuple));
        std::size_t k = sizes.size();
        while (k > 0) {
            --k;
            if (++pos[k] < norm[k].size()) break;
            pos[k] = 0;
            if (k == 0) return out;
        }
        if (sizes.empty()) return out;
    }
}

Instrument compose_joint(std::span<const Instrument> instruments, std::size_t cap) {
    if (instruments.empty()) fail(ErrorCode::InvalidArgument, "compose_joint needs at least one instrument");
    const Index dim = instruments.front().dim();
    std::vector<std::size_t> sizes;
    for (const auto& ins : instruments) {
        if (ins.dim() != dim) fail(ErrorCode::DimensionMismatch, "compose_joint: instrument dimensions differ");
        sizes.push_back(ins.size());
    }

    std::size_t total = 1;
    for (std::size_t s : sizes) total *= s;

    std::vector<std::string> labels;
    std::vector<KrausList> kraus;
    labels.reserve(total);
    kraus.reserve(total);
    std::vector<std::size_t> tuple(sizes.size(), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t k = sizes.size(); k-- > 0;) {
            tuple[k] = rem % sizes[k];
            rem /= sizes[k];
        }

        std::size_t count = 1;
        std::string label;
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            count *= instruments[k].kraus(tuple[k]).size();
            if (count > cap) {
                fail(ErrorCode::CapacityExceeded, "compose_joint: more than " + std::to_string(cap) +
                                                      " Kraus operators for one outcome");
            }
            if (k > 0) label += ',';
            label += instruments[k].space().label(tuple[k]);
        }

        // Later instruments act after earlier ones, so they multiply on the left.
        KrausList products{identity(dim)};
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            KrausList next;
            next.reserve(products.size() * instruments[k].kraus(tuple[k]).size());
            for (const auto& p : products) {
                for (const auto& a : instruments[k].kraus(tuple[k])) next.push_back(a * p);
            }
            products = std::move(next);
        }
        labels.push_back(std::move(label));
        kraus.push_back(std::move(products));
    }
    // Composition of trace-preserving maps is trace preserving; allow for the
    // rounding accumulated in the products.
    return Instrument::create(OutcomeSpace(std::move(labels)), std::move(kraus),
                              kDefaultTol * static_cast<double>(sizes.size()));
}

Instrument embed_probe_local(const Instrument& local, std::size_t slot, const TensorFactorization& f) {
    if (slot >= f.size()) fail(ErrorCode::InvalidArgument, "embed_probe_local: slot out of range");
    if (f.dim(slot) != local.dim()) {
        fail(ErrorCode::DimensionMismatch, "embed_probe_local: instrument dimension does not match factor " +
                                               std::to_string(slot));
    }
    const std::size_t slots[] = {slot};
    std::vector<KrausList> kraus;
    for (const auto& list : local.kraus()) {
        KrausList lifted;
        for (const auto& k : list) lifted.push_back(embed_operator(k, f, slots));
        kraus.push_back(std::move(lifted));
    }
    return Instrument::create(local.space(), std::move(kraus));
}

Instrument von_neumann_instrument(const Povm& pvm, double tol) {
    const std::size_t n = pvm.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Matrix& p = pvm.element(i);
        const double scale = std::max(1.0, p.norm());
        if ((p * p - p).norm() > tol * scale) {
            fail(ErrorCode::NotProjective, "element '" + pvm.space().label(i) + "' is not a projection");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((p * pvm.element(j)).norm() > tol * scale) {
                fail(ErrorCode::NotProjective, "elements '" + pvm.space().label(i) + "' and '" +
                                                   pvm.space().label(j) + "' are not orthogonal");
            }
        }
    }
    std::vector<KrausList> kraus;
    for (const auto& p : pvm.elements()) kraus.push_back({p});
    return Instrument::create(pvm.space(), std::move(kraus), tol);
}

}  // namespace povmf

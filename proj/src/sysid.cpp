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

#include "povmf/sysid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "povmf/error.hpp"
#include "povmf/rng.hpp"

namespace povmf {

std::vector<Vector> probe_basis(Index dim) {
    if (dim < 2) fail(ErrorCode::InvalidArgument, "probe_basis needs dim >= 2");
    std::vector<Vector> states;
    states.reserve(static_cast<std::size_t>(dim * dim));
    for (Index j = 0; j < dim; ++j) states.push_back(Vector::Unit(dim, j));
    const double h = 1.0 / std::sqrt(2.0);
    for (Index j = 0; j < dim; ++j) {
        for (Index k = j + 1; k < dim; ++k) {
            Vector plus = Vector::Zero(dim);
            plus(j) = h;
            plus(k) = h;
            Vector plus_i = Vector::Zero(dim);
            plus_i(j) = h;
            plus_i(k) = Complex(0.0, h);
            states.push_back(std::move(plus));
            states.push_back(std::move(plus_i));
        }
    }
    return states;
}

std::vector<double> ExactSampler::frequencies(const Vector& state, std::size_t) {
    return outcome_distribution(DensityOperator::pure(state), target_);
}

SimulatedSampler::SimulatedSampler(Povm target, std::uint64_t shots, std::uint64_t seed)
    : target_(std::move(target)), shots_(shots), seed_(seed) {
    if (shots == 0) fail(ErrorCode::InvalidArgument, "simulated sampler needs at least one shot");
}

std::vector<double> SimulatedSampler::frequencies(const Vector& state, std::size_t probe) {
    const auto p = outcome_distribution(DensityOperator::pure(state), target_);
    Rng rng(seed_, probe);
    std::vector<std::uint64_t> counts(p.size(), 0);
    for (std::uint64_t s = 0; s < shots_; ++s) ++counts[sample_index(p, rng)];
    used_ += shots_;
    std::vector<double> f(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) f[i] = static_cast<double>(counts[i]) / static_cast<double>(shots_);
    return f;
}

RecordedSampler::RecordedSampler(std::vector<std::vector<std::uint64_t>> counts) : counts_(std::move(counts)) {
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        std::uint64_t n = 0;
        for (auto c : counts_[k]) n += c;
        if (n == 0) fail(ErrorCode::ParseError, "no recorded counts for probe state " + std::to_string(k));
        total_ += n;
    }
}

std::vector<double> RecordedSampler::frequencies(const Vector&, std::size_t probe) {
    if (probe >= counts_.size()) fail(ErrorCode::ParseError, "no recorded counts for probe state " + std::to_string(probe));
    const auto& row = counts_[probe];
    std::uint64_t n = 0;
    for (auto c : row) n += c;
    std::vector<double> f(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) f[i] = static_cast<double>(row[i]) / static_cast<double>(n);
    return f;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <typename T>
bool parse_uint(std::string_view s, T& out) {
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

RecordedSampler parse_recorded_counts(std::string_view csv, const OutcomeSpace& space, Index dim) {
    const auto n_probes = static_cast<std::size_t>(dim * dim);
    std::vector<std::vector<std::uint64_t>> counts(n_probes, std::vector<std::uint64_t>(space.size(), 0));
    std::size_t line_no = 0;
    while (!csv.empty()) {
        const auto eol = csv.find('\n');
        std::string_view line = trim(csv.substr(0, eol));
        csv = eol == std::string_view::npos ? std::string_view{} : csv.substr(eol + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 comma-separated fields");
        }
        const auto f_probe = trim(line.substr(0, c1));
        const auto f_label = trim(line.substr(c1 + 1, c2 - c1 - 1));
        const auto f_count = trim(line.substr(c2 + 1));

        std::size_t probe = 0;
        std::uint64_t count = 0;
        if (!parse_uint(f_probe, probe)) {
            if (line_no == 1) continue;  // header
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad probe_state_index");
        }
        if (!parse_uint(f_count, count)) {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad count");
        }
        if (probe >= n_probes) {
            fail(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": probe_state_index " +
                                            std::to_string(probe) + " out of range for dim " + std::to_string(dim));
        }
        const auto label = space.find(f_label);
        if (!label) {
            fail(ErrorCode::UnknownLabel, "line " + std::to_string(line_no) + ": unknown outcome label '" +
                                              std::string(f_label) + "'");
        }
        counts[probe][*label] += count;
    }
    return RecordedSampler(std::move(counts));
}

namespace {

bool feasible(const std::vector<Matrix>& family, double tol) {
    const Index dim = family.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& b : family) {
        if (!is_psd(b, tol)) return false;
        sum += b;
    }
    return (sum - identity(dim)).norm() <= tol * std::max(1.0, std::sqrt(static_cast<double>(dim)));
}

Matrix clip_negative(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
    const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

EstimatedPovm estimate_povm(ShotSampler& sampler, const OutcomeSpace& space, Index dim, double tol) {
    const auto states = probe_basis(dim);
    std::vector<std::vector<double>> freq;
    freq.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
        freq.push_back(sampler.frequencies(states[k], k));
        if (freq.back().size() != space.size()) {
            fail(ErrorCode::DimensionMismatch, "sampler returned the wrong number of outcomes");
        }
    }

    // <j|B|j> = f_j;  Re B_jk = f_{j+k} - (f_j + f_k)/2;  Im B_jk = (f_j + f_k)/2 - f_{j+ik}.
    std::vector<Matrix> raw(space.size(), Matrix::Zero(dim, dim));
    for (std::size_t w = 0; w < space.size(); ++w) {
        Matrix& b = raw[w];
        for (Index j = 0; j < dim; ++j) b(j, j) = freq[static_cast<std::size_t>(j)][w];
        auto k_state = static_cast<std::size_t>(dim);
        for (Index j = 0; j < dim; ++j) {
            for (Index k = j + 1; k < dim; ++k) {
                const double mean_diag = 0.5 * (b(j, j).real() + b(k, k).real());
                const double re = freq[k_state][w] - mean_diag;
                const double im = mean_diag - freq[k_state + 1][w];
                b(j, k) = Complex(re, im);
                b(k, j) = Complex(re, -im);
                k_state += 2;
            }
        }
    }

    if (feasible(raw, tol)) {
        Povm p = Povm::create(space, raw, tol);
        return EstimatedPovm{std::move(raw), std::move(p), sampler.shots_used(), 0.0};
    }

    std::vector<Matrix> clipped;
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& b : raw) {
        clipped.push_back(clip_negative(b));
        sum += clipped.back();
    }
    const Matrix s_inv_half = inverse_sqrt(hermitize(sum), 1e-14);
    std::vector<Matrix> projected;
    double residual = 0.0;
    for (std::size_t w = 0; w < clipped.size(); ++w) {
        projected.push_back(hermitize(s_inv_half * clipped[w] * s_inv_half));
        residual = std::max(residual, (projected.back() - raw[w]).norm());
    }
    Povm p = Povm::create(space, std::move(projected), tol);
    return EstimatedPovm{std::move(raw), std::move(p), sampler.shots_used(), residual};
}

double povm_distance(const Povm& a, const Povm& b) {
    if (a.size() != b.size() || a.dim() != b.dim()) {
        fail(ErrorCode::DimensionMismatch, "povm_distance: POVMs differ in outcome count or dimension");
    }
    double d = 0.0;
    for (std::size_t w = 0; w < a.size(); ++w) d = std::max(d, (a.element(w) - b.element(w)).norm());
    return d;
}

}  // namespace povmf

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

#include "povmf/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "povmf/conditioning.hpp"
#include "povmf/filtering.hpp"
#include "povmf/instruments.hpp"
#include "povmf/random.hpp"
#include "povmf/simulation.hpp"
#include "povmf/sysid.hpp"

namespace povmf {

namespace {

// Stream ids keep the checks independent of each other and of call order.
enum Stream : std::uint64_t {
    kJointStream = 1,
    kChainStream = 3,
    kDilationStream = 4,
    kPhaseStream = 5,
    kTotalStateStream = 6,
    kSamplingStream = 7,
    kSysidStream = 8,
    kDeterminismStream = 9,
};

constexpr std::size_t kJointInstances = 50;
constexpr std::size_t kChainModels = 20;
constexpr std::size_t kChainSteps = 3;
constexpr double kRecordFloor = 1e-6;
constexpr std::size_t kSingleSteps = 50;
constexpr std::size_t kSamples = 100000;
constexpr std::uint64_t kSysidShots = 100000;

std::vector<Event> powerset(std::size_t n) {
    std::vector<Event> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Event e;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) e.push_back(i);
        }
        out.push_back(std::move(e));
    }
    return out;
}

Event complement(const Event& e, std::size_t n) {
    Event out;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::find(e.begin(), e.end(), i) == e.end()) out.push_back(i);
    }
    return out;
}

CheckResult bounded(std::string id, std::string name, double measured, double threshold, std::string detail = {}) {
    return CheckResult{std::move(id), std::move(name), measured <= threshold, measured, threshold, "<=",
                       std::move(detail)};
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// A pair of probe-local instruments on C^2 (x) C^2, one per tensor slot.
struct LocalPair {
    Instrument a;
    Instrument b;
    DensityOperator rho;
};

LocalPair random_local_pair(Rng& rng) {
    const TensorFactorization f({2, 2});
    auto local_a = random_instrument(2, 2 + rng.below(2), 1 + rng.below(2), rng);
    auto local_b = random_instrument(2, 2 + rng.below(2), 1 + rng.below(2), rng);
    return LocalPair{embed_probe_local(local_a, 0, f), embed_probe_local(local_b, 1, f), random_density(4, rng)};
}

}  // namespace

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<CheckResult> check_joint_statistics(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kJointStream);
    double worst_prob = 0.0, worst_comm = 0.0;
    std::size_t not_commuting = 0;
    for (std::size_t t = 0; t < kJointInstances; ++t) {
        const auto inst = random_local_pair(rng);
        if (!strongly_commutes(inst.a, inst.b)) ++not_commuting;
        const Instrument pair[] = {inst.a, inst.b};
        const Instrument joint = compose_joint(pair);
        const Povm pa = induced_povm(inst.a);
        const Povm pb = induced_povm(inst.b);
        const std::size_t sizes[] = {inst.a.size(), inst.b.size()};
        for (const auto& e1 : powerset(inst.a.size())) {
            for (const auto& e2 : powerset(inst.b.size())) {
                const Event events[] = {e1, e2};
                const Event product = product_event(sizes, events);
                const double lhs = apply(joint, product, inst.rho).trace().real();
                const Matrix ea = pa.element(e1), eb = pb.element(e2);
                const double rhs = (inst.rho.matrix() * ea * eb).trace().real();
                worst_prob = std::max(worst_prob, std::abs(lhs - rhs));
                worst_comm = std::max(worst_comm, commutator(ea, eb).norm());
            }
        }
    }
    std::vector<CheckResult> out;
    out.push_back(bounded("1a", "joint statistics of commuting instruments", worst_prob, tol.value_or(1e-10),
                          std::to_string(kJointInstances) + " random probe-local pairs, all event pairs"));
    out.push_back(bounded("1b", "commuting induced POVMs", worst_comm, tol.value_or(1e-9)));
    out.back().passed = out.back().passed && not_commuting == 0;
    if (not_commuting) out.back().detail = std::to_string(not_commuting) + " pairs failed strongly_commutes";
    return out;
}

std::vector<CheckResult> check_conditional_povm(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kJointStream);
    double worst_identity = 0.0, worst_unit = 0.0, worst_additive = 0.0;
    for (std::size_t t = 0; t < kJointInstances; ++t) {
        const auto inst = random_local_pair(rng);
        const Povm pa = induced_povm(inst.a);
        const Povm pb = induced_povm(inst.b);
        const ConditionalPovm cp = conditional_povm(pa, pb, inst.rho);
        const auto support = cp.support();
        for (const auto& e : powerset(pa.size())) {
            for (const auto& f : powerset(pb.size())) {
                Matrix rhs = Matrix::Zero(4, 4);
                for (std::size_t w : f) {
                    if (cp.supported(w)) rhs += cp.element(e, w) * cp.marginal_b(w);
                }
                worst_identity = std::max(worst_identity, max_abs(pa.element(e) * pb.element(f) - rhs));
            }
            const Event rest = complement(e, pa.size());
            for (std::size_t w : support) {
                const Matrix whole = cp.element(pa.space().all(), w);
                worst_additive =
                    std::max(worst_additive, max_abs(whole - cp.element(e, w) - cp.element(rest, w)));
            }
        }
        for (std::size_t w : support) {
            worst_unit = std::max(worst_unit, rho_seminorm(cp.element(pa.space().all(), w) - identity(4), inst.rho));
        }
    }
    return {
        bounded("2a", "conditional POVM reproduces joint products", worst_identity, tol.value_or(1e-10)),
        bounded("2b", "conditional POVM is complete (rho-equivalent to I)", worst_unit, tol.value_or(1e-10),
                "measured as |Tr(rho (P(Omega_A, w) - I))|"),
        bounded("2c", "conditional POVM is additive", worst_additive, tol.value_or(1e-14),
                "floating-point summation order only"),
    };
}

std::vector<CheckResult> check_recursive_vs_direct(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kChainStream);
    double worst_state = 0.0, worst_prob = 0.0;
    std::size_t records = 0;
    for (std::size_t t = 0; t < kChainModels; ++t) {
        std::vector<DensityOperator> probes;
        std::vector<Matrix> unitaries;
        std::vector<Povm> povms;
        for (std::size_t n = 0; n < kChainSteps; ++n) {
            probes.push_back(random_density(2, rng));
            unitaries.push_back(random_unitary(4, rng));
            povms.push_back(random_povm(2, 2 + rng.below(2), rng));
        }
        const auto model = ChainModel::create(random_density(2, rng), probes, unitaries, povms, kChainSteps);

        std::vector<std::size_t> sizes;
        for (const auto& b : povms) sizes.push_back(b.size());
        std::vector<std::size_t> tuple(kChainSteps, 0);
        while (true) {
            const MeasurementRecord record{tuple};
            const auto direct = direct_joint_filter(model, record);
            if (direct.probability > kRecordFloor) {
                ++records;
                const auto run = filter_run(model, record);
                worst_state = std::max(worst_state,
                                       trace_distance(run.back().state.matrix(), direct.state.state.matrix()));
                worst_prob = std::max(worst_prob, std::abs(std::exp(run.back().log_likelihood) - direct.probability));
            }
            std::size_t k = kChainSteps;
            while (k > 0 && ++tuple[k - 1] == sizes[k - 1]) tuple[--k] = 0;
            if (k == 0) break;
        }
    }
    const std::string detail = std::to_string(records) + " records over " + std::to_string(kChainModels) + " models";
    return {
        bounded("3a", "recursive filter matches joint-space filter", worst_state, tol.value_or(1e-9), detail),
        bounded("3b", "record probabilities match", worst_prob, tol.value_or(1e-10), detail),
    };
}

std::vector<CheckResult> check_dilation_equivalence(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kDilationStream);
    double worst_state = 0.0, worst_prob = 0.0;
    for (std::size_t t = 0; t < kSingleSteps; ++t) {
        const int m = 2 + static_cast<int>(t % 3);
        const Povm b = qubit_phase_povm(m);
        const FilterState prev{0, random_density(2, rng), 0.0};
        const Matrix u = random_unitary(4, rng);
        const auto probe = random_density(2, rng);
        for (std::size_t w = 0; w < b.size(); ++w) {
            const auto direct = filter_step(prev, u, probe, b, w);
            const auto dilated = dilated_filter_step(prev, u, probe, b, w);
            worst_state = std::max(worst_state, trace_distance(direct.state.matrix(), dilated.state.matrix()));
            worst_prob =
                std::max(worst_prob, std::abs(std::exp(direct.log_likelihood) - std::exp(dilated.log_likelihood)));
        }
    }
    return {
        bounded("4a", "POVM filter matches Naimark-dilated filter", worst_state, tol.value_or(1e-10)),
        bounded("4b", "dilated outcome probabilities match", worst_prob, tol.value_or(1e-12)),
    };
}

std::vector<CheckResult> check_phase_invariance(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kPhaseStream);
    const auto rho = random_density(2, rng);
    const Matrix u = random_unitary(4, rng);
    const auto probe = DensityOperator::basis(2, 0);
    const PhasePoint points[] = {{2, 0}, {3, 0}, {4, 0}, {8, 0}};
    const auto report = phase_invariance_check(rho, u, probe, points);
    const double separation = std::abs(report.probabilities.front() - report.probabilities.back());
    return {
        bounded("5a", "phase outcome d=0 conditions identically for M=2,3,4,8", report.max_distance,
                tol.value_or(1e-10)),
        CheckResult{"5b", "outcome probability differs between M=2 and M=8", separation > 1e-3, separation, 1e-3, ">",
                    {}},
    };
}

std::vector<CheckResult> check_total_state(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kTotalStateStream);
    double worst = 0.0;
    const TensorFactorization f({2, 2});
    const std::size_t probe_slot[] = {1};
    for (std::size_t t = 0; t < kSingleSteps; ++t) {
        const FilterState prev{0, random_density(2, rng), 0.0};
        const Matrix u = random_unitary(4, rng);
        const auto probe = random_density(2, rng);
        const Povm b = random_povm(2, 2 + rng.below(3), rng);
        Matrix average = Matrix::Zero(2, 2);
        for (std::size_t w = 0; w < b.size(); ++w) {
            const auto post = filter_step(prev, u, probe, b, w);
            average += std::exp(post.log_likelihood) * post.state.matrix();
        }
        const Matrix reduced = partial_trace(interaction_state(prev.state, u, probe), f, probe_slot);
        worst = std::max(worst, (average - reduced).norm());
    }
    return {bounded("6", "outcome-averaged state equals reduced dynamics", worst, tol.value_or(1e-10))};
}

std::vector<CheckResult> check_sampling(std::uint64_t seed) {
    Rng rng(seed, kSamplingStream);
    const Povm b = qubit_phase_povm(4);
    const auto rho = DensityOperator::maximally_mixed(2);
    std::vector<std::size_t> counts(b.size(), 0);
    for (std::size_t s = 0; s < kSamples; ++s) ++counts[sample_outcome(rho, b, rng)];
    const double n = static_cast<double>(kSamples);
    const double sigma = std::sqrt(0.25 * 0.75 / n);
    double worst = 0.0;
    for (auto c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) / n - 0.25) / sigma);
    return {bounded("7", "sampled frequencies within 4 sigma", worst, 4.0, "measured in units of sigma")};
}

std::vector<CheckResult> check_system_identification(std::uint64_t seed, std::optional<double> tol) {
    Rng rng(seed, kSysidStream);
    double worst_exact = 0.0;
    for (Index dim : {2, 3}) {
        for (int rep = 0; rep < 3; ++rep) {
            const Povm target = random_povm(dim, 2 + rng.below(3), rng);
            ExactSampler sampler(target);
            const auto est = estimate_povm(sampler, target.space(), dim);
            worst_exact = std::max(worst_exact, povm_distance(est.projected, target));
        }
    }
    const Povm phase3 = qubit_phase_povm(3);
    double worst_shots = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        SimulatedSampler sampler(phase3, kSysidShots, seed + s);
        const auto est = estimate_povm(sampler, phase3.space(), 2);
        worst_shots = std::max(worst_shots, povm_distance(est.projected, phase3));
    }
    return {
        bounded("8a", "exact-probability identification", worst_exact, tol.value_or(1e-10)),
        bounded("8b", "1e5-shot identification of the M=3 phase POVM", worst_shots, tol.value_or(0.05), "5 seeds"),
    };
}

std::vector<CheckResult> check_determinism(std::uint64_t seed) {
    Rng rng(seed, kDeterminismStream);
    const auto model = random_chain_model(2, qubit_phase_povm(3), 12, rng);
    auto render = [&](unsigned threads) {
        SimulationOptions opts{seed, 12, 6, threads, kDefaultTol};
        const auto batch = simulate(model, opts);
        std::string all = simulation_summary_json(model, opts, batch);
        for (const auto& t : batch) all += trajectory_csv(model, t);
        return all;
    };
    const std::string first = render(1);
    const std::string second = render(3);
    return {CheckResult{"9", "seeded simulation output is byte-identical", first == second,
                        first == second ? 0.0 : 1.0, 0.0, "<=", std::to_string(first.size()) + " bytes compared"}};
}

VerifyReport run_verification(const VerifyOptions& options) {
    VerifyReport report;
    auto add = [&](std::vector<CheckResult> part) {
        for (auto& c : part) report.checks.push_back(std::move(c));
    };
    const auto s = options.seed;
    const auto t = options.tol_override;
    add(check_joint_statistics(s, t));
    add(check_conditional_povm(s, t));
    add(check_recursive_vs_direct(s, t));
    add(check_dilation_equivalence(s, t));
    add(check_phase_invariance(s, t));
    add(check_total_state(s, t));
    add(check_sampling(s));
    add(check_system_identification(s, t));
    add(check_determinism(s));
    return report;
}

std::string report_table(const VerifyReport& report) {
    std::string out;
    char line[256];
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof line, "[%s] %-3s %-58s measured %.3e %s %.1e", c.passed ? "PASS" : "FAIL",
                      c.id.c_str(), c.name.c_str(), c.measured, c.relation.c_str(), c.threshold);
        out += line;
        if (!c.detail.empty()) out += "  (" + c.detail + ")";
        out += '\n';
    }
    out += report.all_passed() ? "all checks passed\n" : "SOME CHECKS FAILED\n";
    return out;
}

nlohmann::json report_json(const VerifyReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"id", c.id},
                          {"name", c.name},
                          {"passed", c.passed},
                          {"measured", c.measured},
                          {"relation", c.relation},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
    }
    return {{"passed", report.all_passed()}, {"checks", std::move(checks)}};
}

}  // namespace povmf

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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace povmf {

struct VerifyOptions {
    std::uint64_t seed = 20261015;
    /// Replaces every deviation threshold (not the sampling bound, the
    /// probability-separation bound or the determinism check).
    std::optional<double> tol_override;
};

struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    /// Worst observed value of the checked quantity.
    double measured = 0.0;
    double threshold = 0.0;
    /// "<=" when measured must not exceed threshold, ">" otherwise.
    std::string relation = "<=";
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

// Individual checks. Each draws its random instances from `seed`.
std::vector<CheckResult> check_joint_statistics(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_conditional_povm(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_recursive_vs_direct(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_dilation_equivalence(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_phase_invariance(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_total_state(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_sampling(std::uint64_t seed);
std::vector<CheckResult> check_system_identification(std::uint64_t seed, std::optional<double> tol);
std::vector<CheckResult> check_determinism(std::uint64_t seed);

VerifyReport run_verification(const VerifyOptions& options);

std::string report_table(const VerifyReport& report);
nlohmann::json report_json(const VerifyReport& report);

}  // namespace povmf

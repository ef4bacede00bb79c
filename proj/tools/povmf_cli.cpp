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

// Command-line front end. Talks to the library only through the C API.
//
// Exit codes: 0 success, 1 runtime or check failure, 2 usage/config error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "povmf/povmf.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr std::uint64_t kDefaultPhaseSeed = 7;
constexpr std::uint64_t kDefaultVerifySeed = 20261015;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using PovmPtr = std::unique_ptr<povmf_povm, Deleter<povmf_povm, povmf_povm_free>>;
using ScenarioPtr = std::unique_ptr<povmf_scenario, Deleter<povmf_scenario, povmf_scenario_free>>;
using SimulationPtr = std::unique_ptr<povmf_simulation, Deleter<povmf_simulation, povmf_simulation_free>>;
using ReportPtr = std::unique_ptr<povmf_report, Deleter<povmf_report, povmf_report_free>>;

// Status of a call made while loading user input: failures are config errors.
struct ConfigFailure {
    povmf_status status;
    std::string message;
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    povmf_string_free(s);
    return out;
}

int report_error(const char* context, povmf_status status, int exit_code) {
    std::cerr << "povmf " << context << ": " << povmf_status_name(status) << ": " << povmf_last_error() << "\n";
    return exit_code;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int print_report(const povmf_report* report, bool json) {
    char* out = nullptr;
    const povmf_status st = json ? povmf_report_json(report, &out) : povmf_report_text(report, &out);
    if (st != POVMF_OK) return report_error("report", st, kExitFailure);
    std::cout << take_string(out);
    return povmf_report_passed(report) ? kExitOk : kExitFailure;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> trajectories;
    std::optional<double> tol;
    std::string out = "povmf_out";
    unsigned threads = 0;
    bool json = false;
};

int cmd_simulate(const SimulateArgs& args) {
    povmf_scenario* raw = nullptr;
    if (auto st = povmf_scenario_load(args.config.c_str(), &raw); st != POVMF_OK) {
        return report_error("simulate: invalid scenario", st, kExitUsage);
    }
    ScenarioPtr scenario(raw);
    povmf_run_params params{};
    if (auto st = povmf_scenario_run_params(scenario.get(), &params); st != POVMF_OK) {
        return report_error("simulate", st, kExitFailure);
    }

    povmf_simulate_options opts{};
    if (args.seed) {
        opts.seed = *args.seed;
    } else if (params.has_seed) {
        opts.seed = params.seed;
    } else {
        std::cerr << "povmf simulate: missing required field 'seed' (set it in the scenario or pass --seed)\n";
        return kExitUsage;
    }
    opts.steps = args.steps.value_or(params.has_steps ? params.steps : povmf_scenario_horizon(scenario.get()));
    opts.trajectories = args.trajectories.value_or(params.has_trajectories ? params.trajectories : 1);
    opts.tol = args.tol.value_or(params.has_tol ? params.tol : 0.0);
    opts.threads = args.threads;
    if (opts.steps > povmf_scenario_horizon(scenario.get())) {
        std::cerr << "povmf simulate: steps (" << opts.steps << ") exceed the scenario horizon ("
                  << povmf_scenario_horizon(scenario.get()) << ")\n";
        return kExitUsage;
    }

    povmf_simulation* sim_raw = nullptr;
    if (auto st = povmf_simulate(scenario.get(), &opts, &sim_raw); st != POVMF_OK) {
        return report_error("simulate", st, kExitFailure);
    }
    SimulationPtr sim(sim_raw);
    if (auto st = povmf_simulation_write(sim.get(), args.out.c_str()); st != POVMF_OK) {
        return report_error("simulate", st, kExitFailure);
    }
    if (args.json) {
        char* summary = nullptr;
        if (auto st = povmf_simulation_summary_json(sim.get(), &summary); st != POVMF_OK) {
            return report_error("simulate", st, kExitFailure);
        }
        std::cout << take_string(summary);
    } else {
        std::cout << "wrote " << povmf_simulation_count(sim.get()) << " trajectories of " << opts.steps
                  << " steps to " << args.out << "\n";
    }
    return kExitOk;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(std::uint64_t seed, std::optional<double> tol, bool json) {
    povmf_verify_options opts{seed, tol.has_value() ? 1 : 0, tol.value_or(0.0)};
    povmf_report* raw = nullptr;
    if (auto st = povmf_verify(&opts, &raw); st != POVMF_OK) return report_error("verify", st, kExitFailure);
    ReportPtr report(raw);
    return print_report(report.get(), json);
}

// ---- phase-demo -----------------------------------------------------------

int cmd_phase_demo(const std::vector<int>& ms, int d, const std::string& config, std::uint64_t seed, double tol,
                   bool json) {
    ScenarioPtr scenario;
    if (!config.empty()) {
        povmf_scenario* raw = nullptr;
        if (auto st = povmf_scenario_load(config.c_str(), &raw); st != POVMF_OK) {
            return report_error("phase-demo: invalid scenario", st, kExitUsage);
        }
        scenario.reset(raw);
    }
    povmf_report* raw = nullptr;
    const povmf_status st = povmf_phase_demo(scenario.get(), ms.data(), ms.size(), d, seed, tol, &raw);
    if (st == POVMF_ERR_PHASE_MISMATCH || st == POVMF_ERR_INVALID_ARGUMENT || st == POVMF_ERR_DIMENSION_MISMATCH) {
        return report_error("phase-demo", st, kExitUsage);
    }
    if (st != POVMF_OK) return report_error("phase-demo", st, kExitFailure);
    ReportPtr report(raw);
    return print_report(report.get(), json);
}

// ---- identify -------------------------------------------------------------

struct IdentifyArgs {
    std::string config;
    std::optional<std::uint64_t> shots;
    std::optional<std::uint64_t> seed;
    std::optional<int> m;
    std::optional<double> tol;
    std::string out;
    bool json = false;
};

int cmd_identify(const IdentifyArgs& args) {
    nlohmann::json cfg = nlohmann::json::object();
    std::string config_dir = ".";
    if (!args.config.empty()) {
        try {
            cfg = nlohmann::json::parse(read_file(args.config));
        } catch (const nlohmann::json::exception& e) {
            throw UsageError(std::string("invalid config JSON: ") + e.what());
        }
        if (!cfg.is_object()) throw UsageError("config must be a JSON object");
        if (auto slash = args.config.find_last_of('/'); slash != std::string::npos) {
            config_dir = args.config.substr(0, slash);
        }
    }

    auto get_u64 = [&](const char* field) -> std::optional<std::uint64_t> {
        if (!cfg.contains(field)) return std::nullopt;
        if (!cfg[field].is_number_unsigned()) throw UsageError(std::string("field '") + field + "' must be a non-negative integer");
        return cfg[field].get<std::uint64_t>();
    };

    PovmPtr target;
    if (args.m) {
        povmf_povm* raw = nullptr;
        if (auto st = povmf_povm_qubit_phase(*args.m, &raw); st != POVMF_OK) {
            return report_error("identify: invalid target", st, kExitUsage);
        }
        target.reset(raw);
    } else if (cfg.contains("target")) {
        povmf_povm* raw = nullptr;
        if (auto st = povmf_povm_from_json(cfg["target"].dump().c_str(), &raw); st != POVMF_OK) {
            return report_error("identify: invalid target", st, kExitUsage);
        }
        target.reset(raw);
    }

    std::optional<std::string> recorded;
    if (cfg.contains("recorded")) {
        if (!cfg["recorded"].is_string()) throw UsageError("field 'recorded' must be a path");
        std::string path = cfg["recorded"].get<std::string>();
        if (!path.empty() && path.front() != '/') path = config_dir + "/" + path;
        recorded = read_file(path);
    }
    if (!target && !recorded) {
        // Default demonstration target.
        povmf_povm* raw = nullptr;
        povmf_povm_qubit_phase(3, &raw);
        target.reset(raw);
    }

    std::vector<std::string> labels;
    if (cfg.contains("labels")) {
        if (!cfg["labels"].is_array()) throw UsageError("field 'labels' must be an array");
        for (const auto& l : cfg["labels"]) {
            labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
        }
    }
    if (recorded && !target && labels.empty()) {
        throw UsageError("missing required field 'labels' for recorded data without a target");
    }
    std::vector<const char*> label_ptrs;
    for (const auto& l : labels) label_ptrs.push_back(l.c_str());

    const std::uint64_t shots = args.shots.value_or(get_u64("shots").value_or(100000));
    const auto seed = args.seed ? args.seed : get_u64("seed");
    if (!recorded && shots > 0 && !seed) {
        throw UsageError("missing required field 'seed' for simulated shots (pass --seed or set it in the config)");
    }

    povmf_identify_options opts{};
    opts.target = target.get();
    opts.recorded_csv = recorded ? recorded->c_str() : nullptr;
    opts.labels = label_ptrs.empty() ? nullptr : label_ptrs.data();
    opts.label_count = label_ptrs.size();
    opts.dim = static_cast<size_t>(get_u64("dim").value_or(0));
    opts.shots = shots;
    opts.seed = seed.value_or(0);
    double bound = (!recorded && shots == 0) ? 1e-10 : 0.05;
    if (cfg.contains("error_bound")) bound = cfg["error_bound"].get<double>();
    opts.error_bound = args.tol.value_or(bound);

    povmf_report* report_raw = nullptr;
    povmf_povm* est_raw = nullptr;
    const povmf_status st = povmf_identify(&opts, &report_raw, &est_raw);
    if (st == POVMF_ERR_PARSE || st == POVMF_ERR_UNKNOWN_LABEL || st == POVMF_ERR_INVALID_ARGUMENT ||
        st == POVMF_ERR_DIMENSION_MISMATCH) {
        return report_error("identify: malformed input", st, kExitUsage);
    }
    if (st != POVMF_OK) return report_error("identify", st, kExitFailure);
    ReportPtr report(report_raw);
    PovmPtr estimate(est_raw);

    if (!args.out.empty()) {
        char* povm_json = nullptr;
        char* report_json = nullptr;
        if (auto s = povmf_povm_to_json(estimate.get(), &povm_json); s != POVMF_OK) {
            return report_error("identify", s, kExitFailure);
        }
        if (auto s = povmf_report_json(report.get(), &report_json); s != POVMF_OK) {
            return report_error("identify", s, kExitFailure);
        }
        std::error_code ec;
        std::filesystem::create_directories(args.out, ec);
        std::ofstream povm_file(args.out + "/estimated_povm.json", std::ios::binary);
        std::ofstream report_file(args.out + "/identify_report.json", std::ios::binary);
        povm_file << take_string(povm_json);
        report_file << take_string(report_json);
        if (!povm_file || !report_file) {
            std::cerr << "povmf identify: cannot write to '" << args.out << "'\n";
            return kExitFailure;
        }
    }
    return print_report(report.get(), args.json);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum filtering with POVM probe measurements"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Sample measurement trajectories of a chain scenario");
    simulate->add_option("--config", sim.config, "Scenario JSON file")->required();
    simulate->add_option("--seed", sim.seed, "Random seed (overrides the scenario)");
    simulate->add_option("--steps", sim.steps, "Steps per trajectory (default: horizon)");
    simulate->add_option("--trajectories", sim.trajectories, "Number of trajectories (default 1)");
    simulate->add_option("--out", sim.out, "Output directory")->capture_default_str();
    simulate->add_option("--tol", sim.tol, "Validation tolerance");
    simulate->add_option("--threads", sim.threads, "Worker threads (0: all cores)");
    simulate->add_flag("--json", sim.json, "Print the summary JSON to stdout");

    std::uint64_t verify_seed = kDefaultVerifySeed;
    std::optional<double> verify_tol;
    bool verify_json = false;
    auto* verify = app.add_subcommand("verify", "Run the verification checks and print a pass/fail table");
    verify->add_option("--seed", verify_seed, "Seed for the random instances")->capture_default_str();
    verify->add_option("--tol", verify_tol, "Override every deviation threshold");
    verify->add_option("--config", "Unused; accepted for symmetry with the other subcommands");
    verify->add_flag("--json", verify_json, "Machine-readable report");

    std::vector<int> phase_ms{2, 3, 4, 8};
    int phase_d = 0;
    std::string phase_config;
    std::uint64_t phase_seed = kDefaultPhaseSeed;
    double phase_tol = 1e-10;
    bool phase_json = false;
    auto* phase = app.add_subcommand("phase-demo", "Compare conditioned states across qubit phase POVMs");
    phase->add_option("--M", phase_ms, "Comma-separated list of M values")->delimiter(',')->capture_default_str();
    phase->add_option("--d", phase_d, "Observed outcome d (same phase d/M for every M)")->capture_default_str();
    phase->add_option("--config", phase_config, "Scenario JSON (first step is used)");
    phase->add_option("--seed", phase_seed, "Seed for the default random interaction")->capture_default_str();
    phase->add_option("--tol", phase_tol, "Invariance threshold")->capture_default_str();
    phase->add_flag("--json", phase_json, "Machine-readable report");

    IdentifyArgs id;
    auto* identify = app.add_subcommand("identify", "Estimate a POVM from outcome statistics");
    identify->add_option("--config", id.config, "Identification config JSON");
    identify->add_option("--shots", id.shots, "Shots per probe state; 0 means exact probabilities");
    identify->add_option("--seed", id.seed, "Random seed for simulated shots");
    identify->add_option("--M", id.m, "Use qubit_phase_povm(M) as the simulated target");
    identify->add_option("--tol", id.tol, "Error bound for the pass/fail verdict");
    identify->add_option("--out", id.out, "Directory for estimated_povm.json and identify_report.json");
    identify->add_flag("--json", id.json, "Machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*verify) return cmd_verify(verify_seed, verify_tol, verify_json);
        if (*phase) return cmd_phase_demo(phase_ms, phase_d, phase_config, phase_seed, phase_tol, phase_json);
        if (*identify) return cmd_identify(id);
    } catch (const UsageError& e) {
        std::cerr << "povmf: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "povmf: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

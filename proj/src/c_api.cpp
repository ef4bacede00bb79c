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

#include "povmf/povmf.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "povmf/error.hpp"
#include "povmf/io.hpp"
#include "povmf/random.hpp"
#include "povmf/simulation.hpp"
#include "povmf/sysid.hpp"
#include "povmf/verification.hpp"

struct povmf_povm {
    povmf::Povm povm;
};

struct povmf_scenario {
    povmf::Scenario scenario;
};

struct povmf_simulation {
    povmf::ChainModel model;
    povmf::SimulationOptions options;
    std::vector<povmf::Trajectory> trajectories;
};

struct povmf_report {
    bool passed = false;
    std::string text;
    povmf::Json json;
};

namespace {

thread_local std::string g_last_error;

povmf_status to_status(povmf::ErrorCode code) {
    using povmf::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return POVMF_ERR_INVALID_ARGUMENT;
        case ErrorCode::DimensionMismatch: return POVMF_ERR_DIMENSION_MISMATCH;
        case ErrorCode::NotHermitian: return POVMF_ERR_NOT_HERMITIAN;
        case ErrorCode::NotPositive: return POVMF_ERR_NOT_POSITIVE;
        case ErrorCode::NotComplete: return POVMF_ERR_NOT_COMPLETE;
        case ErrorCode::NotNumeric: return POVMF_ERR_NOT_NUMERIC;
        case ErrorCode::NotTracePreserving: return POVMF_ERR_NOT_TRACE_PRESERVING;
        case ErrorCode::NotProjective: return POVMF_ERR_NOT_PROJECTIVE;
        case ErrorCode::NotCommuting: return POVMF_ERR_NOT_COMMUTING;
        case ErrorCode::NotUnitary: return POVMF_ERR_NOT_UNITARY;
        case ErrorCode::ImpossibleOutcome: return POVMF_ERR_IMPOSSIBLE_OUTCOME;
        case ErrorCode::CapacityExceeded: return POVMF_ERR_CAPACITY_EXCEEDED;
        case ErrorCode::PhaseMismatch: return POVMF_ERR_PHASE_MISMATCH;
        case ErrorCode::UnknownLabel: return POVMF_ERR_UNKNOWN_LABEL;
        case ErrorCode::ParseError: return POVMF_ERR_PARSE;
        case ErrorCode::IoError: return POVMF_ERR_IO;
    }
    return POVMF_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread-local message.
template <typename F>
povmf_status guarded(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return POVMF_OK;
    } catch (const povmf::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return POVMF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return POVMF_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return POVMF_ERR_INTERNAL;
    }
}

void require_non_null(const void* p, const char* what) {
    if (p == nullptr) povmf::fail(povmf::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

extern "C" {

const char* povmf_version(void) { return "0.1.0"; }

const char* povmf_status_name(povmf_status status) {
    switch (status) {
        case POVMF_OK: return "OK";
        case POVMF_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case POVMF_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
        case POVMF_ERR_NOT_HERMITIAN: return "NotHermitian";
        case POVMF_ERR_NOT_POSITIVE: return "NotPositive";
        case POVMF_ERR_NOT_COMPLETE: return "NotComplete";
        case POVMF_ERR_NOT_NUMERIC: return "NotNumeric";
        case POVMF_ERR_NOT_TRACE_PRESERVING: return "NotTracePreserving";
        case POVMF_ERR_NOT_PROJECTIVE: return "NotProjective";
        case POVMF_ERR_NOT_COMMUTING: return "NotCommuting";
        case POVMF_ERR_NOT_UNITARY: return "NotUnitary";
        case POVMF_ERR_IMPOSSIBLE_OUTCOME: return "ImpossibleOutcome";
        case POVMF_ERR_CAPACITY_EXCEEDED: return "CapacityExceeded";
        case POVMF_ERR_PHASE_MISMATCH: return "PhaseMismatch";
        case POVMF_ERR_UNKNOWN_LABEL: return "UnknownLabel";
        case POVMF_ERR_PARSE: return "ParseError";
        case POVMF_ERR_IO: return "IoError";
        case POVMF_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* povmf_last_error(void) { return g_last_error.c_str(); }

void povmf_string_free(char* s) { std::free(s); }

povmf_status povmf_povm_from_json(const char* json, povmf_povm** out) {
    return guarded([&] {
        require_non_null(json, "json");
        require_non_null(out, "out");
        *out = new povmf_povm{povmf::povm_from_json(povmf::parse_json(json))};
    });
}

povmf_status povmf_povm_qubit_phase(int m, povmf_povm** out) {
    return guarded([&] {
        require_non_null(out, "out");
        *out = new povmf_povm{povmf::qubit_phase_povm(m)};
    });
}

povmf_status povmf_povm_to_json(const povmf_povm* povm, char** out) {
    return guarded([&] {
        require_non_null(povm, "povm");
        require_non_null(out, "out");
        *out = copy_string(povmf::povm_to_json(povm->povm).dump(2) + "\n");
    });
}

size_t povmf_povm_outcomes(const povmf_povm* povm) { return povm ? povm->povm.size() : 0; }

size_t povmf_povm_dim(const povmf_povm* povm) { return povm ? static_cast<size_t>(povm->povm.dim()) : 0; }

povmf_status povmf_povm_distance(const povmf_povm* a, const povmf_povm* b, double* out) {
    return guarded([&] {
        require_non_null(a, "a");
        require_non_null(b, "b");
        require_non_null(out, "out");
        *out = povmf::povm_distance(a->povm, b->povm);
    });
}

void povmf_povm_free(povmf_povm* povm) { delete povm; }

povmf_status povmf_scenario_from_json(const char* json, povmf_scenario** out) {
    return guarded([&] {
        require_non_null(json, "json");
        require_non_null(out, "out");
        *out = new povmf_scenario{povmf::scenario_from_json(povmf::parse_json(json))};
    });
}

povmf_status povmf_scenario_load(const char* path, povmf_scenario** out) {
    return guarded([&] {
        require_non_null(path, "path");
        require_non_null(out, "out");
        const std::string text = povmf::read_text_file(path);
        *out = new povmf_scenario{povmf::scenario_from_json(povmf::parse_json(text))};
    });
}

povmf_status povmf_scenario_run_params(const povmf_scenario* scenario, povmf_run_params* out) {
    return guarded([&] {
        require_non_null(scenario, "scenario");
        require_non_null(out, "out");
        const auto& s = scenario->scenario;
        *out = povmf_run_params{};
        out->has_seed = s.seed.has_value();
        out->seed = s.seed.value_or(0);
        out->has_steps = s.steps.has_value();
        out->steps = s.steps.value_or(0);
        out->has_trajectories = s.trajectories.has_value();
        out->trajectories = s.trajectories.value_or(0);
        out->has_tol = s.tol.has_value();
        out->tol = s.tol.value_or(0.0);
    });
}

size_t povmf_scenario_horizon(const povmf_scenario* scenario) {
    return scenario ? scenario->scenario.model.horizon() : 0;
}

size_t povmf_scenario_sys_dim(const povmf_scenario* scenario) {
    return scenario ? static_cast<size_t>(scenario->scenario.model.sys_dim()) : 0;
}

size_t povmf_scenario_probe_dim(const povmf_scenario* scenario) {
    return scenario ? static_cast<size_t>(scenario->scenario.model.probe_dim()) : 0;
}

void povmf_scenario_free(povmf_scenario* scenario) { delete scenario; }

povmf_status povmf_simulate(const povmf_scenario* scenario, const povmf_simulate_options* options,
                            povmf_simulation** out) {
    return guarded([&] {
        require_non_null(scenario, "scenario");
        require_non_null(options, "options");
        require_non_null(out, "out");
        povmf::SimulationOptions opts;
        opts.seed = options->seed;
        opts.steps = options->steps;
        opts.trajectories = options->trajectories;
        opts.threads = options->threads;
        opts.tol = options->tol > 0.0 ? options->tol : povmf::kDefaultTol;
        auto batch = povmf::simulate(scenario->scenario.model, opts);
        *out = new povmf_simulation{scenario->scenario.model, opts, std::move(batch)};
    });
}

size_t povmf_simulation_count(const povmf_simulation* sim) { return sim ? sim->trajectories.size() : 0; }

povmf_status povmf_simulation_trajectory_csv(const povmf_simulation* sim, size_t index, char** out) {
    return guarded([&] {
        require_non_null(sim, "sim");
        require_non_null(out, "out");
        if (index >= sim->trajectories.size()) {
            povmf::fail(povmf::ErrorCode::InvalidArgument, "trajectory index out of range");
        }
        *out = copy_string(povmf::trajectory_csv(sim->model, sim->trajectories[index]));
    });
}

povmf_status povmf_simulation_summary_json(const povmf_simulation* sim, char** out) {
    return guarded([&] {
        require_non_null(sim, "sim");
        require_non_null(out, "out");
        *out = copy_string(povmf::simulation_summary_json(sim->model, sim->options, sim->trajectories));
    });
}

povmf_status povmf_simulation_write(const povmf_simulation* sim, const char* dir) {
    return guarded([&] {
        require_non_null(sim, "sim");
        require_non_null(dir, "dir");
        const std::filesystem::path root(dir);
        std::error_code ec;
        std::filesystem::create_directories(root, ec);
        if (ec) povmf::fail(povmf::ErrorCode::IoError, "cannot create '" + root.string() + "': " + ec.message());
        for (std::size_t k = 0; k < sim->trajectories.size(); ++k) {
            povmf::write_text_file((root / ("trajectory_" + std::to_string(k) + ".csv")).string(),
                                   povmf::trajectory_csv(sim->model, sim->trajectories[k]));
        }
        povmf::write_text_file((root / "summary.json").string(),
                               povmf::simulation_summary_json(sim->model, sim->options, sim->trajectories));
    });
}

void povmf_simulation_free(povmf_simulation* sim) { delete sim; }

int povmf_report_passed(const povmf_report* report) { return report && report->passed ? 1 : 0; }

povmf_status povmf_report_text(const povmf_report* report, char** out) {
    return guarded([&] {
        require_non_null(report, "report");
        require_non_null(out, "out");
        *out = copy_string(report->text);
    });
}

povmf_status povmf_report_json(const povmf_report* report, char** out) {
    return guarded([&] {
        require_non_null(report, "report");
        require_non_null(out, "out");
        *out = copy_string(report->json.dump(2) + "\n");
    });
}

void povmf_report_free(povmf_report* report) { delete report; }

povmf_status povmf_verify(const povmf_verify_options* options, povmf_report** out) {
    return guarded([&] {
        require_non_null(out, "out");
        povmf::VerifyOptions opts;
        if (options != nullptr) {
            opts.seed = options->seed;
            if (options->has_tol_override) opts.tol_override = options->tol_override;
        }
        const auto report = povmf::run_verification(opts);
        *out = new povmf_report{report.all_passed(), povmf::report_table(report), povmf::report_json(report)};
    });
}

povmf_status povmf_phase_demo(const povmf_scenario* scenario, const int* m_list, size_t m_count, int d,
                              uint64_t seed, double tol, povmf_report** out) {
    return guarded([&] {
        require_non_null(out, "out");
        if (m_count > 0) require_non_null(m_list, "m_list");
        std::vector<povmf::PhasePoint> points;
        for (size_t i = 0; i < m_count; ++i) points.push_back({m_list[i], d});

        povmf::Rng rng(seed, 0);
        const auto model = scenario != nullptr ? scenario->scenario.model
                                               : povmf::random_chain_model(2, povmf::qubit_phase_povm(2), 1, rng);
        if (model.probe_dim() != 2) {
            povmf::fail(povmf::ErrorCode::DimensionMismatch, "phase demo needs a qubit probe (probe_dim = 2)");
        }
        const auto report =
            povmf::phase_invariance_check(model.initial_state(), model.unitary(1), model.probe_state(1), points);

        const bool passed = report.max_distance <= tol;
        std::string text = "   M   d   outcome probability\n";
        char line[160];
        povmf::Json per_m = povmf::Json::array();
        for (std::size_t i = 0; i < report.points.size(); ++i) {
            std::snprintf(line, sizeof line, "%4d %3d   %.12f\n", report.points[i].m, report.points[i].d,
                          report.probabilities[i]);
            text += line;
            per_m.push_back({{"M", report.points[i].m},
                             {"d", report.points[i].d},
                             {"probability", report.probabilities[i]},
                             {"state", povmf::matrix_to_json(report.states[i].matrix())}});
        }
        povmf::Json pairs = povmf::Json::array();
        if (!report.distances.empty()) text += "pairwise trace distances of conditioned states:\n";
        for (const auto& pd : report.distances) {
            std::snprintf(line, sizeof line, "  M=%d vs M=%d: %.3e\n", report.points[pd.i].m, report.points[pd.j].m,
                          pd.distance);
            text += line;
            pairs.push_back({{"M_a", report.points[pd.i].m}, {"M_b", report.points[pd.j].m}, {"distance", pd.distance}});
        }
        std::snprintf(line, sizeof line, "max distance %.3e (threshold %.1e): %s\n", report.max_distance, tol,
                      passed ? "PASS" : "FAIL");
        text += line;
        povmf::Json json = {{"passed", passed},       {"threshold", tol},  {"max_distance", report.max_distance},
                            {"outcomes", std::move(per_m)}, {"distances", std::move(pairs)}};
        *out = new povmf_report{passed, std::move(text), std::move(json)};
    });
}

povmf_status povmf_identify(const povmf_identify_options* options, povmf_report** report, povmf_povm** estimated) {
    return guarded([&] {
        require_non_null(options, "options");
        require_non_null(report, "report");
        if (options->target == nullptr && options->recorded_csv == nullptr) {
            povmf::fail(povmf::ErrorCode::InvalidArgument, "identify needs a target POVM or recorded data");
        }

        std::optional<povmf::OutcomeSpace> space;
        if (options->labels != nullptr && options->label_count > 0) {
            std::vector<std::string> labels;
            for (size_t i = 0; i < options->label_count; ++i) labels.emplace_back(options->labels[i]);
            space.emplace(std::move(labels));
        } else if (options->target != nullptr) {
            space = options->target->povm.space();
        } else {
            povmf::fail(povmf::ErrorCode::InvalidArgument, "recorded data needs outcome labels");
        }
        const povmf::Index dim = options->target != nullptr ? options->target->povm.dim()
                                                            : static_cast<povmf::Index>(options->dim);
        if (options->target != nullptr && options->dim != 0 && static_cast<povmf::Index>(options->dim) != dim) {
            povmf::fail(povmf::ErrorCode::DimensionMismatch, "dim does not match the target POVM");
        }
        if (dim < 2) povmf::fail(povmf::ErrorCode::InvalidArgument, "identification needs dim >= 2");

        std::unique_ptr<povmf::ShotSampler> sampler;
        std::string mode;
        if (options->recorded_csv != nullptr) {
            sampler = std::make_unique<povmf::RecordedSampler>(
                povmf::parse_recorded_counts(options->recorded_csv, *space, dim));
            mode = "recorded";
        } else if (options->shots == 0) {
            sampler = std::make_unique<povmf::ExactSampler>(options->target->povm);
            mode = "exact";
        } else {
            sampler = std::make_unique<povmf::SimulatedSampler>(options->target->povm, options->shots, options->seed);
            mode = "simulated";
        }

        auto est = povmf::estimate_povm(*sampler, *space, dim);
        povmf::Json json = {{"mode", mode},
                            {"dim", dim},
                            {"shots_used", est.shots_used},
                            {"residual", est.residual},
                            {"estimate", povmf::povm_to_json(est.projected)}};
        std::string text = "mode " + mode + ", shots used " + std::to_string(est.shots_used) + "\n";
        char line[160];
        std::snprintf(line, sizeof line, "projection residual %.3e\n", est.residual);
        text += line;
        bool passed = true;
        if (options->target != nullptr) {
            if (options->target->povm.size() != est.projected.size()) {
                povmf::fail(povmf::ErrorCode::DimensionMismatch, "labels do not match the target POVM");
            }
            const double err = povmf::povm_distance(est.projected, options->target->povm);
            passed = err <= options->error_bound;
            json["error"] = err;
            json["error_bound"] = options->error_bound;
            std::snprintf(line, sizeof line, "max element error %.3e (bound %.1e): %s\n", err, options->error_bound,
                          passed ? "PASS" : "FAIL");
            text += line;
        }
        json["passed"] = passed;
        if (estimated != nullptr) *estimated = new povmf_povm{est.projected};
        *report = new povmf_report{passed, std::move(text), std::move(json)};
    });
}

}  // extern "C"

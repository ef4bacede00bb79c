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

#include "povmf/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "povmf/error.hpp"
#include "povmf/io.hpp"

namespace povmf {

namespace {

void append_number(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::vector<Trajectory> simulate(const ChainModel& model, const SimulationOptions& options) {
    if (options.steps > model.horizon()) {
        fail(ErrorCode::InvalidArgument, "steps (" + std::to_string(options.steps) + ") exceed the horizon (" +
                                             std::to_string(model.horizon()) + ")");
    }
    const std::size_t n = options.trajectories;
    std::vector<std::optional<Trajectory>> slots(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                Rng rng(options.seed, k);
                slots[k] = sample_trajectory(model, options.steps, rng, options.tol);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);

    std::vector<Trajectory> out;
    out.reserve(n);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::string trajectory_csv(const ChainModel& model, const Trajectory& trajectory) {
    const Index d = model.sys_dim();
    std::string out = "step,outcome_label,outcome_probability,log_likelihood";
    for (Index i = 0; i < d; ++i) {
        for (Index k = 0; k < d; ++k) {
            const std::string idx = std::to_string(i) + "_" + std::to_string(k);
            out += ",re_" + idx + ",im_" + idx;
        }
    }
    out += '\n';

    for (std::size_t row = 0; row < trajectory.states.size(); ++row) {
        const auto& fs = trajectory.states[row];
        out += std::to_string(fs.step);
        out += ',';
        if (row > 0) out += model.povm(row).space().label(trajectory.record.outcomes[row - 1]);
        out += ',';
        append_number(out, row > 0 ? trajectory.probabilities[row - 1] : 1.0);
        out += ',';
        append_number(out, fs.log_likelihood);
        const Matrix& m = fs.state.matrix();
        for (Index i = 0; i < d; ++i) {
            for (Index k = 0; k < d; ++k) {
                out += ',';
                append_number(out, m(i, k).real());
                out += ',';
                append_number(out, m(i, k).imag());
            }
        }
        out += '\n';
    }
    return out;
}

std::string simulation_summary_json(const ChainModel& model, const SimulationOptions& options,
                                    const std::vector<Trajectory>& trajectories) {
    Json out;
    out["seed"] = options.seed;
    out["steps"] = options.steps;
    out["sys_dim"] = model.sys_dim();
    Json list = Json::array();
    for (std::size_t k = 0; k < trajectories.size(); ++k) {
        const auto& t = trajectories[k];
        Json labels = Json::array();
        for (std::size_t n = 0; n < t.record.outcomes.size(); ++n) {
            labels.push_back(model.povm(n + 1).space().label(t.record.outcomes[n]));
        }
        list.push_back({{"index", k},
                        {"outcomes", std::move(labels)},
                        {"log_likelihood", t.states.back().log_likelihood},
                        {"final_state", matrix_to_json(t.states.back().state.matrix())}});
    }
    out["trajectories"] = std::move(list);
    return out.dump(2) + "\n";
}

}  // namespace povmf

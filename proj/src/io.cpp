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

#include "povmf/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "povmf/error.hpp"

namespace povmf {

namespace {

const Json& require(const Json& j, const char* field) {
    if (!j.is_object()) fail(ErrorCode::ParseError, std::string("expected an object containing '") + field + "'");
    auto it = j.find(field);
    if (it == j.end()) fail(ErrorCode::ParseError, std::string("missing required field '") + field + "'");
    return *it;
}

template <typename T>
T get_as(const Json& j, const std::string& what) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(ErrorCode::ParseError, "field '" + what + "' has the wrong type");
    }
}

Index get_dim(const Json& j, const char* field) {
    const Json& v = require(j, field);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        fail(ErrorCode::ParseError, std::string("field '") + field + "' must be a positive integer");
    }
    return static_cast<Index>(v.get<long long>());
}

Complex entry_from_json(const Json& e, const std::string& what) {
    if (e.is_number()) return {e.get<double>(), 0.0};
    if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        return {e[0].get<double>(), e[1].get<double>()};
    }
    fail(ErrorCode::ParseError, "field '" + what + "': matrix entries must be [re, im] pairs");
}

// A list of matrices has arrays of entries as its elements; a single matrix
// has entries ([re, im] or numbers).
bool is_matrix_list(const Json& j) {
    return j.is_array() && !j.empty() && j[0].is_array() && !j[0].empty() && j[0][0].is_array();
}

std::vector<std::string> labels_from_json(const Json& j) {
    const Json& l = require(j, "labels");
    if (!l.is_array()) fail(ErrorCode::ParseError, "field 'labels' must be an array");
    std::vector<std::string> labels;
    for (const auto& e : l) {
        if (e.is_string()) {
            labels.push_back(e.get<std::string>());
        } else if (e.is_number_integer()) {
            labels.push_back(std::to_string(e.get<long long>()));
        } else if (e.is_number()) {
            labels.push_back(e.dump());
        } else {
            fail(ErrorCode::ParseError, "field 'labels' must hold strings or numbers");
        }
    }
    return labels;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index k = 0; k < m.cols(); ++k) out.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    }
    return out;
}

Matrix matrix_from_json(const Json& j, Index dim, const std::string& what) {
    if (!j.is_array()) fail(ErrorCode::ParseError, "field '" + what + "' must be an array of [re, im] entries");
    if (static_cast<Index>(j.size()) != dim * dim) {
        fail(ErrorCode::ParseError, "field '" + what + "' has " + std::to_string(j.size()) + " entries, expected " +
                                        std::to_string(dim * dim));
    }
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i) {
        for (Index k = 0; k < dim; ++k) m(i, k) = entry_from_json(j[static_cast<std::size_t>(i * dim + k)], what);
    }
    return m;
}

Json povm_to_json(const Povm& povm) {
    Json out;
    out["dim"] = povm.dim();
    out["labels"] = povm.space().labels();
    if (povm.space().has_values()) out["numeric_values"] = *povm.space().values();
    Json elements = Json::array();
    for (const auto& e : povm.elements()) elements.push_back(matrix_to_json(e));
    out["elements"] = std::move(elements);
    return out;
}

Povm povm_from_json(const Json& j, double tol) {
    if (j.is_object() && j.contains("qubit_phase")) {
        const Json& m = j["qubit_phase"];
        if (!m.is_number_integer()) fail(ErrorCode::ParseError, "field 'qubit_phase' must be an integer");
        return qubit_phase_povm(m.get<int>());
    }
    const Index dim = get_dim(j, "dim");
    auto labels = labels_from_json(j);
    std::optional<std::vector<double>> values;
    if (j.contains("numeric_values") && !j["numeric_values"].is_null()) {
        values = get_as<std::vector<double>>(j["numeric_values"], "numeric_values");
    }
    const Json& el = require(j, "elements");
    if (!el.is_array() || el.size() != labels.size()) {
        fail(ErrorCode::ParseError, "field 'elements' must hold one matrix per label");
    }
    std::vector<Matrix> elements;
    for (std::size_t i = 0; i < el.size(); ++i) {
        elements.push_back(matrix_from_json(el[i], dim, "elements[" + std::to_string(i) + "]"));
    }
    return Povm::create(OutcomeSpace(std::move(labels), std::move(values)), std::move(elements), tol);
}

Json instrument_to_json(const Instrument& ins) {
    Json out;
    out["dim"] = ins.dim();
    out["labels"] = ins.space().labels();
    Json kraus = Json::object();
    for (std::size_t w = 0; w < ins.size(); ++w) {
        Json list = Json::array();
        for (const auto& k : ins.kraus(w)) list.push_back(matrix_to_json(k));
        kraus[ins.space().label(w)] = std::move(list);
    }
    out["kraus"] = std::move(kraus);
    return out;
}

Instrument instrument_from_json(const Json& j, double tol) {
    const Index dim = get_dim(j, "dim");
    auto labels = labels_from_json(j);
    const Json& kraus_j = require(j, "kraus");
    if (!kraus_j.is_object()) fail(ErrorCode::ParseError, "field 'kraus' must be an object keyed by label");
    for (const auto& [key, _] : kraus_j.items()) {
        if (std::find(labels.begin(), labels.end(), key) == labels.end()) {
            fail(ErrorCode::UnknownLabel, "field 'kraus' has unknown label '" + key + "'");
        }
    }
    std::vector<KrausList> kraus;
    for (const auto& label : labels) {
        KrausList list;
        if (auto it = kraus_j.find(label); it != kraus_j.end()) {
            if (!it->is_array()) fail(ErrorCode::ParseError, "field 'kraus." + label + "' must be a list of matrices");
            for (std::size_t n = 0; n < it->size(); ++n) {
                list.push_back(matrix_from_json((*it)[n], dim, "kraus." + label + "[" + std::to_string(n) + "]"));
            }
        }
        kraus.push_back(std::move(list));
    }
    return Instrument::create(OutcomeSpace(std::move(labels)), std::move(kraus), tol);
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "scenario must be a JSON object");
    const Index sys_dim = get_dim(j, "sys_dim");
    const Index probe_dim = get_dim(j, "probe_dim");
    const Json& horizon_j = require(j, "horizon");
    if (!horizon_j.is_number_unsigned()) fail(ErrorCode::ParseError, "field 'horizon' must be a non-negative integer");
    const auto horizon = horizon_j.get<std::size_t>();

    Scenario s{.model = [&] {
        const double tol = j.contains("tol") ? get_as<double>(j["tol"], "tol") : kDefaultTol;
        const auto initial =
            DensityOperator::from_matrix(matrix_from_json(require(j, "initial_state"), sys_dim, "initial_state"), tol);

        const Json& probe_j = require(j, "probe_state");
        std::vector<DensityOperator> probes;
        if (is_matrix_list(probe_j)) {
            for (std::size_t n = 0; n < probe_j.size(); ++n) {
                probes.push_back(DensityOperator::from_matrix(
                    matrix_from_json(probe_j[n], probe_dim, "probe_state[" + std::to_string(n) + "]"), tol));
            }
        } else {
            probes.push_back(DensityOperator::from_matrix(matrix_from_json(probe_j, probe_dim, "probe_state"), tol));
        }

        const Json& u_j = require(j, "unitaries");
        std::vector<Matrix> unitaries;
        if (is_matrix_list(u_j)) {
            for (std::size_t n = 0; n < u_j.size(); ++n) {
                unitaries.push_back(
                    matrix_from_json(u_j[n], sys_dim * probe_dim, "unitaries[" + std::to_string(n) + "]"));
            }
        } else {
            unitaries.push_back(matrix_from_json(u_j, sys_dim * probe_dim, "unitaries"));
        }

        const Json& b_j = require(j, "povms");
        std::vector<Povm> povms;
        if (b_j.is_array()) {
            for (const auto& b : b_j) povms.push_back(povm_from_json(b, tol));
        } else {
            povms.push_back(povm_from_json(b_j, tol));
        }
        return ChainModel::create(initial, std::move(probes), std::move(unitaries), std::move(povms), horizon, tol);
    }()};

    if (j.contains("seed")) s.seed = get_as<std::uint64_t>(j["seed"], "seed");
    if (j.contains("steps")) s.steps = get_as<std::size_t>(j["steps"], "steps");
    if (j.contains("trajectories")) s.trajectories = get_as<std::size_t>(j["trajectories"], "trajectories");
    if (j.contains("tol")) s.tol = get_as<double>(j["tol"], "tol");
    return s;
}

Json model_to_json(const ChainModel& model) {
    Json out;
    out["sys_dim"] = model.sys_dim();
    out["probe_dim"] = model.probe_dim();
    out["horizon"] = model.horizon();
    out["initial_state"] = matrix_to_json(model.initial_state().matrix());
    Json probes = Json::array();
    for (const auto& p : model.probe_states()) probes.push_back(matrix_to_json(p.matrix()));
    out["probe_state"] = std::move(probes);
    Json us = Json::array();
    for (const auto& u : model.unitaries()) us.push_back(matrix_to_json(u));
    out["unitaries"] = std::move(us);
    Json bs = Json::array();
    for (const auto& b : model.povms()) bs.push_back(povm_to_json(b));
    out["povms"] = std::move(bs);
    return out;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::IoError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    out << contents;
    if (!out) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace povmf

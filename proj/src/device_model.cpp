// Copyright 2026 The QuPUF-Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qupuf/device_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qupuf/error.hpp"
#include "qupuf/rng.hpp"

namespace qupuf {

namespace {

constexpr std::uint64_t kDriftStreamTag = 0x64726966745F7631ULL;  // "drift_v1"

void require_probability(double v, const std::string &where, const char *field) {
    if (!(v >= 0.0 && v <= 1.0)) {
        std::ostringstream os;
        os << where << ": " << field << " = " << v << " outside [0, 1]";
        throw ValidationError(os.str());
    }
}

void require_non_negative(double v, const std::string &where, const char *field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << where << ": " << field << " = " << v << " must be finite and >= 0";
        throw ValidationError(os.str());
    }
}

void require_positive(double v, const std::string &where, const char *field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << where << ": " << field << " = " << v << " must be finite and > 0";
        throw ValidationError(os.str());
    }
}

}  // namespace

void QubitParams::validate(const std::string &where) const {
    require_probability(read_flip_0to1, where, "read01");
    require_probability(read_flip_1to0, where, "read10");
    if (!(std::abs(rotation_bias) < 90.0)) {
        std::ostringstream os;
        os << where << ": bias_deg = " << rotation_bias << " must satisfy |bias| < 90";
        throw ValidationError(os.str());
    }
    require_positive(t1, where, "t1_us");
    require_non_negative(drift_sigma_readout, where, "drift_readout");
    require_non_negative(drift_sigma_bias, where, "drift_bias_deg");
    require_non_negative(drift_sigma_t1_rel, where, "drift_t1_rel");
}

CouplingMap normalize_coupling_map(CouplingMap edges, int n_qubits) {
    for (auto &[a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
            std::ostringstream os;
            os << "coupling_map: edge [" << a << ", " << b << "] references a qubit outside [0, " << n_qubits << ")";
            throw ValidationError(os.str());
        }
        if (a == b) {
            throw ValidationError("coupling_map: self-loop on qubit " + std::to_string(a));
        }
        if (a > b) {
            std::swap(a, b);
        }
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        std::ostringstream os;
        os << "coupling_map: duplicate edge [" << dup->first << ", " << dup->second << "]";
        throw ValidationError(os.str());
    }
    return edges;
}

void DeviceFingerprint::validate() const {
    const std::string where = "device '" + device_id + "'";
    if (device_id.empty()) {
        throw ValidationError("device: id must be non-empty");
    }
    if (n_qubits <= 0) {
        throw ValidationError(where + ": n_qubits must be positive");
    }
    if (static_cast<int>(qubits.size()) != n_qubits) {
        std::ostringstream os;
        os << where << ": qubits has " << qubits.size() << " entries but n_qubits = " << n_qubits;
        throw ValidationError(os.str());
    }
    require_positive(idle_gate_duration, where, "idle_gate_ns");
    try {
        normalize_coupling_map(coupling_map, n_qubits);
    } catch (const ValidationError &e) {
        throw ValidationError(where + ": " + e.what());
    }
    for (int q = 0; q < n_qubits; ++q) {
        qubits[q].validate(where + " qubit " + std::to_string(q));
    }
}

SessionParams sample_session(const DeviceFingerprint &device, int session_index, std::uint64_t rng_seed) {
    SessionParams out;
    out.session_index = session_index;
    out.qubits.reserve(device.qubits.size());
    for (std::size_t q = 0; q < device.qubits.size(); ++q) {
        const QubitParams &base = device.qubits[q];
        Rng rng(derive_seed({kDriftStreamTag, device.base_seed, rng_seed, static_cast<std::uint64_t>(session_index),
                             static_cast<std::uint64_t>(q)}));
        QubitParams eff = base;
        eff.read_flip_0to1 = std::clamp(rng.gaussian(base.read_flip_0to1, base.drift_sigma_readout), 0.0, 1.0);
        eff.read_flip_1to0 = std::clamp(rng.gaussian(base.read_flip_1to0, base.drift_sigma_readout), 0.0, 1.0);
        eff.rotation_bias = std::clamp(rng.gaussian(base.rotation_bias, base.drift_sigma_bias), -kMaxBiasDeg, kMaxBiasDeg);
        const double factor = 1.0 + rng.gaussian(0.0, base.drift_sigma_t1_rel);
        eff.t1 = std::max(base.t1 * factor, base.t1 * kT1FloorFraction);
        out.qubits.push_back(eff);
    }
    return out;
}

namespace {

struct EmbeddingSearch {
    int guest_n;
    int host_n;
    std::vector<std::vector<char>> host_adj;
    std::vector<std::vector<int>> guest_neighbors;  // neighbors with a smaller index only
    std::vector<int> guest_degree;
    std::vector<int> host_degree;
    Embedding current;
    std::vector<char> used;
    std::vector<Embedding> found;

    void extend(int u) {
        if (u == guest_n) {
            found.push_back(current);
            return;
        }
        for (int h = 0; h < host_n; ++h) {
            if (used[h] || host_degree[h] < guest_degree[u]) {
                continue;
            }
            bool ok = true;
            for (int v : guest_neighbors[u]) {
                if (!host_adj[h][current[v]]) {
                    ok = false;
                    break;
                }
            }
            if (!ok) {
                continue;
            }
            used[h] = 1;
            current[u] = h;
            extend(u + 1);
            used[h] = 0;
        }
    }
};

}  // namespace

std::vector<Embedding> find_isomorphic_embeddings(const DeviceFingerprint &host, const CouplingMap &guest_coupling_map,
                                                  int guest_n_qubits) {
    if (guest_n_qubits <= 0 || guest_n_qubits > host.n_qubits) {
        return {};
    }
    const CouplingMap guest = normalize_coupling_map(guest_coupling_map, guest_n_qubits);

    EmbeddingSearch s;
    s.guest_n = guest_n_qubits;
    s.host_n = host.n_qubits;
    s.host_adj.assign(host.n_qubits, std::vector<char>(host.n_qubits, 0));
    s.host_degree.assign(host.n_qubits, 0);
    for (auto [a, b] : host.coupling_map) {
        s.host_adj[a][b] = s.host_adj[b][a] = 1;
        ++s.host_degree[a];
        ++s.host_degree[b];
    }
    s.guest_neighbors.assign(guest_n_qubits, {});
    s.guest_degree.assign(guest_n_qubits, 0);
    for (auto [a, b] : guest) {
        s.guest_neighbors[b].push_back(a);  // a < b after normalization
        ++s.guest_degree[a];
        ++s.guest_degree[b];
    }
    s.current.assign(guest_n_qubits, -1);
    s.used.assign(host.n_qubits, 0);
    // Host candidates are tried in ascending order, so results come out lexicographic.
    s.extend(0);
    return std::move(s.found);
}

bool same_shape(const DeviceFingerprint &a, const DeviceFingerprint &b) {
    if (a.n_qubits != b.n_qubits || a.coupling_map.size() != b.coupling_map.size()) {
        return false;
    }
    // With equal vertex and edge counts, an edge-preserving bijection is an isomorphism.
    return !find_isomorphic_embeddings(b, a.coupling_map, a.n_qubits).empty();
}

DeviceRegistry::DeviceRegistry(std::vector<DeviceFingerprint> devices) {
    for (auto &d : devices) {
        add(std::move(d));
    }
}

void DeviceRegistry::add(DeviceFingerprint device) {
    device.validate();
    device.coupling_map = normalize_coupling_map(std::move(device.coupling_map), device.n_qubits);
    if (devices_.contains(device.device_id)) {
        throw ValidationError("duplicate id '" + device.device_id + "'");
    }
    insertion_order_.push_back(device.device_id);
    std::string id = device.device_id;
    devices_.emplace(std::move(id), std::move(device));
}

const DeviceFingerprint &DeviceRegistry::at(const std::string &device_id) const {
    auto it = devices_.find(device_id);
    if (it == devices_.end()) {
        std::string known;
        for (const auto &[id, _] : devices_) {
            known += (known.empty() ? "" : ", ") + id;
        }
        throw NotFoundError("unknown device '" + device_id + "'; known ids: " + known);
    }
    return it->second;
}

std::vector<std::string> DeviceRegistry::ids() const {
    std::vector<std::string> out;
    out.reserve(devices_.size());
    for (const auto &[id, _] : devices_) {
        out.push_back(id);
    }
    return out;
}

std::vector<DeviceFingerprint> DeviceRegistry::devices() const {
    std::vector<DeviceFingerprint> out;
    out.reserve(insertion_order_.size());
    for (const auto &id : insertion_order_) {
        out.push_back(devices_.at(id));
    }
    return out;
}

CouplingMap t_shape_coupling_map() { return {{0, 1}, {1, 2}, {1, 3}, {3, 4}}; }

CouplingMap line_coupling_map(int n_qubits) {
    CouplingMap edges;
    for (int q = 0; q + 1 < n_qubits; ++q) {
        edges.emplace_back(q, q + 1);
    }
    return edges;
}

void to_json(nlohmann::json &j, const QubitParams &q) {
    j = nlohmann::json{{"read01", q.read_flip_0to1},
                       {"read10", q.read_flip_1to0},
                       {"bias_deg", q.rotation_bias},
                       {"t1_us", q.t1},
                       {"drift_readout", q.drift_sigma_readout},
                       {"drift_bias_deg", q.drift_sigma_bias},
                       {"drift_t1_rel", q.drift_sigma_t1_rel}};
}

void from_json(const nlohmann::json &j, QubitParams &q) {
    j.at("read01").get_to(q.read_flip_0to1);
    j.at("read10").get_to(q.read_flip_1to0);
    j.at("bias_deg").get_to(q.rotation_bias);
    j.at("t1_us").get_to(q.t1);
    j.at("drift_readout").get_to(q.drift_sigma_readout);
    j.at("drift_bias_deg").get_to(q.drift_sigma_bias);
    j.at("drift_t1_rel").get_to(q.drift_sigma_t1_rel);
}

void to_json(nlohmann::json &j, const DeviceFingerprint &d) {
    nlohmann::json edges = nlohmann::json::array();
    for (auto [a, b] : d.coupling_map) {
        edges.push_back({a, b});
    }
    j = nlohmann::json{{"id", d.device_id},     {"n_qubits", d.n_qubits},         {"coupling_map", edges},
                       {"idle_gate_ns", d.idle_gate_duration}, {"seed", d.base_seed}, {"qubits", d.qubits}};
}

void from_json(const nlohmann::json &j, DeviceFingerprint &d) {
    j.at("id").get_to(d.device_id);
    j.at("n_qubits").get_to(d.n_qubits);
    d.coupling_map.clear();
    for (const auto &e : j.at("coupling_map")) {
        if (!e.is_array() || e.size() != 2) {
            throw ParseError("coupling_map: every edge must be a pair [int, int]");
        }
        d.coupling_map.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    j.at("idle_gate_ns").get_to(d.idle_gate_duration);
    j.at("seed").get_to(d.base_seed);
    j.at("qubits").get_to(d.qubits);
}

DeviceRegistry registry_from_json(const nlohmann::json &j) {
    if (!j.is_array()) {
        throw ParseError("device file: top level must be an array of devices");
    }
    DeviceRegistry registry;
    for (std::size_t i = 0; i < j.size(); ++i) {
        DeviceFingerprint d;
        try {
            d = j[i].get<DeviceFingerprint>();
        } catch (const nlohmann::json::exception &e) {
            throw ParseError("device file entry " + std::to_string(i) + ": " + e.what());
        }
        registry.add(std::move(d));
    }
    return registry;
}

nlohmann::json registry_to_json(const DeviceRegistry &registry) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto &d : registry.devices()) {
        j.push_back(d);
    }
    return j;
}

DeviceRegistry load_registry(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open device file '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("device file '" + path.string() + "': " + e.what());
    }
    return registry_from_json(j);
}

void save_registry(const DeviceRegistry &registry, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << registry_to_json(registry).dump(2) << '\n';
}

}  // namespace qupuf

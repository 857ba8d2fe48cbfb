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

#pragma once

#include <string>
#include <vector>

#include "qupuf/device_model.hpp"

namespace qupuf::testing {

inline QubitParams quiet_qubit(double read01 = 0.0, double read10 = 0.0, double bias = 0.0, double t1 = 100.0) {
    QubitParams q;
    q.read_flip_0to1 = read01;
    q.read_flip_1to0 = read10;
    q.rotation_bias = bias;
    q.t1 = t1;
    return q;
}

inline DeviceFingerprint t_device(const std::string &id, std::vector<QubitParams> qubits, std::uint64_t seed = 1,
                                  double idle_ns = 100.0) {
    DeviceFingerprint d;
    d.device_id = id;
    d.n_qubits = 5;
    d.coupling_map = t_shape_coupling_map();
    d.qubits = std::move(qubits);
    d.idle_gate_duration = idle_ns;
    d.base_seed = seed;
    return d;
}

inline DeviceFingerprint ideal_t_device(const std::string &id, std::uint64_t seed = 1) {
    return t_device(id, std::vector<QubitParams>(5, quiet_qubit()), seed);
}

/// Three disjoint T-shapes on qubits 0-14, then qubits 15-19 as a chain hanging off qubit 14.
inline DeviceFingerprint tiled_t_host(const std::string &id, const QubitParams &q, std::uint64_t seed = 99) {
    DeviceFingerprint d;
    d.device_id = id;
    d.n_qubits = 20;
    for (int tile = 0; tile < 3; ++tile) {
        for (auto [a, b] : t_shape_coupling_map()) {
            d.coupling_map.emplace_back(a + 5 * tile, b + 5 * tile);
        }
    }
    for (int v = 14; v < 19; ++v) {
        d.coupling_map.emplace_back(v, v + 1);
    }
    d.coupling_map = normalize_coupling_map(d.coupling_map, d.n_qubits);
    d.qubits.assign(20, q);
    d.idle_gate_duration = 100.0;
    d.base_seed = seed;
    return d;
}

/// Calibrated 5-qubit device: per-qubit readout flips differ from the mirrored partner by
/// >= 0.10, all drift sigmas <= 0.01. `mirrored` swaps the roles of the two flip directions.
inline DeviceFingerprint calibrated_device(const std::string &id, bool mirrored, std::uint64_t seed) {
    std::vector<QubitParams> qubits;
    for (int q = 0; q < 5; ++q) {
        const double low = 0.02 + 0.01 * q;
        const double high = 0.20 + 0.025 * q;
        QubitParams p = quiet_qubit(mirrored ? high : low, mirrored ? low : high, mirrored ? 0.3 : -0.3, 60.0 + 5 * q);
        p.drift_sigma_readout = 0.01;
        p.drift_sigma_bias = 0.01;
        p.drift_sigma_t1_rel = 0.01;
        qubits.push_back(p);
    }
    return t_device(id, qubits, seed);
}

/// 20-qubit host tiled with T-shapes whose qubits all lean like the mirrored calibrated device.
inline DeviceFingerprint calibrated_host(const std::string &id, std::uint64_t seed) {
    auto host = tiled_t_host(id, quiet_qubit(), seed);
    const auto pattern = calibrated_device("tmp", true, 0).qubits;
    for (int q = 0; q < host.n_qubits; ++q) {
        host.qubits[q] = pattern[q % 5];
    }
    return host;
}

}  // namespace qupuf::testing

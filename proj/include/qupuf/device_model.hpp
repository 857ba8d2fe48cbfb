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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace qupuf {

/// Largest rotation-bias magnitude a (drifted or inflated) qubit may carry, in degrees.
inline constexpr double kMaxBiasDeg = 89.99;

/// Effective T1 never drops below this fraction of the base value.
inline constexpr double kT1FloorFraction = 0.01;

/// Error and decoherence parameters of one physical qubit.
struct QubitParams {
    double read_flip_0to1 = 0.0;  ///< P(read 1 | state 0)
    double read_flip_1to0 = 0.0;  ///< P(read 0 | state 1)
    double rotation_bias = 0.0;   ///< degrees, added to every commanded R_Y angle
    double t1 = 100.0;            ///< microseconds
    double drift_sigma_readout = 0.0;
    double drift_sigma_bias = 0.0;  ///< degrees
    double drift_sigma_t1_rel = 0.0;

    /// Throws ValidationError naming the first violated field. `where` prefixes the name.
    void validate(const std::string &where = "qubit") const;

    bool operator==(const QubitParams &) const = default;
};

using Edge = std::pair<int, int>;

/// Undirected edges stored normalized (first < second) and sorted.
using CouplingMap = std::vector<Edge>;

/// Sorts, orients and validates an edge list against `n_qubits`.
/// Throws ValidationError on self-loops, duplicates or out-of-range indices.
CouplingMap normalize_coupling_map(CouplingMap edges, int n_qubits);

/// Identity of one simulated device.
struct DeviceFingerprint {
    std::string device_id;
    int n_qubits = 0;
    CouplingMap coupling_map;
    std::vector<QubitParams> qubits;
    double idle_gate_duration = 35.5;  ///< nanoseconds per idle gate
    std::uint64_t base_seed = 0;

    void validate() const;

    bool operator==(const DeviceFingerprint &) const = default;
};

/// Drifted per-qubit parameters for one session.
struct SessionParams {
    std::vector<QubitParams> qubits;
    int session_index = 0;
};

/// Returns the drifted parameters of `device` for one session.
///
/// Readout flips, bias and relative T1 receive independent zero-mean
/// Gaussian perturbations, then get clamped back into their valid ranges.
/// The result depends only on (device.base_seed, rng_seed, session_index)
/// and the device parameters.
SessionParams sample_session(const DeviceFingerprint &device, int session_index, std::uint64_t rng_seed);

/// Injective guest-to-host index map; element i is the host index of guest qubit i.
using Embedding = std::vector<int>;

/// Enumerates every edge-preserving injective map of the guest graph into `host`.
///
/// Results are sorted lexicographically by the mapped index tuple.
/// Returns an empty list when the guest does not fit.
std::vector<Embedding> find_isomorphic_embeddings(const DeviceFingerprint &host, const CouplingMap &guest_coupling_map,
                                                  int guest_n_qubits);

/// True when the two devices have the same size and isomorphic coupling maps.
bool same_shape(const DeviceFingerprint &a, const DeviceFingerprint &b);

/// Devices keyed by id. Iteration order is lexicographic by id.
class DeviceRegistry {
   public:
    DeviceRegistry() = default;
    explicit DeviceRegistry(std::vector<DeviceFingerprint> devices);

    /// Validates and adds a device. Throws ValidationError on a duplicate id.
    void add(DeviceFingerprint device);

    /// Throws NotFoundError listing the known ids.
    const DeviceFingerprint &at(const std::string &device_id) const;
    bool contains(const std::string &device_id) const { return devices_.contains(device_id); }
    std::size_t size() const { return devices_.size(); }
    std::vector<std::string> ids() const;

    /// Devices in the order they were added (the file order).
    std::vector<DeviceFingerprint> devices() const;

   private:
    std::map<std::string, DeviceFingerprint> devices_;
    std::vector<std::string> insertion_order_;
};

/// Canned coupling-map templates.
CouplingMap t_shape_coupling_map();            ///< 5 qubits, 4 edges
CouplingMap line_coupling_map(int n_qubits);  ///< n qubits in a chain

// JSON device format.
void to_json(nlohmann::json &j, const QubitParams &q);
void from_json(const nlohmann::json &j, QubitParams &q);
void to_json(nlohmann::json &j, const DeviceFingerprint &d);
void from_json(const nlohmann::json &j, DeviceFingerprint &d);

DeviceRegistry registry_from_json(const nlohmann::json &j);
nlohmann::json registry_to_json(const DeviceRegistry &registry);

/// Reads and validates a device file.
DeviceRegistry load_registry(const std::filesystem::path &path);
void save_registry(const DeviceRegistry &registry, const std::filesystem::path &path);

}  // namespace qupuf

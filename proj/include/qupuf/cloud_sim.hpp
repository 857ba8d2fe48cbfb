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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qupuf/auth.hpp"
#include "qupuf/circuits.hpp"
#include "qupuf/device_model.hpp"

namespace qupuf {

/// How the cloud scheduler treats a request.
struct SchedulerPolicy {
    enum class Mode {
        Honest,            ///< run on the requested device
        RerouteSameShape,  ///< run on another device with an isomorphic coupling map
        RerouteSubgraph,   ///< run on a segment of a larger device, with crosstalk
    };

    Mode mode = Mode::Honest;
    std::string target_id;           ///< allocated device (RerouteSameShape) or host (RerouteSubgraph)
    double crosstalk_factor = 1.0;   ///< >= 1, RerouteSubgraph only

    static SchedulerPolicy honest() { return {}; }
    static SchedulerPolicy reroute_same_shape(std::string target) { return {Mode::RerouteSameShape, std::move(target), 1.0}; }
    static SchedulerPolicy reroute_subgraph(std::string host, double factor) {
        return {Mode::RerouteSubgraph, std::move(host), factor};
    }

    /// "honest", "reroute:ID" or "subgraph:ID:FACTOR". Throws ParseError.
    static SchedulerPolicy parse(const std::string &text);
    std::string to_string() const;

    void validate() const;
    bool is_attack() const { return mode != Mode::Honest; }
};

struct AllocationEvent {
    std::string requested_id;
    std::string allocated_id;
    std::vector<int> qubit_mapping;  ///< requested qubit i runs on allocated qubit qubit_mapping[i]
    bool crosstalk_applied = false;
    double crosstalk_factor = 1.0;

    bool operator==(const AllocationEvent &) const = default;
};

void to_json(nlohmann::json &j, const AllocationEvent &e);

/// Decides where a request lands.
///
/// Honest and RerouteSameShape use the identity mapping when the coupling maps coincide
/// (for a same-shape target with a relabelled map, the lexicographically first isomorphism).
/// RerouteSubgraph picks one embedding uniformly at random from the seeded stream.
/// Throws NotFoundError for unknown ids, ValidationError for a non-isomorphic same-shape
/// target or a host with no embedding.
AllocationEvent allocate(const DeviceRegistry &registry, const std::string &requested_id,
                         const SchedulerPolicy &policy, std::uint64_t rng_seed);

/// Readout flips and |rotation_bias| scaled by `factor`, then clamped into range.
QubitParams inflate_crosstalk(const QubitParams &q, double factor);

/// Runs `challenge` where the scheduler put it. The trace's device_id is the requested device;
/// allocated_id records where it really ran. An honest allocation is byte-identical to a
/// direct execute_challenge on the requested device.
ResponseTrace execute_on_allocation(const AllocationEvent &event, const QuPUFChallenge &challenge,
                                    const DeviceRegistry &registry, std::uint64_t rng_seed);

struct DetectionReport {
    std::string requested_id;
    std::string policy;
    int trials = 0;
    /// Honest policy only.
    std::optional<double> honest_accept_rate;
    std::optional<double> false_reject_rate;
    /// Attack policies only: fraction of trials rejected.
    std::optional<double> attack_detect_rate;
    std::vector<AuthDecision> decisions;  ///< indexed by trial
    std::vector<AllocationEvent> allocations;

    /// "honest_accept=..., attack_detect=..., false_reject=..." with n/a for unset rates.
    std::string summary() const;
};

void to_json(nlohmann::json &j, const DetectionReport &r);

/// Per trial: allocate, execute the registered challenge, digitize the last session and
/// verify it against the requested device's record. Trials use independent derived seeds.
/// Throws NotFoundError when (requested_id, key) is not registered.
DetectionReport run_detection_experiment(const DeviceRegistry &registry, const CRPDatabase &db,
                                         const std::string &requested_id, const SchedulerPolicy &policy,
                                         const ChallengeKey &key, int trials, std::uint64_t seed);

}  // namespace qupuf

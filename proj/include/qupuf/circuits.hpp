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
#include "qupuf/device_model.hpp"

namespace qupuf {

enum class Variant {
    Hadamard,     ///< H, RY(theta), measure
    Decoherence,  ///< X, RY(theta), k idle gates, measure
};

std::string to_string(Variant v);
/// Accepts "hadamard" / "decoherence" (case-insensitive). Throws ParseError otherwise.
Variant parse_variant(const std::string &text);

/// The PUF challenge: which circuit, at which angle, with which sampling budget.
struct QuPUFChallenge {
    Variant variant = Variant::Hadamard;
    double theta = 0.0;  ///< degrees, commanded R_Y angle
    int idle_count = 0;  ///< Decoherence only
    int shots = 8192;
    int n_experiments = 75;
    std::optional<std::vector<int>> qubit_subset;

    /// Throws ValidationError.
    void validate() const;
    /// Physical qubit indices the challenge touches, ascending as given.
    std::vector<int> qubits_for(int n_qubits) const;

    bool operator==(const QuPUFChallenge &) const = default;
};

/// One experiment: estimated probability of reading 1 on each measured qubit.
struct SessionRecord {
    int session_index = 0;
    std::vector<double> prob_one;
    std::vector<std::uint64_t> one_counts;

    bool operator==(const SessionRecord &) const = default;
};

/// The analog PUF response of one device to one challenge.
struct ResponseTrace {
    std::string device_id;  ///< the device the user asked for
    std::string allocated_id;  ///< the device that actually ran; equals device_id unless rerouted
    QuPUFChallenge challenge;
    std::vector<SessionRecord> sessions;

    int n_qubits() const { return sessions.empty() ? 0 : static_cast<int>(sessions.front().prob_one.size()); }

    bool operator==(const ResponseTrace &) const = default;
};

/// Closed-form probability of observing 1 for one qubit.
///
/// With theta_eff = theta + rotation_bias:
///   Hadamard:    P(1) = (1 + sin theta_eff) / 2
///   Decoherence: P(1) = cos^2(theta_eff / 2) * exp(-idle_count * idle_ns / t1)
/// followed by the readout channel
///   p_obs = P(1) (1 - read_flip_1to0) + (1 - P(1)) read_flip_0to1.
///
/// R_Y(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]], so a positive
/// angle after H raises P(1).
double ideal_prob_one(Variant variant, double theta_deg, int idle_count, const QubitParams &params,
                      double idle_gate_duration_ns);

/// Runs `challenge.n_experiments` sessions, each on freshly drifted parameters.
///
/// One-counts are binomial(shots, p) draws. Every session uses its own stream
/// derived from (base_seed, rng_seed, session index), so the trace does not
/// depend on evaluation order.
ResponseTrace execute_challenge(const DeviceFingerprint &device, const QuPUFChallenge &challenge,
                                std::uint64_t rng_seed);

/// Human-readable circuit listing, one line per qubit, e.g. "q0: H; RY(3.0°); M".
std::string circuit_description(const QuPUFChallenge &challenge, int n_qubits);

void to_json(nlohmann::json &j, const QuPUFChallenge &c);
void from_json(const nlohmann::json &j, QuPUFChallenge &c);
void to_json(nlohmann::json &j, const ResponseTrace &t);
void from_json(const nlohmann::json &j, ResponseTrace &t);

}  // namespace qupuf

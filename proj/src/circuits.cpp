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

#include "qupuf/circuits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qupuf/error.hpp"
#include "qupuf/rng.hpp"

namespace qupuf {

namespace {

constexpr std::uint64_t kShotStreamTag = 0x73686F74735F7631ULL;  // "shots_v1"

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::string format_angle(double deg) {
    std::ostringstream os;
    if (deg == std::floor(deg)) {
        os.setf(std::ios::fixed);
        os.precision(1);
    }
    os << deg;
    return os.str();
}

}  // namespace

std::string to_string(Variant v) { return v == Variant::Hadamard ? "hadamard" : "decoherence"; }

Variant parse_variant(const std::string &text) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "hadamard") {
        return Variant::Hadamard;
    }
    if (lower == "decoherence") {
        return Variant::Decoherence;
    }
    throw ParseError("unknown variant '" + text + "' (expected hadamard or decoherence)");
}

void QuPUFChallenge::validate() const {
    if (variant == Variant::Hadamard && idle_count != 0) {
        throw ValidationError("challenge: idle_count must be 0 for the Hadamard variant");
    }
    if (idle_count < 0) {
        throw ValidationError("challenge: idle_count must be >= 0");
    }
    if (!(theta >= -90.0 && theta <= 90.0)) {
        throw ValidationError("challenge: theta must lie in [-90, 90] degrees");
    }
    if (shots <= 0) {
        throw ValidationError("challenge: shots must be positive");
    }
    if (n_experiments <= 0) {
        throw ValidationError("challenge: n_experiments must be positive");
    }
    if (qubit_subset && qubit_subset->empty()) {
        throw ValidationError("challenge: qubit_subset must not be empty when given");
    }
}

std::vector<int> QuPUFChallenge::qubits_for(int n_qubits) const {
    if (!qubit_subset) {
        std::vector<int> all(n_qubits);
        for (int q = 0; q < n_qubits; ++q) {
            all[q] = q;
        }
        return all;
    }
    std::vector<int> seen;
    for (int q : *qubit_subset) {
        if (q < 0 || q >= n_qubits) {
            throw ValidationError("challenge: invalid qubit index " + std::to_string(q) + " for a " +
                                  std::to_string(n_qubits) + "-qubit device");
        }
        if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
            throw ValidationError("challenge: qubit index " + std::to_string(q) + " listed twice");
        }
        seen.push_back(q);
    }
    return seen;
}

double ideal_prob_one(Variant variant, double theta_deg, int idle_count, const QubitParams &params,
                      double idle_gate_duration_ns) {
    const double theta_eff = deg_to_rad(theta_deg + params.rotation_bias);
    double p_state1 = 0.0;
    if (variant == Variant::Hadamard) {
        p_state1 = 0.5 * (1.0 + std::sin(theta_eff));
    } else {
        const double c = std::cos(0.5 * theta_eff);
        const double idle_us = idle_count * idle_gate_duration_ns * 1e-3;
        p_state1 = c * c * std::exp(-idle_us / params.t1);
    }
    p_state1 = std::clamp(p_state1, 0.0, 1.0);
    const double p_obs = p_state1 * (1.0 - params.read_flip_1to0) + (1.0 - p_state1) * params.read_flip_0to1;
    return std::clamp(p_obs, 0.0, 1.0);
}

ResponseTrace execute_challenge(const DeviceFingerprint &device, const QuPUFChallenge &challenge,
                                std::uint64_t rng_seed) {
    challenge.validate();
    const std::vector<int> qubits = challenge.qubits_for(device.n_qubits);

    ResponseTrace trace;
    trace.device_id = device.device_id;
    trace.allocated_id = device.device_id;
    trace.challenge = challenge;
    trace.sessions.resize(challenge.n_experiments);

    const auto shots = static_cast<std::uint64_t>(challenge.shots);
    for (int s = 0; s < challenge.n_experiments; ++s) {
        const SessionParams params = sample_session(device, s, rng_seed);
        Rng rng(derive_seed({kShotStreamTag, device.base_seed, rng_seed, static_cast<std::uint64_t>(s)}));
        SessionRecord &rec = trace.sessions[s];
        rec.session_index = s;
        rec.prob_one.reserve(qubits.size());
        rec.one_counts.reserve(qubits.size());
        for (int q : qubits) {
            const double p = ideal_prob_one(challenge.variant, challenge.theta, challenge.idle_count, params.qubits[q],
                                            device.idle_gate_duration);
            const std::uint64_t ones = rng.binomial(shots, p);
            rec.one_counts.push_back(ones);
            rec.prob_one.push_back(static_cast<double>(ones) / static_cast<double>(shots));
        }
    }
    return trace;
}

std::string circuit_description(const QuPUFChallenge &challenge, int n_qubits) {
    challenge.validate();
    std::ostringstream os;
    const std::string ry = "RY(" + format_angle(challenge.theta) + "°)";
    bool first = true;
    for (int q : challenge.qubits_for(n_qubits)) {
        if (!first) {
            os << '\n';
        }
        first = false;
        os << 'q' << q << ": ";
        if (challenge.variant == Variant::Hadamard) {
            os << "H; " << ry;
        } else {
            os << "X; " << ry;
            for (int k = 0; k < challenge.idle_count; ++k) {
                os << "; ID";
            }
        }
        os << "; M";
    }
    return os.str();
}

void to_json(nlohmann::json &j, const QuPUFChallenge &c) {
    j = nlohmann::json{{"variant", to_string(c.variant)}, {"theta_deg", c.theta},
                       {"idles", c.idle_count},          {"shots", c.shots},
                       {"experiments", c.n_experiments}};
    if (c.qubit_subset) {
        j["qubits"] = *c.qubit_subset;
    }
}

void from_json(const nlohmann::json &j, QuPUFChallenge &c) {
    c.variant = parse_variant(j.at("variant").get<std::string>());
    j.at("theta_deg").get_to(c.theta);
    j.at("idles").get_to(c.idle_count);
    j.at("shots").get_to(c.shots);
    j.at("experiments").get_to(c.n_experiments);
    if (auto it = j.find("qubits"); it != j.end() && !it->is_null()) {
        c.qubit_subset = it->get<std::vector<int>>();
    } else {
        c.qubit_subset.reset();
    }
}

void to_json(nlohmann::json &j, const ResponseTrace &t) {
    j = nlohmann::json::object();
    j["device"] = t.device_id;
    if (t.allocated_id != t.device_id) {
        j["allocated"] = t.allocated_id;
    }
    j["challenge"] = t.challenge;
    nlohmann::json sessions = nlohmann::json::array();
    for (const auto &s : t.sessions) {
        sessions.push_back({{"i", s.session_index}, {"p1", s.prob_one}, {"ones", s.one_counts}});
    }
    j["sessions"] = std::move(sessions);
}

void from_json(const nlohmann::json &j, ResponseTrace &t) {
    j.at("device").get_to(t.device_id);
    t.allocated_id = j.value("allocated", t.device_id);
    j.at("challenge").get_to(t.challenge);
    t.sessions.clear();
    for (const auto &s : j.at("sessions")) {
        SessionRecord rec;
        s.at("i").get_to(rec.session_index);
        s.at("p1").get_to(rec.prob_one);
        s.at("ones").get_to(rec.one_counts);
        if (rec.prob_one.size() != rec.one_counts.size()) {
            throw ParseError("trace: p1 and ones differ in length in session " + std::to_string(rec.session_index));
        }
        t.sessions.push_back(std::move(rec));
    }
}

}  // namespace qupuf

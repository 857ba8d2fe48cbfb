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

#include "qupuf/cloud_sim.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "qupuf/error.hpp"
#include "qupuf/rng.hpp"

namespace qupuf {

namespace {

constexpr std::uint64_t kAllocStreamTag = 0x616C6C6F635F7631ULL;
constexpr std::uint64_t kTrialStreamTag = 0x747269616C5F7631ULL;

std::vector<int> identity_mapping(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) {
        m[i] = i;
    }
    return m;
}

std::string format_rate(const std::optional<double> &r) {
    if (!r) {
        return "n/a";
    }
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    os << *r;
    return os.str();
}

}  // namespace

SchedulerPolicy SchedulerPolicy::parse(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        parts.push_back(item);
    }
    SchedulerPolicy p;
    if (parts.size() == 1 && parts[0] == "honest") {
        return p;
    }
    if (parts.size() == 2 && parts[0] == "reroute" && !parts[1].empty()) {
        return reroute_same_shape(parts[1]);
    }
    if (parts.size() == 3 && parts[0] == "subgraph" && !parts[1].empty()) {
        double factor = 0.0;
        const auto &f = parts[2];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), factor);
        if (ec != std::errc{} || ptr != f.data() + f.size()) {
            throw ParseError("policy: bad crosstalk factor '" + f + "'");
        }
        p = reroute_subgraph(parts[1], factor);
        p.validate();
        return p;
    }
    throw ParseError("policy: expected honest, reroute:ID or subgraph:ID:FACTOR, got '" + text + "'");
}

std::string SchedulerPolicy::to_string() const {
    switch (mode) {
        case Mode::Honest:
            return "honest";
        case Mode::RerouteSameShape:
            return "reroute:" + target_id;
        case Mode::RerouteSubgraph: {
            char buf[32];
            auto [end, ec] = std::to_chars(buf, buf + sizeof buf, crosstalk_factor);
            return "subgraph:" + target_id + ":" + std::string(buf, end);
        }
    }
    return "honest";
}

void SchedulerPolicy::validate() const {
    if (!(crosstalk_factor >= 1.0) || !std::isfinite(crosstalk_factor)) {
        throw ValidationError("policy: crosstalk_factor must be >= 1");
    }
    if (mode != Mode::Honest && target_id.empty()) {
        throw ValidationError("policy: reroute target must be named");
    }
}

void to_json(nlohmann::json &j, const AllocationEvent &e) {
    j = nlohmann::json{{"requested", e.requested_id},
                       {"allocated", e.allocated_id},
                       {"mapping", e.qubit_mapping},
                       {"crosstalk", e.crosstalk_applied},
                       {"crosstalk_factor", e.crosstalk_factor}};
}

AllocationEvent allocate(const DeviceRegistry &registry, const std::string &requested_id,
                         const SchedulerPolicy &policy, std::uint64_t rng_seed) {
    policy.validate();
    const DeviceFingerprint &requested = registry.at(requested_id);
    AllocationEvent event;
    event.requested_id = requested_id;

    switch (policy.mode) {
        case SchedulerPolicy::Mode::Honest:
            event.allocated_id = requested_id;
            event.qubit_mapping = identity_mapping(requested.n_qubits);
            break;
        case SchedulerPolicy::Mode::RerouteSameShape: {
            const DeviceFingerprint &target = registry.at(policy.target_id);
            if (!same_shape(requested, target)) {
                throw ValidationError("policy: device '" + target.device_id + "' does not share the coupling map of '" +
                                      requested_id + "'");
            }
            event.allocated_id = target.device_id;
            // The identity is the lexicographically smallest permutation, so it wins whenever valid.
            event.qubit_mapping =
                find_isomorphic_embeddings(target, requested.coupling_map, requested.n_qubits).front();
            break;
        }
        case SchedulerPolicy::Mode::RerouteSubgraph: {
            const DeviceFingerprint &host = registry.at(policy.target_id);
            const auto embeddings = find_isomorphic_embeddings(host, requested.coupling_map, requested.n_qubits);
            if (embeddings.empty()) {
                throw ValidationError("policy: no embedding of '" + requested_id + "' into host '" + host.device_id +
                                      "'");
            }
            Rng rng(derive_seed({kAllocStreamTag, rng_seed}));
            event.allocated_id = host.device_id;
            event.qubit_mapping = embeddings[rng.below(embeddings.size())];
            event.crosstalk_applied = true;
            event.crosstalk_factor = policy.crosstalk_factor;
            break;
        }
    }
    return event;
}

QubitParams inflate_crosstalk(const QubitParams &q, double factor) {
    QubitParams out = q;
    out.read_flip_0to1 = std::clamp(q.read_flip_0to1 * factor, 0.0, 1.0);
    out.read_flip_1to0 = std::clamp(q.read_flip_1to0 * factor, 0.0, 1.0);
    out.rotation_bias = std::clamp(q.rotation_bias * factor, -kMaxBiasDeg, kMaxBiasDeg);
    return out;
}

ResponseTrace execute_on_allocation(const AllocationEvent &event, const QuPUFChallenge &challenge,
                                    const DeviceRegistry &registry, std::uint64_t rng_seed) {
    const DeviceFingerprint &requested = registry.at(event.requested_id);
    const DeviceFingerprint &allocated = registry.at(event.allocated_id);
    if (static_cast<int>(event.qubit_mapping.size()) != requested.n_qubits) {
        throw ValidationError("allocation: mapping size does not match the requested device");
    }
    std::vector<char> seen(allocated.n_qubits, 0);
    for (int h : event.qubit_mapping) {
        if (h < 0 || h >= allocated.n_qubits || seen[h]) {
            throw ValidationError("allocation: mapping is not injective into '" + allocated.device_id + "'");
        }
        seen[h] = 1;
    }

    const bool identity = event.qubit_mapping == identity_mapping(allocated.n_qubits);
    if (identity && !event.crosstalk_applied) {
        ResponseTrace trace = execute_challenge(allocated, challenge, rng_seed);
        trace.device_id = event.requested_id;
        trace.allocated_id = allocated.device_id;
        return trace;
    }

    // The physical segment the job landed on, relabelled in the requested device's qubit order.
    DeviceFingerprint segment;
    segment.device_id = allocated.device_id;
    segment.n_qubits = requested.n_qubits;
    segment.coupling_map = requested.coupling_map;
    segment.idle_gate_duration = allocated.idle_gate_duration;
    segment.base_seed = allocated.base_seed;
    for (int h : event.qubit_mapping) {
        const QubitParams &q = allocated.qubits[h];
        segment.qubits.push_back(event.crosstalk_applied ? inflate_crosstalk(q, event.crosstalk_factor) : q);
    }
    ResponseTrace trace = execute_challenge(segment, challenge, rng_seed);
    trace.device_id = event.requested_id;
    trace.allocated_id = allocated.device_id;
    return trace;
}

std::string DetectionReport::summary() const {
    return "honest_accept=" + format_rate(honest_accept_rate) + ", attack_detect=" + format_rate(attack_detect_rate) +
           ", false_reject=" + format_rate(false_reject_rate);
}

void to_json(nlohmann::json &j, const DetectionReport &r) {
    auto opt = [](const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json decisions = nlohmann::json::array();
    for (std::size_t t = 0; t < r.decisions.size(); ++t) {
        nlohmann::json d = r.decisions[t];
        d["trial"] = t;
        d["allocated"] = r.allocations[t].allocated_id;
        decisions.push_back(std::move(d));
    }
    j = nlohmann::json{{"requested", r.requested_id},
                       {"policy", r.policy},
                       {"trials", r.trials},
                       {"honest_accept_rate", opt(r.honest_accept_rate)},
                       {"attack_detect_rate", opt(r.attack_detect_rate)},
                       {"false_reject_rate", opt(r.false_reject_rate)},
                       {"summary", r.summary()},
                       {"decisions", std::move(decisions)}};
}

DetectionReport run_detection_experiment(const DeviceRegistry &registry, const CRPDatabase &db,
                                         const std::string &requested_id, const SchedulerPolicy &policy,
                                         const ChallengeKey &key, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError("detection: trials must be >= 1");
    }
    const auto record = db.find(requested_id, key);
    if (!record) {
        throw NotFoundError("no CRP record for device '" + requested_id + "' and challenge " + to_string(key));
    }

    DetectionReport report;
    report.requested_id = requested_id;
    report.policy = policy.to_string();
    report.trials = trials;
    report.decisions.resize(trials);
    report.allocations.resize(trials);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = derive_seed({kTrialStreamTag, seed, static_cast<std::uint64_t>(t)});
        AllocationEvent event = allocate(registry, requested_id, policy, trial_seed);
        const ResponseTrace trace = execute_on_allocation(event, record->challenge, registry, trial_seed);
        const Signature response = digitize(trace.sessions.back().prob_one, key.precision);
        report.decisions[t] = db.verify(requested_id, response, key);
        report.allocations[t] = std::move(event);
    }

    const auto rejected = std::count_if(report.decisions.begin(), report.decisions.end(),
                                        [](const AuthDecision &d) { return d.outcome != AuthOutcome::Accepted; });
    const double reject_rate = static_cast<double>(rejected) / trials;
    if (policy.is_attack()) {
        report.attack_detect_rate = reject_rate;
    } else {
        report.honest_accept_rate = static_cast<double>(trials - rejected) / trials;
        report.false_reject_rate = reject_rate;
    }
    return report;
}

}  // namespace qupuf

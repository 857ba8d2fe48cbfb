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

#include "qupuf/auth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>

#include "qupuf/error.hpp"

namespace qupuf {

ChallengeKey make_challenge_key(const QuPUFChallenge &challenge, int precision) {
    return {challenge.variant, static_cast<int>(std::lround(challenge.theta * 10.0)), challenge.idle_count, precision};
}

std::string to_string(const ChallengeKey &key) {
    const int whole = key.theta_decidegrees / 10;
    const int tenth = std::abs(key.theta_decidegrees % 10);
    const std::string sign = (key.theta_decidegrees < 0 && whole == 0) ? "-" : "";
    return to_string(key.variant) + "/theta=" + sign + std::to_string(whole) + "." + std::to_string(tenth) +
           "/idles=" + std::to_string(key.idle_count) + "/bits=" + std::to_string(key.precision);
}

std::string to_string(AuthOutcome outcome) {
    switch (outcome) {
        case AuthOutcome::Accepted:
            return "accepted";
        case AuthOutcome::Rejected:
            return "rejected";
        case AuthOutcome::Unknown:
            return "unknown";
    }
    return "unknown";
}

void to_json(nlohmann::json &j, const AuthDecision &d) {
    j = nlohmann::json{{"outcome", to_string(d.outcome)},
                       {"best_match", d.best_match_id ? nlohmann::json(*d.best_match_id) : nlohmann::json(nullptr)},
                       {"hd_pct", d.hd_to_best},
                       {"threshold_pct", d.threshold}};
}

double choose_threshold(const HDStats &intra, const HDStats &inter) {
    if (intra.mean >= inter.mean) {
        throw ValidationError("choose_threshold: statistics are not separable (intra-HD " + std::to_string(intra.mean) +
                              "% >= inter-HD " + std::to_string(inter.mean) + "%)");
    }
    return std::clamp(0.5 * (intra.mean + inter.mean), 0.0, 100.0);
}

CRPDatabase::CRPDatabase(const CRPDatabase &other) {
    std::shared_lock lock(other.mutex_);
    records_ = other.records_;
}

CRPDatabase &CRPDatabase::operator=(const CRPDatabase &other) {
    if (this != &other) {
        std::map<Slot, CRPRecord> copy;
        {
            std::shared_lock lock(other.mutex_);
            copy = other.records_;
        }
        std::unique_lock lock(mutex_);
        records_ = std::move(copy);
    }
    return *this;
}

const CRPRecord &CRPDatabase::register_device(const DeviceFingerprint &device, const QuPUFChallenge &challenge,
                                              int precision, std::uint64_t seed, bool overwrite) {
    const ChallengeKey key = make_challenge_key(challenge, precision);
    {
        std::shared_lock lock(mutex_);
        if (!overwrite && records_.contains({key, device.device_id})) {
            throw ValidationError("duplicate CRP record for device '" + device.device_id + "' and challenge " +
                                  to_string(key) + " (pass overwrite to replace it)");
        }
    }
    const ResponseTrace trace = execute_challenge(device, challenge, seed);

    CRPRecord rec;
    rec.device_id = device.device_id;
    rec.challenge = challenge;
    rec.precision = precision;
    rec.reference = mean_signature(trace, precision);
    rec.enrollment_sessions = session_signatures(trace, precision);
    if (rec.enrollment_sessions.size() >= 2) {
        rec.intra_stats = intra_hd(rec.enrollment_sessions);
    }

    std::unique_lock lock(mutex_);
    if (!overwrite && records_.contains({key, device.device_id})) {
        throw ValidationError("duplicate CRP record for device '" + device.device_id + "' and challenge " +
                              to_string(key));
    }
    records_.insert_or_assign({key, device.device_id}, std::move(rec));
    recalibrate_locked(key);
    return records_.at({key, device.device_id});
}

void CRPDatabase::insert(CRPRecord record, bool overwrite) {
    if (record.enrollment_sessions.empty()) {
        throw ValidationError("CRP record for '" + record.device_id + "' has no enrollment sessions");
    }
    for (const auto &s : record.enrollment_sessions) {
        if (s.precision() != record.precision || s.n_qubits() != record.reference.n_qubits() ||
            record.reference.precision() != record.precision) {
            throw ValidationError("CRP record for '" + record.device_id + "' mixes signature shapes");
        }
    }
    Slot slot{record.key(), record.device_id};
    std::unique_lock lock(mutex_);
    if (!overwrite && records_.contains(slot)) {
        throw ValidationError("duplicate CRP record for device '" + record.device_id + "' and challenge " +
                              to_string(slot.first));
    }
    records_.insert_or_assign(std::move(slot), std::move(record));
}

void CRPDatabase::recalibrate(const ChallengeKey &key) {
    std::unique_lock lock(mutex_);
    recalibrate_locked(key);
}

void CRPDatabase::recalibrate_locked(const ChallengeKey &key) {
    std::vector<CRPRecord *> group;
    for (auto &[slot, rec] : records_) {
        if (slot.first == key) {
            group.push_back(&rec);
        }
    }
    for (CRPRecord *rec : group) {
        HDStats inter;
        inter.mean = 50.0;
        bool have_inter = false;
        for (const CRPRecord *other : group) {
            if (other == rec) {
                continue;
            }
            HDStats s = inter_hd(rec->enrollment_sessions, other->enrollment_sessions);
            if (!have_inter || s.mean < inter.mean) {
                inter = std::move(s);
                have_inter = true;
            }
        }
        if (rec->intra_stats.mean < inter.mean) {
            rec->threshold = choose_threshold(rec->intra_stats, inter);
        } else {
            rec->threshold = rec->intra_stats.mean;
        }
    }
}

AuthDecision CRPDatabase::identify(const Signature &response, const ChallengeKey &key) const {
    std::shared_lock lock(mutex_);
    const CRPRecord *best = nullptr;
    double best_hd = std::numeric_limits<double>::infinity();
    // Map order is (key, device_id), so the first minimum is the lexicographically smallest id.
    for (auto it = records_.lower_bound({key, std::string{}}); it != records_.end() && it->first.first == key; ++it) {
        const double hd = hamming_distance_pct(response, it->second.reference);
        if (hd < best_hd) {
            best_hd = hd;
            best = &it->second;
        }
    }
    if (best == nullptr) {
        throw NotFoundError("no CRP records for challenge " + to_string(key));
    }
    AuthDecision d;
    d.best_match_id = best->device_id;
    d.hd_to_best = best_hd;
    d.threshold = best->threshold;
    d.outcome = best_hd <= best->threshold ? AuthOutcome::Accepted : AuthOutcome::Unknown;
    return d;
}

AuthDecision CRPDatabase::verify(const std::string &claimed_id, const Signature &response,
                                 const ChallengeKey &key) const {
    std::shared_lock lock(mutex_);
    auto it = records_.find({key, claimed_id});
    if (it == records_.end()) {
        throw NotFoundError("no CRP record for device '" + claimed_id + "' and challenge " + to_string(key));
    }
    AuthDecision d;
    d.best_match_id = claimed_id;
    d.hd_to_best = hamming_distance_pct(response, it->second.reference);
    d.threshold = it->second.threshold;
    d.outcome = d.hd_to_best <= d.threshold ? AuthOutcome::Accepted : AuthOutcome::Rejected;
    return d;
}

std::optional<CRPRecord> CRPDatabase::find(const std::string &device_id, const ChallengeKey &key) const {
    std::shared_lock lock(mutex_);
    auto it = records_.find({key, device_id});
    if (it == records_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<CRPRecord> CRPDatabase::records() const {
    std::shared_lock lock(mutex_);
    std::vector<CRPRecord> out;
    out.reserve(records_.size());
    for (const auto &[_, rec] : records_) {
        out.push_back(rec);
    }
    return out;
}

std::size_t CRPDatabase::size() const {
    std::shared_lock lock(mutex_);
    return records_.size();
}

nlohmann::json CRPDatabase::to_json() const {
    std::shared_lock lock(mutex_);
    nlohmann::json records = nlohmann::json::array();
    for (const auto &[_, rec] : records_) {
        nlohmann::json sessions = nlohmann::json::array();
        for (const auto &s : rec.enrollment_sessions) {
            sessions.push_back(s.to_hex());
        }
        records.push_back({{"device", rec.device_id},
                           {"challenge", rec.challenge},
                           {"precision", rec.precision},
                           {"reference", rec.reference.to_hex()},
                           {"sessions", std::move(sessions)},
                           {"intra_mean", rec.intra_stats.mean},
                           {"threshold", rec.threshold}});
    }
    return nlohmann::json{{"records", std::move(records)}};
}

CRPDatabase CRPDatabase::from_json(const nlohmann::json &j) {
    CRPDatabase db;
    try {
        for (const auto &r : j.at("records")) {
            CRPRecord rec;
            r.at("device").get_to(rec.device_id);
            r.at("challenge").get_to(rec.challenge);
            r.at("precision").get_to(rec.precision);
            rec.reference = Signature::from_hex(r.at("reference").get<std::string>());
            for (const auto &s : r.at("sessions")) {
                rec.enrollment_sessions.push_back(Signature::from_hex(s.get<std::string>()));
            }
            // The full distribution is recomputed from the stored sessions.
            if (rec.enrollment_sessions.size() >= 2) {
                rec.intra_stats = intra_hd(rec.enrollment_sessions);
            }
            r.at("threshold").get_to(rec.threshold);
            db.insert(std::move(rec));
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("CRP database: ") + e.what());
    }
    return db;
}

void CRPDatabase::save(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << to_json().dump(2) << '\n';
}

CRPDatabase CRPDatabase::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open CRP database '" + path.string() + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("CRP database '" + path.string() + "': " + e.what());
    }
    return from_json(j);
}

}  // namespace qupuf

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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qupuf/circuits.hpp"
#include "qupuf/metrics.hpp"
#include "qupuf/signature.hpp"

namespace qupuf {

/// Lookup key for a challenge. Theta is held in tenths of a degree.
struct ChallengeKey {
    Variant variant = Variant::Hadamard;
    int theta_decidegrees = 0;
    int idle_count = 0;
    int precision = 0;

    auto operator<=>(const ChallengeKey &) const = default;
    bool operator==(const ChallengeKey &) const = default;
};

ChallengeKey make_challenge_key(const QuPUFChallenge &challenge, int precision);
std::string to_string(const ChallengeKey &key);

/// One registered challenge-response pair.
struct CRPRecord {
    std::string device_id;
    QuPUFChallenge challenge;
    int precision = 0;
    Signature reference;  ///< digitized per-qubit mean over enrollment sessions
    std::vector<Signature> enrollment_sessions;
    HDStats intra_stats;
    double threshold = 0.0;  ///< percent

    ChallengeKey key() const { return make_challenge_key(challenge, precision); }
};

enum class AuthOutcome { Accepted, Rejected, Unknown };
std::string to_string(AuthOutcome outcome);

struct AuthDecision {
    AuthOutcome outcome = AuthOutcome::Unknown;
    std::optional<std::string> best_match_id;
    double hd_to_best = 100.0;
    double threshold = 0.0;

    bool operator==(const AuthDecision &) const = default;
};

void to_json(nlohmann::json &j, const AuthDecision &d);

/// Midpoint between the intra- and inter-HD means, clamped to [0, 100].
/// Throws ValidationError when intra.mean >= inter.mean.
double choose_threshold(const HDStats &intra, const HDStats &inter);

/// Registered CRPs. Readers may run concurrently; writers take an exclusive lock.
class CRPDatabase {
   public:
    CRPDatabase() = default;
    CRPDatabase(const CRPDatabase &other);
    CRPDatabase &operator=(const CRPDatabase &other);

    /// Runs an enrollment of `challenge` on `device` and stores the result.
    ///
    /// Thresholds of every record under the same key are recalibrated afterwards: each
    /// record's threshold is choose_threshold(own intra-HD, lowest inter-HD against the other
    /// registered devices). With no other device the inter-HD is taken as the ideal 50%. When a
    /// pair is not separable the record falls back to its own intra-HD mean.
    ///
    /// Throws ValidationError when the key is already registered and `overwrite` is false.
    const CRPRecord &register_device(const DeviceFingerprint &device, const QuPUFChallenge &challenge, int precision,
                                     std::uint64_t seed, bool overwrite = false);

    /// Inserts a prebuilt record as-is (its stored threshold is kept).
    void insert(CRPRecord record, bool overwrite = false);

    /// Re-derives thresholds for every record under `key`.
    void recalibrate(const ChallengeKey &key);

    /// Nearest reference by Hamming distance; Accepted when within that record's threshold,
    /// otherwise Unknown. Ties go to the lexicographically smallest device id.
    /// Throws NotFoundError when no record uses `key`.
    AuthDecision identify(const Signature &response, const ChallengeKey &key) const;

    /// Accepted iff HD(response, reference of `claimed_id`) <= its threshold, otherwise Rejected.
    /// Throws NotFoundError for an unregistered (claimed_id, key).
    AuthDecision verify(const std::string &claimed_id, const Signature &response, const ChallengeKey &key) const;

    std::optional<CRPRecord> find(const std::string &device_id, const ChallengeKey &key) const;
    std::vector<CRPRecord> records() const;
    std::size_t size() const;

    nlohmann::json to_json() const;
    static CRPDatabase from_json(const nlohmann::json &j);
    void save(const std::filesystem::path &path) const;
    static CRPDatabase load(const std::filesystem::path &path);

   private:
    using Slot = std::pair<ChallengeKey, std::string>;

    void recalibrate_locked(const ChallengeKey &key);

    mutable std::shared_mutex mutex_;
    std::map<Slot, CRPRecord> records_;
};

}  // namespace qupuf

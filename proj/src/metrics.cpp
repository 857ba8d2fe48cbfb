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

#include "qupuf/metrics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "qupuf/error.hpp"
#include "qupuf/rng.hpp"

namespace qupuf {

namespace {

constexpr std::uint64_t kSweepStreamTag = 0x7377656570763031ULL;

std::string format_number(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

}  // namespace

HDStats summarize_distances(std::vector<double> distribution) {
    HDStats stats;
    stats.count = distribution.size();
    if (!distribution.empty()) {
        double sum = 0.0;
        for (double d : distribution) {
            sum += d;
        }
        stats.mean = sum / static_cast<double>(distribution.size());
        double ss = 0.0;
        for (double d : distribution) {
            ss += (d - stats.mean) * (d - stats.mean);
        }
        stats.sigma = std::sqrt(ss / static_cast<double>(distribution.size()));
    }
    stats.distribution = std::move(distribution);
    return stats;
}

HDStats intra_hd(std::span<const Signature> signatures) {
    if (signatures.size() < 2) {
        throw ValidationError("intra_hd: need at least 2 sessions, got " + std::to_string(signatures.size()));
    }
    std::vector<double> d;
    d.reserve(signatures.size() * (signatures.size() - 1) / 2);
    for (std::size_t i = 0; i < signatures.size(); ++i) {
        for (std::size_t j = i + 1; j < signatures.size(); ++j) {
            d.push_back(hamming_distance_pct(signatures[i], signatures[j]));
        }
    }
    return summarize_distances(std::move(d));
}

HDStats inter_hd(std::span<const Signature> a, std::span<const Signature> b) {
    if (a.empty() || b.empty()) {
        throw ValidationError("inter_hd: both signature sets must be non-empty");
    }
    std::vector<double> d;
    d.reserve(a.size() * b.size());
    for (const auto &x : a) {
        for (const auto &y : b) {
            d.push_back(hamming_distance_pct(x, y));
        }
    }
    return summarize_distances(std::move(d));
}

HDStats intra_hd(const ResponseTrace &trace, int precision, BinEncoding encoding) {
    if (trace.sessions.size() < 2) {
        throw ValidationError("intra_hd: need at least 2 sessions, got " + std::to_string(trace.sessions.size()));
    }
    const auto sigs = session_signatures(trace, precision, encoding);
    return intra_hd(sigs);
}

HDStats inter_hd(const ResponseTrace &trace_a, const ResponseTrace &trace_b, int precision, BinEncoding encoding) {
    if (trace_a.sessions.empty() || trace_b.sessions.empty()) {
        throw ValidationError("inter_hd: traces must be non-empty");
    }
    if (trace_a.n_qubits() != trace_b.n_qubits()) {
        throw ValidationError("inter_hd: traces measure " + std::to_string(trace_a.n_qubits()) + " and " +
                              std::to_string(trace_b.n_qubits()) + " qubits");
    }
    const auto a = session_signatures(trace_a, precision, encoding);
    const auto b = session_signatures(trace_b, precision, encoding);
    return inter_hd(a, b);
}

double combined_deviation(double inter_mean, double intra_mean) {
    return std::abs(inter_mean - 50.0) + std::abs(intra_mean - 0.0);
}

std::string SweepResult::to_csv() const {
    std::ostringstream os;
    os << "theta_deg,precision_bits,idle_count";
    for (const auto &id : device_ids) {
        os << ",intra_" << id;
    }
    for (auto [i, j] : pairs) {
        os << ",inter_" << device_ids[i] << "__" << device_ids[j];
    }
    os << ",combined_pct\n";
    for (const auto &row : rows) {
        os << format_number(row.theta) << ',' << row.precision << ',' << row.idle_count;
        for (const auto &s : row.intra) {
            os << ',' << format_number(s.mean);
        }
        for (const auto &s : row.inter) {
            os << ',' << format_number(s.mean);
        }
        os << ',' << format_number(row.combined) << '\n';
    }
    return os.str();
}

SweepResult tabulate_sweep(const std::vector<std::string> &device_ids, const std::vector<SweepCell> &cells,
                           const std::vector<int> &precisions, int designated_device,
                           std::pair<int, int> designated_pair, BinEncoding encoding) {
    const int n = static_cast<int>(device_ids.size());
    if (n < 2) {
        throw ValidationError("sweep: need at least two devices for an inter-HD");
    }
    if (precisions.empty() || cells.empty()) {
        throw ValidationError("sweep: value lists must be non-empty");
    }
    if (designated_device < 0 || designated_device >= n) {
        throw ValidationError("sweep: designated device index out of range");
    }
    auto [pa, pb] = designated_pair;
    if (pa < 0 || pb >= n || pa >= pb) {
        throw ValidationError("sweep: designated pair must satisfy 0 <= first < second < device count");
    }

    SweepResult result;
    result.device_ids = device_ids;
    result.designated_device = designated_device;
    result.designated_pair = designated_pair;
    int designated_pair_index = -1;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (i == pa && j == pb) {
                designated_pair_index = static_cast<int>(result.pairs.size());
            }
            result.pairs.emplace_back(i, j);
        }
    }

    for (const auto &cell : cells) {
        if (static_cast<int>(cell.traces.size()) != n) {
            throw ValidationError("sweep: every cell needs one trace per device");
        }
        for (int b : precisions) {
            std::vector<std::vector<Signature>> sigs;
            sigs.reserve(n);
            for (const auto &t : cell.traces) {
                sigs.push_back(session_signatures(t, b, encoding));
            }
            SweepRow row;
            row.theta = cell.theta;
            row.precision = b;
            row.idle_count = cell.idle_count;
            for (const auto &s : sigs) {
                row.intra.push_back(intra_hd(s));
            }
            for (auto [i, j] : result.pairs) {
                row.inter.push_back(inter_hd(sigs[i], sigs[j]));
            }
            row.combined = combined_deviation(row.inter[designated_pair_index].mean, row.intra[designated_device].mean);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

SweepResult sweep(const std::vector<DeviceFingerprint> &devices, const SweepConfig &config) {
    if (config.theta_values.empty() || config.precisions.empty() || config.idle_values.empty()) {
        throw ValidationError("sweep: value lists must be non-empty");
    }
    if (config.variant == Variant::Hadamard && (config.idle_values.size() != 1 || config.idle_values[0] != 0)) {
        throw ValidationError("sweep: the Hadamard variant takes idle_values == [0]");
    }
    std::vector<std::string> ids;
    for (const auto &d : devices) {
        ids.push_back(d.device_id);
    }

    std::vector<SweepCell> cells;
    for (std::size_t ti = 0; ti < config.theta_values.size(); ++ti) {
        for (std::size_t ii = 0; ii < config.idle_values.size(); ++ii) {
            SweepCell cell;
            cell.theta = config.theta_values[ti];
            cell.idle_count = config.idle_values[ii];
            QuPUFChallenge challenge;
            challenge.variant = config.variant;
            challenge.theta = cell.theta;
            challenge.idle_count = cell.idle_count;
            challenge.shots = config.shots;
            challenge.n_experiments = config.n_experiments;
            for (std::size_t d = 0; d < devices.size(); ++d) {
                const std::uint64_t seed = derive_seed({kSweepStreamTag, config.seed, ti, ii, d});
                cell.traces.push_back(execute_challenge(devices[d], challenge, seed));
            }
            cells.push_back(std::move(cell));
        }
    }
    return tabulate_sweep(ids, cells, config.precisions, config.designated_device, config.designated_pair,
                          config.encoding);
}

OperatingPoint select_optimum(const SweepResult &result) {
    if (result.rows.empty()) {
        throw ValidationError("select_optimum: empty sweep result");
    }
    auto key = [](const SweepRow &r) { return std::make_tuple(r.combined, r.precision, std::abs(r.theta), r.idle_count); };
    const SweepRow *best = &result.rows.front();
    for (const auto &row : result.rows) {
        if (key(row) < key(*best)) {
            best = &row;
        }
    }
    return {best->theta, best->precision, best->idle_count, best->combined};
}

}  // namespace qupuf

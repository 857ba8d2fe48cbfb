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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qupuf/circuits.hpp"
#include "qupuf/signature.hpp"

namespace qupuf {

/// Summary of a set of pairwise Hamming distances, all in percent.
struct HDStats {
    double mean = 0.0;
    double sigma = 0.0;  ///< population standard deviation
    std::size_t count = 0;
    std::vector<double> distribution;
};

/// Builds mean/sigma/count from a list of pairwise distances.
HDStats summarize_distances(std::vector<double> distribution);

/// Distances over all unordered pairs of `signatures`. Needs at least two.
HDStats intra_hd(std::span<const Signature> signatures);
/// Distances over all |a| x |b| cross pairs.
HDStats inter_hd(std::span<const Signature> a, std::span<const Signature> b);

/// Digitizes every session, then all C(n, 2) session pairs. Throws ValidationError below two sessions.
HDStats intra_hd(const ResponseTrace &trace, int precision, BinEncoding encoding = BinEncoding::Binary);
/// Digitizes every session of both traces, then all cross pairs. Throws ValidationError on shape mismatch.
HDStats inter_hd(const ResponseTrace &trace_a, const ResponseTrace &trace_b, int precision,
                 BinEncoding encoding = BinEncoding::Binary);

/// |inter - 50| + |intra - 0|, lower is better.
double combined_deviation(double inter_mean, double intra_mean);

struct SweepConfig {
    Variant variant = Variant::Hadamard;
    std::vector<double> theta_values;
    std::vector<int> precisions;
    std::vector<int> idle_values{0};
    int shots = 8192;
    int n_experiments = 75;
    std::uint64_t seed = 0;
    /// The combined metric uses this device's intra-HD ...
    int designated_device = 0;
    /// ... and this pair's inter-HD (indices into the device list, first < second).
    std::pair<int, int> designated_pair{0, 1};
    BinEncoding encoding = BinEncoding::Binary;
};

struct SweepRow {
    double theta = 0.0;
    int precision = 0;
    int idle_count = 0;
    std::vector<HDStats> intra;  ///< one per device
    std::vector<HDStats> inter;  ///< one per device pair, in SweepResult::pairs order
    double combined = 0.0;
};

struct SweepResult {
    std::vector<std::string> device_ids;
    std::vector<std::pair<int, int>> pairs;  ///< all i < j
    int designated_device = 0;
    std::pair<int, int> designated_pair{0, 1};
    std::vector<SweepRow> rows;

    /// Header: theta_deg,precision_bits,idle_count,intra_<id>...,inter_<a>__<b>...,combined_pct
    std::string to_csv() const;
};

/// Traces of every device for one (theta, idle_count) point.
struct SweepCell {
    double theta = 0.0;
    int idle_count = 0;
    std::vector<ResponseTrace> traces;  ///< one per device, same order as device_ids
};

/// Tabulates HD statistics for precomputed traces. Rows are ordered by cell, then precision.
SweepResult tabulate_sweep(const std::vector<std::string> &device_ids, const std::vector<SweepCell> &cells,
                           const std::vector<int> &precisions, int designated_device,
                           std::pair<int, int> designated_pair, BinEncoding encoding = BinEncoding::Binary);

/// Executes each (device, theta, idle) challenge once and digitizes it at every precision.
///
/// Needs at least two devices. Row order: theta, then idle count, then precision.
SweepResult sweep(const std::vector<DeviceFingerprint> &devices, const SweepConfig &config);

struct OperatingPoint {
    double theta = 0.0;
    int precision = 0;
    int idle_count = 0;
    double combined = 0.0;

    bool operator==(const OperatingPoint &) const = default;
};

/// Row with the lowest combined value; ties go to lower precision, then lower |theta|,
/// then fewer idle gates. Throws ValidationError on an empty result.
OperatingPoint select_optimum(const SweepResult &result);

}  // namespace qupuf

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
#include <vector>

namespace qupuf {

struct ResponseTrace;

/// Code used for each qubit's bin index.
enum class BinEncoding {
    Binary,  ///< plain binary, MSB first (default)
    Gray,    ///< reflected Gray code, MSB first
};

inline constexpr int kMinPrecision = 1;
inline constexpr int kMaxPrecision = 16;

/// Fixed-precision digital response: `precision` bits per qubit, qubits concatenated
/// in ascending order, each code most-significant bit first.
class Signature {
   public:
    Signature() = default;
    /// All-zero signature. Throws ValidationError on a bad shape.
    Signature(int precision, int n_qubits);

    /// Parses a '0'/'1' string. Throws ParseError when the length is not precision * n_qubits.
    static Signature from_bits(const std::string &bits, int precision, int n_qubits);
    /// Parses the "{precision}x{n_qubits}:0x..." form produced by to_hex().
    static Signature from_hex(const std::string &text);

    int precision() const { return precision_; }
    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return static_cast<std::size_t>(precision_) * n_qubits_; }

    bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set_bit(std::size_t i, bool value);

    /// Bin code of one qubit, as an unsigned integer.
    std::uint32_t code(int qubit) const;

    /// Number of positions where the two signatures differ. Shapes must match.
    std::size_t hamming_weight_of_difference(const Signature &other) const;

    Signature complement() const;

    std::string to_bits() const;
    /// "{precision}x{n_qubits}:0x" followed by ceil(bits/4) lowercase hex digits; the bit
    /// string, zero-padded on the left to a multiple of four, read as a big-endian number.
    std::string to_hex() const;

    bool operator==(const Signature &) const = default;

   private:
    int precision_ = 0;
    int n_qubits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Quantizes each probability to bin = min(floor(p * 2^b), 2^b - 1) and concatenates the codes.
/// Throws ValidationError for p outside [0, 1] or b outside [1, 16].
Signature digitize(std::span<const double> prob_one, int precision, BinEncoding encoding = BinEncoding::Binary);

/// Bin index alone, without encoding.
std::uint32_t probability_bin(double p, int precision);

/// 100 * differing bits / total bits. Throws ValidationError on shape mismatch.
double hamming_distance_pct(const Signature &a, const Signature &b);

/// Per-qubit mean of prob_one over all sessions, digitized. Throws ValidationError on an empty trace.
Signature mean_signature(const ResponseTrace &trace, int precision, BinEncoding encoding = BinEncoding::Binary);

/// Each session digitized on its own, in session order.
std::vector<Signature> session_signatures(const ResponseTrace &trace, int precision,
                                          BinEncoding encoding = BinEncoding::Binary);

}  // namespace qupuf

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

#include "qupuf/signature.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "qupuf/circuits.hpp"
#include "qupuf/error.hpp"

namespace qupuf {

namespace {

void check_precision(int precision) {
    if (precision < kMinPrecision || precision > kMaxPrecision) {
        throw ValidationError("signature: precision " + std::to_string(precision) + " outside [" +
                              std::to_string(kMinPrecision) + ", " + std::to_string(kMaxPrecision) + "]");
    }
}

void check_same_shape(const Signature &a, const Signature &b) {
    if (a.precision() != b.precision() || a.n_qubits() != b.n_qubits()) {
        std::ostringstream os;
        os << "signature shape mismatch: " << a.precision() << "x" << a.n_qubits() << " vs " << b.precision() << "x"
           << b.n_qubits();
        throw ValidationError(os.str());
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Signature::Signature(int precision, int n_qubits) : precision_(precision), n_qubits_(n_qubits) {
    check_precision(precision);
    if (n_qubits <= 0) {
        throw ValidationError("signature: n_qubits must be positive");
    }
    words_.assign((size() + 63) / 64, 0);
}

void Signature::set_bit(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

std::uint32_t Signature::code(int qubit) const {
    std::uint32_t v = 0;
    const std::size_t base = static_cast<std::size_t>(qubit) * precision_;
    for (int k = 0; k < precision_; ++k) {
        v = (v << 1) | (bit(base + k) ? 1U : 0U);
    }
    return v;
}

std::size_t Signature::hamming_weight_of_difference(const Signature &other) const {
    check_same_shape(*this, other);
    std::size_t n = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        n += static_cast<std::size_t>(std::popcount(words_[w] ^ other.words_[w]));
    }
    return n;
}

Signature Signature::complement() const {
    Signature out = *this;
    for (std::size_t i = 0; i < size(); ++i) {
        out.set_bit(i, !bit(i));
    }
    return out;
}

std::string Signature::to_bits() const {
    std::string s(size(), '0');
    for (std::size_t i = 0; i < size(); ++i) {
        if (bit(i)) {
            s[i] = '1';
        }
    }
    return s;
}

std::string Signature::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t n_digits = (size() + 3) / 4;
    const std::size_t pad = n_digits * 4 - size();
    std::vector<int> nibbles(n_digits, 0);
    for (std::size_t i = 0; i < size(); ++i) {
        if (bit(i)) {
            const std::size_t padded = i + pad;
            nibbles[padded / 4] |= 8 >> (padded % 4);
        }
    }
    std::string out = std::to_string(precision_) + "x" + std::to_string(n_qubits_) + ":0x";
    for (int v : nibbles) {
        out += kDigits[v];
    }
    return out;
}

Signature Signature::from_bits(const std::string &bits, int precision, int n_qubits) {
    Signature sig(precision, n_qubits);
    if (bits.size() != sig.size()) {
        throw ParseError("signature: expected " + std::to_string(sig.size()) + " bits, got " +
                         std::to_string(bits.size()));
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') {
            throw ParseError("signature: bit string may contain only '0' and '1'");
        }
        sig.set_bit(i, bits[i] == '1');
    }
    return sig;
}

Signature Signature::from_hex(const std::string &text) {
    int precision = 0;
    int n_qubits = 0;
    char x = 0;
    char colon = 0;
    std::istringstream is(text);
    if (!(is >> precision >> x >> n_qubits >> colon) || x != 'x' || colon != ':') {
        throw ParseError("signature: malformed header in '" + text + "'");
    }
    std::string rest;
    is >> rest;
    if (rest.size() < 2 || rest[0] != '0' || (rest[1] != 'x' && rest[1] != 'X')) {
        throw ParseError("signature: missing 0x prefix in '" + text + "'");
    }
    const std::string hex = rest.substr(2);
    Signature sig(precision, n_qubits);
    const std::size_t n_digits = (sig.size() + 3) / 4;
    if (hex.size() != n_digits) {
        throw ParseError("signature: expected " + std::to_string(n_digits) + " hex digits in '" + text + "'");
    }
    const std::size_t pad = n_digits * 4 - sig.size();
    for (std::size_t d = 0; d < n_digits; ++d) {
        const int v = hex_value(hex[d]);
        if (v < 0) {
            throw ParseError("signature: invalid hex digit in '" + text + "'");
        }
        for (int k = 0; k < 4; ++k) {
            const std::size_t padded = d * 4 + k;
            const bool on = (v >> (3 - k)) & 1;
            if (padded < pad) {
                if (on) {
                    throw ParseError("signature: padding bits set in '" + text + "'");
                }
                continue;
            }
            sig.set_bit(padded - pad, on);
        }
    }
    return sig;
}

std::uint32_t probability_bin(double p, int precision) {
    check_precision(precision);
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "signature: probability " << p << " outside [0, 1]";
        throw ValidationError(os.str());
    }
    const std::uint32_t n_bins = 1U << precision;
    // p * 2^b is exact in binary floating point, so floor sees the true product.
    const auto bin = static_cast<std::uint32_t>(std::floor(std::ldexp(p, precision)));
    return bin < n_bins ? bin : n_bins - 1;
}

Signature digitize(std::span<const double> prob_one, int precision, BinEncoding encoding) {
    check_precision(precision);
    if (prob_one.empty()) {
        throw ValidationError("signature: no probabilities to digitize");
    }
    Signature sig(precision, static_cast<int>(prob_one.size()));
    for (std::size_t q = 0; q < prob_one.size(); ++q) {
        std::uint32_t code = probability_bin(prob_one[q], precision);
        if (encoding == BinEncoding::Gray) {
            code ^= code >> 1;
        }
        const std::size_t base = q * precision;
        for (int k = 0; k < precision; ++k) {
            sig.set_bit(base + k, (code >> (precision - 1 - k)) & 1U);
        }
    }
    return sig;
}

double hamming_distance_pct(const Signature &a, const Signature &b) {
    const std::size_t diff = a.hamming_weight_of_difference(b);
    return 100.0 * static_cast<double>(diff) / static_cast<double>(a.size());
}

Signature mean_signature(const ResponseTrace &trace, int precision, BinEncoding encoding) {
    if (trace.sessions.empty()) {
        throw ValidationError("mean_signature: trace has no sessions");
    }
    const std::size_t n = trace.sessions.front().prob_one.size();
    std::vector<double> mean(n, 0.0);
    for (const auto &s : trace.sessions) {
        if (s.prob_one.size() != n) {
            throw ValidationError("mean_signature: sessions differ in qubit count");
        }
        for (std::size_t q = 0; q < n; ++q) {
            mean[q] += s.prob_one[q];
        }
    }
    for (double &m : mean) {
        m /= static_cast<double>(trace.sessions.size());
        // Summation rounding can push a mean of ones a hair above 1.
        m = std::min(m, 1.0);
    }
    return digitize(mean, precision, encoding);
}

std::vector<Signature> session_signatures(const ResponseTrace &trace, int precision, BinEncoding encoding) {
    std::vector<Signature> out;
    out.reserve(trace.sessions.size());
    for (const auto &s : trace.sessions) {
        out.push_back(digitize(s.prob_one, precision, encoding));
    }
    return out;
}

}  // namespace qupuf

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

#include <cmath>

#include "doctest.h"
#include "qupuf/circuits.hpp"
#include "qupuf/error.hpp"
#include "qupuf/rng.hpp"
#include "qupuf/signature.hpp"

using namespace qupuf;

namespace {

// Scans every interval [k / 2^b, (k + 1) / 2^b); p = 1 belongs to the last one.
std::uint32_t scan_bin(double p, int b) {
    const std::uint32_t n = 1U << b;
    for (std::uint32_t k = 0; k < n; ++k) {
        const double lo = static_cast<double>(k) / n;
        const double hi = static_cast<double>(k + 1) / n;
        if (p >= lo && (p < hi || (k == n - 1 && p <= hi))) {
            return k;
        }
    }
    return ~0U;
}

std::string plain_binary(std::uint32_t v, int b) {
    std::string s;
    for (int k = b - 1; k >= 0; --k) s += ((v >> k) & 1U) ? '1' : '0';
    return s;
}

ResponseTrace trace_of(const std::vector<std::vector<double>> &sessions) {
    ResponseTrace t;
    t.device_id = t.allocated_id = "x";
    for (std::size_t i = 0; i < sessions.size(); ++i) {
        SessionRecord r;
        r.session_index = static_cast<int>(i);
        r.prob_one = sessions[i];
        r.one_counts.assign(sessions[i].size(), 0);
        t.sessions.push_back(r);
    }
    return t;
}

}  // namespace

TEST_CASE("digitize edge cases") {
    CHECK(digitize(std::vector<double>{0.0}, 5).to_bits() == "00000");
    CHECK(digitize(std::vector<double>{1.0}, 5).to_bits() == "11111");
    CHECK(scan_bin(0.526168, 5) == 16);
    CHECK(digitize(std::vector<double>{0.526168}, 5).to_bits() == "10000");
    const auto s = digitize(std::vector<double>(5, 0.5), 5);
    CHECK(s.size() == 25);
    CHECK(s.to_bits() == "1000010000100001000010000");
}

TEST_CASE("digitize agrees with the interval-scan oracle") {
    Rng rng(123);
    for (int i = 0; i < 20000; ++i) {
        const int b = 1 + static_cast<int>(rng.below(12));
        double p = rng.uniform();
        if (i % 4 == 0) p = static_cast<double>(rng.below((1U << b) + 1)) / (1U << b);  // exact boundaries
        const auto sig = digitize(std::vector<double>{p}, b);
        REQUIRE(sig.to_bits() == plain_binary(scan_bin(p, b), b));
    }
}

TEST_CASE("digitize is monotone per qubit") {
    Rng rng(7);
    for (int i = 0; i < 5000; ++i) {
        const int b = 1 + static_cast<int>(rng.below(16));
        double p = rng.uniform(), q = rng.uniform();
        if (p > q) std::swap(p, q);
        CHECK(probability_bin(p, b) <= probability_bin(q, b));
    }
}

TEST_CASE("gray encoding differs by one bit between adjacent bins") {
    for (std::uint32_t k = 0; k + 1 < 32; ++k) {
        const auto a = digitize(std::vector<double>{(k + 0.5) / 32.0}, 5, BinEncoding::Gray);
        const auto b = digitize(std::vector<double>{(k + 1.5) / 32.0}, 5, BinEncoding::Gray);
        CHECK(a.hamming_weight_of_difference(b) == 1);
    }
    // Plain binary flips every bit across 01111 -> 10000.
    CHECK(hamming_distance_pct(digitize(std::vector<double>{15.5 / 32}, 5), digitize(std::vector<double>{16.5 / 32}, 5)) ==
          100.0);
}

TEST_CASE("digitize rejects bad inputs") {
    CHECK_THROWS_AS(digitize(std::vector<double>{1.01}, 5), ValidationError);
    CHECK_THROWS_AS(digitize(std::vector<double>{-0.01}, 5), ValidationError);
    CHECK_THROWS_AS(digitize(std::vector<double>{std::nan("")}, 5), ValidationError);
    CHECK_THROWS_AS(digitize(std::vector<double>{0.5}, 0), ValidationError);
    CHECK_THROWS_AS(digitize(std::vector<double>{0.5}, 17), ValidationError);
    CHECK_NOTHROW(digitize(std::vector<double>{0.5}, 16));
}

TEST_CASE("hamming_distance_pct basics") {
    const auto a = Signature::from_bits("10000", 5, 1);
    const auto b = Signature::from_bits("10001", 5, 1);
    CHECK(hamming_distance_pct(a, a) == 0.0);
    CHECK(hamming_distance_pct(a, b) == 20.0);
    const auto s = digitize(std::vector<double>{0.1, 0.3, 0.5, 0.7, 0.9}, 5);
    CHECK(hamming_distance_pct(s, s.complement()) == 100.0);
    CHECK_THROWS_AS(hamming_distance_pct(a, s), ValidationError);
}

TEST_CASE("hamming_distance_pct is a metric") {
    Rng rng(99);
    auto random_sig = [&](int b, int n) {
        std::string bits;
        for (int i = 0; i < b * n; ++i) bits += rng.below(2) ? '1' : '0';
        return Signature::from_bits(bits, b, n);
    };
    for (int i = 0; i < 2000; ++i) {
        const int b = 1 + static_cast<int>(rng.below(16));
        const int n = 1 + static_cast<int>(rng.below(8));
        const auto x = random_sig(b, n), y = random_sig(b, n), z = random_sig(b, n);
        CHECK(hamming_distance_pct(x, y) == hamming_distance_pct(y, x));
        CHECK((hamming_distance_pct(x, y) == 0.0) == (x == y));
        CHECK(hamming_distance_pct(x, z) <= hamming_distance_pct(x, y) + hamming_distance_pct(y, z) + 1e-12);
    }
}

TEST_CASE("hex form round trips") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const int b = 1 + static_cast<int>(rng.below(16));
        const int n = 1 + static_cast<int>(rng.below(10));
        std::vector<double> p(n);
        for (double &v : p) v = rng.uniform();
        const auto s = digitize(p, b);
        CHECK(Signature::from_hex(s.to_hex()) == s);
    }
    CHECK(digitize(std::vector<double>(5, 0.5), 5).to_hex() == "5x5:0x1084210");
    CHECK(Signature::from_bits("1111", 2, 2).to_hex() == "2x2:0xf");
    CHECK_THROWS_AS(Signature::from_hex("5x5:1084210"), ParseError);
    CHECK_THROWS_AS(Signature::from_hex("5x5:0x108421"), ParseError);
    CHECK_THROWS_AS(Signature::from_hex("5x5:0x3084210"), ParseError);  // padding bit set
}

TEST_CASE("mean_signature") {
    const auto one = trace_of({{0.1, 0.9, 0.33}});
    CHECK(mean_signature(one, 5) == digitize(one.sessions[0].prob_one, 5));
    const auto two = trace_of({{0.4, 0.4, 0.4, 0.4, 0.4}, {0.6, 0.6, 0.6, 0.6, 0.6}});
    CHECK(mean_signature(two, 5) == digitize(std::vector<double>(5, 0.5), 5));
    const auto constant = trace_of(std::vector<std::vector<double>>(75, {0.3, 0.71, 0.05}));
    CHECK(mean_signature(constant, 6) == digitize(std::vector<double>{0.3, 0.71, 0.05}, 6));
    const auto ones = trace_of(std::vector<std::vector<double>>(75, {1.0}));
    CHECK(mean_signature(ones, 5).to_bits() == "11111");
    CHECK_THROWS_AS(mean_signature(trace_of({}), 5), ValidationError);
}

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

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace qupuf {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Folds a list of words into one seed. Order matters.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = 0x6A09E667F3BCC909ULL;
    for (std::uint64_t p : parts) {
        h = splitmix64(h ^ splitmix64(p));
    }
    return h;
}

/// xoshiro256** generator with platform-independent distributions.
///
/// The standard library distributions are implementation-defined, so the
/// Gaussian and binomial draws are done here to keep every output
/// bit-reproducible across compilers.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto &w : state_) {
            x = splitmix64(x);
            w = x;
        }
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Box-Muller; one draw per call, the partner value is discarded.
    double gaussian(double mean, double sigma) noexcept {
        if (sigma == 0.0) {
            return mean;
        }
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 <= 0.0) {
            u1 = 0x1.0p-53;
        }
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Number of successes in `trials` Bernoulli(p) draws.
    std::uint64_t binomial(std::uint64_t trials, double p) noexcept {
        if (p <= 0.0) {
            return 0;
        }
        if (p >= 1.0) {
            return trials;
        }
        // Compare 53-bit integers: u < p  <=>  (x >> 11) < p * 2^53.
        const auto threshold = static_cast<std::uint64_t>(std::ceil(std::ldexp(p, 53)));
        std::uint64_t ones = 0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            ones += ((*this)() >> 11) < threshold ? 1 : 0;
        }
        return ones;
    }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t below(std::uint64_t n) noexcept {
        // Reject the low 2^64 mod n values so every residue is equally likely.
        const std::uint64_t floor = (-n) % n;
        while (true) {
            const std::uint64_t x = (*this)();
            if (x >= floor) {
                return x % n;
            }
        }
    }

   private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

}  // namespace qupuf

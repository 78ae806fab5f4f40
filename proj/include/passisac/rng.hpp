// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace passisac {

/// SplitMix64 generator (Steele, Lea & Flood).  Used for all Monte-Carlo
/// draws because substreams indexed by (seed, trial) are trivially
/// constructed, which keeps parallel and serial batch runs bit-identical.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    /// Substream for one trial: state seeded with seed ^ trial_index.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(seed ^ index);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        const double u1 = 1.0 - next_double();  // (0, 1], keeps log finite
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Circularly symmetric complex Gaussian with variance `var`
    /// (i.e. E{|z|^2} = var).
    std::complex<double> complex_normal(double var) {
        const double s = std::sqrt(var / 2.0);
        return {s * normal(), s * normal()};
    }

private:
    std::uint64_t state_;
};

}  // namespace passisac

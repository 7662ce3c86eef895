#pragma once

#include <cmath>
#include <cstdint>

namespace pik {

/// Deterministic per-stream generator: a splitmix64 chain whose initial state
/// is derived from (seed, stream index). Streams attached to different
/// indices are independent of scheduling order, which keeps multithreaded
/// Monte Carlo runs bit-reproducible.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : state_(seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 0x632BE59BD9B4E019ULL))) {
        // Burn a few outputs so nearby (seed, index) pairs decorrelate.
        next_u64();
        next_u64();
        next_u64();
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Marsaglia polar (second value cached).
    double next_normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_normal_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        cached_normal_ = v * factor;
        has_cached_ = true;
        return u * factor;
    }

private:
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace pik

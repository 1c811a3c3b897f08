#pragma once

#include <cstdint>

namespace takagi {

/// Counter-based SplitMix64. Stream s of seed k yields
/// mix(key + i * gamma) for i = 1, 2, ..., with key = mix(k ^ mix(s + gamma)),
/// so any sample can be drawn without touching the others.
class CounterRng {
public:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t mix(std::uint64_t z)
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + kGamma))) {}

    constexpr std::uint64_t next() { return mix(key_ + (++counter_) * kGamma); }

    /// Uniform integer in [0, 2^53).
    constexpr std::uint64_t next53() { return next() >> 11; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace takagi

#pragma once

#include <cstdint>

namespace fdsys {

// SplitMix64. Trajectory reproducibility across builds depends on this exact
// algorithm, so it is pinned here rather than delegated to <random>.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// Stream splitting: simulation step t draws from an independent SplitMix64
// stream keyed by (seed, t), so a step's draw count never shifts later steps.
inline SplitMix64 step_stream(std::uint64_t seed, std::uint64_t step) {
    SplitMix64 mix(seed ^ (0xA0761D6478BD642FULL * (step + 1)));
    return SplitMix64(mix.next());
}

}  // namespace fdsys

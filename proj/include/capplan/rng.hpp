#ifndef CAPPLAN_RNG_HPP
#define CAPPLAN_RNG_HPP

#include <cstdint>

namespace capplan {

// splitmix64 (Steele/Lea/Vigna), a 64-bit shift/multiply generator.
// One instance per simulation stream; never shared between trials.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Substream derivation: the per-trial state is one splitmix64 finalizer
// step applied to base_seed + (index + 1) * golden-gamma. Trials seeded
// this way agree bit-for-bit whether they run serially or in parallel.
inline std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index) {
    SplitMix64 g{base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL};
    return g.next();
}

} // namespace capplan

#endif

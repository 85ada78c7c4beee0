#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace qtriality {

// Deterministic seed derivation. Every random draw in the toolkit flows from
// a master seed through this mix, so a (master seed, state index, repetition
// index, setting index) tuple always addresses the same substream.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    // splitmix64 finalizer applied to the salted base.
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
    return mix_seed(master, a);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(master, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    return mix_seed(mix_seed(mix_seed(master, a), b), c);
}

// Thin deterministic generator. mt19937_64's output sequence is fully
// specified by the standard, and uniform doubles are built from raw bits
// rather than std::uniform_real_distribution, so identical seeds give
// identical streams on any conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::mt19937_64 engine_;
};

// Draw `shots` samples from a four-outcome distribution by walking the
// cumulative table per shot.
std::array<std::uint64_t, 4> inline multinomial_sample(const std::array<double, 4>& probs,
                                                       std::uint64_t shots, Rng& rng) {
    std::array<double, 4> cumulative{};
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += probs[i];
        cumulative[i] = acc;
    }
    cumulative[3] = 1.0; // guard against accumulated rounding
    std::array<std::uint64_t, 4> counts{};
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01();
        std::size_t k = 0;
        while (k < 3 && u >= cumulative[k]) ++k;
        ++counts[k];
    }
    return counts;
}

} // namespace qtriality

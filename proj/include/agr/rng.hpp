#pragma once

#include <cstdint>
#include <random>

namespace agr {

// splitmix64 finalizer; mixes seed material into well-distributed streams.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d2db3d13fb93dbull;
    return x ^ (x >> 31);
}

// Independent stream for (base seed, episode, role). Roles keep the world's
// randomness isolated from the planner's so planner changes never perturb
// simulated worlds.
inline uint64_t derive_seed(uint64_t base, uint64_t episode, uint64_t role) {
    return mix64(mix64(mix64(base) ^ episode) ^ (role * 0xd1342543de82ef95ull));
}

// Deterministic RNG with platform-independent derived draws. std::mt19937_64
// output is pinned by the standard; the bounded/uniform mappings below are
// pinned here so results are bit-reproducible across standard libraries
// (std::uniform_int_distribution is not).
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Lemire's unbiased bounded integer in [0, n).
    uint32_t uniform_int(uint32_t n) {
        uint64_t x = next_u64() >> 32;
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto lo = static_cast<uint64_t>(m & 0xffffffffull);
        if (lo < n) {
            uint64_t t = (0x100000000ull - n) % n;
            while (lo < t) {
                x = next_u64() >> 32;
                m = static_cast<__uint128_t>(x) * n;
                lo = static_cast<uint64_t>(m & 0xffffffffull);
            }
        }
        return static_cast<uint32_t>(m >> 32);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace agr

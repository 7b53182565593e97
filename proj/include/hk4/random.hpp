#pragma once

// Deterministic pseudo-random source shared by samplers, property tests and
// the CLI. xoshiro256** seeded through splitmix64, so a given seed yields the
// same stream on every platform.

#include <cstdint>
#include <stdexcept>

namespace hk4 {

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& s : state_)
            s = splitmix64(x);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
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

    /// Uniform integer in [lo, hi], by rejection (no modulo bias).
    long uniform(long lo, long hi) {
        if (hi < lo)
            throw std::invalid_argument("empty range");
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0)
            return static_cast<long>((*this)());
        const std::uint64_t limit = max() - max() % span;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return lo + static_cast<long>(x % span);
    }

    bool coin() { return ((*this)() >> 63) != 0; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
};

}  // namespace hk4

#pragma once

#include <array>
#include <cstdint>

namespace convsim {

// xoshiro256++ with splitmix64 seeding.  Small, fast, and fully
// reproducible across platforms, unlike the standard <random>
// distributions.  Substreams are derived by hashing (base_seed, index),
// so parallel work can be split deterministically regardless of the
// number of workers.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : state_) w = splitmix64(x);
    }

    static std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t stream_index) {
        std::uint64_t x = base_seed;
        std::uint64_t h = splitmix64(x);
        x = h ^ (stream_index + 0x9E3779B97F4A7C15ULL);
        return splitmix64(x);
    }

    static RandomStream derive(std::uint64_t base_seed, std::uint64_t stream_index) {
        return RandomStream(derive_seed(base_seed, stream_index));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1); safe as a log() argument.
    double uniform_pos() { return ((next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace convsim

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace lew {

// SplitMix64 finalizer. Used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Stable, order-sensitive combination of a seed with a stream/index label.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) noexcept {
    return splitmix64(splitmix64(seed) ^ (label * 0xD6E8FEB86659FD93ULL + 0x632BE59BD9B4E019ULL));
}

/// Seeded random stream.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard. The
/// integer and real helpers are implemented here rather than through the
/// <random> distributions (whose algorithms are implementation-defined), so a
/// seed reproduces the same draws on any conforming toolchain.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        // Reject the lowest 2^64 mod n values so the modulo is unbiased.
        const auto range = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0 - range) % range;
        std::uint64_t x = engine_();
        while (x < threshold) {
            x = engine_();
        }
        return static_cast<std::size_t>(x % range);
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace lew
